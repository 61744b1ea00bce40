use std::path::Path;
use std::process::{Command, Output};

use bloch_geometry::distances::bures_distance_general;
use bloch_geometry::export::{read_csv, read_record_json};
use bloch_geometry::states::{bloch_to_density, BlochVector};

fn blochgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blochgeo"))
        .args(args)
        .output()
        .expect("binary should start")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .parse()
        .unwrap()
}

#[test]
fn distance_half_pair() {
    let out = blochgeo(&[
        "distance",
        "--metric",
        "bures",
        "--a",
        "0.5,0",
        "--b",
        "0.5,3.141592653589793",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!((field(&stdout(&out), "value") - 0.52).abs() < 0.005);
}

#[test]
fn distance_to_itself_is_zero() {
    let out = blochgeo(&[
        "distance", "--metric", "sjoqvist", "--a", "0.5,0", "--b", "0.5,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(field(&stdout(&out), "value"), 0.0);
}

#[test]
fn distance_canonicalizes_the_angle_gap() {
    let short = blochgeo(&[
        "distance", "--metric", "sjoqvist", "--a", "0.5,0", "--b", "0.5,1",
    ]);
    let long = blochgeo(&[
        "distance",
        "--metric",
        "sjoqvist",
        "--a",
        "0.5,0",
        "--b",
        "0.5,-5.283185307179586",
    ]);
    let (s, l) = (
        field(&stdout(&short), "value"),
        field(&stdout(&long), "value"),
    );
    assert!((s - l).abs() < 1e-12);
}

#[test]
fn distance_from_bloch_vectors_matches_general_formula() {
    let out = blochgeo(&[
        "distance",
        "--metric",
        "bures",
        "--a3",
        "0.1,0.2,0.3",
        "--b3",
        "-0.2,0.1,0.4",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let a = bloch_to_density(&BlochVector::new(0.1, 0.2, 0.3).unwrap()).unwrap();
    let b = bloch_to_density(&BlochVector::new(-0.2, 0.1, 0.4).unwrap()).unwrap();
    let expected = bures_distance_general(&a, &b).unwrap();
    assert!((json["value"].as_f64().unwrap() - expected).abs() < 1e-12);
    assert!(json["reduction"]["r_total"].is_array());
}

#[test]
fn domain_errors_exit_two() {
    let cases: [&[&str]; 5] = [
        &[
            "distance", "--metric", "bures", "--a", "1.5,0", "--b", "0.5,0",
        ],
        &[
            "distance", "--metric", "sjoqvist", "--a", "0,0", "--b", "0.5,0",
        ],
        &[
            "distance", "--metric", "euclid", "--a3", "0,0,0.1", "--b3", "0,0,0.2",
        ],
        &["geodesic", "--ra", "1.2"],
        &["fig2", "--r", "0"],
    ];
    for args in cases {
        let out = blochgeo(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(blochgeo(&["ranking"]).status.code(), Some(2));
    assert_eq!(blochgeo(&["verify"]).status.code(), Some(2));
    assert_eq!(
        blochgeo(&["distance", "--metric", "cosine", "--a", "0.5,0", "--b", "0.5,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(blochgeo(&["--help"]).status.code(), Some(0));
}

#[test]
fn geodesic_figure_one_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let out = blochgeo(&[
        "geodesic",
        "--metric",
        "both",
        "--ra",
        "0.5",
        "--ra-prime",
        "0.1",
        "--theta",
        "0:6.283185307179586",
        "-n",
        "1000",
        "--verify",
        "--tol",
        "1e-8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("theta,r_bures,arc_bures,r_sjoqvist,arc_sjoqvist\n"));
    assert!(!text.contains('\r'));
    let table = read_csv(text.as_bytes()).unwrap();
    assert_eq!(table.rows.len(), 1001);
    let r = table.column("r_bures").unwrap();
    assert!((r[0].unwrap() - 0.5).abs() < 1e-12);
    assert!(r.iter().all(|v| v.unwrap() <= 1.0 + 1e-12));
}

#[test]
fn flat_sjoqvist_geodesic_is_a_circle() {
    let out = blochgeo(&[
        "geodesic", "--metric", "sjoqvist", "--ra", "0.3", "-n", "50",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let table = read_csv(stdout(&out).as_bytes()).unwrap();
    for v in table.column("r_sjoqvist").unwrap() {
        assert!((v.unwrap() - 0.3).abs() < 1e-15);
    }
}

#[test]
fn geodesic_oracle_breach_exits_three() {
    let out = blochgeo(&[
        "geodesic",
        "--ra",
        "0.5",
        "--ra-prime",
        "0.1",
        "--verify",
        "--steps",
        "20",
        "--tol",
        "1e-14",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn geodesic_endpoint_form() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bvp.json");
    let out = blochgeo(&[
        "geodesic",
        "--metric",
        "sjoqvist",
        "--ra",
        "0.3",
        "--rb",
        "0.8",
        "--theta-b",
        "1.2",
        "-n",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let record = read_record_json(std::fs::File::open(&path).unwrap()).unwrap();
    let r = record.table.column("r_sjoqvist").unwrap();
    assert!((r[0].unwrap() - 0.3).abs() < 1e-12 && (r[100].unwrap() - 0.8).abs() < 1e-12);
    let arc = record.table.column("arc_sjoqvist").unwrap()[100].unwrap();
    let length = record.metadata.notes["length_sjoqvist"].as_f64().unwrap();
    assert!((arc - length).abs() < 1e-10);
}

#[test]
fn contour_grid() {
    let out = blochgeo(&["contour", "--nr", "5", "--ntheta", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let table = read_csv(stdout(&out).as_bytes()).unwrap();
    assert_eq!(
        table.columns,
        ["r", "theta", "bures", "sjoqvist", "euclid", "taxicab"]
    );
    assert_eq!(table.rows.len(), 25);
    for row in &table.rows {
        if row[0] == Some(0.0) {
            assert_eq!(row[3], None);
        }
        if row[0] == Some(0.5) && (row[1].unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15 {
            assert!(row[2..].iter().all(|v| v.unwrap().abs() < 1e-15));
        }
    }
    let sj: Vec<f64> = table
        .rows
        .iter()
        .filter(|r| r[0] == Some(0.5))
        .map(|r| r[3].unwrap())
        .collect();
    assert!(sj[0] > sj[1] && sj[1] > sj[2] && sj[2] < sj[3] && sj[3] < sj[4]);
}

#[test]
fn fig2_columns() {
    let out = blochgeo(&["fig2", "-n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let table = read_csv(stdout(&out).as_bytes()).unwrap();
    assert_eq!(table.columns[0], "dtheta");
    assert_eq!(table.columns.len(), 6);
    assert!(table.rows[0].iter().all(|v| *v == Some(0.0)));
    for row in &table.rows {
        let dt = row[0].unwrap();
        assert!((row[1].unwrap() - 2.0 * (dt / 4.0).sin()).abs() < 1e-12);
    }
}

#[test]
fn ranking_is_deterministic() {
    let a = blochgeo(&["ranking", "--seed", "3", "--trials", "500"]);
    let b = blochgeo(&["ranking", "--seed", "3", "--trials", "500"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!read_csv(&a.stdout[..]).unwrap().rows.is_empty());
}

#[test]
fn verify_suites() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.json");
    let first = blochgeo(&[
        "verify",
        "--suite",
        "all",
        "--seed",
        "42",
        "--out",
        path.to_str().unwrap(),
    ]);
    let second = blochgeo(&["verify", "--suite", "all", "--seed", "42"]);
    assert_eq!(
        first.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    assert_eq!(first.stdout, second.stdout);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["passed"], true);

    let rw = blochgeo(&["verify", "--suite", "rw", "--seed", "1"]);
    let json: serde_json::Value = serde_json::from_slice(&rw.stdout).unwrap();
    assert!(json["checks"][0]["observed"].as_f64().unwrap() < 1e-10);
    let ranking = blochgeo(&["verify", "--suite", "ranking", "--seed", "1"]);
    assert_eq!(ranking.status.code(), Some(0));
}

#[test]
fn exports_round_trip_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["grid.csv", "grid.json"] {
        let path = dir.path().join(name);
        let out = blochgeo(&[
            "contour",
            "--nr",
            "7",
            "--ntheta",
            "9",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        let table = if name.ends_with(".json") {
            read_record_json(std::fs::File::open(&path).unwrap())
                .unwrap()
                .table
        } else {
            read_csv(std::fs::File::open(&path).unwrap()).unwrap()
        };
        for row in &table.rows {
            let b =
                bloch_geometry::states::PlanarState::new(row[0].unwrap(), row[1].unwrap()).unwrap();
            let src =
                bloch_geometry::states::PlanarState::new(0.5, std::f64::consts::FRAC_PI_2).unwrap();
            let again = bloch_geometry::distances::bures_distance(&src, &b).unwrap();
            assert_eq!(row[2], Some(again));
        }
        assert!(Path::new(&path).exists());
    }
}
