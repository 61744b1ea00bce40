//! Seeded invariant suites, one per module, with a machine-readable verdict
//! for every check.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{
    self, check_ranking, classical_violation_points, equidistance_check, equidistant_states,
    find_ranking_violations, quantum_violation_states, random_planar_state, PointPair,
};
use crate::distances::{
    bures_distance, bures_distance_bloch, bures_distance_general, fidelity_general,
    sjoqvist_distance, sjoqvist_distance_bloch,
};
use crate::error::Result;
use crate::geodesics::{
    bures_geodesic_ivp, bures_great_circle, check_against_oracle, sjoqvist_geodesic_ivp,
    GreatCircleParams, PlanarGeodesic, DEFAULT_ORACLE_STEPS,
};
use crate::linalg::{self, Vec3};
use crate::metrics::{
    embed_extrinsic, extrinsic_line_element_fd, line_element_cartesian,
    line_element_hyperspherical, line_element_spherical, MetricKind, TangentDisplacement, FD_STEP,
};
use crate::rotations::{
    reduce_to_xz_plane, rotation_from_axis_angle, so3_from_su2, su2_from_axis_angle,
};
use crate::states::{bloch_to_density, BlochVector, PlanarState, SphericalState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Metrics,
    Geodesics,
    Distances,
    Rotations,
    Ranking,
    Rw,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Metrics,
        Suite::Geodesics,
        Suite::Distances,
        Suite::Rotations,
        Suite::Ranking,
        Suite::Rw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Metrics => "metrics",
            Suite::Geodesics => "geodesics",
            Suite::Distances => "distances",
            Suite::Rotations => "rotations",
            Suite::Ranking => "ranking",
            Suite::Rw => "rw",
            Suite::All => "all",
        }
    }
}

/// Verdict of one invariant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed deviation (or the observed value for one-off checks).
    pub observed: f64,
    pub tolerance: f64,
    pub samples: usize,
}

impl Check {
    fn within(
        suite: &'static str,
        name: &'static str,
        observed: f64,
        tolerance: f64,
        samples: usize,
    ) -> Self {
        Self {
            suite,
            name,
            passed: observed <= tolerance,
            observed,
            tolerance,
            samples,
        }
    }

    fn flag(suite: &'static str, name: &'static str, passed: bool) -> Self {
        Self {
            suite,
            name,
            passed,
            observed: if passed { 0.0 } else { 1.0 },
            tolerance: 0.0,
            samples: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Sample sizes; `None` fields fall back to the defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TrialCounts {
    pub trials: Option<usize>,
}

impl TrialCounts {
    fn or(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }
}

pub fn run(suite: Suite, seed: u64, counts: TrialCounts) -> Result<VerifyReport> {
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let mut checks = Vec::new();
    for (i, s) in suites.into_iter().enumerate() {
        // Each suite gets its own stream so that running one alone matches `all`.
        let sub_seed = seed.wrapping_add(i as u64);
        let sub_seed = if suite == Suite::All { sub_seed } else { seed };
        checks.extend(match s {
            Suite::Metrics => metrics_suite(sub_seed, counts.or(10_000))?,
            Suite::Geodesics => geodesics_suite(sub_seed, counts.or(50))?,
            Suite::Distances => distances_suite(sub_seed, counts.or(100_000))?,
            Suite::Rotations => rotations_suite(sub_seed, counts.or(10_000))?,
            Suite::Ranking => ranking_suite(sub_seed, counts.or(10_000))?,
            Suite::Rw => rw_suite(sub_seed, counts.or(1_000))?,
            Suite::All => unreachable!(),
        });
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        seed,
        suite,
        passed,
        checks,
    })
}

fn random_unit<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let v: Vec3 = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = linalg::norm(&v);
        if n > 1e-3 && n <= 1.0 {
            return linalg::scale(&v, 1.0 / n);
        }
    }
}

fn random_bloch<R: Rng>(rng: &mut R) -> BlochVector {
    let dir = random_unit(rng);
    let r = rng.random::<f64>().cbrt();
    BlochVector::from_array(linalg::scale(&dir, r)).expect("inside the unit ball")
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Radial range used for the coordinate-consistency samples; outside it the
/// finite-difference evaluation of the embedding loses accuracy.
pub const CONSISTENCY_RADII: (f64, f64) = (0.2, 0.95);

/// Worst pairwise relative disagreement between the Cartesian, spherical,
/// hyperspherical and finite-difference extrinsic forms of `ds²`.
pub fn coordinate_consistency(kind: MetricKind, seed: u64, n: usize) -> Result<(f64, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut positive = true;
    for _ in 0..n {
        let s = SphericalState {
            p: rng.random_range(CONSISTENCY_RADII.0..=CONSISTENCY_RADII.1),
            theta: rng.random_range(0.0..PI),
            phi: rng.random_range(0.0..TAU),
        };
        let dp = linalg::scale(&random_unit(&mut rng), 1e-5);
        let p = s.to_bloch();
        let d = TangentDisplacement::Cartesian(dp);
        let cart = line_element_cartesian(kind, &p, &d)?;
        let sph = line_element_spherical(kind, &s, &d)?;
        let (dr, dth, dph) = d.to_spherical(&s)?;
        let chi = s.p.asin();
        let hyper =
            0.25 * line_element_hyperspherical(kind, chi, s.theta, (dr / chi.cos(), dth, dph))?;
        let ext = 0.25 * extrinsic_line_element_fd(kind, &p, &dp, FD_STEP)?;
        positive &= cart >= 0.0 && sph >= 0.0 && hyper >= 0.0;
        for (a, b) in [
            (cart, sph),
            (cart, hyper),
            (cart, ext),
            (sph, hyper),
            (sph, ext),
            (hyper, ext),
        ] {
            worst = worst.max(rel(a, b));
        }
    }
    Ok((worst, positive))
}

fn metrics_suite(seed: u64, n: usize) -> Result<Vec<Check>> {
    const S: &str = "metrics";
    let mut out = Vec::new();
    for (kind, name) in [
        (MetricKind::Bures, "bures_coordinate_consistency"),
        (MetricKind::Sjoqvist, "sjoqvist_coordinate_consistency"),
    ] {
        let (worst, positive) = coordinate_consistency(kind, seed, n)?;
        out.push(Check::within(S, name, worst, 1e-9, n));
        out.push(Check::flag(
            S,
            if kind == MetricKind::Bures {
                "bures_positive"
            } else {
                "sjoqvist_positive"
            },
            positive,
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let (mut ratio_dev, mut embed_dev) = (0.0f64, 0.0f64);
    for _ in 0..n.min(1000) {
        let s = SphericalState {
            p: rng.random_range(0.05..0.95),
            theta: rng.random_range(0.05..PI - 0.05),
            phi: rng.random_range(0.0..TAU),
        };
        let tangential = TangentDisplacement::Spherical {
            dp: 0.0,
            dtheta: 1e-4,
            dphi: 2e-4,
        };
        let radial = TangentDisplacement::Spherical {
            dp: 1e-4,
            dtheta: 0.0,
            dphi: 0.0,
        };
        let ratio = |d| -> Result<f64> {
            Ok(line_element_spherical(MetricKind::Sjoqvist, &s, d)?
                / line_element_spherical(MetricKind::Bures, &s, d)?)
        };
        ratio_dev = ratio_dev.max(rel(ratio(&tangential)?, 1.0 / (s.p * s.p)));
        ratio_dev = ratio_dev.max(rel(ratio(&radial)?, 1.0));
        let e = embed_extrinsic(&s)?;
        embed_dev = embed_dev.max((e.norm_sqr() - 1.0).abs());
    }
    out.push(Check::within(S, "ratio_law", ratio_dev, 1e-12, n.min(1000)));
    out.push(Check::within(
        S,
        "embedding_on_unit_sphere",
        embed_dev,
        1e-12,
        n.min(1000),
    ));
    Ok(out)
}

/// Initial data for the oracle comparison; the first entry is the
/// `(r_a, r_a′) = (1/2, 0.1)` launch used for the figure reproduction.
pub fn oracle_launches(seed: u64, n: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![(0.5, 0.1)];
    while out.len() < n.max(1) {
        out.push((rng.random_range(0.1..=0.9), rng.random_range(-1.0..=1.0)));
    }
    out
}

fn geodesics_suite(seed: u64, n: usize) -> Result<Vec<Check>> {
    const S: &str = "geodesics";
    let launches = oracle_launches(seed, n);
    let mut worst: f64 = 0.0;
    for &(ra, rp) in &launches {
        for kind in [MetricKind::Bures, MetricKind::Sjoqvist] {
            let c = check_against_oracle(kind, ra, rp, 0.0, TAU, DEFAULT_ORACLE_STEPS)?;
            worst = worst.max(c.max_deviation);
        }
    }
    let mut out = vec![Check::within(
        S,
        "oracle_agreement",
        worst,
        1e-8,
        2 * launches.len(),
    )];

    let mut drift: f64 = 0.0;
    for &(ra, rp) in &launches {
        let b = bures_geodesic_ivp(ra, rp, 0.0)?;
        let sj = sjoqvist_geodesic_ivp(ra, rp, 0.0)?;
        let k = sj.params().k;
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            let (r, d) = (b.radius(t), b.derivative(t));
            if r < 0.99 {
                let c = r * r / (r * r + d * d / (1.0 - r * r)).sqrt();
                drift = drift.max(rel(c, b.params.c_b));
            }
            let (r, d) = (sj.radius(t), sj.derivative(t));
            if r > 0.01 && r < 0.99 && k > 0.0 {
                drift = drift.max(rel(d * d / (1.0 - r * r), k));
            }
        }
    }
    out.push(Check::within(
        S,
        "beltrami_conservation",
        drift,
        1e-10,
        launches.len(),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9c);
    let mut circle_dev: f64 = 0.0;
    for _ in 0..launches.len() {
        let gc = GreatCircleParams::new(
            rng.random_range(0.0..FRAC_PI_2),
            random_unit(&mut rng),
            random_unit(&mut rng),
        )?;
        for i in 0..100 {
            let s = i as f64 * TAU / 100.0;
            let x = bures_great_circle(&gc, s)?;
            circle_dev = circle_dev.max((x.norm_sqr() - 1.0).abs());
            circle_dev = circle_dev.max((x.radius() - gc.radius_at(s)).abs());
        }
    }
    out.push(Check::within(
        S,
        "great_circle_on_sphere",
        circle_dev,
        1e-12,
        launches.len(),
    ));
    Ok(out)
}

fn distances_suite(seed: u64, n: usize) -> Result<Vec<Check>> {
    const S: &str = "distances";
    let [p1, p2, p3, p4] = quantum_violation_states();
    let mut out = vec![
        Check::within(
            S,
            "bures_half_pair",
            (bures_distance(&p1, &p2)? - 0.52).abs(),
            0.005,
            1,
        ),
        Check::within(
            S,
            "bures_small_pair",
            (bures_distance(&p3, &p4)? - 0.19).abs(),
            0.005,
            1,
        ),
        Check::within(
            S,
            "sjoqvist_half_pair",
            (sjoqvist_distance(&p1, &p2)? - FRAC_PI_2).abs(),
            1e-12,
            1,
        ),
        Check::within(
            S,
            "sjoqvist_small_pair",
            (sjoqvist_distance(&p3, &p4)? - 1.572).abs(),
            0.0005,
            1,
        ),
    ];

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let equal: Vec<(PlanarState, PlanarState)> = (0..n)
        .map(|_| {
            let r = 1.0 - rng.random::<f64>();
            let a = PlanarState {
                r,
                theta: PI * rng.random::<f64>(),
            };
            (
                a,
                PlanarState {
                    r,
                    theta: PI * rng.random::<f64>(),
                },
            )
        })
        .collect();
    let general: Vec<(PlanarState, PlanarState)> = (0..n)
        .map(|_| (random_planar_state(&mut rng), random_planar_state(&mut rng)))
        .collect();
    let chain_breaks = equal
        .par_iter()
        .map(|(a, b)| -> Result<usize> {
            let (lb, ls) = (bures_distance(a, b)?, sjoqvist_distance(a, b)?);
            Ok(usize::from(
                !(0.0 <= lb && lb <= ls && ls <= FRAC_PI_2 + 1e-12),
            ))
        })
        .sum::<Result<usize>>()?;
    out.push(Check::within(
        S,
        "ordering_equal_radius",
        chain_breaks as f64,
        0.0,
        n,
    ));
    let order_breaks = general
        .par_iter()
        .map(|(a, b)| -> Result<usize> {
            let (lb, ls) = (bures_distance(a, b)?, sjoqvist_distance(a, b)?);
            Ok(usize::from(!(0.0 <= lb && lb <= ls)))
        })
        .sum::<Result<usize>>()?;
    out.push(Check::within(
        S,
        "ordering_general_pairs",
        order_breaks as f64,
        0.0,
        n,
    ));

    let mut sym: f64 = 0.0;
    for (a, b) in general.iter().take(1000) {
        sym = sym.max((bures_distance(a, b)? - bures_distance(b, a)?).abs());
        sym = sym.max((sjoqvist_distance(a, b)? - sjoqvist_distance(b, a)?).abs());
    }
    out.push(Check::within(
        S,
        "symmetry",
        sym,
        1e-12,
        general.len().min(1000),
    ));

    let (mut sj_pure, mut bu_pure) = (0.0f64, 0.0f64);
    for i in 1..=50 {
        let dt = 0.5 * i as f64 / 50.0;
        let (a, b) = (
            PlanarState { r: 1.0, theta: 0.0 },
            PlanarState { r: 1.0, theta: dt },
        );
        sj_pure = sj_pure.max((sjoqvist_distance(&a, &b)? - dt / 2.0).abs());
        let excess = (bures_distance(&a, &b)? - dt / 2.0).abs() / (dt.powi(3) / 96.0);
        bu_pure = bu_pure.max(excess);
    }
    out.push(Check::within(S, "sjoqvist_pure_limit", sj_pure, 1e-12, 50));
    out.push(Check::within(
        S,
        "bures_pure_limit_cubic",
        bu_pure,
        1.0 + 1e-9,
        50,
    ));

    let mut fid: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf1);
    for _ in 0..1000 {
        let (a, b) = (random_bloch(&mut rng), random_bloch(&mut rng));
        let (ra, rb) = (bloch_to_density(&a)?, bloch_to_density(&b)?);
        let f = fidelity_general(&ra, &rb)?;
        fid = fid.max((SQRT_2 * (1.0 - f.sqrt()).sqrt() - bures_distance_general(&ra, &rb)?).abs());
    }
    out.push(Check::within(S, "fidelity_consistency", fid, 1e-12, 1000));
    Ok(out)
}

fn rotations_suite(seed: u64, n: usize) -> Result<Vec<Check>> {
    const S: &str = "rotations";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dual: f64 = 0.0;
    let mut cover = true;
    for _ in 0..n.min(1000) {
        let alpha = rng.random_range(0.0..TAU);
        let axis = random_unit(&mut rng);
        let u = su2_from_axis_angle(alpha, axis)?;
        dual = dual.max(so3_from_su2(&u).max_abs_diff(&rotation_from_axis_angle(alpha, axis)?));
        cover &= so3_from_su2(&u) == so3_from_su2(&-u);
    }
    let mut out = vec![
        Check::within(S, "trace_vs_explicit", dual, 1e-12, n.min(1000)),
        Check::flag(S, "double_cover", cover),
    ];

    let pairs: Vec<(BlochVector, BlochVector)> = (0..n)
        .map(|_| (random_bloch(&mut rng), random_bloch(&mut rng)))
        .collect();
    let devs = pairs
        .par_iter()
        .map(|(a, b)| -> Result<(f64, f64, f64)> {
            let red = reduce_to_xz_plane(a, b)?;
            let (pa, pb) = red.planar_pair();
            let general = bures_distance_general(&bloch_to_density(a)?, &bloch_to_density(b)?)?;
            let bures = (general - bures_distance(&pa, &pb)?).abs();
            let sj = if a.norm() > 1e-6 && b.norm() > 1e-6 {
                (sjoqvist_distance_bloch(a, b)? - sjoqvist_distance(&pa, &pb)?).abs()
            } else {
                0.0
            };
            let plane = red.p1_new.py.abs().max(red.p2_new.py.abs()).max(
                (red.p1_new.norm() - a.norm())
                    .abs()
                    .max((red.p2_new.norm() - b.norm()).abs()),
            );
            Ok((bures, sj, plane))
        })
        .collect::<Result<Vec<_>>>()?;
    let worst = |f: fn(&(f64, f64, f64)) -> f64| devs.iter().map(f).fold(0.0, f64::max);
    out.push(Check::within(S, "bures_isometry", worst(|d| d.0), 1e-10, n));
    out.push(Check::within(
        S,
        "sjoqvist_isometry",
        worst(|d| d.1),
        1e-10,
        n,
    ));
    out.push(Check::within(
        S,
        "reduction_in_plane",
        worst(|d| d.2),
        1e-10,
        n,
    ));
    let _ = bures_distance_bloch;
    Ok(out)
}

fn ranking_suite(seed: u64, n: usize) -> Result<Vec<Check>> {
    const S: &str = "ranking";
    let [c1, c2, c3] = classical_violation_points();
    let s1 = check_ranking(
        PointPair::Cartesian(c1, c2),
        PointPair::Cartesian(c1, c3),
        MetricKind::Euclid,
        MetricKind::Taxicab,
    )?;
    let [q1, q2, q3, q4] = quantum_violation_states();
    let s2 = check_ranking(
        PointPair::Planar(q1, q2),
        PointPair::Planar(q3, q4),
        MetricKind::Bures,
        MetricKind::Sjoqvist,
    )?;
    let [e1, e2, e3, e4] = equidistant_states();
    let sj = equidistance_check(&[(e1, e2), (e3, e4)], MetricKind::Sjoqvist)?;
    let bu = equidistance_check(&[(e1, e2), (e3, e4)], MetricKind::Bures)?;
    let quantum = find_ranking_violations(seed, n, MetricKind::Bures, MetricKind::Sjoqvist)?;
    let classical = find_ranking_violations(seed, n, MetricKind::Euclid, MetricKind::Taxicab)?;
    let same = find_ranking_violations(seed, n, MetricKind::Euclid, MetricKind::Euclid)?;
    Ok(vec![
        Check::flag(S, "classical_points_violate", s1.violated),
        Check::flag(S, "quantum_points_violate", s2.violated),
        Check::flag(S, "sjoqvist_equidistant", sj.ties().count() == 1),
        Check::flag(S, "bures_not_equidistant", bu.ties().count() == 0),
        Check::flag(
            S,
            "search_finds_quantum_violations",
            !quantum.violations.is_empty(),
        ),
        Check::flag(
            S,
            "search_finds_classical_violations",
            !classical.violations.is_empty(),
        ),
        Check::flag(S, "metric_agrees_with_itself", same.violations.is_empty()),
    ])
}

fn rw_suite(seed: u64, n: usize) -> Result<Vec<Check>> {
    let report = analysis::rw_spatial_equivalence(&analysis::random_rw_samples(seed, n))?;
    Ok(vec![Check::within(
        "rw",
        "closed_slice_matches_bures",
        report.max_rel_deviation,
        1e-10,
        n,
    )])
}
