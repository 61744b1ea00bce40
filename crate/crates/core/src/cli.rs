//! The `blochgeo` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
//! 3 tolerance breach.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{find_ranking_violations, PointPair};
use crate::distances::{
    bures_distance, canonical_angle_gap, planar_distance, sjoqvist_distance, DistanceReport,
    SJOQVIST_MAX,
};
use crate::error::GeometryError;
use crate::export::{self, ExportRecord, OutputFormat, RunMetadata, Table};
use crate::geodesics::{
    bures_geodesic_ivp, check_against_oracle, sample_geodesic, sjoqvist_geodesic_bvp,
    sjoqvist_geodesic_ivp, Geodesic, GeodesicCurve, OracleCheck, PlanarGeodesic, SjoqvistBvp,
};
use crate::metrics::MetricKind;
use crate::rotations::{reduce_to_xz_plane, PlaneReduction};
use crate::states::{BlochVector, PlanarState};
use crate::verify::{self, Suite, TrialCounts};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TOLERANCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "blochgeo",
    version,
    about = "Bures and Sjöqvist geometry of qubit states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance between two states, given as (r,θ) or as Bloch vectors.
    Distance(DistanceArgs),
    /// Sample closed-form geodesics as (θ, r, arc length).
    Geodesic(GeodesicArgs),
    /// Distance field from a source state over the (r, θ) half-disc.
    Contour(ContourArgs),
    /// Equal-radius distances against the angular gap for several radii.
    Fig2(Fig2Args),
    /// Seeded search for pairs of pairs whose distance ordering flips.
    Ranking(RankingArgs),
    /// Run the invariant suites and print a JSON verdict.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; written to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; defaults to the file extension (.json) or CSV.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

impl OutputArgs {
    fn resolved(&self) -> OutputFormat {
        self.format
            .or_else(|| self.out.as_deref().map(OutputFormat::from_path))
            .unwrap_or(OutputFormat::Csv)
    }
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    #[arg(long)]
    pub metric: MetricKind,
    /// First state as `r,θ`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, conflicts_with = "a3", required_unless_present = "a3")]
    pub a: Option<(f64, f64)>,
    /// Second state as `r,θ`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, requires = "a", conflicts_with = "b3", required_unless_present = "b3")]
    pub b: Option<(f64, f64)>,
    /// First state as a Bloch vector `px,py,pz`.
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true, requires = "b3", conflicts_with_all = ["a", "b"])]
    pub a3: Option<[f64; 3]>,
    /// Second state as a Bloch vector `px,py,pz`.
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true, requires = "a3", conflicts_with_all = ["a", "b"])]
    pub b3: Option<[f64; 3]>,
    /// `text` (default) or `json`.
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeodesicMetric {
    Bures,
    Sjoqvist,
    Both,
}

#[derive(Debug, Args)]
pub struct GeodesicArgs {
    #[arg(long, value_enum, default_value_t = GeodesicMetric::Both)]
    pub metric: GeodesicMetric,
    #[arg(long)]
    pub ra: f64,
    /// Launch slope dr/dθ.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub ra_prime: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta_a: f64,
    /// Endpoint radius (Sjöqvist boundary-value form).
    #[arg(long, requires = "theta_b", conflicts_with = "ra_prime")]
    pub rb: Option<f64>,
    #[arg(long, requires = "rb", allow_hyphen_values = true)]
    pub theta_b: Option<f64>,
    /// θ range as `start:end`; defaults to `0:2π`, or to `θ_a:θ_b` for endpoints.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub theta: Option<(f64, f64)>,
    /// Number of θ intervals.
    #[arg(short = 'n', long, default_value_t = 1000)]
    pub samples: usize,
    /// Compare the closed forms with the RK4 integration of the geodesic equation.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = crate::geodesics::DEFAULT_ORACLE_STEPS)]
    pub steps: usize,
    /// Largest accepted oracle deviation.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ContourArgs {
    /// Metrics to tabulate; all four by default.
    #[arg(long, value_delimiter = ',')]
    pub metric: Vec<MetricKind>,
    /// Source state as `r,θ`.
    #[arg(long, value_parser = parse_pair, default_value = "0.5,1.5707963267948966")]
    pub source: (f64, f64),
    /// Grid points in r over [0, 1], endpoints included.
    #[arg(long, default_value_t = 101)]
    pub nr: usize,
    /// Grid points in θ over [0, π], endpoints included.
    #[arg(long, default_value_t = 101)]
    pub ntheta: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Fig2Args {
    /// Common radius r_a = r_b of each Bures column.
    #[arg(long, value_delimiter = ',', default_value = "1,0.95,0.75,0.5")]
    pub r: Vec<f64>,
    /// Number of Δθ intervals over [0, π].
    #[arg(short = 'n', long, default_value_t = 200)]
    pub samples: usize,
    /// Slack allowed in the ordering check.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RankingArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value = "bures")]
    pub metric_a: MetricKind,
    #[arg(long, default_value = "sjoqvist")]
    pub metric_b: MetricKind,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long)]
    pub seed: u64,
    /// Sample count for every suite, overriding the defaults.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Also write the JSON report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failed command: the exit code and the message for stderr.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        Self::usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::usage(format!("i/o error: {e}"))
    }
}

impl From<Box<dyn std::error::Error>> for CliError {
    fn from(e: Box<dyn std::error::Error>) -> Self {
        Self::usage(format!("output error: {e}"))
    }
}

type CliResult = std::result::Result<i32, CliError>;

fn parse_numbers<const N: usize>(s: &str) -> std::result::Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got '{s}'"));
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| format!("'{p}' is not a number"))?;
    }
    Ok(out)
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    parse_numbers::<2>(s).map(|[a, b]| (a, b))
}

fn parse_triple(s: &str) -> std::result::Result<[f64; 3], String> {
    parse_numbers::<3>(s)
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected start:end, got '{s}'"))?;
    let parse = |p: &str| {
        p.trim()
            .parse::<f64>()
            .map_err(|_| format!("'{p}' is not a number"))
    };
    let (a, b) = (parse(a)?, parse(b)?);
    if !(a.is_finite() && b.is_finite()) || a == b {
        return Err(format!("range '{s}' must have distinct finite ends"));
    }
    Ok((a, b))
}

/// Parse `args` (including the program name), run the command and return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Distance(a) => cmd_distance(a),
        Command::Geodesic(a) => cmd_geodesic(a),
        Command::Contour(a) => cmd_contour(a),
        Command::Fig2(a) => cmd_fig2(a),
        Command::Ranking(a) => cmd_ranking(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn emit_record(record: &ExportRecord, output: &OutputArgs) -> std::result::Result<(), CliError> {
    let format = output.resolved();
    match &output.out {
        Some(path) => export::write_record(record, path, Some(format))?,
        None => {
            let stdout = std::io::stdout().lock();
            match format {
                OutputFormat::Csv => export::write_csv(&record.table, stdout)
                    .map_err(|e| CliError::usage(e.to_string()))?,
                OutputFormat::Json => export::write_json(record, stdout)?,
            }
        }
    }
    Ok(())
}

fn write_json_file<T: Serialize>(value: &T, path: &Path) -> std::result::Result<(), CliError> {
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    export::write_json(value, file)?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct DistanceOutput {
    #[serde(flatten)]
    report: DistanceReport,
    /// Angular gap actually used, after reduction to [0, π].
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduction: Option<PlaneReduction>,
}

fn cmd_distance(args: DistanceArgs) -> CliResult {
    let output = match (args.a, args.b, args.a3, args.b3) {
        (Some(a), Some(b), None, None) => {
            let (a, b) = (PlanarState::new(a.0, a.1)?, PlanarState::new(b.0, b.1)?);
            if args.metric.is_quantum() {
                let gap = canonical_angle_gap(a.theta, b.theta);
                let (a0, b0) = (
                    PlanarState { r: a.r, theta: 0.0 },
                    PlanarState { r: b.r, theta: gap },
                );
                let mut report = planar_distance(args.metric, &a0, &b0)?;
                report.endpoints = crate::distances::Endpoints::Planar { a, b };
                DistanceOutput {
                    report,
                    delta_theta: Some(gap),
                    reduction: None,
                }
            } else {
                DistanceOutput {
                    report: planar_distance(args.metric, &a, &b)?,
                    delta_theta: None,
                    reduction: None,
                }
            }
        }
        (None, None, Some(a3), Some(b3)) => {
            if !args.metric.is_quantum() {
                return Err(CliError::usage(format!(
                    "{} distance takes planar (r,θ) states; Bloch-vector input needs bures or sjoqvist",
                    args.metric
                )));
            }
            let (p1, p2) = (BlochVector::from_array(a3)?, BlochVector::from_array(b3)?);
            let red = reduce_to_xz_plane(&p1, &p2)?;
            let (a, b) = red.planar_pair();
            let report = planar_distance(args.metric, &a, &b)?;
            DistanceOutput {
                report,
                delta_theta: Some((b.theta - a.theta).abs()),
                reduction: Some(red),
            }
        }
        _ => return Err(CliError::usage("give either --a/--b or --a3/--b3")),
    };

    let mut out = std::io::stdout().lock();
    match args.format {
        ReportFormat::Json => export::write_json(&output, &mut out)?,
        ReportFormat::Text => {
            writeln!(out, "metric: {}", output.report.kind)?;
            writeln!(out, "value: {}", export::format_float(output.report.value))?;
            let formula = serde_json::to_value(output.report.formula).unwrap_or_default();
            writeln!(out, "formula: {}", formula.as_str().unwrap_or_default())?;
            if let Some(gap) = output.delta_theta {
                writeln!(out, "delta_theta: {}", export::format_float(gap))?;
            }
            if let Some(red) = &output.reduction {
                let (a, b) = red.planar_pair();
                writeln!(
                    out,
                    "reduced_a: {},{}",
                    export::format_float(a.r),
                    export::format_float(a.theta)
                )?;
                writeln!(
                    out,
                    "reduced_b: {},{}",
                    export::format_float(b.r),
                    export::format_float(b.theta)
                )?;
                writeln!(out, "phi2_prime: {}", export::format_float(red.phi2_prime))?;
                writeln!(out, "reflected: {}", red.reflected)?;
                for row in red.r_total.0 {
                    let cells: Vec<String> = row.iter().map(|&v| export::format_float(v)).collect();
                    writeln!(out, "rotation: {}", cells.join(","))?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

/// Sjöqvist radial segment `θ = const` sampled uniformly in `asin r`.
fn radial_table(theta: f64, ra: f64, rb: f64, n: usize) -> Table {
    let mut t = Table::new(["theta", "r_sjoqvist", "arc_sjoqvist"]);
    let (ca, cb) = (ra.asin(), rb.asin());
    for i in 0..=n {
        let chi = ca + (cb - ca) * i as f64 / n as f64;
        t.push_values(&[theta, chi.sin(), 0.5 * (chi - ca).abs()]);
    }
    t
}

fn cmd_geodesic(args: GeodesicArgs) -> CliResult {
    if args.samples == 0 {
        return Err(CliError::usage("-n must be at least 1"));
    }
    let endpoints = args.rb.zip(args.theta_b);
    if endpoints.is_some() && args.metric != GeodesicMetric::Sjoqvist {
        return Err(CliError::usage(
            "--rb/--theta-b select the Sjöqvist endpoint form; use --metric sjoqvist",
        ));
    }
    let mut meta = RunMetadata::new("geodesic")
        .note("ra", args.ra)
        .note("theta_a", args.theta_a);

    let mut geodesics: Vec<Geodesic> = Vec::new();
    let default_range = (0.0, std::f64::consts::TAU);
    let range = match endpoints {
        Some((rb, theta_b)) => {
            meta = meta.note("rb", rb).note("theta_b", theta_b);
            match sjoqvist_geodesic_bvp(args.ra, args.theta_a, rb, theta_b)? {
                SjoqvistBvp::Angular(g) => {
                    meta = meta.note("length_sjoqvist", SjoqvistBvp::Angular(g).length());
                    geodesics.push(Geodesic::Sjoqvist(g));
                    args.theta.unwrap_or((args.theta_a, theta_b))
                }
                radial @ SjoqvistBvp::Radial { theta, ra, rb } => {
                    meta = meta
                        .note("length_sjoqvist", radial.length())
                        .note("radial", true);
                    eprintln!("θ_a = θ_b: the geodesic is the radial segment θ = {theta}");
                    let table = radial_table(theta, ra, rb, args.samples);
                    emit_record(
                        &ExportRecord {
                            metadata: meta,
                            table,
                        },
                        &args.output,
                    )?;
                    return Ok(EXIT_OK);
                }
            }
        }
        None => {
            meta = meta.note("ra_prime", args.ra_prime);
            if matches!(args.metric, GeodesicMetric::Bures | GeodesicMetric::Both) {
                geodesics.push(Geodesic::Bures(bures_geodesic_ivp(
                    args.ra,
                    args.ra_prime,
                    args.theta_a,
                )?));
            }
            if matches!(args.metric, GeodesicMetric::Sjoqvist | GeodesicMetric::Both) {
                geodesics.push(Geodesic::Sjoqvist(sjoqvist_geodesic_ivp(
                    args.ra,
                    args.ra_prime,
                    args.theta_a,
                )?));
            }
            args.theta.unwrap_or(default_range)
        }
    };

    let curves = geodesics
        .into_iter()
        .map(|g| sample_geodesic(g, range.0, range.1, args.samples))
        .collect::<crate::Result<Vec<GeodesicCurve>>>()?;

    let mut columns = vec!["theta".to_string()];
    for c in &curves {
        columns.push(format!("r_{}", c.kind()));
        columns.push(format!("arc_{}", c.kind()));
    }
    let mut table = Table::new(columns);
    for i in 0..=args.samples {
        let mut row = vec![Some(curves[0].theta[i])];
        for c in &curves {
            row.push(Some(c.r[i]));
            row.push(Some(c.arc_length[i]));
        }
        table.push(row);
    }
    for c in &curves {
        let k = c.kind();
        meta = meta.note(&format!("boundary_contacts_{k}"), &c.boundary_contacts);
        if !c.boundary_contacts.is_empty() {
            eprintln!(
                "{k}: touches the pure-state boundary at θ = {:?}",
                c.boundary_contacts
            );
        }
        if k == MetricKind::Bures {
            meta = meta.note("turning_points_bures", &c.turning_points);
        }
        meta = meta.note(&format!("length_{k}"), c.total_length());
    }

    let mut code = EXIT_OK;
    if args.verify {
        meta.tolerance = Some(args.tol);
        for c in &curves {
            // The endpoint form is checked through its launch slope at θ_a.
            let slope = c.geodesic.derivative(args.theta_a);
            let check = run_oracle(c.kind(), args.ra, slope, args.theta_a, range, args.steps)?;
            code = code.max(report_oracle(&mut meta, &check, args.tol));
        }
    }
    emit_record(
        &ExportRecord {
            metadata: meta,
            table,
        },
        &args.output,
    )?;
    Ok(code)
}

/// Oracle comparison over the part of `range` on the far side of `θ_a`
/// (or both sides when `θ_a` is interior).
fn run_oracle(
    kind: MetricKind,
    ra: f64,
    ra_prime: f64,
    theta_a: f64,
    range: (f64, f64),
    steps: usize,
) -> std::result::Result<Vec<OracleCheck>, CliError> {
    let mut out = Vec::new();
    for end in [range.0, range.1] {
        if end != theta_a {
            out.push(check_against_oracle(
                kind, ra, ra_prime, theta_a, end, steps,
            )?);
        }
    }
    Ok(out)
}

fn report_oracle(meta: &mut RunMetadata, checks: &[OracleCheck], tol: f64) -> i32 {
    let Some(kind) = checks.first().map(|c| c.kind) else {
        return EXIT_OK;
    };
    let worst = checks.iter().map(|c| c.max_deviation).fold(0.0, f64::max);
    let ranges: Vec<(f64, f64)> = checks
        .iter()
        .map(|c| (c.theta_start, c.theta_checked))
        .collect();
    meta.notes.insert(
        format!("oracle_max_deviation_{kind}"),
        serde_json::json!(worst),
    );
    meta.notes
        .insert(format!("oracle_range_{kind}"), serde_json::json!(ranges));
    let truncated = checks.iter().any(|c| c.truncated);
    eprintln!(
        "{kind}: oracle max deviation {worst:e} over {ranges:?}{}",
        if truncated {
            " (stopped before a boundary contact)"
        } else {
            ""
        }
    );
    if worst > tol {
        eprintln!("{kind}: oracle deviation {worst:e} exceeds tolerance {tol:e}");
        EXIT_TOLERANCE
    } else {
        EXIT_OK
    }
}

fn cmd_contour(args: ContourArgs) -> CliResult {
    if args.nr < 2 || args.ntheta < 2 {
        return Err(CliError::usage("--nr and --ntheta must be at least 2"));
    }
    let metrics = if args.metric.is_empty() {
        MetricKind::ALL.to_vec()
    } else {
        args.metric.clone()
    };
    let source = PlanarState::new(args.source.0, args.source.1)?;
    if metrics.contains(&MetricKind::Sjoqvist) && source.r == 0.0 {
        return Err(GeometryError::Singular {
            metric: "sjoqvist",
            p: 0.0,
        }
        .into());
    }
    let mut columns = vec!["r".to_string(), "theta".to_string()];
    columns.extend(metrics.iter().map(|m| m.name().to_string()));
    let (nr, nt) = (args.nr, args.ntheta);
    let rows = (0..nr * nt)
        .into_par_iter()
        .map(|idx| -> crate::Result<Vec<Option<f64>>> {
            let (i, j) = (idx / nt, idx % nt);
            let r = i as f64 / (nr - 1) as f64;
            let theta = std::f64::consts::PI * j as f64 / (nt - 1) as f64;
            let b = PlanarState { r, theta };
            let mut row = vec![Some(r), Some(theta)];
            for &m in &metrics {
                row.push(if m == MetricKind::Sjoqvist && r == 0.0 {
                    None
                } else {
                    Some(planar_distance(m, &source, &b)?.value)
                });
            }
            Ok(row)
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let meta = RunMetadata::new("contour")
        .note("source", [source.r, source.theta])
        .note("nr", nr)
        .note("ntheta", nt);
    emit_record(
        &ExportRecord {
            metadata: meta,
            table: Table { columns, rows },
        },
        &args.output,
    )?;
    Ok(EXIT_OK)
}

fn cmd_fig2(args: Fig2Args) -> CliResult {
    if args.samples == 0 || args.r.is_empty() {
        return Err(CliError::usage("need at least one radius and -n >= 1"));
    }
    for &r in &args.r {
        if !(r > 0.0 && r <= 1.0) {
            return Err(CliError::usage(format!("radius {r} must lie in (0, 1]")));
        }
    }
    let mut columns = vec!["dtheta".to_string()];
    columns.extend(args.r.iter().map(|r| format!("bures_r{r}")));
    columns.push("sjoqvist".to_string());
    let mut table = Table::new(columns);
    let mut failures = 0usize;
    for i in 0..=args.samples {
        let dt = std::f64::consts::PI * i as f64 / args.samples as f64;
        let mut row = vec![dt];
        let ls = sjoqvist_distance(
            &PlanarState {
                r: args.r[0],
                theta: 0.0,
            },
            &PlanarState {
                r: args.r[0],
                theta: dt,
            },
        )?;
        for &r in &args.r {
            let lb = bures_distance(
                &PlanarState { r, theta: 0.0 },
                &PlanarState { r, theta: dt },
            )?;
            if !(lb >= 0.0 && lb <= ls + args.tol && ls <= SJOQVIST_MAX + args.tol) {
                failures += 1;
                eprintln!("ordering fails at Δθ = {dt}, r = {r}: bures {lb}, sjoqvist {ls}");
            }
            row.push(lb);
        }
        row.push(ls);
        table.push_values(&row);
    }
    let mut meta = RunMetadata::new("fig2")
        .note("radii", &args.r)
        .note("ordering_failures", failures);
    meta.tolerance = Some(args.tol);
    emit_record(
        &ExportRecord {
            metadata: meta,
            table,
        },
        &args.output,
    )?;
    Ok(if failures > 0 {
        EXIT_TOLERANCE
    } else {
        EXIT_OK
    })
}

fn cmd_ranking(args: RankingArgs) -> CliResult {
    let search = find_ranking_violations(args.seed, args.trials, args.metric_a, args.metric_b)?;
    let (a, b) = (args.metric_a.name(), args.metric_b.name());
    let mut table = Table::new(
        [
            "r1", "theta1", "r2", "theta2", "r3", "theta3", "r4", "theta4",
        ]
        .into_iter()
        .map(String::from)
        .chain([
            format!("{a}_12"),
            format!("{a}_34"),
            format!("{b}_12"),
            format!("{b}_34"),
        ]),
    );
    for case in &search.violations {
        let (PointPair::Planar(p1, p2), PointPair::Planar(p3, p4)) = (case.pair1, case.pair2)
        else {
            continue;
        };
        table.push_values(&[
            p1.r, p1.theta, p2.r, p2.theta, p3.r, p3.theta, p4.r, p4.theta, case.d_a.0, case.d_a.1,
            case.d_b.0, case.d_b.1,
        ]);
    }
    eprintln!(
        "{} ranking violations between {a} and {b} in {} trials",
        search.violations.len(),
        search.n_trials
    );
    let mut meta = RunMetadata::new("ranking")
        .note("trials", search.n_trials)
        .note("violations", search.violations.len());
    meta.seed = Some(args.seed);
    emit_record(
        &ExportRecord {
            metadata: meta,
            table,
        },
        &args.output,
    )?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct VerifyOutput {
    metadata: RunMetadata,
    #[serde(flatten)]
    report: verify::VerifyReport,
}

fn cmd_verify(args: VerifyArgs) -> CliResult {
    if args.trials == Some(0) {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    let report = verify::run(
        args.suite,
        args.seed,
        TrialCounts {
            trials: args.trials,
        },
    )?;
    let mut metadata = RunMetadata::new("verify").note("suite", args.suite);
    metadata.seed = Some(args.seed);
    let passed = report.passed;
    let output = VerifyOutput { metadata, report };
    export::write_json(&output, std::io::stdout().lock())?;
    if let Some(path) = &args.out {
        write_json_file(&output, path)?;
    }
    for c in output.report.checks.iter().filter(|c| !c.passed) {
        eprintln!(
            "FAIL {}/{}: observed {:e}, tolerance {:e}",
            c.suite, c.name, c.observed, c.tolerance
        );
    }
    Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsers() {
        assert_eq!(parse_pair("0.5, 3").unwrap(), (0.5, 3.0));
        assert!(parse_pair("0.5").is_err());
        assert_eq!(parse_triple("-0.2,0.1,0.4").unwrap(), [-0.2, 0.1, 0.4]);
        assert_eq!(parse_range("0:6.5").unwrap(), (0.0, 6.5));
        assert!(parse_range("1:1").is_err());
        assert!(parse_range("abc").is_err());
    }

    #[test]
    fn argument_shapes() {
        let parse = |args: &[&str]| {
            Cli::try_parse_from(std::iter::once("blochgeo").chain(args.iter().copied()))
        };
        assert!(parse(&["distance", "--metric", "bures", "--a", "0.5,0", "--b", "0.5,1"]).is_ok());
        assert!(parse(&[
            "distance",
            "--metric",
            "bures",
            "--a3",
            "0.1,0.2,0.3",
            "--b3",
            "-0.2,0.1,0.4"
        ])
        .is_ok());
        assert!(parse(&["distance", "--metric", "bures", "--a", "0.5,0"]).is_err());
        assert!(
            parse(&["distance", "--metric", "bures", "--a", "0.5,0", "--b3", "0,0,1"]).is_err()
        );
        assert!(parse(&["ranking"]).is_err());
        assert!(parse(&["verify"]).is_err());
        assert!(parse(&["verify", "--seed", "1", "--suite", "nope"]).is_err());
        assert!(parse(&[
            "geodesic",
            "--ra",
            "0.5",
            "--ra-prime",
            "-0.1",
            "--theta",
            "0:3"
        ])
        .is_ok());
    }
}
