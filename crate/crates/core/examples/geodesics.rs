//! Bures and Sjöqvist geodesics launched from r = 1/2 with slope 0.1,
//! checked against a direct integration of the geodesic equation.

use std::f64::consts::TAU;

use bloch_geometry::geodesics::{
    bures_geodesic_ivp, check_against_oracle, sample_geodesic, sjoqvist_geodesic_ivp, Geodesic,
    GeodesicCurve, DEFAULT_ORACLE_STEPS,
};
use bloch_geometry::metrics::MetricKind;

pub struct GeodesicSummary {
    pub bures: GeodesicCurve,
    pub sjoqvist: GeodesicCurve,
    pub bures_oracle_deviation: f64,
    pub sjoqvist_oracle_deviation: f64,
}

pub fn run_example() -> Result<GeodesicSummary, Box<dyn std::error::Error>> {
    let (ra, ra_prime) = (0.5, 0.1);
    let bures = sample_geodesic(
        Geodesic::Bures(bures_geodesic_ivp(ra, ra_prime, 0.0)?),
        0.0,
        TAU,
        1000,
    )?;
    let sjoqvist = sample_geodesic(
        Geodesic::Sjoqvist(sjoqvist_geodesic_ivp(ra, ra_prime, 0.0)?),
        0.0,
        TAU,
        1000,
    )?;
    let b = check_against_oracle(
        MetricKind::Bures,
        ra,
        ra_prime,
        0.0,
        TAU,
        DEFAULT_ORACLE_STEPS,
    )?;
    let s = check_against_oracle(
        MetricKind::Sjoqvist,
        ra,
        ra_prime,
        0.0,
        TAU,
        DEFAULT_ORACLE_STEPS,
    )?;
    Ok(GeodesicSummary {
        bures,
        sjoqvist,
        bures_oracle_deviation: b.max_deviation,
        sjoqvist_oracle_deviation: s.max_deviation,
    })
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = run_example()?;
    for c in [&s.bures, &s.sjoqvist] {
        let r_min = c.r.iter().copied().fold(f64::MAX, f64::min);
        let r_max = c.r.iter().copied().fold(f64::MIN, f64::max);
        println!(
            "{:>8}: r in [{r_min:.4}, {r_max:.4}], length {:.6}",
            c.kind(),
            c.total_length()
        );
        if !c.boundary_contacts.is_empty() {
            println!("          touches r = 1 at θ = {:?}", c.boundary_contacts);
        }
        if !c.turning_points.is_empty() {
            println!("          closest approach at θ = {:?}", c.turning_points);
        }
    }
    println!(
        "oracle deviation: bures {:e}, sjoqvist {:e}",
        s.bures_oracle_deviation, s.sjoqvist_oracle_deviation
    );
    Ok(())
}
