//! Finite distances between states: planar closed forms, the general
//! matrix formula and the classical foils.

use std::f64::consts::PI;

use bloch_geometry::distances::{
    bures_distance, bures_distance_general, planar_distance, sjoqvist_distance,
};
use bloch_geometry::metrics::MetricKind;
use bloch_geometry::states::{bloch_to_density, PlanarState};

pub struct DistanceRow {
    pub a: PlanarState,
    pub b: PlanarState,
    pub bures: f64,
    pub bures_matrix: f64,
    pub sjoqvist: f64,
    pub euclid: f64,
    pub taxicab: f64,
}

pub fn run_example() -> Result<Vec<DistanceRow>, Box<dyn std::error::Error>> {
    let pairs = [
        (PlanarState::new(0.5, 0.0)?, PlanarState::new(0.5, PI)?),
        (PlanarState::new(0.125, 0.0)?, PlanarState::new(0.25, PI)?),
        (PlanarState::new(1.0, 0.0)?, PlanarState::new(1.0, 0.3)?),
        (PlanarState::new(0.9, 0.4)?, PlanarState::new(0.2, 2.5)?),
    ];
    pairs
        .into_iter()
        .map(|(a, b)| {
            let general = bures_distance_general(
                &bloch_to_density(&a.to_bloch())?,
                &bloch_to_density(&b.to_bloch())?,
            )?;
            Ok(DistanceRow {
                a,
                b,
                bures: bures_distance(&a, &b)?,
                bures_matrix: general,
                sjoqvist: sjoqvist_distance(&a, &b)?,
                euclid: planar_distance(MetricKind::Euclid, &a, &b)?.value,
                taxicab: planar_distance(MetricKind::Taxicab, &a, &b)?.value,
            })
        })
        .collect()
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>14} {:>14} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "a", "b", "bures", "(matrix)", "sjoqvist", "euclid", "taxicab"
    );
    for row in run_example()? {
        println!(
            "({:.3}, {:.3}) ({:.3}, {:.3}) {:10.6} {:10.6} {:10.6} {:10.6} {:10.6}",
            row.a.r,
            row.a.theta,
            row.b.r,
            row.b.theta,
            row.bures,
            row.bures_matrix,
            row.sjoqvist,
            row.euclid,
            row.taxicab
        );
    }
    Ok(())
}
