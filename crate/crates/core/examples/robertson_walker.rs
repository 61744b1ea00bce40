//! The Bures metric on the Bloch ball as the closed spatial slice of a
//! Robertson–Walker universe.

use bloch_geometry::analysis::{
    random_rw_samples, rw_spatial_equivalence, rw_spatial_line_element,
    rw_spatial_line_element_areal, Curvature, RwParams, RwReport,
};

pub struct RwSummary {
    pub report: RwReport,
    /// Same point evaluated in the areal and the angular chart.
    pub chart_gap: f64,
}

pub fn run_example() -> Result<RwSummary, Box<dyn std::error::Error>> {
    let report = rw_spatial_equivalence(&random_rw_samples(7, 1000))?;
    let params = RwParams {
        chi: 0.7,
        theta: 1.0,
        phi: 0.0,
        curvature: Curvature::Closed,
        scale: 1.0,
    };
    let d = (1e-3, -2e-3, 5e-4);
    let angular = rw_spatial_line_element(&params, d);
    let areal = rw_spatial_line_element_areal(
        Curvature::Closed,
        1.0,
        params.chi.sin(),
        params.theta,
        (params.chi.cos() * d.0, d.1, d.2),
    );
    Ok(RwSummary {
        report,
        chart_gap: (angular - areal).abs() / angular,
    })
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = run_example()?;
    println!(
        "{} samples: max relative deviation {:e}, max absolute {:e}",
        s.report.samples, s.report.max_rel_deviation, s.report.max_abs_deviation
    );
    println!("areal vs angular chart: {:e}", s.chart_gap);
    Ok(())
}
