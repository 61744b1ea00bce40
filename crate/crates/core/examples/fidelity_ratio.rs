//! Where the Sjöqvist fidelity score stays below the Bures one.

use std::f64::consts::FRAC_PI_2;

use bloch_geometry::analysis::fidelity_ratio_field;
use bloch_geometry::states::PlanarState;

pub struct RatioSummary {
    pub coarse: f64,
    pub fine: f64,
    pub undefined_cells: usize,
}

pub fn run_example() -> Result<RatioSummary, Box<dyn std::error::Error>> {
    let source = PlanarState::new(0.5, FRAC_PI_2)?;
    let coarse = fidelity_ratio_field(source, 256, 256)?;
    let fine = fidelity_ratio_field(source, 512, 512)?;
    Ok(RatioSummary {
        coarse: coarse.area_fraction,
        fine: fine.area_fraction,
        undefined_cells: fine.cells_undefined,
    })
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = run_example()?;
    println!(
        "area with 0 <= ratio <= 1: {:.6} (256²), {:.6} (512²)",
        s.coarse, s.fine
    );
    println!("undefined cells: {}", s.undefined_cells);
    Ok(())
}
