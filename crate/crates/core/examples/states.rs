//! Bloch vectors, density matrices and the planar chart.

use bloch_geometry::states::{
    bloch_to_density, density_to_bloch, to_planar, BlochVector, PlanarState,
};

pub struct StatesSummary {
    pub purity: f64,
    pub eigenvalues: [f64; 2],
    pub round_trip_error: f64,
    pub planar: PlanarState,
}

pub fn run_example() -> Result<StatesSummary, Box<dyn std::error::Error>> {
    let p = BlochVector::new(0.3, 0.0, -0.4)?;
    let rho = bloch_to_density(&p)?;
    let back = density_to_bloch(&rho)?;
    let round_trip_error = (back.px - p.px)
        .abs()
        .max((back.py - p.py).abs())
        .max((back.pz - p.pz).abs());
    Ok(StatesSummary {
        purity: rho.purity(),
        eigenvalues: rho.eigenvalues(),
        round_trip_error,
        planar: to_planar(&p)?,
    })
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = run_example()?;
    println!("tr ρ² = {:.6}", s.purity);
    println!(
        "eigenvalues = {:.6}, {:.6}",
        s.eigenvalues[0], s.eigenvalues[1]
    );
    println!("round trip error = {:e}", s.round_trip_error);
    println!("planar (r, θ) = ({:.6}, {:.6})", s.planar.r, s.planar.theta);
    Ok(())
}
