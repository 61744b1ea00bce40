//! Rotate an arbitrary pair of Bloch vectors into the xz-plane and check
//! that both quantum distances survive the move.

use bloch_geometry::distances::{
    bures_distance, bures_distance_general, sjoqvist_distance, sjoqvist_distance_bloch,
};
use bloch_geometry::rotations::{
    reduce_to_xz_plane, so3_from_su2, su2_from_axis_angle, PlaneReduction,
};
use bloch_geometry::states::{bloch_to_density, BlochVector};

pub struct ReductionSummary {
    pub reduction: PlaneReduction,
    pub bures_before: f64,
    pub bures_after: f64,
    pub sjoqvist_before: f64,
    pub sjoqvist_after: f64,
    /// Largest entry of `R(U) − R(−U)`.
    pub double_cover_gap: f64,
}

pub fn run_example() -> Result<ReductionSummary, Box<dyn std::error::Error>> {
    let p1 = BlochVector::new(0.1, 0.2, 0.3)?;
    let p2 = BlochVector::new(-0.2, 0.1, 0.4)?;
    let reduction = reduce_to_xz_plane(&p1, &p2)?;
    let (a, b) = reduction.planar_pair();
    let u = su2_from_axis_angle(1.2, [0.0, 0.6, 0.8])?;
    Ok(ReductionSummary {
        reduction,
        bures_before: bures_distance_general(&bloch_to_density(&p1)?, &bloch_to_density(&p2)?)?,
        bures_after: bures_distance(&a, &b)?,
        sjoqvist_before: sjoqvist_distance_bloch(&p1, &p2)?,
        sjoqvist_after: sjoqvist_distance(&a, &b)?,
        double_cover_gap: so3_from_su2(&u).max_abs_diff(&so3_from_su2(&-u)),
    })
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = run_example()?;
    let (a, b) = s.reduction.planar_pair();
    println!(
        "reduced pair: ({:.6}, {:.6}) and ({:.6}, {:.6})",
        a.r, a.theta, b.r, b.theta
    );
    println!("bures    {:.15} -> {:.15}", s.bures_before, s.bures_after);
    println!(
        "sjoqvist {:.15} -> {:.15}",
        s.sjoqvist_before, s.sjoqvist_after
    );
    println!("R(U) - R(-U) = {:e}", s.double_cover_gap);
    Ok(())
}
