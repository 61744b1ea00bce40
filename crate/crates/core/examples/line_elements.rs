//! One displacement, four coordinate forms of the same line element.

use bloch_geometry::linalg;
use bloch_geometry::metrics::{
    extrinsic_line_element_fd, line_element_cartesian, line_element_hyperspherical,
    line_element_spherical, MetricKind, TangentDisplacement, FD_STEP,
};
use bloch_geometry::states::SphericalState;

/// `ds²` from the Cartesian, spherical, hyperspherical and embedded forms.
pub struct LineElementRow {
    pub kind: MetricKind,
    pub cartesian: f64,
    pub spherical: f64,
    pub hyperspherical: f64,
    pub extrinsic: f64,
}

impl LineElementRow {
    pub fn spread(&self) -> f64 {
        let v = [
            self.cartesian,
            self.spherical,
            self.hyperspherical,
            self.extrinsic,
        ];
        let hi = v.iter().copied().fold(f64::MIN, f64::max);
        let lo = v.iter().copied().fold(f64::MAX, f64::min);
        (hi - lo) / hi
    }
}

pub fn run_example() -> Result<Vec<LineElementRow>, Box<dyn std::error::Error>> {
    let s = SphericalState::new(0.6, 1.1, 0.4)?;
    let p = s.to_bloch();
    let dp = linalg::scale(&[0.2, -0.5, 0.84], 1e-5);
    let d = TangentDisplacement::Cartesian(dp);
    let (dr, dtheta, dphi) = d.to_spherical(&s)?;
    let chi = s.p.asin();
    let mut rows = Vec::new();
    for kind in [MetricKind::Bures, MetricKind::Sjoqvist] {
        rows.push(LineElementRow {
            kind,
            cartesian: line_element_cartesian(kind, &p, &d)?,
            spherical: line_element_spherical(kind, &s, &d)?,
            hyperspherical: 0.25
                * line_element_hyperspherical(kind, chi, s.theta, (dr / chi.cos(), dtheta, dphi))?,
            extrinsic: 0.25 * extrinsic_line_element_fd(kind, &p, &dp, FD_STEP)?,
        });
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    for row in run_example()? {
        println!(
            "{:>8}: cartesian {:.12e}  spherical {:.12e}  hyperspherical {:.12e}  extrinsic {:.12e}  spread {:.1e}",
            row.kind, row.cartesian, row.spherical, row.hyperspherical, row.extrinsic, row.spread()
        );
    }
    Ok(())
}
