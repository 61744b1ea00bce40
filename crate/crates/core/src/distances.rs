//! Finite distances: Bures and Sjöqvist geodesic lengths, the Uhlmann
//! fidelity behind the Bures distance, and the classical Euclidean and
//! taxicab distances on the `(x, z)` plane.

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::linalg::{self, Matrix2};
use crate::metrics::{MetricKind, SJOQVIST_MIN_RADIUS};
use crate::states::{BlochVector, DensityMatrix, PlanarState, STATE_TOL};

/// Eigenvalue clamp used for matrix square roots.
pub const PSD_CLAMP: f64 = 1e-12;

/// Maximum Bures distance, reached by orthogonal pure states.
pub const BURES_MAX: f64 = std::f64::consts::SQRT_2;
/// Maximum Sjöqvist distance between states with equal purity and `|Δθ| ≤ π`.
pub const SJOQVIST_MAX: f64 = std::f64::consts::FRAC_PI_2;

/// Qubit fidelity `tr(ρ₁ρ₂) + 2√(det ρ₁ det ρ₂)`.
pub fn fidelity(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    let (d1, d2) = (rho1.det(), rho2.det());
    for d in [d1, d2] {
        if d < -PSD_CLAMP {
            return Err(GeometryError::InvalidDensity(format!(
                "negative determinant {d:e}"
            )));
        }
    }
    let overlap = (*rho1.matrix() * *rho2.matrix()).trace().re;
    let f = overlap + 2.0 * (d1.max(0.0) * d2.max(0.0)).sqrt();
    Ok(f.clamp(0.0, 1.0))
}

/// Uhlmann fidelity `(tr √(√ρ₁ ρ₂ √ρ₁))²` through eigendecompositions.
pub fn fidelity_general(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    let root_trace = uhlmann_root_trace(rho1, rho2)?;
    Ok((root_trace * root_trace).min(1.0))
}

fn uhlmann_root_trace(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    let not_psd = || GeometryError::InvalidDensity("intermediate matrix is not positive".into());
    let s1 = rho1.matrix().sqrt_psd(PSD_CLAMP).ok_or_else(not_psd)?;
    let inner: Matrix2 = s1 * *rho2.matrix() * s1;
    // Symmetrize away round-off before the second square root.
    let inner = (inner + inner.adjoint()).scale(0.5.into());
    let root = inner.sqrt_psd(PSD_CLAMP).ok_or_else(not_psd)?;
    Ok(root.trace().re)
}

/// `√2 √(1 − √F)` evaluated from `1 − F` without cancellation.
fn bures_from_infidelity(one_minus_f: f64) -> f64 {
    let one_minus_f = one_minus_f.clamp(0.0, 1.0);
    let sqrt_f = (1.0 - one_minus_f).sqrt();
    (2.0 * one_minus_f / (1.0 + sqrt_f)).sqrt()
}

/// Bures distance between planar states.
///
/// Equal to `√2 [1 − √F]^{1/2}` with the qubit fidelity
/// `F = (1 + r_a r_b cos Δθ)/2 + √((1 − r_a²)(1 − r_b²))/2`, computed through
/// `1 − F` so that coincident states give exactly zero.
pub fn bures_distance(a: &PlanarState, b: &PlanarState) -> Result<f64> {
    check_ball(a)?;
    check_ball(b)?;
    let (ra, rb) = (a.r.min(1.0), b.r.min(1.0));
    let mixed = ((1.0 - ra) * (1.0 + ra) * (1.0 - rb) * (1.0 + rb)).sqrt();
    let one_minus_f = 0.5 * (1.0 - ra * rb * (a.theta - b.theta).cos() - mixed);
    Ok(bures_from_infidelity(one_minus_f))
}

/// Bures distance between arbitrary density matrices, `√2 [1 − tr√(√ρ₁ρ₂√ρ₁)]^{1/2}`.
pub fn bures_distance_general(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    let t = uhlmann_root_trace(rho1, rho2)?;
    Ok((2.0 * (1.0 - t.min(1.0))).sqrt())
}

/// Bures distance between Bloch vectors in any orientation.
pub fn bures_distance_bloch(a: &BlochVector, b: &BlochVector) -> Result<f64> {
    let (a, b) = (
        BlochVector::from_array(a.to_array())?,
        BlochVector::from_array(b.to_array())?,
    );
    let na2 = linalg::dot(&a.to_array(), &a.to_array()).min(1.0);
    let nb2 = linalg::dot(&b.to_array(), &b.to_array()).min(1.0);
    let mixed = ((1.0 - na2) * (1.0 - nb2)).sqrt();
    let one_minus_f = 0.5 * (1.0 - linalg::dot(&a.to_array(), &b.to_array()) - mixed);
    Ok(bures_from_infidelity(one_minus_f))
}

fn check_ball(s: &PlanarState) -> Result<()> {
    if !(s.r >= 0.0 && s.r <= 1.0 + STATE_TOL) || !s.theta.is_finite() {
        return Err(GeometryError::OutOfRange(format!(
            "radius r = {} not in [0, 1]",
            s.r
        )));
    }
    Ok(())
}

fn check_sjoqvist(s: &PlanarState) -> Result<()> {
    check_ball(s)?;
    if s.r < SJOQVIST_MIN_RADIUS {
        return Err(GeometryError::Singular {
            metric: "sjoqvist",
            p: s.r,
        });
    }
    Ok(())
}

/// Sjöqvist geodesic length `½ √(Δθ² + (asin r_b − asin r_a)²)`.
///
/// Δθ is used as given, without wrapping; see [`canonical_angle_gap`].
pub fn sjoqvist_distance(a: &PlanarState, b: &PlanarState) -> Result<f64> {
    check_sjoqvist(a)?;
    check_sjoqvist(b)?;
    let radial = b.r.min(1.0).asin() - a.r.min(1.0).asin();
    Ok(0.5 * (b.theta - a.theta).hypot(radial))
}

/// Sjöqvist distance using the shorter angular route, `|Δθ|` reduced to `[0, π]`.
pub fn sjoqvist_distance_wrapped(a: &PlanarState, b: &PlanarState) -> Result<f64> {
    let b = PlanarState {
        r: b.r,
        theta: a.theta + canonical_angle_gap(a.theta, b.theta),
    };
    sjoqvist_distance(a, &b)
}

/// Sjöqvist distance between Bloch vectors in any orientation; the angular
/// part is the angle between the two directions.
pub fn sjoqvist_distance_bloch(a: &BlochVector, b: &BlochVector) -> Result<f64> {
    let (a, b) = (
        BlochVector::from_array(a.to_array())?,
        BlochVector::from_array(b.to_array())?,
    );
    let (na, nb) = (a.norm(), b.norm());
    for n in [na, nb] {
        if n < SJOQVIST_MIN_RADIUS {
            return Err(GeometryError::Singular {
                metric: "sjoqvist",
                p: n,
            });
        }
    }
    let (ua, ub) = (a.to_array(), b.to_array());
    let angle = linalg::norm(&linalg::cross(&ua, &ub)).atan2(linalg::dot(&ua, &ub));
    let radial = nb.min(1.0).asin() - na.min(1.0).asin();
    Ok(0.5 * angle.hypot(radial))
}

/// `|θ_b − θ_a|` reduced to `[0, π]`.
pub fn canonical_angle_gap(theta_a: f64, theta_b: f64) -> f64 {
    let d = (theta_b - theta_a).rem_euclid(std::f64::consts::TAU);
    if d > std::f64::consts::PI {
        std::f64::consts::TAU - d
    } else {
        d
    }
}

pub fn euclid_distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

pub fn taxicab_distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).abs() + (a[1] - b[1]).abs()
}

/// Which closed form produced a [`DistanceReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    /// Planar fidelity expression for the Bures distance.
    BuresPlanar,
    /// Matrix square-root expression for the Bures distance.
    BuresMatrix,
    /// Length of the straight line in the `(θ, asin r)` strip.
    SjoqvistStrip,
    EuclidXz,
    TaxicabXz,
}

/// Endpoints of a distance evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Endpoints {
    Planar { a: PlanarState, b: PlanarState },
    Cartesian { a: [f64; 2], b: [f64; 2] },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub kind: MetricKind,
    pub endpoints: Endpoints,
    pub value: f64,
    pub formula: Formula,
}

/// Distance between planar states under any metric kind. Classical kinds
/// act on the Cartesian coordinates `(r sin θ, r cos θ)`.
pub fn planar_distance(
    kind: MetricKind,
    a: &PlanarState,
    b: &PlanarState,
) -> Result<DistanceReport> {
    let planar = Endpoints::Planar { a: *a, b: *b };
    let (value, formula, endpoints) = match kind {
        MetricKind::Bures => (bures_distance(a, b)?, Formula::BuresPlanar, planar),
        MetricKind::Sjoqvist => (sjoqvist_distance(a, b)?, Formula::SjoqvistStrip, planar),
        MetricKind::Euclid | MetricKind::Taxicab => {
            check_ball(a)?;
            check_ball(b)?;
            let (pa, pb) = (a.to_xz(), b.to_xz());
            let endpoints = Endpoints::Cartesian { a: pa, b: pb };
            if kind == MetricKind::Euclid {
                (euclid_distance(pa, pb), Formula::EuclidXz, endpoints)
            } else {
                (taxicab_distance(pa, pb), Formula::TaxicabXz, endpoints)
            }
        }
    };
    Ok(DistanceReport {
        kind,
        endpoints,
        value,
        formula,
    })
}

/// Distance between Cartesian points; only the classical kinds apply.
pub fn cartesian_distance(kind: MetricKind, a: [f64; 2], b: [f64; 2]) -> Result<DistanceReport> {
    let (value, formula) = match kind {
        MetricKind::Euclid => (euclid_distance(a, b), Formula::EuclidXz),
        MetricKind::Taxicab => (taxicab_distance(a, b), Formula::TaxicabXz),
        _ => {
            return Err(GeometryError::UnsupportedKind {
                kind: kind.name(),
                reason: "quantum distances need states, not bare Cartesian points",
            })
        }
    };
    if !value.is_finite() {
        return Err(GeometryError::OutOfRange(
            "non-finite Cartesian input".into(),
        ));
    }
    Ok(DistanceReport {
        kind,
        endpoints: Endpoints::Cartesian { a, b },
        value,
        formula,
    })
}
