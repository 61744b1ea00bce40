//! Qubit state representations: Bloch vectors, spherical and planar
//! coordinates, and the 2×2 density matrix `ρ = (I + p·σ)/2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::linalg::{self, Matrix2, Vec3};

/// Slack allowed on `|p| ≤ 1` and on the density-matrix invariants.
pub const STATE_TOL: f64 = 1e-12;
/// Largest `|p_y|` accepted as lying in the xz-plane.
pub const PLANE_TOL: f64 = 1e-9;

/// Bloch vector of a qubit state; `|p| = 1` on pure states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl BlochVector {
    pub const ORIGIN: Self = Self {
        px: 0.0,
        py: 0.0,
        pz: 0.0,
    };

    /// Checked constructor; rejects `|p| > 1 + STATE_TOL`.
    pub fn new(px: f64, py: f64, pz: f64) -> Result<Self> {
        Self::from_array([px, py, pz])
    }

    pub fn from_array(p: Vec3) -> Result<Self> {
        let norm = linalg::norm(&p);
        if !norm.is_finite() || norm > 1.0 + STATE_TOL {
            return Err(GeometryError::Unphysical { norm });
        }
        Ok(Self {
            px: p[0],
            py: p[1],
            pz: p[2],
        })
    }

    pub fn to_array(self) -> Vec3 {
        [self.px, self.py, self.pz]
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.to_array())
    }

    /// Unit direction `p/|p|`, or `None` at the maximally mixed state.
    pub fn direction(&self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0).then(|| linalg::scale(&self.to_array(), 1.0 / n))
    }

    pub fn is_pure(&self) -> bool {
        (self.norm() - 1.0).abs() <= STATE_TOL
    }

    pub fn to_spherical(&self) -> SphericalState {
        let p = self.norm();
        if p == 0.0 {
            return SphericalState {
                p: 0.0,
                theta: 0.0,
                phi: 0.0,
            };
        }
        let theta = (self.pz / p).clamp(-1.0, 1.0).acos();
        let mut phi = self.py.atan2(self.px);
        if phi < 0.0 {
            phi += std::f64::consts::TAU;
        }
        if phi >= std::f64::consts::TAU {
            phi = 0.0;
        }
        SphericalState { p, theta, phi }
    }
}

/// Spherical coordinates `(p, θ, φ)` with θ measured from +z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalState {
    pub p: f64,
    pub theta: f64,
    pub phi: f64,
}

impl SphericalState {
    pub fn new(p: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0 + STATE_TOL).contains(&p) {
            return Err(GeometryError::OutOfRange(format!(
                "radial length p = {p} not in [0, 1]"
            )));
        }
        Ok(Self { p, theta, phi })
    }

    pub fn to_bloch(&self) -> BlochVector {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        BlochVector {
            px: self.p * st * cp,
            py: self.p * st * sp,
            pz: self.p * ct,
        }
    }
}

/// State in the xz-plane: `p = r (sin θ, 0, cos θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarState {
    pub r: f64,
    pub theta: f64,
}

impl PlanarState {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !r.is_finite() || !theta.is_finite() {
            return Err(GeometryError::OutOfRange(format!(
                "non-finite planar state ({r}, {theta})"
            )));
        }
        if !(0.0..=1.0 + STATE_TOL).contains(&r) {
            return Err(GeometryError::OutOfRange(format!(
                "radius r = {r} not in [0, 1]"
            )));
        }
        Ok(Self { r, theta })
    }

    pub fn to_bloch(&self) -> BlochVector {
        let (s, c) = self.theta.sin_cos();
        BlochVector {
            px: self.r * s,
            py: 0.0,
            pz: self.r * c,
        }
    }

    /// Cartesian `(x, z)` coordinates in the plane.
    pub fn to_xz(&self) -> [f64; 2] {
        let (s, c) = self.theta.sin_cos();
        [self.r * s, self.r * c]
    }

    pub fn to_spherical(&self) -> SphericalState {
        SphericalState {
            p: self.r,
            theta: self.theta,
            phi: 0.0,
        }
    }
}

/// Map an in-plane Bloch vector to `(r, θ)`.
pub fn to_planar(p: &BlochVector) -> Result<PlanarState> {
    if p.py.abs() > PLANE_TOL {
        return Err(GeometryError::NotPlanar { py: p.py });
    }
    let r = p.norm();
    let theta = if r == 0.0 { 0.0 } else { p.px.atan2(p.pz) };
    Ok(PlanarState { r, theta })
}

/// A single-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Matrix2);

impl DensityMatrix {
    /// Validate a raw matrix: Hermitian, unit trace, no eigenvalue below `-STATE_TOL`.
    pub fn from_matrix(m: Matrix2) -> Result<Self> {
        let defect = m.hermiticity_defect();
        if !(defect <= STATE_TOL) {
            return Err(GeometryError::InvalidDensity(format!(
                "not Hermitian (defect {defect:e})"
            )));
        }
        let tr = m.trace();
        if !((tr.re - 1.0).abs() <= STATE_TOL && tr.im.abs() <= STATE_TOL) {
            return Err(GeometryError::InvalidDensity(format!("trace {tr} != 1")));
        }
        let (vals, _) = m.hermitian_eigen();
        if vals[0] < -STATE_TOL {
            return Err(GeometryError::InvalidDensity(format!(
                "negative eigenvalue {:e}",
                vals[0]
            )));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    pub fn det(&self) -> f64 {
        self.0.det().re
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        self.0.hermitian_eigen().0
    }
}

/// `ρ = (I + p·σ)/2`.
pub fn bloch_to_density(p: &BlochVector) -> Result<DensityMatrix> {
    let p = BlochVector::from_array(p.to_array())?;
    let h = Complex64::new(0.5, 0.0);
    let m = Matrix2::new(
        h * (1.0 + p.pz),
        h * Complex64::new(p.px, -p.py),
        h * Complex64::new(p.px, p.py),
        h * (1.0 - p.pz),
    );
    Ok(DensityMatrix(m))
}

/// `p_i = tr(ρ σ_i)`.
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    let rho = DensityMatrix::from_matrix(rho.0)?;
    let mut p = [0.0; 3];
    for (i, pi) in p.iter_mut().enumerate() {
        *pi = (rho.0 * Matrix2::pauli(i)).trace().re;
    }
    BlochVector::from_array(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn center_is_maximally_mixed() {
        let rho = bloch_to_density(&BlochVector::ORIGIN).unwrap();
        let half = Matrix2::IDENTITY.scale(c(0.5));
        assert!(rho.matrix().max_abs_diff(&half) < 1e-16);
        assert_eq!(rho.eigenvalues(), [0.5, 0.5]);
    }

    #[test]
    fn north_pole_is_pure() {
        let rho = bloch_to_density(&BlochVector::new(0.0, 0.0, 1.0).unwrap()).unwrap();
        let expected = Matrix2::new(c(1.0), c(0.0), c(0.0), c(0.0));
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-16);
        let m = *rho.matrix();
        assert!((m * m).max_abs_diff(&m) < 1e-10);
    }

    #[test]
    fn half_x_state() {
        let rho = bloch_to_density(&BlochVector::new(0.5, 0.0, 0.0).unwrap()).unwrap();
        let expected = Matrix2::new(c(0.5), c(0.25), c(0.25), c(0.5));
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-16);
        assert!((rho.purity() - 5.0 / 8.0).abs() < 1e-15);

        let back = density_to_bloch(&rho).unwrap();
        assert!((back.px - 0.5).abs() < 1e-15 && back.py.abs() < 1e-15 && back.pz.abs() < 1e-15);
    }

    #[test]
    fn rejects_unphysical() {
        assert!(matches!(
            bloch_to_density(&BlochVector {
                px: 0.8,
                py: 0.8,
                pz: 0.0
            }),
            Err(GeometryError::Unphysical { .. })
        ));
        assert!(BlochVector::new(0.0, 0.0, 1.0 + 1e-13).is_ok());
        assert!(BlochVector::new(0.0, 0.0, 1.0 + 1e-9).is_err());
    }

    #[test]
    fn density_validation() {
        let non_herm = Matrix2::new(c(0.5), c(0.3), c(0.1), c(0.5));
        assert!(DensityMatrix::from_matrix(non_herm).is_err());
        let bad_trace = Matrix2::new(c(0.6), c(0.0), c(0.0), c(0.6));
        assert!(DensityMatrix::from_matrix(bad_trace).is_err());
        let negative = Matrix2::new(c(1.2), c(0.0), c(0.0), c(-0.2));
        assert!(DensityMatrix::from_matrix(negative).is_err());
    }

    #[test]
    fn planar_conversion() {
        let s = to_planar(&BlochVector::new(0.0, 0.0, 0.5).unwrap()).unwrap();
        assert_eq!((s.r, s.theta), (0.5, 0.0));
        let s = to_planar(&BlochVector::new(1.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(s.r, 1.0);
        assert!((s.theta - FRAC_PI_2).abs() < 1e-16);

        let p = BlochVector::new(0.5 * 0.3f64.sin(), 0.0, 0.5 * 0.3f64.cos()).unwrap();
        let s = to_planar(&p).unwrap();
        assert!((s.r - 0.5).abs() < 1e-15 && (s.theta - 0.3).abs() < 1e-15);

        let s = to_planar(&BlochVector::new(0.0, 0.0, -0.5).unwrap()).unwrap();
        assert!((s.theta - PI).abs() < 1e-16);
    }

    #[test]
    fn planar_rejects_off_plane() {
        let p = BlochVector::new(0.3, 1e-6, 0.2).unwrap();
        assert!(matches!(
            to_planar(&p),
            Err(GeometryError::NotPlanar { .. })
        ));
        let p = BlochVector::new(0.3, 1e-10, 0.2).unwrap();
        assert!(to_planar(&p).is_ok());
    }

    #[test]
    fn spherical_round_trip() {
        let s = SphericalState::new(0.7, 1.1, 4.0).unwrap();
        let back = s.to_bloch().to_spherical();
        assert!((back.p - 0.7).abs() < 1e-12);
        assert!((back.theta - 1.1).abs() < 1e-12);
        assert!((back.phi - 4.0).abs() < 1e-12);
    }
}
