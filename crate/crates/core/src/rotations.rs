//! Rotations of the Bloch ball: the SU(2) → SO(3) correspondence and a
//! two-step reduction that moves any pair of states into the xz-plane.
//!
//! Both quantum distances are unitarily invariant, so the reduction lets the
//! planar closed forms handle arbitrary pairs.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{GeometryError, Result};
use crate::linalg::{self, Matrix2, Vec3};
use crate::states::{BlochVector, DensityMatrix, PlanarState};

/// Allowed deviation of a rotation axis from unit length.
pub const AXIS_TOL: f64 = 1e-10;
/// Below this `‖p₁ × ẑ‖` the first reduction step is skipped.
pub const AXIS_DEGENERACY: f64 = 1e-12;

fn check_axis(n: &Vec3) -> Result<()> {
    let norm = linalg::norm(n);
    if !((norm - 1.0).abs() <= AXIS_TOL) {
        return Err(GeometryError::NonUnitAxis { norm });
    }
    Ok(())
}

/// A 2×2 special unitary matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Matrix(pub Matrix2);

impl Su2Matrix {
    pub fn matrix(&self) -> &Matrix2 {
        &self.0
    }

    /// `max |U U† − I|` entrywise.
    pub fn unitarity_defect(&self) -> f64 {
        (self.0 * self.0.adjoint()).max_abs_diff(&Matrix2::IDENTITY)
    }

    pub fn det(&self) -> Complex64 {
        self.0.det()
    }
}

impl std::ops::Neg for Su2Matrix {
    type Output = Su2Matrix;

    fn neg(self) -> Su2Matrix {
        Su2Matrix(-self.0)
    }
}

/// `U(α, n̂) = exp(−i α n̂·σ/2) = cos(α/2) I − i sin(α/2) n̂·σ`.
pub fn su2_from_axis_angle(alpha: f64, n_hat: Vec3) -> Result<Su2Matrix> {
    check_axis(&n_hat)?;
    let (s, c) = (0.5 * alpha).sin_cos();
    let [nx, ny, nz] = n_hat;
    Ok(Su2Matrix(Matrix2::new(
        Complex64::new(c, -nz * s),
        Complex64::new(-ny * s, -nx * s),
        Complex64::new(ny * s, -nx * s),
        Complex64::new(c, nz * s),
    )))
}

/// A 3×3 real rotation matrix acting on Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotationMatrix3(pub [[f64; 3]; 3]);

impl RotationMatrix3 {
    pub const IDENTITY: Self = Self([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let m = &self.0;
        [
            linalg::dot(&m[0], v),
            linalg::dot(&m[1], v),
            linalg::dot(&m[2], v),
        ]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        let mut t = [[0.0; 3]; 3];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = m[j][i];
            }
        }
        Self(t)
    }

    /// Matrix product `self · rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        Self(out)
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        linalg::dot(&m[0], &linalg::cross(&m[1], &m[2]))
    }

    /// `max |RᵀR − I|` entrywise.
    pub fn orthogonality_defect(&self) -> f64 {
        self.transpose().compose(self).max_abs_diff(&Self::IDENTITY)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }
}

/// `R_ij = ½ tr(σ_i U σ_j U†)`.
pub fn so3_from_su2(u: &Su2Matrix) -> RotationMatrix3 {
    let ud = u.0.adjoint();
    let mut r = [[0.0; 3]; 3];
    for (i, row) in r.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = 0.5
                * (Matrix2::pauli(i) * u.0 * Matrix2::pauli(j) * ud)
                    .trace()
                    .re;
        }
    }
    RotationMatrix3(r)
}

/// Counterclockwise rotation by `α` about `n̂`, written out entry by entry.
pub fn rotation_from_axis_angle(alpha: f64, n_hat: Vec3) -> Result<RotationMatrix3> {
    check_axis(&n_hat)?;
    let (s, c) = alpha.sin_cos();
    let t = 1.0 - c;
    let [nx, ny, nz] = n_hat;
    Ok(RotationMatrix3([
        [c + nx * nx * t, nx * ny * t - nz * s, nx * nz * t + ny * s],
        [ny * nx * t + nz * s, c + ny * ny * t, ny * nz * t - nx * s],
        [nz * nx * t - ny * s, nz * ny * t + nx * s, c + nz * nz * t],
    ]))
}

/// Clockwise rotation by `φ` about ẑ: `[[cos φ, sin φ, 0], [−sin φ, cos φ, 0], [0, 0, 1]]`.
pub fn rotation_about_z_clockwise(phi: f64) -> RotationMatrix3 {
    let (s, c) = phi.sin_cos();
    RotationMatrix3([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])
}

pub fn rotate_bloch(r: &RotationMatrix3, p: &BlochVector) -> BlochVector {
    let [px, py, pz] = r.apply(&p.to_array());
    BlochVector { px, py, pz }
}

/// `U ρ U†`.
pub fn rotate_density(u: &Su2Matrix, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let m = u.0 * *rho.matrix() * u.0.adjoint();
    DensityMatrix::from_matrix((m + m.adjoint()).scale(0.5.into()))
}

/// Result of moving a pair of Bloch vectors into the xz-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneReduction {
    /// Composition `step2 · step1`.
    pub r_total: RotationMatrix3,
    /// Rotation about `p₁ × ẑ` by the polar angle of `p₁`.
    pub step1: RotationMatrix3,
    /// Clockwise rotation about ẑ by `φ₂′`.
    pub step2: RotationMatrix3,
    pub p1_new: BlochVector,
    pub p2_new: BlochVector,
    /// Polar angle of the second state after the reduction.
    pub theta2_prime: f64,
    /// Azimuth of the second state after step 1.
    pub phi2_prime: f64,
    /// True when `r_total · p₂` had negative x and was mirrored across the z-axis.
    pub reflected: bool,
}

impl PlaneReduction {
    /// `(r₁, θ₁)` with `θ₁ ∈ {0, π}` and `(r₂, θ₂′)` as planar states.
    pub fn planar_pair(&self) -> (PlanarState, PlanarState) {
        let theta1 = if self.p1_new.pz < 0.0 {
            std::f64::consts::PI
        } else {
            0.0
        };
        (
            PlanarState {
                r: self.p1_new.norm(),
                theta: theta1,
            },
            PlanarState {
                r: self.p2_new.norm(),
                theta: self.theta2_prime,
            },
        )
    }
}

/// Rotate `p₁` onto the z-axis, then rotate about z until `p₂` has no
/// y-component. Distances are preserved by every step.
///
/// When `p₁` already lies on the z-axis (or is zero) the first step is the
/// identity, so a `p₁` on the negative axis stays there.
pub fn reduce_to_xz_plane(p1: &BlochVector, p2: &BlochVector) -> Result<PlaneReduction> {
    let p1 = BlochVector::from_array(p1.to_array())?;
    let p2 = BlochVector::from_array(p2.to_array())?;
    let v1 = p1.to_array();
    let axis = linalg::cross(&v1, &[0.0, 0.0, 1.0]);
    let axis_norm = linalg::norm(&axis);
    let (step1, p1_after) = if axis_norm < AXIS_DEGENERACY {
        (RotationMatrix3::IDENTITY, [0.0, 0.0, p1.pz])
    } else {
        let theta1 = (p1.pz / p1.norm()).clamp(-1.0, 1.0).acos();
        let step1 = rotation_from_axis_angle(theta1, linalg::scale(&axis, 1.0 / axis_norm))?;
        (step1, [0.0, 0.0, p1.norm()])
    };

    let [x, y, z] = step1.apply(&p2.to_array());
    let rho = x.hypot(y);
    let phi2_prime = if y == 0.0 || rho == 0.0 {
        0.0
    } else {
        y.signum() * (x / rho).clamp(-1.0, 1.0).acos()
    };
    let step2 = rotation_about_z_clockwise(phi2_prime);
    let reflected = step2.apply(&[x, y, z])[0] < 0.0;
    let r2 = p2.norm();
    let theta2_prime = if r2 == 0.0 { 0.0 } else { rho.atan2(z) };
    let (s, c) = theta2_prime.sin_cos();
    Ok(PlaneReduction {
        r_total: step2.compose(&step1),
        step1,
        step2,
        p1_new: BlochVector {
            px: p1_after[0],
            py: p1_after[1],
            pz: p1_after[2],
        },
        p2_new: BlochVector {
            px: r2 * s,
            py: 0.0,
            pz: r2 * c,
        },
        theta2_prime,
        phi2_prime,
        reflected,
    })
}
