//! Small fixed-size linear algebra: real 3-vectors and complex 2×2 matrices.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

pub type Vec3 = [f64; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn scale(a: &Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Complex 2×2 matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

impl Matrix2 {
    pub const IDENTITY: Self = Self([[ONE, ZERO], [ZERO, ONE]]);
    pub const ZERO: Self = Self([[ZERO, ZERO], [ZERO, ZERO]]);

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self([[a, b], [c, d]])
    }

    /// Pauli matrices σ_x, σ_y, σ_z, indexed 0..3.
    pub fn pauli(i: usize) -> Self {
        match i {
            0 => Self::new(ZERO, ONE, ONE, ZERO),
            1 => Self::new(ZERO, -I, I, ZERO),
            2 => Self::new(ONE, ZERO, ZERO, -ONE),
            _ => panic!("Pauli index {i} out of range"),
        }
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self::new(
            m[0][0].conj(),
            m[1][0].conj(),
            m[0][1].conj(),
            m[1][1].conj(),
        )
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.0;
        Self::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Largest deviation from Hermiticity, `max |m_ij - conj(m_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Spectral decomposition of a Hermitian matrix.
    ///
    /// Returns eigenvalues in ascending order and the unitary whose columns
    /// are the matching eigenvectors. Only the upper triangle is read.
    pub fn hermitian_eigen(&self) -> ([f64; 2], Matrix2) {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = self.0[0][1];
        let mean = 0.5 * (a + d);
        let half_gap = 0.5 * (a - d);
        let radius = half_gap.hypot(b.norm());
        let hi = mean + radius;
        // det / hi keeps the small eigenvalue accurate for nearly singular input.
        let det = a * d - b.norm_sqr();
        let lo = if hi.abs() > f64::MIN_POSITIVE && hi.abs() >= (mean - radius).abs() {
            det / hi
        } else {
            mean - radius
        };

        if b.norm() <= f64::EPSILON * (a.abs() + d.abs()).max(f64::MIN_POSITIVE) {
            // Already diagonal.
            return if a <= d {
                ([a, d], Self::IDENTITY)
            } else {
                ([d, a], Self::new(ZERO, ONE, ONE, ZERO))
            };
        }

        // Eigenvector for `lo`: pick the better conditioned of the two
        // candidate null vectors of (H - lo I).
        let v1 = [b, Complex64::new(lo - a, 0.0)];
        let v2 = [Complex64::new(lo - d, 0.0), b.conj()];
        let n1 = (v1[0].norm_sqr() + v1[1].norm_sqr()).sqrt();
        let n2 = (v2[0].norm_sqr() + v2[1].norm_sqr()).sqrt();
        let (v, n) = if n1 >= n2 { (v1, n1) } else { (v2, n2) };
        let u0 = v[0] / n;
        let u1 = v[1] / n;
        // Second column is orthogonal: (-conj(u1), conj(u0)).
        let vecs = Self::new(u0, -u1.conj(), u1, u0.conj());
        ([lo, hi], vecs)
    }

    /// Principal square root of a positive semidefinite Hermitian matrix.
    ///
    /// Eigenvalues in `[-clamp, 0)` are treated as zero; anything more
    /// negative is reported as `None`.
    pub fn sqrt_psd(&self, clamp: f64) -> Option<Matrix2> {
        let (vals, vecs) = self.hermitian_eigen();
        let mut roots = [0.0; 2];
        for (root, &lambda) in roots.iter_mut().zip(vals.iter()) {
            if lambda < -clamp {
                return None;
            }
            *root = lambda.max(0.0).sqrt();
        }
        let diag = Self::new(
            Complex64::new(roots[0], 0.0),
            ZERO,
            ZERO,
            Complex64::new(roots[1], 0.0),
        );
        Some(vecs * diag * vecs.adjoint())
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Matrix2(out)
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;

    fn add(self, rhs: Matrix2) -> Matrix2 {
        let a = &self.0;
        let b = &rhs.0;
        Matrix2::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;

    fn sub(self, rhs: Matrix2) -> Matrix2 {
        self + (-rhs)
    }
}

impl Neg for Matrix2 {
    type Output = Matrix2;

    fn neg(self) -> Matrix2 {
        self.scale(-ONE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigen_reconstructs_hermitian() {
        let h = Matrix2::new(c(0.7, 0.0), c(0.1, -0.2), c(0.1, 0.2), c(0.3, 0.0));
        let (vals, vecs) = h.hermitian_eigen();
        assert!(vals[0] <= vals[1]);
        let d = Matrix2::new(c(vals[0], 0.0), ZERO, ZERO, c(vals[1], 0.0));
        let back = vecs * d * vecs.adjoint();
        assert!(back.max_abs_diff(&h) < 1e-15);
        let unit = vecs * vecs.adjoint();
        assert!(unit.max_abs_diff(&Matrix2::IDENTITY) < 1e-15);
    }

    #[test]
    fn eigen_of_diagonal_orders_values() {
        let h = Matrix2::new(c(0.9, 0.0), ZERO, ZERO, c(0.1, 0.0));
        let (vals, vecs) = h.hermitian_eigen();
        assert_eq!(vals, [0.1, 0.9]);
        let d = Matrix2::new(c(0.1, 0.0), ZERO, ZERO, c(0.9, 0.0));
        assert!((vecs * d * vecs.adjoint()).max_abs_diff(&h) < 1e-16);
    }

    #[test]
    fn sqrt_matches_closed_form() {
        // For 2×2 PSD M: sqrt(M) = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)).
        let m = Matrix2::new(c(0.6, 0.0), c(0.2, 0.1), c(0.2, -0.1), c(0.4, 0.0));
        let s = m.sqrt_psd(1e-12).unwrap();
        let sd = m.det().re.sqrt();
        let closed = (m + Matrix2::IDENTITY.scale(c(sd, 0.0)))
            .scale(c(1.0 / (m.trace().re + 2.0 * sd).sqrt(), 0.0));
        assert!(s.max_abs_diff(&closed) < 1e-14);
        assert!((s * s).max_abs_diff(&m) < 1e-14);
    }

    #[test]
    fn sqrt_rejects_negative_spectrum() {
        let m = Matrix2::new(c(1.0, 0.0), ZERO, ZERO, c(-0.5, 0.0));
        assert!(m.sqrt_psd(1e-12).is_none());
        let tiny = Matrix2::new(c(1.0, 0.0), ZERO, ZERO, c(-1e-14, 0.0));
        assert!(tiny.sqrt_psd(1e-12).is_some());
    }

    #[test]
    fn pauli_algebra() {
        for i in 0..3 {
            let s = Matrix2::pauli(i);
            assert!((s * s).max_abs_diff(&Matrix2::IDENTITY) < 1e-16);
            assert!(s.trace().norm() < 1e-16);
        }
        // σx σy = i σz
        let lhs = Matrix2::pauli(0) * Matrix2::pauli(1);
        assert!(lhs.max_abs_diff(&Matrix2::pauli(2).scale(I)) < 1e-16);
    }
}
