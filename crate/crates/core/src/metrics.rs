//! Infinitesimal line elements of the Bures and Sjöqvist metrics.
//!
//! Each metric is available in three charts:
//!
//! * Cartesian Bloch coordinates `p⃗` with displacement `dp⃗`;
//! * spherical coordinates `(p, θ, φ)`;
//! * hyperspherical coordinates `(χ, θ, φ)` with `p = sin χ`, returning `4 ds²`.
//!
//! Both metrics also admit a description through the embedding
//! `x^μ = (√(1 − p²), p⃗)` in ℝ⁴. For Bures the induced metric is the flat one,
//! `4 ds² = (dx⁰)² + dx⃗·dx⃗`, so the interior of the Bloch ball is the unit
//! 3-sphere. For Sjöqvist the same coordinates carry the weights
//! `ω₀ = (2p² − 1)/p⁴` and `ω = 1/p²`; `ω₀` changes sign at `p = 1/√2`.
//!
//! All functions return `ds²` (or `4 ds²` where stated), never `ds`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::linalg::{self, Vec3};
use crate::states::{BlochVector, SphericalState};

/// Radius below which the Sjöqvist metric is treated as singular.
pub const SJOQVIST_MIN_RADIUS: f64 = 1e-12;

/// Distance or metric family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Bures,
    Sjoqvist,
    Euclid,
    Taxicab,
}

impl MetricKind {
    pub const ALL: [MetricKind; 4] = [
        MetricKind::Bures,
        MetricKind::Sjoqvist,
        MetricKind::Euclid,
        MetricKind::Taxicab,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Bures => "bures",
            MetricKind::Sjoqvist => "sjoqvist",
            MetricKind::Euclid => "euclid",
            MetricKind::Taxicab => "taxicab",
        }
    }

    /// True for the two Riemannian metrics on quantum states.
    pub fn is_quantum(self) -> bool {
        matches!(self, MetricKind::Bures | MetricKind::Sjoqvist)
    }

    fn require_quantum(self) -> Result<()> {
        if self.is_quantum() {
            Ok(())
        } else {
            Err(GeometryError::UnsupportedKind {
                kind: self.name(),
                reason: "no line element; classical kinds only apply to planar distances",
            })
        }
    }
}

impl std::fmt::Display for MetricKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MetricKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bures" => Ok(MetricKind::Bures),
            "sjoqvist" | "sjöqvist" => Ok(MetricKind::Sjoqvist),
            "euclid" | "euclidean" => Ok(MetricKind::Euclid),
            "taxicab" | "manhattan" => Ok(MetricKind::Taxicab),
            other => Err(format!("unknown metric '{other}'")),
        }
    }
}

/// An infinitesimal displacement, in Cartesian or spherical components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TangentDisplacement {
    Cartesian(Vec3),
    Spherical { dp: f64, dtheta: f64, dphi: f64 },
}

impl TangentDisplacement {
    /// Cartesian components at the base point `s` (chain rule through the
    /// spherical-coordinate Jacobian).
    pub fn to_cartesian(&self, s: &SphericalState) -> Vec3 {
        match *self {
            TangentDisplacement::Cartesian(d) => d,
            TangentDisplacement::Spherical { dp, dtheta, dphi } => {
                let (st, ct) = s.theta.sin_cos();
                let (sp, cp) = s.phi.sin_cos();
                let p = s.p;
                [
                    dp * st * cp + p * ct * cp * dtheta - p * st * sp * dphi,
                    dp * st * sp + p * ct * sp * dtheta + p * st * cp * dphi,
                    dp * ct - p * st * dtheta,
                ]
            }
        }
    }

    /// `(dp, dθ, dφ)` at the base point `s`. Requires `p > 0` and `sin θ ≠ 0`
    /// when converting from Cartesian form.
    pub fn to_spherical(&self, s: &SphericalState) -> Result<(f64, f64, f64)> {
        match *self {
            TangentDisplacement::Spherical { dp, dtheta, dphi } => Ok((dp, dtheta, dphi)),
            TangentDisplacement::Cartesian(d) => {
                let (st, ct) = s.theta.sin_cos();
                let (sp, cp) = s.phi.sin_cos();
                if s.p <= 0.0 || st == 0.0 {
                    return Err(GeometryError::OutOfRange(
                        "spherical chart is degenerate at p = 0 or on the z-axis".into(),
                    ));
                }
                let e_r = [st * cp, st * sp, ct];
                let e_t = [ct * cp, ct * sp, -st];
                let e_p = [-sp, cp, 0.0];
                Ok((
                    linalg::dot(&e_r, &d),
                    linalg::dot(&e_t, &d) / s.p,
                    linalg::dot(&e_p, &d) / (s.p * st),
                ))
            }
        }
    }
}

/// A point `x^μ = (x⁰, x⃗)` of ℝ⁴.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedPoint4 {
    pub x0: f64,
    pub x: Vec3,
}

impl EmbeddedPoint4 {
    pub fn norm_sqr(&self) -> f64 {
        self.x0 * self.x0 + linalg::dot(&self.x, &self.x)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            x0: self.x0 - other.x0,
            x: linalg::sub(&self.x, &other.x),
        }
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x0 * other.x0 + linalg::dot(&self.x, &other.x)
    }

    /// Bloch-ball radius `p = |x⃗|`.
    pub fn radius(&self) -> f64 {
        linalg::norm(&self.x)
    }
}

fn check_radius(kind: MetricKind, p: f64) -> Result<()> {
    kind.require_quantum()?;
    if !(p < 1.0) {
        return Err(GeometryError::Singular {
            metric: kind.name(),
            p,
        });
    }
    if kind == MetricKind::Sjoqvist && p < SJOQVIST_MIN_RADIUS {
        return Err(GeometryError::Singular {
            metric: kind.name(),
            p,
        });
    }
    Ok(())
}

/// `ds²` in Cartesian Bloch coordinates.
///
/// Bures: `¼[(p⃗·dp⃗)²/(1−p²) + dp⃗·dp⃗]`.
/// Sjöqvist: `¼[(2p²−1)(p⃗·dp⃗)²/(p⁴(1−p²)) + dp⃗·dp⃗/p²]`.
pub fn line_element_cartesian(
    kind: MetricKind,
    p: &BlochVector,
    d: &TangentDisplacement,
) -> Result<f64> {
    let r = p.norm();
    check_radius(kind, r)?;
    let pv = p.to_array();
    let dp = d.to_cartesian(&p.to_spherical());
    let proj = linalg::dot(&pv, &dp);
    let dd = linalg::dot(&dp, &dp);
    let r2 = r * r;
    let one_minus = 1.0 - r2;
    let ds2 = match kind {
        MetricKind::Bures => 0.25 * (proj * proj / one_minus + dd),
        _ => 0.25 * ((2.0 * r2 - 1.0) * proj * proj / (r2 * r2 * one_minus) + dd / r2),
    };
    Ok(ds2)
}

/// `ds²` in spherical coordinates.
///
/// Bures: `¼[dp²/(1−p²) + p²(dθ² + sin²θ dφ²)]`.
/// Sjöqvist: `¼[dp²/(1−p²) + dθ² + sin²θ dφ²]`.
pub fn line_element_spherical(
    kind: MetricKind,
    s: &SphericalState,
    d: &TangentDisplacement,
) -> Result<f64> {
    check_radius(kind, s.p)?;
    let (dp, dtheta, dphi) = d.to_spherical(s)?;
    let st = s.theta.sin();
    let d_omega = dtheta * dtheta + st * st * dphi * dphi;
    let radial = dp * dp / (1.0 - s.p * s.p);
    let ds2 = match kind {
        MetricKind::Bures => 0.25 * (radial + s.p * s.p * d_omega),
        _ => 0.25 * (radial + d_omega),
    };
    Ok(ds2)
}

/// `4 ds²` in hyperspherical coordinates `p = sin χ`, `χ ∈ (0, π/2]`.
///
/// Bures: `dχ² + sin²χ dΩ²` (round unit 3-sphere).
/// Sjöqvist: `dχ² + dΩ²` (product `S¹ × S²`).
pub fn line_element_hyperspherical(
    kind: MetricKind,
    chi: f64,
    theta: f64,
    d: (f64, f64, f64),
) -> Result<f64> {
    kind.require_quantum()?;
    if !(chi > 0.0 && chi <= FRAC_PI_2) {
        return Err(GeometryError::OutOfRange(format!(
            "chi = {chi} not in (0, pi/2]"
        )));
    }
    let (dchi, dtheta, dphi) = d;
    let st = theta.sin();
    let d_omega = dtheta * dtheta + st * st * dphi * dphi;
    let four_ds2 = match kind {
        MetricKind::Bures => {
            let sc = chi.sin();
            dchi * dchi + sc * sc * d_omega
        }
        _ => dchi * dchi + d_omega,
    };
    Ok(four_ds2)
}

/// Embedding `x^μ = (√(1 − p²), p⃗)`. Identical for both metrics; the
/// metric enters through [`extrinsic_weights`].
pub fn embed_extrinsic(s: &SphericalState) -> Result<EmbeddedPoint4> {
    if !(0.0..=1.0).contains(&s.p) {
        return Err(GeometryError::OutOfRange(format!(
            "p = {} not in [0, 1]",
            s.p
        )));
    }
    let p = s.to_bloch().to_array();
    // (1-p)(1+p) is better conditioned than 1 - p² near the surface.
    let x0 = ((1.0 - s.p) * (1.0 + s.p)).max(0.0).sqrt();
    Ok(EmbeddedPoint4 { x0, x: p })
}

/// Weights `(ω₀, ω)` with `4 ds² = ω₀ (dx⁰)² + ω dx⃗·dx⃗`.
pub fn extrinsic_weights(kind: MetricKind, p: f64) -> Result<(f64, f64)> {
    kind.require_quantum()?;
    match kind {
        MetricKind::Bures => Ok((1.0, 1.0)),
        _ => {
            if p < SJOQVIST_MIN_RADIUS {
                return Err(GeometryError::Singular {
                    metric: kind.name(),
                    p,
                });
            }
            let p2 = p * p;
            Ok(((2.0 * p2 - 1.0) / (p2 * p2), 1.0 / p2))
        }
    }
}

/// `4 ds²` from an ambient displacement `dx` evaluated with the weights at radius `p`.
pub fn extrinsic_line_element(kind: MetricKind, p: f64, dx: &EmbeddedPoint4) -> Result<f64> {
    let (w0, w) = extrinsic_weights(kind, p)?;
    Ok(w0 * dx.x0 * dx.x0 + w * linalg::dot(&dx.x, &dx.x))
}

/// Default stencil spacing for [`extrinsic_line_element_fd`].
pub const FD_STEP: f64 = 1e-4;

/// `4 ds²` for the displacement `dp⃗` at `p⃗`, with the ambient displacement
/// `dx^μ` obtained by differentiating the embedding along the line through
/// `p⃗` in the direction of `dp⃗`. Uses the five-point stencil with spacing
/// `step` (a length in the Bloch ball) and rescales to `|dp⃗|`.
pub fn extrinsic_line_element_fd(
    kind: MetricKind,
    p: &BlochVector,
    dp: &Vec3,
    step: f64,
) -> Result<f64> {
    let r = p.norm();
    check_radius(kind, r)?;
    let len = linalg::norm(dp);
    if len == 0.0 {
        return Ok(0.0);
    }
    let dir = linalg::scale(dp, 2.0 * step / len);
    let at = |t: f64| -> Result<EmbeddedPoint4> {
        let q = linalg::add(&p.to_array(), &linalg::scale(&dir, t));
        let n = linalg::norm(&q);
        if n >= 1.0 {
            return Err(GeometryError::OutOfRange(format!(
                "stencil point leaves the ball (p = {n})"
            )));
        }
        Ok(EmbeddedPoint4 {
            x0: ((1.0 - n) * (1.0 + n)).sqrt(),
            x: q,
        })
    };
    let (m2, m1, p1, p2) = (at(-1.0)?, at(-0.5)?, at(0.5)?, at(1.0)?);
    let scale = len / (2.0 * step);
    let stencil = |a: f64, b: f64, c: f64, d: f64| scale * (a - 8.0 * b + 8.0 * c - d) / 6.0;
    let dx = EmbeddedPoint4 {
        x0: stencil(m2.x0, m1.x0, p1.x0, p2.x0),
        x: std::array::from_fn(|i| stencil(m2.x[i], m1.x[i], p1.x[i], p2.x[i])),
    };
    extrinsic_line_element(kind, r, &dx)
}

/// `p` at which the Sjöqvist temporal weight `ω₀` vanishes.
pub const SIGNATURE_CHANGE_RADIUS: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// A curve `s ↦ p⃗(s)` in the Bloch ball with known velocity.
pub trait BlochPath {
    /// Parameter interval `[s_start, s_end]`.
    fn domain(&self) -> (f64, f64);
    fn position(&self, s: f64) -> Vec3;
    fn velocity(&self, s: f64) -> Vec3;

    /// Hyperspherical rate `dχ/ds = (dp/ds)/√(1 − p²)`. Implementors with a
    /// closed form should override this; the default is singular at `p = 1`.
    fn chi_rate(&self, s: f64) -> f64 {
        let pos = self.position(s);
        let vel = self.velocity(s);
        let p = linalg::norm(&pos);
        if p == 0.0 {
            return linalg::norm(&vel);
        }
        let dp = linalg::dot(&pos, &vel) / p;
        dp / ((1.0 - p) * (1.0 + p)).sqrt()
    }
}

/// Cumulative ambient coordinates along a path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingTrajectory {
    pub kind: MetricKind,
    pub s: Vec<f64>,
    /// Spatial part `x⃗(s)`.
    pub spatial: Vec<Vec3>,
    /// Temporal part: `χ(s)` for Bures, the weighted `x⁰(s)` for Sjöqvist.
    pub temporal: Vec<f64>,
    /// Parameters between samples where `p` crosses `1/√2` (Sjöqvist only).
    pub signature_crossings: Vec<f64>,
}

/// Trapezoidal integration of the embedding coordinates along `path`.
///
/// Bures: `x⃗(s) = ∫ sin χ · dp̂/ds ds`, temporal `χ(s)`.
/// Sjöqvist: `x⃗(s) = ∫ ω^{-1/2} dx⃗/ds ds` and `x⁰(s) = ∫ √|ω₀| dx⁰/ds ds`,
/// integrated through the sign change of `ω₀` with crossings recorded.
pub fn embedding_trajectory<P: BlochPath + ?Sized>(
    kind: MetricKind,
    path: &P,
    n_steps: usize,
) -> Result<EmbeddingTrajectory> {
    kind.require_quantum()?;
    if n_steps == 0 {
        return Err(GeometryError::OutOfRange("n_steps must be positive".into()));
    }
    let (a, b) = path.domain();
    let h = (b - a) / n_steps as f64;

    struct Sample {
        p: f64,
        spatial_rate: Vec3,
        temporal_rate: f64,
    }

    let sample = |s: f64| -> Result<Sample> {
        let pos = path.position(s);
        let vel = path.velocity(s);
        let p = linalg::norm(&pos);
        let chi_rate = path.chi_rate(s);
        match kind {
            MetricKind::Bures => {
                // sin χ = p and dp̂/ds = (v − (p̂·v) p̂)/p, so sin χ dp̂/ds = v − (p̂·v) p̂.
                let spatial_rate = if p > 0.0 {
                    let radial = linalg::dot(&pos, &vel) / (p * p);
                    linalg::sub(&vel, &linalg::scale(&pos, radial))
                } else {
                    [0.0; 3]
                };
                Ok(Sample {
                    p,
                    spatial_rate,
                    temporal_rate: chi_rate,
                })
            }
            _ => {
                if p < SJOQVIST_MIN_RADIUS {
                    return Err(GeometryError::Singular {
                        metric: kind.name(),
                        p,
                    });
                }
                let (w0, w) = extrinsic_weights(kind, p)?;
                // dx⁰/ds = −sin χ dχ/ds = −p dχ/ds.
                let dx0 = -p * chi_rate;
                Ok(Sample {
                    p,
                    spatial_rate: linalg::scale(&vel, 1.0 / w.sqrt()),
                    temporal_rate: w0.abs().sqrt() * dx0,
                })
            }
        }
    };

    let start = path.position(a);
    let p_start = linalg::norm(&start);
    let mut traj = EmbeddingTrajectory {
        kind,
        s: Vec::with_capacity(n_steps + 1),
        spatial: Vec::with_capacity(n_steps + 1),
        temporal: Vec::with_capacity(n_steps + 1),
        signature_crossings: Vec::new(),
    };
    let (x_start, t_start) = match kind {
        MetricKind::Bures => ([0.0; 3], p_start.clamp(0.0, 1.0).asin()),
        _ => (start, ((1.0 - p_start) * (1.0 + p_start)).max(0.0).sqrt()),
    };
    let mut x = x_start;
    let mut t = t_start;
    let mut prev = sample(a)?;
    traj.s.push(a);
    traj.spatial.push(x);
    traj.temporal.push(t);
    for i in 1..=n_steps {
        let s = a + h * i as f64;
        let cur = sample(s)?;
        for k in 0..3 {
            x[k] += 0.5 * h * (prev.spatial_rate[k] + cur.spatial_rate[k]);
        }
        t += 0.5 * h * (prev.temporal_rate + cur.temporal_rate);
        if kind == MetricKind::Sjoqvist
            && (prev.p - SIGNATURE_CHANGE_RADIUS).signum()
                != (cur.p - SIGNATURE_CHANGE_RADIUS).signum()
        {
            traj.signature_crossings.push(s - 0.5 * h);
        }
        traj.s.push(s);
        traj.spatial.push(x);
        traj.temporal.push(t);
        prev = cur;
    }
    Ok(traj)
}
