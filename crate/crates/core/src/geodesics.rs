//! Geodesics of the Bures and Sjöqvist metrics in the xz-plane.
//!
//! Restricted to a plane `φ = const`, the length of a curve `θ ↦ r(θ)` is
//! `½ ∫ L(r, r′) dθ` with
//!
//! * Bures: `L = √(r² + r′²/(1 − r²))`,
//! * Sjöqvist: `L = √(1 + r′²/(1 − r²))`.
//!
//! Neither Lagrangian depends on θ, so the Beltrami identity
//! `L − r′ ∂L/∂r′ = const` gives a first integral and both families have
//! closed forms. [`geodesic_oracle`] integrates the full Euler–Lagrange
//! equation with RK4 instead and is used to cross-check the closed forms.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{GeometryError, Result};
use crate::linalg::{self, Vec3};
use crate::metrics::{BlochPath, EmbeddedPoint4, MetricKind};

/// Oracle domain margin: integration must stay inside `(δ, 1 − δ)`.
pub const ORACLE_MARGIN: f64 = 1e-6;
pub const DEFAULT_ORACLE_STEPS: usize = 10_000;

fn check_open_unit(name: &str, r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(GeometryError::OutOfRange(format!(
            "{name} = {r} must lie in (0, 1)"
        )))
    }
}

/// A closed-form planar geodesic `θ ↦ r(θ)`.
pub trait PlanarGeodesic {
    fn kind(&self) -> MetricKind;
    fn radius(&self, theta: f64) -> f64;
    fn derivative(&self, theta: f64) -> f64;

    /// `r′²/(1 − r²)` along the curve, in a form that stays finite where the
    /// curve touches `r = 1`.
    fn speed_term(&self, theta: f64) -> f64;

    /// Variational integrand `L(r, r′)`.
    fn lagrangian(&self, theta: f64) -> f64 {
        let r = self.radius(theta);
        let base = match self.kind() {
            MetricKind::Bures => r * r,
            _ => 1.0,
        };
        (base + self.speed_term(theta)).sqrt()
    }
}

/// Constants of a Bures geodesic launched from `(r_a, θ_a)` with slope `r_a′`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BuresGeodesicParams {
    /// Beltrami constant `c_B = r²/L`, also the smallest radius on the curve.
    pub c_b: f64,
    /// `a_B² = 1/c_B²`.
    pub a_b2: f64,
    /// Phase constant `𝒜_B ∈ (0, π/2]`.
    pub phase: f64,
    /// `sign(r_a′)`, with `+1` for `r_a′ = 0`.
    pub direction: f64,
    pub ra: f64,
    pub ra_prime: f64,
    pub theta_a: f64,
}

/// Closed-form Bures geodesic.
///
/// `r(θ)² = (1 + tan²ψ) / (1 + a_B² tan²ψ)` with `ψ = 𝒜_B − sign(r_a′)(θ − θ_a)`,
/// evaluated as `1/(cos²ψ + a_B² sin²ψ)` so that the curve is continuous
/// through `ψ = ±π/2` without branch bookkeeping. The curve oscillates
/// between the turning radius `c_B` (at `cos ψ = 0`) and the pure-state
/// boundary `r = 1` (at `sin ψ = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BuresGeodesic {
    pub params: BuresGeodesicParams,
}

pub fn bures_geodesic_ivp(ra: f64, ra_prime: f64, theta_a: f64) -> Result<BuresGeodesic> {
    check_open_unit("r_a", ra)?;
    if !ra_prime.is_finite() || !theta_a.is_finite() {
        return Err(GeometryError::OutOfRange(
            "initial data must be finite".into(),
        ));
    }
    let one_minus = 1.0 - ra * ra;
    let slope = ra_prime / ra;
    let a_b2 = 1.0 / (ra * ra) + slope * slope / (ra * ra * one_minus);
    let phase = if ra_prime == 0.0 {
        FRAC_PI_2
    } else {
        (one_minus * ra / ra_prime.abs()).atan()
    };
    let direction = if ra_prime < 0.0 { -1.0 } else { 1.0 };
    Ok(BuresGeodesic {
        params: BuresGeodesicParams {
            c_b: 1.0 / a_b2.sqrt(),
            a_b2,
            phase,
            direction,
            ra,
            ra_prime,
            theta_a,
        },
    })
}

impl BuresGeodesic {
    fn psi(&self, theta: f64) -> f64 {
        let p = &self.params;
        p.phase - p.direction * (theta - p.theta_a)
    }

    /// Parameter values in `[lo, hi]` where the curve touches `r = 1`.
    pub fn boundary_contacts(&self, lo: f64, hi: f64) -> Vec<f64> {
        // sin ψ = 0  ⇔  θ = θ_a + sign·(𝒜 − kπ)
        self.solve_psi(0.0, lo, hi)
    }

    /// Parameter values in `[lo, hi]` where `r = c_B` (closest approach to the centre).
    pub fn turning_points(&self, lo: f64, hi: f64) -> Vec<f64> {
        self.solve_psi(FRAC_PI_2, lo, hi)
    }

    fn solve_psi(&self, offset: f64, lo: f64, hi: f64) -> Vec<f64> {
        let p = &self.params;
        // θ(k) = θ_a + sign·(𝒜 − offset − kπ)
        let to_theta = |k: f64| p.theta_a + p.direction * (p.phase - offset - k * PI);
        let k_at = |theta: f64| (p.phase - offset - p.direction * (theta - p.theta_a)) / PI;
        let (k1, k2) = (k_at(lo), k_at(hi));
        let (kmin, kmax) = (k1.min(k2).ceil() as i64, k1.max(k2).floor() as i64);
        let mut out: Vec<f64> = (kmin..=kmax).map(|k| to_theta(k as f64)).collect();
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out
    }
}

impl PlanarGeodesic for BuresGeodesic {
    fn kind(&self) -> MetricKind {
        MetricKind::Bures
    }

    fn radius(&self, theta: f64) -> f64 {
        let (s, c) = self.psi(theta).sin_cos();
        1.0 / (c * c + self.params.a_b2 * s * s).sqrt()
    }

    fn derivative(&self, theta: f64) -> f64 {
        let psi = self.psi(theta);
        let r = self.radius(theta);
        self.params.direction * 0.5 * (self.params.a_b2 - 1.0) * (2.0 * psi).sin() * r * r * r
    }

    fn speed_term(&self, theta: f64) -> f64 {
        let c = self.psi(theta).cos();
        let r = self.radius(theta);
        (self.params.a_b2 - 1.0) * c * c * r.powi(4)
    }
}

/// How a Sjöqvist geodesic was specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SjoqvistForm {
    /// Initial position and slope.
    Initial {
        ra: f64,
        ra_prime: f64,
        theta_a: f64,
    },
    /// Two endpoints with `θ_a ≠ θ_b`.
    Boundary {
        ra: f64,
        theta_a: f64,
        rb: f64,
        theta_b: f64,
    },
}

/// Closed-form Sjöqvist geodesic `r(θ) = sin(w θ + c)`.
///
/// Radial and angular motions decouple: `r′²/(1 − r²) = k = w²` is constant,
/// and `r_a′ = 0` gives a circle of constant radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SjoqvistGeodesic {
    pub form: SjoqvistForm,
}

/// Beltrami constants of a Sjöqvist geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SjoqvistGeodesicParams {
    /// `c_S = 1/√(1 + k)`.
    pub c_s: f64,
    /// `k = r′²/(1 − r²) = (1 − c_S²)/c_S²`.
    pub k: f64,
}

pub fn sjoqvist_geodesic_ivp(ra: f64, ra_prime: f64, theta_a: f64) -> Result<SjoqvistGeodesic> {
    check_open_unit("r_a", ra)?;
    if !ra_prime.is_finite() || !theta_a.is_finite() {
        return Err(GeometryError::OutOfRange(
            "initial data must be finite".into(),
        ));
    }
    Ok(SjoqvistGeodesic {
        form: SjoqvistForm::Initial {
            ra,
            ra_prime,
            theta_a,
        },
    })
}

/// Result of solving the Sjöqvist boundary-value problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SjoqvistBvp {
    Angular(SjoqvistGeodesic),
    /// `θ_a = θ_b`: the geodesic is the radial segment `θ = const`.
    Radial {
        theta: f64,
        ra: f64,
        rb: f64,
    },
}

impl SjoqvistBvp {
    /// Geodesic length `½ √(Δθ² + (asin r_b − asin r_a)²)`.
    pub fn length(&self) -> f64 {
        match *self {
            SjoqvistBvp::Radial { ra, rb, .. } => 0.5 * (rb.asin() - ra.asin()).abs(),
            SjoqvistBvp::Angular(g) => match g.form {
                SjoqvistForm::Boundary {
                    ra,
                    theta_a,
                    rb,
                    theta_b,
                } => 0.5 * (theta_b - theta_a).hypot(rb.asin() - ra.asin()),
                SjoqvistForm::Initial { .. } => unreachable!("bvp never yields the initial form"),
            },
        }
    }
}

pub fn sjoqvist_geodesic_bvp(ra: f64, theta_a: f64, rb: f64, theta_b: f64) -> Result<SjoqvistBvp> {
    for (name, r) in [("r_a", ra), ("r_b", rb)] {
        if !(r > 0.0 && r <= 1.0) {
            return Err(GeometryError::OutOfRange(format!(
                "{name} = {r} must lie in (0, 1]"
            )));
        }
    }
    if !theta_a.is_finite() || !theta_b.is_finite() {
        return Err(GeometryError::OutOfRange(
            "endpoint angles must be finite".into(),
        ));
    }
    if theta_a == theta_b {
        return Ok(SjoqvistBvp::Radial {
            theta: theta_a,
            ra,
            rb,
        });
    }
    Ok(SjoqvistBvp::Angular(SjoqvistGeodesic {
        form: SjoqvistForm::Boundary {
            ra,
            theta_a,
            rb,
            theta_b,
        },
    }))
}

impl SjoqvistGeodesic {
    /// Angular frequency `w` in `r = sin(w θ + c)`.
    pub fn frequency(&self) -> f64 {
        match self.form {
            SjoqvistForm::Initial { ra, ra_prime, .. } => ra_prime / (1.0 - ra * ra).sqrt(),
            SjoqvistForm::Boundary {
                ra,
                theta_a,
                rb,
                theta_b,
            } => (rb.asin() - ra.asin()) / (theta_b - theta_a),
        }
    }

    fn argument(&self, theta: f64) -> f64 {
        match self.form {
            SjoqvistForm::Initial { ra, theta_a, .. } => {
                self.frequency() * (theta - theta_a) + ra.asin()
            }
            SjoqvistForm::Boundary {
                ra,
                theta_a,
                rb,
                theta_b,
            } => {
                let (sa, sb) = (ra.asin(), rb.asin());
                let span = theta_b - theta_a;
                (sb - sa) / span * theta + 0.5 * (sa + sb)
                    - 0.5 * (theta_a + theta_b) / span * (sb - sa)
            }
        }
    }

    pub fn params(&self) -> SjoqvistGeodesicParams {
        let k = self.frequency().powi(2);
        SjoqvistGeodesicParams {
            c_s: 1.0 / (1.0 + k).sqrt(),
            k,
        }
    }

    /// Parameter values in `[lo, hi]` where the argument reaches a multiple
    /// of π, i.e. the curve would hit the maximally mixed state.
    pub fn origin_hits(&self, lo: f64, hi: f64) -> Vec<f64> {
        self.solve_argument(0.0, lo, hi)
    }

    /// Parameter values in `[lo, hi]` where the curve touches `r = 1`.
    pub fn boundary_contacts(&self, lo: f64, hi: f64) -> Vec<f64> {
        self.solve_argument(FRAC_PI_2, lo, hi)
    }

    fn solve_argument(&self, offset: f64, lo: f64, hi: f64) -> Vec<f64> {
        let w = self.frequency();
        if w == 0.0 {
            return Vec::new();
        }
        let c = self.argument(0.0);
        let (a1, a2) = (
            (self.argument(lo) - offset) / PI,
            (self.argument(hi) - offset) / PI,
        );
        let (kmin, kmax) = (a1.min(a2).ceil() as i64, a1.max(a2).floor() as i64);
        let mut out: Vec<f64> = (kmin..=kmax)
            .map(|k| (offset + k as f64 * PI - c) / w)
            .collect();
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out
    }
}

impl PlanarGeodesic for SjoqvistGeodesic {
    fn kind(&self) -> MetricKind {
        MetricKind::Sjoqvist
    }

    fn radius(&self, theta: f64) -> f64 {
        self.argument(theta).sin()
    }

    fn derivative(&self, theta: f64) -> f64 {
        self.frequency() * self.argument(theta).cos()
    }

    fn speed_term(&self, _theta: f64) -> f64 {
        self.frequency().powi(2)
    }
}

/// Either closed-form family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "metric", rename_all = "lowercase")]
pub enum Geodesic {
    Bures(BuresGeodesic),
    Sjoqvist(SjoqvistGeodesic),
}

impl PlanarGeodesic for Geodesic {
    fn kind(&self) -> MetricKind {
        match self {
            Geodesic::Bures(_) => MetricKind::Bures,
            Geodesic::Sjoqvist(_) => MetricKind::Sjoqvist,
        }
    }
    fn radius(&self, theta: f64) -> f64 {
        match self {
            Geodesic::Bures(g) => g.radius(theta),
            Geodesic::Sjoqvist(g) => g.radius(theta),
        }
    }
    fn derivative(&self, theta: f64) -> f64 {
        match self {
            Geodesic::Bures(g) => g.derivative(theta),
            Geodesic::Sjoqvist(g) => g.derivative(theta),
        }
    }
    fn speed_term(&self, theta: f64) -> f64 {
        match self {
            Geodesic::Bures(g) => g.speed_term(theta),
            Geodesic::Sjoqvist(g) => g.speed_term(theta),
        }
    }
}

/// A geodesic sampled on a uniform θ grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeodesicCurve {
    pub geodesic: Geodesic,
    pub theta: Vec<f64>,
    pub r: Vec<f64>,
    /// Cumulative arc length `½ ∫ L dθ` from the first sample.
    pub arc_length: Vec<f64>,
    /// θ values inside the range where the curve touches the pure-state boundary.
    pub boundary_contacts: Vec<f64>,
    /// Bures only: θ values where `r = c_B`.
    pub turning_points: Vec<f64>,
}

impl GeodesicCurve {
    pub fn kind(&self) -> MetricKind {
        self.geodesic.kind()
    }

    pub fn total_length(&self) -> f64 {
        self.arc_length.last().copied().unwrap_or(0.0)
    }
}

/// Sample `geodesic` at `n + 1` equally spaced θ in `[theta_start, theta_end]`
/// with Simpson arc lengths per interval.
pub fn sample_geodesic(
    geodesic: Geodesic,
    theta_start: f64,
    theta_end: f64,
    n: usize,
) -> Result<GeodesicCurve> {
    if n == 0 || !(theta_start.is_finite() && theta_end.is_finite()) {
        return Err(GeometryError::OutOfRange(
            "need n >= 1 and a finite θ range".into(),
        ));
    }
    let (lo, hi) = (theta_start.min(theta_end), theta_start.max(theta_end));
    let (contacts, turning) = match &geodesic {
        Geodesic::Bures(g) => (g.boundary_contacts(lo, hi), g.turning_points(lo, hi)),
        Geodesic::Sjoqvist(g) => {
            if let Some(&hit) = g.origin_hits(lo, hi).first() {
                return Err(GeometryError::Singular {
                    metric: "sjoqvist",
                    p: g.radius(hit).abs(),
                });
            }
            (g.boundary_contacts(lo, hi), Vec::new())
        }
    };
    let h = (theta_end - theta_start) / n as f64;
    let mut theta = Vec::with_capacity(n + 1);
    let mut r = Vec::with_capacity(n + 1);
    let mut arc = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    for i in 0..=n {
        let t = theta_start + h * i as f64;
        if i > 0 {
            let t0 = t - h;
            let simpson = (geodesic.lagrangian(t0)
                + 4.0 * geodesic.lagrangian(t0 + 0.5 * h)
                + geodesic.lagrangian(t))
                * h.abs()
                / 6.0;
            acc += 0.5 * simpson;
        }
        theta.push(t);
        r.push(geodesic.radius(t));
        arc.push(acc);
    }
    Ok(GeodesicCurve {
        geodesic,
        theta,
        r,
        arc_length: arc,
        boundary_contacts: contacts,
        turning_points: turning,
    })
}

impl BlochPath for GeodesicCurve {
    fn domain(&self) -> (f64, f64) {
        (self.theta[0], *self.theta.last().unwrap())
    }

    fn position(&self, s: f64) -> Vec3 {
        let r = self.geodesic.radius(s);
        let (st, ct) = s.sin_cos();
        [r * st, 0.0, r * ct]
    }

    fn velocity(&self, s: f64) -> Vec3 {
        let r = self.geodesic.radius(s);
        let dr = self.geodesic.derivative(s);
        let (st, ct) = s.sin_cos();
        [dr * st + r * ct, 0.0, dr * ct - r * st]
    }

    fn chi_rate(&self, s: f64) -> f64 {
        let dr = self.geodesic.derivative(s);
        dr.signum() * self.geodesic.speed_term(s).sqrt()
    }
}

/// Great circle `x^μ(s) = u^μ cos s + v^μ sin s` on the unit 3-sphere,
/// with `u = (cos χ, n̂ sin χ)`, `v = (sin ξ, m̂ cos ξ)` and
/// `tan ξ = −(n̂·m̂) tan χ` so that `u ⊥ v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GreatCircleParams {
    pub chi: f64,
    pub xi: f64,
    pub n_hat: Vec3,
    pub m_hat: Vec3,
}

fn check_unit(v: &Vec3) -> Result<()> {
    let n = linalg::norm(v);
    if (n - 1.0).abs() > 1e-10 {
        return Err(GeometryError::NonUnitAxis { norm: n });
    }
    Ok(())
}

impl GreatCircleParams {
    /// Solve the orthogonality condition for ξ.
    pub fn new(chi: f64, n_hat: Vec3, m_hat: Vec3) -> Result<Self> {
        check_unit(&n_hat)?;
        check_unit(&m_hat)?;
        let xi = (-linalg::dot(&n_hat, &m_hat) * chi.tan()).atan();
        Ok(Self {
            chi,
            xi,
            n_hat,
            m_hat,
        })
    }

    /// Accept explicit angles, checking `−(n̂·m̂) tan χ = tan ξ` to 1e-9.
    pub fn from_angles(chi: f64, xi: f64, n_hat: Vec3, m_hat: Vec3) -> Result<Self> {
        check_unit(&n_hat)?;
        check_unit(&m_hat)?;
        let params = Self {
            chi,
            xi,
            n_hat,
            m_hat,
        };
        let residual = params.orthogonality_residual();
        if !(residual <= 1e-9) {
            return Err(GeometryError::NonOrthogonal { residual });
        }
        Ok(params)
    }

    /// `|u·v|`; zero when the constraint holds.
    pub fn orthogonality_residual(&self) -> f64 {
        self.u().dot(&self.v()).abs()
    }

    pub fn u(&self) -> EmbeddedPoint4 {
        EmbeddedPoint4 {
            x0: self.chi.cos(),
            x: linalg::scale(&self.n_hat, self.chi.sin()),
        }
    }

    pub fn v(&self) -> EmbeddedPoint4 {
        EmbeddedPoint4 {
            x0: self.xi.sin(),
            x: linalg::scale(&self.m_hat, self.xi.cos()),
        }
    }

    /// `p(s) = √(1 − (cos χ cos s + sin ξ sin s)²)`.
    pub fn radius_at(&self, s: f64) -> f64 {
        let x0 = self.chi.cos() * s.cos() + self.xi.sin() * s.sin();
        (1.0 - x0 * x0).max(0.0).sqrt()
    }

    /// Bloch path over `s ∈ [start, end]`.
    pub fn over(self, start: f64, end: f64) -> GreatCirclePath {
        GreatCirclePath {
            params: self,
            start,
            end,
        }
    }
}

pub fn bures_great_circle(params: &GreatCircleParams, s: f64) -> Result<EmbeddedPoint4> {
    let residual = params.orthogonality_residual();
    if !(residual <= 1e-9) {
        return Err(GeometryError::NonOrthogonal { residual });
    }
    let (u, v) = (params.u(), params.v());
    let (ss, cs) = s.sin_cos();
    Ok(EmbeddedPoint4 {
        x0: u.x0 * cs + v.x0 * ss,
        x: linalg::add(&linalg::scale(&u.x, cs), &linalg::scale(&v.x, ss)),
    })
}

/// A great circle restricted to a parameter interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreatCirclePath {
    pub params: GreatCircleParams,
    pub start: f64,
    pub end: f64,
}

impl BlochPath for GreatCirclePath {
    fn domain(&self) -> (f64, f64) {
        (self.start, self.end)
    }

    fn position(&self, s: f64) -> Vec3 {
        let (u, v) = (self.params.u(), self.params.v());
        let (ss, cs) = s.sin_cos();
        linalg::add(&linalg::scale(&u.x, cs), &linalg::scale(&v.x, ss))
    }

    fn velocity(&self, s: f64) -> Vec3 {
        let (u, v) = (self.params.u(), self.params.v());
        let (ss, cs) = s.sin_cos();
        linalg::add(&linalg::scale(&u.x, -ss), &linalg::scale(&v.x, cs))
    }

    fn chi_rate(&self, s: f64) -> f64 {
        // x⁰ = cos χ  ⇒  dχ/ds = −(dx⁰/ds)/sin χ
        let (u, v) = (self.params.u(), self.params.v());
        let (ss, cs) = s.sin_cos();
        let x0 = u.x0 * cs + v.x0 * ss;
        let dx0 = -u.x0 * ss + v.x0 * cs;
        -dx0 / (1.0 - x0 * x0).sqrt()
    }
}

/// RK4 solution of the Euler–Lagrange equation on a uniform θ grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSolution {
    pub kind: MetricKind,
    pub theta: Vec<f64>,
    pub r: Vec<f64>,
    pub r_prime: Vec<f64>,
}

impl OracleSolution {
    /// Sup-norm distance between the sampled radii and a closed form.
    pub fn max_deviation<G: PlanarGeodesic + ?Sized>(&self, closed: &G) -> f64 {
        self.theta
            .iter()
            .zip(&self.r)
            .map(|(&t, &r)| (closed.radius(t) - r).abs())
            .fold(0.0, f64::max)
    }
}

/// `r″` from the Euler–Lagrange equation of `L = √(f(r) + g(r) r′²)`:
/// `r″ = f′/(2g) − (g′/2g) r′² + (f′/f) r′²`.
fn acceleration(kind: MetricKind, r: f64, rp: f64) -> f64 {
    let one_minus = 1.0 - r * r;
    match kind {
        // f = r², g = 1/(1 − r²)
        MetricKind::Bures => r * one_minus - r * rp * rp / one_minus + 2.0 * rp * rp / r,
        // f = 1, g = 1/(1 − r²)
        _ => -r * rp * rp / one_minus,
    }
}

/// Integrate the geodesic equation from `(θ_a, r_a, r_a′)` to `θ_end` with
/// fixed-step RK4. Fails with [`GeometryError::LeftDomain`] once `r` leaves
/// `(δ, 1 − δ)`, where the closed-form comparison no longer applies.
pub fn geodesic_oracle(
    kind: MetricKind,
    ra: f64,
    ra_prime: f64,
    theta_a: f64,
    theta_end: f64,
    n_steps: usize,
) -> Result<OracleSolution> {
    if !kind.is_quantum() {
        return Err(GeometryError::UnsupportedKind {
            kind: kind.name(),
            reason: "geodesic oracle needs a Riemannian metric",
        });
    }
    check_open_unit("r_a", ra)?;
    if n_steps == 0 {
        return Err(GeometryError::OutOfRange("n_steps must be positive".into()));
    }
    let h = (theta_end - theta_a) / n_steps as f64;
    let f = |y: [f64; 2]| [y[1], acceleration(kind, y[0], y[1])];

    let mut sol = OracleSolution {
        kind,
        theta: Vec::with_capacity(n_steps + 1),
        r: Vec::with_capacity(n_steps + 1),
        r_prime: Vec::with_capacity(n_steps + 1),
    };
    let mut y = [ra, ra_prime];
    sol.theta.push(theta_a);
    sol.r.push(ra);
    sol.r_prime.push(ra_prime);
    for i in 1..=n_steps {
        let k1 = f(y);
        let k2 = f([y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
        let k3 = f([y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
        let k4 = f([y[0] + h * k3[0], y[1] + h * k3[1]]);
        for j in 0..2 {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        let theta = theta_a + h * i as f64;
        if !(y[0] > ORACLE_MARGIN && y[0] < 1.0 - ORACLE_MARGIN) {
            return Err(GeometryError::LeftDomain { theta, r: y[0] });
        }
        sol.theta.push(theta);
        sol.r.push(y[0]);
        sol.r_prime.push(y[1]);
    }
    Ok(sol)
}

/// Gap kept between the oracle range and the first boundary contact.
pub const CONTACT_MARGIN: f64 = 1e-2;
/// Smallest gap kept between the compared curve and `r = 0` or `r = 1`.
pub const RADIUS_MARGIN: f64 = 1e-3;

/// Outcome of comparing a closed form with [`geodesic_oracle`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleCheck {
    pub kind: MetricKind,
    pub theta_start: f64,
    /// End of the compared range; earlier than requested when the curve
    /// comes within [`RADIUS_MARGIN`] of `r = 1` or of the centre, where the
    /// geodesic equation is singular.
    pub theta_checked: f64,
    pub theta_requested: f64,
    pub truncated: bool,
    pub max_deviation: f64,
}

/// Launch both the closed form and the RK4 oracle from `(r_a, r_a′, θ_a)`
/// and report their sup-norm distance on the range where the oracle applies.
pub fn check_against_oracle(
    kind: MetricKind,
    ra: f64,
    ra_prime: f64,
    theta_a: f64,
    theta_end: f64,
    n_steps: usize,
) -> Result<OracleCheck> {
    let (lo, hi) = (
        theta_a.min(theta_end) - CONTACT_MARGIN,
        theta_a.max(theta_end) + CONTACT_MARGIN,
    );
    let (closed, contacts) = match kind {
        MetricKind::Bures => {
            let g = bures_geodesic_ivp(ra, ra_prime, theta_a)?;
            (Geodesic::Bures(g), g.boundary_contacts(lo, hi))
        }
        MetricKind::Sjoqvist => {
            let g = sjoqvist_geodesic_ivp(ra, ra_prime, theta_a)?;
            let mut events = g.boundary_contacts(lo, hi);
            events.extend(g.origin_hits(lo, hi));
            (Geodesic::Sjoqvist(g), events)
        }
        _ => {
            return Err(GeometryError::UnsupportedKind {
                kind: kind.name(),
                reason: "geodesic oracle needs a Riemannian metric",
            })
        }
    };
    let forward = theta_end >= theta_a;
    let first_contact = if forward {
        contacts
            .iter()
            .copied()
            .filter(|&t| t > theta_a)
            .reduce(f64::min)
    } else {
        contacts
            .iter()
            .copied()
            .filter(|&t| t < theta_a)
            .reduce(f64::max)
    };
    let theta_checked = match first_contact {
        Some(t) if forward => (t - CONTACT_MARGIN).min(theta_end),
        Some(t) => (t + CONTACT_MARGIN).max(theta_end),
        None => theta_end,
    };
    // Stop where the closed form gets within RADIUS_MARGIN of the centre or
    // the boundary; shallow approaches can stay there for a long way in θ.
    let h = (theta_checked - theta_a) / n_steps.max(1) as f64;
    let theta_checked = (1..=n_steps)
        .map(|i| theta_a + h * i as f64)
        .find(|&t| {
            let r = closed.radius(t);
            !(r > RADIUS_MARGIN && r < 1.0 - RADIUS_MARGIN)
        })
        .map_or(theta_checked, |t| t - h);
    if (theta_checked - theta_a) * (theta_end - theta_a) <= 0.0 && theta_end != theta_a {
        return Err(GeometryError::OutOfRange(format!(
            "launch point is within {CONTACT_MARGIN} of a singular point of the geodesic equation"
        )));
    }
    let sol = geodesic_oracle(kind, ra, ra_prime, theta_a, theta_checked, n_steps)?;
    Ok(OracleCheck {
        kind,
        theta_start: theta_a,
        theta_checked,
        theta_requested: theta_end,
        truncated: theta_checked != theta_end,
        max_deviation: sol.max_deviation(&closed),
    })
}
