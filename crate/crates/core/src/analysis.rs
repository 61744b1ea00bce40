//! Comparative studies built on the distance functions: ranking violations
//! between metrics, equidistant pairs, the fidelity-ratio region and the
//! match between the Bures metric and the closed Robertson–Walker slice.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::distances::{bures_distance, cartesian_distance, planar_distance, sjoqvist_distance};
use crate::error::{GeometryError, Result};
use crate::metrics::{line_element_hyperspherical, MetricKind, SJOQVIST_MIN_RADIUS};
use crate::states::PlanarState;

/// Distances closer than this count as tied.
pub const TIE_TOL: f64 = 1e-12;

/// Two points, either as planar states or as bare `(x, z)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum PointPair {
    Planar(PlanarState, PlanarState),
    Cartesian([f64; 2], [f64; 2]),
}

impl PointPair {
    pub fn distance(&self, kind: MetricKind) -> Result<f64> {
        match self {
            PointPair::Planar(a, b) => Ok(planar_distance(kind, a, b)?.value),
            PointPair::Cartesian(a, b) => Ok(cartesian_distance(kind, *a, *b)?.value),
        }
    }
}

/// Ordering of `d(pair1)` against `d(pair2)` under two metrics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankingCase {
    pub pair1: PointPair,
    pub pair2: PointPair,
    pub metric_a: MetricKind,
    pub metric_b: MetricKind,
    /// `(d(pair1), d(pair2))` under `metric_a`.
    pub d_a: (f64, f64),
    /// `(d(pair1), d(pair2))` under `metric_b`.
    pub d_b: (f64, f64),
    /// Both orderings are strict and they disagree.
    pub violated: bool,
}

fn strict_order(d: (f64, f64)) -> Ordering {
    if d.0 < d.1 - TIE_TOL {
        Ordering::Less
    } else if d.0 > d.1 + TIE_TOL {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

pub fn check_ranking(
    pair1: PointPair,
    pair2: PointPair,
    metric_a: MetricKind,
    metric_b: MetricKind,
) -> Result<RankingCase> {
    let d_a = (pair1.distance(metric_a)?, pair2.distance(metric_a)?);
    let d_b = (pair1.distance(metric_b)?, pair2.distance(metric_b)?);
    let (oa, ob) = (strict_order(d_a), strict_order(d_b));
    let violated = oa != Ordering::Equal && ob != Ordering::Equal && oa != ob;
    Ok(RankingCase {
        pair1,
        pair2,
        metric_a,
        metric_b,
        d_a,
        d_b,
        violated,
    })
}

/// Outcome of a seeded random search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankingSearch {
    pub seed: u64,
    pub n_trials: usize,
    pub metric_a: MetricKind,
    pub metric_b: MetricKind,
    pub violations: Vec<RankingCase>,
}

/// Uniform planar state with `r ∈ (0, 1]`, `θ ∈ [0, π]`.
pub fn random_planar_state<R: Rng>(rng: &mut R) -> PlanarState {
    let r = 1.0 - rng.random::<f64>();
    let theta = PI * rng.random::<f64>();
    PlanarState { r, theta }
}

/// Draw `n_trials` pairs of pairs of planar states from a ChaCha8 stream
/// seeded with `seed` and keep every ranking violation, in trial order.
pub fn find_ranking_violations(
    seed: u64,
    n_trials: usize,
    metric_a: MetricKind,
    metric_b: MetricKind,
) -> Result<RankingSearch> {
    if n_trials == 0 {
        return Err(GeometryError::OutOfRange(
            "n_trials must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<[PlanarState; 4]> = (0..n_trials)
        .map(|_| std::array::from_fn(|_| random_planar_state(&mut rng)))
        .collect();
    let cases: Result<Vec<Option<RankingCase>>> = draws
        .par_iter()
        .map(|p| {
            let case = check_ranking(
                PointPair::Planar(p[0], p[1]),
                PointPair::Planar(p[2], p[3]),
                metric_a,
                metric_b,
            )?;
            Ok(case.violated.then_some(case))
        })
        .collect();
    Ok(RankingSearch {
        seed,
        n_trials,
        metric_a,
        metric_b,
        violations: cases?.into_iter().flatten().collect(),
    })
}

/// Three points in the `(x, z)` plane whose Euclidean and taxicab rankings disagree.
pub fn classical_violation_points() -> [[f64; 2]; 3] {
    let c = (1.0 + SQRT_2) / 4.0;
    [[0.0, 0.0], [0.0, 1.0], [c, c]]
}

/// Four planar states whose Bures and Sjöqvist rankings disagree.
pub fn quantum_violation_states() -> [PlanarState; 4] {
    [
        PlanarState { r: 0.5, theta: 0.0 },
        PlanarState { r: 0.5, theta: PI },
        PlanarState {
            r: 0.125,
            theta: 0.0,
        },
        PlanarState { r: 0.25, theta: PI },
    ]
}

/// Four planar states forming two pairs at equal Sjöqvist distance.
pub fn equidistant_states() -> [PlanarState; 4] {
    [
        PlanarState {
            r: 0.25,
            theta: 0.0,
        },
        PlanarState { r: 0.25, theta: PI },
        PlanarState { r: 0.5, theta: 0.0 },
        PlanarState { r: 0.5, theta: PI },
    ]
}

/// Distances of several pairs and the groups of pairs that tie.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquidistanceReport {
    pub kind: MetricKind,
    pub distances: Vec<f64>,
    /// Indices into `distances`, grouped so that consecutive members (in
    /// increasing distance) differ by at most [`TIE_TOL`].
    pub groups: Vec<Vec<usize>>,
}

impl EquidistanceReport {
    pub fn ties(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.groups.iter().filter(|g| g.len() > 1)
    }
}

pub fn equidistance_check(
    pairs: &[(PlanarState, PlanarState)],
    kind: MetricKind,
) -> Result<EquidistanceReport> {
    let distances = pairs
        .iter()
        .map(|(a, b)| Ok(planar_distance(kind, a, b)?.value))
        .collect::<Result<Vec<f64>>>()?;
    let mut order: Vec<usize> = (0..distances.len()).collect();
    order.sort_by(|&i, &j| distances[i].total_cmp(&distances[j]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match groups.last_mut() {
            Some(g) if distances[i] - distances[*g.last().unwrap()] <= TIE_TOL => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    Ok(EquidistanceReport {
        kind,
        distances,
        groups,
    })
}

/// Fidelity-like score `(1 − ℒ²/ℒ_max²)²` attached to a distance.
pub fn bures_fidelity_score(distance: f64) -> f64 {
    (1.0 - distance * distance / 2.0).powi(2)
}

/// Sjöqvist analogue of [`bures_fidelity_score`] with `ℒ_max = π/2`.
pub fn sjoqvist_fidelity_score(distance: f64) -> f64 {
    (1.0 - (distance / FRAC_PI_2).powi(2)).powi(2)
}

/// Cells whose Bures score falls below this have no defined ratio.
pub const RATIO_UNDEFINED_BELOW: f64 = 1e-15;
pub const MIN_RATIO_GRID: usize = 100;

/// Ratio of the Sjöqvist and Bures scores of `(source, b)` on a midpoint
/// grid over `(r, θ) ∈ [0, 1] × [0, π]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FidelityRatioField {
    pub source: PlanarState,
    pub r: Vec<f64>,
    pub theta: Vec<f64>,
    /// Row-major over `(r, θ)`; `None` where the ratio is undefined.
    pub ratio: Vec<Option<f64>>,
    /// Share of defined cells with `0 ≤ ℛ ≤ 1`.
    pub area_fraction: f64,
    pub cells_in_range: usize,
    pub cells_undefined: usize,
}

impl FidelityRatioField {
    pub fn value(&self, i_r: usize, i_theta: usize) -> Option<f64> {
        self.ratio[i_r * self.theta.len() + i_theta]
    }
}

pub fn fidelity_ratio(source: &PlanarState, b: &PlanarState) -> Result<Option<f64>> {
    let fb = bures_fidelity_score(bures_distance(source, b)?);
    if fb < RATIO_UNDEFINED_BELOW {
        return Ok(None);
    }
    let fs = sjoqvist_fidelity_score(sjoqvist_distance(source, b)?);
    Ok(Some(fs / fb))
}

pub fn fidelity_ratio_field(
    source: PlanarState,
    grid_nr: usize,
    grid_ntheta: usize,
) -> Result<FidelityRatioField> {
    if grid_nr < MIN_RATIO_GRID || grid_ntheta < MIN_RATIO_GRID {
        return Err(GeometryError::OutOfRange(format!(
            "ratio grid must be at least {MIN_RATIO_GRID}×{MIN_RATIO_GRID}"
        )));
    }
    if !(source.r >= SJOQVIST_MIN_RADIUS && source.r <= 1.0) {
        return Err(GeometryError::Singular {
            metric: "sjoqvist",
            p: source.r,
        });
    }
    let r: Vec<f64> = (0..grid_nr)
        .map(|i| (i as f64 + 0.5) / grid_nr as f64)
        .collect();
    let theta: Vec<f64> = (0..grid_ntheta)
        .map(|j| PI * (j as f64 + 0.5) / grid_ntheta as f64)
        .collect();
    let rows: Result<Vec<Vec<Option<f64>>>> = r
        .par_iter()
        .map(|&ri| {
            theta
                .iter()
                .map(|&tj| fidelity_ratio(&source, &PlanarState { r: ri, theta: tj }))
                .collect()
        })
        .collect();
    let ratio: Vec<Option<f64>> = rows?.into_iter().flatten().collect();
    let cells_undefined = ratio.iter().filter(|v| v.is_none()).count();
    let cells_in_range = ratio
        .iter()
        .flatten()
        .filter(|&&v| (0.0..=1.0).contains(&v))
        .count();
    let defined = ratio.len() - cells_undefined;
    let area_fraction = if defined == 0 {
        0.0
    } else {
        cells_in_range as f64 / defined as f64
    };
    Ok(FidelityRatioField {
        source,
        r,
        theta,
        ratio,
        area_fraction,
        cells_in_range,
        cells_undefined,
    })
}

/// Sign of the spatial curvature of a Robertson–Walker slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Curvature {
    Closed,
    Flat,
    Open,
}

impl Curvature {
    pub fn k(self) -> f64 {
        match self {
            Curvature::Closed => 1.0,
            Curvature::Flat => 0.0,
            Curvature::Open => -1.0,
        }
    }
}

/// Point and curvature data of a Robertson–Walker spatial slice in the
/// hyperspherical chart; the areal radius is `r = sin χ` when `k = +1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RwParams {
    pub chi: f64,
    pub theta: f64,
    pub phi: f64,
    pub curvature: Curvature,
    /// Scale factor `R(t)` at the chosen instant.
    pub scale: f64,
}

/// Areal radius `r(χ)` for the given curvature.
pub fn areal_radius(curvature: Curvature, chi: f64) -> f64 {
    match curvature {
        Curvature::Closed => chi.sin(),
        Curvature::Flat => chi,
        Curvature::Open => chi.sinh(),
    }
}

/// `dl² = R² [dr²/(1 − k r²) + r² (dθ² + sin²θ dφ²)]` in the areal-radius chart.
///
/// Near `r → 1` on the closed slice `1 − r²` cancels catastrophically; use
/// [`rw_spatial_line_element`] when the hyperspherical angle is known.
pub fn rw_spatial_line_element_areal(
    curvature: Curvature,
    scale: f64,
    r: f64,
    theta: f64,
    d: (f64, f64, f64),
) -> f64 {
    let (dr, dtheta, dphi) = d;
    let st = theta.sin();
    let radial = dr * dr / (1.0 - curvature.k() * r * r);
    scale * scale * (radial + r * r * (dtheta * dtheta + st * st * dphi * dphi))
}

/// Robertson–Walker spatial line element at `(χ, θ, φ)` with `r = r(χ)` and
/// `dr = r′(χ) dχ` substituted. `1 − k r²` is evaluated as `cos²χ`, `1` or
/// `cosh²χ`, which avoids the cancellation of the areal chart near `χ = π/2`.
pub fn rw_spatial_line_element(params: &RwParams, d: (f64, f64, f64)) -> f64 {
    let (dchi, dtheta, dphi) = d;
    let chi = params.chi;
    let r = areal_radius(params.curvature, chi);
    let (dr_dchi, one_minus_kr2) = match params.curvature {
        Curvature::Closed => (chi.cos(), chi.cos().powi(2)),
        Curvature::Flat => (1.0, 1.0),
        Curvature::Open => (chi.cosh(), chi.cosh().powi(2)),
    };
    let dr = dr_dchi * dchi;
    let st = params.theta.sin();
    let radial = dr * dr / one_minus_kr2;
    params.scale * params.scale * (radial + r * r * (dtheta * dtheta + st * st * dphi * dphi))
}

/// A point and displacement `(χ, θ, φ, dχ, dθ, dφ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RwSample {
    pub chi: f64,
    pub theta: f64,
    pub phi: f64,
    pub dchi: f64,
    pub dtheta: f64,
    pub dphi: f64,
}

/// Largest displacement component accepted by [`rw_spatial_equivalence`].
pub const RW_MAX_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RwReport {
    pub samples: usize,
    pub max_abs_deviation: f64,
    pub max_rel_deviation: f64,
}

/// Compare the closed slice (`k = +1`, `R = 1`) with `4 ds²` of the Bures
/// metric in hyperspherical coordinates at every sample.
pub fn rw_spatial_equivalence(samples: &[RwSample]) -> Result<RwReport> {
    let mut report = RwReport {
        samples: samples.len(),
        max_abs_deviation: 0.0,
        max_rel_deviation: 0.0,
    };
    for s in samples {
        if !(s.chi > 0.0 && s.chi <= FRAC_PI_2) {
            return Err(GeometryError::OutOfRange(format!(
                "chi = {} not in (0, pi/2]",
                s.chi
            )));
        }
        let step = s.dchi.abs().max(s.dtheta.abs()).max(s.dphi.abs());
        if !(step <= RW_MAX_STEP) {
            return Err(GeometryError::OutOfRange(format!(
                "displacement {step} exceeds {RW_MAX_STEP}"
            )));
        }
        let params = RwParams {
            chi: s.chi,
            theta: s.theta,
            phi: s.phi,
            curvature: Curvature::Closed,
            scale: 1.0,
        };
        let d = (s.dchi, s.dtheta, s.dphi);
        let rw = rw_spatial_line_element(&params, d);
        let bures = line_element_hyperspherical(MetricKind::Bures, s.chi, s.theta, d)?;
        let abs = (rw - bures).abs();
        report.max_abs_deviation = report.max_abs_deviation.max(abs);
        if bures > 0.0 {
            report.max_rel_deviation = report.max_rel_deviation.max(abs / bures);
        } else if abs > 0.0 {
            report.max_rel_deviation = f64::INFINITY;
        }
    }
    Ok(report)
}

/// Seeded samples with `χ ∈ (0, π/2]`, `θ ∈ [0, π]`, `φ ∈ [0, 2π)` and
/// displacement components in `[−10⁻³, 10⁻³]`.
pub fn random_rw_samples(seed: u64, n: usize) -> Vec<RwSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| RwSample {
            chi: FRAC_PI_2 * (1.0 - rng.random::<f64>()),
            theta: PI * rng.random::<f64>(),
            phi: 2.0 * PI * rng.random::<f64>(),
            dchi: rng.random_range(-RW_MAX_STEP..=RW_MAX_STEP),
            dtheta: rng.random_range(-RW_MAX_STEP..=RW_MAX_STEP),
            dphi: rng.random_range(-RW_MAX_STEP..=RW_MAX_STEP),
        })
        .collect()
}
