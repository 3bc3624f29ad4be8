//! Independent numerical maximization of the functional over parameterized
//! slices of the positive cone, plus brute-force oracles.
//!
//! The closed forms are the certificates; this module is the cross-check. It
//! never consults them while searching: a chart is swept either by an
//! exhaustive exact-rational grid (when the point count is tractable) or by
//! seeded stratified sampling in floats, followed by coordinate-wise
//! golden-section refinement and a snap to small-denominator rationals that
//! is re-evaluated exactly and kept only if it improves. Reported bests are
//! therefore genuine values of the functional at exact feasible points.

use crate::closed_forms::ClosedFormError;
use crate::curves::CurveList;
use crate::lattice::{DivisorClass, LatticeError, SurfaceFamily, SurfaceModel};
use crate::rat::{render, rint, snap_to_denominator, to_f64, Rat, Sign};
use crate::systole::SystoleError;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OptimizerError {
    #[error("chart does not fit the model: {0}")]
    ChartMismatch(String),
    #[error("no feasible point found in the search domain")]
    EmptyFeasibleDomain,
    #[error("path leaves the positive cone at s = {s}")]
    PathLeftCone { s: String },
    #[error("path endpoint does not sit on the cone boundary: {0}")]
    PathNotBoundary(String),
    #[error("point {point} +/- {h} leaves the formula domain")]
    DomainBreach { point: f64, h: f64 },
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Systole(#[from] SystoleError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
}

/// Named parameterization of a slice of the positive cone, in the `a = 1`
/// normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chart {
    /// `ω = H − Σ tᵢEᵢ`, `tᵢ ∈ (0, 1)`; plane blow-ups with `k ≥ 1`.
    P2Blowup,
    /// `ω = C₀ + tF`, `t ∈ (e, t_cap]`; minimal ruled models.
    RuledMinimal { t_cap: Rat },
    /// `ω = C₀ + bF − Σ tᵢEᵢ`, `b ∈ (e, b_cap]`, `tᵢ ∈ (0, 1)`; ruled
    /// blow-ups with `k ≥ 1`.
    RuledBlowup { b_cap: Rat },
}

impl Chart {
    /// Ruled charts extend 50 units past the cone edge by default; suprema
    /// reached only as `b → ∞` are reported with the cap, never extrapolated.
    pub fn default_cap(e: u32) -> Rat {
        rint(i64::from(e) + 50)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Chart::P2Blowup => "p2-blowup",
            Chart::RuledMinimal { .. } => "ruled-minimal",
            Chart::RuledBlowup { .. } => "ruled-blowup",
        }
    }
}

struct Range {
    lo: Rat,
    hi: Rat,
    include_hi: bool,
}

struct Geometry {
    base: DivisorClass,
    dirs: Vec<DivisorClass>,
    ranges: Vec<Range>,
}

fn geometry(model: &SurfaceModel, chart: &Chart) -> Result<Geometry, OptimizerError> {
    let rank = model.rank();
    let k = model.blowups();
    let first_e = model.first_exceptional();
    let unit = |i: usize, sign: i64| {
        let mut v = vec![0i64; rank];
        v[i] = sign;
        DivisorClass::from_ints(&v)
    };
    match chart {
        Chart::P2Blowup => {
            if model.family() != SurfaceFamily::ProjectivePlane || k == 0 {
                return Err(OptimizerError::ChartMismatch(
                    "p2-blowup chart needs a plane model with k >= 1".to_string(),
                ));
            }
            Ok(Geometry {
                base: unit(0, 1),
                dirs: (0..k).map(|i| unit(first_e + i, -1)).collect(),
                ranges: (0..k)
                    .map(|_| Range {
                        lo: Rat::zero(),
                        hi: rint(1),
                        include_hi: false,
                    })
                    .collect(),
            })
        }
        Chart::RuledMinimal { t_cap } => {
            let e = model.family().invariant_e().ok_or_else(|| {
                OptimizerError::ChartMismatch("ruled-minimal chart needs a ruled model".to_string())
            })?;
            if k != 0 {
                return Err(OptimizerError::ChartMismatch(
                    "ruled-minimal chart needs k = 0".to_string(),
                ));
            }
            let lo = rint(i64::from(e));
            if !(t_cap > &lo) {
                return Err(OptimizerError::ChartMismatch("t_cap must exceed e".to_string()));
            }
            Ok(Geometry {
                base: unit(0, 1),
                dirs: vec![unit(1, 1)],
                ranges: vec![Range {
                    lo,
                    hi: t_cap.clone(),
                    include_hi: true,
                }],
            })
        }
        Chart::RuledBlowup { b_cap } => {
            let e = model.family().invariant_e().ok_or_else(|| {
                OptimizerError::ChartMismatch("ruled-blowup chart needs a ruled model".to_string())
            })?;
            if k == 0 {
                return Err(OptimizerError::ChartMismatch(
                    "ruled-blowup chart needs k >= 1".to_string(),
                ));
            }
            let lo = rint(i64::from(e));
            if !(b_cap > &lo) {
                return Err(OptimizerError::ChartMismatch("b_cap must exceed e".to_string()));
            }
            let mut dirs = vec![unit(1, 1)];
            let mut ranges = vec![Range {
                lo,
                hi: b_cap.clone(),
                include_hi: true,
            }];
            for i in 0..k {
                dirs.push(unit(first_e + i, -1));
                ranges.push(Range {
                    lo: Rat::zero(),
                    hi: rint(1),
                    include_hi: false,
                });
            }
            Ok(Geometry {
                base: unit(0, 1),
                dirs,
                ranges,
            })
        }
    }
}

/// A chart on a model together with search settings.
#[derive(Debug, Clone)]
pub struct ParamDomain {
    pub model: SurfaceModel,
    pub chart: Chart,
    /// Grid steps per coordinate.
    pub resolution: u32,
    pub seed: u64,
    /// Sample count when the full grid is intractable.
    pub sample_budget: u64,
    /// Largest grid that is swept exhaustively.
    pub grid_limit: u64,
}

impl ParamDomain {
    pub fn new(
        model: SurfaceModel,
        chart: Chart,
        resolution: u32,
    ) -> Result<ParamDomain, OptimizerError> {
        if resolution < 2 {
            return Err(OptimizerError::Infeasible("resolution must be >= 2".to_string()));
        }
        geometry(&model, &chart)?;
        Ok(ParamDomain {
            model,
            chart,
            resolution,
            seed: 7,
            sample_budget: 1_000_000,
            grid_limit: 2_000_000,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_sample_budget(mut self, samples: u64) -> Self {
        self.sample_budget = samples;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    ExhaustiveGrid,
    StratifiedSampling,
}

/// Outcome of a chart search. `best_over_4pi` is the exact value of the
/// functional at `best_params`, an exact feasible point.
#[derive(Debug, Clone)]
pub struct OptimizationReport {
    pub chart: String,
    pub method: SearchMethod,
    pub best_over_4pi: Rat,
    pub best_float_over_4pi: f64,
    pub best_params: Vec<Rat>,
    pub closed_form_over_4pi: Option<Rat>,
    pub abs_gap: Option<f64>,
    pub evaluations: u64,
    pub refined: bool,
    pub seed: u64,
    pub resolution: u32,
}

impl Serialize for OptimizationReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("OptimizationReport", 11)?;
        st.serialize_field("chart", &self.chart)?;
        st.serialize_field("method", &self.method)?;
        st.serialize_field("best_over_4pi", &render(&self.best_over_4pi))?;
        st.serialize_field("best_float_over_4pi", &self.best_float_over_4pi)?;
        st.serialize_field(
            "best_params",
            &self.best_params.iter().map(render).collect::<Vec<_>>(),
        )?;
        st.serialize_field(
            "closed_form_over_4pi",
            &self.closed_form_over_4pi.as_ref().map(render),
        )?;
        st.serialize_field("abs_gap", &self.abs_gap)?;
        st.serialize_field("evaluations", &self.evaluations)?;
        st.serialize_field("refined", &self.refined)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("resolution", &self.resolution)?;
        st.end()
    }
}

/// Extra numerical-domain screen layered over the positivity screen.
///
/// A coarse list on a plane blow-up does not approximate the cone of curves:
/// near `Σtᵢ² → 1` the screened region still contains points where the
/// proxy functional blows up, although no such class is positive against
/// the full cone. The mass-shift bound chain is valid exactly on
/// `S ≤ 1 + (k−3)m`, `m < 4/(k+3)`, so searches driven by a coarse plane
/// list are restricted to that region; the suprema they reproduce are the
/// closed-form ones.
#[derive(Debug, Clone, Copy)]
enum DomainScreen {
    Full,
    P2Coarse { k: usize },
}

impl DomainScreen {
    fn for_search(chart: &Chart, model: &SurfaceModel, provenance: crate::curves::Provenance) -> Self {
        match (chart, provenance) {
            (Chart::P2Blowup, crate::curves::Provenance::Coarse) if model.blowups() >= 2 => {
                DomainScreen::P2Coarse {
                    k: model.blowups(),
                }
            }
            _ => DomainScreen::Full,
        }
    }

    fn admits_exact(&self, params: &[Rat]) -> bool {
        match self {
            DomainScreen::Full => true,
            DomainScreen::P2Coarse { k } => {
                let k = *k as i64;
                let s: Rat = params.iter().sum();
                let mut sorted = params.to_vec();
                sorted.sort();
                let pair_min = rint(1) - &sorted[sorted.len() - 1] - &sorted[sorted.len() - 2];
                let m = std::cmp::min(sorted[0].clone(), pair_min);
                if !(m > Rat::zero()) {
                    return false;
                }
                m < rint(4) / rint(k + 3) && s <= rint(1) + rint(k - 3) * &m
            }
        }
    }

    fn admits_f64(&self, params: &[f64]) -> bool {
        match self {
            DomainScreen::Full => true,
            DomainScreen::P2Coarse { k } => {
                let k = *k as f64;
                let s: f64 = params.iter().sum();
                let (mut hi1, mut hi2, mut lo) = (f64::NEG_INFINITY, f64::NEG_INFINITY, f64::INFINITY);
                for &t in params {
                    if t > hi1 {
                        hi2 = hi1;
                        hi1 = t;
                    } else if t > hi2 {
                        hi2 = t;
                    }
                    if t < lo {
                        lo = t;
                    }
                }
                let m = lo.min(1.0 - hi1 - hi2);
                m > 0.0 && m < 4.0 / (k + 3.0) && s <= 1.0 + (k - 3.0) * m
            }
        }
    }
}

/// Exact functional value at an exact point, or `None` when the point fails
/// the positivity screen against the list.
fn eval_exact(
    model: &SurfaceModel,
    list: &CurveList,
    omega: &DivisorClass,
) -> Option<Rat> {
    let square = model.pair(omega, omega).ok()?;
    if !(square > Rat::zero()) {
        return None;
    }
    let mut min: Option<Rat> = None;
    for curve in list.curves() {
        let p = model.pair_curve(omega, curve).ok()?;
        if !(p > Rat::zero()) {
            return None;
        }
        min = Some(match min {
            None => p,
            Some(m) if p < m => p,
            Some(m) => m,
        });
    }
    let m = min?;
    let c1w = model.c1_pairing(omega).ok()?;
    Some(m * c1w / square)
}

fn omega_at(geom: &Geometry, params: &[Rat]) -> DivisorClass {
    let mut omega = geom.base.clone();
    for (dir, p) in geom.dirs.iter().zip(params) {
        omega = omega.add_scaled(dir, p);
    }
    omega
}

/// Float evaluation tables for one chart, derived from exact pairings.
struct FloatEval {
    curve_base: Vec<f64>,
    curve_dirs: Vec<Vec<f64>>,
    c1_base: f64,
    c1_dirs: Vec<f64>,
    sq_base: f64,
    sq_cross: Vec<f64>,
    sq_mat: Vec<Vec<f64>>,
}

impl FloatEval {
    fn build(model: &SurfaceModel, list: &CurveList, geom: &Geometry) -> FloatEval {
        let pair_f = |a: &DivisorClass, b: &DivisorClass| to_f64(&model.pair(a, b).unwrap());
        let d = geom.dirs.len();
        FloatEval {
            curve_base: list
                .curves()
                .iter()
                .map(|c| pair_f(&geom.base, &c.divisor_class()))
                .collect(),
            curve_dirs: list
                .curves()
                .iter()
                .map(|c| {
                    geom.dirs
                        .iter()
                        .map(|dir| pair_f(dir, &c.divisor_class()))
                        .collect()
                })
                .collect(),
            c1_base: to_f64(&model.c1_pairing(&geom.base).unwrap()),
            c1_dirs: geom
                .dirs
                .iter()
                .map(|dir| to_f64(&model.c1_pairing(dir).unwrap()))
                .collect(),
            sq_base: pair_f(&geom.base, &geom.base),
            sq_cross: (0..d)
                .map(|i| 2.0 * pair_f(&geom.base, &geom.dirs[i]))
                .collect(),
            sq_mat: (0..d)
                .map(|i| (0..d).map(|j| pair_f(&geom.dirs[i], &geom.dirs[j])).collect())
                .collect(),
        }
    }

    fn eval(&self, p: &[f64]) -> Option<f64> {
        let mut min = f64::INFINITY;
        for (base, dirs) in self.curve_base.iter().zip(&self.curve_dirs) {
            let mut v = *base;
            for (c, x) in dirs.iter().zip(p) {
                v += c * x;
            }
            if v <= 0.0 {
                return None;
            }
            if v < min {
                min = v;
            }
        }
        let mut sq = self.sq_base;
        for (c, x) in self.sq_cross.iter().zip(p) {
            sq += c * x;
        }
        for (i, row) in self.sq_mat.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if *g != 0.0 {
                    sq += g * p[i] * p[j];
                }
            }
        }
        if sq <= 0.0 {
            return None;
        }
        let mut c1w = self.c1_base;
        for (c, x) in self.c1_dirs.iter().zip(p) {
            c1w += c * x;
        }
        Some(min * c1w / sq)
    }
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

const SAMPLE_BLOCK: usize = 4096;
const REFINE_SWEEPS: usize = 3;
const SNAP_MAX_DENOMINATOR: u32 = 24;

/// Maximizes the functional over the chart.
///
/// Exhaustive exact grid when the point count fits `grid_limit`, otherwise
/// seeded block-stratified sampling in floats; both are followed by
/// golden-section refinement per coordinate and an exact snap. Deterministic
/// for fixed `(domain, list)`: ties resolve to the lexicographically
/// smallest parameter vector, and sampling uses one ChaCha8 stream per block.
pub fn grid_maximize(
    domain: &ParamDomain,
    list: &CurveList,
    target: Option<&Rat>,
) -> Result<OptimizationReport, OptimizerError> {
    if list.model() != domain.model.id() {
        return Err(OptimizerError::ChartMismatch(
            "curve list belongs to a different model".to_string(),
        ));
    }
    let geom = geometry(&domain.model, &domain.chart)?;
    let screen = DomainScreen::for_search(&domain.chart, &domain.model, list.provenance());
    let res = domain.resolution;
    let counts: Vec<u64> = geom
        .ranges
        .iter()
        .map(|r| if r.include_hi { u64::from(res) } else { u64::from(res) - 1 })
        .collect();
    let total: u128 = counts.iter().map(|&c| u128::from(c)).product();

    let mut evaluations: u64 = 0;
    let mut best: Option<(Rat, Vec<Rat>)> = None;
    let consider = |value: Rat, params: Vec<Rat>, best: &mut Option<(Rat, Vec<Rat>)>| {
        let replace = match best {
            None => true,
            Some((bv, bp)) => value > *bv || (value == *bv && params < *bp),
        };
        if replace {
            *best = Some((value, params));
        }
    };

    let method;
    if total <= u128::from(domain.grid_limit) {
        method = SearchMethod::ExhaustiveGrid;
        // Exact coordinate values lo + j*(hi-lo)/res.
        let axes: Vec<Vec<Rat>> = geom
            .ranges
            .iter()
            .zip(&counts)
            .map(|(r, &count)| {
                let step = (&r.hi - &r.lo) / rint(i64::from(res));
                (1..=count)
                    .map(|j| &r.lo + &step * rint(j as i64))
                    .collect()
            })
            .collect();
        let dims = axes.len();
        let mut idx = vec![0usize; dims];
        loop {
            let params: Vec<Rat> = idx.iter().zip(&axes).map(|(&i, axis)| axis[i].clone()).collect();
            evaluations += 1;
            if screen.admits_exact(&params) {
                let omega = omega_at(&geom, &params);
                if let Some(value) = eval_exact(&domain.model, list, &omega) {
                    consider(value, params, &mut best);
                }
            }
            // Increment the mixed-radix counter.
            let mut d = 0;
            loop {
                if d == dims {
                    break;
                }
                idx[d] += 1;
                if idx[d] < axes[d].len() {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
            if d == dims {
                break;
            }
        }
    } else {
        method = SearchMethod::StratifiedSampling;
        let float_eval = FloatEval::build(&domain.model, list, &geom);
        let lo: Vec<f64> = geom.ranges.iter().map(|r| to_f64(&r.lo)).collect();
        let width: Vec<f64> = geom
            .ranges
            .iter()
            .map(|r| to_f64(&r.hi) - to_f64(&r.lo))
            .collect();
        let dims = geom.ranges.len();
        let blocks = domain.sample_budget.div_ceil(SAMPLE_BLOCK as u64);
        // Latin-hypercube strata inside each block, one RNG stream per block;
        // the fold over block results is sequential in block order. On a
        // screened plane chart the cube is sampled through its mass-shift
        // coordinates (m, S, simplex spread), which cover the admissible
        // region instead of rejecting almost every cube point.
        let block_best: Vec<Option<(f64, Vec<f64>)>> = (0..blocks)
            .into_par_iter()
            .map(|block| {
                let mut rng = ChaCha8Rng::seed_from_u64(domain.seed);
                rng.set_stream(block + 1);
                let mut strata: Vec<Vec<u16>> = Vec::with_capacity(dims);
                for _ in 0..dims {
                    let mut perm: Vec<u16> = (0..SAMPLE_BLOCK as u16).collect();
                    // Fisher-Yates
                    for i in (1..perm.len()).rev() {
                        let j = rng.gen_range(0..=i);
                        perm.swap(i, j);
                    }
                    strata.push(perm);
                }
                let mut local: Option<(f64, Vec<f64>)> = None;
                let mut p = vec![0f64; dims];
                for s in 0..SAMPLE_BLOCK {
                    let frac = |d: usize, u: f64| (f64::from(strata[d][s]) + u) / SAMPLE_BLOCK as f64;
                    match screen {
                        DomainScreen::Full => {
                            for d in 0..dims {
                                let u: f64 = rng.gen();
                                p[d] = lo[d] + width[d] * frac(d, u);
                            }
                        }
                        DomainScreen::P2Coarse { k } => {
                            let kf = k as f64;
                            let m_max = (1.0f64 / 3.0).min(4.0 / (kf + 3.0));
                            let m = m_max * frac(0, rng.gen());
                            let s_lo = kf * m;
                            let s_hi = 1.0 + (kf - 3.0) * m;
                            let s_val = s_lo + (s_hi - s_lo) * frac(1, rng.gen());
                            let mut total = 0.0;
                            let mut exps = vec![0f64; dims];
                            for e in exps.iter_mut() {
                                *e = -(1.0 - rng.gen::<f64>()).ln();
                                total += *e;
                            }
                            for d in 0..dims {
                                p[d] = m + (s_val - s_lo) * exps[d] / total;
                            }
                        }
                    }
                    if screen.admits_f64(&p) {
                        if let Some(v) = float_eval.eval(&p) {
                            let better = match &local {
                                None => true,
                                Some((bv, _)) => v > *bv,
                            };
                            if better {
                                local = Some((v, p.clone()));
                            }
                        }
                    }
                }
                local
            })
            .collect();
        evaluations += blocks * SAMPLE_BLOCK as u64;
        // Exact certificates for the sampled bests, scanned in block order.
        let mut ranked: Vec<&(f64, Vec<f64>)> = block_best.iter().flatten().collect();
        ranked.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
        for (_, p) in ranked.into_iter().take(8) {
            let params: Vec<Rat> = p.iter().map(|&x| snap_to_denominator(x, 1 << 30)).collect();
            evaluations += 1;
            if screen.admits_exact(&params) {
                let omega = omega_at(&geom, &params);
                if let Some(value) = eval_exact(&domain.model, list, &omega) {
                    consider(value, params, &mut best);
                }
            }
        }
        // Deterministic fallback probe on the screened chart: the symmetric
        // point t_i = 1/(k+1) is always admissible.
        if best.is_none() {
            if let DomainScreen::P2Coarse { k } = screen {
                let params = vec![rint(1) / rint(k as i64 + 1); dims];
                let omega = omega_at(&geom, &params);
                evaluations += 1;
                if let Some(value) = eval_exact(&domain.model, list, &omega) {
                    consider(value, params, &mut best);
                }
            }
        }
    }

    let (mut best_value, mut best_params) = best.ok_or(OptimizerError::EmptyFeasibleDomain)?;
    let mut best_float = to_f64(&best_value);
    let mut refined = false;

    // Coordinate-wise golden-section refinement in floats around the best
    // exact point, then snap back to small denominators.
    {
        let float_eval = FloatEval::build(&domain.model, list, &geom);
        let f = |p: &[f64]| {
            if !screen.admits_f64(p) {
                return f64::NEG_INFINITY;
            }
            float_eval.eval(p).unwrap_or(f64::NEG_INFINITY)
        };
        let mut p: Vec<f64> = best_params.iter().map(to_f64).collect();
        let mut fp = f(&p);
        let mut refine_evals = 0u64;
        for _ in 0..REFINE_SWEEPS {
            for d in 0..p.len() {
                let lo_d = to_f64(&geom.ranges[d].lo);
                let hi_d = to_f64(&geom.ranges[d].hi);
                let w = (hi_d - lo_d) / f64::from(res);
                let eps = (hi_d - lo_d) * 1e-9;
                let a = (p[d] - w).max(lo_d + eps);
                let b = (p[d] + w).min(if geom.ranges[d].include_hi {
                    hi_d
                } else {
                    hi_d - eps
                });
                if a >= b {
                    continue;
                }
                let around = p.clone();
                let (x, fx) = golden_section_max(
                    |v| {
                        let mut probe = around.clone();
                        probe[d] = v;
                        f(&probe)
                    },
                    a,
                    b,
                    48,
                );
                refine_evals += 50;
                if fx > fp {
                    p[d] = x;
                    fp = fx;
                    refined = true;
                }
            }
        }
        evaluations += refine_evals;
        if fp > best_float {
            best_float = fp;
        }
        // Snap candidates: every coordinate rounded to a common denominator,
        // plus the refined float point itself as an exact certificate.
        let mut candidates: Vec<Vec<Rat>> = (1..=SNAP_MAX_DENOMINATOR)
            .map(|den| p.iter().map(|&x| snap_to_denominator(x, den)).collect())
            .collect();
        candidates.push(p.iter().map(|&x| snap_to_denominator(x, 1 << 30)).collect());
        for params in candidates {
            let inside = params.iter().zip(&geom.ranges).all(|(v, r)| {
                v > &r.lo && (if r.include_hi { v <= &r.hi } else { v < &r.hi })
            });
            if !inside || !screen.admits_exact(&params) {
                continue;
            }
            let omega = omega_at(&geom, &params);
            evaluations += 1;
            if let Some(value) = eval_exact(&domain.model, list, &omega) {
                if value > best_value {
                    best_value = value;
                    best_params = params;
                    refined = true;
                }
            }
        }
    }

    if to_f64(&best_value) > best_float {
        best_float = to_f64(&best_value);
    }
    let abs_gap = target.map(|t| (to_f64(t) - to_f64(&best_value)).abs());
    Ok(OptimizationReport {
        chart: domain.chart.name().to_string(),
        method,
        best_over_4pi: best_value,
        best_float_over_4pi: best_float,
        best_params,
        closed_form_over_4pi: target.cloned(),
        abs_gap,
        evaluations,
        refined,
        seed: domain.seed,
        resolution: domain.resolution,
    })
}

/// Result of the simplex sampling oracle for the mass-shift maximum.
#[derive(Debug, Clone)]
pub struct MassShiftOracle {
    pub max_q: Rat,
    pub argmax: Vec<Rat>,
    pub samples: u64,
    pub seed: u64,
}

/// Draws `samples` points of the shifted simplex `{tᵢ ≥ m, Σtᵢ = S}` via a
/// Dirichlet construction and returns the largest `Σtᵢ²` observed.
///
/// Exponential weights are drawn in floats, then frozen to integers, so every
/// sample satisfies the simplex constraints exactly and the returned maximum
/// is an exact rational.
pub fn massshift_oracle(
    k: usize,
    m: &Rat,
    s: &Rat,
    samples: u64,
    seed: u64,
) -> Result<MassShiftOracle, OptimizerError> {
    if k < 2 {
        return Err(OptimizerError::Infeasible("k >= 2".to_string()));
    }
    if !(m > &Rat::zero()) {
        return Err(OptimizerError::Infeasible("m > 0".to_string()));
    }
    if samples == 0 {
        return Err(OptimizerError::Infeasible("samples >= 1".to_string()));
    }
    let km = rint(k as i64) * m;
    if s < &km {
        return Err(OptimizerError::Infeasible(format!(
            "S = {} < k*m = {}",
            render(s),
            render(&km)
        )));
    }
    let spread = s - &km; // total mass above the floor
    if spread.is_zero() {
        // The simplex is the single point (m, ..., m).
        return Ok(MassShiftOracle {
            max_q: rint(k as i64) * m * m,
            argmax: vec![m.clone(); k],
            samples,
            seed,
        });
    }

    const CHUNK: u64 = 1 << 16;
    // Weight scale: keeps sumsq * W² within u128 for k up to the cap.
    const SCALE: f64 = (1u64 << 20) as f64;
    let chunks = samples.div_ceil(CHUNK);
    let base_q = rint(k as i64) * m * m + rint(2) * m * &spread;
    let spread_sq = &spread * &spread;

    // Per-chunk independent streams; deterministic fold in chunk order.
    let chunk_best: Vec<(Vec<u64>, u128, u128)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk + 1);
            let n = CHUNK.min(samples - chunk * CHUNK);
            let mut best_ws: Vec<u64> = Vec::new();
            let mut best_p: u128 = 0;
            let mut best_w: u128 = 1;
            let mut ws = vec![0u64; k];
            for _ in 0..n {
                let mut total: u128 = 0;
                let mut sumsq: u128 = 0;
                for w in ws.iter_mut() {
                    let u: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
                    let e = -u.ln();
                    let wi = (e * SCALE) as u64 + 1;
                    *w = wi;
                    total += u128::from(wi);
                    sumsq += u128::from(wi) * u128::from(wi);
                }
                // Σt² = k m² + 2 m c + c² P/W² is maximal iff P/W² is.
                if sumsq * (best_w * best_w) > best_p * (total * total) {
                    best_p = sumsq;
                    best_w = total;
                    best_ws = ws.clone();
                }
            }
            (best_ws, best_p, best_w)
        })
        .collect();

    let mut max_q: Option<Rat> = None;
    let mut argmax: Vec<Rat> = Vec::new();
    for (ws, p, w) in chunk_best {
        if ws.is_empty() {
            continue;
        }
        let ratio = Rat::new(BigInt::from(p), BigInt::from(w * w));
        let q = &base_q + &spread_sq * ratio;
        let better = match &max_q {
            None => true,
            Some(b) => &q > b,
        };
        if better {
            let total = Rat::from_integer(BigInt::from(w));
            argmax = ws
                .iter()
                .map(|&wi| m + &spread * Rat::from_integer(BigInt::from(wi)) / &total)
                .collect();
            max_q = Some(q);
        }
    }
    Ok(MassShiftOracle {
        max_q: max_q.expect("at least one chunk produced a sample"),
        argmax,
        samples,
        seed,
    })
}

/// One evaluated point of a boundary approach.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryPoint {
    #[serde(with = "crate::rat::rat_string")]
    pub s: Rat,
    #[serde(with = "crate::rat::rat_string")]
    pub value_over_4pi: Rat,
    pub minimizers: Vec<String>,
}

/// Values of the functional along a geometric approach to the cone boundary.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryScan {
    pub points: Vec<BoundaryPoint>,
    #[serde(with = "crate::rat::rat_string")]
    pub max_over_4pi: Rat,
}

/// Evaluates the functional along `ω(s) = (1−s)ω₀ + sω₁` for the geometric
/// sequence `s = 1 − 2⁻ⁿ`, `n = 0…steps`.
///
/// `ω₁` must sit on the boundary of the screened cone: it pairs
/// non-negatively with every list curve and either some pairing or its square
/// vanishes. Errors if any evaluated point fails the screen.
pub fn boundary_scan(
    model: &SurfaceModel,
    omega_interior: &DivisorClass,
    omega_boundary: &DivisorClass,
    list: &CurveList,
    steps: u32,
) -> Result<BoundaryScan, OptimizerError> {
    // Validate the endpoint.
    let square = model.pair(omega_boundary, omega_boundary)?;
    let mut min_pairing: Option<Rat> = None;
    for curve in list.curves() {
        let p = model.pair_curve(omega_boundary, curve)?;
        if p < Rat::zero() {
            return Err(OptimizerError::PathNotBoundary(format!(
                "endpoint pairs negatively with {}",
                curve.name()
            )));
        }
        min_pairing = Some(match min_pairing {
            None => p,
            Some(m) if p < m => p,
            Some(m) => m,
        });
    }
    let hits_curve = min_pairing.as_ref().is_some_and(Rat::is_zero);
    if !hits_curve && !square.is_zero() {
        return Err(OptimizerError::PathNotBoundary(
            "endpoint has positive square and positive pairings".to_string(),
        ));
    }

    let mut points = Vec::with_capacity(steps as usize + 1);
    let mut max: Option<Rat> = None;
    let mut pow = rint(1); // 2^n
    for _ in 0..=steps {
        let s = rint(1) - rint(1) / &pow;
        let omega = omega_interior.scale(&(rint(1) - &s)).add_scaled(omega_boundary, &s);
        match crate::systole::j_functional(model, &omega, list) {
            Ok(j) => {
                if max.as_ref().is_none_or(|m| &j.value_over_4pi > m) {
                    max = Some(j.value_over_4pi.clone());
                }
                points.push(BoundaryPoint {
                    s,
                    value_over_4pi: j.value_over_4pi,
                    minimizers: j
                        .systole
                        .minimizers
                        .iter()
                        .map(|c| c.name().to_string())
                        .collect(),
                });
            }
            Err(SystoleError::NotKahler(_)) => {
                return Err(OptimizerError::PathLeftCone { s: render(&s) });
            }
            Err(e) => return Err(e.into()),
        }
        pow = pow * rint(2);
    }
    Ok(BoundaryScan {
        points,
        max_over_4pi: max.expect("at least one step"),
    })
}

/// A one-parameter closed form with its domain and, where stated, the
/// displayed derivative for cross-checking.
pub struct Formula1d {
    pub id: String,
    pub param: &'static str,
    pub lo: f64,
    pub hi: f64,
    eval: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    displayed: Box<dyn Fn(f64) -> Option<f64> + Send + Sync>,
}

impl Formula1d {
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn displayed_derivative(&self, x: f64) -> Option<f64> {
        (self.displayed)(x)
    }
}

/// `G_k(m)` on `(0, 4/(k+3))` with its displayed derivative
/// `(18−2k)/(4−(k+3)m)²`.
pub fn formula_p2_gk(k: usize) -> Result<Formula1d, OptimizerError> {
    if k < 2 {
        return Err(OptimizerError::Infeasible("k >= 2".to_string()));
    }
    let kf = k as f64;
    Ok(Formula1d {
        id: format!("{}[k={k}]", crate::closed_forms::ids::P2_GK),
        param: "m",
        lo: 0.0,
        hi: 4.0 / (kf + 3.0),
        eval: Box::new(move |m| (2.0 - (kf - 3.0) * m) / (4.0 - (kf + 3.0) * m)),
        displayed: Box::new(move |m| {
            let d = 4.0 - (kf + 3.0) * m;
            Some((18.0 - 2.0 * kf) / (d * d))
        }),
    })
}

/// The minimal ruled profile on `(e, ∞)`. The displayed derivative
/// `−4/(2t−e)²` applies on the rational-base branch `t > e + 1`.
pub fn formula_ruled_phi(e: u32, g: u32) -> Formula1d {
    let ef = f64::from(e);
    let gf = f64::from(g);
    Formula1d {
        id: format!("{}[e={e},g={g}]", crate::closed_forms::ids::RULED_PHI),
        param: "t",
        lo: ef,
        hi: f64::INFINITY,
        eval: Box::new(move |t| {
            (1.0f64).min(t - ef) * (2.0 * t + 2.0 - 2.0 * gf - ef) / (2.0 * t - ef)
        }),
        displayed: Box::new(move |t| {
            if g == 0 && t > ef + 1.0 {
                let d = 2.0 * t - ef;
                Some(-4.0 / (d * d))
            } else {
                None
            }
        }),
    }
}

/// Central finite-difference sign of a formula's derivative at `point`.
pub fn finite_difference_sign_check(
    formula: &Formula1d,
    point: f64,
    h: f64,
) -> Result<Sign, OptimizerError> {
    let fd = central_difference(formula, point, h)?;
    Ok(Sign::of_f64(fd, 1e-7))
}

/// Central finite difference compared against the displayed derivative.
/// Relative error uses `max(1, |displayed|)` as the scale, so a vanishing
/// displayed derivative is compared absolutely.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FdComparison {
    pub fd: f64,
    pub displayed: f64,
    pub rel_err: f64,
}

pub fn finite_difference_vs_displayed(
    formula: &Formula1d,
    point: f64,
    h: f64,
) -> Result<Option<FdComparison>, OptimizerError> {
    let fd = central_difference(formula, point, h)?;
    Ok(formula.displayed_derivative(point).map(|displayed| {
        let rel_err = (fd - displayed).abs() / displayed.abs().max(1.0);
        FdComparison {
            fd,
            displayed,
            rel_err,
        }
    }))
}

fn central_difference(formula: &Formula1d, point: f64, h: f64) -> Result<f64, OptimizerError> {
    if !(h > 0.0) || point - h <= formula.lo || point + h >= formula.hi {
        return Err(OptimizerError::DomainBreach { point, h });
    }
    Ok((formula.eval(point + h) - formula.eval(point - h)) / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::{q_max, sup_phi_p2};
    use crate::curves::{coarse_curves, mori_generators};
    use crate::lattice::build_model;
    use crate::rat::rat;

    fn p2(k: usize) -> SurfaceModel {
        build_model(SurfaceFamily::ProjectivePlane, k).unwrap()
    }

    fn fe(e: u32, k: usize) -> SurfaceModel {
        build_model(SurfaceFamily::Hirzebruch { e }, k).unwrap()
    }

    #[test]
    fn grid_bl1_p2_attains_closed_form() {
        let model = p2(1);
        let list = mori_generators(&model).into_list().unwrap();
        let target = sup_phi_p2(1).unwrap().sup_over_4pi;
        let domain = ParamDomain::new(model, Chart::P2Blowup, 200).unwrap();
        let report = grid_maximize(&domain, &list, Some(&target)).unwrap();
        assert_eq!(report.method, SearchMethod::ExhaustiveGrid);
        assert_eq!(report.best_over_4pi, rat(5, 3));
        assert_eq!(report.best_params, vec![rat(1, 2)]);
        assert!(report.abs_gap.unwrap() < 1e-4);
    }

    #[test]
    fn grid_ruled_minimal_attains_closed_form() {
        let model = fe(2, 0);
        let list = mori_generators(&model).into_list().unwrap();
        let domain = ParamDomain::new(
            model,
            Chart::RuledMinimal {
                t_cap: Chart::default_cap(2),
            },
            200,
        )
        .unwrap();
        let report = grid_maximize(&domain, &list, None).unwrap();
        assert_eq!(report.best_over_4pi, rat(3, 2));
        assert_eq!(report.best_params, vec![rint(3)]);
    }

    #[test]
    fn sampling_path_reports_exact_certificate() {
        // k = 10 forces the stratified path at this resolution.
        let model = p2(10);
        let list = coarse_curves(&model);
        let domain = ParamDomain::new(model, Chart::P2Blowup, 50)
            .unwrap()
            .with_sample_budget(20_000);
        let report = grid_maximize(&domain, &list, None).unwrap();
        assert_eq!(report.method, SearchMethod::StratifiedSampling);
        // The certificate is exact and below the unattained supremum.
        assert!(report.best_over_4pi < rat(1, 2));
        assert!(report.best_float_over_4pi < 0.5);
    }

    #[test]
    fn sampling_is_deterministic() {
        let model = p2(10);
        let list = coarse_curves(&model);
        let domain = ParamDomain::new(model.clone(), Chart::P2Blowup, 50)
            .unwrap()
            .with_sample_budget(10_000);
        let a = grid_maximize(&domain, &list, None).unwrap();
        let b = grid_maximize(&domain, &list, None).unwrap();
        assert_eq!(a.best_over_4pi, b.best_over_4pi);
        assert_eq!(a.best_params, b.best_params);
    }

    #[test]
    fn chart_mismatches_rejected() {
        assert!(ParamDomain::new(p2(0), Chart::P2Blowup, 100).is_err());
        assert!(ParamDomain::new(
            p2(1),
            Chart::RuledMinimal { t_cap: rint(10) },
            100
        )
        .is_err());
        assert!(ParamDomain::new(
            fe(2, 1),
            Chart::RuledMinimal { t_cap: rint(10) },
            100
        )
        .is_err());
    }

    #[test]
    fn oracle_never_beats_closed_form() {
        for (k, m, s) in [
            (2usize, rint(1), rint(3)),
            (3, rat(1, 3), rint(2)),
            (5, rat(1, 8), rint(1)),
        ] {
            let closed = q_max(k, &m, &s).unwrap();
            let oracle = massshift_oracle(k, &m, &s, 5_000, 7).unwrap();
            assert!(oracle.max_q <= closed.q_max, "k={k}");
            let sum: Rat = oracle.argmax.iter().sum();
            assert_eq!(sum, s, "argmax stays on the simplex");
            assert!(oracle.argmax.iter().all(|t| t >= &m));
        }
    }

    #[test]
    fn oracle_on_degenerate_simplex() {
        let oracle = massshift_oracle(4, &rat(1, 2), &rint(2), 100, 1).unwrap();
        assert_eq!(oracle.max_q, rint(1));
        assert_eq!(oracle.argmax, vec![rat(1, 2); 4]);
    }

    #[test]
    fn oracle_rejects_infeasible() {
        assert!(massshift_oracle(3, &rint(1), &rint(2), 10, 0).is_err());
        assert!(massshift_oracle(1, &rint(1), &rint(2), 10, 0).is_err());
    }

    #[test]
    fn boundary_scan_bl1() {
        let model = p2(1);
        let list = mori_generators(&model).into_list().unwrap();
        let interior = DivisorClass::new(vec![rint(1), rat(-1, 2)]);
        let boundary = DivisorClass::from_ints(&[1, -1]); // pairs to 0 with H-E
        let scan = boundary_scan(&model, &interior, &boundary, &list, 20).unwrap();
        assert_eq!(scan.max_over_4pi, rat(5, 3)); // s = 0 is the argmax here
        // Values approach 1 = lim (3-t)/(1+t) as t -> 1.
        let last = &scan.points.last().unwrap().value_over_4pi;
        assert!((to_f64(last) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn boundary_scan_rejects_interior_endpoint() {
        let model = p2(1);
        let list = mori_generators(&model).into_list().unwrap();
        let interior = DivisorClass::new(vec![rint(1), rat(-1, 2)]);
        let inner_end = DivisorClass::new(vec![rint(1), rat(-1, 3)]);
        assert!(matches!(
            boundary_scan(&model, &interior, &inner_end, &list, 10),
            Err(OptimizerError::PathNotBoundary(_))
        ));
    }

    #[test]
    fn fd_signs_match_displayed() {
        let f = formula_p2_gk(5).unwrap();
        assert_eq!(
            finite_difference_sign_check(&f, 0.2, 1e-4).unwrap(),
            Sign::Positive
        );
        let f = formula_p2_gk(9).unwrap();
        assert_eq!(
            finite_difference_sign_check(&f, 0.2, 1e-4).unwrap(),
            Sign::Zero
        );
        let f = formula_p2_gk(15).unwrap();
        assert_eq!(
            finite_difference_sign_check(&f, 0.1, 1e-4).unwrap(),
            Sign::Negative
        );
        let f = formula_ruled_phi(1, 0);
        assert_eq!(
            finite_difference_sign_check(&f, 3.0, 1e-4).unwrap(),
            Sign::Negative
        );
        // Increasing branch below e + 1.
        assert_eq!(
            finite_difference_sign_check(&f, 1.5, 1e-4).unwrap(),
            Sign::Positive
        );
    }

    #[test]
    fn fd_matches_displayed_value() {
        let f = formula_p2_gk(5).unwrap();
        let cmp = finite_difference_vs_displayed(&f, 0.25, 1e-5)
            .unwrap()
            .unwrap();
        assert!(cmp.rel_err < 1e-6, "rel err {}", cmp.rel_err);
        // No displayed derivative on the increasing ruled branch.
        let f = formula_ruled_phi(2, 0);
        assert!(finite_difference_vs_displayed(&f, 2.5, 1e-5)
            .unwrap()
            .is_none());
    }

    #[test]
    fn fd_domain_breach() {
        let f = formula_p2_gk(5).unwrap();
        assert!(matches!(
            finite_difference_sign_check(&f, 0.5 - 1e-9, 1e-4),
            Err(OptimizerError::DomainBreach { .. })
        ));
    }
}

