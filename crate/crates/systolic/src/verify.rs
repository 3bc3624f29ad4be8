//! The verification matrix: every closed-form constant, bound and extremal
//! configuration, checked exactly or against the independent optimizer, as
//! named pass/fail checks.
//!
//! Checks are grouped into suites (`p2`, `fe`, `ruled`, `massshift`); the
//! `all` suite runs the complete matrix. Expected values come only from the
//! closed-form records; observed values come from exact evaluation, grid
//! search, sampling oracles or boundary scans. Every tolerance is pinned
//! here.

use crate::closed_forms::{
    d_minus_n_f0, d_minus_n_fe, fe_boundary_poly, g_k_derivative_sign, q_max, sup_j_ruled_minimal,
    sup_phi_bl1_f0, sup_phi_bl1_fe, sup_phi_p2, sup_ruled_blowup_nonrational, sup_small_blowup_fe,
    SupRecord, Witness, WitnessItem,
};
use crate::curves::{coarse_curves, minus_one_curves, mori_generators};
use crate::lattice::{build_model, DivisorClass, SurfaceFamily, SurfaceModel};
use crate::optimizer::{
    boundary_scan, finite_difference_vs_displayed, formula_p2_gk, grid_maximize, massshift_oracle,
    Chart, ParamDomain,
};
use crate::rat::{rat, render, rint, to_f64, Rat, Sign};
use crate::systole::{hol_systole, j_functional, product_example, render_over_4pi};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Settings shared by the verification suites. Defaults match the
/// acceptance protocol; the seed is recorded in the emitted suite.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Total simplex samples across the mass-shift configurations.
    pub massshift_samples: u64,
    /// Sample budget per plane blow-up search with `k > 9`.
    pub trichotomy_samples: u64,
    /// Grid steps per coordinate for the attained-supremum searches.
    pub resolution: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            massshift_samples: 100_000,
            trichotomy_samples: 1_000_000,
            resolution: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One named check with its expectation, observation and tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub expected: String,
    pub observed: String,
    pub tolerance: String,
}

/// A suite of checks with the seed and wall-clock bracket of the run.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationSuite {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub started_ms: u64,
    pub finished_ms: u64,
}

impl VerificationSuite {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .collect()
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn new() -> Recorder {
        Recorder { checks: Vec::new() }
    }

    fn push(&mut self, name: &str, pass: bool, expected: String, observed: String, tol: &str) {
        self.checks.push(Check {
            name: name.to_string(),
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            expected,
            observed,
            tolerance: tol.to_string(),
        });
    }

    fn claim(&mut self, name: &str, pass: bool, expected: &str, observed: String) {
        self.push(name, pass, expected.to_string(), observed, "exact");
    }
}

fn now_ms() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

fn p2(k: usize) -> SurfaceModel {
    build_model(SurfaceFamily::ProjectivePlane, k).expect("within cap")
}

fn fe(e: u32, k: usize) -> SurfaceModel {
    build_model(SurfaceFamily::Hirzebruch { e }, k).expect("within cap")
}

fn ruled(g: u32, e: u32, k: usize) -> SurfaceModel {
    build_model(SurfaceFamily::Ruled { g, e }, k).expect("within cap")
}

/// Random rational in `[lo, hi]` with the given denominator.
fn rat_between(rng: &mut ChaCha8Rng, lo: f64, hi: f64, den: i64) -> Rat {
    let lo_n = (lo * den as f64).ceil() as i64;
    let hi_n = (hi * den as f64).floor() as i64;
    rat(rng.gen_range(lo_n..=hi_n), den)
}

/// Plane Kähler class `H − Σ tᵢEᵢ`.
fn p2_class(t: &[Rat]) -> DivisorClass {
    let mut coeffs = vec![rint(1)];
    coeffs.extend(t.iter().map(|ti| -ti.clone()));
    DivisorClass::new(coeffs)
}

/// Ruled class `C₀ + bF − Σ tᵢEᵢ`.
fn ruled_class(b: &Rat, t: &[Rat]) -> DivisorClass {
    let mut coeffs = vec![rint(1), b.clone()];
    coeffs.extend(t.iter().map(|ti| -ti.clone()));
    DivisorClass::new(coeffs)
}

// ---------------------------------------------------------------------------
// Criterion 1: the plane baseline J = 3 (i.e. 12π), exactly, for random a.
// ---------------------------------------------------------------------------
fn criterion_01(cfg: &SuiteConfig, rec: &mut Recorder) {
    let model = p2(0);
    let list = mori_generators(&model).into_list().expect("plane cone");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x01);
    let mut ok = 0;
    for _ in 0..20 {
        let a = rat_between(&mut rng, 0.01, 50.0, 997);
        let omega = DivisorClass::new(vec![a]);
        if let Ok(j) = j_functional(&model, &omega, &list) {
            if j.value_over_4pi == rint(3) {
                ok += 1;
            }
        }
    }
    rec.push(
        "AC01 p2 baseline J(aH) = 3 x 4pi for 20 random a",
        ok == 20,
        "20/20 exact".into(),
        format!("{ok}/20 exact"),
        "exact",
    );
}

// ---------------------------------------------------------------------------
// Criteria 2-3: one- and two-point plane blow-ups, closed form + grid.
// ---------------------------------------------------------------------------
fn criterion_02_03(cfg: &SuiteConfig, rec: &mut Recorder) -> (Rat, Rat) {
    // k = 1: sup 5/3 at t = 1/2.
    let model = p2(1);
    let list = mori_generators(&model).into_list().expect("certified");
    let sup = sup_phi_p2(1).expect("k >= 1");
    let domain = ParamDomain::new(model, Chart::P2Blowup, cfg.resolution)
        .expect("chart fits")
        .with_seed(cfg.seed);
    let report = grid_maximize(&domain, &list, Some(&sup.sup_over_4pi)).expect("feasible");
    let bl1_best = report.best_over_4pi.clone();
    let pass = sup.sup_over_4pi == rat(5, 3)
        && sup.attained
        && report.abs_gap.unwrap_or(f64::INFINITY) < 1e-4
        && report.best_over_4pi == rat(5, 3)
        && report.best_params == vec![rat(1, 2)];
    rec.push(
        "AC02 p2 one-point blow-up sup 5/3 x 4pi, grid attains, snap t=1/2",
        pass,
        format!("best {} at t=1/2, gap < 1e-4", render_over_4pi(&rat(5, 3))),
        format!(
            "best {} at t={}, gap {:.2e}",
            render(&report.best_over_4pi),
            report.best_params.first().map(render).unwrap_or_default(),
            report.abs_gap.unwrap_or(f64::NAN)
        ),
        "1e-4",
    );

    // k = 2: sup 1 at (1/3, 1/3).
    let model = p2(2);
    let list = mori_generators(&model).into_list().expect("certified");
    let sup = sup_phi_p2(2).expect("k >= 1");
    let domain = ParamDomain::new(model, Chart::P2Blowup, cfg.resolution)
        .expect("chart fits")
        .with_seed(cfg.seed);
    let report = grid_maximize(&domain, &list, Some(&sup.sup_over_4pi)).expect("feasible");
    let bl2_best = report.best_over_4pi.clone();
    let pass = sup.sup_over_4pi == rint(1)
        && report.abs_gap.unwrap_or(f64::INFINITY) < 1e-4
        && report.best_over_4pi == rint(1)
        && report.best_params == vec![rat(1, 3), rat(1, 3)];
    rec.push(
        "AC03 p2 two-point blow-up sup 1 x 4pi, grid attains, snap (1/3,1/3)",
        pass,
        "best 1 at (1/3,1/3), gap < 1e-4".into(),
        format!(
            "best {} at ({}), gap {:.2e}",
            render(&report.best_over_4pi),
            report
                .best_params
                .iter()
                .map(render)
                .collect::<Vec<_>>()
                .join(","),
            report.abs_gap.unwrap_or(f64::NAN)
        ),
        "1e-4",
    );
    (bl1_best, bl2_best)
}

// ---------------------------------------------------------------------------
// Criterion 4: the trichotomy of the plane blow-up suprema.
// ---------------------------------------------------------------------------
fn criterion_04(cfg: &SuiteConfig, rec: &mut Recorder) {
    // k = 2..8: sup 1 attained at t_i = 1/3, verified exactly through the
    // certified lists.
    let mut exact_ok = true;
    let mut detail = String::new();
    for k in 2..=8usize {
        let record = sup_phi_p2(k).expect("k >= 1");
        let model = p2(k);
        let list = mori_generators(&model).into_list().expect("del Pezzo");
        let omega = p2_class(&vec![rat(1, 3); k]);
        let j = j_functional(&model, &omega, &list).expect("interior class");
        let good = record.sup_over_4pi == rint(1)
            && record.attained
            && record.witness.get("t_i") == Some(&WitnessItem::At(rat(1, 3)))
            && j.value_over_4pi == rint(1);
        if !good {
            exact_ok = false;
            detail = format!("k={k}: J={}", render(&j.value_over_4pi));
        }
    }
    rec.push(
        "AC04 p2 trichotomy k=2..8: sup 1 x 4pi attained at t_i=1/3",
        exact_ok,
        "J(H - sum E_i/3) = 1 exactly, all k".into(),
        if exact_ok { "all exact".into() } else { detail },
        "exact",
    );

    // k = 9..15: records are 1/2, unattained, with the stated witness
    // directions.
    let mut records_ok = true;
    for k in 9..=15usize {
        let record = sup_phi_p2(k).expect("k >= 1");
        let witness_ok = if k == 9 {
            record.witness.get("m") == Some(&WitnessItem::Up(rat(1, 3)))
        } else {
            record.witness.get("m") == Some(&WitnessItem::Down(Rat::zero()))
        };
        if record.sup_over_4pi != rat(1, 2) || record.attained || !witness_ok {
            records_ok = false;
        }
    }
    rec.claim(
        "AC04 p2 trichotomy k=9..15: sup record 1/2 x 4pi, not attained",
        records_ok,
        "sup 1/2, attained=false, witness m->1/3 (k=9) or m->0 (k>=10)",
        if records_ok {
            "as stated".into()
        } else {
            "record mismatch".into()
        },
    );

    // Sampled searches stay strictly below 1/2 at every feasible point.
    let mut below = true;
    let mut worst = f64::NEG_INFINITY;
    let target = rat(1, 2);
    for k in 9..=15usize {
        let model = p2(k);
        let list = coarse_curves(&model);
        let domain = ParamDomain::new(model, Chart::P2Blowup, 50)
            .expect("chart fits")
            .with_seed(cfg.seed)
            .with_sample_budget(cfg.trichotomy_samples);
        let report = grid_maximize(&domain, &list, Some(&target)).expect("feasible");
        let value = to_f64(&report.best_over_4pi);
        if value > worst {
            worst = value;
        }
        if !(report.best_over_4pi < target && report.best_float_over_4pi < 0.5) {
            below = false;
        }
    }
    rec.push(
        "AC04 p2 trichotomy k=9..15: sampled optimizer best < 1/2",
        below,
        "best < 1/2 at every feasible point".into(),
        format!("worst best {worst:.6}"),
        "strict",
    );

    // Exact values along the witness directions come within 1e-3 of 1/2.
    let mut witness_ok = true;
    let mut worst_gap = 0f64;
    for k in 9..=15usize {
        let model = p2(k);
        let list = coarse_curves(&model);
        let omega = if k == 9 {
            p2_class(&vec![rat(333, 1000); 9])
        } else {
            let m = rat(1, 1000);
            let mut t = vec![m.clone(); k - 1];
            t.push(rint(1) - rint(2) * &m);
            p2_class(&t)
        };
        let j = j_functional(&model, &omega, &list).expect("witness class is screened");
        let gap = (to_f64(&j.value_over_4pi) - 0.5).abs();
        if gap > worst_gap {
            worst_gap = gap;
        }
        if !(j.value_over_4pi < rat(1, 2) && gap < 1e-3) {
            witness_ok = false;
        }
    }
    rec.push(
        "AC04 p2 trichotomy k=9..15: witness direction within 1e-3 of 1/2",
        witness_ok,
        "|J - 1/2| < 1e-3 along the stated witness".into(),
        format!("worst gap {worst_gap:.2e}"),
        "1e-3",
    );
}

// ---------------------------------------------------------------------------
// Criterion 5: derivative signs of G_k against c1² and finite differences.
// ---------------------------------------------------------------------------
fn criterion_05(_cfg: &SuiteConfig, rec: &mut Recorder) {
    let mut signs_ok = true;
    for k in 2..=20usize {
        if g_k_derivative_sign(k) != Sign::of_i64(9 - k as i64) {
            signs_ok = false;
        }
        if p2(k).c1_squared() != rint(9 - k as i64) {
            signs_ok = false;
        }
    }
    rec.claim(
        "AC05 sign G_k' = sign(9-k) = sign c1^2, k=2..20",
        signs_ok,
        "trichotomy matches c1^2 exactly",
        if signs_ok {
            "all match".into()
        } else {
            "mismatch".into()
        },
    );

    let mut fd_ok = true;
    let mut worst = 0f64;
    for k in 2..=20usize {
        let formula = formula_p2_gk(k).expect("k >= 2");
        let hi = formula.hi;
        for frac in [0.15, 0.3, 0.45, 0.6, 0.75] {
            let point = frac * hi;
            match finite_difference_vs_displayed(&formula, point, 1e-5) {
                Ok(Some(cmp)) => {
                    if cmp.rel_err > worst {
                        worst = cmp.rel_err;
                    }
                    if cmp.rel_err >= 1e-6 {
                        fd_ok = false;
                    }
                }
                _ => fd_ok = false,
            }
        }
    }
    rec.push(
        "AC05 finite differences match displayed G_k' at 5 interior points",
        fd_ok,
        "relative error < 1e-6".into(),
        format!("worst rel err {worst:.2e}"),
        "1e-6",
    );
}

// ---------------------------------------------------------------------------
// Criterion 6: the mass-shift oracle never beats the closed form.
// ---------------------------------------------------------------------------
fn criterion_06(cfg: &SuiteConfig, rec: &mut Recorder) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x06);
    let configs = 50u64;
    let per_config = (cfg.massshift_samples / configs).max(1);
    let mut violations = 0usize;
    let mut extremal_ok = true;
    for i in 0..configs {
        let k = rng.gen_range(2..=10usize);
        let m = rat_between(&mut rng, 0.01, 0.5, 120);
        let spread = if i % 7 == 0 {
            Rat::zero() // degenerate simplex: a single point
        } else {
            rat_between(&mut rng, 0.0, 2.0, 97)
        };
        let s = rint(k as i64) * &m + spread;
        let closed = q_max(k, &m, &s).expect("feasible by construction");
        let oracle = massshift_oracle(k, &m, &s, per_config, cfg.seed ^ i).expect("feasible");
        if oracle.max_q > closed.q_max {
            violations += 1;
        }
        let q_at_extremal: Rat = closed.extremal.iter().map(|t| t * t).sum();
        if q_at_extremal != closed.q_max {
            extremal_ok = false;
        }
    }
    rec.push(
        "AC06 mass-shift oracle <= q_max over 50 seeded configurations",
        violations == 0,
        "0 violations".into(),
        format!("{violations} violations in {configs} configs x {per_config} samples"),
        "exact",
    );
    rec.claim(
        "AC06 extremal vector attains q_max exactly",
        extremal_ok,
        "sum of squares of (m,..,m,S-(k-1)m) = q_max",
        if extremal_ok {
            "attained".into()
        } else {
            "mismatch".into()
        },
    );
}

// ---------------------------------------------------------------------------
// Criterion 7: minimal rational ruled surfaces.
// ---------------------------------------------------------------------------
fn criterion_07(cfg: &SuiteConfig, rec: &mut Recorder) {
    let mut exact_ok = true;
    let mut grid_ok = true;
    let mut worst_gap = 0f64;
    for e in 0..=10u32 {
        let record = sup_j_ruled_minimal(e, 0);
        let expected = rint(i64::from(e) + 4) / rint(i64::from(e) + 2);
        if record.sup_over_4pi != expected
            || !record.attained
            || record.witness.get("t") != Some(&WitnessItem::At(rint(i64::from(e) + 1)))
        {
            exact_ok = false;
        }
        let model = fe(e, 0);
        let list = mori_generators(&model).into_list().expect("minimal cone");
        let omega = DivisorClass::from_ints(&[1, i64::from(e) + 1]);
        let j = j_functional(&model, &omega, &list).expect("interior class");
        if j.value_over_4pi != expected {
            exact_ok = false;
        }
        let domain = ParamDomain::new(
            model,
            Chart::RuledMinimal {
                t_cap: Chart::default_cap(e),
            },
            cfg.resolution,
        )
        .expect("chart fits")
        .with_seed(cfg.seed);
        let report = grid_maximize(&domain, &list, Some(&expected)).expect("feasible");
        let gap = report.abs_gap.unwrap_or(f64::INFINITY);
        if gap > worst_gap {
            worst_gap = gap;
        }
        if gap >= 1e-4 {
            grid_ok = false;
        }
    }
    rec.claim(
        "AC07 minimal Hirzebruch sup (e+4)/(e+2) x 4pi at t=e+1, e=0..10",
        exact_ok,
        "closed form attained exactly",
        if exact_ok {
            "all exact".into()
        } else {
            "mismatch".into()
        },
    );
    rec.push(
        "AC07 minimal Hirzebruch grid confirms within 1e-4",
        grid_ok,
        "gap < 1e-4 for all e".into(),
        format!("worst gap {worst_gap:.2e}"),
        "1e-4",
    );

    // Global rational-ruled constant: max over e is 2 x 4pi = 8pi at e = 0,
    // on the class giving both rulings equal weight.
    let max_sup = (0..=10u32)
        .map(|e| sup_j_ruled_minimal(e, 0).sup_over_4pi)
        .max()
        .expect("nonempty");
    let model = fe(0, 0);
    let list = mori_generators(&model).into_list().expect("minimal cone");
    let omega = DivisorClass::from_ints(&[1, 1]);
    let j = j_functional(&model, &omega, &list).expect("interior class");
    let pass = max_sup == rint(2) && j.value_over_4pi == rint(2);
    rec.push(
        "AC07 global Hirzebruch constant 2 x 4pi = 8pi at e=0, class F_1+F_2",
        pass,
        "max_e sup = 2 x 4pi, attained".into(),
        format!(
            "max sup {}, J(F_1+F_2) = {}",
            render(&max_sup),
            render(&j.value_over_4pi)
        ),
        "exact",
    );
}

// ---------------------------------------------------------------------------
// Criterion 8: minimal ruled surfaces of positive genus.
// ---------------------------------------------------------------------------
fn criterion_08(cfg: &SuiteConfig, rec: &mut Recorder) {
    // g = 1: sup 1 x 4pi, attained exactly when t >= e+1.
    let mut g1_ok = true;
    for e in 0..=2u32 {
        let record = sup_j_ruled_minimal(e, 1);
        if record.sup_over_4pi != rint(1) || !record.attained {
            g1_ok = false;
        }
        let model = ruled(1, e, 0);
        let list = mori_generators(&model).into_list().expect("minimal cone");
        for extra in [1i64, 2] {
            let omega = DivisorClass::from_ints(&[1, i64::from(e) + extra]);
            let j = j_functional(&model, &omega, &list).expect("interior");
            if j.value_over_4pi != rint(1) {
                g1_ok = false;
            }
        }
        // Below the threshold the value drops strictly under 1.
        let omega = ruled_class(&(rint(i64::from(e)) + rat(1, 2)), &[]);
        let j = j_functional(&model, &omega, &list).expect("interior");
        if !(j.value_over_4pi < rint(1)) {
            g1_ok = false;
        }
    }
    rec.claim(
        "AC08 ruled g=1 sup 1 x 4pi attained iff t >= e+1 (checked t=e+1,e+2)",
        g1_ok,
        "J = 1 at t=e+1, e+2; J < 1 at t=e+1/2",
        if g1_ok {
            "as stated".into()
        } else {
            "mismatch".into()
        },
    );

    // g = 2, 3: sup 1 x 4pi never attained; values increase monotonically in
    // t and stay strictly below 1 up to the cap.
    let mut g23_ok = true;
    let mut best_seen = Rat::zero();
    for g in [2u32, 3] {
        for e in 0..=2u32 {
            let record = sup_j_ruled_minimal(e, g);
            if record.sup_over_4pi != rint(1)
                || record.attained
                || record.witness.get("t") != Some(&WitnessItem::ToInfinity)
            {
                g23_ok = false;
            }
            let model = ruled(g, e, 0);
            let list = mori_generators(&model).into_list().expect("minimal cone");
            let mut prev: Option<Rat> = None;
            for step in [1i64, 5, 10, 25, 50] {
                let omega = DivisorClass::from_ints(&[1, i64::from(e) + step]);
                let j = j_functional(&model, &omega, &list).expect("interior");
                if !(j.value_over_4pi < rint(1)) {
                    g23_ok = false;
                }
                if let Some(p) = &prev {
                    if !(j.value_over_4pi > *p) {
                        g23_ok = false;
                    }
                }
                prev = Some(j.value_over_4pi.clone());
            }
            if let Some(p) = prev {
                if p > best_seen {
                    best_seen = p;
                }
            }
            let domain = ParamDomain::new(
                model,
                Chart::RuledMinimal {
                    t_cap: Chart::default_cap(e),
                },
                cfg.resolution,
            )
            .expect("chart fits")
            .with_seed(cfg.seed);
            let report = grid_maximize(&domain, &list, Some(&rint(1))).expect("feasible");
            if !(report.best_over_4pi < rint(1)) {
                g23_ok = false;
            }
        }
    }
    rec.push(
        "AC08 ruled g=2,3 sup 1 x 4pi not attained; monotone approach to cap",
        g23_ok,
        "J < 1 strictly, increasing in t".into(),
        format!("largest value at cap {}", render(&best_seen)),
        "strict",
    );
}

// ---------------------------------------------------------------------------
// Criterion 9: one-point blow-ups of Hirzebruch surfaces.
// ---------------------------------------------------------------------------
fn criterion_09(cfg: &SuiteConfig, rec: &mut Recorder, bl1_p2_best: &Rat, bl2_p2_best: &Rat) {
    let mut exact_ok = true;
    let mut grid_ok = true;
    let mut worst_gap = 0f64;
    let mut f1_best: Option<Rat> = None;
    for e in 1..=10u32 {
        let record = sup_phi_bl1_fe(e).expect("e >= 1");
        let expected = rint(2 * i64::from(e) + 5) / rint(4 * i64::from(e) + 3);
        if record.sup_over_4pi != expected
            || record.witness.get("x") != Some(&WitnessItem::At(rint(2)))
            || record.witness.get("z") != Some(&WitnessItem::At(rint(1)))
        {
            exact_ok = false;
        }
        // The witness ray (x, z) = (2, 1) scaled to t = 1.
        let model = fe(e, 1);
        let list = mori_generators(&model).into_list().expect("certified k=1");
        let omega = DivisorClass::from_ints(&[2, 2 * i64::from(e) + 1, -1]);
        let j = j_functional(&model, &omega, &list).expect("interior");
        if j.value_over_4pi != expected {
            exact_ok = false;
        }
        let domain = ParamDomain::new(
            model,
            Chart::RuledBlowup {
                b_cap: Chart::default_cap(e),
            },
            cfg.resolution.min(100),
        )
        .expect("chart fits")
        .with_seed(cfg.seed);
        let report = grid_maximize(&domain, &list, Some(&expected)).expect("feasible");
        let gap = report.abs_gap.unwrap_or(f64::INFINITY);
        if gap > worst_gap {
            worst_gap = gap;
        }
        if gap >= 1e-4 {
            grid_ok = false;
        }
        if e == 1 {
            f1_best = Some(report.best_over_4pi.clone());
        }
    }
    rec.claim(
        "AC09 Bl1 F_e sup (2e+5)/(4e+3) x 4pi at (x,z)=(2,1), e=1..10",
        exact_ok,
        "closed form attained exactly on the witness ray",
        if exact_ok {
            "all exact".into()
        } else {
            "mismatch".into()
        },
    );
    rec.push(
        "AC09 Bl1 F_e grid confirms within 1e-4",
        grid_ok,
        "gap < 1e-4 for all e".into(),
        format!("worst gap {worst_gap:.2e}"),
        "1e-4",
    );

    // e = 0: sup 1 x 4pi at (x,y) = (2,2), i.e. the class F_1+F_2-(1/2)E.
    let record = sup_phi_bl1_f0();
    let model = fe(0, 1);
    let list = mori_generators(&model)
        .into_list()
        .expect("degree 7 del Pezzo");
    let omega = ruled_class(&rint(1), &[rat(1, 2)]);
    let j = j_functional(&model, &omega, &list).expect("interior");
    let domain = ParamDomain::new(
        model,
        Chart::RuledBlowup {
            b_cap: Chart::default_cap(0),
        },
        cfg.resolution.min(100),
    )
    .expect("chart fits")
    .with_seed(cfg.seed);
    let report = grid_maximize(&domain, &list, Some(&rint(1))).expect("feasible");
    let pass = record.sup_over_4pi == rint(1)
        && j.value_over_4pi == rint(1)
        && report.abs_gap.unwrap_or(f64::INFINITY) < 1e-4;
    rec.push(
        "AC09 Bl1 F_0 sup 1 x 4pi at (2,2)",
        pass,
        "J(F_1+F_2-E/2) = 1 exactly, grid gap < 1e-4".into(),
        format!(
            "J = {}, gap {:.2e}",
            render(&j.value_over_4pi),
            report.abs_gap.unwrap_or(f64::NAN)
        ),
        "1e-4",
    );

    // Chart consistency across two presentations of the same surfaces:
    // F_1 minimal vs the one-point plane blow-up, and Bl1 F_1 vs the
    // two-point plane blow-up.
    let f1_minimal = sup_j_ruled_minimal(1, 0).sup_over_4pi;
    let chart_ok = f1_minimal == rat(5, 3)
        && *bl1_p2_best == rat(5, 3)
        && f1_best == Some(rint(1))
        && *bl2_p2_best == rint(1);
    rec.claim(
        "AC09 chart consistency: F_1 = Bl1 P2 and Bl1 F_1 = Bl2 P2",
        chart_ok,
        "optimizer agrees across charts: 5/3 and 1",
        format!(
            "F_1 sup {}, Bl1P2 best {}, Bl1F_1 best {}, Bl2P2 best {}",
            render(&f1_minimal),
            render(bl1_p2_best),
            f1_best.as_ref().map(render).unwrap_or_default(),
            render(bl2_p2_best)
        ),
    );
}

// ---------------------------------------------------------------------------
// Criterion 10: the nonnegative margins behind the 4pi bounds.
// ---------------------------------------------------------------------------
fn criterion_10(cfg: &SuiteConfig, rec: &mut Recorder) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x10);
    let mut f0_ok = true;
    for _ in 0..100_000 {
        let m = rat_between(&mut rng, 0.001, 0.5, 1000);
        let z_lo = to_f64(&m);
        let z = rat_between(&mut rng, z_lo, 1.0 - z_lo, 1000);
        let b = rat_between(&mut rng, 1.0, 10.0, 100);
        match d_minus_n_f0(&b, &m, &z) {
            Ok(v) if v >= Rat::zero() => {}
            Ok(_) => {
                f0_ok = false;
                break;
            }
            Err(_) => {} // rounding pushed z outside [m, 1-m]; not a margin failure
        }
    }
    rec.claim(
        "AC10 F_0 margin 2b(1-m)-2m+mz-z^2 >= 0 on 1e5 random points",
        f0_ok,
        "nonnegative on the whole domain",
        if f0_ok {
            "no violations".into()
        } else {
            "violation found".into()
        },
    );

    let mut fe_ok = true;
    for e in 1..=10u32 {
        for _ in 0..100_000 {
            let m = rat_between(&mut rng, 0.001, 0.5, 1000);
            let z_lo = to_f64(&m);
            let z = rat_between(&mut rng, z_lo, 1.0 - z_lo, 1000);
            match d_minus_n_fe(e, &m, &z) {
                Ok(v) if v >= Rat::zero() => {}
                Ok(_) => {
                    fe_ok = false;
                    break;
                }
                Err(_) => {}
            }
        }
    }
    rec.claim(
        "AC10 F_e margin e(1-m)-2m^2+mz-z^2 >= 0, e=1..10, 1e5 points each",
        fe_ok,
        "nonnegative on the whole domain",
        if fe_ok {
            "no violations".into()
        } else {
            "violation found".into()
        },
    );

    // Boundary polynomial (e-1)+(3-e)m-4m²: nonnegative, vanishing only at
    // (e, m) = (1, 1/2); the margins vanish exactly at the boundary cases.
    let mut poly_ok = fe_boundary_poly(1, &rat(1, 2)).is_zero();
    for e in 1..=10u32 {
        for num in 1..=500i64 {
            let m = rat(num, 1000);
            let v = fe_boundary_poly(e, &m);
            let at_zero_locus = e == 1 && m == rat(1, 2);
            if at_zero_locus {
                if !v.is_zero() {
                    poly_ok = false;
                }
            } else if !(v > Rat::zero()) {
                poly_ok = false;
            }
        }
    }
    poly_ok = poly_ok
        && d_minus_n_f0(&rint(1), &rat(1, 2), &rat(1, 2)).expect("domain") == rint(0)
        && d_minus_n_fe(1, &rat(1, 2), &rat(1, 2)).expect("domain") == rint(0);
    rec.claim(
        "AC10 boundary polynomial (e-1)+(3-e)m-4m^2 >= 0, zero only at (1,1/2)",
        poly_ok,
        "equality locus exactly (e,m) = (1,1/2)",
        if poly_ok {
            "as stated".into()
        } else {
            "mismatch".into()
        },
    );
}

// ---------------------------------------------------------------------------
// Criterion 11: small blow-ups of F_e with certified cones.
// ---------------------------------------------------------------------------
fn criterion_11(_cfg: &SuiteConfig, rec: &mut Recorder) {
    let mut ok = true;
    let mut detail = String::new();
    for e in 1..=8u32 {
        for k in 1..=e as usize {
            let record = sup_small_blowup_fe(e, k).expect("1 <= k <= e");
            let expected =
                rint(2 * i64::from(e) + 6 - k as i64) / rint(4 * i64::from(e) + 4 - k as i64);
            let model = fe(e, k);
            let list = mori_generators(&model)
                .into_list()
                .expect("k <= e certified");
            let b = rint(i64::from(e)) + rat(1, 2);
            let omega = ruled_class(&b, &vec![rat(1, 2); k]);
            let j = j_functional(&model, &omega, &list).expect("interior");
            let good = record.sup_over_4pi == expected
                && record.attained
                && j.value_over_4pi == expected
                && expected <= rint(1);
            if !good {
                ok = false;
                detail = format!(
                    "e={e},k={k}: record {}, J {}",
                    render(&record.sup_over_4pi),
                    render(&j.value_over_4pi)
                );
            }
        }
    }
    rec.claim(
        "AC11 Bl_k F_e sup (2e+6-k)/(4e+4-k) x 4pi at b=e+1/2, t_i=1/2, k<=e<=8",
        ok,
        "closed form attained exactly; all values <= 1 x 4pi",
        if ok { "all exact".into() } else { detail },
    );
}

// ---------------------------------------------------------------------------
// Criterion 12: non-rational ruled blow-ups stay at or below 2pi.
// ---------------------------------------------------------------------------
fn criterion_12(cfg: &SuiteConfig, rec: &mut Recorder) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x12);
    let mut checked = 0u64;
    let mut ok = true;
    let half = rat(1, 2);
    'outer: for g in [1u32, 2] {
        for e in 0..=2u32 {
            for k in 1..=4usize {
                let model = ruled(g, e, k);
                let list = coarse_curves(&model);
                let mut accepted = 0;
                let mut attempts = 0;
                while accepted < 420 && attempts < 10_000 {
                    attempts += 1;
                    let b = rint(i64::from(e)) + rat_between(&mut rng, 0.05, 10.0, 200);
                    let t: Vec<Rat> = (0..k)
                        .map(|_| rat_between(&mut rng, 0.005, 0.995, 200))
                        .collect();
                    let omega = ruled_class(&b, &t);
                    match j_functional(&model, &omega, &list) {
                        Ok(j) => {
                            accepted += 1;
                            checked += 1;
                            if !(j.value_over_4pi < half) {
                                ok = false;
                                break 'outer;
                            }
                        }
                        Err(crate::systole::SystoleError::NotKahler(_)) => {}
                        Err(_) => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    rec.push(
        "AC12 ruled g>=1 blow-ups: J < 1/2 x 4pi = 2pi on random classes",
        ok && checked >= 10_000,
        ">= 1e4 classes, all strictly below 2pi".into(),
        format!("{checked} classes checked"),
        "strict",
    );

    // Along t_i = 1/2 with large b the value approaches 2pi, and the systole
    // is realized by the exceptional and fibre classes at every tested b (no
    // threshold is assumed).
    let mut approach_ok = true;
    let mut witness_minimizers_ok = true;
    for g in [1u32, 2] {
        for e in 0..=2u32 {
            let k = 2usize;
            let model = ruled(g, e, k);
            let list = coarse_curves(&model);
            for b_extra in [5i64, 20, 200] {
                let b = rint(i64::from(e) + b_extra);
                let omega = ruled_class(&b, &vec![rat(1, 2); k]);
                let cert = hol_systole(&model, &omega, &list).expect("interior");
                let all_exceptional = cert
                    .minimizers
                    .iter()
                    .all(|c| c.name().starts_with("E_") || c.name().starts_with("F-E_"));
                if !all_exceptional {
                    witness_minimizers_ok = false;
                }
                if b_extra == 200 {
                    let j = j_functional(&model, &omega, &list).expect("interior");
                    let gap = 0.5 - to_f64(&j.value_over_4pi);
                    if !(gap > 0.0 && gap < 1e-2) {
                        approach_ok = false;
                    }
                }
            }
        }
    }
    rec.push(
        "AC12 ruled blow-ups approach 2pi along t_i=1/2, b large",
        approach_ok,
        "1/2 - J < 1e-2 at b = e+200".into(),
        if approach_ok {
            "within 1e-2".into()
        } else {
            "too far".into()
        },
        "1e-2",
    );
    rec.claim(
        "AC12 systole realized by E_i / F-E_i at every tested b",
        witness_minimizers_ok,
        "minimizers within the exceptional and fibre transforms",
        if witness_minimizers_ok {
            "as stated".into()
        } else {
            "other minimizer".into()
        },
    );
}

// ---------------------------------------------------------------------------
// Criterion 13: the (-1)-class oracle and the refined systole.
// ---------------------------------------------------------------------------
fn criterion_13(cfg: &SuiteConfig, rec: &mut Recorder) {
    // Frozen counts from the pre-build brute-force enumeration at d_max = 6.
    let frozen = [1usize, 3, 6, 10, 16, 27, 56, 240];
    let mut counts_ok = true;
    let mut observed = Vec::new();
    for (k, want) in (1..=8usize).zip(frozen) {
        let got = minus_one_curves(&p2(k), 6).expect("del Pezzo range").len();
        observed.push(got.to_string());
        if got != want {
            counts_ok = false;
        }
    }
    rec.push(
        "AC13 (-1)-class counts k=1..8 at d_max=6 match the frozen oracle",
        counts_ok,
        "1,3,6,10,16,27,56,240".into(),
        observed.join(","),
        "exact",
    );

    // Refined lists can only shrink the systole.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x13);
    let mut refine_ok = true;
    let mut compared = 0;
    for _ in 0..1000 {
        let k = rng.gen_range(2..=8usize);
        let model = p2(k);
        let coarse = coarse_curves(&model);
        let refined = minus_one_curves(&model, 6).expect("del Pezzo range");
        let t: Vec<Rat> = (0..k)
            .map(|_| rat_between(&mut rng, 0.05, 0.25, 200))
            .collect();
        let omega = p2_class(&t);
        let over_coarse = hol_systole(&model, &omega, &coarse);
        let over_refined = hol_systole(&model, &omega, &refined);
        if let (Ok(c), Ok(r)) = (over_coarse, over_refined) {
            compared += 1;
            if r.value > c.value {
                refine_ok = false;
            }
        }
    }
    rec.claim(
        "AC13 refined systole <= coarse systole on 1e3 del Pezzo classes",
        refine_ok && compared == 1000,
        "minimum over the superset never exceeds the coarse minimum",
        format!("{compared} comparisons, monotone: {refine_ok}"),
    );
}

// ---------------------------------------------------------------------------
// Criterion 14: boundedness along boundary approaches.
// ---------------------------------------------------------------------------
struct BoundaryCase {
    name: &'static str,
    model: SurfaceModel,
    interior: DivisorClass,
    boundary: DivisorClass,
    sup: Rat,
    use_mori: bool,
}

fn criterion_14_paths(family: &str) -> Vec<BoundaryCase> {
    match family {
        "p2" => vec![
            BoundaryCase {
                name: "Bl1P2 toward H-E = 0",
                model: p2(1),
                interior: p2_class(&[rat(1, 2)]),
                boundary: DivisorClass::from_ints(&[1, -1]),
                sup: rat(5, 3),
                use_mori: true,
            },
            BoundaryCase {
                name: "Bl1P2 toward E = 0",
                model: p2(1),
                interior: p2_class(&[rat(1, 2)]),
                boundary: DivisorClass::from_ints(&[1, 0]),
                sup: rat(5, 3),
                use_mori: true,
            },
            BoundaryCase {
                name: "Bl2P2 toward H-E_1-E_2 = 0",
                model: p2(2),
                interior: p2_class(&[rat(1, 3), rat(1, 3)]),
                boundary: DivisorClass::new(vec![rint(1), rat(-1, 2), rat(-1, 2)]),
                sup: rint(1),
                use_mori: true,
            },
            BoundaryCase {
                name: "Bl2P2 toward E_2 = 0",
                model: p2(2),
                interior: p2_class(&[rat(1, 3), rat(1, 3)]),
                boundary: DivisorClass::from_ints(&[1, -1, 0]),
                sup: rint(1),
                use_mori: true,
            },
            BoundaryCase {
                name: "Bl2P2 toward E_1 = E_2 = 0",
                model: p2(2),
                interior: p2_class(&[rat(1, 3), rat(1, 3)]),
                boundary: DivisorClass::from_ints(&[1, 0, 0]),
                sup: rint(1),
                use_mori: true,
            },
        ],
        "fe" => vec![
            BoundaryCase {
                name: "F_2 toward C_0 = 0",
                model: fe(2, 0),
                interior: DivisorClass::from_ints(&[1, 3]),
                boundary: DivisorClass::from_ints(&[1, 2]),
                sup: rat(3, 2),
                use_mori: true,
            },
            BoundaryCase {
                name: "F_0 toward F = 0",
                model: fe(0, 0),
                interior: DivisorClass::from_ints(&[1, 1]),
                boundary: DivisorClass::from_ints(&[0, 1]),
                sup: rint(2),
                use_mori: true,
            },
            BoundaryCase {
                name: "F_0 toward C_0 = 0",
                model: fe(0, 0),
                interior: DivisorClass::from_ints(&[1, 1]),
                boundary: DivisorClass::from_ints(&[1, 0]),
                sup: rint(2),
                use_mori: true,
            },
            BoundaryCase {
                name: "Bl1 F_1 toward F-E = 0",
                model: fe(1, 1),
                interior: DivisorClass::from_ints(&[2, 3, -1]),
                boundary: DivisorClass::from_ints(&[2, 3, -2]),
                sup: rint(1),
                use_mori: true,
            },
            BoundaryCase {
                name: "F_3 toward C_0 = 0",
                model: fe(3, 0),
                interior: DivisorClass::from_ints(&[1, 4]),
                boundary: DivisorClass::from_ints(&[1, 3]),
                sup: rat(7, 5),
                use_mori: true,
            },
        ],
        "ruled" => vec![
            BoundaryCase {
                name: "ruled g=1 e=0 toward C_0 = 0",
                model: ruled(1, 0, 0),
                interior: DivisorClass::from_ints(&[1, 1]),
                boundary: DivisorClass::from_ints(&[1, 0]),
                sup: rint(1),
                use_mori: true,
            },
            BoundaryCase {
                name: "ruled g=1 e=1 toward C_0 = 0",
                model: ruled(1, 1, 0),
                interior: DivisorClass::from_ints(&[1, 2]),
                boundary: DivisorClass::from_ints(&[1, 1]),
                sup: rint(1),
                use_mori: true,
            },
            BoundaryCase {
                name: "ruled g=2 e=0 toward C_0 = 0",
                model: ruled(2, 0, 0),
                interior: DivisorClass::from_ints(&[1, 1]),
                boundary: DivisorClass::from_ints(&[1, 0]),
                sup: rint(1),
                use_mori: true,
            },
            BoundaryCase {
                name: "Bl1 ruled g=1 toward F-E = 0",
                model: ruled(1, 0, 1),
                interior: ruled_class(&rint(5), &[rat(1, 2)]),
                boundary: DivisorClass::from_ints(&[1, 5, -1]),
                sup: rat(1, 2),
                use_mori: false,
            },
            BoundaryCase {
                name: "Bl2 ruled g=2 e=1 toward F-E_1 = 0",
                model: ruled(2, 1, 2),
                interior: ruled_class(&rint(6), &[rat(1, 2), rat(1, 2)]),
                boundary: ruled_class(&rint(6), &[rint(1), rat(1, 2)]),
                sup: rat(1, 2),
                use_mori: false,
            },
        ],
        _ => Vec::new(),
    }
}

fn criterion_14(family: &str, rec: &mut Recorder) {
    let mut ok = true;
    let mut detail = String::new();
    for case in criterion_14_paths(family) {
        let list = if case.use_mori {
            mori_generators(&case.model)
                .into_list()
                .expect("certified cone for this case")
        } else {
            coarse_curves(&case.model)
        };
        match boundary_scan(&case.model, &case.interior, &case.boundary, &list, 30) {
            Ok(scan) => {
                if scan.max_over_4pi > case.sup {
                    ok = false;
                    detail = format!(
                        "{}: max {} exceeds sup {}",
                        case.name,
                        render(&scan.max_over_4pi),
                        render(&case.sup)
                    );
                }
            }
            Err(e) => {
                ok = false;
                detail = format!("{}: {e}", case.name);
            }
        }
    }
    rec.claim(
        &format!("AC14 boundary scans stay below the family sup ({family})"),
        ok,
        "max along 5 geometric approaches <= sup, no divergence",
        if ok { "bounded".into() } else { detail },
    );
}

// ---------------------------------------------------------------------------
// Criterion 15: the split product metric example.
// ---------------------------------------------------------------------------
fn criterion_15(_cfg: &SuiteConfig, rec: &mut Recorder) {
    let mut ok = true;
    let mut detail = String::new();
    for g in [2u32, 3, 5] {
        for eps in [rint(1), rint(2), rat(39, 10)] {
            match product_example(g, &eps) {
                Ok(ex) => {
                    let good = ex.product_over_pi == eps
                        && ex.product_over_pi < rint(4)
                        && ex.base_area_over_pi > ex.fiber_area_over_pi
                        && ex.base_area_over_pi == rint(4 * (i64::from(g) - 1)) / (rint(4) - &eps);
                    if !good {
                        ok = false;
                        detail = format!("g={g}, eps={}", render(&eps));
                    }
                }
                Err(e) => {
                    ok = false;
                    detail = format!("g={g}: {e}");
                }
            }
        }
    }
    rec.claim(
        "AC15 product example: min S * sys = eps*pi < 4pi, fibre realizes systole",
        ok,
        "product eps*pi, base area > fibre area, all (g,eps)",
        if ok { "all exact".into() } else { detail },
    );
}

fn finish(suite: &str, cfg: &SuiteConfig, rec: Recorder, started_ms: u64) -> VerificationSuite {
    VerificationSuite {
        suite: suite.to_string(),
        seed: cfg.seed,
        checks: rec.checks,
        started_ms,
        finished_ms: now_ms(),
    }
}

/// The full acceptance matrix.
pub fn run_all(cfg: &SuiteConfig) -> VerificationSuite {
    let started = now_ms();
    let mut rec = Recorder::new();
    criterion_01(cfg, &mut rec);
    let (bl1_best, bl2_best) = criterion_02_03(cfg, &mut rec);
    criterion_04(cfg, &mut rec);
    criterion_05(cfg, &mut rec);
    criterion_06(cfg, &mut rec);
    criterion_07(cfg, &mut rec);
    criterion_08(cfg, &mut rec);
    criterion_09(cfg, &mut rec, &bl1_best, &bl2_best);
    criterion_10(cfg, &mut rec);
    criterion_11(cfg, &mut rec);
    criterion_12(cfg, &mut rec);
    criterion_13(cfg, &mut rec);
    criterion_14("p2", &mut rec);
    criterion_14("fe", &mut rec);
    criterion_14("ruled", &mut rec);
    criterion_15(cfg, &mut rec);
    finish("all", cfg, rec, started)
}

/// The plane-family suite.
pub fn suite_p2(cfg: &SuiteConfig) -> VerificationSuite {
    let started = now_ms();
    let mut rec = Recorder::new();
    criterion_01(cfg, &mut rec);
    criterion_02_03(cfg, &mut rec);
    criterion_04(cfg, &mut rec);
    criterion_05(cfg, &mut rec);
    criterion_13(cfg, &mut rec);
    criterion_14("p2", &mut rec);
    finish("p2", cfg, rec, started)
}

/// The rational ruled (Hirzebruch) suite.
pub fn suite_fe(cfg: &SuiteConfig) -> VerificationSuite {
    let started = now_ms();
    let mut rec = Recorder::new();
    criterion_07(cfg, &mut rec);
    let (bl1, bl2) = criterion_02_03(cfg, &mut rec);
    criterion_09(cfg, &mut rec, &bl1, &bl2);
    criterion_10(cfg, &mut rec);
    criterion_11(cfg, &mut rec);
    criterion_14("fe", &mut rec);
    finish("fe", cfg, rec, started)
}

/// The non-rational ruled suite.
pub fn suite_ruled(cfg: &SuiteConfig) -> VerificationSuite {
    let started = now_ms();
    let mut rec = Recorder::new();
    criterion_08(cfg, &mut rec);
    criterion_12(cfg, &mut rec);
    criterion_14("ruled", &mut rec);
    criterion_15(cfg, &mut rec);
    finish("ruled", cfg, rec, started)
}

/// The mass-shift oracle suite.
pub fn suite_massshift(cfg: &SuiteConfig) -> VerificationSuite {
    let started = now_ms();
    let mut rec = Recorder::new();
    criterion_06(cfg, &mut rec);
    finish("massshift", cfg, rec, started)
}

/// Runs the named suite: `all`, `p2`, `fe`, `ruled` or `massshift`.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Option<VerificationSuite> {
    match name {
        "all" => Some(run_all(cfg)),
        "p2" => Some(suite_p2(cfg)),
        "fe" => Some(suite_fe(cfg)),
        "ruled" => Some(suite_ruled(cfg)),
        "massshift" => Some(suite_massshift(cfg)),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Report tables.
// ---------------------------------------------------------------------------

/// One row of the family-constant table.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyRow {
    pub family: &'static str,
    pub e: Option<u32>,
    pub g: Option<u32>,
    pub k: Option<usize>,
    pub record: SupRecord,
}

impl FamilyRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.family,
            self.e.map(|v| v.to_string()).unwrap_or_default(),
            self.g.map(|v| v.to_string()).unwrap_or_default(),
            self.k.map(|v| v.to_string()).unwrap_or_default(),
            render(&self.record.sup_over_4pi),
            self.record.attained,
        )
    }
}

pub const FAMILY_CSV_HEADER: &str = "family,e,g,k,sup_over_4pi,attained";

/// The supremum-per-family table emitted by the report command.
pub fn family_constant_table() -> Vec<FamilyRow> {
    let mut rows = Vec::new();
    rows.push(FamilyRow {
        family: "p2",
        e: None,
        g: Some(0),
        k: Some(0),
        record: SupRecord {
            sup_over_4pi: rint(3),
            attained: true,
            witness: Witness(vec![("a".to_string(), WitnessItem::At(rint(1)))]),
        },
    });
    for k in 1..=12usize {
        rows.push(FamilyRow {
            family: "p2",
            e: None,
            g: Some(0),
            k: Some(k),
            record: sup_phi_p2(k).expect("k >= 1"),
        });
    }
    for e in 0..=8u32 {
        rows.push(FamilyRow {
            family: "fe",
            e: Some(e),
            g: Some(0),
            k: Some(0),
            record: sup_j_ruled_minimal(e, 0),
        });
    }
    rows.push(FamilyRow {
        family: "fe",
        e: Some(0),
        g: Some(0),
        k: Some(1),
        record: sup_phi_bl1_f0(),
    });
    for e in 1..=8u32 {
        rows.push(FamilyRow {
            family: "fe",
            e: Some(e),
            g: Some(0),
            k: Some(1),
            record: sup_phi_bl1_fe(e).expect("e >= 1"),
        });
    }
    for e in 2..=4u32 {
        for k in 2..=e as usize {
            rows.push(FamilyRow {
                family: "fe",
                e: Some(e),
                g: Some(0),
                k: Some(k),
                record: sup_small_blowup_fe(e, k).expect("k <= e"),
            });
        }
    }
    for g in 1..=2u32 {
        for e in 0..=2u32 {
            rows.push(FamilyRow {
                family: "ruled",
                e: Some(e),
                g: Some(g),
                k: Some(0),
                record: sup_j_ruled_minimal(e, g),
            });
        }
        rows.push(FamilyRow {
            family: "ruled",
            e: None,
            g: Some(g),
            k: None,
            record: sup_ruled_blowup_nonrational(g).expect("g >= 1"),
        });
    }
    rows
}

/// One row of the trichotomy table for plane blow-ups.
#[derive(Debug, Clone, Serialize)]
pub struct TrichotomyRow {
    pub k: usize,
    pub c1_squared: i64,
    pub derivative_sign: Sign,
    pub record: SupRecord,
}

/// Trichotomy of the one-parameter bound against the sign of `c₁²`.
pub fn trichotomy_table(k_max: usize) -> Vec<TrichotomyRow> {
    (2..=k_max)
        .map(|k| TrichotomyRow {
            k,
            c1_squared: 9 - k as i64,
            derivative_sign: g_k_derivative_sign(k),
            record: sup_phi_p2(k).expect("k >= 2"),
        })
        .collect()
}

/// Case analyses rendered by the report command: the plane regimes and the
/// ruled regimes, with their witnesses.
pub fn case_analysis() -> Vec<(String, SupRecord)> {
    vec![
        ("p2 k=1".to_string(), sup_phi_p2(1).expect("k >= 1")),
        (
            "p2 2<=k<=8 (del Pezzo, c1^2 > 0)".to_string(),
            sup_phi_p2(8).expect("k"),
        ),
        ("p2 k=9 (c1^2 = 0)".to_string(), sup_phi_p2(9).expect("k")),
        ("p2 k>=10 (c1^2 < 0)".to_string(), sup_phi_p2(10).expect("k")),
        ("fe minimal, e=0".to_string(), sup_j_ruled_minimal(0, 0)),
        ("ruled minimal, g=1".to_string(), sup_j_ruled_minimal(0, 1)),
        ("ruled minimal, g>=2".to_string(), sup_j_ruled_minimal(0, 2)),
        (
            "ruled blow-ups, g>=1".to_string(),
            sup_ruled_blowup_nonrational(1).expect("g >= 1"),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_cfg() -> SuiteConfig {
        SuiteConfig {
            seed: 7,
            massshift_samples: 5_000,
            trichotomy_samples: 50_000,
            resolution: 100,
        }
    }

    #[test]
    fn massshift_suite_passes() {
        let suite = suite_massshift(&quick_cfg());
        assert!(suite.passed(), "failures: {:?}", suite.failures());
    }

    #[test]
    fn ruled_suite_passes() {
        let suite = suite_ruled(&quick_cfg());
        assert!(suite.passed(), "failures: {:?}", suite.failures());
    }

    #[test]
    fn suite_selector() {
        assert!(run_suite("bogus", &quick_cfg()).is_none());
    }

    #[test]
    fn family_table_has_the_headline_constants() {
        let rows = family_constant_table();
        let p2_base = rows
            .iter()
            .find(|r| r.family == "p2" && r.k == Some(0))
            .unwrap();
        assert_eq!(p2_base.record.sup_over_4pi, rint(3)); // 12pi
        let f0 = rows
            .iter()
            .find(|r| r.family == "fe" && r.e == Some(0) && r.k == Some(0))
            .unwrap();
        assert_eq!(f0.record.sup_over_4pi, rint(2)); // 8pi
        let ruled_blowup = rows
            .iter()
            .find(|r| r.family == "ruled" && r.g == Some(1) && r.k.is_none())
            .unwrap();
        assert_eq!(ruled_blowup.record.sup_over_4pi, rat(1, 2)); // 2pi
        assert_eq!(p2_base.csv_line(), "p2,,0,0,3,true");
    }

    #[test]
    fn trichotomy_rows() {
        let rows = trichotomy_table(12);
        assert_eq!(rows.len(), 11);
        assert_eq!(rows[0].derivative_sign, Sign::Positive);
        assert_eq!(rows[7].k, 9);
        assert_eq!(rows[7].derivative_sign, Sign::Zero);
        assert_eq!(rows[10].derivative_sign, Sign::Negative);
    }
}
