//! Finite lists of effective curve classes: coarse screens, certified
//! extremal-ray lists, and an independent enumerator of numerical
//! (−1)-classes.
//!
//! Every systole computation takes one of these lists explicitly. A *coarse*
//! list records the obvious effective curves (exceptional divisors, strict
//! transforms of lines and fibres) and screens positivity as a necessary
//! condition only. A *mori* list is returned only when the cone of curves is
//! certifiably generated by the listed classes, so the systole over it is the
//! true infimum. The (−1)-enumerator is deliberately dumb: it solves the two
//! numerical conditions `C² = −1`, `c₁·C = 1` by bounded integer enumeration
//! and serves as an oracle for the certified lists.

use crate::lattice::{DivisorClass, ModelId, SurfaceFamily, SurfaceModel};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CurveEnumError {
    #[error("(-1)-curve enumeration is not certified for this model: {0}")]
    OutOfCertifiedRange(String),
    #[error("curve class has {got} coefficients, model has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("curve class must be nonzero")]
    ZeroClass,
}

/// An integral effective curve class with its canonical name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    name: String,
    coeffs: Vec<i64>,
}

impl CurveClass {
    /// Builds a class over the given basis labels; the name is derived from
    /// the coefficients, e.g. `(1, -1, -1) ↦ "H-E_1-E_2"`.
    pub fn new(basis: &[String], coeffs: Vec<i64>) -> Result<CurveClass, CurveEnumError> {
        if coeffs.len() != basis.len() {
            return Err(CurveEnumError::DimensionMismatch {
                expected: basis.len(),
                got: coeffs.len(),
            });
        }
        if coeffs.iter().all(|&c| c == 0) {
            return Err(CurveEnumError::ZeroClass);
        }
        let name = canonical_name(basis, &coeffs);
        Ok(CurveClass { name, coeffs })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn divisor_class(&self) -> DivisorClass {
        DivisorClass::from_ints(&self.coeffs)
    }
}

fn canonical_name(basis: &[String], coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (label, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        if c > 0 && !out.is_empty() {
            out.push('+');
        }
        match c {
            1 => {}
            -1 => out.push('-'),
            _ => out.push_str(&c.to_string()),
        }
        out.push_str(label);
    }
    out
}

/// How a curve list was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// The short list of obvious effective curves used as a screen.
    Coarse,
    /// Certified generators of the cone of curves.
    Mori,
    /// Output of the bounded (−1)-class enumeration.
    MinusOne { d_max: u32 },
}

/// An ordered, duplicate-free set of curve classes stamped with the model it
/// belongs to and the way it was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveList {
    model: ModelId,
    provenance: Provenance,
    curves: Vec<CurveClass>,
}

impl CurveList {
    /// Sorts lexicographically by coefficients (ties by name), removes
    /// duplicates and validates lengths.
    pub fn new(
        model: &SurfaceModel,
        provenance: Provenance,
        mut curves: Vec<CurveClass>,
    ) -> Result<CurveList, CurveEnumError> {
        for c in &curves {
            if c.coeffs.len() != model.rank() {
                return Err(CurveEnumError::DimensionMismatch {
                    expected: model.rank(),
                    got: c.coeffs.len(),
                });
            }
        }
        curves.sort_by(|a, b| a.coeffs.cmp(&b.coeffs).then_with(|| a.name.cmp(&b.name)));
        curves.dedup_by(|a, b| a.coeffs == b.coeffs);
        Ok(CurveList {
            model: model.id(),
            provenance,
            curves,
        })
    }

    pub fn model(&self) -> ModelId {
        self.model
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn curves(&self) -> &[CurveClass] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.curves.iter().map(|c| c.name()).collect()
    }

    /// The same classes restamped with a different provenance.
    fn restamped(mut self, provenance: Provenance) -> CurveList {
        self.provenance = provenance;
        self
    }

    /// Union of two lists over the same model, keeping `self`'s provenance.
    pub fn union(&self, other: &CurveList, model: &SurfaceModel) -> CurveList {
        let mut curves = self.curves.clone();
        curves.extend(other.curves.iter().cloned());
        CurveList::new(model, self.provenance, curves).expect("classes already validated")
    }
}

fn class(model: &SurfaceModel, coeffs: Vec<i64>) -> CurveClass {
    CurveClass::new(model.basis(), coeffs).expect("generated class is valid")
}

fn unit(model: &SurfaceModel, index: usize) -> CurveClass {
    let mut coeffs = vec![0i64; model.rank()];
    coeffs[index] = 1;
    class(model, coeffs)
}

/// The short list of obvious effective curves on the model.
///
/// Plane: `H` for `k = 0`; `E_1, H−E_1` for `k = 1`; all `E_i` and
/// `H−E_i−E_j` for `k ≥ 2`. Ruled and Hirzebruch models: `C_0`, `F`, the
/// `E_i` and the fibre transforms `F−E_i`; on `F_0` the second ruling plays
/// the role of a second fibre, so `C_0−E_i` joins the list.
pub fn coarse_curves(model: &SurfaceModel) -> CurveList {
    let k = model.blowups();
    let first_e = model.first_exceptional();
    let mut curves = Vec::new();
    match model.family() {
        SurfaceFamily::ProjectivePlane => {
            if k == 0 {
                curves.push(unit(model, 0)); // H
            } else if k == 1 {
                curves.push(unit(model, 1)); // E_1
                curves.push(class(model, vec![1, -1])); // H - E_1
            } else {
                for i in 0..k {
                    curves.push(unit(model, first_e + i));
                }
                for i in 0..k {
                    for j in (i + 1)..k {
                        let mut coeffs = vec![0i64; model.rank()];
                        coeffs[0] = 1;
                        coeffs[first_e + i] = -1;
                        coeffs[first_e + j] = -1;
                        curves.push(class(model, coeffs));
                    }
                }
            }
        }
        SurfaceFamily::Hirzebruch { .. } | SurfaceFamily::Ruled { .. } => {
            let both_rulings = matches!(model.family(), SurfaceFamily::Hirzebruch { e: 0 });
            curves.push(unit(model, 0)); // C_0
            curves.push(unit(model, 1)); // F
            for i in 0..k {
                curves.push(unit(model, first_e + i));
                let mut fibre = vec![0i64; model.rank()];
                fibre[1] = 1;
                fibre[first_e + i] = -1;
                curves.push(class(model, fibre));
                if both_rulings {
                    let mut ruling = vec![0i64; model.rank()];
                    ruling[0] = 1;
                    ruling[first_e + i] = -1;
                    curves.push(class(model, ruling));
                }
            }
        }
    }
    CurveList::new(model, Provenance::Coarse, curves).expect("coarse classes are valid")
}

/// Result of asking for certified extremal-ray generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoriGenerators {
    Generated(CurveList),
    /// No certified finite generator list for this model (for instance plane
    /// blow-ups with `k ≥ 9`). Callers fall back to coarse lists, which then
    /// bound the systole from above only.
    Unavailable,
}

impl MoriGenerators {
    pub fn available(&self) -> Option<&CurveList> {
        match self {
            MoriGenerators::Generated(list) => Some(list),
            MoriGenerators::Unavailable => None,
        }
    }

    pub fn into_list(self) -> Option<CurveList> {
        match self {
            MoriGenerators::Generated(list) => Some(list),
            MoriGenerators::Unavailable => None,
        }
    }
}

/// Certified generator lists for the cone of curves, where one exists.
///
/// Covered cases: the plane and its del Pezzo-range blow-ups (`k ≤ 8`),
/// minimal ruled models, Hirzebruch blow-ups with `k ≤ max(e, 1)`, and the
/// one-point blow-up of `F_0`. Everything else is [`MoriGenerators::Unavailable`].
pub fn mori_generators(model: &SurfaceModel) -> MoriGenerators {
    let k = model.blowups();
    let first_e = model.first_exceptional();
    let list = |curves: Vec<CurveClass>| {
        MoriGenerators::Generated(
            CurveList::new(model, Provenance::Mori, curves).expect("generator classes are valid"),
        )
    };
    match model.family() {
        SurfaceFamily::ProjectivePlane => match k {
            0 => list(vec![unit(model, 0)]),
            1 => list(vec![unit(model, 1), class(model, vec![1, -1])]),
            2..=8 => {
                let minus_one = minus_one_curves(model, 6).expect("del Pezzo range");
                MoriGenerators::Generated(minus_one.restamped(Provenance::Mori))
            }
            _ => MoriGenerators::Unavailable,
        },
        SurfaceFamily::Hirzebruch { e } => {
            if k == 0 {
                return list(vec![unit(model, 0), unit(model, 1)]);
            }
            if e == 0 && k == 1 {
                // Blow-up of F_0 at one point: three (−1)-curves, one from
                // each ruling plus the exceptional divisor.
                let mut fibre = vec![0i64; model.rank()];
                fibre[1] = 1;
                fibre[first_e] = -1;
                let mut ruling = vec![0i64; model.rank()];
                ruling[0] = 1;
                ruling[first_e] = -1;
                return list(vec![
                    unit(model, first_e),
                    class(model, fibre),
                    class(model, ruling),
                ]);
            }
            if e >= 1 && k <= e as usize {
                let mut curves = vec![unit(model, 0)];
                for i in 0..k {
                    curves.push(unit(model, first_e + i));
                    let mut fibre = vec![0i64; model.rank()];
                    fibre[1] = 1;
                    fibre[first_e + i] = -1;
                    curves.push(class(model, fibre));
                }
                return list(curves);
            }
            MoriGenerators::Unavailable
        }
        SurfaceFamily::Ruled { .. } => {
            if k == 0 {
                list(vec![unit(model, 0), unit(model, 1)])
            } else {
                MoriGenerators::Unavailable
            }
        }
    }
}

/// All integral classes with `C² = −1`, `c₁·C = 1`, non-negative exceptional
/// multiplicities and degree coordinates in `[0, d_max]`, plus the
/// exceptional classes themselves.
///
/// This is a purely numerical enumeration. On del Pezzo-range plane blow-ups
/// (`2 ≤ k ≤ 8`, `d_max = 6`) it recovers the classical (−1)-curve lists
/// exactly; on Hirzebruch blow-ups it is certified only for `k ≤ e + 1` and
/// may include reducible numerical solutions.
pub fn minus_one_curves(model: &SurfaceModel, d_max: u32) -> Result<CurveList, CurveEnumError> {
    let k = model.blowups();
    let first_e = model.first_exceptional();
    match model.family() {
        SurfaceFamily::ProjectivePlane => {
            if k > 8 {
                return Err(CurveEnumError::OutOfCertifiedRange(format!(
                    "plane blow-up with k = {k} > 8 has infinitely many (-1)-classes"
                )));
            }
        }
        SurfaceFamily::Hirzebruch { e } => {
            if k > e as usize + 1 {
                return Err(CurveEnumError::OutOfCertifiedRange(format!(
                    "Hirzebruch blow-up with k = {k} > e + 1 = {}",
                    e + 1
                )));
            }
        }
        SurfaceFamily::Ruled { .. } => {
            return Err(CurveEnumError::OutOfCertifiedRange(
                "non-rational ruled surfaces carry no (-1)-classes of this shape".to_string(),
            ));
        }
    }

    let mut curves: Vec<CurveClass> = (0..k).map(|i| unit(model, first_e + i)).collect();
    let bound = {
        let e_part = model.family().invariant_e().map_or(3, |e| (e + 2).max(3));
        (d_max * e_part) as i64
    };

    // Enumerate exceptional multiplicities m_1..m_k with a fixed target sum
    // and sum of squares, coordinates in [0, bound].
    fn enumerate_multiplicities(
        k: usize,
        sum: i64,
        sumsq: i64,
        bound: i64,
        prefix: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if prefix.len() == k {
            if sum == 0 && sumsq == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if sum < 0 || sumsq < 0 {
            return;
        }
        let remaining = (k - prefix.len() - 1) as i64;
        let mut m = 0i64;
        while m <= bound && m * m <= sumsq && m <= sum {
            // Cauchy-Schwarz feasibility for the remaining coordinates.
            let s = sum - m;
            let q = sumsq - m * m;
            if s * s <= remaining.max(1) * q || (remaining == 0 && s == 0 && q == 0) {
                prefix.push(m);
                enumerate_multiplicities(k, s, q, bound, prefix, out);
                prefix.pop();
            }
            m += 1;
        }
    }

    match model.family() {
        SurfaceFamily::ProjectivePlane => {
            for d in 1..=i64::from(d_max) {
                let sum = 3 * d - 1;
                let sumsq = d * d + 1;
                let mut sols = Vec::new();
                enumerate_multiplicities(k, sum, sumsq, bound, &mut Vec::new(), &mut sols);
                for m in sols {
                    let mut coeffs = vec![0i64; model.rank()];
                    coeffs[0] = d;
                    for (i, mi) in m.iter().enumerate() {
                        coeffs[first_e + i] = -mi;
                    }
                    curves.push(class(model, coeffs));
                }
            }
        }
        SurfaceFamily::Hirzebruch { e } => {
            let e = i64::from(e);
            for d in 0..=i64::from(d_max) {
                for n in 0..=i64::from(d_max) {
                    if d == 0 && n == 0 {
                        continue;
                    }
                    // C = d C_0 + n F - Σ m_i E_i:
                    //   C² = -e d² + 2 d n - Σ m_i²  = -1
                    //   c₁·C = 2n + (2 - e) d - Σ m_i = 1
                    let sumsq = -e * d * d + 2 * d * n + 1;
                    let sum = 2 * n + (2 - e) * d - 1;
                    if sum < 0 || sumsq < 0 {
                        continue;
                    }
                    let mut sols = Vec::new();
                    enumerate_multiplicities(k, sum, sumsq, bound, &mut Vec::new(), &mut sols);
                    for m in sols {
                        let mut coeffs = vec![0i64; model.rank()];
                        coeffs[0] = d;
                        coeffs[1] = n;
                        for (i, mi) in m.iter().enumerate() {
                            coeffs[first_e + i] = -mi;
                        }
                        curves.push(class(model, coeffs));
                    }
                }
            }
        }
        SurfaceFamily::Ruled { .. } => unreachable!("rejected above"),
    }

    CurveList::new(model, Provenance::MinusOne { d_max }, curves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_model;
    use crate::rat::rint;

    fn p2(k: usize) -> SurfaceModel {
        build_model(SurfaceFamily::ProjectivePlane, k).unwrap()
    }

    fn fe(e: u32, k: usize) -> SurfaceModel {
        build_model(SurfaceFamily::Hirzebruch { e }, k).unwrap()
    }

    #[test]
    fn names_from_coefficients() {
        let m = p2(2);
        let c = CurveClass::new(m.basis(), vec![1, -1, -1]).unwrap();
        assert_eq!(c.name(), "H-E_1-E_2");
        let c = CurveClass::new(m.basis(), vec![2, 0, -1]).unwrap();
        assert_eq!(c.name(), "2H-E_2");
        let m = fe(1, 1);
        let c = CurveClass::new(m.basis(), vec![0, 1, -1]).unwrap();
        assert_eq!(c.name(), "F-E_1");
        let c = CurveClass::new(m.basis(), vec![1, 2, 0]).unwrap();
        assert_eq!(c.name(), "C_0+2F");
    }

    #[test]
    fn zero_class_rejected() {
        let m = p2(1);
        assert_eq!(
            CurveClass::new(m.basis(), vec![0, 0]),
            Err(CurveEnumError::ZeroClass)
        );
    }

    #[test]
    fn coarse_lists_match_spec_tables() {
        let m = p2(0);
        assert_eq!(coarse_curves(&m).names(), vec!["H"]);

        let m = p2(1);
        assert_eq!(coarse_curves(&m).names(), vec!["E_1", "H-E_1"]);

        let m = p2(2);
        let list = coarse_curves(&m);
        let names = list.names();
        assert_eq!(names.len(), 3);
        for n in ["E_1", "E_2", "H-E_1-E_2"] {
            assert!(names.contains(&n), "missing {n}");
        }

        let m = fe(0, 1);
        let list = coarse_curves(&m);
        let names = list.names();
        assert_eq!(names.len(), 5);
        for n in ["C_0", "F", "E_1", "F-E_1", "C_0-E_1"] {
            assert!(names.contains(&n), "missing {n}");
        }

        let m = fe(2, 2);
        let list = coarse_curves(&m);
        let names = list.names();
        assert_eq!(names.len(), 6);
        for n in ["C_0", "F", "E_1", "E_2", "F-E_1", "F-E_2"] {
            assert!(names.contains(&n), "missing {n}");
        }

        let m = build_model(SurfaceFamily::Ruled { g: 2, e: 1 }, 1).unwrap();
        let list = coarse_curves(&m);
        let names = list.names();
        assert_eq!(names.len(), 4);
        for n in ["C_0", "F", "E_1", "F-E_1"] {
            assert!(names.contains(&n), "missing {n}");
        }
    }

    #[test]
    fn coarse_squares_are_constrained() {
        // Apart from H on the unblown plane, every coarse curve has square
        // -1, 0 or -e.
        for model in [
            p2(1),
            p2(4),
            fe(0, 2),
            fe(2, 3),
            build_model(SurfaceFamily::Ruled { g: 1, e: 2 }, 2).unwrap(),
        ] {
            let e = model.family().invariant_e().map(i64::from).unwrap_or(0);
            for c in coarse_curves(&model).curves() {
                let sq = model.pair(&c.divisor_class(), &c.divisor_class()).unwrap();
                assert!(
                    sq == rint(-1) || sq == rint(0) || sq == rint(-e),
                    "unexpected square {sq} for {}",
                    c.name()
                );
                assert!(c.divisor_class().is_integral());
            }
        }
        let m = p2(0);
        let list = coarse_curves(&m);
        let h = &list.curves()[0];
        assert_eq!(m.pair(&h.divisor_class(), &h.divisor_class()).unwrap(), rint(1));
    }

    #[test]
    fn mori_certified_cases() {
        assert_eq!(mori_generators(&p2(0)).available().unwrap().names(), vec!["H"]);
        assert_eq!(
            mori_generators(&p2(1)).available().unwrap().names(),
            vec!["E_1", "H-E_1"]
        );
        let bl2 = mori_generators(&p2(2)).into_list().unwrap();
        assert_eq!(bl2.len(), 3);
        assert_eq!(bl2.provenance(), Provenance::Mori);

        let f3 = mori_generators(&fe(3, 1)).into_list().unwrap();
        let names = f3.names();
        assert_eq!(names.len(), 3);
        for n in ["C_0", "E_1", "F-E_1"] {
            assert!(names.contains(&n));
        }

        let f3b2 = mori_generators(&fe(3, 2)).into_list().unwrap();
        let names = f3b2.names();
        assert_eq!(names.len(), 5);
        for n in ["C_0", "E_1", "E_2", "F-E_1", "F-E_2"] {
            assert!(names.contains(&n));
        }

        let f0b1 = mori_generators(&fe(0, 1)).into_list().unwrap();
        let names = f0b1.names();
        assert_eq!(names.len(), 3);
        for n in ["E_1", "F-E_1", "C_0-E_1"] {
            assert!(names.contains(&n));
        }

        let ruled = build_model(SurfaceFamily::Ruled { g: 2, e: 0 }, 0).unwrap();
        assert_eq!(
            mori_generators(&ruled).available().unwrap().names(),
            vec!["F", "C_0"]
        );
    }

    #[test]
    fn mori_unavailable_cases() {
        assert_eq!(mori_generators(&p2(10)), MoriGenerators::Unavailable);
        assert_eq!(mori_generators(&p2(9)), MoriGenerators::Unavailable);
        assert_eq!(mori_generators(&fe(1, 2)), MoriGenerators::Unavailable);
        assert_eq!(mori_generators(&fe(0, 2)), MoriGenerators::Unavailable);
        let ruled = build_model(SurfaceFamily::Ruled { g: 1, e: 0 }, 1).unwrap();
        assert_eq!(mori_generators(&ruled), MoriGenerators::Unavailable);
    }

    #[test]
    fn minus_one_counts_match_frozen_oracle() {
        // Frozen output of the pre-build brute-force enumeration at d_max = 6.
        let expected = [1usize, 3, 6, 10, 16, 27, 56, 240];
        for (k, want) in (1..=8).zip(expected) {
            let list = minus_one_curves(&p2(k), 6).unwrap();
            assert_eq!(list.len(), want, "count mismatch at k = {k}");
        }
    }

    #[test]
    fn minus_one_small_cases() {
        let list = minus_one_curves(&p2(3), 2).unwrap();
        assert_eq!(list.len(), 6);
        let names = list.names();
        for n in ["E_1", "E_2", "E_3", "H-E_1-E_2", "H-E_1-E_3", "H-E_2-E_3"] {
            assert!(names.contains(&n));
        }

        // H-E_1 has square 0, so the one-point list is just E_1.
        let list = minus_one_curves(&p2(1), 1).unwrap();
        assert_eq!(list.names(), vec!["E_1"]);

        // 27 lines on the cubic surface.
        let list = minus_one_curves(&p2(6), 6).unwrap();
        assert_eq!(list.len(), 27);
    }

    #[test]
    fn minus_one_conditions_hold() {
        for (model, d_max) in [(p2(5), 6), (p2(8), 6), (fe(0, 1), 3), (fe(2, 2), 3)] {
            let list = minus_one_curves(&model, d_max).unwrap();
            for c in list.curves() {
                let d = c.divisor_class();
                assert_eq!(model.pair(&d, &d).unwrap(), rint(-1), "square of {}", c.name());
                assert_eq!(model.c1_pairing(&d).unwrap(), rint(1), "degree of {}", c.name());
            }
        }
    }

    #[test]
    fn minus_one_out_of_range() {
        assert!(minus_one_curves(&p2(9), 6).is_err());
        assert!(minus_one_curves(&fe(1, 3), 6).is_err());
        let ruled = build_model(SurfaceFamily::Ruled { g: 1, e: 0 }, 1).unwrap();
        assert!(minus_one_curves(&ruled, 6).is_err());
    }

    #[test]
    fn bl1_f0_minus_one_matches_mori() {
        let m = fe(0, 1);
        let minus = minus_one_curves(&m, 6).unwrap();
        let mori = mori_generators(&m).into_list().unwrap();
        assert_eq!(minus.names(), mori.names());
    }

    #[test]
    fn enumeration_is_permutation_stable() {
        // Relabeling the exceptional indices permutes coefficients; the
        // resulting set of classes is unchanged.
        let m = p2(5);
        let list = minus_one_curves(&m, 6).unwrap();
        let perm = [3usize, 0, 4, 1, 2];
        let mut permuted: Vec<Vec<i64>> = list
            .curves()
            .iter()
            .map(|c| {
                let mut v = c.coeffs().to_vec();
                for (i, &p) in perm.iter().enumerate() {
                    v[1 + p] = c.coeffs()[1 + i];
                }
                v
            })
            .collect();
        permuted.sort();
        let mut original: Vec<Vec<i64>> = list.curves().iter().map(|c| c.coeffs().to_vec()).collect();
        original.sort();
        assert_eq!(permuted, original);
    }

    #[test]
    fn list_order_is_deterministic() {
        let m = p2(3);
        let a = coarse_curves(&m);
        let b = coarse_curves(&m);
        assert_eq!(a, b);
        assert!(a.curves().windows(2).all(|w| w[0].coeffs() <= w[1].coeffs()));
    }

    #[test]
    fn provenance_serialization() {
        assert_eq!(
            serde_json::to_value(Provenance::Coarse).unwrap(),
            serde_json::json!("coarse")
        );
        assert_eq!(
            serde_json::to_value(Provenance::MinusOne { d_max: 6 }).unwrap(),
            serde_json::json!({"minus_one": {"d_max": 6}})
        );
    }

    #[test]
    fn curve_list_json_shape() {
        let m = p2(1);
        let v = serde_json::to_value(coarse_curves(&m)).unwrap();
        assert_eq!(v["model"]["family"], "p2");
        assert_eq!(v["model"]["k"], 1);
        assert_eq!(v["provenance"], "coarse");
        assert_eq!(v["curves"][0]["name"], "E_1");
        assert_eq!(v["curves"][0]["coeffs"], serde_json::json!([0, 1]));
    }
}
