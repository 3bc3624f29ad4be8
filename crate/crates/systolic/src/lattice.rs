//! Exact intersection theory on the divisor lattices of rational and ruled
//! surfaces.
//!
//! A [`SurfaceModel`] packages a basis of divisor classes, its integer
//! intersection matrix and the anticanonical class. Three families are
//! supported:
//!
//! * the projective plane blown up at `k` points, basis `H, E_1, …, E_k`
//!   with `H² = 1`, `E_i² = −1` and all mixed products zero;
//! * Hirzebruch surfaces `F_e` blown up at `k` points, basis
//!   `C_0, F, E_1, …, E_k` with `C_0² = −e`, `F² = 0`, `C_0·F = 1`;
//! * ruled surfaces over a genus-`g ≥ 1` base, same basis and pairing as the
//!   Hirzebruch case but with the anticanonical class shifted by the genus.
//!
//! Blow-up points are taken in very general position, so only the numerical
//! lattice matters. All arithmetic is exact-rational; curvature-like
//! quantities are stored in units of 4π.

use crate::curves::{CurveClass, CurveList};
use crate::rat::{rat_vec_string, render, rint, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default ceiling on the number of blow-ups a model may carry.
///
/// The formulas are uniform in `k`; the cap keeps enumerations and grids
/// tractable. Use [`build_model_capped`] to override.
pub const DEFAULT_BLOWUP_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SurfaceFamily {
    /// The projective plane.
    #[serde(rename = "p2")]
    ProjectivePlane,
    /// The rational ruled surface with a section of self-intersection `−e`.
    #[serde(rename = "fe")]
    Hirzebruch { e: u32 },
    /// A ruled surface over a base curve of genus `g ≥ 1`.
    #[serde(rename = "ruled")]
    Ruled { g: u32, e: u32 },
}

impl SurfaceFamily {
    /// Genus of the base curve (0 for the plane and Hirzebruch surfaces).
    pub fn genus(&self) -> u32 {
        match self {
            SurfaceFamily::ProjectivePlane | SurfaceFamily::Hirzebruch { .. } => 0,
            SurfaceFamily::Ruled { g, .. } => *g,
        }
    }

    /// Self-intersection invariant `e` of the minimal section, if ruled.
    pub fn invariant_e(&self) -> Option<u32> {
        match self {
            SurfaceFamily::ProjectivePlane => None,
            SurfaceFamily::Hirzebruch { e } | SurfaceFamily::Ruled { e, .. } => Some(*e),
        }
    }

    pub fn is_ruled(&self) -> bool {
        !matches!(self, SurfaceFamily::ProjectivePlane)
    }
}

/// Identifies a model (family plus blow-up count) without carrying the gram
/// matrix around; curve lists are stamped with this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelId {
    #[serde(flatten)]
    pub family: SurfaceFamily,
    pub k: usize,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("ruled family requires genus >= 1; use the Hirzebruch family for genus 0")]
    RuledGenusZero,
    #[error("blow-up count {k} exceeds the cap {cap}")]
    BlowupCapExceeded { k: usize, cap: usize },
    #[error("divisor class has {got} coefficients, model has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("class has nonpositive self-intersection {square}")]
    NonPositiveSquare { square: Rat },
    #[error("empty curve list")]
    EmptyCurveList,
    #[error("curve list belongs to a different model")]
    ModelMismatch,
}

/// A divisor class as an exact-rational coefficient vector over a model's
/// basis. Kähler classes, curve classes and the anticanonical class are all
/// instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    #[serde(with = "rat_vec_string")]
    coeffs: Vec<Rat>,
}

impl DivisorClass {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        DivisorClass { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        DivisorClass {
            coeffs: coeffs.iter().map(|&c| rint(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass {
            coeffs: vec![Rat::zero(); rank],
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rat::is_integer)
    }

    pub fn scale(&self, lambda: &Rat) -> DivisorClass {
        DivisorClass {
            coeffs: self.coeffs.iter().map(|c| c * lambda).collect(),
        }
    }

    /// `self + lambda * other`; both classes must have the same length.
    pub fn add_scaled(&self, other: &DivisorClass, lambda: &Rat) -> DivisorClass {
        assert_eq!(self.len(), other.len(), "mismatched divisor lengths");
        DivisorClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b * lambda)
                .collect(),
        }
    }
}

/// A surface family together with a blow-up count, realized as a basis,
/// integer gram matrix and anticanonical class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    family: SurfaceFamily,
    k: usize,
    basis: Vec<String>,
    gram: Vec<Vec<i64>>,
    c1: DivisorClass,
}

#[derive(Serialize, Deserialize)]
struct ModelRepr {
    #[serde(flatten)]
    family: SurfaceFamily,
    k: usize,
    basis: Vec<String>,
    gram: Vec<Vec<i64>>,
    c1: Vec<String>,
}

impl Serialize for SurfaceModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ModelRepr {
            family: self.family,
            k: self.k,
            basis: self.basis.clone(),
            gram: self.gram.clone(),
            c1: self.c1.coeffs().iter().map(render).collect(),
        }
        .serialize(s)
    }
}

/// Builds the lattice model for `family` blown up at `k` very general points,
/// under the default blow-up cap.
pub fn build_model(family: SurfaceFamily, k: usize) -> Result<SurfaceModel, LatticeError> {
    build_model_capped(family, k, DEFAULT_BLOWUP_CAP)
}

/// As [`build_model`] with an explicit blow-up cap.
pub fn build_model_capped(
    family: SurfaceFamily,
    k: usize,
    cap: usize,
) -> Result<SurfaceModel, LatticeError> {
    if let SurfaceFamily::Ruled { g, .. } = family {
        if g == 0 {
            return Err(LatticeError::RuledGenusZero);
        }
    }
    if k > cap {
        return Err(LatticeError::BlowupCapExceeded { k, cap });
    }

    let (mut basis, mut diag, mut c1): (Vec<String>, Vec<i64>, Vec<i64>) = match family {
        SurfaceFamily::ProjectivePlane => (vec!["H".to_string()], vec![1], vec![3]),
        SurfaceFamily::Hirzebruch { e } | SurfaceFamily::Ruled { e, .. } => {
            let g = i64::from(family.genus());
            (
                vec!["C_0".to_string(), "F".to_string()],
                vec![-i64::from(e), 0],
                vec![2, 2 - 2 * g + i64::from(e)],
            )
        }
    };
    for i in 1..=k {
        basis.push(format!("E_{i}"));
        diag.push(-1);
        c1.push(-1);
    }

    let rank = basis.len();
    let mut gram = vec![vec![0i64; rank]; rank];
    for (i, d) in diag.iter().enumerate() {
        gram[i][i] = *d;
    }
    if family.is_ruled() {
        gram[0][1] = 1;
        gram[1][0] = 1;
    }

    Ok(SurfaceModel {
        family,
        k,
        basis,
        gram,
        c1: DivisorClass::from_ints(&c1),
    })
}

impl SurfaceModel {
    pub fn family(&self) -> SurfaceFamily {
        self.family
    }

    pub fn blowups(&self) -> usize {
        self.k
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn c1(&self) -> &DivisorClass {
        &self.c1
    }

    pub fn id(&self) -> ModelId {
        ModelId {
            family: self.family,
            k: self.k,
        }
    }

    /// Index of the first exceptional class in the basis.
    pub fn first_exceptional(&self) -> usize {
        self.rank() - self.k
    }

    fn check_dims(&self, d: &DivisorClass) -> Result<(), LatticeError> {
        if d.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                got: d.len(),
            });
        }
        Ok(())
    }

    /// Intersection pairing `D1 · D2 = D1ᵀ · gram · D2`, exact and symmetric.
    pub fn pair(&self, d1: &DivisorClass, d2: &DivisorClass) -> Result<Rat, LatticeError> {
        self.check_dims(d1)?;
        self.check_dims(d2)?;
        let mut acc = Rat::zero();
        for (i, a) in d1.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut row = Rat::zero();
            for (j, b) in d2.coeffs().iter().enumerate() {
                let g = self.gram[i][j];
                if g != 0 && !b.is_zero() {
                    row += b * rint(g);
                }
            }
            acc += a * row;
        }
        Ok(acc)
    }

    /// Pairing of a curve's integer class with a divisor class.
    pub fn pair_curve(&self, omega: &DivisorClass, curve: &CurveClass) -> Result<Rat, LatticeError> {
        self.pair(omega, &curve.divisor_class())
    }

    /// `c₁ · ω`, the anticanonical degree of the class.
    pub fn c1_pairing(&self, omega: &DivisorClass) -> Result<Rat, LatticeError> {
        self.pair(&self.c1, omega)
    }

    /// `c₁²` of the model; equals `9 − k` for plane blow-ups and `8 − 8g − k`
    /// for ruled ones.
    pub fn c1_squared(&self) -> Rat {
        self.pair(&self.c1, &self.c1)
            .expect("c1 always matches its own model")
    }

    /// Normalized average scalar curvature of the class, in units of 4π:
    /// `c₁·ω / ω²`. Requires `ω² > 0`.
    pub fn average_scalar_over_4pi(&self, omega: &DivisorClass) -> Result<Rat, LatticeError> {
        let square = self.pair(omega, omega)?;
        if !(square > Rat::zero()) {
            return Err(LatticeError::NonPositiveSquare { square });
        }
        Ok(self.c1_pairing(omega)? / square)
    }

    /// Positivity screen in the sense of Nakai–Moishezon: `ω² > 0` and
    /// `ω·C > 0` for every curve in `list`.
    ///
    /// This is a genuine Kähler test only when `list` generates the cone of
    /// curves; for coarse lists it is a necessary-condition screen. Curves
    /// are checked first, so a violating curve is preferred as the witness
    /// over the nonpositive-square flag.
    pub fn is_kahler(
        &self,
        omega: &DivisorClass,
        list: &CurveList,
    ) -> Result<KahlerVerdict, LatticeError> {
        if list.model() != self.id() {
            return Err(LatticeError::ModelMismatch);
        }
        if list.is_empty() {
            return Err(LatticeError::EmptyCurveList);
        }
        for curve in list.curves() {
            let pairing = self.pair_curve(omega, curve)?;
            if !(pairing > Rat::zero()) {
                return Ok(KahlerVerdict::NotKahler(KahlerFailure::NonPositiveCurve {
                    curve: curve.clone(),
                    pairing,
                }));
            }
        }
        let square = self.pair(omega, omega)?;
        if !(square > Rat::zero()) {
            return Ok(KahlerVerdict::NotKahler(KahlerFailure::NonPositiveSquare {
                square,
            }));
        }
        Ok(KahlerVerdict::Kahler)
    }
}

/// Outcome of the positivity screen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KahlerVerdict {
    Kahler,
    NotKahler(KahlerFailure),
}

impl KahlerVerdict {
    pub fn is_kahler(&self) -> bool {
        matches!(self, KahlerVerdict::Kahler)
    }

    pub fn failure(&self) -> Option<&KahlerFailure> {
        match self {
            KahlerVerdict::Kahler => None,
            KahlerVerdict::NotKahler(f) => Some(f),
        }
    }
}

/// Why the positivity screen failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KahlerFailure {
    NonPositiveSquare { square: Rat },
    NonPositiveCurve { curve: CurveClass, pairing: Rat },
}

impl std::fmt::Display for KahlerFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KahlerFailure::NonPositiveSquare { square } => {
                write!(f, "square {} <= 0", render(square))
            }
            KahlerFailure::NonPositiveCurve { curve, pairing } => {
                write!(f, "pairing with {} is {} <= 0", curve.name(), render(pairing))
            }
        }
    }
}

/// Signature `(positive, negative, zero)` of a symmetric integer matrix,
/// computed by exact congruence diagonalization. Plane and ruled models have
/// signature `(1, rank − 1, 0)`.
pub fn gram_signature(gram: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = gram.len();
    let mut m: Vec<Vec<Rat>> = gram
        .iter()
        .map(|row| row.iter().map(|&v| rint(v)).collect())
        .collect();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    let mut start = 0usize;
    while start < n {
        // Find a nonzero diagonal pivot in the remaining block.
        let pivot = (start..n).find(|&i| !m[i][i].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                // No diagonal pivot: either the block is zero, or some
                // off-diagonal entry can be folded onto the diagonal by the
                // congruence "add row/col j to i".
                let off = (start..n)
                    .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[i][j].is_zero());
                match off {
                    None => {
                        zero += n - start;
                        break;
                    }
                    Some((i, j)) => {
                        for col in 0..n {
                            let v = m[j][col].clone();
                            m[i][col] += v;
                        }
                        for row in 0..n {
                            let v = m[row][j].clone();
                            m[row][i] += v;
                        }
                        i
                    }
                }
            }
        };
        m.swap(start, pivot);
        for row in m.iter_mut() {
            row.swap(start, pivot);
        }
        let d = m[start][start].clone();
        if d > Rat::zero() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in (start + 1)..n {
            if m[i][start].is_zero() {
                continue;
            }
            let factor = &m[i][start] / &d;
            for col in start..n {
                let v = &m[start][col] * &factor;
                m[i][col] -= v;
            }
            for row in start..n {
                let v = &m[row][start] * &factor;
                m[row][i] -= v;
            }
        }
        start += 1;
    }
    (pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::coarse_curves;
    use crate::rat::rat;

    fn p2(k: usize) -> SurfaceModel {
        build_model(SurfaceFamily::ProjectivePlane, k).unwrap()
    }

    fn fe(e: u32, k: usize) -> SurfaceModel {
        build_model(SurfaceFamily::Hirzebruch { e }, k).unwrap()
    }

    #[test]
    fn plane_models() {
        let m = p2(0);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.gram(), &[vec![1]]);
        assert_eq!(m.c1(), &DivisorClass::from_ints(&[3]));

        let m = p2(2);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.c1(), &DivisorClass::from_ints(&[3, -1, -1]));
        assert_eq!(m.basis(), &["H", "E_1", "E_2"]);
    }

    #[test]
    fn hirzebruch_model() {
        let m = fe(2, 0);
        assert_eq!(m.gram(), &[vec![-2, 1], vec![1, 0]]);
        assert_eq!(m.c1(), &DivisorClass::from_ints(&[2, 4]));
    }

    #[test]
    fn ruled_genus_zero_rejected() {
        assert_eq!(
            build_model(SurfaceFamily::Ruled { g: 0, e: 1 }, 0),
            Err(LatticeError::RuledGenusZero)
        );
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            build_model(SurfaceFamily::ProjectivePlane, 65),
            Err(LatticeError::BlowupCapExceeded { .. })
        ));
        assert!(build_model_capped(SurfaceFamily::ProjectivePlane, 65, 100).is_ok());
    }

    #[test]
    fn pairing_examples() {
        // (aH - tE)² with a=1, t=1/2 on Bl₁P².
        let m = p2(1);
        let w = DivisorClass::new(vec![rint(1), rat(-1, 2)]);
        assert_eq!(m.pair(&w, &w).unwrap(), rat(3, 4));

        // (C₀ + bF)² = 2ab - ea² with a=1, b=2, e=1.
        let m = fe(1, 0);
        let w = DivisorClass::from_ints(&[1, 2]);
        assert_eq!(m.pair(&w, &w).unwrap(), rint(3));

        // Bilinearity against the zero class.
        let z = DivisorClass::zero(2);
        assert_eq!(m.pair(&w, &z).unwrap(), rint(0));
    }

    #[test]
    fn pairing_dimension_mismatch() {
        let m = p2(1);
        let w = DivisorClass::from_ints(&[1]);
        assert!(matches!(
            m.pair(&w, &w),
            Err(LatticeError::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn c1_pairing_examples() {
        let m = p2(0);
        assert_eq!(m.c1_pairing(&DivisorClass::from_ints(&[1])).unwrap(), rint(3));

        let m = p2(2);
        let w = DivisorClass::new(vec![rint(1), rat(-1, 3), rat(-1, 3)]);
        assert_eq!(m.c1_pairing(&w).unwrap(), rat(7, 3));

        // Genus-1 ruled, e=0: c₁·(C₀ + bF) = 2b + (2-2g-e)a = 10 at b=5.
        let m = build_model(SurfaceFamily::Ruled { g: 1, e: 0 }, 0).unwrap();
        let w = DivisorClass::from_ints(&[1, 5]);
        assert_eq!(m.c1_pairing(&w).unwrap(), rint(10));
    }

    #[test]
    fn c1_squared_examples() {
        assert_eq!(p2(0).c1_squared(), rint(9));
        assert_eq!(p2(9).c1_squared(), rint(0));
        for e in 0..6 {
            assert_eq!(fe(e, 0).c1_squared(), rint(8));
        }
        for k in 0..=20 {
            assert_eq!(p2(k).c1_squared(), rint(9 - k as i64));
        }
    }

    #[test]
    fn average_scalar_examples() {
        let m = p2(0);
        let h = DivisorClass::from_ints(&[1]);
        assert_eq!(m.average_scalar_over_4pi(&h).unwrap(), rint(3));
        let h2 = DivisorClass::from_ints(&[2]);
        assert_eq!(m.average_scalar_over_4pi(&h2).unwrap(), rat(3, 2));

        let m = fe(2, 0);
        let w = DivisorClass::from_ints(&[1, 3]);
        assert_eq!(m.average_scalar_over_4pi(&w).unwrap(), rat(3, 2));
    }

    #[test]
    fn average_scalar_rejects_nonpositive_square() {
        let m = p2(1);
        // (H - E)² = 0.
        let w = DivisorClass::from_ints(&[1, -1]);
        assert!(matches!(
            m.average_scalar_over_4pi(&w),
            Err(LatticeError::NonPositiveSquare { .. })
        ));
    }

    #[test]
    fn kahler_screen() {
        let m = p2(1);
        let list = coarse_curves(&m);

        let w = DivisorClass::new(vec![rint(1), rat(-1, 2)]);
        assert!(m.is_kahler(&w, &list).unwrap().is_kahler());

        let w = DivisorClass::new(vec![rint(1), rat(-11, 10)]);
        match m.is_kahler(&w, &list).unwrap() {
            KahlerVerdict::NotKahler(KahlerFailure::NonPositiveCurve { curve, pairing }) => {
                assert_eq!(curve.name(), "H-E_1");
                assert_eq!(pairing, rat(-1, 10));
            }
            other => panic!("expected curve witness, got {other:?}"),
        }

        // F_2 with b = ae: the section pairs to zero.
        let m = fe(2, 0);
        let list = coarse_curves(&m);
        let w = DivisorClass::from_ints(&[1, 2]);
        match m.is_kahler(&w, &list).unwrap() {
            KahlerVerdict::NotKahler(KahlerFailure::NonPositiveCurve { curve, .. }) => {
                assert_eq!(curve.name(), "C_0");
            }
            other => panic!("expected C_0 witness, got {other:?}"),
        }
    }

    #[test]
    fn kahler_screen_rejects_mismatched_list() {
        let m = p2(1);
        let other = p2(2);
        let list = coarse_curves(&other);
        let w = DivisorClass::new(vec![rint(1), rat(-1, 2)]);
        assert_eq!(m.is_kahler(&w, &list), Err(LatticeError::ModelMismatch));
    }

    #[test]
    fn signatures() {
        assert_eq!(gram_signature(p2(0).gram()), (1, 0, 0));
        assert_eq!(gram_signature(p2(5).gram()), (1, 5, 0));
        // F_0 needs the off-diagonal fold: [[0,1],[1,0]].
        assert_eq!(gram_signature(fe(0, 0).gram()), (1, 1, 0));
        assert_eq!(gram_signature(fe(3, 4).gram()), (1, 5, 0));
    }

    #[test]
    fn model_json_shape() {
        let m = fe(2, 1);
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(v["family"], "fe");
        assert_eq!(v["e"], 2);
        assert_eq!(v["k"], 1);
        assert_eq!(v["basis"], serde_json::json!(["C_0", "F", "E_1"]));
        assert_eq!(v["c1"], serde_json::json!(["2", "4", "-1"]));
        assert_eq!(
            v["gram"],
            serde_json::json!([[-2, 1, 0], [1, 0, 0], [0, 0, -1]])
        );
    }
}
