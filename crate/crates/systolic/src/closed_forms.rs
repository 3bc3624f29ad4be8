//! Exact closed forms for the functional on each surface family: the
//! mass-shift maximum, the one-parameter bound `G_k`, the ruled-surface
//! profiles, and the supremum records with their witnesses.
//!
//! Everything works in the `a = 1` normalization slice and in units of 4π;
//! general classes are covered by scale invariance. Domain checks are the
//! strict inequalities of the defining formulas — boundary evaluation is an
//! error naming the violated constraint, never a clamped value. Suprema that
//! are only approached carry a machine-readable limit description instead of
//! a fake argmax.

use crate::rat::{rat, render, rint, Rat, Sign};
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("domain violation: requires {constraint}")]
    Domain { constraint: String },
    #[error("empty constraint set: S = {s} < k*m = {km}")]
    EmptyMassShift { s: String, km: String },
}

fn domain(constraint: impl Into<String>) -> ClosedFormError {
    ClosedFormError::Domain {
        constraint: constraint.into(),
    }
}

/// Stable identifiers for the closed forms, used by the CLI and the
/// finite-difference cross-checks.
pub mod ids {
    pub const P2_PHI: &str = "p2.phi";
    pub const P2_F_UPPER: &str = "p2.F";
    pub const P2_GK: &str = "p2.Gk";
    pub const P2_SUP: &str = "p2.sup";
    pub const P2_H1: &str = "p2.h1";
    pub const P2_H2: &str = "p2.h2";
    pub const RULED_PHI: &str = "ruled.phi";
    pub const RULED_SUP: &str = "ruled.sup";
    pub const F0_BL1_PHI: &str = "f0.bl1.phi";
    pub const FE_BL1_PHI: &str = "fe.bl1.phi";
    pub const F0_DMN: &str = "f0.dmn";
    pub const FE_DMN: &str = "fe.dmn";
    pub const FE_SMALLK_SUP: &str = "fe.smallk.sup";
    pub const RULED_BLOWUP_SUP: &str = "ruled.blowup.sup";
    pub const MASSSHIFT_QMAX: &str = "massshift.qmax";
}

/// Maximum of `Σ tᵢ²` over `{tᵢ ≥ m, Σ tᵢ = S}` and the vector achieving it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MassShiftResult {
    #[serde(with = "crate::rat::rat_string")]
    pub q_max: Rat,
    #[serde(with = "crate::rat::rat_vec_string")]
    pub extremal: Vec<Rat>,
}

/// One coordinate of a supremum witness: either an exact parameter value or
/// the direction of the approach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessItem {
    At(Rat),
    /// Approached from below: `param ↑ limit`.
    Up(Rat),
    /// Approached from above: `param ↓ limit`.
    Down(Rat),
    ToInfinity,
}

impl Serialize for WitnessItem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Limit<'a> {
            to: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            from: Option<&'a str>,
        }
        match self {
            WitnessItem::At(r) => s.serialize_str(&render(r)),
            WitnessItem::Up(r) => Limit {
                to: &render(r),
                from: Some("below"),
            }
            .serialize(s),
            WitnessItem::Down(r) => Limit {
                to: &render(r),
                from: Some("above"),
            }
            .serialize(s),
            WitnessItem::ToInfinity => Limit {
                to: "inf",
                from: None,
            }
            .serialize(s),
        }
    }
}

/// Named parameters describing where a supremum is attained or approached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness(pub Vec<(String, WitnessItem)>);

impl Witness {
    pub fn all_exact(&self) -> bool {
        self.0.iter().all(|(_, w)| matches!(w, WitnessItem::At(_)))
    }

    pub fn get(&self, name: &str) -> Option<&WitnessItem> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (name, item) in &self.0 {
            map.serialize_entry(name, item)?;
        }
        map.end()
    }
}

/// A supremum value in units of 4π with its attainment status and witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupRecord {
    pub sup_over_4pi: Rat,
    pub attained: bool,
    pub witness: Witness,
}

impl SupRecord {
    fn attained(value: Rat, params: Vec<(&str, Rat)>) -> SupRecord {
        SupRecord {
            sup_over_4pi: value,
            attained: true,
            witness: Witness(
                params
                    .into_iter()
                    .map(|(n, v)| (n.to_string(), WitnessItem::At(v)))
                    .collect(),
            ),
        }
    }

    fn limit(value: Rat, items: Vec<(&str, WitnessItem)>) -> SupRecord {
        let witness = Witness(items.into_iter().map(|(n, w)| (n.to_string(), w)).collect());
        debug_assert!(!witness.all_exact(), "limit record needs a limit direction");
        SupRecord {
            sup_over_4pi: value,
            attained: false,
            witness,
        }
    }

    /// The exact argmax when the supremum is attained.
    pub fn argmax(&self) -> Option<Vec<(String, Rat)>> {
        if !self.attained {
            return None;
        }
        Some(
            self.witness
                .0
                .iter()
                .map(|(n, w)| match w {
                    WitnessItem::At(r) => (n.clone(), r.clone()),
                    _ => unreachable!("attained record has exact witness"),
                })
                .collect(),
        )
    }
}

impl Serialize for SupRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SupRecord", 3)?;
        st.serialize_field("value", &render(&self.sup_over_4pi))?;
        st.serialize_field("attained", &self.attained)?;
        st.serialize_field("witness", &self.witness)?;
        st.end()
    }
}

/// `sup Σtᵢ² = (k−1)m² + (S−(k−1)m)²` over the shifted simplex
/// `{tᵢ ≥ m, Σtᵢ = S}`, attained exactly (up to permutation) at
/// `(m, …, m, S−(k−1)m)`.
pub fn q_max(k: usize, m: &Rat, s: &Rat) -> Result<MassShiftResult, ClosedFormError> {
    if k < 2 {
        return Err(domain("k >= 2"));
    }
    if !(m > &Rat::zero()) {
        return Err(domain("m > 0"));
    }
    let km = rint(k as i64) * m;
    if s < &km {
        return Err(ClosedFormError::EmptyMassShift {
            s: render(s),
            km: render(&km),
        });
    }
    let last = s - rint(k as i64 - 1) * m;
    let q = rint(k as i64 - 1) * m * m + &last * &last;
    let mut extremal = vec![m.clone(); k - 1];
    extremal.push(last);
    Ok(MassShiftResult { q_max: q, extremal })
}

/// The plane blow-up profile `ϕ_k(t) = min{tᵢ, 1−tᵢ−tⱼ} · (3−S)/(1−Q)` in
/// the `a = 1` slice, for `k ≥ 2`.
pub fn phi_k_p2(k: usize, t: &[Rat]) -> Result<Rat, ClosedFormError> {
    if k < 2 {
        return Err(domain("k >= 2"));
    }
    if t.len() != k {
        return Err(domain(format!("t must have {k} coordinates")));
    }
    if t.iter().any(|ti| !(ti > &Rat::zero())) {
        return Err(domain("t_i > 0"));
    }
    let s: Rat = t.iter().sum();
    let q: Rat = t.iter().map(|ti| ti * ti).sum();
    if !(rint(3) - &s > Rat::zero()) {
        return Err(domain("3 - S > 0"));
    }
    if !(rint(1) - &q > Rat::zero()) {
        return Err(domain("1 - Q > 0"));
    }
    // Minimum of 1 - t_i - t_j is achieved by the two largest coordinates.
    let mut sorted = t.to_vec();
    sorted.sort();
    let pair_min = rint(1) - &sorted[k - 1] - &sorted[k - 2];
    let mut m = sorted[0].clone();
    if pair_min < m {
        m = pair_min;
    }
    Ok(m * (rint(3) - s) / (rint(1) - q))
}

/// The mass-shift upper bound `F(m, S) = m(3−S)/(1−(k−1)m²−(S−(k−1)m)²)` on
/// its feasibility domain `km ≤ S ≤ 1+(k−3)m`, `0 < m ≤ 1/3`.
pub fn f_upper_p2(k: usize, m: &Rat, s: &Rat) -> Result<Rat, ClosedFormError> {
    if k < 2 {
        return Err(domain("k >= 2"));
    }
    if !(m > &Rat::zero()) {
        return Err(domain("m > 0"));
    }
    if m > &rat(1, 3) {
        return Err(domain("m <= 1/3"));
    }
    if s < &(rint(k as i64) * m) {
        return Err(domain("k*m <= S"));
    }
    if s > &(rint(1) + rint(k as i64 - 3) * m) {
        return Err(domain("S <= 1 + (k-3)*m"));
    }
    let shifted = s - rint(k as i64 - 1) * m;
    let denom = rint(1) - rint(k as i64 - 1) * m * m - &shifted * &shifted;
    if !(denom > Rat::zero()) {
        return Err(domain("1 - (k-1)*m^2 - (S-(k-1)*m)^2 > 0"));
    }
    Ok(m * (rint(3) - s) / denom)
}

/// `G_k(m) = (2−(k−3)m)/(4−(k+3)m)` on `0 < m < 4/(k+3)`, the value of the
/// bound `F` at the top of its `S`-range.
pub fn g_k(k: usize, m: &Rat) -> Result<Rat, ClosedFormError> {
    if k < 2 {
        return Err(domain("k >= 2"));
    }
    if !(m > &Rat::zero() && m < &(rint(4) / rint(k as i64 + 3))) {
        return Err(domain("0 < m < 4/(k+3)"));
    }
    Ok((rint(2) - rint(k as i64 - 3) * m) / (rint(4) - rint(k as i64 + 3) * m))
}

/// Sign of `G_k'(m) = (18−2k)/(4−(k+3)m)²`: the sign of `9 − k`, matching
/// the sign of `c₁²` of the `k`-fold plane blow-up.
pub fn g_k_derivative_sign(k: usize) -> Sign {
    Sign::of_i64(18 - 2 * (k as i64))
}

/// Supremum of the plane blow-up profile over the coarse admissible region.
///
/// `k = 1` folds in the one-point example (maximum 5/3 at `t = 1/2`);
/// `2 ≤ k ≤ 8` gives 1 attained at `tᵢ = 1/3`; `k = 9` gives 1/2 approached
/// as `m ↑ 1/3`; `k ≥ 10` gives 1/2 approached as `m ↓ 0`.
pub fn sup_phi_p2(k: usize) -> Result<SupRecord, ClosedFormError> {
    match k {
        0 => Err(domain("k >= 1")),
        1 => Ok(SupRecord::attained(rat(5, 3), vec![("t", rat(1, 2))])),
        2..=8 => Ok(SupRecord::attained(rint(1), vec![("t_i", rat(1, 3))])),
        9 => Ok(SupRecord::limit(
            rat(1, 2),
            vec![("m", WitnessItem::Up(rat(1, 3)))],
        )),
        _ => Ok(SupRecord::limit(
            rat(1, 2),
            vec![("m", WitnessItem::Down(Rat::zero()))],
        )),
    }
}

/// One-point blow-up of the plane: `h₁(t) = min{t, 1−t}(3−t)/(1−t²)` on
/// `0 < t < 1`.
pub fn h_bl1_p2(t: &Rat) -> Result<Rat, ClosedFormError> {
    if !(t > &Rat::zero() && t < &rint(1)) {
        return Err(domain("0 < t < 1"));
    }
    let m = std::cmp::min(t.clone(), rint(1) - t);
    Ok(m * (rint(3) - t) / (rint(1) - t * t))
}

/// Two-point blow-up of the plane:
/// `h₂(t₁,t₂) = min{t₁, t₂, 1−t₁−t₂}(3−t₁−t₂)/(1−t₁²−t₂²)`.
pub fn h_bl2_p2(t1: &Rat, t2: &Rat) -> Result<Rat, ClosedFormError> {
    if !(t1 > &Rat::zero() && t2 > &Rat::zero()) {
        return Err(domain("t_i > 0"));
    }
    let s = t1 + t2;
    if !(s < rint(1)) {
        return Err(domain("t_1 + t_2 < 1"));
    }
    let m = std::cmp::min(t1.clone(), std::cmp::min(t2.clone(), rint(1) - &s));
    Ok(m * (rint(3) - &s) / (rint(1) - t1 * t1 - t2 * t2))
}

/// Minimal ruled profile
/// `ϕ_{e,g}(t) = min{1, t−e} · (2t+2−2g−e)/(2t−e)` on `t > e`, where
/// `t = b/a` parameterizes the ray of `aC₀ + bF`.
pub fn phi_ruled_minimal(e: u32, g: u32, t: &Rat) -> Result<Rat, ClosedFormError> {
    let e = rint(i64::from(e));
    if !(t > &e) {
        return Err(domain("t > e"));
    }
    let m = std::cmp::min(rint(1), t - &e);
    let num = rint(2) * t + rint(2) - rint(2 * i64::from(g)) - &e;
    let den = rint(2) * t - e;
    Ok(m * num / den)
}

/// Supremum of the minimal ruled profile: `(e+4)/(e+2)` at `t = e+1` for a
/// rational base; 1 for positive genus, attained exactly when `g = 1` and
/// `t ≥ e + 1`, only approached as `t → ∞` for `g ≥ 2`.
pub fn sup_j_ruled_minimal(e: u32, g: u32) -> SupRecord {
    let e_i = i64::from(e);
    match g {
        0 => SupRecord::attained(
            rint(e_i + 4) / rint(e_i + 2),
            vec![("t", rint(e_i + 1))],
        ),
        1 => SupRecord::attained(rint(1), vec![("t", rint(e_i + 1))]),
        _ => SupRecord::limit(rint(1), vec![("t", WitnessItem::ToInfinity)]),
    }
}

/// One-point blow-up of `F_0` in the `t = 1` slice:
/// `min{1, x−1, y−1}(2x+2y−1)/(2xy−1)` on `x > 1, y > 1`.
pub fn phi_bl1_f0(x: &Rat, y: &Rat) -> Result<Rat, ClosedFormError> {
    if !(x > &rint(1) && y > &rint(1)) {
        return Err(domain("x > 1 and y > 1"));
    }
    let m = std::cmp::min(rint(1), std::cmp::min(x - rint(1), y - rint(1)));
    let num = rint(2) * x + rint(2) * y - rint(1);
    let den = rint(2) * x * y - rint(1);
    Ok(m * num / den)
}

/// Supremum of [`phi_bl1_f0`]: 1, attained at `(x, y) = (2, 2)`.
pub fn sup_phi_bl1_f0() -> SupRecord {
    SupRecord::attained(rint(1), vec![("x", rint(2)), ("y", rint(2))])
}

/// One-point blow-up of `F_e`, `e ≥ 1`, in the `t = 1` slice:
/// `min{1, x−1, z} ((e+2)x+2z−1)/(ex²+2xz−1)` on
/// `x > 1, z > 0, ex²+2xz−1 > 0`.
pub fn phi_bl1_fe(e: u32, x: &Rat, z: &Rat) -> Result<Rat, ClosedFormError> {
    if e < 1 {
        return Err(domain("e >= 1 (use the F_0 chart otherwise)"));
    }
    if !(x > &rint(1)) {
        return Err(domain("x > 1"));
    }
    if !(z > &Rat::zero()) {
        return Err(domain("z > 0"));
    }
    let e = rint(i64::from(e));
    let den = &e * x * x + rint(2) * x * z - rint(1);
    if !(den > Rat::zero()) {
        return Err(domain("e*x^2 + 2*x*z - 1 > 0"));
    }
    let m = std::cmp::min(rint(1), std::cmp::min(x - rint(1), z.clone()));
    let num = (e + rint(2)) * x + rint(2) * z - rint(1);
    Ok(m * num / den)
}

/// Supremum of [`phi_bl1_fe`]: `(2e+5)/(4e+3)`, attained at `(x, z) = (2, 1)`.
pub fn sup_phi_bl1_fe(e: u32) -> Result<SupRecord, ClosedFormError> {
    if e < 1 {
        return Err(domain("e >= 1 (use the F_0 chart otherwise)"));
    }
    let e = i64::from(e);
    Ok(SupRecord::attained(
        rint(2 * e + 5) / rint(4 * e + 3),
        vec![("x", rint(2)), ("z", rint(1))],
    ))
}

/// Denominator-minus-numerator margin for blow-ups of `F_0`:
/// `2b(1−m) − 2m + mz − z²` on `b ≥ 1`, `0 < m ≤ 1/2`, `m ≤ z ≤ 1−m`.
/// Nonnegative on the whole domain; at `b = 1` it is `G(m,z) = 2−4m+mz−z²`.
pub fn d_minus_n_f0(b: &Rat, m: &Rat, z: &Rat) -> Result<Rat, ClosedFormError> {
    if !(b >= &rint(1)) {
        return Err(domain("b >= 1"));
    }
    check_mz(m, z)?;
    Ok(rint(2) * b * (rint(1) - m) - rint(2) * m + m * z - z * z)
}

/// Denominator-minus-numerator margin for blow-ups of `F_e`, `e ≥ 1`, at the
/// extremal `b = e + m`: `F_e(m,z) = e(1−m) − 2m² + mz − z²` on
/// `0 < m ≤ 1/2`, `m ≤ z ≤ 1−m`. Nonnegative on the whole domain.
pub fn d_minus_n_fe(e: u32, m: &Rat, z: &Rat) -> Result<Rat, ClosedFormError> {
    if e < 1 {
        return Err(domain("e >= 1 (use the F_0 margin otherwise)"));
    }
    check_mz(m, z)?;
    let e = rint(i64::from(e));
    Ok(e * (rint(1) - m) - rint(2) * m * m + m * z - z * z)
}

fn check_mz(m: &Rat, z: &Rat) -> Result<(), ClosedFormError> {
    if !(m > &Rat::zero()) {
        return Err(domain("m > 0"));
    }
    if m > &rat(1, 2) {
        return Err(domain("m <= 1/2"));
    }
    if z < m {
        return Err(domain("z >= m"));
    }
    if z > &(rint(1) - m) {
        return Err(domain("z <= 1 - m"));
    }
    Ok(())
}

/// Boundary value of the `F_e` margin at `z = 1 − m`:
/// `(e−1) + (3−e)m − 4m²`. Nonnegative for `e ≥ 1`, `0 < m ≤ 1/2`, vanishing
/// only at `(e, m) = (1, 1/2)`.
pub fn fe_boundary_poly(e: u32, m: &Rat) -> Rat {
    let e = rint(i64::from(e));
    &e - rint(1) + (rint(3) - &e) * m - rint(4) * m * m
}

/// Supremum for `k ≤ e` blow-ups of `F_e`: `(2e+6−k)/(4e+4−k)`, attained at
/// `b = e + 1/2`, `tᵢ = 1/2`; always at most 1.
pub fn sup_small_blowup_fe(e: u32, k: usize) -> Result<SupRecord, ClosedFormError> {
    if e < 1 {
        return Err(domain("e >= 1"));
    }
    if k < 1 || k > e as usize {
        return Err(domain("1 <= k <= e (certified generator range)"));
    }
    let (e, k) = (i64::from(e), k as i64);
    Ok(SupRecord::attained(
        rint(2 * e + 6 - k) / rint(4 * e + 4 - k),
        vec![("b", rint(e) + rat(1, 2)), ("t_i", rat(1, 2))],
    ))
}

/// Supremum for blow-ups of ruled surfaces over a positive-genus base:
/// 1/2 in units of 4π, never attained; approached with `tᵢ = 1/2` and
/// `b → ∞`.
pub fn sup_ruled_blowup_nonrational(g: u32) -> Result<SupRecord, ClosedFormError> {
    if g < 1 {
        return Err(domain("g >= 1"));
    }
    Ok(SupRecord::limit(
        rat(1, 2),
        vec![
            ("t_i", WitnessItem::At(rat(1, 2))),
            ("b", WitnessItem::ToInfinity),
        ],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_max_examples() {
        // Frozen against the pre-build simplex-grid oracle.
        let r = q_max(2, &rint(1), &rint(3)).unwrap();
        assert_eq!(r.q_max, rint(5));
        assert_eq!(r.extremal, vec![rint(1), rint(2)]);

        let r = q_max(4, &rat(1, 2), &rint(2)).unwrap();
        assert_eq!(r.q_max, rint(1));
        assert_eq!(r.extremal, vec![rat(1, 2); 4]);

        let r = q_max(3, &rat(1, 3), &rint(2)).unwrap();
        assert_eq!(r.q_max, rint(2));
        assert_eq!(r.extremal, vec![rat(1, 3), rat(1, 3), rat(4, 3)]);
    }

    #[test]
    fn q_max_invariants() {
        let r = q_max(5, &rat(1, 7), &rat(9, 5)).unwrap();
        let sum: Rat = r.extremal.iter().sum();
        assert_eq!(sum, rat(9, 5));
        assert!(r.extremal.iter().all(|t| t >= &rat(1, 7)));
        let q: Rat = r.extremal.iter().map(|t| t * t).sum();
        assert_eq!(q, r.q_max);
    }

    #[test]
    fn q_max_infeasible() {
        assert!(matches!(
            q_max(3, &rint(1), &rint(2)),
            Err(ClosedFormError::EmptyMassShift { .. })
        ));
        assert!(q_max(1, &rint(1), &rint(2)).is_err());
    }

    #[test]
    fn phi_k_examples() {
        let t8 = vec![rat(1, 3); 8];
        assert_eq!(phi_k_p2(8, &t8).unwrap(), rint(1));

        let t2 = vec![rat(1, 3); 2];
        assert_eq!(phi_k_p2(2, &t2).unwrap(), rint(1));

        // Near the k = 9 witness: symmetric t_i = m gives 3m/(1+3m).
        let t9 = vec![rat(33, 100); 9];
        assert_eq!(phi_k_p2(9, &t9).unwrap(), rat(99, 199));
    }

    #[test]
    fn phi_k_domain() {
        assert!(phi_k_p2(1, &[rat(1, 2)]).is_err());
        assert!(phi_k_p2(2, &[rat(1, 2)]).is_err());
        assert!(phi_k_p2(2, &[rint(2), rint(2)]).is_err());
    }

    #[test]
    fn f_upper_examples() {
        // Along S = km and t_i = m, F reduces to 3m/(1+3m) -> 1/2 as m -> 1/3.
        let m = rat(33, 100);
        let s = rint(9) * &m;
        assert_eq!(f_upper_p2(9, &m, &s).unwrap(), rat(99, 199));
        // Named constraints.
        assert!(matches!(
            f_upper_p2(9, &rat(1, 2), &rint(3)),
            Err(ClosedFormError::Domain { constraint }) if constraint == "m <= 1/3"
        ));
        assert!(matches!(
            f_upper_p2(4, &rat(1, 4), &rint(2)),
            Err(ClosedFormError::Domain { constraint }) if constraint == "S <= 1 + (k-3)*m"
        ));
    }

    #[test]
    fn g_k_examples() {
        assert_eq!(g_k(5, &rat(1, 3)).unwrap(), rint(1));
        for m in [rat(1, 10), rat(1, 5), rat(3, 10)] {
            assert_eq!(g_k(9, &m).unwrap(), rat(1, 2));
        }
        assert_eq!(g_k(12, &rat(1, 1000)).unwrap(), rat(1991, 3985));
        assert!(g_k(12, &rat(4, 15)).is_err()); // m = 4/(k+3)
    }

    #[test]
    fn g_k_sign_trichotomy() {
        for k in 2..=20 {
            let expected = Sign::of_i64(9 - k as i64);
            assert_eq!(g_k_derivative_sign(k), expected, "k = {k}");
        }
    }

    #[test]
    fn sup_phi_p2_records() {
        let r = sup_phi_p2(1).unwrap();
        assert_eq!(r.sup_over_4pi, rat(5, 3));
        assert!(r.attained);
        assert_eq!(r.witness.get("t"), Some(&WitnessItem::At(rat(1, 2))));

        let r = sup_phi_p2(8).unwrap();
        assert_eq!(r.sup_over_4pi, rint(1));
        assert_eq!(r.witness.get("t_i"), Some(&WitnessItem::At(rat(1, 3))));

        let r = sup_phi_p2(9).unwrap();
        assert_eq!(r.sup_over_4pi, rat(1, 2));
        assert!(!r.attained);
        assert_eq!(r.witness.get("m"), Some(&WitnessItem::Up(rat(1, 3))));

        let r = sup_phi_p2(10).unwrap();
        assert!(!r.attained);
        assert_eq!(r.witness.get("m"), Some(&WitnessItem::Down(rint(0))));

        assert!(sup_phi_p2(0).is_err());
    }

    #[test]
    fn h1_h2_examples() {
        assert_eq!(h_bl1_p2(&rat(1, 2)).unwrap(), rat(5, 3));
        assert_eq!(h_bl2_p2(&rat(1, 3), &rat(1, 3)).unwrap(), rint(1));
        assert_eq!(h_bl1_p2(&rat(1, 4)).unwrap(), rat(11, 15));
        assert!(h_bl1_p2(&rint(1)).is_err());
        assert!(h_bl2_p2(&rat(1, 2), &rat(1, 2)).is_err());
    }

    #[test]
    fn ruled_minimal_profile() {
        // phi at the argmax matches (e+4)/(e+2).
        assert_eq!(phi_ruled_minimal(2, 0, &rint(3)).unwrap(), rat(3, 2));
        assert_eq!(phi_ruled_minimal(0, 0, &rint(1)).unwrap(), rint(2));
        assert_eq!(phi_ruled_minimal(1, 3, &rint(10)).unwrap(), rat(15, 19));
        assert!(phi_ruled_minimal(2, 0, &rint(2)).is_err());
    }

    #[test]
    fn ruled_minimal_sup_records() {
        let r = sup_j_ruled_minimal(0, 0);
        assert_eq!(r.sup_over_4pi, rint(2));
        assert_eq!(r.witness.get("t"), Some(&WitnessItem::At(rint(1))));

        let r = sup_j_ruled_minimal(2, 0);
        assert_eq!(r.sup_over_4pi, rat(3, 2));

        let r = sup_j_ruled_minimal(3, 1);
        assert_eq!(r.sup_over_4pi, rint(1));
        assert!(r.attained);

        let r = sup_j_ruled_minimal(1, 2);
        assert_eq!(r.sup_over_4pi, rint(1));
        assert!(!r.attained);
        assert_eq!(r.witness.get("t"), Some(&WitnessItem::ToInfinity));
    }

    #[test]
    fn bl1_charts() {
        assert_eq!(phi_bl1_f0(&rint(2), &rint(2)).unwrap(), rint(1));
        assert_eq!(phi_bl1_fe(1, &rint(2), &rint(1)).unwrap(), rint(1));
        assert_eq!(phi_bl1_fe(3, &rint(2), &rint(1)).unwrap(), rat(11, 15));
        assert_eq!(sup_phi_bl1_fe(3).unwrap().sup_over_4pi, rat(11, 15));
        assert_eq!(sup_phi_bl1_f0().sup_over_4pi, rint(1));
        assert!(phi_bl1_f0(&rint(1), &rint(2)).is_err());
        assert!(phi_bl1_fe(0, &rint(2), &rint(1)).is_err());
    }

    #[test]
    fn margin_functions() {
        assert_eq!(
            d_minus_n_f0(&rint(1), &rat(1, 2), &rat(1, 2)).unwrap(),
            rint(0)
        );
        assert_eq!(
            d_minus_n_fe(1, &rat(1, 2), &rat(1, 2)).unwrap(),
            rint(0)
        );
        assert_eq!(d_minus_n_fe(2, &rat(1, 4), &rat(3, 4)).unwrap(), rint(1));
        assert_eq!(fe_boundary_poly(2, &rat(1, 4)), rint(1));
        assert_eq!(fe_boundary_poly(1, &rat(1, 2)), rint(0));
        assert!(d_minus_n_f0(&rat(1, 2), &rat(1, 4), &rat(1, 4)).is_err());
        assert!(d_minus_n_fe(1, &rat(1, 4), &rat(7, 8)).is_err());
    }

    #[test]
    fn margin_matches_boundary_poly() {
        for e in 1..=10u32 {
            for num in 1..=8i64 {
                let m = rat(num, 16);
                let z = rint(1) - &m;
                assert_eq!(
                    d_minus_n_fe(e, &m, &z).unwrap(),
                    fe_boundary_poly(e, &m),
                    "e = {e}, m = {m}"
                );
            }
        }
    }

    #[test]
    fn small_blowup_records() {
        let r = sup_small_blowup_fe(2, 1).unwrap();
        assert_eq!(r.sup_over_4pi, rat(9, 11));
        let r = sup_small_blowup_fe(3, 3).unwrap();
        assert_eq!(r.sup_over_4pi, rat(9, 13));
        let r = sup_small_blowup_fe(1, 1).unwrap();
        assert_eq!(r.sup_over_4pi, rint(1));
        // Agrees with the one-point closed form at k = 1.
        assert_eq!(r.sup_over_4pi, sup_phi_bl1_fe(1).unwrap().sup_over_4pi);
        assert!(sup_small_blowup_fe(2, 3).is_err());
        // At most 1 across the whole certified range.
        for e in 1..=50u32 {
            for k in 1..=e as usize {
                assert!(sup_small_blowup_fe(e, k).unwrap().sup_over_4pi <= rint(1));
            }
        }
    }

    #[test]
    fn nonrational_blowup_record() {
        let r = sup_ruled_blowup_nonrational(1).unwrap();
        assert_eq!(r.sup_over_4pi, rat(1, 2));
        assert!(!r.attained);
        assert_eq!(r.witness.get("t_i"), Some(&WitnessItem::At(rat(1, 2))));
        assert_eq!(r.witness.get("b"), Some(&WitnessItem::ToInfinity));
        assert_eq!(
            sup_ruled_blowup_nonrational(2).unwrap().sup_over_4pi,
            rat(1, 2)
        );
        assert!(sup_ruled_blowup_nonrational(0).is_err());
    }

    #[test]
    fn sup_record_json() {
        let r = sup_phi_p2(9).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["value"], "1/2");
        assert_eq!(v["attained"], false);
        assert_eq!(v["witness"]["m"], serde_json::json!({"to": "1/3", "from": "below"}));

        let r = sup_phi_p2(2).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["witness"]["t_i"], "1/3");
    }
}
