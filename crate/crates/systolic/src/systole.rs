//! The holomorphic 2-systole over a curve list and the scale-invariant
//! functional built from it.
//!
//! For a positive class `ω` the systole over a list is the minimum of the
//! pairings `ω·C`; the functional multiplies it by the normalized average
//! scalar curvature `Ŝ(ω) = 4π c₁·ω / ω²`. Both are exact rationals in units
//! of 4π; multiply by 4π only when rendering.
//!
//! Which curves are admitted matters: a certificate always records the list
//! that produced it, and a coarse list yields an upper bound for the true
//! systole rather than the infimum over all effective curves.

use crate::curves::{CurveClass, CurveList, Provenance};
use crate::lattice::{DivisorClass, KahlerFailure, LatticeError, SurfaceModel};
use crate::rat::{rat, render, rint, to_f64, Rat};
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SystoleError {
    #[error("class fails the positivity screen: {0}")]
    NotKahler(KahlerFailure),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),
}

/// The minimal pairing value over a list, every curve achieving it, and the
/// provenance of the list that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystoleCertificate {
    pub value: Rat,
    pub minimizers: Vec<CurveClass>,
    pub provenance: Provenance,
}

impl Serialize for SystoleCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SystoleCertificate", 3)?;
        st.serialize_field("value", &render(&self.value))?;
        st.serialize_field(
            "minimizers",
            &self.minimizers.iter().map(|c| c.name().to_string()).collect::<Vec<_>>(),
        )?;
        st.serialize_field("provenance", &self.provenance)?;
        st.end()
    }
}

/// The functional in units of 4π together with its two factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JValue {
    pub value_over_4pi: Rat,
    pub systole: SystoleCertificate,
    pub shat_over_4pi: Rat,
}

impl JValue {
    /// The value with the 4π restored, as a float for presentation.
    pub fn float_4pi(&self) -> f64 {
        to_f64(&self.value_over_4pi) * 4.0 * std::f64::consts::PI
    }
}

impl Serialize for JValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Sys<'a> {
            value: String,
            minimizers: Vec<&'a str>,
        }
        let mut st = s.serialize_struct("JValue", 4)?;
        st.serialize_field("value_over_4pi", &render(&self.value_over_4pi))?;
        st.serialize_field("float_4pi", &self.float_4pi())?;
        st.serialize_field(
            "systole",
            &Sys {
                value: render(&self.systole.value),
                minimizers: self.systole.minimizers.iter().map(|c| c.name()).collect(),
            },
        )?;
        st.serialize_field("shat_over_4pi", &render(&self.shat_over_4pi))?;
        st.end()
    }
}

/// Minimum of `ω·C` over the list, with all achieving curves in list order.
///
/// The class must pass [`SurfaceModel::is_kahler`] on the same list; the
/// failure witness is propagated otherwise.
pub fn hol_systole(
    model: &SurfaceModel,
    omega: &DivisorClass,
    list: &CurveList,
) -> Result<SystoleCertificate, SystoleError> {
    match model.is_kahler(omega, list)? {
        crate::lattice::KahlerVerdict::Kahler => {}
        crate::lattice::KahlerVerdict::NotKahler(failure) => {
            return Err(SystoleError::NotKahler(failure));
        }
    }
    let mut best: Option<Rat> = None;
    let mut minimizers: Vec<CurveClass> = Vec::new();
    for curve in list.curves() {
        let value = model.pair_curve(omega, curve)?;
        match &best {
            Some(b) if value > *b => {}
            Some(b) if value == *b => minimizers.push(curve.clone()),
            _ => {
                best = Some(value);
                minimizers = vec![curve.clone()];
            }
        }
    }
    Ok(SystoleCertificate {
        value: best.expect("list verified nonempty by the screen"),
        minimizers,
        provenance: list.provenance(),
    })
}

/// `J(ω) = systole(ω) · Ŝ(ω)` in units of 4π, exact.
pub fn j_functional(
    model: &SurfaceModel,
    omega: &DivisorClass,
    list: &CurveList,
) -> Result<JValue, SystoleError> {
    let systole = hol_systole(model, omega, list)?;
    let shat = model.average_scalar_over_4pi(omega)?;
    Ok(JValue {
        value_over_4pi: &systole.value * &shat,
        systole,
        shat_over_4pi: shat,
    })
}

/// Checks the homogeneity laws exactly: `J(λω) = J(ω)` and
/// `systole(λω) = λ·systole(ω)`.
pub fn scale_check(
    model: &SurfaceModel,
    omega: &DivisorClass,
    list: &CurveList,
    lambda: &Rat,
) -> Result<bool, SystoleError> {
    if !(lambda > &Rat::zero()) {
        return Err(SystoleError::NonPositiveScale(render(lambda)));
    }
    let base = j_functional(model, omega, list)?;
    let scaled = j_functional(model, &omega.scale(lambda), list)?;
    Ok(scaled.value_over_4pi == base.value_over_4pi
        && scaled.systole.value == lambda * &base.systole.value)
}

/// Areas in the split-metric example on a product of a rational fibre and a
/// genus-`g ≥ 2` base, in units of π.
///
/// The fibre has area π, the base `4(g−1)/(4−ε)·π`, and the constant-scalar
/// product metric gives `min S · sys₂ = ε·π < 4π`. The base is always the
/// larger of the two curves, so the systole is realized by the fibre.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductExample {
    #[serde(with = "crate::rat::rat_string")]
    pub product_over_pi: Rat,
    #[serde(with = "crate::rat::rat_string")]
    pub fiber_area_over_pi: Rat,
    #[serde(with = "crate::rat::rat_string")]
    pub base_area_over_pi: Rat,
}

/// Evaluates the product example at genus `g ≥ 2` and `ε ∈ (0, 4)`.
pub fn product_example(g: u32, epsilon: &Rat) -> Result<ProductExample, SystoleError> {
    if g < 2 {
        return Err(SystoleError::ParamOutOfRange(format!(
            "genus must be >= 2, got {g}"
        )));
    }
    if !(epsilon > &Rat::zero() && epsilon < &rint(4)) {
        return Err(SystoleError::ParamOutOfRange(format!(
            "epsilon must lie in (0, 4), got {}",
            render(epsilon)
        )));
    }
    let base = rint(4 * (i64::from(g) - 1)) / (rint(4) - epsilon);
    let fiber = rint(1);
    debug_assert!(base > fiber, "base curve must dominate the fibre");
    Ok(ProductExample {
        product_over_pi: epsilon.clone(),
        fiber_area_over_pi: fiber,
        base_area_over_pi: base,
    })
}

/// Convenience: `p/q` as an exact rational scale factor in tests and CLIs.
pub fn ratio(p: i64, q: i64) -> Rat {
    rat(p, q)
}

/// Render `value_over_4pi` as "p/q x 4pi" together with a 6-significant-digit
/// float, the presentation used by the command-line tools.
pub fn render_over_4pi(value: &Rat) -> String {
    let float = value.to_f64().unwrap_or(f64::NAN) * 4.0 * std::f64::consts::PI;
    format!(
        "{} x 4pi = {}",
        render(value),
        crate::rat::format_sig(float, 6)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{coarse_curves, mori_generators};
    use crate::lattice::{build_model, SurfaceFamily};

    fn p2(k: usize) -> SurfaceModel {
        build_model(SurfaceFamily::ProjectivePlane, k).unwrap()
    }

    fn fe(e: u32, k: usize) -> SurfaceModel {
        build_model(SurfaceFamily::Hirzebruch { e }, k).unwrap()
    }

    #[test]
    fn plane_systole_is_the_scale() {
        let m = p2(0);
        let list = mori_generators(&m).into_list().unwrap();
        let w = DivisorClass::new(vec![rint(5)]);
        let cert = hol_systole(&m, &w, &list).unwrap();
        assert_eq!(cert.value, rint(5));
        assert_eq!(cert.minimizers.len(), 1);
        assert_eq!(cert.minimizers[0].name(), "H");
    }

    #[test]
    fn one_blowup_tie_is_reported() {
        let m = p2(1);
        let list = mori_generators(&m).into_list().unwrap();
        let w = DivisorClass::new(vec![rint(1), rat(-1, 2)]);
        let cert = hol_systole(&m, &w, &list).unwrap();
        assert_eq!(cert.value, rat(1, 2));
        let names: Vec<_> = cert.minimizers.iter().map(|c| c.name()).collect();
        assert_eq!(names, vec!["E_1", "H-E_1"]);
    }

    #[test]
    fn hirzebruch_systole() {
        let m = fe(2, 0);
        let list = mori_generators(&m).into_list().unwrap();
        let w = DivisorClass::from_ints(&[1, 3]);
        let cert = hol_systole(&m, &w, &list).unwrap();
        assert_eq!(cert.value, rint(1));
        let names: Vec<_> = cert.minimizers.iter().map(|c| c.name()).collect();
        assert_eq!(names, vec!["F", "C_0"]);
    }

    #[test]
    fn non_kahler_input_reports_witness() {
        let m = p2(1);
        let list = mori_generators(&m).into_list().unwrap();
        let w = DivisorClass::from_ints(&[1, -2]);
        match hol_systole(&m, &w, &list) {
            Err(SystoleError::NotKahler(KahlerFailure::NonPositiveCurve { curve, .. })) => {
                assert_eq!(curve.name(), "H-E_1");
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn j_functional_examples() {
        let m = p2(0);
        let list = mori_generators(&m).into_list().unwrap();
        for a in [1, 2, 7] {
            let w = DivisorClass::new(vec![rint(a)]);
            let j = j_functional(&m, &w, &list).unwrap();
            assert_eq!(j.value_over_4pi, rint(3));
        }

        let m = p2(1);
        let list = mori_generators(&m).into_list().unwrap();
        let w = DivisorClass::new(vec![rint(1), rat(-1, 2)]);
        let j = j_functional(&m, &w, &list).unwrap();
        assert_eq!(j.value_over_4pi, rat(5, 3));

        let m = p2(2);
        let list = mori_generators(&m).into_list().unwrap();
        let w = DivisorClass::new(vec![rint(1), rat(-1, 3), rat(-1, 3)]);
        let j = j_functional(&m, &w, &list).unwrap();
        assert_eq!(j.value_over_4pi, rint(1));
        assert_eq!(&j.systole.value * &j.shat_over_4pi, j.value_over_4pi);
    }

    #[test]
    fn scale_invariance_examples() {
        let m = p2(0);
        let list = mori_generators(&m).into_list().unwrap();
        let w = DivisorClass::new(vec![rint(1)]);
        assert!(scale_check(&m, &w, &list, &rint(7)).unwrap());

        let m = p2(1);
        let list = mori_generators(&m).into_list().unwrap();
        let w = DivisorClass::new(vec![rint(1), rat(-1, 2)]);
        assert!(scale_check(&m, &w, &list, &rat(2, 3)).unwrap());

        let m = fe(1, 0);
        let list = mori_generators(&m).into_list().unwrap();
        let w = DivisorClass::from_ints(&[1, 2]);
        assert!(scale_check(&m, &w, &list, &rint(5)).unwrap());

        assert!(matches!(
            scale_check(&m, &w, &list, &rint(0)),
            Err(SystoleError::NonPositiveScale(_))
        ));
    }

    #[test]
    fn systole_monotone_under_supersets() {
        let m = p2(5);
        let coarse = coarse_curves(&m);
        let refined = mori_generators(&m).into_list().unwrap();
        let merged = coarse.union(&refined, &m);
        let w = DivisorClass::new(vec![
            rint(1),
            rat(-1, 5),
            rat(-1, 6),
            rat(-1, 7),
            rat(-1, 8),
            rat(-1, 9),
        ]);
        let over_coarse = hol_systole(&m, &w, &coarse).unwrap().value;
        let over_merged = hol_systole(&m, &w, &merged).unwrap().value;
        assert!(over_merged <= over_coarse);
    }

    #[test]
    fn product_example_values() {
        let ex = product_example(2, &rint(2)).unwrap();
        assert_eq!(ex.product_over_pi, rint(2));
        assert_eq!(ex.fiber_area_over_pi, rint(1));
        assert_eq!(ex.base_area_over_pi, rint(2));

        let ex = product_example(3, &rat(39, 10)).unwrap();
        assert_eq!(ex.product_over_pi, rat(39, 10));
        // 4(g-1)/(4-eps) with g=3, eps=39/10: 8/(1/10) = 80.
        assert_eq!(ex.base_area_over_pi, rint(80));

        let ex = product_example(2, &rint(1)).unwrap();
        assert_eq!(ex.base_area_over_pi, rat(4, 3));
        assert!(ex.base_area_over_pi > ex.fiber_area_over_pi);

        assert!(product_example(1, &rint(2)).is_err());
        assert!(product_example(2, &rint(4)).is_err());
        assert!(product_example(2, &rint(0)).is_err());
    }

    #[test]
    fn jvalue_json_shape() {
        let m = p2(1);
        let list = mori_generators(&m).into_list().unwrap();
        let w = DivisorClass::new(vec![rint(1), rat(-1, 2)]);
        let j = j_functional(&m, &w, &list).unwrap();
        let v = serde_json::to_value(&j).unwrap();
        assert_eq!(v["value_over_4pi"], "5/3");
        assert_eq!(v["systole"]["value"], "1/2");
        assert_eq!(v["systole"]["minimizers"], serde_json::json!(["E_1", "H-E_1"]));
        assert_eq!(v["shat_over_4pi"], "10/3");
        let f = v["float_4pi"].as_f64().unwrap();
        assert!((f - 5.0 / 3.0 * 4.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn rendering() {
        assert_eq!(render_over_4pi(&rat(5, 3)), "5/3 x 4pi = 20.9440");
    }
}
