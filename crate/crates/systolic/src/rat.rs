//! Exact rational scalars and their `"p/q"` wire format.
//!
//! Every quantity the library computes — pairings, systoles, the functional
//! in units of 4π — is a [`Rat`]. Floats only appear at the presentation
//! layer, via [`to_f64`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number used throughout the crate.
pub type Rat = BigRational;

/// Builds `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Builds the integer `n` as an exact rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`: expected `p` or `p/q` with integer parts")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"p"` or `"p/q"` into an exact rational.
///
/// Floating-point literals are rejected; exactness is end to end.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRatError::Empty);
    }
    let mut parts = s.splitn(2, '/');
    let num = parts.next().ok_or(ParseRatError::Empty)?;
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| ParseRatError::Invalid(s.to_string()))?;
    match parts.next() {
        None => Ok(Rat::from_integer(num)),
        Some(den) => {
            let den: BigInt = den
                .trim()
                .parse()
                .map_err(|_| ParseRatError::Invalid(s.to_string()))?;
            if den.is_zero() {
                return Err(ParseRatError::ZeroDenominator(s.to_string()));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Renders a rational canonically: reduced, `"p"` when integral, else `"p/q"`
/// with a positive denominator.
pub fn render(r: &Rat) -> String {
    if r.denom().is_zero() {
        unreachable!("BigRational keeps a nonzero denominator");
    }
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest `f64` to the exact value.
pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Formats `v` with `sig` significant digits, for human-readable tables.
pub fn format_sig(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return format!("{:.*}", sig.saturating_sub(1), 0.0);
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Snaps `x` to the nearest rational with denominator exactly `den`.
pub fn snap_to_denominator(x: f64, den: u32) -> Rat {
    let p = (x * f64::from(den)).round();
    // Clamp to i64 range; snapped values here are small by construction.
    let p = if p.is_finite() { p as i64 } else { 0 };
    rat(p, i64::from(den))
}

/// Serde helpers that read and write rationals as `"p/q"` strings.
pub mod rat_string {
    use super::{parse_rat, render, Rat};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&render(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(de::Error::custom)
    }
}

/// Serde helpers for `Vec<Rat>` as `["p/q", ...]`.
pub mod rat_vec_string {
    use super::{parse_rat, render, Rat};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| render(r)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        items
            .into_iter()
            .map(|s| parse_rat(&s).map_err(de::Error::custom))
            .collect()
    }
}

/// Sign of a rational, used for derivative-sign trichotomies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rat) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn of_i64(n: i64) -> Sign {
        match n.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }

    /// Sign of an `f64` with everything inside `[-tol, tol]` counted as zero.
    pub fn of_f64(v: f64, tol: f64) -> Sign {
        if v.abs() <= tol {
            Sign::Zero
        } else if v > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["3", "-1", "1/2", "-7/3", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(render(&r), s);
        }
        // Non-canonical inputs normalize.
        assert_eq!(render(&parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(render(&parse_rat("3/-6").unwrap()), "-1/2");
        assert_eq!(render(&parse_rat(" 4/2 ").unwrap()), "2");
    }

    #[test]
    fn floats_rejected() {
        assert!(parse_rat("0.5").is_err());
        assert!(parse_rat("1e-3").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn sig_digit_formatting() {
        assert_eq!(format_sig(20.943_951_023_931_953, 6), "20.9440");
        assert_eq!(format_sig(0.5, 6), "0.500000");
        assert_eq!(format_sig(12566.370_614, 6), "12566.4");
        assert_eq!(format_sig(0.0, 6), "0.00000");
    }

    #[test]
    fn snapping() {
        assert_eq!(snap_to_denominator(0.49999, 2), rat(1, 2));
        assert_eq!(snap_to_denominator(0.3333, 3), rat(1, 3));
        assert_eq!(snap_to_denominator(2.501, 4), rat(10, 4));
    }
}
