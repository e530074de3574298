//! Exact rational arithmetic.
//!
//! Every numeric quantity in this crate is a [`Rat`]: an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. There is no
//! floating-point representation anywhere in the crate; all comparisons and
//! case dispatches are exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rat = num_rational::BigRational;

/// Builds a `Rat` from an integer numerator/denominator pair.
///
/// Panics if `d == 0`; intended for literals in code and tests.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Builds an integral `Rat`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses a rational from its canonical text form `-?[0-9]+(/[0-9]+)?`.
///
/// The result is reduced to lowest terms, so `"4/6"` parses to `2/3`.
/// A zero denominator is reported as [`Error::ZeroDenominator`] rather than
/// a generic parse failure.
pub fn parse_rat(text: &str) -> Result<Rat, Error> {
    let (numer_text, denom_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };

    let numer = parse_int(numer_text, true).ok_or_else(|| Error::ParseRat(text.to_owned()))?;
    let denom = match denom_text {
        Some(d) => parse_int(d, false).ok_or_else(|| Error::ParseRat(text.to_owned()))?,
        None => BigInt::one(),
    };

    if denom.is_zero() {
        return Err(Error::ZeroDenominator(text.to_owned()));
    }
    Ok(Rat::new(numer, denom))
}

/// Renders a rational canonically: `"p/q"` in lowest terms, `"p"` when q = 1.
pub fn render_rat(value: &Rat) -> String {
    value.to_string()
}

fn parse_int(text: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match text.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => text,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let magnitude: BigInt = digits.parse().ok()?;
    Some(if text.starts_with('-') {
        -magnitude
    } else {
        magnitude
    })
}

/// True iff `value` lies in the closed unit interval `[0, 1]`.
pub fn in_unit_interval(value: &Rat) -> bool {
    !value.is_negative() && *value <= Rat::one()
}

/// True iff `value` lies in the half-open interval `(0, 1]`.
pub fn in_half_open_unit_interval(value: &Rat) -> bool {
    value.is_positive() && *value <= Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_fraction() {
        assert_eq!(parse_rat("1/2").unwrap(), rat(1, 2));
    }

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_rat("4/6").unwrap(), rat(2, 3));
        assert_eq!(render_rat(&parse_rat("4/6").unwrap()), "2/3");
    }

    #[test]
    fn parses_integer_shorthand() {
        assert_eq!(parse_rat("3").unwrap(), rat_int(3));
        assert_eq!(render_rat(&parse_rat("3").unwrap()), "3");
    }

    #[test]
    fn parses_negative() {
        assert_eq!(parse_rat("-7/2").unwrap(), rat(-7, 2));
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(matches!(parse_rat("1/0"), Err(Error::ZeroDenominator(_))));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "/2", "1/", "1/-2", "a/b", "1.5", "+3", "1 / 2", "--1"] {
            assert!(
                matches!(parse_rat(bad), Err(Error::ParseRat(_))),
                "expected parse failure for {bad:?}"
            );
        }
    }

    #[test]
    fn render_parse_round_trip() {
        for r in [rat(1, 2), rat(-3, 7), rat_int(0), rat_int(-4), rat(22, 7)] {
            assert_eq!(parse_rat(&render_rat(&r)).unwrap(), r);
        }
    }
}
