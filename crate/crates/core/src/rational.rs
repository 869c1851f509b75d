//! Exact rational scalars and their string form.
//!
//! Every coordinate in the crate is a [`Rational`]. The textual form is the
//! decimal integer `p` or the fraction `p/q`, which is also what the JSON
//! documents carry.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub use num_rational::BigRational as Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p` or `p/q` (optional leading `-` on `p`).
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let bad = || ParseRationalError::Invalid(text.to_string());
    let valid_int = |s: &str, allow_sign: bool| {
        let digits = if allow_sign {
            s.strip_prefix('-').unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return Err(bad());
    }
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = match den {
        Some(d) => {
            if !valid_int(d, false) {
                return Err(bad());
            }
            BigInt::from_str(d).map_err(|_| bad())?
        }
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(n, d))
}

/// `p` when the denominator is one, `p/q` otherwise.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rounds to a fixed number of decimals (ties away from zero) and formats
/// without going through floating point.
pub fn to_fixed(value: &Rational, decimals: u32) -> String {
    let scale = BigInt::from(10).pow(decimals);
    let scaled = value * Rational::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let twice = r.abs() * 2;
    let rounded = if twice >= *scaled.denom() {
        if scaled.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    };
    let negative = rounded.is_negative();
    let digits = rounded.abs().to_string();
    let decimals = decimals as usize;
    let padded = format!("{digits:0>width$}", width = decimals + 1);
    let (whole, fractional) = padded.split_at(padded.len() - decimals);
    let sign = if negative { "-" } else { "" };
    if decimals == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{fractional}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational(" 80/17 ").unwrap(), frac(80, 17));
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn formats_in_lowest_terms() {
        assert_eq!(format_rational(&frac(4, 8)), "1/2");
        assert_eq!(format_rational(&frac(-6, 3)), "-2");
    }

    #[test]
    fn fixed_point_rounding() {
        assert_eq!(to_fixed(&frac(1, 3), 3), "0.333");
        assert_eq!(to_fixed(&frac(2, 3), 3), "0.667");
        assert_eq!(to_fixed(&frac(-2, 3), 3), "-0.667");
        assert_eq!(to_fixed(&frac(1, 2000), 3), "0.001");
        assert_eq!(to_fixed(&frac(-1, 3000), 3), "0.000");
        assert_eq!(to_fixed(&int(12), 3), "12.000");
        assert_eq!(to_fixed(&frac(-5, 2), 0), "-3");
    }
}
