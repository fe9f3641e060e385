//! Arbitrary-precision rationals and their text form.
//!
//! The text form is `"p"` for integers and `"p/q"` otherwise, with `q > 0`
//! and the fraction in lowest terms; both shapes are accepted on input.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn rat_i(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// num/den as a rational; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let trimmed = s.trim();
    let malformed = || ParseRationalError::Malformed(s.to_string());
    match trimmed.split_once('/') {
        None => {
            let n: BigInt = trimmed.parse().map_err(|_| malformed())?;
            Ok(Rational::from_integer(n))
        }
        Some((ns, ds)) => {
            let n: BigInt = ns.trim().parse().map_err(|_| malformed())?;
            let d: BigInt = ds.trim().parse().map_err(|_| malformed())?;
            if d.is_zero() {
                Err(ParseRationalError::ZeroDenominator(s.to_string()))
            } else {
                Ok(Rational::new(n, d))
            }
        }
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["0", "7", "-3", "1/2", "-22/7", "100000000000000000001/3"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("3/-6").unwrap(), rat(-1, 2));
        assert_eq!(format_rational(&parse_rational("-8/4").unwrap()), "-2");
        assert_eq!(parse_rational(" 5 / 10 ").unwrap(), rat(1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator("1/0".into()))
        );
        assert!(matches!(parse_rational("abc"), Err(ParseRationalError::Malformed(_))));
        assert!(matches!(parse_rational("1/2/3"), Err(ParseRationalError::Malformed(_))));
        assert!(matches!(parse_rational(""), Err(ParseRationalError::Malformed(_))));
        assert!(matches!(parse_rational("1.5"), Err(ParseRationalError::Malformed(_))));
    }
}
