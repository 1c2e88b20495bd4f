//! `"p/q"` string form of exact rationals (`"p"` when `q = 1`).

use std::fmt::Display;
use std::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

use crate::scalar::IntegerScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

pub fn format_rational<T: IntegerScalar + Display>(x: &Ratio<T>) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p/q"` or `"p"`; the result is reduced to lowest terms with `q > 0`.
pub fn parse_rational<T: IntegerScalar + FromStr>(s: &str) -> Result<Ratio<T>, ParseRationalError> {
    let t = s.trim();
    let bad = || ParseRationalError::Malformed(s.to_string());
    let int = |p: &str| -> Result<T, ParseRationalError> {
        let p = p.trim();
        let digits = p.strip_prefix(['-', '+']).unwrap_or(p);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        p.parse::<T>().map_err(|_| bad())
    };
    match t.split_once('/') {
        None => Ok(Ratio::from_integer(int(t)?)),
        Some((p, q)) => {
            let (p, q) = (int(p)?, int(q)?);
            if q.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Ratio::new(p, q))
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    #[test]
    fn formats_lowest_terms() {
        let x = BigRational::new(BigInt::from(4), BigInt::from(-6));
        assert_eq!(format_rational(&x), "-2/3");
        assert_eq!(format_rational(&BigRational::from_integer(BigInt::from(5))), "5");
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "1/", "/2", "a", "1/2/3", "1.5", "--1"] {
            assert!(parse_rational::<BigInt>(s).is_err(), "{s}");
        }
        assert!(matches!(
            parse_rational::<BigInt>("3/0"),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert_eq!(parse_rational::<i64>("6/4").unwrap(), Ratio::new(3, 2));
    }

    proptest! {
        #[test]
        fn string_form_round_trips(p in -1000i64..1000, q in 1i64..1000) {
            let x = Ratio::new(BigInt::from(p), BigInt::from(q));
            prop_assert_eq!(parse_rational::<BigInt>(&format_rational(&x)).unwrap(), x);
        }
    }
}
