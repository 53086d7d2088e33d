//! Exact rational scalars and their `"p/q"` text form.
//!
//! All probabilities in the crate are [`num_rational::BigRational`]: always
//! normalized, canonical sign, arbitrary precision. The text form used in
//! files and reports keeps an explicit denominator (`"1/1"`, `"729/1000"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use num_rational::BigRational as Rational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    BigRational::zero()
}

pub fn one() -> Rational {
    BigRational::one()
}

/// Renders a rational as `numer/denom`, denominator always explicit.
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_ratio(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_keeps_denominator() {
        assert_eq!(format_ratio(&one()), "1/1");
        assert_eq!(format_ratio(&ratio(729, 1000)), "729/1000");
        assert_eq!(format_ratio(&ratio(2, 4)), "1/2");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["1/1", "729/1000", "0/1", "-3/7"] {
            let r = parse_ratio(s).unwrap();
            assert_eq!(format_ratio(&r), s);
        }
        assert_eq!(parse_ratio("2"), Some(ratio(2, 1)));
        assert_eq!(parse_ratio("1/0"), None);
    }
}
