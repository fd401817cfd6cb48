//! Exact scalar arithmetic. Every number in this crate is an
//! arbitrary-precision rational; nothing is ever rounded.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The coefficient field: arbitrary-precision rationals.
pub type ExactScalar = BigRational;

/// Integer-valued scalar.
pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// The fraction p/q as a scalar (q must be nonzero).
pub fn frac(p: i64, q: i64) -> ExactScalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `p/q` or a plain (optionally signed) integer.
pub fn parse_scalar(s: &str) -> Result<ExactScalar> {
    let t = s.trim();
    t.parse::<BigRational>()
        .map_err(|e| Error::Parse(format!("invalid rational `{t}`: {e}")))
}

/// Render as a plain integer when the denominator is 1, else `p/q`.
/// Output is always exact; decimal notation is never used.
pub fn format_scalar(x: &ExactScalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// x^e by repeated squaring (e >= 0).
pub fn scalar_pow(x: &ExactScalar, e: u32) -> ExactScalar {
    let mut base = x.clone();
    let mut e = e;
    let mut acc = ExactScalar::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// True when x is a nonnegative integer.
pub fn is_natural(x: &ExactScalar) -> bool {
    x.is_integer() && !x.numer().is_negative()
}

use num_traits::Signed;

/// Convert an exact integer scalar to usize, if it fits.
pub fn to_usize(x: &ExactScalar) -> Option<usize> {
    use num_traits::ToPrimitive;
    if x.is_integer() {
        x.numer().to_usize()
    } else {
        None
    }
}

/// Zero constant, spelled for readability at call sites.
pub fn zero() -> ExactScalar {
    ExactScalar::zero()
}

/// One constant, spelled for readability at call sites.
pub fn one() -> ExactScalar {
    ExactScalar::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "5/3", "-22/7"] {
            let x = parse_scalar(s).unwrap();
            assert_eq!(format_scalar(&x), s);
        }
        // non-canonical input normalizes
        assert_eq!(format_scalar(&parse_scalar("4/2").unwrap()), "2");
        assert_eq!(format_scalar(&parse_scalar("-6/4").unwrap()), "-3/2");
        assert!(parse_scalar("1.5").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn pow_small_cases() {
        assert_eq!(scalar_pow(&frac(2, 3), 0), one());
        assert_eq!(scalar_pow(&frac(2, 3), 3), frac(8, 27));
        assert_eq!(scalar_pow(&int(-2), 5), int(-32));
    }
}
