//! Exact rational scalars.
//!
//! All symbolic computation in this crate happens over ℚ. The scalar type is
//! [`num_rational::BigRational`], re-exported as [`Rat`]: it keeps the
//! denominator positive, stays fully reduced, and represents zero as 0/1,
//! which is exactly the canonical form the serialization contract expects
//! ("a/b", or "a" when the denominator is 1).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Rational from a machine integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational a/b from machine integers. Panics if `b == 0`.
pub fn rat(a: i64, b: i64) -> Rat {
    Rat::new(BigInt::from(a), BigInt::from(b))
}

/// Parse the wire form "a/b" or "a".
pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|e| Error::Parse(format!("rational {s:?}: {e}")))
}

/// Wire form of a rational: "a/b", or "a" when the denominator is 1.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Extract an integer value, or report which context demanded one.
pub fn rat_to_bigint(r: &Rat, context: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::IntegralityViolation(format!(
            "{context}: {r} is not an integer"
        )))
    }
}

/// n! as a big integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Binomial coefficient C(n, k) in arbitrary precision.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// (2d−1)!! = (2d−1)(2d−3)⋯3·1, with the empty product for d = 0.
pub fn double_factorial_odd(d: u32) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = 1i64;
    while k <= (2 * d as i64 - 1) {
        acc *= BigInt::from(k);
        k += 2;
    }
    acc
}

/// Möbius function of n ≥ 1, by trial factorization.
pub fn moebius(n: u32) -> i32 {
    assert!(n >= 1, "moebius needs n >= 1");
    let mut m = n;
    let mut factors = 0;
    let mut p = 2u32;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0; // squareful
            }
            factors += 1;
        }
        p += 1;
    }
    if m > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Divisors of n ≥ 1 in increasing order.
pub fn divisors(n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..=n).filter(|e| n.is_multiple_of(*e)).collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format_round_trips() {
        for s in ["3/4", "-3/4", "0", "17", "-2/5"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        // unreduced and padded inputs normalize
        assert_eq!(format_rat(&parse_rat(" 6/4 ").unwrap()), "3/2");
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("q").is_err());
    }

    #[test]
    fn zero_is_zero_over_one() {
        let z = parse_rat("0/5").unwrap();
        assert!(z.is_zero());
        assert_eq!(format_rat(&z), "0");
    }

    #[test]
    fn moebius_small_values() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expect.iter().enumerate() {
            assert_eq!(moebius(i as u32 + 1), m, "mu({})", i + 1);
        }
    }

    #[test]
    fn binom_and_factorials() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(3, 5), BigInt::zero());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(double_factorial_odd(3), BigInt::from(15));
        assert_eq!(double_factorial_odd(4), BigInt::from(105));
        assert_eq!(double_factorial_odd(1), BigInt::one());
    }

    #[test]
    fn divisors_of_12() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
