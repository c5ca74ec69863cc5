//! Dense univariate polynomials in q over ℚ.
//!
//! Coefficients are stored ascending: index i holds the coefficient of q^i.
//! The vector never ends in a zero, so the zero polynomial is the empty
//! vector and `degree()` returns `None` for it (the "minus infinity"
//! sentinel).

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::{factorial, format_rat, parse_rat, rat_int, Rat};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyQ {
    coeffs: Vec<Rat>,
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyQ::constant(Rat::one())
    }

    /// The variable q itself.
    pub fn q() -> Self {
        PolyQ::monomial(Rat::one(), 1)
    }

    pub fn constant(c: Rat) -> Self {
        PolyQ::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rat, exp: usize) -> Self {
        if c.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![Rat::zero(); exp + 1];
        coeffs[exp] = c;
        PolyQ { coeffs }
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        PolyQ::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of q^i (zero beyond the stored range).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &Rat) -> PolyQ {
        if s.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: usize) -> PolyQ {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyQ { coeffs }
    }

    /// Drop all terms of exponent > n.
    pub fn truncated(&self, n: usize) -> PolyQ {
        PolyQ::from_coeffs(self.coeffs.iter().take(n + 1).cloned().collect())
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> PolyQ {
        match self.leading() {
            None => PolyQ::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, mut e: u32) -> PolyQ {
        let mut base = self.clone();
        let mut acc = PolyQ::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: self = q·div + rem with deg rem < deg div.
    /// Panics if `div` is zero.
    pub fn divrem(&self, div: &PolyQ) -> (PolyQ, PolyQ) {
        let dd = div.degree().expect("division by zero polynomial");
        let lc_inv = div.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PolyQ::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let f = &rem[i] * &lc_inv;
            for j in 0..dd {
                let t = &f * &div.coeffs[j];
                rem[i - dd + j] -= t;
            }
            rem[i] = Rat::zero();
            quot[i - dd] = f;
        }
        (PolyQ::from_coeffs(quot), PolyQ::from_coeffs(rem))
    }

    /// Division known to be exact; errors if a remainder survives.
    pub fn exact_div(&self, div: &PolyQ) -> Result<PolyQ> {
        let (q, r) = self.divrem(div);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InternalInconsistency(format!(
                "expected exact division, remainder {r}"
            )))
        }
    }

    /// Monic gcd by the Euclidean algorithm over ℚ; gcd(0, 0) = 0.
    pub fn gcd(a: &PolyQ, b: &PolyQ) -> PolyQ {
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        while !r1.is_zero() {
            let r = r0.divrem(&r1).1;
            r0 = r1;
            r1 = r;
        }
        r0.monic()
    }

    /// Falling-factorial binomial: P(P−1)⋯(P−m+1)/m!, with the empty
    /// product 1 for m = 0.
    pub fn binomial(&self, m: u32) -> PolyQ {
        let mut acc = PolyQ::one();
        for i in 0..m {
            acc = &acc * &(self - &PolyQ::constant(rat_int(i as i64)));
        }
        acc.scale(&Rat::from_integer(factorial(m)).recip())
    }

    /// Rising-factorial multichoose: P(P+1)⋯(P+m−1)/m!.
    pub fn multichoose(&self, m: u32) -> PolyQ {
        let mut acc = PolyQ::one();
        for i in 0..m {
            acc = &acc * &(self + &PolyQ::constant(rat_int(i as i64)));
        }
        acc.scale(&Rat::from_integer(factorial(m)).recip())
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        PolyQ::from_coeffs(coeffs)
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        PolyQ::from_coeffs(coeffs)
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        PolyQ::from_coeffs(coeffs)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for PolyQ {
            type Output = PolyQ;
            fn $method(self, rhs: PolyQ) -> PolyQ {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        -&self
    }
}

/// One printed term, e.g. `q`, `-3q^2`, `(1/3)q^3`, `7`.
pub(crate) fn term_string(c: &Rat, exp: i64, lead: bool) -> String {
    let mag = c.abs();
    let neg = c.is_negative();
    let coeff = if mag.is_one() && exp != 0 {
        String::new()
    } else if mag.is_integer() {
        mag.to_string()
    } else {
        format!("({mag})")
    };
    let var = match exp {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{exp}"),
    };
    let body = format!("{coeff}{var}");
    if lead {
        if neg {
            // fold the sign into the fraction so heads read "(-1/3)q"
            if mag.is_integer() {
                format!("-{body}")
            } else {
                format!("(-{mag}){var}")
            }
        } else {
            body
        }
    } else if neg {
        format!(" - {body}")
    } else {
        format!(" + {body}")
    }
}

/// Ascending-power rendering: "(-1/3)q + (1/3)q^3".
impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write!(f, "{}", term_string(c, i as i64, first))?;
            first = false;
        }
        Ok(())
    }
}

/// Descending-power rendering, used for denominators: "q^3 - 3q^2 + 3q - 1".
pub fn display_descending(p: &PolyQ) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for i in (0..p.coeffs.len()).rev() {
        let c = &p.coeffs[i];
        if c.is_zero() {
            continue;
        }
        out.push_str(&term_string(c, i as i64, first));
        first = false;
    }
    out
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyQ({self})")
    }
}

/// Wire form: JSON array of rational strings, ascending exponent.
impl Serialize for PolyQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs
            .iter()
            .map(format_rat)
            .collect::<Vec<_>>()
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolyQ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let coeffs = strings
            .iter()
            .map(|s| parse_rat(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(PolyQ::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(coeffs: &[i64]) -> PolyQ {
        PolyQ::from_i64_coeffs(coeffs)
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(PolyQ::zero().degree(), None);
        assert_eq!(p(&[0, 0, 0]).degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
        assert_eq!(PolyQ::q().degree(), Some(1));
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 2]); // 1 + 2q
        let b = p(&[0, 0, 3]); // 3q^2
        assert_eq!(&a + &b, p(&[1, 2, 3]));
        assert_eq!(&a * &b, p(&[0, 0, 3, 6]));
        assert_eq!(&a - &a, PolyQ::zero());
        assert_eq!(-&a, p(&[-1, -2]));
        assert_eq!(a.pow(2), p(&[1, 4, 4]));
    }

    #[test]
    fn divrem_and_exact_division() {
        // (q^6 - q^3) / (q - 1) = q^5 + q^4 + q^3
        let num = &p(&[0, 0, 0, -1]) + &PolyQ::monomial(Rat::one(), 6);
        let den = p(&[-1, 1]);
        let q = num.exact_div(&den).unwrap();
        assert_eq!(q, p(&[0, 0, 0, 1, 1, 1]));

        let (quot, rem) = p(&[1, 0, 1]).divrem(&p(&[1, 1]));
        assert_eq!(&(&quot * &p(&[1, 1])) + &rem, p(&[1, 0, 1]));
        assert!(p(&[1, 0, 1]).exact_div(&p(&[1, 1])).is_err());
    }

    #[test]
    fn gcd_is_monic() {
        // gcd(q^2-1, q^2-2q+1) = q-1
        let g = PolyQ::gcd(&p(&[-1, 0, 1]), &p(&[1, -2, 1]));
        assert_eq!(g, p(&[-1, 1]));
        let g2 = PolyQ::gcd(&p(&[-2, 0, 2]), &p(&[2, -4, 2]));
        assert_eq!(g2, p(&[-1, 1]));
        assert_eq!(PolyQ::gcd(&PolyQ::zero(), &PolyQ::zero()), PolyQ::zero());
        assert_eq!(PolyQ::gcd(&p(&[0, 3]), &PolyQ::zero()), p(&[0, 1]));
    }

    #[test]
    fn binomial_examples() {
        // C(q, 2) = (q^2 - q)/2
        assert_eq!(
            PolyQ::q().binomial(2),
            PolyQ::from_coeffs(vec![Rat::zero(), rat(-1, 2), rat(1, 2)])
        );
        assert_eq!(PolyQ::q().binomial(0), PolyQ::one());
        assert_eq!(p(&[0, 1, 1]).binomial(1), p(&[0, 1, 1]));
    }

    #[test]
    fn multichoose_examples() {
        // ((q; 3)) = (q^3 + 3q^2 + 2q)/6
        assert_eq!(
            PolyQ::q().multichoose(3),
            PolyQ::from_coeffs(vec![Rat::zero(), rat(1, 3), rat(1, 2), rat(1, 6)])
        );
        assert_eq!(PolyQ::q().multichoose(1), PolyQ::q());
        // multisets of size 2 from a 6-element set
        let x = PolyQ::q().multichoose(2).eval(&rat_int(6));
        assert_eq!(x, rat_int(21));
    }

    #[test]
    fn counts_match_brute_force_subsets_and_multisets() {
        // subsets: C(x, m); multisets: ((x, m)) counted by enumeration
        fn subsets(x: u32, m: u32) -> u64 {
            fn rec(next: u32, x: u32, left: u32) -> u64 {
                if left == 0 {
                    return 1;
                }
                (next..x).map(|i| rec(i + 1, x, left - 1)).sum()
            }
            rec(0, x, m)
        }
        fn multisets(x: u32, m: u32) -> u64 {
            fn rec(next: u32, x: u32, left: u32) -> u64 {
                if left == 0 {
                    return 1;
                }
                (next..x).map(|i| rec(i, x, left - 1)).sum()
            }
            rec(0, x, m)
        }
        for x in 0..=8u32 {
            for m in 0..=4u32 {
                let b = PolyQ::q().binomial(m).eval(&rat_int(x as i64));
                let c = PolyQ::q().multichoose(m).eval(&rat_int(x as i64));
                assert_eq!(b, rat_int(subsets(x, m) as i64), "C({x},{m})");
                assert_eq!(c, rat_int(multisets(x, m) as i64), "(({x},{m}))");
            }
        }
    }

    #[test]
    fn display_matches_table_style() {
        let necklace3 = PolyQ::from_coeffs(vec![Rat::zero(), rat(-1, 3), Rat::zero(), rat(1, 3)]);
        assert_eq!(necklace3.to_string(), "(-1/3)q + (1/3)q^3");
        assert_eq!(p(&[0, -1]).to_string(), "-q");
        assert_eq!(p(&[2, 0, -3]).to_string(), "2 - 3q^2");
        assert_eq!(PolyQ::zero().to_string(), "0");
        assert_eq!(display_descending(&p(&[-1, 1])), "q - 1");
        assert_eq!(display_descending(&p(&[1, -2, 1])), "q^2 - 2q + 1");
    }

    #[test]
    fn serde_wire_schema() {
        let poly = PolyQ::from_coeffs(vec![Rat::zero(), rat(-1, 3), Rat::zero(), rat(1, 3)]);
        let js = serde_json::to_string(&poly).unwrap();
        assert_eq!(js, r#"["0","-1/3","0","1/3"]"#);
        let back: PolyQ = serde_json::from_str(&js).unwrap();
        assert_eq!(back, poly);
    }
}
