//! Reduced rational functions in q over ℚ.
//!
//! Canonical form: gcd(num, den) = 1 and the denominator is monic, so
//! structural equality is mathematical equality. Zero is 0/1.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::{display_descending, PolyQ};
use crate::rational::{factorial, rat_int, Rat};

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct RatFuncQ {
    num: PolyQ,
    den: PolyQ,
}

/// Wire form {"num": [...], "den": [...]}; inputs are re-canonicalized.
impl<'de> Deserialize<'de> for RatFuncQ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            num: PolyQ,
            den: PolyQ,
        }
        let w = Wire::deserialize(deserializer)?;
        RatFuncQ::new(w.num, w.den).map_err(D::Error::custom)
    }
}

impl RatFuncQ {
    /// Canonicalize num/den. Errors on a zero denominator.
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFuncQ {
                num: PolyQ::zero(),
                den: PolyQ::one(),
            });
        }
        if den.is_one() {
            return Ok(RatFuncQ { num, den });
        }
        let g = PolyQ::gcd(&num, &den);
        let (num, den) = if g.degree() > Some(0) {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        } else {
            (num, den)
        };
        let lc_inv = den.leading().expect("nonzero denominator").recip();
        Ok(RatFuncQ {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RatFuncQ {
            num: p,
            den: PolyQ::one(),
        }
    }

    pub fn zero() -> Self {
        RatFuncQ::from_poly(PolyQ::zero())
    }

    pub fn one() -> Self {
        RatFuncQ::from_poly(PolyQ::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFuncQ::from_poly(PolyQ::constant(c))
    }

    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The underlying polynomial, when the denominator is 1.
    pub fn as_poly(&self) -> Option<&PolyQ> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<RatFuncQ> {
        RatFuncQ::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFuncQ) -> Result<RatFuncQ> {
        RatFuncQ::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, e: i64) -> Result<RatFuncQ> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = RatFuncQ::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Evaluate at a rational point; errors where the denominator vanishes.
    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if num_traits::Zero::is_zero(&d) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Substitute q ↦ q/(q−1), the involutive fractional linear map, and
    /// re-canonicalize.
    pub fn substitute_involution(&self) -> Result<RatFuncQ> {
        if self.is_zero() {
            return Ok(RatFuncQ::zero());
        }
        // For P of degree k: P(q/(q-1)) = (Σ a_i q^i (q-1)^{k-i}) / (q-1)^k.
        fn subst_cleared(p: &PolyQ) -> PolyQ {
            let k = p.degree().expect("nonzero polynomial");
            let qm1 = PolyQ::from_i64_coeffs(&[-1, 1]);
            let mut acc = PolyQ::zero();
            for i in 0..=k {
                let c = p.coeff(i);
                if num_traits::Zero::is_zero(&c) {
                    continue;
                }
                let term = PolyQ::monomial(c, i) * qm1.pow((k - i) as u32);
                acc = &acc + &term;
            }
            acc
        }
        let dn = self.num.degree().expect("nonzero numerator") as u32;
        let dd = self.den.degree().expect("nonzero denominator") as u32;
        let a = subst_cleared(&self.num);
        let b = subst_cleared(&self.den);
        if b.is_zero() {
            return Err(Error::DegenerateSubstitution);
        }
        let qm1 = PolyQ::from_i64_coeffs(&[-1, 1]);
        RatFuncQ::new(&a * &qm1.pow(dd), &b * &qm1.pow(dn))
    }

    /// Falling-factorial binomial R(R−1)⋯(R−m+1)/m!.
    pub fn binomial(&self, m: u32) -> RatFuncQ {
        let mut acc = RatFuncQ::one();
        for i in 0..m {
            acc = &acc * &(self - &RatFuncQ::constant(rat_int(i as i64)));
        }
        acc.scale(&Rat::from_integer(factorial(m)).recip())
    }

    /// Rising-factorial multichoose R(R+1)⋯(R+m−1)/m!.
    pub fn multichoose(&self, m: u32) -> RatFuncQ {
        let mut acc = RatFuncQ::one();
        for i in 0..m {
            acc = &acc * &(self + &RatFuncQ::constant(rat_int(i as i64)));
        }
        acc.scale(&Rat::from_integer(factorial(m)).recip())
    }

    pub fn scale(&self, s: &Rat) -> RatFuncQ {
        RatFuncQ {
            num: self.num.scale(s),
            den: if num_traits::Zero::is_zero(s) {
                PolyQ::one()
            } else {
                self.den.clone()
            },
        }
    }
}

impl Add for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: &RatFuncQ) -> RatFuncQ {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFuncQ::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Sub for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: &RatFuncQ) -> RatFuncQ {
        self + &(-rhs)
    }
}

impl Mul for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncQ::zero();
        }
        RatFuncQ::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for RatFuncQ {
            type Output = RatFuncQ;
            fn $method(self, rhs: RatFuncQ) -> RatFuncQ {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        -&self
    }
}

/// Numerator printed ascending like the coefficient tables, denominator
/// descending so it reads like "q - 1" and "q^2 - 2q + 1".
impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = self.num.to_string();
        if num.contains(' ') {
            write!(f, "({num})/({})", display_descending(&self.den))
        } else {
            write!(f, "{num}/({})", display_descending(&self.den))
        }
    }
}

impl fmt::Debug for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFuncQ({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use num_traits::Zero;

    fn p(coeffs: &[i64]) -> PolyQ {
        PolyQ::from_i64_coeffs(coeffs)
    }

    /// q/(q-1), the image of q under the involution.
    fn phi() -> RatFuncQ {
        RatFuncQ::new(p(&[0, 1]), p(&[-1, 1])).unwrap()
    }

    #[test]
    fn canonical_form() {
        // (2q^2 - 2)/(2q - 2) reduces to q + 1
        let r = RatFuncQ::new(p(&[-2, 0, 2]), p(&[-2, 2])).unwrap();
        assert_eq!(r.as_poly(), Some(&p(&[1, 1])));
        // denominator made monic: q/(2q-2) = (q/2)/(q-1)
        let r = RatFuncQ::new(p(&[0, 1]), p(&[-2, 2])).unwrap();
        assert_eq!(r.den(), &p(&[-1, 1]));
        assert_eq!(r.num(), &PolyQ::from_coeffs(vec![Rat::zero(), rat(1, 2)]));
        assert!(RatFuncQ::new(p(&[1]), PolyQ::zero()).is_err());
    }

    #[test]
    fn involution_examples() {
        // q -> q/(q-1)
        let q = RatFuncQ::from_poly(PolyQ::q());
        assert_eq!(q.substitute_involution().unwrap(), phi());
        // and back
        assert_eq!(phi().substitute_involution().unwrap(), q);
    }

    #[test]
    fn involution_on_cubic() {
        // (q^3 - q)/3 -> (2q^2 - q)/(3(q-1)^3), checked in canonical form
        let necklace3 = RatFuncQ::from_poly(p(&[0, -1, 0, 1]).scale(&rat(1, 3)));
        let image = necklace3.substitute_involution().unwrap();
        let expect = RatFuncQ::new(p(&[0, -1, 2]), p(&[-3, 9, -9, 3])).unwrap();
        assert_eq!(image, expect);
        assert_eq!(image.substitute_involution().unwrap(), necklace3);
    }

    #[test]
    fn arithmetic_and_pow() {
        let r = phi();
        let two = &r + &r;
        assert_eq!(two, r.scale(&rat_int(2)));
        assert_eq!(&r - &r, RatFuncQ::zero());
        assert_eq!(r.pow(0).unwrap(), RatFuncQ::one());
        let sq = r.pow(2).unwrap();
        assert_eq!(sq, &r * &r);
        let inv = r.pow(-1).unwrap();
        assert_eq!(&inv * &r, RatFuncQ::one());
    }

    #[test]
    fn eval_reports_poles() {
        let r = phi();
        assert_eq!(r.eval(&rat_int(2)).unwrap(), rat_int(2));
        assert!(r.eval(&rat_int(1)).is_err());
    }

    #[test]
    fn binomial_multichoose_on_ratfuncs() {
        // ((-q/(q-1); 1)) = -q/(q-1)
        let m1 = -&phi();
        assert_eq!(m1.multichoose(1), m1);
        // C(R, 2) = R(R-1)/2 sanity against direct algebra
        let c2 = phi().binomial(2);
        let direct = (&phi() * &(&phi() - &RatFuncQ::one())).scale(&rat(1, 2));
        assert_eq!(c2, direct);
    }

    #[test]
    fn display_style() {
        assert_eq!((-&phi()).to_string(), "-q/(q - 1)");
        assert_eq!(RatFuncQ::from_poly(p(&[0, 1])).to_string(), "q");
        let m = RatFuncQ::new(p(&[0, 1, -3]), p(&[1, -2, 1])).unwrap();
        assert_eq!(m.to_string(), "(q - 3q^2)/(q^2 - 2q + 1)");
    }

    #[test]
    fn serde_wire_schema() {
        let r = -&phi();
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, r#"{"num":["0","-1"],"den":["-1","1"]}"#);
        let back: RatFuncQ = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
    }
}
