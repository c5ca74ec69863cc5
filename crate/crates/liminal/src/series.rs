//! Truncated formal expansions of rational functions, at q = 0 and at q = ∞.
//!
//! The expansion at zero is an ordinary power series in q; the expansion at
//! infinity is a Laurent expansion q^lead · (c₀ + c₁/q + c₂/q² + ⋯), with
//! the integer leading exponent kept explicit so expansions like
//! M_{d,n}(q)/q^deg are representable.

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::PolyQ;
use crate::ratfunc::RatFuncQ;
use crate::rational::{format_rat, Rat};

/// Default truncation order when the caller does not specify one.
pub const DEFAULT_ORDER: usize = 16;

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expansion {
    /// Powers of q, expansion at the origin.
    Zero,
    /// Powers of 1/q, expansion at infinity.
    Infinity,
}

#[derive(Clone, PartialEq, Eq)]
pub struct SeriesQ {
    at: Expansion,
    lead: i64,
    coeffs: Vec<Rat>, // length order + 1
}

/// Coefficients of num/den as a power series, where den[0] != 0.
fn series_divide(num: &[Rat], den: &[Rat], order: usize) -> Vec<Rat> {
    let d0 = den[0].recip();
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = num.get(k).cloned().unwrap_or_else(Rat::zero);
        for i in 1..=k.min(den.len().saturating_sub(1)) {
            if !den[i].is_zero() {
                acc -= &den[i] * &out[k - i];
            }
        }
        out.push(acc * &d0);
    }
    out
}

impl SeriesQ {
    /// Taylor expansion of `r` at q = 0 through q^order, exact.
    /// Errors with [`Error::PoleAtZero`] when the (reduced) denominator
    /// vanishes at 0; canonical form guarantees the pole cannot cancel.
    pub fn at_zero(r: &RatFuncQ, order: usize) -> Result<SeriesQ> {
        if r.den().coeff(0).is_zero() {
            return Err(Error::PoleAtZero);
        }
        let coeffs = series_divide(r.num().coeffs(), r.den().coeffs(), order);
        Ok(SeriesQ {
            at: Expansion::Zero,
            lead: 0,
            coeffs,
        })
    }

    /// Laurent expansion of `r` at q = ∞: q^lead · Σ coeffs[i] q^{-i}, with
    /// lead = deg num − deg den and coefficients exact through q^{lead−order}.
    pub fn at_infinity(r: &RatFuncQ, order: usize) -> SeriesQ {
        if r.is_zero() {
            return SeriesQ {
                at: Expansion::Infinity,
                lead: 0,
                coeffs: vec![Rat::zero(); order + 1],
            };
        }
        let dn = r.num().degree().expect("nonzero numerator");
        let dd = r.den().degree().expect("nonzero denominator");
        let rev = |p: &PolyQ, d: usize| -> Vec<Rat> { (0..=d).map(|i| p.coeff(d - i)).collect() };
        let coeffs = series_divide(&rev(r.num(), dn), &rev(r.den(), dd), order);
        SeriesQ {
            at: Expansion::Infinity,
            lead: dn as i64 - dd as i64,
            coeffs,
        }
    }

    /// Series whose q^i coefficient is `poly`'s, truncated at `order`.
    pub fn from_poly_at_zero(poly: &PolyQ, order: usize) -> SeriesQ {
        SeriesQ {
            at: Expansion::Zero,
            lead: 0,
            coeffs: (0..=order).map(|i| poly.coeff(i)).collect(),
        }
    }

    pub fn expansion(&self) -> Expansion {
        self.at
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of q^exp. For expansions at infinity, exponents run
    /// downward from `lead`.
    pub fn coeff_q(&self, exp: i64) -> Rat {
        let idx = match self.at {
            Expansion::Zero => exp,
            Expansion::Infinity => self.lead - exp,
        };
        if idx < 0 {
            return Rat::zero();
        }
        self.coeffs
            .get(idx as usize)
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Truncate to a smaller order.
    pub fn truncated(&self, order: usize) -> SeriesQ {
        SeriesQ {
            at: self.at,
            lead: self.lead,
            coeffs: self.coeffs.iter().take(order + 1).cloned().collect(),
        }
    }

    /// Sum of two expansions at zero; precision is the min of the operands.
    pub fn add(&self, rhs: &SeriesQ) -> SeriesQ {
        assert!(
            self.at == Expansion::Zero && rhs.at == Expansion::Zero,
            "series addition is defined for expansions at zero"
        );
        let order = self.order().min(rhs.order());
        SeriesQ {
            at: Expansion::Zero,
            lead: 0,
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        }
    }

    /// Product of two expansions at zero; precision is the min of the operands.
    pub fn mul(&self, rhs: &SeriesQ) -> SeriesQ {
        assert!(
            self.at == Expansion::Zero && rhs.at == Expansion::Zero,
            "series multiplication is defined for expansions at zero"
        );
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        SeriesQ {
            at: Expansion::Zero,
            lead: 0,
            coeffs,
        }
    }
}

impl fmt::Display for SeriesQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut printed = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exp = match self.at {
                Expansion::Zero => i as i64,
                Expansion::Infinity => self.lead - i as i64,
            };
            write!(f, "{}", crate::poly::term_string(c, exp, !printed))?;
            printed = true;
        }
        if !printed {
            write!(f, "0")?;
        }
        let tail = match self.at {
            Expansion::Zero => self.order() as i64 + 1,
            Expansion::Infinity => self.lead - self.order() as i64 - 1,
        };
        write!(f, " + O(q^{tail})")
    }
}

impl fmt::Debug for SeriesQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeriesQ({self})")
    }
}

/// Wire form {"at": "zero"|"infinity", "lead": int, "coeffs": [...], "order": N}.
impl Serialize for SeriesQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SeriesQ", 4)?;
        st.serialize_field("at", &self.at)?;
        st.serialize_field("lead", &self.lead)?;
        st.serialize_field(
            "coeffs",
            &self.coeffs.iter().map(format_rat).collect::<Vec<_>>(),
        )?;
        st.serialize_field("order", &self.order())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SeriesQ {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Wire {
            at: Expansion,
            lead: i64,
            coeffs: Vec<String>,
            order: usize,
        }
        let w = Wire::deserialize(deserializer)?;
        if w.coeffs.len() != w.order + 1 {
            return Err(D::Error::custom("series length must be order + 1"));
        }
        let coeffs = w
            .coeffs
            .iter()
            .map(|s| crate::rational::parse_rat(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(SeriesQ {
            at: w.at,
            lead: w.lead,
            coeffs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn p(coeffs: &[i64]) -> PolyQ {
        PolyQ::from_i64_coeffs(coeffs)
    }

    fn phi() -> RatFuncQ {
        RatFuncQ::new(p(&[0, 1]), p(&[-1, 1])).unwrap()
    }

    #[test]
    fn geometric_series_at_zero() {
        // q/(q-1) = -q - q^2 - q^3 - q^4 + O(q^5)
        let s = SeriesQ::at_zero(&phi(), 4).unwrap();
        assert_eq!(
            s.coeffs(),
            &[
                rat_int(0),
                rat_int(-1),
                rat_int(-1),
                rat_int(-1),
                rat_int(-1)
            ]
        );
        let one = SeriesQ::at_zero(&RatFuncQ::one(), 3).unwrap();
        assert_eq!(
            one.coeffs(),
            &[rat_int(1), rat_int(0), rat_int(0), rat_int(0)]
        );
    }

    #[test]
    fn pole_at_zero_detected() {
        let r = RatFuncQ::new(p(&[1]), p(&[0, 1])).unwrap(); // 1/q
        assert!(matches!(SeriesQ::at_zero(&r, 3), Err(Error::PoleAtZero)));
    }

    #[test]
    fn geometric_series_at_infinity() {
        // q/(q-1) = 1 + 1/q + 1/q^2 + ...
        let s = SeriesQ::at_infinity(&phi(), 2);
        assert_eq!(s.lead(), 0);
        assert_eq!(s.coeffs(), &[rat_int(1), rat_int(1), rat_int(1)]);
        let deeper = SeriesQ::at_infinity(&phi(), 3);
        assert_eq!(deeper.coeff_q(-3), rat_int(1));

        // 1/q is exactly 1/q
        let r = RatFuncQ::new(p(&[1]), p(&[0, 1])).unwrap();
        let s = SeriesQ::at_infinity(&r, 1);
        assert_eq!(s.lead(), -1);
        assert_eq!(s.coeffs(), &[rat_int(1), rat_int(0)]);
    }

    #[test]
    fn laurent_lead_for_polynomials() {
        // q^3 at infinity: lead 3, coefficients (1, 0, ...)
        let s = SeriesQ::at_infinity(&RatFuncQ::from_poly(p(&[0, 0, 0, 1])), 2);
        assert_eq!(s.lead(), 3);
        assert_eq!(s.coeff_q(3), rat_int(1));
        assert_eq!(s.coeff_q(2), rat_int(0));
    }

    #[test]
    fn product_respects_truncation() {
        let a = SeriesQ::at_zero(&phi(), 5).unwrap();
        let b = SeriesQ::at_zero(&RatFuncQ::from_poly(p(&[1, 1])), 8).unwrap();
        let prod = a.mul(&b);
        assert_eq!(prod.order(), 5);
        let direct = SeriesQ::at_zero(&(&phi() * &RatFuncQ::from_poly(p(&[1, 1]))), 5).unwrap();
        assert_eq!(prod, direct);
    }

    #[test]
    fn display_forms() {
        let s = SeriesQ::at_zero(&phi(), 3).unwrap();
        assert_eq!(s.to_string(), "-q - q^2 - q^3 + O(q^4)");
        let m3inf = RatFuncQ::new(p(&[0, 1, -2]), p(&[-3, 9, -9, 3])).unwrap();
        let s = SeriesQ::at_zero(&m3inf, 5).unwrap();
        assert_eq!(
            s.to_string(),
            "(-1/3)q - (1/3)q^2 + (2/3)q^4 + (5/3)q^5 + O(q^6)"
        );
        let inf = SeriesQ::at_infinity(&phi(), 2);
        assert_eq!(inf.to_string(), "1 + q^-1 + q^-2 + O(q^-3)");
    }

    #[test]
    fn serde_wire_schema() {
        let s = SeriesQ::at_zero(&phi(), 2).unwrap();
        let js = serde_json::to_value(&s).unwrap();
        assert_eq!(
            js,
            serde_json::json!({"at": "zero", "lead": 0, "coeffs": ["0", "-1", "-1"], "order": 2})
        );
        let back: SeriesQ = serde_json::from_value(js).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn fractional_coefficients_survive() {
        // -q/(2(q-1)^2): series -q/2 - q^2 - 3q^3/2 - ...
        let r = RatFuncQ::new(p(&[0, -1]).scale(&rat(1, 2)), p(&[1, -2, 1])).unwrap();
        let s = SeriesQ::at_zero(&r, 3).unwrap();
        assert_eq!(s.coeff_q(1), rat(-1, 2));
        assert_eq!(s.coeff_q(2), rat_int(-1));
        assert_eq!(s.coeff_q(3), rat(-3, 2));
    }
}
