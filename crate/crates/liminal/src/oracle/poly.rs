//! Sparse multivariate polynomials over a small finite field.
//!
//! Monomials pack their exponent vector into a u64 with x₁ in the most
//! significant byte, so plain integer comparison is lexicographic with
//! x₁ > x₂ > ⋯, and (degree, packed) comparison is graded lexicographic.
//! Terms are stored sorted descending under graded lex, giving a canonical
//! form with derived equality and hashing independent of the order used for
//! leading-term queries.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::field::Fq;

/// Variable limit imposed by the u64 packing.
pub const MAX_VARS: u8 = 8;

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    deg: u16,
    packed: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    GradedLex,
    Lex,
}

impl std::str::FromStr for MonomialOrder {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "gradedlex" | "grlex" => Ok(MonomialOrder::GradedLex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(crate::error::Error::Parse(format!(
                "unknown monomial order {other:?}"
            ))),
        }
    }
}

impl Monomial {
    /// Exponent vector, x₁ first. Panics past [`MAX_VARS`] variables; the
    /// census guards n before building any monomial.
    pub fn new(exps: &[u8]) -> Monomial {
        assert!(
            exps.len() <= MAX_VARS as usize,
            "monomial packing holds 8 variables"
        );
        let mut packed = 0u64;
        let mut deg = 0u16;
        for (i, &e) in exps.iter().enumerate() {
            packed |= (e as u64) << (8 * (7 - i));
            deg += e as u16;
        }
        Monomial { deg, packed }
    }

    pub fn one() -> Monomial {
        Monomial { deg: 0, packed: 0 }
    }

    pub fn deg(&self) -> u16 {
        self.deg
    }

    pub fn exponent(&self, i: usize) -> u8 {
        ((self.packed >> (8 * (7 - i))) & 0xff) as u8
    }

    pub fn exponents(&self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.exponent(i)).collect()
    }

    /// Product of monomials; exponents add bytewise. No byte can overflow
    /// at census scale (total degree stays far below 256).
    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + rhs.deg,
            packed: self.packed + rhs.packed,
        }
    }

    pub fn cmp_order(&self, rhs: &Monomial, order: MonomialOrder) -> Ordering {
        match order {
            MonomialOrder::GradedLex => self.cmp(rhs),
            MonomialOrder::Lex => self.packed.cmp(&rhs.packed),
        }
    }

    /// All monomials of degree ≤ d in n variables, descending graded lex.
    pub fn all_up_to_degree(n: u8, d: u16) -> Vec<Monomial> {
        fn rec(n: u8, left: u16, current: &mut Vec<u8>, out: &mut Vec<Monomial>) {
            if current.len() == n as usize {
                out.push(Monomial::new(current));
                return;
            }
            for e in 0..=left.min(255) {
                current.push(e as u8);
                rec(n, left - e, current, out);
                current.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, d, &mut Vec::new(), &mut out);
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn render(&self, n: usize) -> String {
        if self.deg == 0 {
            return "1".to_string();
        }
        let mut out = String::new();
        for i in 0..n {
            let e = self.exponent(i);
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&format!("x{}", i + 1));
            if e > 1 {
                out.push_str(&format!("^{e}"));
            }
        }
        out
    }
}

/// A polynomial over 𝔽_q in n variables: nonzero terms sorted descending
/// under graded lex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FqPoly {
    n: u8,
    terms: Vec<(Monomial, u8)>,
}

impl FqPoly {
    pub fn zero(n: u8) -> FqPoly {
        FqPoly {
            n,
            terms: Vec::new(),
        }
    }

    /// Build from a coefficient map, dropping zeros.
    pub fn from_map(n: u8, map: BTreeMap<Monomial, u8>) -> FqPoly {
        let mut terms: Vec<(Monomial, u8)> = map.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.reverse(); // BTreeMap ascending -> descending graded lex
        FqPoly { n, terms }
    }

    /// Build from (monomial, coefficient) pairs with distinct monomials.
    pub fn from_terms(n: u8, mut terms: Vec<(Monomial, u8)>) -> FqPoly {
        terms.retain(|&(_, c)| c != 0);
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        FqPoly { n, terms }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn terms(&self) -> &[(Monomial, u8)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; terms are sorted graded first, so the head term holds it.
    pub fn total_degree(&self) -> Option<u16> {
        self.terms.first().map(|(m, _)| m.deg())
    }

    /// Leading term with respect to the given order.
    pub fn leading(&self, order: MonomialOrder) -> Option<(Monomial, u8)> {
        match order {
            MonomialOrder::GradedLex => self.terms.first().copied(),
            MonomialOrder::Lex => self
                .terms
                .iter()
                .max_by(|a, b| a.0.cmp_order(&b.0, MonomialOrder::Lex))
                .copied(),
        }
    }

    pub fn is_monic(&self, order: MonomialOrder) -> bool {
        self.leading(order).is_some_and(|(_, c)| c == 1)
    }

    pub fn mul(&self, rhs: &FqPoly, field: &Fq) -> FqPoly {
        assert_eq!(self.n, rhs.n, "variable counts must match");
        let mut acc: BTreeMap<Monomial, u8> = BTreeMap::new();
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &rhs.terms {
                let c = field.mul(ca, cb);
                if c == 0 {
                    continue;
                }
                let m = ma.mul(&mb);
                let entry = acc.entry(m).or_insert(0);
                *entry = field.add(*entry, c);
            }
        }
        FqPoly::from_map(self.n, acc)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut pieces = Vec::new();
        for &(m, c) in &self.terms {
            let mono = m.render(self.n as usize);
            if m.deg() == 0 {
                pieces.push(format!("{c}"));
            } else if c == 1 {
                pieces.push(mono);
            } else {
                pieces.push(format!("{c}*{mono}"));
            }
        }
        pieces.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_ordering() {
        let x = Monomial::new(&[1, 0]);
        let y = Monomial::new(&[0, 1]);
        let x2 = Monomial::new(&[2, 0]);
        let xy = Monomial::new(&[1, 1]);
        let y3 = Monomial::new(&[0, 3]);
        assert!(x > y);
        assert!(x2 > xy);
        assert!(xy > Monomial::new(&[0, 2]));
        // graded: y^3 beats x^2 on degree
        assert!(y3 > x2);
        // pure lex: x^2 beats y^3
        assert_eq!(x2.cmp_order(&y3, MonomialOrder::Lex), Ordering::Greater);
        assert_eq!(x.mul(&y), xy);
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(d+n, n) monomials of degree <= d
        assert_eq!(Monomial::all_up_to_degree(2, 3).len(), 10);
        assert_eq!(Monomial::all_up_to_degree(3, 3).len(), 20);
        assert_eq!(Monomial::all_up_to_degree(1, 5).len(), 6);
        let all = Monomial::all_up_to_degree(2, 2);
        assert!(all.windows(2).all(|w| w[0] > w[1]), "strictly descending");
    }

    #[test]
    fn poly_canonical_form_and_mul() {
        let f2 = Fq::make_field(2).unwrap();
        let x = FqPoly::from_terms(2, vec![(Monomial::new(&[1, 0]), 1)]);
        let xp1 = FqPoly::from_terms(2, vec![(Monomial::new(&[1, 0]), 1), (Monomial::one(), 1)]);
        let prod = x.mul(&xp1, &f2);
        // x(x+1) = x^2 + x
        assert_eq!(
            prod,
            FqPoly::from_terms(
                2,
                vec![(Monomial::new(&[2, 0]), 1), (Monomial::new(&[1, 0]), 1)]
            )
        );
        // (x+1)^2 = x^2 + 1 over F_2
        let sq = xp1.mul(&xp1, &f2);
        assert_eq!(
            sq,
            FqPoly::from_terms(2, vec![(Monomial::new(&[2, 0]), 1), (Monomial::one(), 1)])
        );
        assert_eq!(prod.total_degree(), Some(2));
    }

    #[test]
    fn leading_term_depends_on_order() {
        // f = x + y^3: graded-lex leading is y^3, lex leading is x
        let f = FqPoly::from_terms(
            2,
            vec![(Monomial::new(&[1, 0]), 1), (Monomial::new(&[0, 3]), 1)],
        );
        assert_eq!(
            f.leading(MonomialOrder::GradedLex).unwrap().0,
            Monomial::new(&[0, 3])
        );
        assert_eq!(
            f.leading(MonomialOrder::Lex).unwrap().0,
            Monomial::new(&[1, 0])
        );
    }

    #[test]
    fn render_forms() {
        let f = FqPoly::from_terms(
            2,
            vec![
                (Monomial::new(&[2, 1]), 2),
                (Monomial::new(&[1, 0]), 1),
                (Monomial::one(), 1),
            ],
        );
        assert_eq!(f.render(), "2*x1^2*x2 + x1 + 1");
        assert_eq!(FqPoly::zero(2).render(), "0");
    }
}
