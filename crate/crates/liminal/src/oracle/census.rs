//! Ground-truth census: enumerate every monic polynomial of total degree d
//! over 𝔽_q and classify it by factorization type without factoring.
//!
//! The sieve works degree by degree. Degree-1 monics are all irreducible.
//! For each degree e, every reducible monic is produced exactly once as a
//! product of a multiset of lower-degree irreducibles (one multiset per
//! factorization type, by unique factorization); the irreducibles of degree
//! e are the enumerated monics not produced this way.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;
use std::collections::{BTreeMap, HashSet};

use super::field::Fq;
use super::poly::{FqPoly, Monomial, MonomialOrder, MAX_VARS};
use crate::counting::{bounded_mult_total, irr_count, sf_type_poly, total_count, type_poly};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};
use crate::rational::{rat_int, rat_to_bigint};
use crate::report::Report;

/// Enumeration guard: coefficient assignments per degree, q^C(d+n,n).
const MAX_ASSIGNMENTS: u64 = 1 << 32;

/// Streams every monic polynomial of total degree exactly d, each once, in
/// the deterministic order induced by counting coefficient assignments.
pub struct MonicEnumerator<'a> {
    field: &'a Fq,
    monomials: Vec<Monomial>, // descending graded lex
    order: MonomialOrder,
    n: u8,
    d: u16,
    counter: u64,
    limit: u64,
    scratch: Vec<u8>,
}

impl<'a> Iterator for MonicEnumerator<'a> {
    type Item = FqPoly;

    fn next(&mut self) -> Option<FqPoly> {
        let q = self.field.q() as u64;
        'outer: while self.counter < self.limit {
            let mut x = self.counter;
            self.counter += 1;
            for c in self.scratch.iter_mut() {
                *c = (x % q) as u8;
                x /= q;
            }
            // total degree must be exactly d
            let mut max_deg = 0u16;
            let mut lead: Option<(Monomial, u8)> = None;
            for (m, &c) in self.monomials.iter().zip(self.scratch.iter()) {
                if c == 0 {
                    continue;
                }
                max_deg = max_deg.max(m.deg());
                match lead {
                    Some((lm, _)) if lm.cmp_order(m, self.order).is_ge() => {}
                    _ => lead = Some((*m, c)),
                }
            }
            if max_deg != self.d {
                continue 'outer;
            }
            match lead {
                Some((_, 1)) => {}
                _ => continue 'outer,
            }
            let terms: Vec<(Monomial, u8)> = self
                .monomials
                .iter()
                .zip(self.scratch.iter())
                .filter(|&(_, &c)| c != 0)
                .map(|(m, &c)| (*m, c))
                .collect();
            return Some(FqPoly::from_terms(self.n, terms));
        }
        None
    }
}

impl<'a> MonicEnumerator<'a> {
    fn new(field: &'a Fq, n: u8, d: u16, order: MonomialOrder) -> Result<Self> {
        let monomials = Monomial::all_up_to_degree(n, d);
        let count = monomials.len() as u32;
        let limit = checked_pow(field.q() as u64, count)?;
        Ok(MonicEnumerator {
            field,
            monomials,
            order,
            n,
            d,
            counter: 0,
            limit,
            scratch: vec![0u8; count as usize],
        })
    }
}

fn checked_pow(q: u64, e: u32) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc
            .checked_mul(q)
            .filter(|&v| v <= MAX_ASSIGNMENTS)
            .ok_or_else(|| {
                Error::TooLarge(format!(
                    "q^C(d+n,n) = {q}^{e} exceeds the enumeration guard 2^32"
                ))
            })?;
    }
    Ok(acc)
}

/// Stream every monic total-degree-d polynomial in n variables over `field`,
/// each exactly once, deterministically.
pub fn enumerate_monic<'a>(
    field: &'a Fq,
    n: u8,
    d: u16,
    order: MonomialOrder,
) -> Result<MonicEnumerator<'a>> {
    if n == 0 || n > MAX_VARS || d == 0 {
        return Err(Error::TooLarge(format!(
            "census supports 1 <= n <= {MAX_VARS} variables and d >= 1, got n = {n}, d = {d}"
        )));
    }
    MonicEnumerator::new(field, n, d, order)
}

/// Per-type counts recorded by the census.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeCount {
    pub total: u64,
    pub squarefree: u64,
}

/// Exhaustive factorization-type counts for monic degree-d polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusResult {
    pub q: u32,
    pub n: u8,
    pub d: u16,
    pub irreducible: u64,
    pub types: BTreeMap<Partition, TypeCount>,
}

/// Enumerate the multisets of irreducibles matching one factorization type
/// and hand each product to `sink(product, squarefree)`. Within each part
/// size, indices run nondecreasing over the sorted pool, so unique
/// factorization guarantees each product appears exactly once; a repeated
/// index marks a repeated factor (not squarefree).
struct MultisetProducts<'a, F: FnMut(FqPoly, bool)> {
    field: &'a Fq,
    irreducibles: &'a [Vec<FqPoly>], // index e-1 = sorted irreducibles of degree e
    groups: Vec<(u32, u32)>,         // (part size j, multiplicity m_j)
    sink: F,
}

impl<'a, F: FnMut(FqPoly, bool)> MultisetProducts<'a, F> {
    fn run(field: &'a Fq, irreducibles: &'a [Vec<FqPoly>], lam: &Partition, n: u8, sink: F) {
        let mut state = MultisetProducts {
            field,
            irreducibles,
            groups: lam.multiplicities(),
            sink,
        };
        let one = FqPoly::from_terms(n, vec![(Monomial::one(), 1)]);
        state.next_group(0, one, true);
    }

    fn next_group(&mut self, gi: usize, acc: FqPoly, squarefree: bool) {
        if gi == self.groups.len() {
            (self.sink)(acc, squarefree);
            return;
        }
        let (j, m) = self.groups[gi];
        let pool: &'a [FqPoly] = &self.irreducibles[j as usize - 1];
        self.choose(pool, gi, 0, m, None, acc, squarefree);
    }

    #[allow(clippy::too_many_arguments)]
    fn choose(
        &mut self,
        pool: &'a [FqPoly],
        gi: usize,
        start: usize,
        left: u32,
        last: Option<usize>,
        acc: FqPoly,
        squarefree: bool,
    ) {
        if left == 0 {
            self.next_group(gi + 1, acc, squarefree);
            return;
        }
        for idx in start..pool.len() {
            let prod = acc.mul(&pool[idx], self.field);
            let sf = squarefree && last != Some(idx);
            self.choose(pool, gi, idx, left - 1, Some(idx), prod, sf);
        }
    }
}

/// Exhaustive census of monic total-degree-d polynomials in n variables,
/// classified by factorization type via the product sieve.
pub fn census(field: &Fq, n: u8, d: u16, order: MonomialOrder) -> Result<CensusResult> {
    if d as u32 > 30 {
        return Err(Error::TooLarge(format!(
            "census degree guard is 30, got {d}"
        )));
    }
    // irreducibles of each degree below d
    let mut irreducibles: Vec<Vec<FqPoly>> = Vec::new();
    for e in 1..d {
        let monics: Vec<FqPoly> = enumerate_monic(field, n, e, order)?.collect();
        let mut reducible: HashSet<FqPoly> = HashSet::new();
        for lam in partitions_of(e as u32)? {
            if lam.len() == 1 {
                continue;
            }
            let mut dup = None;
            MultisetProducts::run(field, &irreducibles, &lam, n, |prod, _| {
                if !reducible.insert(prod.clone()) && dup.is_none() {
                    dup = Some(prod);
                }
            });
            if let Some(prod) = dup {
                return Err(Error::InternalInconsistency(format!(
                    "degree-{e} product produced twice: {}",
                    prod.render()
                )));
            }
        }
        let mut irr: Vec<FqPoly> = monics
            .into_iter()
            .filter(|f| !reducible.contains(f))
            .collect();
        irr.sort_unstable();
        irreducibles.push(irr);
    }

    // top degree: count monics, then sieve per factorization type
    let monic_count = enumerate_monic(field, n, d, order)?.count() as u64;
    let mut reducible: HashSet<FqPoly> = HashSet::new();
    let mut types: BTreeMap<Partition, TypeCount> = BTreeMap::new();
    for lam in partitions_of(d as u32)? {
        if lam.len() == 1 {
            continue;
        }
        let mut total = 0u64;
        let mut squarefree = 0u64;
        let mut dup = None;
        MultisetProducts::run(field, &irreducibles, &lam, n, |prod, sf| {
            if !reducible.insert(prod.clone()) && dup.is_none() {
                dup = Some(prod);
            }
            total += 1;
            if sf {
                squarefree += 1;
            }
        });
        if let Some(prod) = dup {
            return Err(Error::InternalInconsistency(format!(
                "degree-{d} product produced twice: {}",
                prod.render()
            )));
        }
        types.insert(lam, TypeCount { total, squarefree });
    }

    let reducible_total: u64 = types.values().map(|t| t.total).sum();
    if reducible_total != reducible.len() as u64 || reducible_total > monic_count {
        return Err(Error::InternalInconsistency(format!(
            "sieve bookkeeping: {reducible_total} products vs {} distinct reducibles vs {monic_count} monics",
            reducible.len()
        )));
    }
    let irreducible = monic_count - reducible_total;
    types.insert(
        Partition::single(d as u32),
        TypeCount {
            total: irreducible,
            squarefree: irreducible,
        },
    );

    // partition-sum cross-check against the closed form
    let expect = rat_to_bigint(
        &total_count(d as u32, n as u32)?.eval(&rat_int(field.q() as i64)),
        "P_{d,n}(q)",
    )?;
    if BigInt::from(monic_count) != expect {
        return Err(Error::InternalInconsistency(format!(
            "census found {monic_count} monic polynomials, formula gives {expect}"
        )));
    }

    Ok(CensusResult {
        q: field.q(),
        n,
        d,
        irreducible,
        types,
    })
}

fn eval_u64(poly: &crate::poly::PolyQ, q: u32, what: &str) -> Result<u64> {
    let v = rat_to_bigint(&poly.eval(&rat_int(q as i64)), what)?;
    v.to_u64()
        .ok_or_else(|| Error::InternalInconsistency(format!("{what} out of u64 range: {v}")))
}

/// Compare a census against the closed-form counts evaluated at q: total,
/// irreducible, per-type totals, per-type squarefree totals, and the
/// squarefree aggregate.
pub fn verify_against_closed_forms(field: &Fq, n: u8, d: u16) -> Result<Report> {
    let result = census(field, n, d, MonomialOrder::GradedLex)?;
    let q = field.q();
    let mut report = Report::new();

    let total: u64 = result.types.values().map(|t| t.total).sum();
    report.check_eq(
        "census_total_count",
        json!({ "q": q, "n": n, "d": d }),
        &total,
        &eval_u64(&total_count(d as u32, n as u32)?, q, "total count")?,
    );
    report.check_eq(
        "census_irreducible_count",
        json!({ "q": q, "n": n, "d": d }),
        &result.irreducible,
        &eval_u64(&irr_count(d as u32, n as u32)?, q, "irreducible count")?,
    );

    for (lam, counts) in &result.types {
        report.check_eq(
            "census_type_count",
            json!({ "q": q, "n": n, "d": d, "lambda": lam.to_string() }),
            &counts.total,
            &eval_u64(&type_poly(lam, n as u32)?, q, "type count")?,
        );
        report.check_eq(
            "census_sf_type_count",
            json!({ "q": q, "n": n, "d": d, "lambda": lam.to_string() }),
            &counts.squarefree,
            &eval_u64(&sf_type_poly(lam, n as u32)?, q, "squarefree type count")?,
        );
    }

    let sf_total: u64 = result.types.values().map(|t| t.squarefree).sum();
    report.check_eq(
        "census_squarefree_total",
        json!({ "q": q, "n": n, "d": d }),
        &sf_total,
        &eval_u64(
            &bounded_mult_total(d as u32, n as u32, 1)?,
            q,
            "squarefree total",
        )?,
    );
    Ok(report)
}
