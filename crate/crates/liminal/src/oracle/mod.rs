//! Brute-force ground truth over small finite fields.
//!
//! Everything the symbolic layers claim about counts of monic multivariate
//! polynomials can be checked here by exhaustive enumeration at integer q.

mod census;
mod field;
mod poly;

pub use census::{census, enumerate_monic, verify_against_closed_forms, CensusResult, TypeCount};
pub use field::Fq;
pub use poly::{FqPoly, Monomial, MonomialOrder, MAX_VARS};
