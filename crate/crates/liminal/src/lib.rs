//! Exact counting of monic polynomials over finite fields.
//!
//! The crate computes, in exact rational arithmetic:
//!
//! - counting polynomials for monic (irreducible, squarefree, typed)
//!   polynomials of total degree d in n variables over 𝔽_q, and their
//!   coefficientwise limits as n → ∞ — the liminal limits, which are
//!   rational functions of q ([`counting`]);
//! - the involutive functional equations under q ↦ q/(q−1) relating the
//!   univariate and liminal counts, the convergence congruence, and the
//!   zeta-type Euler-product identities ([`counting`]);
//! - the symmetric-group character families ψ, φ, σ read off from
//!   type-polynomial coefficients, and first moments of factorization
//!   statistics through them ([`characters`]);
//! - an exhaustive finite-field census classifying every monic polynomial
//!   by factorization type, as ground truth for all of the above
//!   ([`oracle`]).
//!
//! All values are immutable and all operations are pure; the only shared
//! state is an idempotent memo table for the irreducible counts, so
//! everything is safe to use from multiple threads.

pub mod characters;
pub mod counting;
pub mod error;
pub mod oracle;
pub mod partitions;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod report;
pub mod series;

pub use characters::{
    expected_moment, expected_sign, first_moment, liminal_first_moment,
    liminal_moment_via_characters, moment_via_univariate_characters, phi_family, psi_family,
    sigma_family, stirling_first_unsigned, verify_character_identities,
    verify_dimension_identities, CharKind, CharacterFamily, SignMode, Statistic,
};
pub use counting::{
    bounded_mult_total, carlitz_degree_check, irr_count, liminal_bounded_total, liminal_irr,
    liminal_sf_type, liminal_total, liminal_type, necklace, sf_type_poly, total_count, type_poly,
    verify_congruence, verify_liminal_reciprocity, verify_zeta_identities, zeta_bounded,
    zeta_total, GenSeriesT, Vars,
};
pub use error::{Error, Result};
pub use oracle::{
    census, enumerate_monic, verify_against_closed_forms, CensusResult, Fq, FqPoly, MonomialOrder,
};
pub use partitions::{inner_product, partitions_of, ClassFunction, Partition};
pub use poly::PolyQ;
pub use ratfunc::RatFuncQ;
pub use rational::Rat;
pub use report::{Report, ReportEntry};
pub use series::{Expansion, SeriesQ, DEFAULT_ORDER};
