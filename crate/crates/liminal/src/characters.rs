//! Symmetric-group character families extracted from type-polynomial
//! coefficients, and first moments of factorization statistics.
//!
//! The three families are all read off arithmetically:
//! - ψ_d^k(λ): coefficient of q^{d−k} in z_λ·T_{λ,1}(q);
//! - φ_d^k(λ): (−1)^k times the coefficient of q^{d−k} in z_λ·T^sf_{λ,1}(q);
//! - σ_d^k(λ): the binomial-weighted sum Σ_{j≥k} C(j,k)·sgn_d(λ)·ψ_d^j(λ),
//!   cross-validated against the expansion of z_λ(1−q)^d·T^sf_{λ,∞}(q).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::json;
use std::fmt;

use crate::counting::{
    bounded_mult_total, liminal_bounded_total, liminal_sf_type, liminal_total, liminal_type, phi,
    sf_type_poly, total_count, type_poly, Vars,
};
use crate::error::{Error, Result};
use crate::partitions::{inner_product, partitions_of, ClassFunction, Partition};
use crate::poly::PolyQ;
use crate::ratfunc::RatFuncQ;
use crate::rational::{binom, double_factorial_odd, factorial, rat_int, rat_to_bigint, Rat};
use crate::report::Report;

/// Character degrees past this produce tables nobody can read; guard there.
pub const MAX_CHARACTER_D: u32 = 12;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum CharKind {
    Psi,
    Phi,
    Sigma,
}

impl fmt::Display for CharKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CharKind::Psi => "psi",
            CharKind::Phi => "phi",
            CharKind::Sigma => "sigma",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for CharKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psi" => Ok(CharKind::Psi),
            "phi" => Ok(CharKind::Phi),
            "sigma" => Ok(CharKind::Sigma),
            other => Err(Error::Parse(format!("unknown character kind {other:?}"))),
        }
    }
}

/// An integer-valued family of class functions indexed by k = 0..d−1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacterFamily {
    d: u32,
    kind: CharKind,
    table: Vec<ClassFunction>, // index k
}

impl CharacterFamily {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn kind(&self) -> CharKind {
        self.kind
    }

    /// The class function at index k ∈ 0..d−1.
    pub fn class_function(&self, k: u32) -> &ClassFunction {
        &self.table[k as usize]
    }

    pub fn value(&self, k: u32, lam: &Partition) -> &Rat {
        self.table[k as usize].value(lam)
    }

    fn from_rows(d: u32, kind: CharKind, table: Vec<ClassFunction>) -> Result<Self> {
        for (k, cf) in table.iter().enumerate() {
            if !cf.is_integral() {
                return Err(Error::IntegralityViolation(format!(
                    "{kind}_{d}^{k} has a non-integer value"
                )));
            }
        }
        Ok(CharacterFamily { d, kind, table })
    }
}

/// Wire form {"d": d, "kind": "psi|phi|sigma", "rows": {partition: [v_0..v_{d-1}]}}.
impl Serialize for CharacterFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let mut rows = serde_json::Map::new();
        for lam in partitions_of(self.d).map_err(S::Error::custom)? {
            let vals = (0..self.d)
                .map(|k| {
                    let v = self.value(k, &lam);
                    i64::try_from(v.to_integer())
                        .map(serde_json::Value::from)
                        .map_err(|_| S::Error::custom("character value exceeds i64"))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            rows.insert(lam.to_string(), serde_json::Value::Array(vals));
        }
        let mut st = serializer.serialize_struct("CharacterFamily", 3)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("kind", &self.kind.to_string())?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

fn guard_d(d: u32) -> Result<()> {
    if !(1..=MAX_CHARACTER_D).contains(&d) {
        return Err(Error::OutOfRange(format!(
            "character families support 1 <= d <= {MAX_CHARACTER_D}, got {d}"
        )));
    }
    Ok(())
}

/// Read the coefficients of q^{d−k}, k = 0..d−1, from a polynomial of
/// degree at most d whose constant term must vanish. The top coefficients
/// may be zero (σ_d^0 vanishes off (1^d)).
fn coefficients_top_down(poly: &PolyQ, d: u32, what: &str) -> Result<Vec<Rat>> {
    if poly.degree() > Some(d as usize) {
        return Err(Error::InternalInconsistency(format!(
            "{what}: expected degree <= {d}, got {:?}",
            poly.degree()
        )));
    }
    if !poly.coeff(0).is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "{what}: constant term {} should vanish",
            poly.coeff(0)
        )));
    }
    Ok((0..d).map(|k| poly.coeff((d - k) as usize)).collect())
}

/// ψ_d: for each λ the coefficients of z_λ·T_{λ,1}(q), top down.
pub fn psi_family(d: u32) -> Result<CharacterFamily> {
    guard_d(d)?;
    let lams = partitions_of(d)?;
    let mut per_lambda = Vec::new();
    for lam in &lams {
        let poly = type_poly(lam, 1)?.scale(&Rat::from_integer(lam.z()));
        per_lambda.push(coefficients_top_down(&poly, d, &format!("psi row {lam}"))?);
    }
    family_from_columns(d, CharKind::Psi, &lams, per_lambda)
}

/// φ_d: for each λ, (−1)^k times the coefficients of z_λ·T^sf_{λ,1}(q).
pub fn phi_family(d: u32) -> Result<CharacterFamily> {
    guard_d(d)?;
    let lams = partitions_of(d)?;
    let mut per_lambda = Vec::new();
    for lam in &lams {
        let poly = sf_type_poly(lam, 1)?.scale(&Rat::from_integer(lam.z()));
        let mut vals = coefficients_top_down(&poly, d, &format!("phi row {lam}"))?;
        for (k, v) in vals.iter_mut().enumerate() {
            if k % 2 == 1 {
                *v = -v.clone();
            }
        }
        per_lambda.push(vals);
    }
    family_from_columns(d, CharKind::Phi, &lams, per_lambda)
}

/// σ_d^k = Σ_{j=k}^{d−1} C(j,k)·sgn_d·ψ_d^j, cross-validated against the
/// coefficients of z_λ(1−q)^d·T^sf_{λ,∞}(q).
pub fn sigma_family(d: u32) -> Result<CharacterFamily> {
    guard_d(d)?;
    let psi = psi_family(d)?;
    let lams = partitions_of(d)?;
    let one_minus_q = PolyQ::from_i64_coeffs(&[1, -1]).pow(d);
    let mut per_lambda = Vec::new();
    for lam in &lams {
        let sgn = rat_int(lam.sign() as i64);
        let weighted: Vec<Rat> = (0..d)
            .map(|k| {
                let mut acc = Rat::zero();
                for j in k..d {
                    acc += Rat::from_integer(binom(j as u64, k as u64)) * &sgn * psi.value(j, lam);
                }
                acc
            })
            .collect();

        // second route: expand z_λ(1−q)^d·T^sf_{λ,∞} and strip (−1)^k
        let cleared = &liminal_sf_type(lam)? * &RatFuncQ::from_poly(one_minus_q.clone());
        let poly = cleared
            .as_poly()
            .ok_or_else(|| {
                Error::InternalInconsistency(format!(
                    "(1-q)^{d} T^sf_{{{lam},inf}} is not a polynomial: {cleared}"
                ))
            })?
            .scale(&Rat::from_integer(lam.z()));
        let mut expanded = coefficients_top_down(&poly, d, &format!("sigma row {lam}"))?;
        for (k, v) in expanded.iter_mut().enumerate() {
            if k % 2 == 1 {
                *v = -v.clone();
            }
        }
        if weighted != expanded {
            return Err(Error::InternalInconsistency(format!(
                "sigma_{d} at {lam}: weighted-sum route {weighted:?} vs expansion route {expanded:?}"
            )));
        }
        per_lambda.push(weighted);
    }
    family_from_columns(d, CharKind::Sigma, &lams, per_lambda)
}

/// Transpose rows (one per λ) into k-indexed class functions.
fn family_from_columns(
    d: u32,
    kind: CharKind,
    lams: &[Partition],
    per_lambda: Vec<Vec<Rat>>,
) -> Result<CharacterFamily> {
    let mut table = Vec::with_capacity(d as usize);
    for k in 0..d as usize {
        let mut values = std::collections::BTreeMap::new();
        for (lam, row) in lams.iter().zip(per_lambda.iter()) {
            values.insert(lam.clone(), row[k].clone());
        }
        table.push(ClassFunction::new(d, values)?);
    }
    CharacterFamily::from_rows(d, kind, table)
}

/// Unsigned Stirling numbers of the first kind c(m, n), by the recurrence
/// c(m+1, n) = m·c(m, n) + c(m, n−1) with c(0, 0) = 1.
pub fn stirling_first_unsigned(m: u32, n: u32) -> Result<BigInt> {
    if n > m || m > 30 {
        return Err(Error::OutOfRange(format!(
            "stirling numbers need 0 <= n <= m <= 30, got ({m}, {n})"
        )));
    }
    let mut row = vec![BigInt::one()]; // row for m = 0
    for mm in 0..m {
        let mut next = vec![BigInt::zero(); mm as usize + 2];
        for (nn, v) in row.iter().enumerate() {
            let scaled = v * BigInt::from(mm);
            next[nn] += scaled;
            next[nn + 1] += v;
        }
        row = next;
    }
    Ok(row[n as usize].clone())
}

// ---------------------------------------------------------------------------
// Factorization statistics and their moments.
// ---------------------------------------------------------------------------

/// A named factorization statistic: a class function on partitions of d.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Statistic {
    name: String,
    values: ClassFunction,
}

impl Statistic {
    pub fn from_class_function(name: impl Into<String>, values: ClassFunction) -> Self {
        Statistic {
            name: name.into(),
            values,
        }
    }

    /// The constant statistic 1.
    pub fn one(d: u32) -> Result<Self> {
        Ok(Statistic::from_class_function(
            "one",
            ClassFunction::from_fn(d, |_| Rat::one())?,
        ))
    }

    /// L(λ) = m_1(λ): the number of linear factors.
    pub fn linear(d: u32) -> Result<Self> {
        Ok(Statistic::from_class_function(
            "linear",
            ClassFunction::from_fn(d, |p| rat_int(p.multiplicity(1) as i64))?,
        ))
    }

    /// sgn_d(λ) = (−1)^{d−ℓ(λ)}.
    pub fn sign(d: u32) -> Result<Self> {
        Ok(Statistic::from_class_function(
            "sign",
            ClassFunction::from_fn(d, |p| rat_int(p.sign() as i64))?,
        ))
    }

    /// ℓ(λ): the number of irreducible factors.
    pub fn cycle_count(d: u32) -> Result<Self> {
        Ok(Statistic::from_class_function(
            "ell",
            ClassFunction::from_fn(d, |p| rat_int(p.len() as i64))?,
        ))
    }

    /// Indicator of a single factorization type.
    pub fn indicator(lam: &Partition) -> Result<Self> {
        let target = lam.clone();
        Ok(Statistic::from_class_function(
            format!("indicator:{lam}"),
            ClassFunction::from_fn(lam.d(), |p| {
                if *p == target {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })?,
        ))
    }

    /// Resolve "one", "linear", "sign", "ell", or "indicator:3,1".
    pub fn builtin(name: &str, d: u32) -> Result<Self> {
        match name {
            "one" => Statistic::one(d),
            "linear" => Statistic::linear(d),
            "sign" => Statistic::sign(d),
            "ell" => Statistic::cycle_count(d),
            other => {
                if let Some(ps) = other.strip_prefix("indicator:") {
                    let lam: Partition = ps.parse()?;
                    if lam.d() != d {
                        return Err(Error::BadStatistic(format!(
                            "indicator partition {lam} does not partition {d}"
                        )));
                    }
                    Statistic::indicator(&lam)
                } else {
                    Err(Error::BadStatistic(format!("unknown statistic {other:?}")))
                }
            }
        }
    }

    /// The full built-in set used by the cross-check suites.
    pub fn builtin_set(d: u32) -> Result<Vec<Statistic>> {
        let mut out = vec![
            Statistic::one(d)?,
            Statistic::linear(d)?,
            Statistic::sign(d)?,
            Statistic::cycle_count(d)?,
        ];
        for lam in partitions_of(d)? {
            out.push(Statistic::indicator(&lam)?);
        }
        Ok(out)
    }

    /// Pointwise k-th power; the k-th moment of P is the first moment of P^k.
    pub fn pow(&self, k: u32) -> Statistic {
        Statistic {
            name: format!("{}^{k}", self.name),
            values: self.values.pow(k),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn d(&self) -> u32 {
        self.values.d()
    }

    pub fn values(&self) -> &ClassFunction {
        &self.values
    }
}

/// Σ_λ P(λ)·T_{λ,n}(q) (or the squarefree variant): the first moment of P
/// over monic total-degree-d polynomials in n variables.
pub fn first_moment(stat: &Statistic, n: u32, squarefree: bool) -> Result<PolyQ> {
    let mut acc = PolyQ::zero();
    for lam in partitions_of(stat.d())? {
        let t = if squarefree {
            sf_type_poly(&lam, n)?
        } else {
            type_poly(&lam, n)?
        };
        acc = &acc + &t.scale(stat.values.value(&lam));
    }
    Ok(acc)
}

/// The liminal first moment Σ_λ P(λ)·T_{λ,∞}(q) (or squarefree variant).
pub fn liminal_first_moment(stat: &Statistic, squarefree: bool) -> Result<RatFuncQ> {
    let mut acc = RatFuncQ::zero();
    for lam in partitions_of(stat.d())? {
        let t = if squarefree {
            liminal_sf_type(&lam)?
        } else {
            liminal_type(&lam)?
        };
        acc = &acc + &t.scale(stat.values.value(&lam));
    }
    Ok(acc)
}

/// The character side of the liminal squarefree moment:
/// (1/(1−q)^d)·Σ_k (−1)^k ⟨P, σ_d^k⟩ q^{d−k}.
fn liminal_character_side(stat: &Statistic, sigma: &CharacterFamily) -> Result<RatFuncQ> {
    let d = stat.d();
    let mut num = PolyQ::zero();
    for k in 0..d {
        let ip = inner_product(stat.values(), sigma.class_function(k))?;
        let signed = if k % 2 == 0 { ip } else { -ip };
        num = &num + &PolyQ::monomial(signed, (d - k) as usize);
    }
    RatFuncQ::new(num, PolyQ::from_i64_coeffs(&[1, -1]).pow(d))
}

/// Liminal squarefree first moment via σ-characters; must agree exactly with
/// the direct sum over types, else the call reports an internal bug.
pub fn liminal_moment_via_characters(stat: &Statistic) -> Result<RatFuncQ> {
    guard_d(stat.d())?;
    let sigma = sigma_family(stat.d())?;
    let via = liminal_character_side(stat, &sigma)?;
    let direct = liminal_first_moment(stat, true)?;
    if via != direct {
        return Err(Error::InternalInconsistency(format!(
            "liminal moment of {}: characters give {via}, direct sum gives {direct}",
            stat.name()
        )));
    }
    Ok(via)
}

/// The character side of the univariate moment: Σ_k ⟨P, ψ_d^k⟩ q^{d−k}, or
/// Σ_k (−1)^k ⟨P, φ_d^k⟩ q^{d−k} for the squarefree variant.
fn univariate_character_side(stat: &Statistic, squarefree: bool) -> Result<PolyQ> {
    let d = stat.d();
    let family = if squarefree {
        phi_family(d)?
    } else {
        psi_family(d)?
    };
    let mut acc = PolyQ::zero();
    for k in 0..d {
        let ip = inner_product(stat.values(), family.class_function(k))?;
        let signed = if squarefree && k % 2 == 1 { -ip } else { ip };
        acc = &acc + &PolyQ::monomial(signed, (d - k) as usize);
    }
    Ok(acc)
}

/// Univariate first moment via ψ (or φ for squarefree); must agree exactly
/// with the direct sum over types.
pub fn moment_via_univariate_characters(stat: &Statistic, squarefree: bool) -> Result<PolyQ> {
    guard_d(stat.d())?;
    let via = univariate_character_side(stat, squarefree)?;
    let direct = first_moment(stat, 1, squarefree)?;
    if via != direct {
        return Err(Error::InternalInconsistency(format!(
            "univariate moment of {} (squarefree = {squarefree}): characters give {via}, direct sum gives {direct}",
            stat.name()
        )));
    }
    Ok(via)
}

/// Expected value of a statistic: the first moment divided by the matching
/// total count.
pub fn expected_moment(stat: &Statistic, n: Vars, squarefree: bool) -> Result<RatFuncQ> {
    let d = stat.d();
    let moment = match n {
        Vars::Finite(nv) => RatFuncQ::from_poly(first_moment(stat, nv, squarefree)?),
        Vars::Infinite => liminal_first_moment(stat, squarefree)?,
    };
    let total = match (n, squarefree) {
        (Vars::Finite(nv), false) => RatFuncQ::from_poly(total_count(d, nv)?),
        (Vars::Finite(nv), true) => RatFuncQ::from_poly(bounded_mult_total(d, nv, 1)?),
        (Vars::Infinite, false) => liminal_total(d),
        (Vars::Infinite, true) => liminal_bounded_total(d, 1)?,
    };
    if total.is_zero() {
        return Err(Error::OutOfRange(format!(
            "expected value is undefined for d = {d}, n = {n}, squarefree = {squarefree}: \
             the total count vanishes"
        )));
    }
    moment.div(&total)
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum SignMode {
    /// E(sgn_d) over all monic univariate degree-d polynomials.
    Univariate,
    /// The limiting E(sgn_d) over squarefree polynomials as n → ∞.
    LiminalSquarefree,
}

/// Expected value of the sign statistic, with the closed form asserted:
/// q^{−⌊d/2⌋} in the univariate case, (q/(q−1))^{⌊d/2⌋} in the liminal
/// squarefree case.
pub fn expected_sign(d: u32, mode: SignMode) -> Result<RatFuncQ> {
    let sgn = Statistic::sign(d)?;
    let half = (d / 2) as i64;
    let (value, closed) = match mode {
        SignMode::Univariate => {
            let value = expected_moment(&sgn, Vars::Finite(1), false)?;
            let closed = RatFuncQ::new(PolyQ::one(), PolyQ::monomial(Rat::one(), half as usize))?;
            (value, closed)
        }
        SignMode::LiminalSquarefree => {
            let value = expected_moment(&sgn, Vars::Infinite, true)?;
            (value, phi().pow(half)?)
        }
    };
    if value != closed {
        return Err(Error::InternalInconsistency(format!(
            "expected sign for d = {d} ({mode:?}): computed {value}, closed form {closed}"
        )));
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// Verification suites.
// ---------------------------------------------------------------------------

/// Check the dimension bookkeeping of the σ-representations for d ≤ d_max:
/// σ_d^k((1^d)) equals the Stirling/binomial sum, the dimensions sum to
/// (2d−1)!!, σ_d^0 is the regular character, and Σ_j ψ_d^j((1^d)) = d!.
pub fn verify_dimension_identities(d_max: u32) -> Result<Report> {
    if !(1..=10).contains(&d_max) {
        return Err(Error::OutOfRange(format!(
            "dimension-check guard is 1 <= d_max <= 10, got {d_max}"
        )));
    }
    let mut report = Report::new();
    for d in 1..=d_max {
        let psi = psi_family(d)?;
        let sigma = sigma_family(d)?;
        let ones = Partition::ones(d);

        let mut dim_sum = Rat::zero();
        for k in 0..d {
            let dim = sigma.value(k, &ones).clone();
            let mut stirling_sum = BigInt::zero();
            for i in k..d {
                stirling_sum +=
                    stirling_first_unsigned(d, d - i)? * binom(i as u64, (i - k) as u64);
            }
            report.check_eq(
                "sigma_dimension_stirling",
                json!({ "d": d, "k": k }),
                &rat_to_bigint(&dim, "sigma dimension")?,
                &stirling_sum,
            );
            dim_sum += dim;
        }
        report.check_eq(
            "sigma_dimension_total",
            json!({ "d": d }),
            &rat_to_bigint(&dim_sum, "sigma dimension sum")?,
            &double_factorial_odd(d),
        );

        let regular = ClassFunction::from_fn(d, |p| {
            if *p == ones {
                Rat::from_integer(factorial(d))
            } else {
                Rat::zero()
            }
        })?;
        report.check(
            "sigma_zero_is_regular",
            json!({ "d": d }),
            &"sigma_d^0",
            &"regular character",
            sigma.class_function(0) == &regular,
        );

        let psi_sum: Rat = (0..d).map(|j| psi.value(j, &ones).clone()).sum();
        report.check_eq(
            "psi_dimension_total",
            json!({ "d": d }),
            &rat_to_bigint(&psi_sum, "psi dimension sum")?,
            &factorial(d),
        );
    }
    Ok(report)
}

/// Cross-check both character-based moment formulas against the direct sums
/// for every built-in statistic, plus the sign-statistic closed forms, for
/// d ≤ d_max.
pub fn verify_character_identities(d_max: u32) -> Result<Report> {
    guard_d(d_max)?;
    let mut report = Report::new();
    for d in 1..=d_max {
        let sigma = sigma_family(d)?;
        for stat in Statistic::builtin_set(d)? {
            let via = liminal_character_side(&stat, &sigma)?;
            let direct = liminal_first_moment(&stat, true)?;
            report.check_eq(
                "liminal_sf_moment_via_sigma",
                json!({ "d": d, "stat": stat.name() }),
                &via,
                &direct,
            );
            for squarefree in [false, true] {
                let via = univariate_character_side(&stat, squarefree)?;
                let direct = first_moment(&stat, 1, squarefree)?;
                report.check_eq(
                    if squarefree {
                        "univariate_sf_moment_via_phi"
                    } else {
                        "univariate_moment_via_psi"
                    },
                    json!({ "d": d, "stat": stat.name() }),
                    &via,
                    &direct,
                );
            }
        }

        // ⟨sgn, ψ_d^k⟩ = 1 exactly at k = ⌊d/2⌋
        let psi = psi_family(d)?;
        let sgn = Statistic::sign(d)?;
        for k in 0..d {
            let ip = inner_product(sgn.values(), psi.class_function(k))?;
            let expect = if k == d / 2 { Rat::one() } else { Rat::zero() };
            report.check_eq(
                "sign_psi_component",
                json!({ "d": d, "k": k }),
                &ip,
                &expect,
            );
        }

        for mode in [SignMode::Univariate, SignMode::LiminalSquarefree] {
            let pass = expected_sign(d, mode).is_ok();
            report.check(
                "expected_sign_closed_form",
                json!({ "d": d, "mode": format!("{mode:?}") }),
                &"computed",
                &"closed form",
                pass,
            );
        }
    }

    if d_max >= 3 {
        let sigma3 = sigma_family(3)?;
        let linear = Statistic::linear(3)?;
        let got: Vec<Rat> = (0..3)
            .map(|k| inner_product(linear.values(), sigma3.class_function(k)))
            .collect::<Result<_>>()?;
        let expect = vec![rat_int(3), rat_int(4), rat_int(1)];
        report.check(
            "linear_sigma3_inner_products",
            json!({ "d": 3 }),
            &format!("{got:?}"),
            &format!("{expect:?}"),
            got == expect,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::SeriesQ;
    use num_traits::Signed;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    fn row(fam: &CharacterFamily, lam: &Partition) -> Vec<Rat> {
        (0..fam.d()).map(|k| fam.value(k, lam).clone()).collect()
    }

    #[test]
    fn psi3_table() {
        let psi = psi_family(3).unwrap();
        assert_eq!(row(&psi, &part(&[1, 1, 1])), ints(&[1, 3, 2]));
        assert_eq!(row(&psi, &part(&[2, 1])), ints(&[1, -1, 0]));
        assert_eq!(row(&psi, &part(&[3])), ints(&[1, 0, -1]));
    }

    #[test]
    fn phi_tables() {
        let phi3 = phi_family(3).unwrap();
        assert_eq!(row(&phi3, &part(&[1, 1, 1])), ints(&[1, 3, 2]));
        let phi2 = phi_family(2).unwrap();
        assert_eq!(row(&phi2, &part(&[1, 1])), ints(&[1, 1]));
        let phi1 = phi_family(1).unwrap();
        assert_eq!(row(&phi1, &part(&[1])), ints(&[1]));
    }

    #[test]
    fn sigma3_table() {
        let sigma = sigma_family(3).unwrap();
        assert_eq!(row(&sigma, &part(&[1, 1, 1])), ints(&[6, 7, 2]));
        assert_eq!(row(&sigma, &part(&[2, 1])), ints(&[0, 1, 0]));
        assert_eq!(row(&sigma, &part(&[3])), ints(&[0, -2, -1]));
    }

    #[test]
    fn psi_zero_is_trivial_character() {
        for d in 1..=8 {
            let psi = psi_family(d).unwrap();
            for lam in partitions_of(d).unwrap() {
                assert_eq!(psi.value(0, &lam), &Rat::one(), "d={d} {lam}");
            }
        }
    }

    #[test]
    fn families_are_integral_up_to_ten() {
        for d in 1..=10 {
            psi_family(d).unwrap();
            phi_family(d).unwrap();
            sigma_family(d).unwrap();
        }
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling_first_unsigned(3, 2).unwrap(), BigInt::from(3));
        assert_eq!(stirling_first_unsigned(3, 3).unwrap(), BigInt::one());
        assert_eq!(stirling_first_unsigned(3, 1).unwrap(), BigInt::from(2));
        assert_eq!(stirling_first_unsigned(0, 0).unwrap(), BigInt::one());
        assert!(stirling_first_unsigned(2, 3).is_err());
    }

    #[test]
    fn linear_moment_table_rows() {
        // (1−q)^3 · Σ_λ L(λ) T^sf_{λ,n} for n = 1, 2
        let linear = Statistic::linear(3).unwrap();
        let scale = PolyQ::from_i64_coeffs(&[1, -1]).pow(3);
        let m1 = &first_moment(&linear, 1, true).unwrap() * &scale;
        assert_eq!(m1, PolyQ::from_i64_coeffs(&[0, 1, -5, 10, -10, 5, -1]));
        let m2 = &first_moment(&linear, 2, true).unwrap() * &scale;
        assert_eq!(
            m2,
            PolyQ::from_i64_coeffs(&[0, 1, -4, 2, 7, -6, -3, 2, 1, 1, -1])
        );
    }

    #[test]
    fn liminal_linear_moment() {
        // (q − 4q² + 3q³)/(1−q)³
        let linear = Statistic::linear(3).unwrap();
        let got = liminal_first_moment(&linear, true).unwrap();
        let expect = RatFuncQ::new(
            PolyQ::from_i64_coeffs(&[0, 1, -4, 3]),
            PolyQ::from_i64_coeffs(&[1, -1]).pow(3),
        )
        .unwrap();
        assert_eq!(got, expect);
        // and the same through the σ-characters
        assert_eq!(liminal_moment_via_characters(&linear).unwrap(), expect);
    }

    #[test]
    fn linear_sigma_inner_products() {
        let sigma = sigma_family(3).unwrap();
        let linear = Statistic::linear(3).unwrap();
        let got: Vec<Rat> = (0..3)
            .map(|k| inner_product(linear.values(), sigma.class_function(k)).unwrap())
            .collect();
        assert_eq!(got, ints(&[3, 4, 1]));
    }

    #[test]
    fn univariate_moments() {
        // 𝟙: the total count q^d
        for d in 1..=6 {
            let one = Statistic::one(d).unwrap();
            assert_eq!(
                moment_via_univariate_characters(&one, false).unwrap(),
                PolyQ::monomial(Rat::one(), d as usize)
            );
        }
        // sgn on S_3: q^2
        let sgn = Statistic::sign(3).unwrap();
        assert_eq!(
            moment_via_univariate_characters(&sgn, false).unwrap(),
            PolyQ::monomial(Rat::one(), 2)
        );
        // L on S_3: q^3 + q^2 + q, with nonnegative integer ψ inner products
        let linear = Statistic::linear(3).unwrap();
        assert_eq!(
            moment_via_univariate_characters(&linear, false).unwrap(),
            PolyQ::from_i64_coeffs(&[0, 1, 1, 1])
        );
        let psi = psi_family(3).unwrap();
        for k in 0..3 {
            let ip = inner_product(linear.values(), psi.class_function(k)).unwrap();
            assert!(ip.is_integer() && !ip.is_negative(), "k = {k}: {ip}");
        }
    }

    #[test]
    fn permutation_statistics_have_nonneg_psi_products() {
        for d in 1..=8u32 {
            let psi = psi_family(d).unwrap();
            for stat in [Statistic::linear(d).unwrap(), Statistic::one(d).unwrap()] {
                for k in 0..d {
                    let ip = inner_product(stat.values(), psi.class_function(k)).unwrap();
                    assert!(
                        ip.is_integer() && !ip.is_negative(),
                        "d={d} k={k} {}: {ip}",
                        stat.name()
                    );
                }
            }
        }
    }

    #[test]
    fn expected_sign_values() {
        assert_eq!(
            expected_sign(1, SignMode::Univariate).unwrap(),
            RatFuncQ::one()
        );
        let e4 = expected_sign(4, SignMode::Univariate).unwrap();
        assert_eq!(
            e4,
            RatFuncQ::new(PolyQ::one(), PolyQ::monomial(Rat::one(), 2)).unwrap()
        );
        let e3 = expected_sign(3, SignMode::LiminalSquarefree).unwrap();
        assert_eq!(e3, phi());
    }

    #[test]
    fn liminal_moment_of_one_in_degree_one() {
        let one = Statistic::one(1).unwrap();
        assert_eq!(liminal_moment_via_characters(&one).unwrap(), -&phi());
    }

    #[test]
    fn higher_moment_wrapper() {
        // second moment of L = first moment of L²
        let linear = Statistic::linear(3).unwrap();
        let sq = linear.pow(2);
        assert_eq!(sq.name(), "linear^2");
        let direct = first_moment(&sq, 1, false).unwrap();
        let by_hand: PolyQ = partitions_of(3)
            .unwrap()
            .iter()
            .map(|lam| {
                type_poly(lam, 1)
                    .unwrap()
                    .scale(&(linear.values().value(lam) * linear.values().value(lam)))
            })
            .fold(PolyQ::zero(), |acc, p| &acc + &p);
        assert_eq!(direct, by_hand);
    }

    #[test]
    fn dimension_identities_small() {
        let r = verify_dimension_identities(4).unwrap();
        assert!(
            r.all_pass(),
            "failures: {:?}",
            r.failures().collect::<Vec<_>>()
        );
        let sigma3 = sigma_family(3).unwrap();
        let dims: Vec<Rat> = (0..3)
            .map(|k| sigma3.value(k, &Partition::ones(3)).clone())
            .collect();
        assert_eq!(dims, ints(&[6, 7, 2]));
        let sigma4 = sigma_family(4).unwrap();
        let total: Rat = (0..4)
            .map(|k| sigma4.value(k, &Partition::ones(4)).clone())
            .sum();
        assert_eq!(total, rat_int(105));
    }

    #[test]
    fn psi_weighted_dimension_sum() {
        // Σ_j 2^j ψ_d^j((1^d)) = (2d−1)!!
        for d in 1..=8u32 {
            let psi = psi_family(d).unwrap();
            let ones = Partition::ones(d);
            let mut acc = Rat::zero();
            for j in 0..d {
                acc += psi.value(j, &ones) * rat_int(1 << j);
            }
            assert_eq!(acc, Rat::from_integer(double_factorial_odd(d)), "d = {d}");
        }
    }

    #[test]
    fn character_identities_small() {
        let r = verify_character_identities(4).unwrap();
        assert!(
            r.all_pass(),
            "failures: {:?}",
            r.failures().collect::<Vec<_>>()
        );
    }

    #[test]
    fn builtin_resolution() {
        assert_eq!(Statistic::builtin("linear", 3).unwrap().name(), "linear");
        let ind = Statistic::builtin("indicator:2,1", 3).unwrap();
        assert_eq!(ind.values().value(&part(&[2, 1])), &Rat::one());
        assert_eq!(ind.values().value(&part(&[3])), &Rat::zero());
        assert!(Statistic::builtin("indicator:2,1", 4).is_err());
        assert!(Statistic::builtin("nope", 3).is_err());
    }

    #[test]
    fn expected_liminal_moment_of_sign_is_series_consistent() {
        // the liminal squarefree expected sign expands at infinity with
        // leading term 1
        let e = expected_sign(4, SignMode::LiminalSquarefree).unwrap();
        let s = SeriesQ::at_infinity(&e, 3);
        assert_eq!(s.lead(), 0);
        assert_eq!(s.coeff_q(0), Rat::one());
    }

    #[test]
    fn character_serialization_schema() {
        let js = serde_json::to_value(sigma_family(3).unwrap()).unwrap();
        assert_eq!(js["d"], 3);
        assert_eq!(js["kind"], "sigma");
        assert_eq!(js["rows"]["1,1,1"], serde_json::json!([6, 7, 2]));
        assert_eq!(js["rows"]["3"], serde_json::json!([0, -2, -1]));
    }
}
