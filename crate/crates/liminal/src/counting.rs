//! Counting polynomials for monic polynomials over 𝔽_q in n variables,
//! their coefficientwise limits as n → ∞ (the "liminal" limits), and the
//! identities tying the two together.
//!
//! Finite-n counts are polynomials in q; liminal counts are rational
//! functions of q. Everything is exact.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};
use crate::poly::PolyQ;
use crate::ratfunc::RatFuncQ;
use crate::rational::{binom, divisors, moebius, rat, Rat};
use crate::report::Report;
use crate::series::SeriesQ;

/// Number of variables: finite, or the liminal limit.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Vars {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vars::Finite(n) => write!(f, "{n}"),
            Vars::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Vars {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(Vars::Infinite),
            t => t
                .parse::<u32>()
                .map(Vars::Finite)
                .map_err(|e| Error::Parse(format!("variable count {s:?}: {e}"))),
        }
    }
}

/// Exponents such as C(d+n, n) grow fast; refuse anything past this.
const MAX_EXPONENT: u64 = 1_000_000;

/// q/(q−1), the generator the liminal formulas are built from.
pub fn phi() -> RatFuncQ {
    RatFuncQ::new(PolyQ::q(), PolyQ::from_i64_coeffs(&[-1, 1])).expect("q - 1 is nonzero")
}

fn require_positive(name: &str, v: u32) -> Result<()> {
    if v == 0 {
        return Err(Error::OutOfRange(format!("{name} must be >= 1")));
    }
    Ok(())
}

/// The d-th necklace polynomial (1/d) Σ_{e|d} μ(d/e) q^e: the number of
/// monic irreducible univariate polynomials of degree d over 𝔽_q.
pub fn necklace(d: u32) -> PolyQ {
    assert!(d >= 1, "necklace degree must be >= 1");
    let mut acc = PolyQ::zero();
    for e in divisors(d) {
        let mu = moebius(d / e);
        if mu != 0 {
            acc = &acc + &PolyQ::monomial(rat(mu as i64, d as i64), e as usize);
        }
    }
    acc
}

fn binomial_exponent(d: u32, n: u32) -> Result<usize> {
    let b = binom((d + n) as u64, n as u64);
    if b > BigInt::from(MAX_EXPONENT) {
        return Err(Error::TooLarge(format!(
            "C({}, {n}) = {b} exceeds the exponent guard {MAX_EXPONENT}",
            d + n
        )));
    }
    Ok(b.to_usize().expect("guarded above"))
}

/// P_{d,n}(q) = (q^{C(d+n,n)} − q^{C(d+n−1,n)})/(q−1): the number of monic
/// polynomials of total degree d in n variables.
pub fn total_count(d: u32, n: u32) -> Result<PolyQ> {
    require_positive("d", d)?;
    require_positive("n", n)?;
    let hi = binomial_exponent(d, n)?;
    let lo = binomial_exponent(d - 1, n)?;
    let num = &PolyQ::monomial(Rat::one(), hi) - &PolyQ::monomial(Rat::one(), lo);
    num.exact_div(&PolyQ::from_i64_coeffs(&[-1, 1]))
}

fn irr_memo() -> &'static Mutex<HashMap<(u32, u32), PolyQ>> {
    static MEMO: OnceLock<Mutex<HashMap<(u32, u32), PolyQ>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn memo_get(d: u32, n: u32) -> Option<PolyQ> {
    irr_memo().lock().unwrap().get(&(d, n)).cloned()
}

fn memo_put(d: u32, n: u32, value: PolyQ) {
    // insert-if-absent keeps the cache idempotent under races
    irr_memo().lock().unwrap().entry((d, n)).or_insert(value);
}

/// M_{d,n}(q): the number of monic irreducible polynomials of total degree d
/// in n variables, by the recursion
/// M_{d,n} = P_{d,n} − Σ_{λ⊢d, λ≠(d)} Π_j ((M_{j,n}; m_j(λ))),
/// with base case M_{1,n} = q(q^n−1)/(q−1). Memoized over (d, n).
pub fn irr_count(d: u32, n: u32) -> Result<PolyQ> {
    require_positive("d", d)?;
    require_positive("n", n)?;
    if let Some(hit) = memo_get(d, n) {
        return Ok(hit);
    }
    for dd in 1..=d {
        if memo_get(dd, n).is_some() {
            continue;
        }
        let value = if dd == 1 {
            // q + q^2 + ... + q^n
            let mut coeffs = vec![Rat::one(); n as usize + 1];
            coeffs[0] = Rat::zero();
            PolyQ::from_coeffs(coeffs)
        } else {
            let mut acc = total_count(dd, n)?;
            for lam in partitions_of(dd)? {
                if lam.len() == 1 {
                    continue;
                }
                acc = &acc - &type_poly(&lam, n)?;
            }
            acc
        };
        memo_put(dd, n, value);
    }
    Ok(memo_get(d, n).expect("just inserted"))
}

/// T_{λ,n}(q) = Π_j ((M_{j,n}(q); m_j(λ))): monic polynomials of
/// factorization type λ.
pub fn type_poly(lam: &Partition, n: u32) -> Result<PolyQ> {
    require_positive("n", n)?;
    let mut acc = PolyQ::one();
    for (j, m) in lam.multiplicities() {
        acc = &acc * &irr_count(j, n)?.multichoose(m);
    }
    Ok(acc)
}

/// T^sf_{λ,n}(q) = Π_j C(M_{j,n}(q), m_j(λ)): squarefree monic polynomials
/// of factorization type λ.
pub fn sf_type_poly(lam: &Partition, n: u32) -> Result<PolyQ> {
    require_positive("n", n)?;
    let mut acc = PolyQ::one();
    for (j, m) in lam.multiplicities() {
        acc = &acc * &irr_count(j, n)?.binomial(m);
    }
    Ok(acc)
}

fn liminal_memo() -> &'static Mutex<HashMap<u32, RatFuncQ>> {
    static MEMO: OnceLock<Mutex<HashMap<u32, RatFuncQ>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// M_{d,∞}(q) = −(1/d) Σ_{e|d} μ(d/e) (q/(q−1))^e, the coefficientwise limit
/// of M_{d,n}(q) as n → ∞.
///
/// Computed both from the explicit formula and from the limit of the
/// recursion (M_{d,∞} = −Σ_{λ≠(d)} Π ((M_{j,∞}; m_j))); the two routes must
/// agree exactly or the call reports an internal bug.
pub fn liminal_irr(d: u32) -> Result<RatFuncQ> {
    require_positive("d", d)?;
    if let Some(hit) = liminal_memo().lock().unwrap().get(&d) {
        return Ok(hit.clone());
    }
    for dd in 1..=d {
        if liminal_memo().lock().unwrap().contains_key(&dd) {
            continue;
        }
        let mut explicit = RatFuncQ::zero();
        for e in divisors(dd) {
            let mu = moebius(dd / e);
            if mu != 0 {
                explicit = &explicit + &phi().pow(e as i64)?.scale(&rat(mu as i64, dd as i64));
            }
        }
        explicit = -&explicit;

        let recursive = if dd == 1 {
            -&phi()
        } else {
            let mut acc = RatFuncQ::zero();
            for lam in partitions_of(dd)? {
                if lam.len() == 1 {
                    continue;
                }
                acc = &acc + &liminal_type(&lam)?;
            }
            -&acc
        };
        if explicit != recursive {
            return Err(Error::InternalInconsistency(format!(
                "liminal irreducible count for d = {dd}: explicit {explicit} vs recursion {recursive}"
            )));
        }
        liminal_memo().lock().unwrap().entry(dd).or_insert(explicit);
    }
    Ok(liminal_memo().lock().unwrap()[&d].clone())
}

/// T_{λ,∞}(q) = Π_j ((M_{j,∞}(q); m_j(λ))).
pub fn liminal_type(lam: &Partition) -> Result<RatFuncQ> {
    let mut acc = RatFuncQ::one();
    for (j, m) in lam.multiplicities() {
        acc = &acc * &liminal_irr(j)?.multichoose(m);
    }
    Ok(acc)
}

/// T^sf_{λ,∞}(q) = Π_j C(M_{j,∞}(q), m_j(λ)).
pub fn liminal_sf_type(lam: &Partition) -> Result<RatFuncQ> {
    let mut acc = RatFuncQ::one();
    for (j, m) in lam.multiplicities() {
        acc = &acc * &liminal_irr(j)?.binomial(m);
    }
    Ok(acc)
}

/// P_{d,∞}(q): −q/(q−1) for d = 1 and 0 for d > 1.
pub fn liminal_total(d: u32) -> RatFuncQ {
    if d == 1 {
        -&phi()
    } else {
        RatFuncQ::zero()
    }
}

/// P^m_{d,∞}(q), the limit of the count of monics with all factor
/// multiplicities ≤ m: ±(q/(q−1))^k when d ≡ 0 or 1 mod (m+1), else 0.
pub fn liminal_bounded_total(d: u32, m: u32) -> Result<RatFuncQ> {
    require_positive("d", d)?;
    require_positive("m", m)?;
    let step = m + 1;
    Ok(match d % step {
        0 => phi().pow((d / step) as i64)?,
        1 => -&phi().pow(((d + m) / step) as i64)?,
        _ => RatFuncQ::zero(),
    })
}

// ---------------------------------------------------------------------------
// Generating functions in t with coefficients in ℚ(q).
// ---------------------------------------------------------------------------

/// A power series in t truncated at a fixed order, with rational-function
/// coefficients. Houses the zeta-type Euler products.
#[derive(Clone, PartialEq, Eq)]
pub struct GenSeriesT {
    coeffs: Vec<RatFuncQ>, // index = t-exponent, length = order + 1
}

impl GenSeriesT {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![RatFuncQ::zero(); order + 1];
        coeffs[0] = RatFuncQ::one();
        GenSeriesT { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<RatFuncQ>) -> Self {
        assert!(!coeffs.is_empty(), "series needs a constant term");
        GenSeriesT { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &RatFuncQ {
        &self.coeffs[d]
    }

    /// Truncated product; precision is the min of the operands.
    pub fn mul(&self, rhs: &GenSeriesT) -> GenSeriesT {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![RatFuncQ::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        GenSeriesT { coeffs }
    }

    /// (1/(1−t^j))^M = Σ_k ((M; k)) t^{jk}, exponentiation by the rising
    /// binomial series.
    pub fn geom_pow(j: usize, exponent: &RatFuncQ, order: usize) -> GenSeriesT {
        let mut coeffs = vec![RatFuncQ::zero(); order + 1];
        let mut k = 0;
        while j * k <= order {
            coeffs[j * k] = exponent.multichoose(k as u32);
            k += 1;
        }
        GenSeriesT { coeffs }
    }

    /// (1−t^j)^M = Σ_k C(M, k) (−1)^k t^{jk}, exponentiation by the falling
    /// binomial series.
    pub fn binom_pow(j: usize, exponent: &RatFuncQ, order: usize) -> GenSeriesT {
        let mut coeffs = vec![RatFuncQ::zero(); order + 1];
        let mut k = 0;
        while j * k <= order {
            let c = exponent.binomial(k as u32);
            coeffs[j * k] = if k % 2 == 0 { c } else { -&c };
            k += 1;
        }
        GenSeriesT { coeffs }
    }

    /// Substitute t ↦ t^m, keeping the truncation order.
    pub fn subst_t_power(&self, m: usize) -> GenSeriesT {
        assert!(m >= 1);
        let order = self.order();
        let mut coeffs = vec![RatFuncQ::zero(); order + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * m <= order {
                coeffs[i * m] = c.clone();
            } else {
                break;
            }
        }
        GenSeriesT { coeffs }
    }
}

impl fmt::Display for GenSeriesT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", strs.join(", "))
    }
}

impl fmt::Debug for GenSeriesT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenSeriesT({self})")
    }
}

/// M_{d,n} or M_{d,∞} as a rational function, for product exponents.
fn irr_exponent(d: u32, n: Vars) -> Result<RatFuncQ> {
    match n {
        Vars::Finite(n) => Ok(RatFuncQ::from_poly(irr_count(d, n)?)),
        Vars::Infinite => liminal_irr(d),
    }
}

/// Z(T_n, t) = Π_j (1/(1−t^j))^{M_{j,n}(q)}, truncated at t^order.
pub fn zeta_total(n: Vars, order: usize) -> Result<GenSeriesT> {
    let mut acc = GenSeriesT::one(order);
    for j in 1..=order {
        acc = acc.mul(&GenSeriesT::geom_pow(j, &irr_exponent(j as u32, n)?, order));
    }
    Ok(acc)
}

/// Z(T^m_n, t) = Π_j ((1−t^{(m+1)j})/(1−t^j))^{M_{j,n}(q)}, truncated at
/// t^order.
pub fn zeta_bounded(n: Vars, m: u32, order: usize) -> Result<GenSeriesT> {
    require_positive("m", m)?;
    let mut acc = GenSeriesT::one(order);
    for j in 1..=order {
        let exp = irr_exponent(j as u32, n)?;
        acc = acc.mul(&GenSeriesT::geom_pow(j, &exp, order));
        let jm = j * (m as usize + 1);
        if jm <= order {
            acc = acc.mul(&GenSeriesT::binom_pow(jm, &exp, order));
        }
    }
    Ok(acc)
}

/// P^m_{d,n}(q): monic total-degree-d polynomials in n variables with all
/// factor multiplicities ≤ m, extracted as the t^d coefficient of
/// Z(T^m_n, t).
pub fn bounded_mult_total(d: u32, n: u32, m: u32) -> Result<PolyQ> {
    require_positive("d", d)?;
    let z = zeta_bounded(Vars::Finite(n), m, d as usize)?;
    z.coeff(d as usize).as_poly().cloned().ok_or_else(|| {
        Error::InternalInconsistency(format!(
            "P^{m}_{{{d},{n}}} came out non-polynomial: {}",
            z.coeff(d as usize)
        ))
    })
}

// ---------------------------------------------------------------------------
// Verification suites.
// ---------------------------------------------------------------------------

/// Negated substitution q ↦ q/(q−1) applied to a polynomial, as the
/// reciprocity identities use it.
fn subst_poly(p: &PolyQ) -> Result<RatFuncQ> {
    RatFuncQ::from_poly(p.clone()).substitute_involution()
}

/// Check, for every d ≤ d_max and λ ⊢ d, the functional equations relating
/// univariate and liminal counts:
/// M_{d,∞} = −M_{d,1}∘φ, T_{λ,∞} = (−1)^ℓ T^sf_{λ,1}∘φ,
/// T^sf_{λ,∞} = (−1)^ℓ T_{λ,1}∘φ, plus involution∘involution = id.
pub fn verify_liminal_reciprocity(d_max: u32) -> Result<Report> {
    if !(1..=12).contains(&d_max) {
        return Err(Error::OutOfRange(format!(
            "reciprocity guard is 1 <= d_max <= 12, got {d_max}"
        )));
    }
    let mut report = Report::new();
    for d in 1..=d_max {
        let lim = liminal_irr(d)?;
        let neck_image = -&subst_poly(&necklace(d))?;
        report.check_eq("necklace_reciprocity", json!({ "d": d }), &lim, &neck_image);

        let twice = lim.substitute_involution()?.substitute_involution()?;
        report.check_eq("involution_squared", json!({ "d": d }), &twice, &lim);

        for lam in partitions_of(d)? {
            let sign = if lam.len() % 2 == 0 { 1 } else { -1 };
            let signed = |r: RatFuncQ| if sign == 1 { r } else { -&r };

            let lhs = liminal_type(&lam)?;
            let rhs = signed(subst_poly(&sf_type_poly(&lam, 1)?)?);
            report.check_eq(
                "type_reciprocity",
                json!({ "lambda": lam.to_string() }),
                &lhs,
                &rhs,
            );

            let lhs = liminal_sf_type(&lam)?;
            let rhs = signed(subst_poly(&type_poly(&lam, 1)?)?);
            report.check_eq(
                "sf_type_reciprocity",
                json!({ "lambda": lam.to_string() }),
                &lhs,
                &rhs,
            );
        }
    }
    Ok(report)
}

/// Check M_{d,n}(q) ≡ M_{d,∞}(q) mod q^{n+1} for d ≤ d_max, n ≤ n_max.
pub fn verify_congruence(d_max: u32, n_max: u32) -> Result<Report> {
    if d_max > 8 || n_max > 8 {
        return Err(Error::OutOfRange(format!(
            "congruence guard is d_max, n_max <= 8, got ({d_max}, {n_max})"
        )));
    }
    let mut report = Report::new();
    for d in 1..=d_max {
        let lim = liminal_irr(d)?;
        for n in 1..=n_max {
            let lhs = SeriesQ::at_zero(&lim, n as usize)?;
            let rhs = SeriesQ::from_poly_at_zero(&irr_count(d, n)?, n as usize);
            report.check_eq(
                "congruence_mod_q^(n+1)",
                json!({ "d": d, "n": n }),
                &lhs,
                &rhs,
            );
        }
    }
    Ok(report)
}

/// Check the Euler-product identities for Z(T_n, t) and Z(T^m_n, t) through
/// t^t_order: the product over irreducibles equals the coefficient series,
/// and Z(T,t) = Z(T,t^{m+1})·Z(T^m,t) for m ∈ {1, 2}.
pub fn verify_zeta_identities(n: Vars, t_order: usize) -> Result<Report> {
    if t_order == 0 || t_order > 12 {
        return Err(Error::OutOfRange(format!(
            "zeta guard is 1 <= t_order <= 12, got {t_order}"
        )));
    }
    let mut report = Report::new();
    let z = zeta_total(n, t_order)?;

    let expected = match n {
        Vars::Finite(nv) => {
            let mut coeffs = vec![RatFuncQ::one()];
            for d in 1..=t_order {
                coeffs.push(RatFuncQ::from_poly(total_count(d as u32, nv)?));
            }
            GenSeriesT::from_coeffs(coeffs)
        }
        Vars::Infinite => {
            // 1 − (q/(q−1)) t
            let mut coeffs = vec![RatFuncQ::zero(); t_order + 1];
            coeffs[0] = RatFuncQ::one();
            coeffs[1] = -&phi();
            GenSeriesT::from_coeffs(coeffs)
        }
    };
    let label = match n {
        Vars::Finite(1) => "cyclotomic_identity",
        Vars::Finite(_) => "zeta_total_product",
        Vars::Infinite => "zeta_total_liminal",
    };
    report.check_eq(
        label,
        json!({ "n": n.to_string(), "t_order": t_order }),
        &z,
        &expected,
    );

    for m in 1..=2u32 {
        let factored = z
            .subst_t_power(m as usize + 1)
            .mul(&zeta_bounded(n, m, t_order)?);
        report.check_eq(
            "zeta_factorization",
            json!({ "n": n.to_string(), "m": m, "t_order": t_order }),
            &z,
            &factored,
        );

        if n == Vars::Infinite {
            // the closed three-case formula for P^m_{d,∞} against the product
            let product = zeta_bounded(n, m, t_order)?;
            let mut coeffs = vec![RatFuncQ::one()];
            for d in 1..=t_order {
                coeffs.push(liminal_bounded_total(d as u32, m)?);
            }
            let closed = GenSeriesT::from_coeffs(coeffs);
            report.check_eq(
                "bounded_total_closed_form",
                json!({ "m": m, "t_order": t_order }),
                &product,
                &closed,
            );
        }
    }
    Ok(report)
}

/// Check deg M_{d,n} = C(d+n, d) − 1 for d ≤ d_max, n ≤ n_max.
pub fn carlitz_degree_check(d_max: u32, n_max: u32) -> Result<Report> {
    if d_max > 8 || n_max > 8 {
        return Err(Error::OutOfRange(format!(
            "degree-check guard is d_max, n_max <= 8, got ({d_max}, {n_max})"
        )));
    }
    let mut report = Report::new();
    for d in 1..=d_max {
        for n in 1..=n_max {
            let deg = irr_count(d, n)?
                .degree()
                .map(BigInt::from)
                .unwrap_or_else(|| BigInt::from(-1));
            let expect = binom((d + n) as u64, d as u64) - BigInt::one();
            report.check_eq("carlitz_degree", json!({ "d": d, "n": n }), &deg, &expect);
        }
    }
    Ok(report)
}
