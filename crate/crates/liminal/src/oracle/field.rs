//! Small finite fields with exact table-driven arithmetic.
//!
//! Elements are indices 0..q encoding coefficient vectors over ℤ/p in base
//! p (index = Σ cᵢ pⁱ), so 0 and 1 are the additive and multiplicative
//! identities for every supported q. Extension fields use fixed published
//! irreducible moduli; the tables are built once at construction.

use crate::error::{Error, Result};

/// Built-in moduli, ascending coefficients over ℤ/p:
/// 𝔽₄ = 𝔽₂[t]/(t²+t+1), 𝔽₈ = 𝔽₂[t]/(t³+t+1), 𝔽₉ = 𝔽₃[t]/(t²+1).
const MODULI: &[(u32, u32, &[u8])] = &[
    (4, 2, &[1, 1, 1]),
    (8, 2, &[1, 1, 0, 1]),
    (9, 3, &[1, 0, 1]),
];

#[derive(Clone)]
pub struct Fq {
    q: u32,
    p: u32,
    ext_degree: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl Fq {
    /// Construct 𝔽_q for q ∈ {2, 3, 4, 5, 7, 8, 9}.
    pub fn make_field(q: u32) -> Result<Fq> {
        let (p, modulus): (u32, Vec<u8>) = match q {
            2 | 3 | 5 | 7 => (q, vec![0, 1]),
            _ => {
                let entry = MODULI
                    .iter()
                    .find(|(qq, _, _)| *qq == q)
                    .ok_or(Error::UnsupportedField(q))?;
                (entry.1, entry.2.to_vec())
            }
        };
        let ext_degree = (modulus.len() - 1) as u32;
        if ext_degree > 1 {
            check_irreducible(p, &modulus)?;
        }

        let qi = q as usize;
        let digits: Vec<Vec<u8>> = (0..qi)
            .map(|x| to_digits(x as u32, p, ext_degree))
            .collect();
        let mut add = vec![0u8; qi * qi];
        let mut mul = vec![0u8; qi * qi];
        for a in 0..qi {
            for b in 0..qi {
                let sum: Vec<u8> = digits[a]
                    .iter()
                    .zip(&digits[b])
                    .map(|(x, y)| ((*x as u32 + *y as u32) % p) as u8)
                    .collect();
                add[a * qi + b] = from_digits(&sum, p);

                let prod = poly_mul_mod(&digits[a], &digits[b], &modulus, p);
                mul[a * qi + b] = from_digits(&prod, p);
            }
        }

        let mut inv = vec![0u8; qi];
        for a in 1..qi {
            match (1..qi).find(|&b| mul[a * qi + b] == 1) {
                Some(b) => inv[a] = b as u8,
                None => {
                    return Err(Error::InternalInconsistency(format!(
                        "element {a} of F_{q} has no inverse; modulus is not irreducible"
                    )))
                }
            }
        }

        Ok(Fq {
            q,
            p,
            ext_degree,
            add,
            mul,
            inv,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn ext_degree(&self) -> u32 {
        self.ext_degree
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        (0..self.q as u8)
            .find(|&b| self.add(a, b) == 0)
            .expect("additive group is closed")
    }

    /// Multiplicative inverse; a must be nonzero.
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }
}

impl std::fmt::Debug for Fq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Fq({})", self.q)
    }
}

fn to_digits(mut x: u32, p: u32, len: u32) -> Vec<u8> {
    let mut out = Vec::with_capacity(len as usize);
    for _ in 0..len {
        out.push((x % p) as u8);
        x /= p;
    }
    out
}

fn from_digits(digits: &[u8], p: u32) -> u8 {
    let mut acc = 0u32;
    for &d in digits.iter().rev() {
        acc = acc * p + d as u32;
    }
    acc as u8
}

/// Multiply two coefficient vectors over ℤ/p and reduce mod the monic
/// modulus.
fn poly_mul_mod(a: &[u8], b: &[u8], modulus: &[u8], p: u32) -> Vec<u8> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u32 * y as u32) % p;
        }
    }
    // reduce: t^e = -(lower part of modulus)
    for i in (e..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &m) in modulus.iter().take(e).enumerate() {
            let idx = i - e + j;
            prod[idx] = (prod[idx] + c * (p - m as u32)) % p;
        }
    }
    prod.truncate(e.max(1));
    prod.resize(e.max(1), 0);
    prod.iter().map(|&c| c as u8).collect()
}

/// Degree-2 and degree-3 polynomials over ℤ/p are irreducible iff they have
/// no roots; that covers every built-in modulus.
fn check_irreducible(p: u32, modulus: &[u8]) -> Result<()> {
    let e = modulus.len() - 1;
    assert!(e == 2 || e == 3, "moduli table only holds degree 2 and 3");
    for a in 0..p {
        let mut acc = 0u32;
        for &c in modulus.iter().rev() {
            acc = (acc * a + c as u32) % p;
        }
        if acc == 0 {
            return Err(Error::InternalInconsistency(format!(
                "modulus over F_{p} has root {a}"
            )));
        }
    }
    Ok(())
}
