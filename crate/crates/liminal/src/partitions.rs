//! Integer partitions (cycle types of S_d) and class functions on them.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{factorial, format_rat, parse_rat, Rat};

/// Largest d accepted by the enumerator. Partition counts explode past desk
/// scale well before this.
pub const MAX_PARTITION_D: u32 = 30;

/// A partition of d: weakly decreasing positive parts, with the sum cached.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
    d: u32,
}

impl Partition {
    /// Normalizes part order; rejects zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let d = parts.iter().sum();
        Ok(Partition { parts, d })
    }

    /// The one-part partition (d).
    pub fn single(d: u32) -> Self {
        Partition { parts: vec![d], d }
    }

    /// The all-ones partition (1^d).
    pub fn ones(d: u32) -> Self {
        Partition {
            parts: vec![1; d as usize],
            d,
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn d(&self) -> u32 {
        self.d
    }

    /// Number of parts ℓ(λ).
    pub fn len(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// m_j(λ): the number of parts equal to j.
    pub fn multiplicity(&self, j: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == j).count() as u32
    }

    /// Distinct part sizes with their multiplicities, decreasing in size.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((size, m)) if *size == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// z_λ = Π_j j^{m_j} m_j!, the centralizer order of a permutation with
    /// this cycle type.
    pub fn z(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (size, m) in self.multiplicities() {
            acc *= BigInt::from(size).pow(m) * factorial(m);
        }
        acc
    }

    /// sgn_d(λ) = (−1)^{d − ℓ(λ)}.
    pub fn sign(&self) -> i32 {
        if (self.d - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// All partitions of d in reverse-lexicographic order: (d) first, (1^d) last.
pub fn partitions_of(d: u32) -> Result<Vec<Partition>> {
    if !(1..=MAX_PARTITION_D).contains(&d) {
        return Err(Error::OutOfRange(format!(
            "partitions_of supports 1 <= d <= {MAX_PARTITION_D}, got {d}"
        )));
    }
    let mut out = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            let parts = current.clone();
            let d = parts.iter().sum();
            out.push(Partition { parts, d });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(d, d, &mut current, &mut out);
    Ok(out)
}

/// Wire form: comma-joined parts, e.g. "3,1,1".
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("partition part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.is_empty() {
            return Err(Error::Parse("empty partition".into()));
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// A rational-valued function on the partitions of d, i.e. a class function
/// of S_d. The value map is total: exactly one entry per partition of d.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassFunction {
    d: u32,
    values: BTreeMap<Partition, Rat>,
}

impl ClassFunction {
    /// Build from an explicit table; the table must cover the partitions of
    /// d exactly.
    pub fn new(d: u32, values: BTreeMap<Partition, Rat>) -> Result<Self> {
        let all = partitions_of(d)?;
        if values.len() != all.len() || all.iter().any(|p| !values.contains_key(p)) {
            return Err(Error::BadStatistic(format!(
                "class function on S_{d} must assign a value to each of the {} partitions",
                all.len()
            )));
        }
        Ok(ClassFunction { d, values })
    }

    /// Tabulate a function of the partition.
    pub fn from_fn(d: u32, f: impl Fn(&Partition) -> Rat) -> Result<Self> {
        let values = partitions_of(d)?
            .into_iter()
            .map(|p| {
                let v = f(&p);
                (p, v)
            })
            .collect();
        Ok(ClassFunction { d, values })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn value(&self, p: &Partition) -> &Rat {
        &self.values[p]
    }

    pub fn values(&self) -> &BTreeMap<Partition, Rat> {
        &self.values
    }

    /// Pointwise product (used for higher moments).
    pub fn pointwise_mul(&self, rhs: &ClassFunction) -> Result<ClassFunction> {
        if self.d != rhs.d {
            return Err(Error::DimensionMismatch(self.d, rhs.d));
        }
        let values = self
            .values
            .iter()
            .map(|(p, v)| (p.clone(), v * &rhs.values[p]))
            .collect();
        Ok(ClassFunction { d: self.d, values })
    }

    /// Pointwise k-th power.
    pub fn pow(&self, k: u32) -> ClassFunction {
        let values = self
            .values
            .iter()
            .map(|(p, v)| {
                let mut acc = Rat::one();
                for _ in 0..k {
                    acc *= v;
                }
                (p.clone(), acc)
            })
            .collect();
        ClassFunction { d: self.d, values }
    }

    /// True when every value is an integer.
    pub fn is_integral(&self) -> bool {
        self.values.values().all(Rat::is_integer)
    }
}

/// Standard inner product ⟨P, Q⟩ = Σ_{λ⊢d} P(λ)Q(λ)/z_λ, which equals the
/// permutation average (1/d!)Σ_{τ∈S_d} P(τ)Q(τ) since the class of cycle
/// type λ has d!/z_λ elements.
pub fn inner_product(p: &ClassFunction, q: &ClassFunction) -> Result<Rat> {
    if p.d != q.d {
        return Err(Error::DimensionMismatch(p.d, q.d));
    }
    let mut acc = Rat::zero();
    for (part, pv) in &p.values {
        acc += pv * &q.values[part] / Rat::from_integer(part.z());
    }
    Ok(acc)
}

/// Wire form: JSON object mapping partition strings to rational strings.
impl Serialize for ClassFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.values.len()))?;
        for (p, v) in &self.values {
            map.serialize_entry(&p.to_string(), &format_rat(v))?;
        }
        map.end()
    }
}

/// Deserialization needs the ambient d to validate totality; parse into a
/// raw map first and then call this.
pub fn class_function_from_table(
    d: u32,
    table: &BTreeMap<String, String>,
) -> Result<ClassFunction> {
    let mut values = BTreeMap::new();
    for (k, v) in table {
        let p: Partition = k.parse()?;
        if p.d() != d {
            return Err(Error::BadStatistic(format!(
                "partition {p} does not partition {d}"
            )));
        }
        values.insert(p, parse_rat(v)?);
    }
    ClassFunction::new(d, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_order_and_counts() {
        assert_eq!(
            partitions_of(3).unwrap(),
            vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]
        );
        assert_eq!(partitions_of(1).unwrap(), vec![part(&[1])]);
        assert_eq!(partitions_of(5).unwrap().len(), 7);
        // p(1..10) = 1, 2, 3, 5, 7, 11, 15, 22, 30, 42
        let expect = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (d, &count) in (1..=10).zip(expect.iter()) {
            assert_eq!(partitions_of(d).unwrap().len(), count, "p({d})");
        }
        assert!(partitions_of(0).is_err());
        assert!(partitions_of(31).is_err());
    }

    #[test]
    fn no_duplicates_and_sums() {
        for d in 1..=12 {
            let all = partitions_of(d).unwrap();
            let mut seen = std::collections::HashSet::new();
            for p in &all {
                assert!(seen.insert(p.clone()), "duplicate {p}");
                assert_eq!(p.parts().iter().sum::<u32>(), d);
                assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
                // Σ_j j·m_j = d and Σ_j m_j = ℓ
                let mj: u32 = p.multiplicities().iter().map(|(j, m)| j * m).sum();
                let lj: u32 = p.multiplicities().iter().map(|(_, m)| m).sum();
                assert_eq!(mj, d);
                assert_eq!(lj, p.len());
            }
        }
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(part(&[2, 1]).multiplicity(1), 1);
        assert_eq!(part(&[1, 1, 1]).multiplicity(1), 3);
        assert_eq!(part(&[3]).multiplicity(2), 0);
    }

    #[test]
    fn z_examples() {
        assert_eq!(part(&[1, 1, 1]).z(), BigInt::from(6));
        assert_eq!(part(&[2, 1]).z(), BigInt::from(2));
        assert_eq!(part(&[3]).z(), BigInt::from(3));
    }

    #[test]
    fn sign_examples_and_cycle_parity() {
        assert_eq!(part(&[1, 1, 1]).sign(), 1);
        assert_eq!(part(&[2, 1]).sign(), -1);
        assert_eq!(part(&[3]).sign(), 1);
        // sgn(λ) = Π over parts j of (−1)^{j−1}
        for d in 1..=10 {
            for p in partitions_of(d).unwrap() {
                let product: i32 = p
                    .parts()
                    .iter()
                    .map(|&j| if (j - 1) % 2 == 0 { 1 } else { -1 })
                    .product();
                assert_eq!(p.sign(), product, "{p}");
            }
        }
    }

    #[test]
    fn class_equation() {
        // Σ_{λ⊢d} d!/z_λ = d!
        for d in 1..=10u32 {
            let total: Rat = partitions_of(d)
                .unwrap()
                .iter()
                .map(|p| Rat::from_integer(factorial(d)) / Rat::from_integer(p.z()))
                .sum();
            assert_eq!(total, Rat::from_integer(factorial(d)), "d = {d}");
        }
    }

    #[test]
    fn inner_product_constant_one() {
        let one = ClassFunction::from_fn(3, |_| rat_int(1)).unwrap();
        assert_eq!(inner_product(&one, &one).unwrap(), rat_int(1));
        let other = ClassFunction::from_fn(4, |_| rat_int(1)).unwrap();
        assert!(inner_product(&one, &other).is_err());
    }

    #[test]
    fn class_function_must_be_total() {
        let mut values = BTreeMap::new();
        values.insert(part(&[3]), rat_int(1));
        assert!(ClassFunction::new(3, values).is_err());
    }

    #[test]
    fn partition_wire_format() {
        let p = part(&[3, 1, 1]);
        assert_eq!(p.to_string(), "3,1,1");
        assert_eq!("3,1,1".parse::<Partition>().unwrap(), p);
        // unsorted input normalizes
        assert_eq!("1,3,1".parse::<Partition>().unwrap(), p);
        assert!("3,0".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, "\"3,1,1\"");
    }
}
