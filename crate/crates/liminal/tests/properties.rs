//! Randomized invariants for the exact-arithmetic layer.

use num_traits::Zero;
use proptest::prelude::*;

use liminal::partitions::{class_function_from_table, inner_product, ClassFunction};
use liminal::rational::{rat, rat_int, Rat};
use liminal::{partitions_of, PolyQ, RatFuncQ, SeriesQ};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| rat(a, b))
}

fn poly(max_len: usize) -> impl Strategy<Value = PolyQ> {
    prop::collection::vec(small_rat(), 0..=max_len).prop_map(PolyQ::from_coeffs)
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = PolyQ> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFuncQ> {
    (poly(5), nonzero_poly(4)).prop_map(|(n, d)| RatFuncQ::new(n, d).unwrap())
}

proptest! {
    /// Re-canonicalizing a canonical rational function changes nothing.
    #[test]
    fn canonicalization_idempotent(r in ratfunc()) {
        let again = RatFuncQ::new(r.num().clone(), r.den().clone()).unwrap();
        prop_assert_eq!(again, r);
    }

    /// q ↦ q/(q−1) is an involution on canonical rational functions.
    #[test]
    fn involution_squared_is_identity(r in ratfunc()) {
        let twice = r
            .substitute_involution().unwrap()
            .substitute_involution().unwrap();
        prop_assert_eq!(twice, r);
    }

    /// Expansion at zero is a ring homomorphism on functions without a pole
    /// at the origin.
    #[test]
    fn series_at_zero_multiplicative(a in ratfunc(), b in ratfunc(), order in 1usize..10) {
        prop_assume!(!a.den().coeff(0).is_zero() && !b.den().coeff(0).is_zero());
        let sa = SeriesQ::at_zero(&a, order).unwrap();
        let sb = SeriesQ::at_zero(&b, order).unwrap();
        let prod = SeriesQ::at_zero(&(&a * &b), order).unwrap();
        prop_assert_eq!(sa.mul(&sb), prod);
        let sum = SeriesQ::at_zero(&(&a + &b), order).unwrap();
        prop_assert_eq!(sa.add(&sb), sum);
    }

    /// Combinatorial reciprocity: ((−P; m)) = (−1)^m C(P, m) as polynomials.
    #[test]
    fn multichoose_binomial_reciprocity(p in poly(6), m in 0u32..=6) {
        let lhs = (-&p).multichoose(m);
        let rhs = p.binomial(m);
        let rhs = if m % 2 == 0 { rhs } else { -&rhs };
        prop_assert_eq!(lhs, rhs);
    }

    /// The class-function inner product is symmetric and bilinear.
    #[test]
    fn inner_product_symmetric_bilinear(
        d in 1u32..=5,
        seed_a in prop::collection::vec(-5i64..=5, 7),
        seed_b in prop::collection::vec(-5i64..=5, 7),
        seed_c in prop::collection::vec(-5i64..=5, 7),
        scale in -4i64..=4,
    ) {
        let build = |seed: &[i64]| {
            let parts = partitions_of(d).unwrap();
            let table: std::collections::BTreeMap<_, _> = parts
                .iter()
                .zip(seed.iter().cycle())
                .map(|(p, &v)| (p.clone(), rat_int(v)))
                .collect();
            ClassFunction::new(d, table).unwrap()
        };
        let a = build(&seed_a);
        let b = build(&seed_b);
        let c = build(&seed_c);

        prop_assert_eq!(
            inner_product(&a, &b).unwrap(),
            inner_product(&b, &a).unwrap()
        );

        // <a + s·b, c> = <a, c> + s·<b, c>
        let s = rat_int(scale);
        let combo = ClassFunction::new(
            d,
            partitions_of(d)
                .unwrap()
                .into_iter()
                .map(|p| {
                    let v = a.value(&p) + &s * b.value(&p);
                    (p, v)
                })
                .collect(),
        )
        .unwrap();
        let lhs = inner_product(&combo, &c).unwrap();
        let rhs = inner_product(&a, &c).unwrap() + s * inner_product(&b, &c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Polynomial gcd divides both inputs and is monic.
    #[test]
    fn gcd_divides_and_is_monic(a in nonzero_poly(6), b in nonzero_poly(6)) {
        let g = PolyQ::gcd(&a, &b);
        prop_assert!(a.exact_div(&g).is_ok());
        prop_assert!(b.exact_div(&g).is_ok());
        prop_assert_eq!(g.leading().cloned(), Some(rat_int(1)));
    }

    /// Euclidean division reassembles: a = q·b + r with deg r < deg b.
    #[test]
    fn divrem_reassembles(a in poly(8), b in nonzero_poly(5)) {
        let (q, r) = a.divrem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree() < b.degree() || r.is_zero());
    }
}

#[test]
fn class_function_table_round_trip() {
    let cf = ClassFunction::from_fn(4, |p| rat_int(p.len() as i64)).unwrap();
    let js = serde_json::to_string(&cf).unwrap();
    let table: std::collections::BTreeMap<String, String> = serde_json::from_str(&js).unwrap();
    let back = class_function_from_table(4, &table).unwrap();
    assert_eq!(back, cf);
}
