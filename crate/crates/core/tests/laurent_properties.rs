mod common;

use proptest::prelude::*;
use toric_kring_core::laurent::{div_exact_euler, divides_euler, euler, reduce_mod_character};
use toric_kring_core::{BigInt, LatticeVector, LaurentPoly};

fn exponent(rank: usize) -> impl Strategy<Value = LatticeVector> {
    prop::collection::vec(-4i64..=4, rank).prop_map(|d| LatticeVector::from_i64s(&d))
}

fn laurent(rank: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((exponent(rank), -5i64..=5), 0..6).prop_map(move |ts| {
        LaurentPoly::from_terms(rank, ts.into_iter().map(|(u, c)| (u, BigInt::from(c)))).unwrap()
    })
}

fn character(rank: usize) -> impl Strategy<Value = LatticeVector> {
    exponent(rank)
        .prop_filter("nonzero", |u| !u.is_zero())
        .prop_map(|u| u.primitive().unwrap())
}

fn rank_and<T: std::fmt::Debug, S: Strategy<Value = T>>(
    f: impl Fn(usize) -> S,
) -> impl Strategy<Value = (usize, T)> {
    (1usize..=3).prop_flat_map(move |n| f(n).prop_map(move |x| (n, x)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ring_axioms((_, (a, b, c)) in rank_and(|n| (laurent(n), laurent(n), laurent(n)))) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert!(a.terms().all(|(_, c)| c != &BigInt::from(0)));
    }

    #[test]
    fn exact_division_reconstructs((_, (g, chi)) in rank_and(|n| (laurent(n), character(n)))) {
        let f = &g * &euler(&chi);
        prop_assert!(divides_euler(&f, &chi).unwrap());
        let q = div_exact_euler(&f, &chi).unwrap();
        prop_assert_eq!(&q * &euler(&chi), f);
        prop_assert_eq!(q, g);
    }

    #[test]
    fn division_reports_remainders((_, (f, chi)) in rank_and(|n| (laurent(n), character(n)))) {
        match div_exact_euler(&f, &chi) {
            Ok(q) => prop_assert_eq!(&q * &euler(&chi), f),
            Err(_) => prop_assert!(!divides_euler(&f, &chi).unwrap()),
        }
    }

    #[test]
    fn reduction_is_a_ring_map((_, (a, b, chi)) in rank_and(|n| (laurent(n), laurent(n), character(n)))) {
        let r = |p: &LaurentPoly| reduce_mod_character(p, &chi).unwrap();
        prop_assert_eq!(r(&(&a * &b)), r(&a).checked_mul(&r(&b)).unwrap());
        prop_assert_eq!(r(&(&a + &b)), r(&a).checked_add(&r(&b)).unwrap());
        prop_assert!(r(&euler(&chi)).is_zero());
    }

    #[test]
    fn divisibility_ignores_sign((_, (a, chi)) in rank_and(|n| (laurent(n), character(n)))) {
        prop_assert_eq!(divides_euler(&a, &chi).unwrap(), divides_euler(&a, &-&chi).unwrap());
        let f = &a * &euler(&chi);
        prop_assert!(divides_euler(&f, &-&chi).unwrap());
    }

    #[test]
    fn euler_classes_are_coprime(
        (_, (g, u, w)) in (2usize..=3).prop_flat_map(|n| (laurent(n), character(n), character(n)).prop_map(move |x| (n, x)))
    ) {
        prop_assume!(toric_kring_core::LatticeMatrix::from_rows(u.rank(), &[u.clone(), w.clone()]).rank() == 2);
        let f = &(&g * &euler(&u)) * &euler(&w);
        let q = div_exact_euler(&f, &u).unwrap();
        prop_assert!(divides_euler(&q, &w).unwrap());
    }
}
