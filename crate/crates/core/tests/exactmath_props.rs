use proptest::prelude::*;

use hallgebra::exactmath::{
    format_rat, littlewood_richardson, multisym_mul, parse_rat, partition_maps, partitions_of, rat, schur_eval_ones,
    ssyt_count, Cyc, MultiSymElem, Partition, PartitionMap,
};
use num_bigint::BigUint;

fn partition(max: usize) -> impl Strategy<Value = Partition> {
    (0..=max).prop_flat_map(|n| {
        let all = partitions_of(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn labels(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("γ{i}")).collect()
}

fn label_map(max: usize) -> impl Strategy<Value = PartitionMap> {
    (0..=max).prop_flat_map(|n| {
        let all = partition_maps(n, &labels(2));
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn cyc() -> impl Strategy<Value = Cyc> {
    (1u32..=12, prop::collection::vec((-3i64..=3, 0i64..12), 1..4)).prop_map(|(m, terms)| {
        terms
            .into_iter()
            .fold(Cyc::zero(), |acc, (c, k)| &acc + &Cyc::zeta_pow(m, k).scale(&rat(c, 1)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hook_content_matches_enumeration(p in partition(6), d in 0usize..=4) {
        prop_assert_eq!(schur_eval_ones(&p, d), BigUint::from(ssyt_count(&p, d)));
    }

    #[test]
    fn lr_is_symmetric(a in partition(3), b in partition(3)) {
        for nu in partitions_of(a.size() + b.size()) {
            prop_assert_eq!(littlewood_richardson(&a, &b, &nu), littlewood_richardson(&b, &a, &nu));
        }
    }

    #[test]
    fn multisym_product_is_commutative_and_associative(x in label_map(4), y in label_map(4), z in label_map(4)) {
        let (x, y, z) = (MultiSymElem::basis(x), MultiSymElem::basis(y), MultiSymElem::basis(z));
        prop_assert_eq!(multisym_mul(&x, &y).unwrap(), multisym_mul(&y, &x).unwrap());
        let left = multisym_mul(&multisym_mul(&x, &y).unwrap(), &z).unwrap();
        let right = multisym_mul(&x, &multisym_mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn roots_of_unity(m in 1u32..=24, k in -30i64..30) {
        prop_assert_eq!(Cyc::zeta_pow(m, m as i64), Cyc::one());
        prop_assert_eq!(&Cyc::zeta_pow(m, k) * &Cyc::zeta_pow(m, -k), Cyc::one());
        let total = (0..m as i64).fold(Cyc::zero(), |acc, j| &acc + &Cyc::zeta_pow(m, j));
        prop_assert_eq!(total.is_zero(), m > 1);
    }

    #[test]
    fn cyclotomic_ring_laws(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let r = rat(p, q);
        prop_assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
    }

    #[test]
    fn conjugation_is_an_involution(p in partition(8)) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().size(), p.size());
    }
}
