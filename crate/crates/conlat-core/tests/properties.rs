//! Property tests over randomly generated finite algebras: the lattice
//! construction against the enumeration oracle, least-ness of principal
//! congruences, join as least upper bound, and closure properties.

use std::sync::Arc;

use conlat_core::algebra::{make_quotient, subalgebra_generated, FiniteAlgebra, OperationTable};
use conlat_core::congruence::{
    congruence_closure, is_congruence, join, principal_congruence, CongruenceLattice,
};
use conlat_core::oracle::{congruences_by_enumeration, least_congruence_over_pair};
use conlat_core::partition::Partition;
use proptest::prelude::*;

/// A random algebra: 2..=5 elements, up to three operations of arity <= 2.
fn algebra_strategy() -> impl Strategy<Value = Arc<FiniteAlgebra>> {
    (2usize..=5)
        .prop_flat_map(|n| {
            let op = (0usize..=2).prop_flat_map(move |arity| {
                proptest::collection::vec(0..n, n.pow(arity as u32))
                    .prop_map(move |table| (arity, table))
            });
            (Just(n), proptest::collection::vec(op, 1..=3))
        })
        .prop_map(|(n, ops)| {
            let operations = ops
                .into_iter()
                .enumerate()
                .map(|(i, (arity, table))| OperationTable::new(format!("f{i}"), arity, table))
                .collect();
            Arc::new(FiniteAlgebra::new("random", n, operations).expect("tables are well-formed"))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_matches_enumeration(alg in algebra_strategy()) {
        let lat = CongruenceLattice::build(&alg);
        let enumerated = congruences_by_enumeration(&alg);
        prop_assert_eq!(lat.elements(), enumerated.as_slice());
    }

    #[test]
    fn principal_congruence_is_least(alg in algebra_strategy(), a in 0usize..5, b in 0usize..5) {
        let n = alg.size();
        let (a, b) = (a % n, b % n);
        let cg = principal_congruence(&alg, a, b);
        prop_assert!(cg.related(a, b));
        prop_assert!(is_congruence(&alg, &cg));
        prop_assert_eq!(cg, least_congruence_over_pair(&alg, a, b));
    }

    #[test]
    fn join_is_the_least_upper_bound(alg in algebra_strategy(), seed in 0u64..1000) {
        let congruences = congruences_by_enumeration(&alg);
        let p = &congruences[(seed as usize) % congruences.len()];
        let q = &congruences[(seed as usize / 7) % congruences.len()];
        let j = join(&alg, p, q);
        prop_assert!(p.leq(&j) && q.leq(&j));
        for upper in &congruences {
            if p.leq(upper) && q.leq(upper) {
                prop_assert!(j.leq(upper));
            }
        }
        // lattice identities
        prop_assert_eq!(p.meet(&Partition::one(alg.size())), p.clone());
        prop_assert_eq!(join(&alg, p, &Partition::zero(alg.size())), p.clone());
    }

    #[test]
    fn subalgebra_generation_is_idempotent_and_monotone(
        alg in algebra_strategy(),
        seed_bits in 1usize..31,
    ) {
        let n = alg.size();
        let seed: Vec<usize> = (0..n).filter(|i| seed_bits & (1 << i) != 0).collect();
        prop_assume!(!seed.is_empty());
        let closed = subalgebra_generated(&alg, &seed).unwrap();
        prop_assert_eq!(subalgebra_generated(&alg, &closed).unwrap(), closed.clone());
        // monotone: a smaller seed generates a subset
        if seed.len() > 1 {
            let smaller = &seed[..seed.len() - 1];
            let sub = subalgebra_generated(&alg, smaller).unwrap();
            prop_assert!(sub.iter().all(|e| closed.contains(e)));
        }
    }

    #[test]
    fn quotient_natural_map_kernel_recovers_theta(alg in algebra_strategy()) {
        for theta in congruences_by_enumeration(&alg) {
            let (_, nat) = make_quotient(&alg, &theta).unwrap();
            prop_assert_eq!(nat.kernel(), theta);
        }
    }

    #[test]
    fn congruence_closure_output_is_a_congruence(
        alg in algebra_strategy(),
        pairs in proptest::collection::vec((0usize..5, 0usize..5), 0..4),
    ) {
        let n = alg.size();
        let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        let c = congruence_closure(&alg, &pairs);
        prop_assert!(is_congruence(&alg, &c));
        for (a, b) in pairs {
            prop_assert!(c.related(a, b));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn partition_canonical_form(pairs in proptest::collection::vec((0usize..8, 0usize..8), 0..12)) {
        let p = Partition::from_pairs(8, &pairs);
        for i in 0..8 {
            prop_assert!(p.rep(i) <= i);
            prop_assert_eq!(p.rep(p.rep(i)), p.rep(i));
        }
        for (a, b) in pairs {
            prop_assert!(p.related(a, b));
        }
    }

    #[test]
    fn meet_is_the_greatest_lower_bound_of_partitions(
        xs in proptest::collection::vec((0usize..7, 0usize..7), 0..10),
        ys in proptest::collection::vec((0usize..7, 0usize..7), 0..10),
    ) {
        let p = Partition::from_pairs(7, &xs);
        let q = Partition::from_pairs(7, &ys);
        let m = p.meet(&q);
        prop_assert!(m.leq(&p) && m.leq(&q));
        for a in 0..7 {
            for b in 0..7 {
                prop_assert_eq!(m.related(a, b), p.related(a, b) && q.related(a, b));
            }
        }
    }
}
