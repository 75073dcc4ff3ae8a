//! Corpus-wide sweeps against the independent oracles: enumeration-based
//! lattices, the normal-subgroup commutator, commutator monotonicity, the
//! two-way restriction computation, and the three-factor pipeline on a cube
//! of small groups.

use std::sync::Arc;

use conlat_core::algebra::{make_product, Embedding, Homomorphism};
use conlat_core::commutator::Commutators;
use conlat_core::congruence::{product_congruence, restrict, CongruenceLattice};
use conlat_core::corpus;
use conlat_core::decompose::{
    is_product_essential, verify_product_essential_pipeline, SubdirectRepresentation,
};
use conlat_core::oracle;
use conlat_core::partition::Partition;
use conlat_core::Limits;

#[test]
fn corpus_lattices_match_enumeration() {
    for entry in corpus::builtin_corpus() {
        assert!(entry.algebra.size() <= 8, "corpus grew; revisit the sweep");
        let lat = CongruenceLattice::build(&entry.algebra);
        let enumerated = oracle::congruences_by_enumeration(&entry.algebra);
        assert_eq!(
            lat.elements(),
            enumerated.as_slice(),
            "lattice mismatch on {}",
            entry.name()
        );
    }
}

#[test]
fn corpus_lattice_shapes() {
    let expected = [
        ("trivial", 1),
        ("z2", 2),
        ("z3", 2),
        ("z4", 3),
        ("z6", 4),
        ("z8", 4),
        ("klein4", 5),
        ("z2xz4", 8),
        ("d4", 6),
        ("q8", 6),
        ("s3", 3),
        ("z4mod", 3),
        ("chain2", 2),
        ("chain3", 4),
        ("chain5", 16),
        ("m3", 2),
        ("set3", 5),
        ("set4", 15),
    ];
    for (name, size) in expected {
        let entry = corpus::corpus_entry(name).unwrap();
        let lat = CongruenceLattice::build(&entry.algebra);
        assert_eq!(lat.len(), size, "congruence count of {name}");
    }
}

#[test]
fn commutator_bound_and_symmetry_across_corpus() {
    for entry in corpus::builtin_corpus() {
        if entry.difference_term.is_none() {
            continue;
        }
        let lat = CongruenceLattice::build(&entry.algebra);
        let mut comms = Commutators::new(&lat).unwrap();
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                let ab = comms.commutator_idx(a, b).unwrap();
                assert!(lat.leq_idx(ab, lat.meet_idx(a, b)), "{}", entry.name());
                assert_eq!(ab, comms.commutator_idx(b, a).unwrap(), "{}", entry.name());
            }
        }
    }
}

#[test]
fn commutator_is_monotone() {
    for entry in corpus::builtin_corpus() {
        if entry.difference_term.is_none() || entry.algebra.size() > 8 {
            continue;
        }
        let lat = CongruenceLattice::build(&entry.algebra);
        if lat.len() > 12 {
            continue;
        }
        let mut comms = Commutators::new(&lat).unwrap();
        for a in 0..lat.len() {
            for a2 in 0..lat.len() {
                if !lat.leq_idx(a, a2) {
                    continue;
                }
                for b in 0..lat.len() {
                    for b2 in 0..lat.len() {
                        if !lat.leq_idx(b, b2) {
                            continue;
                        }
                        let small = comms.commutator_idx(a, b).unwrap();
                        let large = comms.commutator_idx(a2, b2).unwrap();
                        assert!(lat.leq_idx(small, large), "{}", entry.name());
                    }
                }
            }
        }
    }
}

#[test]
fn group_commutator_oracle_over_all_group_entries() {
    for name in ["trivial", "z2", "z3", "z4", "z6", "z8", "klein4", "z2xz4", "d4", "q8", "s3"] {
        let alg = corpus::corpus_entry(name).unwrap().algebra;
        let lat = CongruenceLattice::build(&alg);
        let mut comms = Commutators::new(&lat).unwrap();
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                let ours = comms.commutator_idx(a, b).unwrap();
                let oracle_value =
                    oracle::group_commutator_oracle(&alg, lat.partition(a), lat.partition(b))
                        .unwrap();
                assert_eq!(lat.partition(ours), &oracle_value, "{name} ({a}, {b})");
            }
        }
    }
}

/// The restriction of a product congruence along a subdirect embedding,
/// computed through tuples and through the kernels directly, must agree.
#[test]
fn product_congruence_restriction_two_ways() {
    let z6 = corpus::z6();
    let ker2 = Partition::from_pairs(6, &[(0, 2), (2, 4), (1, 3), (3, 5)]);
    let ker3 = Partition::from_pairs(6, &[(0, 3), (1, 4), (2, 5)]);
    let rep = SubdirectRepresentation::new(&z6, vec![ker2.clone(), ker3.clone()]).unwrap();
    let lat_a = CongruenceLattice::build(&rep.factors()[0]);
    let lat_b = CongruenceLattice::build(&rep.factors()[1]);
    for pa in lat_a.elements() {
        for pb in lat_b.elements() {
            let prod = product_congruence(
                &rep.product().factor_sizes(),
                &[pa.clone(), pb.clone()],
            )
            .unwrap();
            // via the embedding
            let via_tuples = restrict(&prod, rep.embedding());
            // via the kernels: pull each factor congruence back and meet
            let mut pairs = Vec::new();
            for a in 0..6 {
                for b in a + 1..6 {
                    let ra = pa.related(rep.naturals()[0].apply(a), rep.naturals()[0].apply(b));
                    let rb = pb.related(rep.naturals()[1].apply(a), rep.naturals()[1].apply(b));
                    if ra && rb {
                        pairs.push((a, b));
                    }
                }
            }
            let via_kernels = Partition::from_pairs(6, &pairs);
            assert_eq!(via_tuples, via_kernels);
        }
    }
}

#[test]
fn cube_of_z2_three_factor_pipeline() {
    // Z2 x Z2 x Z2 with its three projection kernels is product-essential
    // and essential
    let z2 = corpus::z2();
    let prod = make_product(&[z2.clone(), z2.clone(), z2.clone()]).unwrap();
    let cube = Arc::new((**prod.algebra()).clone().rename("z2cubed"));
    let kernels: Vec<Partition> = prod.projections().iter().map(Homomorphism::kernel).collect();
    let rep = SubdirectRepresentation::new(&cube, kernels).unwrap();
    assert!(is_product_essential(&rep).unwrap().holds());
    let report = verify_product_essential_pipeline(&rep, &Limits::default()).unwrap();
    assert!(report.all_pass(), "{:?}", report.items);
    assert!(rep.embedding().is_surjective());
}

#[test]
fn diagonal_embedding_is_registered_as_not_essential() {
    // the identity-and-sign representation of s3 is subdirect but not
    // product-essential; its pipeline precondition must refuse
    let s3 = corpus::s3();
    let a3 = Partition::from_pairs(6, &[(0, 3), (3, 4), (1, 2), (2, 5)]);
    let rep = SubdirectRepresentation::new(&s3, vec![Partition::zero(6), a3]).unwrap();
    assert!(!is_product_essential(&rep).unwrap().holds());
    assert!(verify_product_essential_pipeline(&rep, &Limits::default()).is_err());
}

#[test]
fn embedding_image_identification() {
    // a in A is identified with the tuple of its kernel classes, and the
    // encoded image matches the product encoding
    let z6 = corpus::z6();
    let ker2 = Partition::from_pairs(6, &[(0, 2), (2, 4), (1, 3), (3, 5)]);
    let ker3 = Partition::from_pairs(6, &[(0, 3), (1, 4), (2, 5)]);
    let rep = SubdirectRepresentation::new(&z6, vec![ker2, ker3]).unwrap();
    for a in 0..6 {
        let coords: Vec<usize> = rep.naturals().iter().map(|nat| nat.apply(a)).collect();
        assert_eq!(rep.embedding().apply(a), rep.product().encode(&coords));
    }
    let id = Embedding::identity(&z6);
    assert_eq!(id.image(), (0..6).collect::<Vec<_>>());
}
