//! Acceptance suite: one test per criterion, each printing a pass line with
//! its timing. Run with `cargo test -p conlat-cli --test acceptance`.

use std::time::{Duration, Instant};

use conlat_cli::verify::{render_report, run_suite, SuiteConfig};
use conlat_core::algebra::find_isomorphism;
use conlat_core::check::CheckOutcome;
use conlat_core::commutator::{check_c1, Commutators};
use conlat_core::congruence::{principal_congruence, CongruenceLattice};
use conlat_core::corpus;
use conlat_core::decompose::{
    check_unique_factorization, decompose_absolute_retract, split_center_abelian,
    DecompositionOutcome,
};
use conlat_core::gumm::build_cube_extension;
use conlat_core::oracle;
use conlat_core::Limits;

fn limits() -> Limits {
    Limits::default()
}

fn pass(criterion: usize, label: &str, elapsed: Duration) {
    println!(
        "acceptance {criterion:02} {label}: PASS ({:.2}s)",
        elapsed.as_secs_f64()
    );
}

/// Runs one suite check and asserts it passed, returning its detail line.
fn suite_check(name: &str) -> String {
    let config = SuiteConfig {
        check_filter: Some(name.to_string()),
        ..SuiteConfig::default()
    };
    let results = run_suite(&config);
    assert_eq!(results.len(), 1, "exactly one check should run");
    let r = &results[0];
    match &r.outcome {
        CheckOutcome::Pass => r.detail.clone(),
        CheckOutcome::Fail { witness } => panic!("check {name} failed: {witness}"),
        CheckOutcome::Skipped { reason } => panic!("check {name} was skipped: {reason}"),
    }
}

#[test]
fn criterion_01_congruence_lattice_oracle() {
    let start = Instant::now();
    let mut algebras = 0usize;
    for entry in corpus::builtin_corpus() {
        if entry.algebra.size() > 8 {
            continue;
        }
        let lat = CongruenceLattice::build(&entry.algebra);
        let enumerated = oracle::congruences_by_enumeration(&entry.algebra);
        assert_eq!(
            lat.elements(),
            enumerated.as_slice(),
            "lattice differs from enumeration on {}",
            entry.name()
        );
        algebras += 1;
    }
    assert!(algebras >= 19, "the whole corpus is within the size bound");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    pass(1, "congruence lattice enumeration oracle", elapsed);
}

#[test]
fn criterion_02_commutator_oracles() {
    let start = Instant::now();
    for name in ["z4", "z6", "klein4", "d4", "q8", "s3"] {
        let alg = corpus::corpus_entry(name).unwrap().algebra;
        let lat = CongruenceLattice::build(&alg);
        let mut comms = Commutators::new(&lat).unwrap();
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                let ours = comms.commutator_idx(a, b).unwrap();
                let oracle_value =
                    oracle::group_commutator_oracle(&alg, lat.partition(a), lat.partition(b))
                        .unwrap();
                assert_eq!(
                    lat.partition(ours),
                    &oracle_value,
                    "group-oracle mismatch on {name} at ({a}, {b})"
                );
            }
        }
    }
    for name in ["chain2", "chain3", "chain5", "m3", "n5"] {
        let alg = corpus::corpus_entry(name).unwrap().algebra;
        let lat = CongruenceLattice::build(&alg);
        let mut comms = Commutators::new(&lat).unwrap();
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                assert_eq!(
                    comms.commutator_idx(a, b).unwrap(),
                    lat.meet_idx(a, b),
                    "meet-oracle mismatch on {name} at ({a}, {b})"
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    pass(2, "commutator group and meet oracles", elapsed);
}

#[test]
fn criterion_03_centers() {
    let start = Instant::now();
    for name in ["d4", "q8"] {
        let alg = corpus::corpus_entry(name).unwrap().algebra;
        let lat = CongruenceLattice::build(&alg);
        let mut comms = Commutators::new(&lat).unwrap();
        let zeta = comms.center().unwrap();
        assert_eq!(
            zeta,
            oracle::group_center_oracle(&alg).unwrap(),
            "center of {name} must match the brute-force group center"
        );
        // the group center has two elements, so its cosets have 4 blocks
        assert_eq!(zeta.num_blocks(), 4, "center of {name}");
    }
    for name in ["trivial", "z2", "z3", "z4", "z6", "z8", "klein4", "z2xz4", "z4mod"] {
        let alg = corpus::corpus_entry(name).unwrap().algebra;
        let lat = CongruenceLattice::build(&alg);
        let mut comms = Commutators::new(&lat).unwrap();
        assert!(comms.center().unwrap().is_one(), "{name} is abelian");
    }
    {
        let alg = corpus::corpus_entry("s3").unwrap().algebra;
        let lat = CongruenceLattice::build(&alg);
        let mut comms = Commutators::new(&lat).unwrap();
        assert!(comms.center().unwrap().is_zero(), "s3 is centerless");
    }
    pass(3, "centers", start.elapsed());
}

#[test]
fn criterion_04_interval_product_congruences() {
    let start = Instant::now();
    let detail = suite_check("lemma21");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    pass(4, &format!("interval decomposition ({detail})"), elapsed);
}

#[test]
fn criterion_05_density_of_products() {
    let start = Instant::now();
    let detail = suite_check("lemma22");
    pass(5, &format!("dense products ({detail})"), start.elapsed());
}

#[test]
fn criterion_06_term_condition_and_central_identity() {
    let start = Instant::now();
    let detail = suite_check("thm23");
    assert!(
        detail.contains("flagged=0"),
        "no basic-scope discrepancies expected on this corpus, got: {detail}"
    );
    suite_check("cor24");
    pass(6, "term conditions and the central identity", start.elapsed());
}

#[test]
fn criterion_07_product_essential_pipeline() {
    let start = Instant::now();
    let detail = suite_check("thm33");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    pass(7, &format!("subdirect pipeline ({detail})"), elapsed);
}

#[test]
fn criterion_08_decomposition_into_irreducibles() {
    let start = Instant::now();
    // z6 decomposes into Z2 x Z3 with a verified onto embedding
    let z6 = corpus::z6();
    let report = decompose_absolute_retract(&z6, &limits()).unwrap();
    match report.outcome {
        DecompositionOutcome::ProductOfSis {
            factors,
            isomorphism,
            ..
        } => {
            let mut sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
            sizes.sort_unstable();
            assert_eq!(sizes, vec![2, 3]);
            for f in &factors {
                assert!(CongruenceLattice::build(f).is_si());
                assert!(
                    find_isomorphism(f, &corpus::z2()).is_some()
                        || find_isomorphism(f, &corpus::z3()).is_some()
                );
            }
            assert!(isomorphism.unwrap().is_surjective());
        }
        other => panic!("z6 decomposition came out as {other:?}"),
    }
    // single-factor outcomes for z4 and the subdirectly irreducible entries
    for name in ["z4", "z2", "z3", "z8", "d4", "q8", "s3", "z4mod", "m3", "chain2"] {
        let alg = corpus::corpus_entry(name).unwrap().algebra;
        let report = decompose_absolute_retract(&alg, &limits()).unwrap();
        match report.outcome {
            DecompositionOutcome::ProductOfSis { factors, .. } => {
                assert_eq!(factors.len(), 1, "{name} must stay a single factor");
                assert_eq!(factors[0].size(), alg.size());
            }
            other => panic!("{name} decomposition came out as {other:?}"),
        }
    }
    pass(8, "decomposition into subdirect irreducibles", start.elapsed());
}

#[test]
fn criterion_09_center_commutator_split() {
    let start = Instant::now();
    for name in ["z2", "z3", "z4", "z6", "z8", "klein4", "z2xz4", "z4mod"] {
        let alg = corpus::corpus_entry(name).unwrap().algebra;
        let report = split_center_abelian(&alg, &limits()).unwrap();
        match report.outcome {
            DecompositionOutcome::CenterSplit {
                theta,
                psi,
                centerless,
                abelian,
                ..
            } => {
                assert!(theta.is_one() && psi.is_zero(), "{name} is abelian");
                assert_eq!(centerless.size(), 1);
                assert_eq!(abelian.size(), alg.size());
            }
            other => panic!("{name} split came out as {other:?}"),
        }
    }
    {
        let s3 = corpus::s3();
        let report = split_center_abelian(&s3, &limits()).unwrap();
        match report.outcome {
            DecompositionOutcome::CenterSplit {
                theta,
                psi,
                centerless,
                abelian,
                ..
            } => {
                assert!(theta.is_zero() && psi.is_one());
                assert_eq!(centerless.size(), 6);
                assert_eq!(abelian.size(), 1);
                let c_lat = CongruenceLattice::build(&centerless);
                let mut c = Commutators::new(&c_lat).unwrap();
                assert!(c.is_centerless().unwrap());
                let a_lat = CongruenceLattice::build(&abelian);
                let mut a = Commutators::new(&a_lat).unwrap();
                assert!(a.is_abelian().unwrap());
            }
            other => panic!("s3 split came out as {other:?}"),
        }
    }
    {
        let d4 = corpus::d4();
        let report = split_center_abelian(&d4, &limits()).unwrap();
        match report.outcome {
            DecompositionOutcome::C1HypothesisFailed { witness } => {
                assert_eq!(
                    witness,
                    principal_congruence(&d4, 0, 2),
                    "the overlap witness is the congruence of the two-element center"
                );
            }
            other => panic!("d4 split came out as {other:?}"),
        }
        assert_eq!(report.c1_holds, Some(false));
    }
    pass(9, "centerless/abelian split", start.elapsed());
}

#[test]
fn criterion_10_commutator_identity() {
    let start = Instant::now();
    for name in ["trivial", "z2", "z3", "z4", "z6", "z8", "klein4", "z2xz4", "z4mod", "s3"] {
        let alg = corpus::corpus_entry(name).unwrap().algebra;
        let lat = CongruenceLattice::build(&alg);
        let mut comms = Commutators::new(&lat).unwrap();
        assert!(check_c1(&mut comms).unwrap().holds, "(C1) must hold on {name}");
    }
    {
        let d4 = corpus::d4();
        let lat = CongruenceLattice::build(&d4);
        let mut comms = Commutators::new(&lat).unwrap();
        let out = check_c1(&mut comms).unwrap();
        assert!(!out.holds, "(C1) must fail on d4");
        // the stated witness: alpha = Cg(e, r^2), beta = 1
        let cg = lat.index_of(&principal_congruence(&d4, 0, 2)).unwrap();
        let one = lat.one_index();
        let lhs = lat.meet_idx(cg, comms.commutator_idx(one, one).unwrap());
        let rhs = comms.commutator_idx(lat.meet_idx(cg, one), one).unwrap();
        assert_eq!(lat.partition(lhs), &principal_congruence(&d4, 0, 2));
        assert_eq!(rhs, lat.zero_index());
    }
    pass(10, "commutator identity evaluation", start.elapsed());
}

#[test]
fn criterion_11_central_extension_sweep() {
    let start = Instant::now();
    let detail = suite_check("propa1");
    let extensions: usize = detail
        .split_whitespace()
        .find_map(|w| w.strip_prefix("extensions=").and_then(|v| v.parse().ok()))
        .unwrap_or(0);
    assert!(extensions > 500, "sweep looks too small: {detail}");
    pass(
        11,
        &format!("central-extension postconditions ({detail})"),
        start.elapsed(),
    );
}

#[test]
fn criterion_12_cube_extensions() {
    for name in ["d4", "q8"] {
        let start = Instant::now();
        let entry = corpus::corpus_entry(name).unwrap();
        let d = entry.difference_term.clone().unwrap();
        let cube = build_cube_extension(&entry.algebra, &d, &limits()).unwrap();
        assert!(cube.hypotheses.hold(), "{name} satisfies the hypotheses");
        assert!(cube.proper, "{name} cube extension must be proper");
        assert!(
            cube.essential.as_ref().map(|o| o.is_essential()) == Some(true),
            "{name} cube extension must be essential"
        );
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(600), "{name} took {elapsed:?}");
        println!(
            "acceptance 12 cube {name}: proper essential ({:.2}s)",
            elapsed.as_secs_f64()
        );
    }
    for name in ["trivial", "z2", "z3", "z4", "z6", "z8", "klein4", "z2xz4", "z4mod"] {
        let start = Instant::now();
        let entry = corpus::corpus_entry(name).unwrap();
        let d = entry.difference_term.clone().unwrap();
        let cube = build_cube_extension(&entry.algebra, &d, &limits()).unwrap();
        assert!(
            !cube.proper,
            "{name} is abelian, so the embedding must be onto"
        );
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(600), "{name} took {elapsed:?}");
    }
    pass(12, "cube extensions", Duration::from_secs(0));
}

#[test]
fn criterion_13_unique_factorization() {
    let start = Instant::now();
    let mut checked = 0usize;
    for entry in corpus::builtin_corpus() {
        if entry.algebra.size() > 16 {
            continue;
        }
        let report = check_unique_factorization(&entry.algebra, &limits()).unwrap();
        assert!(report.unique, "unique factorization fails on {}", entry.name());
        checked += 1;
    }
    assert_eq!(checked, 19);
    pass(13, "unique factorization evidence", start.elapsed());
}

#[test]
fn criterion_14_report_determinism() {
    let start = Instant::now();
    let render = |seed: u64| {
        let config = SuiteConfig {
            seed,
            ..SuiteConfig::default()
        };
        let results = run_suite(&config);
        render_report(&results, corpus::builtin_corpus().len())
    };
    let first = render(0);
    let second = render(0);
    assert_eq!(first, second, "consecutive runs must render identically");
    let reseeded = render(12345);
    assert_eq!(
        first, reseeded,
        "the seed shuffles processing order only; reports must not change"
    );
    assert!(first.contains("#summary"));
    pass(14, "byte-identical verification reports", start.elapsed());
}

/// The suite must cover every named check exactly once.
#[test]
fn suite_coverage_is_complete() {
    use conlat_cli::verify::CHECK_NAMES;
    let results = run_suite(&SuiteConfig::default());
    let names: Vec<&str> = results.iter().map(|r| r.name).collect();
    let mut expected = CHECK_NAMES.to_vec();
    expected.sort_unstable();
    assert_eq!(names, expected, "every check runs exactly once");
    let mut dedup = names.clone();
    dedup.dedup();
    assert_eq!(dedup.len(), names.len());
}
