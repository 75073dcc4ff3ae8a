//! Command-line verbs and flag handling.
//!
//! Exit codes: 0 when everything asked for passes, 1 when a falsification
//! or witness is found, 2 for usage errors and resource refusals.

use std::fmt::Write as _;
use std::sync::Arc;

use conlat_core::algebra::FiniteAlgebra;
use conlat_core::commutator::Commutators;
use conlat_core::congruence::{check_congruence, CongruenceLattice};
use conlat_core::corpus;
use conlat_core::decompose::{
    check_unique_factorization, decompose_absolute_retract, split_center_abelian,
    DecompositionOutcome,
};
use conlat_core::error::Error;
use conlat_core::gumm::{build_cube_extension, DifferenceTerm};
use conlat_core::oracle;
use conlat_core::partition::Partition;
use conlat_core::Limits;

use crate::dot::export_dot;
use crate::format::{parse_algebra, print_algebra};
use crate::verify::{render_report, run_suite, suite_green, SuiteConfig, CHECK_NAMES};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_WITNESS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_MAX_SIZE: usize = 1024;
const DEFAULT_MAX_LATTICE: usize = 4096;

const USAGE: &str = "usage: conlat <verb> [flags]

verbs:
  con        print the congruence lattice        [--alg FILE] [--dot FILE]
  comm       commutator of two congruences       [--alg FILE] --alpha P --beta P
  center     the center congruence               [--alg FILE]
  dense      density of a congruence             [--alg FILE] --theta P
  fsi        finite subdirect irreducibility     [--alg FILE]
  si         subdirect irreducibility            [--alg FILE]
  decompose  subdirect-irreducible decomposition [--alg FILE]
  split      centerless/abelian split            [--alg FILE]
  ufp        unique-factorization check          [--alg FILE]
  cube       cube essential extension            [--alg FILE] --term NAME
  verify     run the verification suite          [--check NAME] [--corpus NAME]...
  oracle     brute-force cross-checks
  print      print a builtin algebra file        --name NAME

flags:
  --alg FILE     algebra file (or builtin name via --name on some verbs)
  --name NAME    builtin corpus algebra name
  --max-size N   universe-size limit (default 1024; env CONLAT_MAX_SIZE)
  --seed N       processing-order seed; results are order-independent
  --term NAME    difference term: group_d, module_d, lattice_d

partitions are written as blocks of comma-separated elements joined by `|`,
e.g. 0,2|1,3; unlisted elements are singletons.";

struct Flags {
    alg: Option<String>,
    name: Option<String>,
    dot: Option<String>,
    alpha: Option<String>,
    beta: Option<String>,
    theta: Option<String>,
    term: Option<String>,
    check: Option<String>,
    corpus: Vec<String>,
    max_size: Option<usize>,
    seed: u64,
}

fn parse_flags(args: &[String]) -> Result<Flags, String> {
    let mut flags = Flags {
        alg: None,
        name: None,
        dot: None,
        alpha: None,
        beta: None,
        theta: None,
        term: None,
        check: None,
        corpus: Vec::new(),
        max_size: None,
        seed: 0,
    };
    let mut i = 0;
    while i < args.len() {
        let flag = args[i].as_str();
        let value = |i: &mut usize| -> Result<String, String> {
            *i += 1;
            args.get(*i)
                .cloned()
                .ok_or_else(|| format!("flag {flag} needs a value"))
        };
        match flag {
            "--alg" => flags.alg = Some(value(&mut i)?),
            "--name" => flags.name = Some(value(&mut i)?),
            "--dot" => flags.dot = Some(value(&mut i)?),
            "--alpha" => flags.alpha = Some(value(&mut i)?),
            "--beta" => flags.beta = Some(value(&mut i)?),
            "--theta" => flags.theta = Some(value(&mut i)?),
            "--term" => flags.term = Some(value(&mut i)?),
            "--check" => flags.check = Some(value(&mut i)?),
            "--corpus" => flags.corpus.push(value(&mut i)?),
            "--max-size" => {
                let v = value(&mut i)?;
                flags.max_size =
                    Some(v.parse().map_err(|_| format!("bad --max-size value `{v}`"))?)
            }
            "--seed" => {
                let v = value(&mut i)?;
                flags.seed = v.parse().map_err(|_| format!("bad --seed value `{v}`"))?
            }
            other => return Err(format!("unknown flag `{other}`")),
        }
        i += 1;
    }
    Ok(flags)
}

fn effective_limits(flags: &Flags) -> Limits {
    let env = std::env::var("CONLAT_MAX_SIZE")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    Limits {
        max_universe: flags.max_size.or(env).unwrap_or(DEFAULT_MAX_SIZE),
        max_lattice: DEFAULT_MAX_LATTICE,
    }
}

/// Parses the block syntax `0,2|1,3`; unlisted elements become singletons.
pub fn parse_partition(text: &str, n: usize) -> Result<Partition, String> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n];
    for block_text in text.split('|') {
        let mut block = Vec::new();
        for piece in block_text.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                return Err(format!("empty element in partition `{text}`"));
            }
            let e: usize = piece
                .parse()
                .map_err(|_| format!("bad element `{piece}` in partition"))?;
            if e >= n {
                return Err(format!("element {e} out of range for size {n}"));
            }
            if seen[e] {
                return Err(format!("element {e} listed twice"));
            }
            seen[e] = true;
            block.push(e);
        }
        blocks.push(block);
    }
    Partition::from_blocks(n, &blocks).map_err(|e| e.to_string())
}

fn load_algebra(flags: &Flags) -> Result<Arc<FiniteAlgebra>, (i32, String)> {
    if let Some(name) = &flags.name {
        return corpus::corpus_entry(name)
            .map(|e| e.algebra)
            .ok_or_else(|| (EXIT_USAGE, format!("unknown builtin algebra `{name}`")));
    }
    let path = flags
        .alg
        .as_ref()
        .ok_or_else(|| (EXIT_USAGE, "missing --alg FILE (or --name NAME)".to_string()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| (EXIT_USAGE, format!("cannot read {path}: {e}")))?;
    let alg = parse_algebra(&text).map_err(|e| (EXIT_USAGE, format!("{path}:{e}")))?;
    let limits = effective_limits(flags);
    if alg.size() > limits.max_universe {
        return Err((
            EXIT_USAGE,
            format!(
                "algebra has {} elements, exceeding the limit {}",
                alg.size(),
                limits.max_universe
            ),
        ));
    }
    Ok(alg)
}

fn error_exit(e: &Error) -> i32 {
    match e {
        Error::Falsified(_) => EXIT_WITNESS,
        _ => EXIT_USAGE,
    }
}

fn congruence_flag(
    flags_value: &Option<String>,
    flag: &str,
    alg: &Arc<FiniteAlgebra>,
) -> Result<Partition, (i32, String)> {
    let text = flags_value
        .as_ref()
        .ok_or_else(|| (EXIT_USAGE, format!("missing {flag} PARTITION")))?;
    let p = parse_partition(text, alg.size()).map_err(|m| (EXIT_USAGE, m))?;
    check_congruence(alg, &p).map_err(|e| {
        (
            EXIT_USAGE,
            format!("{flag} is not a congruence of {}: {e}", alg.name()),
        )
    })?;
    Ok(p)
}

/// Runs one command; returns the exit status and the full report text.
pub fn run_command(args: &[String]) -> (i32, String) {
    let mut out = String::new();
    if args.is_empty() {
        return (EXIT_USAGE, format!("{USAGE}\n"));
    }
    let verb = args[0].as_str();
    let flags = match parse_flags(&args[1..]) {
        Ok(f) => f,
        Err(m) => return (EXIT_USAGE, format!("{m}\n{USAGE}\n")),
    };
    let limits = effective_limits(&flags);

    macro_rules! load {
        () => {
            match load_algebra(&flags) {
                Ok(a) => a,
                Err((code, msg)) => return (code, format!("{msg}\n")),
            }
        };
    }
    macro_rules! lattice {
        ($alg:expr) => {
            match CongruenceLattice::try_build($alg, limits.max_lattice) {
                Ok(l) => l,
                Err(e) => return (error_exit(&e), format!("{e}\n")),
            }
        };
    }

    let code = match verb {
        "con" => {
            let alg = load!();
            let lat = lattice!(&alg);
            let _ = writeln!(out, "algebra {}: {} congruences", alg.name(), lat.len());
            for (i, p) in lat.elements().iter().enumerate() {
                let _ = writeln!(out, "  {i}: {}", p.display());
            }
            let _ = writeln!(
                out,
                "modular: {}",
                if lat.is_modular().is_ok() { "yes" } else { "no" }
            );
            if let Some(path) = &flags.dot {
                let dot = export_dot(&lat);
                if let Err(e) = std::fs::write(path, dot) {
                    return (EXIT_USAGE, format!("cannot write {path}: {e}\n"));
                }
                let _ = writeln!(out, "wrote {path}");
            }
            EXIT_PASS
        }
        "comm" => {
            let alg = load!();
            let alpha = match congruence_flag(&flags.alpha, "--alpha", &alg) {
                Ok(p) => p,
                Err((c, m)) => return (c, format!("{m}\n")),
            };
            let beta = match congruence_flag(&flags.beta, "--beta", &alg) {
                Ok(p) => p,
                Err((c, m)) => return (c, format!("{m}\n")),
            };
            let lat = lattice!(&alg);
            let mut comms = match Commutators::new(&lat) {
                Ok(c) => c,
                Err(e) => return (EXIT_USAGE, format!("{e}\n")),
            };
            match comms.commutator(&alpha, &beta) {
                Ok(c) => {
                    let _ = writeln!(out, "[{}, {}] = {}", alpha, beta, c);
                    EXIT_PASS
                }
                Err(e) => return (error_exit(&e), format!("{e}\n")),
            }
        }
        "center" => {
            let alg = load!();
            let lat = lattice!(&alg);
            let mut comms = match Commutators::new(&lat) {
                Ok(c) => c,
                Err(e) => return (EXIT_USAGE, format!("{e}\n")),
            };
            match comms.center() {
                Ok(z) => {
                    let _ = writeln!(out, "center = {z}");
                    let _ = writeln!(
                        out,
                        "abelian: {}, centerless: {}",
                        z.is_one(),
                        z.is_zero()
                    );
                    EXIT_PASS
                }
                Err(e) => return (error_exit(&e), format!("{e}\n")),
            }
        }
        "dense" => {
            let alg = load!();
            let theta = match congruence_flag(&flags.theta, "--theta", &alg) {
                Ok(p) => p,
                Err((c, m)) => return (c, format!("{m}\n")),
            };
            let lat = lattice!(&alg);
            let idx = lat.index_of(&theta).expect("checked congruence");
            match lat.is_dense_idx(idx) {
                Ok(()) => {
                    let _ = writeln!(out, "dense: yes");
                    EXIT_PASS
                }
                Err(w) => {
                    let _ = writeln!(out, "dense: no, witness {}", lat.partition(w));
                    EXIT_WITNESS
                }
            }
        }
        "fsi" | "si" => {
            let alg = load!();
            let lat = lattice!(&alg);
            let verdict = if verb == "fsi" { lat.is_fsi() } else { lat.is_si() };
            let _ = writeln!(out, "{verb}: {}", if verdict { "yes" } else { "no" });
            EXIT_PASS
        }
        "decompose" => {
            let alg = load!();
            match decompose_absolute_retract(&alg, &limits) {
                Ok(report) => render_decomposition(&mut out, &report.outcome),
                Err(e) => return (error_exit(&e), format!("{e}\n")),
            }
        }
        "split" => {
            let alg = load!();
            match split_center_abelian(&alg, &limits) {
                Ok(report) => {
                    if let Some(c1) = report.c1_holds {
                        let _ = writeln!(
                            out,
                            "commutator identity (C1) holds on this algebra: {c1}"
                        );
                    }
                    render_decomposition(&mut out, &report.outcome)
                }
                Err(e) => return (error_exit(&e), format!("{e}\n")),
            }
        }
        "ufp" => {
            let alg = load!();
            match check_unique_factorization(&alg, &limits) {
                Ok(report) => {
                    let _ = writeln!(
                        out,
                        "factorizations into indecomposables: {}",
                        report.factorizations.len()
                    );
                    for (i, f) in report.factorizations.iter().enumerate() {
                        let sizes: Vec<String> =
                            f.factors.iter().map(|x| x.size().to_string()).collect();
                        let _ = writeln!(out, "  {i}: sizes [{}]", sizes.join(", "));
                    }
                    if report.unique {
                        let _ = writeln!(out, "unique factorization: yes");
                        EXIT_PASS
                    } else {
                        let (i, j) = report.witness.unwrap();
                        let _ = writeln!(
                            out,
                            "unique factorization: NO, factorizations {i} and {j} differ"
                        );
                        EXIT_WITNESS
                    }
                }
                Err(e) => return (error_exit(&e), format!("{e}\n")),
            }
        }
        "cube" => {
            let alg = load!();
            let term_name = match &flags.term {
                Some(t) => t.clone(),
                None => return (EXIT_USAGE, "missing --term NAME\n".to_string()),
            };
            let d = match corpus::difference_term_by_name(&term_name) {
                Some(d) => d,
                None => {
                    return (
                        EXIT_USAGE,
                        format!(
                            "unknown difference term `{term_name}` (available: {})\n",
                            corpus::DIFFERENCE_TERM_NAMES.join(", ")
                        ),
                    )
                }
            };
            // validate and record the term on the base before building
            let mut record = DifferenceTerm::new(d);
            {
                let lat = match CongruenceLattice::try_build(&alg, limits.max_lattice) {
                    Ok(l) => l,
                    Err(e) => return (error_exit(&e), format!("{e}\n")),
                };
                if let Err(e) = record.validate_on(&lat) {
                    return (EXIT_USAGE, format!("{e}\n"));
                }
            }
            match build_cube_extension(&alg, &record.term, &limits) {
                Ok(cube) => {
                    let _ = writeln!(out, "base: {} ({} elements)", alg.name(), alg.size());
                    let _ = writeln!(
                        out,
                        "difference term `{term_name}` validated on: {}",
                        record.validated_on.join(", ")
                    );
                    let _ = writeln!(out, "center: {}", cube.center);
                    let _ = writeln!(
                        out,
                        "hypotheses: non-abelian={}, center-dense={}",
                        cube.hypotheses.non_abelian, cube.hypotheses.center_dense
                    );
                    let _ = writeln!(
                        out,
                        "chained subalgebra: {} of {} cube elements",
                        cube.chained.size(),
                        cube.cube.algebra().size()
                    );
                    let _ = writeln!(
                        out,
                        "extension: {} into {} elements, proper: {}",
                        cube.quotient_chained.size(),
                        cube.quotient_cube.size(),
                        cube.proper
                    );
                    match &cube.essential {
                        Some(o) => {
                            let _ = writeln!(out, "essential: {}", o.is_essential());
                        }
                        None => {
                            let _ =
                                writeln!(out, "essential: not evaluated (hypotheses not met)");
                        }
                    }
                    EXIT_PASS
                }
                Err(e) => return (error_exit(&e), format!("{e}\n")),
            }
        }
        "verify" => {
            if let Some(check) = &flags.check {
                if !CHECK_NAMES.contains(&check.as_str()) {
                    return (
                        EXIT_USAGE,
                        format!(
                            "unknown check `{check}` (available: {})\n",
                            CHECK_NAMES.join(", ")
                        ),
                    );
                }
            }
            let config = SuiteConfig {
                limits,
                corpus_filter: flags.corpus.clone(),
                check_filter: flags.check.clone(),
                seed: flags.seed,
            };
            let corpus_size = corpus::builtin_corpus()
                .iter()
                .filter(|e| {
                    config.corpus_filter.is_empty()
                        || config.corpus_filter.iter().any(|n| n == e.name())
                })
                .count();
            let results = run_suite(&config);
            out.push_str(&render_report(&results, corpus_size));
            if suite_green(&results) {
                EXIT_PASS
            } else {
                EXIT_WITNESS
            }
        }
        "oracle" => {
            let green = run_oracle(&mut out);
            if green {
                EXIT_PASS
            } else {
                EXIT_WITNESS
            }
        }
        "print" => {
            let alg = load!();
            out.push_str(&print_algebra(&alg));
            EXIT_PASS
        }
        "help" | "--help" | "-h" => {
            let _ = writeln!(out, "{USAGE}");
            EXIT_PASS
        }
        other => {
            return (EXIT_USAGE, format!("unknown verb `{other}`\n{USAGE}\n"));
        }
    };
    (code, out)
}

fn render_decomposition(out: &mut String, outcome: &DecompositionOutcome) -> i32 {
    match outcome {
        DecompositionOutcome::ProductOfSis { factors, .. } => {
            let _ = writeln!(
                out,
                "product of {} subdirectly irreducible factor(s)",
                factors.len()
            );
            for (i, f) in factors.iter().enumerate() {
                let _ = writeln!(out, "  factor {i}: {} elements", f.size());
            }
            EXIT_PASS
        }
        DecompositionOutcome::CenterSplit {
            theta,
            psi,
            centerless,
            abelian,
            ..
        } => {
            let _ = writeln!(out, "theta = {theta}");
            let _ = writeln!(out, "psi   = {psi}");
            let _ = writeln!(
                out,
                "centerless part: {} elements; abelian part: {} elements",
                centerless.size(),
                abelian.size()
            );
            EXIT_PASS
        }
        DecompositionOutcome::ProperEssentialExtension { embedding, .. } => {
            let _ = writeln!(
                out,
                "proper essential extension: {} into {} elements (not an absolute retract)",
                embedding.source().size(),
                embedding.target().size()
            );
            EXIT_PASS
        }
        DecompositionOutcome::C1HypothesisFailed { witness } => {
            let _ = writeln!(
                out,
                "commutator-identity hypothesis fails: center meets the total commutator in {witness}"
            );
            EXIT_WITNESS
        }
        DecompositionOutcome::Refused { reason } => {
            let _ = writeln!(out, "refused: {reason}");
            EXIT_USAGE
        }
    }
}

/// The brute-force cross-checks: enumeration-based congruence lattices,
/// the normal-subgroup commutator, the meet on lattice entries, and the
/// lattice-scan center.
fn run_oracle(out: &mut String) -> bool {
    let mut green = true;
    let mut record = |name: &str, ok: bool, detail: String| {
        let _ = writeln!(
            out,
            "oracle {name}: {} ({detail})",
            if ok { "pass" } else { "FAIL" }
        );
        green &= ok;
    };

    // lattice vs enumeration
    {
        let mut checked = 0usize;
        let mut ok = true;
        for entry in corpus::builtin_corpus() {
            if entry.algebra.size() > 8 {
                continue;
            }
            let lat = CongruenceLattice::build(&entry.algebra);
            let enumerated = oracle::congruences_by_enumeration(&entry.algebra);
            if lat.elements() != enumerated.as_slice() {
                ok = false;
            }
            checked += 1;
        }
        record("lattice-enumeration", ok, format!("algebras={checked}"));
    }

    // commutator vs the normal-subgroup oracle
    {
        let mut pairs = 0usize;
        let mut ok = true;
        for name in ["z4", "z6", "klein4", "d4", "q8", "s3"] {
            let alg = corpus::corpus_entry(name).unwrap().algebra;
            let lat = CongruenceLattice::build(&alg);
            let mut comms = Commutators::new(&lat).unwrap();
            for a in 0..lat.len() {
                for b in 0..lat.len() {
                    let ours = comms.commutator_idx(a, b).unwrap();
                    let theirs =
                        oracle::group_commutator_oracle(&alg, lat.partition(a), lat.partition(b))
                            .unwrap();
                    if lat.partition(ours) != &theirs {
                        ok = false;
                    }
                    pairs += 1;
                }
            }
        }
        record("group-commutator", ok, format!("pairs={pairs}"));
    }

    // lattice-signature commutator is the meet
    {
        let mut pairs = 0usize;
        let mut ok = true;
        for name in ["chain2", "chain3", "chain5", "m3", "n5"] {
            let alg = corpus::corpus_entry(name).unwrap().algebra;
            let lat = CongruenceLattice::build(&alg);
            let mut comms = Commutators::new(&lat).unwrap();
            for a in 0..lat.len() {
                for b in 0..lat.len() {
                    if comms.commutator_idx(a, b).unwrap() != lat.meet_idx(a, b) {
                        ok = false;
                    }
                    pairs += 1;
                }
            }
        }
        record("distributive-commutator", ok, format!("pairs={pairs}"));
    }

    // center formula vs the lattice scan
    {
        let mut checked = 0usize;
        let mut ok = true;
        for entry in corpus::builtin_corpus() {
            if entry.difference_term.is_none() {
                continue;
            }
            let lat = CongruenceLattice::build(&entry.algebra);
            let mut comms = Commutators::new(&lat).unwrap();
            let fast = comms.center().unwrap();
            let mut probe = Commutators::new(&lat).unwrap();
            let scanned =
                oracle::center_by_lattice_scan(&lat, |i| probe.is_central_congruence_idx(i))
                    .unwrap();
            if fast != scanned {
                ok = false;
            }
            checked += 1;
        }
        record("center-scan", ok, format!("algebras={checked}"));
    }

    green
}
