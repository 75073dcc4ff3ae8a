//! Subdirect representations, essential and product-essential extensions,
//! meet-system maximization, and the decomposition procedures built on them.
//!
//! The essential-extension test works through the atoms of the target's
//! congruence lattice: a congruence restricts to zero only if some minimal
//! nonzero principal congruence below it does, so scanning the minimal
//! elements of the deduplicated principal congruences is sound and complete
//! without materializing the whole lattice.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{
    find_isomorphism, make_product, make_quotient, Embedding, FiniteAlgebra, Homomorphism,
    ProductAlgebra,
};
use crate::check::{CheckOutcome, CheckReport};
use crate::commutator::Commutators;
use crate::congruence::{
    self, principal_congruence, product_congruence, pullback_partition, quotient_partition,
    restrict, CongruenceLattice,
};
use crate::error::{Error, Result};
use crate::partition::{compose, Partition};
use crate::Limits;

/// Outcome of the essential-extension test.
#[derive(Debug, Clone)]
pub enum EssentialOutcome {
    Essential,
    /// A nonzero congruence of the target restricting to zero; the
    /// canonically least such witness among the minimal ones.
    NotEssential { witness: Partition },
}

impl EssentialOutcome {
    pub fn is_essential(&self) -> bool {
        matches!(self, EssentialOutcome::Essential)
    }
}

/// Minimal nonzero principal congruences of `alg`; these are exactly the
/// atoms of its congruence lattice.
fn congruence_atoms(alg: &FiniteAlgebra) -> Vec<Partition> {
    let n = alg.size();
    let mut principals: BTreeSet<Partition> = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            principals.insert(principal_congruence(alg, a, b));
        }
    }
    let all: Vec<Partition> = principals.into_iter().collect();
    all.iter()
        .filter(|p| !all.iter().any(|q| q != *p && q.leq(p)))
        .cloned()
        .collect()
}

/// Decides whether an embedding is essential: no nonzero congruence of the
/// target restricts to zero on the source.
pub fn is_essential(emb: &Embedding, limits: &Limits) -> Result<EssentialOutcome> {
    let target = emb.target();
    if target.size() > limits.max_universe {
        return Err(Error::UniverseLimit {
            required: target.size(),
            limit: limits.max_universe,
        });
    }
    for atom in congruence_atoms(target) {
        if restrict(&atom, emb).is_zero() {
            return Ok(EssentialOutcome::NotEssential { witness: atom });
        }
    }
    Ok(EssentialOutcome::Essential)
}

/// A subdirect representation: kernels with zero meet, the quotient factors,
/// and the induced embedding into their product, together with the derived
/// congruences used throughout the extension machinery.
#[derive(Debug, Clone)]
pub struct SubdirectRepresentation {
    algebra: Arc<FiniteAlgebra>,
    kernels: Vec<Partition>,
    naturals: Vec<Homomorphism>,
    product: ProductAlgebra,
    embedding: Embedding,
    /// `alpha_i = eta_i \/ meet of the other kernels`, on the base algebra
    alphas: Vec<Partition>,
    /// `alpha_i / eta_i`, on factor `i`
    alpha_bars: Vec<Partition>,
}

impl SubdirectRepresentation {
    pub fn new(alg: &Arc<FiniteAlgebra>, kernels: Vec<Partition>) -> Result<Self> {
        if kernels.is_empty() {
            return Err(Error::Precondition(String::from(
                "a subdirect representation needs at least one kernel",
            )));
        }
        let mut meet = Partition::one(alg.size());
        for k in &kernels {
            meet = meet.meet(k);
        }
        if !meet.is_zero() {
            return Err(Error::Precondition(String::from(
                "kernels do not meet to zero",
            )));
        }

        let mut factors = Vec::new();
        let mut naturals = Vec::new();
        for eta in &kernels {
            let (q, nat) = make_quotient(alg, eta)?;
            factors.push(q);
            naturals.push(nat);
        }
        let product = make_product(&factors)?;
        let map: Vec<usize> = (0..alg.size())
            .map(|e| {
                let coords: Vec<usize> = naturals.iter().map(|nat| nat.apply(e)).collect();
                product.encode(&coords)
            })
            .collect();
        let embedding = Embedding::new(Homomorphism::new_unchecked(
            alg.clone(),
            product.algebra().clone(),
            map,
        )?)?;
        if !embedding.hom().is_homomorphism() {
            return Err(Error::Falsified(String::from(
                "induced subdirect map is not a homomorphism",
            )));
        }

        let n = kernels.len();
        let mut alphas = Vec::with_capacity(n);
        let mut alpha_bars = Vec::with_capacity(n);
        for i in 0..n {
            let mut rest = Partition::one(alg.size());
            for (j, k) in kernels.iter().enumerate() {
                if j != i {
                    rest = rest.meet(k);
                }
            }
            let alpha = congruence::join(alg, &kernels[i], &rest);
            alpha_bars.push(quotient_partition(&alpha, &kernels[i])?);
            alphas.push(alpha);
        }

        Ok(SubdirectRepresentation {
            algebra: alg.clone(),
            kernels,
            naturals,
            product,
            embedding,
            alphas,
            alpha_bars,
        })
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn kernels(&self) -> &[Partition] {
        &self.kernels
    }

    pub fn factors(&self) -> &[Arc<FiniteAlgebra>] {
        self.product.factors()
    }

    pub fn product(&self) -> &ProductAlgebra {
        &self.product
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn naturals(&self) -> &[Homomorphism] {
        &self.naturals
    }

    pub fn alphas(&self) -> &[Partition] {
        &self.alphas
    }

    pub fn alpha_bars(&self) -> &[Partition] {
        &self.alpha_bars
    }

    /// Restriction of a product-side congruence to the base algebra.
    pub fn restrict_to_base(&self, theta: &Partition) -> Partition {
        restrict(theta, &self.embedding)
    }

    /// Sorted image of the base algebra inside the product.
    pub fn image(&self) -> Vec<usize> {
        self.embedding.image()
    }
}

/// Outcome of the product-essential test.
#[derive(Debug, Clone)]
pub enum ProductEssentialOutcome {
    ProductEssential,
    /// A tuple of factor congruences, not all zero, whose product restricts
    /// to zero on the base.
    NotProductEssential { witness: Vec<Partition> },
}

impl ProductEssentialOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, ProductEssentialOutcome::ProductEssential)
    }
}

/// Decides product-essentiality by scanning every tuple of factor
/// congruences, and cross-checks the outcome against the kernel-maximality
/// criterion on the base algebra.
pub fn is_product_essential(rep: &SubdirectRepresentation) -> Result<ProductEssentialOutcome> {
    let factor_lattices: Vec<CongruenceLattice> = rep
        .factors()
        .iter()
        .map(CongruenceLattice::build)
        .collect();

    let mut witness: Option<Vec<Partition>> = None;
    let sizes: Vec<usize> = factor_lattices.iter().map(|l| l.len()).collect();
    let mut idxs = vec![0usize; sizes.len()];
    'tuples: loop {
        let all_zero = idxs
            .iter()
            .zip(&factor_lattices)
            .all(|(&i, l)| i == l.zero_index());
        if !all_zero {
            // restriction of the product congruence to the base
            let n = rep.algebra().size();
            let mut restriction_zero = true;
            'pairs: for a in 0..n {
                for b in a + 1..n {
                    let related = idxs.iter().enumerate().all(|(fi, &ci)| {
                        factor_lattices[fi]
                            .partition(ci)
                            .related(rep.naturals()[fi].apply(a), rep.naturals()[fi].apply(b))
                    });
                    if related {
                        restriction_zero = false;
                        break 'pairs;
                    }
                }
            }
            if restriction_zero {
                witness = Some(
                    idxs.iter()
                        .zip(&factor_lattices)
                        .map(|(&i, l)| l.partition(i).clone())
                        .collect(),
                );
                break 'tuples;
            }
        }
        // odometer
        let mut pos = idxs.len();
        loop {
            if pos == 0 {
                break 'tuples;
            }
            pos -= 1;
            idxs[pos] += 1;
            if idxs[pos] < sizes[pos] {
                break;
            }
            idxs[pos] = 0;
        }
    }

    // cross-check: kernel maximality on the base algebra (tuples above the
    // kernels with zero meet must equal the kernels)
    let base_lat = CongruenceLattice::build(rep.algebra());
    let maximality_witness = kernel_maximality_violation(rep, &base_lat);
    match (&witness, &maximality_witness) {
        (None, None) | (Some(_), Some(_)) => {}
        _ => {
            return Err(Error::Falsified(String::from(
                "product-essential test disagrees with the kernel-maximality criterion",
            )))
        }
    }

    Ok(match witness {
        None => ProductEssentialOutcome::ProductEssential,
        Some(w) => ProductEssentialOutcome::NotProductEssential { witness: w },
    })
}

/// Looks for congruences above the kernels with zero meet that differ from
/// the kernels; `None` means the kernels are maximal in that sense.
fn kernel_maximality_violation(
    rep: &SubdirectRepresentation,
    base_lat: &CongruenceLattice,
) -> Option<Vec<usize>> {
    let kernel_idx: Vec<usize> = rep
        .kernels()
        .iter()
        .map(|k| base_lat.index_of(k).expect("kernel is a congruence"))
        .collect();
    let choices: Vec<Vec<usize>> = kernel_idx
        .iter()
        .map(|&ki| {
            (0..base_lat.len())
                .filter(|&i| base_lat.leq_idx(ki, i))
                .collect()
        })
        .collect();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let tuple: Vec<usize> = pick.iter().zip(&choices).map(|(&p, c)| c[p]).collect();
        if tuple != kernel_idx {
            let mut meet = base_lat.one_index();
            for &t in &tuple {
                meet = base_lat.meet_idx(meet, t);
            }
            if meet == base_lat.zero_index() {
                return Some(tuple);
            }
        }
        let mut pos = pick.len();
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            pick[pos] += 1;
            if pick[pos] < choices[pos].len() {
                break;
            }
            pick[pos] = 0;
        }
    }
}

/// One cover step taken while maximizing a meet system.
#[derive(Debug, Clone)]
pub struct MaximizationStep {
    pub coordinate: usize,
    pub to: Partition,
}

#[derive(Debug, Clone)]
pub struct MaximizedSystem {
    pub system: Vec<Partition>,
    pub steps: Vec<MaximizationStep>,
}

/// Sequentially maximizes a zero-meet system: coordinate by coordinate,
/// repeatedly replace the current congruence by its lexicographically least
/// cover that keeps the running meet zero. The result satisfies the
/// maximality condition (verified before returning).
pub fn maximize_meet_system(
    lattice: &CongruenceLattice,
    etas: &[Partition],
) -> Result<MaximizedSystem> {
    let n = etas.len();
    let mut idx: Vec<usize> = Vec::with_capacity(n);
    for eta in etas {
        idx.push(lattice.index_of(eta).ok_or_else(|| {
            Error::Precondition(String::from("system member is not a congruence"))
        })?);
    }
    let meet_all = |ix: &[usize], lattice: &CongruenceLattice| {
        ix.iter()
            .fold(lattice.one_index(), |m, &i| lattice.meet_idx(m, i))
    };
    if meet_all(&idx, lattice) != lattice.zero_index() {
        return Err(Error::Precondition(String::from(
            "system does not meet to zero",
        )));
    }

    let mut steps = Vec::new();
    for i in 0..n {
        loop {
            // the running meet with coordinate i removed
            let mut rest = lattice.one_index();
            for (j, &x) in idx.iter().enumerate() {
                if j != i {
                    rest = lattice.meet_idx(rest, x);
                }
            }
            let mut covers: Vec<usize> = lattice
                .upper_covers(idx[i])
                .iter()
                .map(|&c| c as usize)
                .collect();
            covers.sort_unstable();
            match covers
                .into_iter()
                .find(|&c| lattice.meet_idx(rest, c) == lattice.zero_index())
            {
                Some(c) => {
                    idx[i] = c;
                    steps.push(MaximizationStep {
                        coordinate: i,
                        to: lattice.partition(c).clone(),
                    });
                }
                None => break,
            }
        }
    }

    // maximality: replacing any single coordinate by anything strictly above
    // breaks the zero meet (single-coordinate checks suffice because meets
    // are monotone)
    for i in 0..n {
        let mut rest = lattice.one_index();
        for (j, &x) in idx.iter().enumerate() {
            if j != i {
                rest = lattice.meet_idx(rest, x);
            }
        }
        for psi in 0..lattice.len() {
            if psi != idx[i]
                && lattice.leq_idx(idx[i], psi)
                && lattice.meet_idx(rest, psi) == lattice.zero_index()
            {
                return Err(Error::Falsified(String::from(
                    "maximized system is not maximal",
                )));
            }
        }
    }

    Ok(MaximizedSystem {
        system: idx.iter().map(|&i| lattice.partition(i).clone()).collect(),
        steps,
    })
}

/// Outcome of checking the composition identity of admissible interval
/// systems over a subdirect representation.
#[derive(Debug, Clone)]
pub struct CompositionOutcome {
    pub holds: bool,
    /// `(k, pair)`: the first prefix length and element pair where the two
    /// compositions differ.
    pub witness: Option<(usize, (usize, usize))>,
}

/// For congruences `beta_i` with `eta_i <= beta_i <= alpha_i` whose
/// quotients are central in the factors, the composition
/// `(beta_1 /\ .. /\ beta_k) o beta_{k+1}` must equal
/// `(eta_1 /\ .. /\ eta_k) o eta_{k+1}` for every prefix length `k`.
/// Preconditions are checked and named when they fail.
pub fn verify_composition_identity(
    rep: &SubdirectRepresentation,
    betas: &[Partition],
) -> Result<CompositionOutcome> {
    let n = rep.kernels().len();
    if betas.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: betas.len(),
        });
    }
    for (i, beta) in betas.iter().enumerate() {
        if !rep.kernels()[i].leq(beta) {
            return Err(Error::Precondition(alloc::format!(
                "beta_{i} is not above kernel {i}"
            )));
        }
        if !beta.leq(&rep.alphas()[i]) {
            return Err(Error::Precondition(alloc::format!(
                "beta_{i} is not below alpha_{i}"
            )));
        }
        let factor_lat = CongruenceLattice::build(&rep.factors()[i]);
        let mut comms = Commutators::new(&factor_lat)?;
        let bar = quotient_partition(beta, &rep.kernels()[i])?;
        let bar_idx = factor_lat.index_of(&bar).ok_or_else(|| {
            Error::Precondition(alloc::format!("beta_{i} quotient is not a congruence"))
        })?;
        if !comms.is_central_congruence_idx(bar_idx)? {
            return Err(Error::Precondition(alloc::format!(
                "beta_{i} quotient is not central in factor {i}"
            )));
        }
    }

    for k in 1..n {
        let mut beta_meet = betas[0].clone();
        let mut eta_meet = rep.kernels()[0].clone();
        for j in 1..k {
            beta_meet = beta_meet.meet(&betas[j]);
            eta_meet = eta_meet.meet(&rep.kernels()[j]);
        }
        let lhs = compose(&beta_meet, &betas[k]);
        let rhs = compose(&eta_meet, &rep.kernels()[k]);
        if lhs != rhs {
            let pair = lhs
                .first_difference(&rhs)
                .expect("relations differ, so a differing pair exists");
            return Ok(CompositionOutcome {
                holds: false,
                witness: Some((k, pair)),
            });
        }
    }
    Ok(CompositionOutcome {
        holds: true,
        witness: None,
    })
}

/// Replays the whole product-essential-implies-essential pipeline on one
/// representation: centrality of zero-restriction congruences, density of
/// the alpha-bar product, the composition identity for admissible interval
/// systems, saturation below the central beta-bar product, the final
/// central-saturated discharge, and essentiality itself.
pub fn verify_product_essential_pipeline(
    rep: &SubdirectRepresentation,
    limits: &Limits,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(rep.algebra().name());

    match is_product_essential(rep)? {
        ProductEssentialOutcome::ProductEssential => {}
        ProductEssentialOutcome::NotProductEssential { witness } => {
            return Err(Error::Precondition(alloc::format!(
                "representation is not product-essential (witness {:?})",
                witness
            )));
        }
    }

    let prod_alg = rep.product().algebra();
    if prod_alg.size() > limits.max_universe {
        return Err(Error::UniverseLimit {
            required: prod_alg.size(),
            limit: limits.max_universe,
        });
    }
    let prod_lat = CongruenceLattice::try_build(prod_alg, limits.max_lattice)?;
    if prod_lat.is_modular().is_err() {
        return Err(Error::Precondition(String::from(
            "product congruence lattice is not modular",
        )));
    }
    let mut comms = Commutators::new(&prod_lat)?;

    // congruences of the product restricting to zero on the base are central
    let zero_restriction: Vec<usize> = (0..prod_lat.len())
        .filter(|&i| rep.restrict_to_base(prod_lat.partition(i)).is_zero())
        .collect();
    let mut central_out = CheckOutcome::Pass;
    for &i in &zero_restriction {
        if !comms.is_central_congruence_idx(i)? {
            central_out = CheckOutcome::Fail {
                witness: alloc::format!("{}", prod_lat.partition(i)),
            };
            break;
        }
    }
    report.push("zero-restriction-central", central_out);

    // the alpha-bar product congruence is dense in the product lattice
    let alpha_bar_product =
        product_congruence(&rep.product().factor_sizes(), rep.alpha_bars())?;
    let abp_idx = prod_lat.index_of(&alpha_bar_product).ok_or_else(|| {
        Error::Falsified(String::from("alpha-bar product is not a congruence"))
    })?;
    report.push(
        "alpha-bar-product-dense",
        match prod_lat.is_dense_idx(abp_idx) {
            Ok(()) => CheckOutcome::Pass,
            Err(theta) => CheckOutcome::Fail {
                witness: alloc::format!("{}", prod_lat.partition(theta)),
            },
        },
    );

    // canonical admissible system: beta_bar_i = alpha_bar_i /\ center(A_i)
    let mut beta_bars = Vec::new();
    let mut betas = Vec::new();
    for (i, factor) in rep.factors().iter().enumerate() {
        let factor_lat = CongruenceLattice::build(factor);
        let mut factor_comms = Commutators::new(&factor_lat)?;
        let zeta = factor_comms.center()?;
        let bar = rep.alpha_bars()[i].meet(&zeta);
        betas.push(pullback_partition(&bar, &rep.kernels()[i]));
        beta_bars.push(bar);
    }
    let comp = verify_composition_identity(rep, &betas)?;
    report.push(
        "composition-identity",
        if comp.holds {
            CheckOutcome::Pass
        } else {
            let (k, pair) = comp.witness.unwrap();
            CheckOutcome::Fail {
                witness: alloc::format!("prefix {k}, pair ({}, {})", pair.0, pair.1),
            }
        },
    );

    // every admissible system when the search space is small
    let admissible_sweep = admissible_beta_tuples(rep, 64)?;
    match admissible_sweep {
        Some(tuples) => {
            let mut out = CheckOutcome::Pass;
            for tuple in tuples {
                let res = verify_composition_identity(rep, &tuple)?;
                if !res.holds {
                    let (k, pair) = res.witness.unwrap();
                    out = CheckOutcome::Fail {
                        witness: alloc::format!("prefix {k}, pair ({}, {})", pair.0, pair.1),
                    };
                    break;
                }
            }
            report.push("composition-identity-sweep", out);
        }
        None => report.push(
            "composition-identity-sweep",
            CheckOutcome::Skipped {
                reason: String::from("admissible tuple space exceeds the sweep bound"),
            },
        ),
    }

    // saturation: theta below the central beta-bar product keeps the image
    // saturated
    let beta_bar_product = product_congruence(&rep.product().factor_sizes(), &beta_bars)?;
    let image = rep.image();
    let mut saturation_out = CheckOutcome::Pass;
    for i in 0..prod_lat.len() {
        if prod_lat.partition(i).leq(&beta_bar_product) {
            let saturated = prod_lat.partition(i).saturate(&image);
            if saturated != image {
                saturation_out = CheckOutcome::Fail {
                    witness: alloc::format!("{}", prod_lat.partition(i)),
                };
                break;
            }
        }
    }
    report.push("central-saturation", saturation_out);

    // discharge: central + zero restriction + saturated image forces zero
    let mut discharge_out = CheckOutcome::Pass;
    for &i in &zero_restriction {
        if comms.is_central_congruence_idx(i)?
            && prod_lat.partition(i).saturate(&image) == image
            && i != prod_lat.zero_index()
        {
            discharge_out = CheckOutcome::Fail {
                witness: alloc::format!("{}", prod_lat.partition(i)),
            };
            break;
        }
    }
    report.push("central-saturated-discharge", discharge_out);

    report.push(
        "essential",
        match is_essential(rep.embedding(), limits)? {
            EssentialOutcome::Essential => CheckOutcome::Pass,
            EssentialOutcome::NotEssential { witness } => CheckOutcome::Fail {
                witness: alloc::format!("{witness}"),
            },
        },
    );

    Ok(report)
}

/// All admissible beta tuples (kernel below, alpha above, central quotient),
/// or `None` when their number exceeds `bound`.
fn admissible_beta_tuples(
    rep: &SubdirectRepresentation,
    bound: usize,
) -> Result<Option<Vec<Vec<Partition>>>> {
    let mut choices: Vec<Vec<Partition>> = Vec::new();
    for i in 0..rep.kernels().len() {
        let factor_lat = CongruenceLattice::build(&rep.factors()[i]);
        let mut comms = Commutators::new(&factor_lat)?;
        let mut per = Vec::new();
        let abar_idx = factor_lat
            .index_of(&rep.alpha_bars()[i])
            .expect("alpha-bar is a congruence");
        for j in 0..factor_lat.len() {
            if factor_lat.leq_idx(j, abar_idx) && comms.is_central_congruence_idx(j)? {
                per.push(pullback_partition(factor_lat.partition(j), &rep.kernels()[i]));
            }
        }
        choices.push(per);
    }
    let total: usize = choices.iter().map(|c| c.len()).product();
    if total > bound {
        return Ok(None);
    }
    let mut out = Vec::with_capacity(total);
    let mut pick = vec![0usize; choices.len()];
    loop {
        out.push(
            pick.iter()
                .zip(&choices)
                .map(|(&p, c)| c[p].clone())
                .collect(),
        );
        let mut pos = pick.len();
        loop {
            if pos == 0 {
                return Ok(Some(out));
            }
            pos -= 1;
            pick[pos] += 1;
            if pick[pos] < choices[pos].len() {
                break;
            }
            pick[pos] = 0;
        }
    }
}

/// Result of a decomposition procedure.
#[derive(Debug, Clone)]
pub enum DecompositionOutcome {
    /// The algebra is (isomorphic to) the product of the listed subdirectly
    /// irreducible factors. The trivial algebra is reported as the empty
    /// product with no isomorphism attached.
    ProductOfSis {
        kernels: Vec<Partition>,
        factors: Vec<Arc<FiniteAlgebra>>,
        isomorphism: Option<Embedding>,
    },
    /// The split into a centerless and an abelian part.
    CenterSplit {
        theta: Partition,
        psi: Partition,
        centerless: Arc<FiniteAlgebra>,
        abelian: Arc<FiniteAlgebra>,
        embedding: Embedding,
    },
    /// A proper essential extension was constructed, certifying that the
    /// algebra is not an absolute retract.
    ProperEssentialExtension {
        kernels: Vec<Partition>,
        embedding: Embedding,
    },
    /// The commutator identity hypothesis fails: the center and the total
    /// commutator overlap in the witness.
    C1HypothesisFailed { witness: Partition },
    Refused { reason: String },
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub algebra: String,
    /// Advisory (C1) evaluation, when it was run.
    pub c1_holds: Option<bool>,
    pub outcome: DecompositionOutcome,
    /// Cover steps taken during maximization, for reproducibility.
    pub maximization_steps: Vec<MaximizationStep>,
}

/// Branch-and-bound search for a maximum-length irredundant zero-meet system
/// of meet-irreducible congruences. Pruned by the height of the running
/// meet, which bounds how many further strict decreases are possible.
fn max_irredundant_meet_system(lat: &CongruenceLattice) -> Vec<usize> {
    let mi = lat.meet_irreducibles();
    let mut best: Vec<usize> = Vec::new();

    fn irredundant(lat: &CongruenceLattice, chosen: &[usize]) -> bool {
        chosen.iter().enumerate().all(|(i, _)| {
            let mut rest = lat.one_index();
            for (j, &x) in chosen.iter().enumerate() {
                if j != i {
                    rest = lat.meet_idx(rest, x);
                }
            }
            rest != lat.zero_index()
        })
    }

    fn dfs(
        lat: &CongruenceLattice,
        mi: &[usize],
        pos: usize,
        chosen: &mut Vec<usize>,
        meet: usize,
        best: &mut Vec<usize>,
    ) {
        if meet == lat.zero_index() {
            if chosen.len() > best.len() && irredundant(lat, chosen) {
                *best = chosen.clone();
            }
            return;
        }
        if pos == mi.len() || chosen.len() + lat.height_of(meet) <= best.len() {
            return;
        }
        // take mi[pos] when it strictly lowers the meet
        let lowered = lat.meet_idx(meet, mi[pos]);
        if lowered != meet {
            chosen.push(mi[pos]);
            dfs(lat, mi, pos + 1, chosen, lowered, best);
            chosen.pop();
        }
        dfs(lat, mi, pos + 1, chosen, meet, best);
    }

    let mut chosen = Vec::new();
    dfs(lat, &mi, 0, &mut chosen, lat.one_index(), &mut best);
    best
}

/// The subdirect-into-irreducibles procedure: find a maximum-length
/// irredundant meet representation of zero over meet-irreducibles, maximize
/// it, and decide whether the resulting product-essential embedding is an
/// isomorphism (product of subdirectly irreducibles) or a proper essential
/// extension.
pub fn decompose_absolute_retract(
    alg: &Arc<FiniteAlgebra>,
    limits: &Limits,
) -> Result<DecompositionReport> {
    if alg.size() == 1 {
        return Ok(DecompositionReport {
            algebra: String::from(alg.name()),
            c1_holds: None,
            outcome: DecompositionOutcome::ProductOfSis {
                kernels: vec![],
                factors: vec![],
                isomorphism: None,
            },
            maximization_steps: vec![],
        });
    }

    let lat = CongruenceLattice::try_build(alg, limits.max_lattice)?;
    if let Err(pentagon) = lat.is_modular() {
        return Ok(DecompositionReport {
            algebra: String::from(alg.name()),
            c1_holds: None,
            outcome: DecompositionOutcome::Refused {
                reason: alloc::format!(
                    "congruence lattice is not modular (pentagon {:?})",
                    pentagon
                ),
            },
            maximization_steps: vec![],
        });
    }

    let system = max_irredundant_meet_system(&lat);
    debug_assert!(!system.is_empty());
    let etas: Vec<Partition> = system.iter().map(|&i| lat.partition(i).clone()).collect();
    let maximized = maximize_meet_system(&lat, &etas)?;
    let rep = SubdirectRepresentation::new(alg, maximized.system.clone())?;

    if rep.product().algebra().size() > limits.max_universe {
        return Err(Error::UniverseLimit {
            required: rep.product().algebra().size(),
            limit: limits.max_universe,
        });
    }
    let prod_lat = CongruenceLattice::try_build(rep.product().algebra(), limits.max_lattice)?;
    if prod_lat.is_modular().is_err() {
        return Ok(DecompositionReport {
            algebra: String::from(alg.name()),
            c1_holds: None,
            outcome: DecompositionOutcome::Refused {
                reason: String::from("product congruence lattice is not modular"),
            },
            maximization_steps: maximized.steps,
        });
    }

    if !is_product_essential(&rep)?.holds() {
        return Err(Error::Falsified(String::from(
            "maximized system is not product-essential",
        )));
    }
    match is_essential(rep.embedding(), limits)? {
        EssentialOutcome::Essential => {}
        EssentialOutcome::NotEssential { witness } => {
            return Err(Error::Falsified(alloc::format!(
                "product-essential embedding is not essential (witness {witness})"
            )));
        }
    }

    let outcome = if rep.embedding().is_surjective() {
        for factor in rep.factors() {
            let flat = CongruenceLattice::build(factor);
            if !flat.is_si() {
                return Err(Error::Falsified(alloc::format!(
                    "maximal irredundant factor {} is not subdirectly irreducible",
                    factor.name()
                )));
            }
        }
        DecompositionOutcome::ProductOfSis {
            kernels: rep.kernels().to_vec(),
            factors: rep.factors().to_vec(),
            isomorphism: Some(rep.embedding().clone()),
        }
    } else {
        DecompositionOutcome::ProperEssentialExtension {
            kernels: rep.kernels().to_vec(),
            embedding: rep.embedding().clone(),
        }
    };

    Ok(DecompositionReport {
        algebra: String::from(alg.name()),
        c1_holds: None,
        outcome,
        maximization_steps: maximized.steps,
    })
}

/// The center/commutator split: maximize a pair above the center and the
/// total commutator; when the resulting product-essential embedding is onto,
/// the first factor is centerless and the second abelian.
pub fn split_center_abelian(
    alg: &Arc<FiniteAlgebra>,
    limits: &Limits,
) -> Result<DecompositionReport> {
    let lat = CongruenceLattice::try_build(alg, limits.max_lattice)?;
    if let Err(pentagon) = lat.is_modular() {
        return Ok(DecompositionReport {
            algebra: String::from(alg.name()),
            c1_holds: None,
            outcome: DecompositionOutcome::Refused {
                reason: alloc::format!(
                    "congruence lattice is not modular (pentagon {:?})",
                    pentagon
                ),
            },
            maximization_steps: vec![],
        });
    }
    let mut comms = Commutators::new(&lat)?;
    let c1 = crate::commutator::check_c1(&mut comms)?;
    let zeta_idx = comms.center_idx()?;
    let one_one = comms.commutator_idx(lat.one_index(), lat.one_index())?;

    let overlap = lat.meet_idx(zeta_idx, one_one);
    if overlap != lat.zero_index() {
        return Ok(DecompositionReport {
            algebra: String::from(alg.name()),
            c1_holds: Some(c1.holds),
            outcome: DecompositionOutcome::C1HypothesisFailed {
                witness: lat.partition(overlap).clone(),
            },
            maximization_steps: vec![],
        });
    }

    let etas = vec![
        lat.partition(zeta_idx).clone(),
        lat.partition(one_one).clone(),
    ];
    let maximized = maximize_meet_system(&lat, &etas)?;
    let rep = SubdirectRepresentation::new(alg, maximized.system.clone())?;

    let prod_lat = CongruenceLattice::try_build(rep.product().algebra(), limits.max_lattice)?;
    if prod_lat.is_modular().is_err() {
        return Ok(DecompositionReport {
            algebra: String::from(alg.name()),
            c1_holds: Some(c1.holds),
            outcome: DecompositionOutcome::Refused {
                reason: String::from("product congruence lattice is not modular"),
            },
            maximization_steps: maximized.steps,
        });
    }
    if !is_product_essential(&rep)?.holds() {
        return Err(Error::Falsified(String::from(
            "maximized center/commutator pair is not product-essential",
        )));
    }
    match is_essential(rep.embedding(), limits)? {
        EssentialOutcome::Essential => {}
        EssentialOutcome::NotEssential { witness } => {
            return Err(Error::Falsified(alloc::format!(
                "product-essential embedding is not essential (witness {witness})"
            )));
        }
    }

    let theta = rep.kernels()[0].clone();
    let psi = rep.kernels()[1].clone();
    let outcome = if rep.embedding().is_surjective() {
        if lat.index_of(&theta) != Some(zeta_idx) {
            return Err(Error::Falsified(String::from(
                "maximized theta is not the center; the ambient commutator identity must fail",
            )));
        }
        let centerless = rep.factors()[0].clone();
        let abelian = rep.factors()[1].clone();
        {
            let c_lat = CongruenceLattice::build(&centerless);
            let mut c_comms = Commutators::new(&c_lat)?;
            if !c_comms.is_centerless()? {
                return Err(Error::Falsified(String::from(
                    "first split factor is not centerless",
                )));
            }
            let a_lat = CongruenceLattice::build(&abelian);
            let mut a_comms = Commutators::new(&a_lat)?;
            if !a_comms.is_abelian()? {
                return Err(Error::Falsified(String::from(
                    "second split factor is not abelian",
                )));
            }
        }
        DecompositionOutcome::CenterSplit {
            theta,
            psi,
            centerless,
            abelian,
            embedding: rep.embedding().clone(),
        }
    } else {
        DecompositionOutcome::ProperEssentialExtension {
            kernels: rep.kernels().to_vec(),
            embedding: rep.embedding().clone(),
        }
    };

    Ok(DecompositionReport {
        algebra: String::from(alg.name()),
        c1_holds: Some(c1.holds),
        outcome,
        maximization_steps: maximized.steps,
    })
}

/// A factorization into directly indecomposable factors.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub factors: Vec<Arc<FiniteAlgebra>>,
}

/// All complementary permuting congruence pairs `(theta, phi)` with both
/// members proper: `theta /\ phi = 0`, `theta \/ phi = 1`, and the two
/// compose commutatively. Each such pair realizes a direct decomposition.
pub fn factor_congruence_pairs(lat: &CongruenceLattice) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for i in 0..lat.len() {
        if i == lat.zero_index() || i == lat.one_index() {
            continue;
        }
        for j in i + 1..lat.len() {
            if j == lat.zero_index() || j == lat.one_index() {
                continue;
            }
            if lat.meet_idx(i, j) != lat.zero_index() || lat.join_idx(i, j) != lat.one_index() {
                continue;
            }
            let t = lat.partition(i);
            let p = lat.partition(j);
            let fwd = compose(t, p);
            if fwd != compose(p, t) {
                continue;
            }
            out.push((t.clone(), p.clone()));
        }
    }
    out
}

/// Enumerates every factorization of `alg` into directly indecomposable
/// factors by recursing through all factor-congruence pairs. The trivial
/// algebra yields the single empty factorization.
pub fn enumerate_direct_decompositions(
    alg: &Arc<FiniteAlgebra>,
    limits: &Limits,
) -> Result<Vec<Factorization>> {
    if alg.size() > limits.max_universe {
        return Err(Error::UniverseLimit {
            required: alg.size(),
            limit: limits.max_universe,
        });
    }
    if alg.size() == 1 {
        return Ok(vec![Factorization { factors: vec![] }]);
    }
    let lat = CongruenceLattice::try_build(alg, limits.max_lattice)?;
    let pairs = factor_congruence_pairs(&lat);
    if pairs.is_empty() {
        return Ok(vec![Factorization {
            factors: vec![alg.clone()],
        }]);
    }
    let mut out = Vec::new();
    for (theta, phi) in pairs {
        let (qt, nat_t) = make_quotient(alg, &theta)?;
        let (qp, nat_p) = make_quotient(alg, &phi)?;
        // the pair map must be an isomorphism onto the product
        let prod = make_product(&[qt.clone(), qp.clone()])?;
        let map: Vec<usize> = (0..alg.size())
            .map(|e| prod.encode(&[nat_t.apply(e), nat_p.apply(e)]))
            .collect();
        let pair_map = Homomorphism::new_unchecked(alg.clone(), prod.algebra().clone(), map)?;
        if !(pair_map.is_injective() && pair_map.is_surjective() && pair_map.is_homomorphism()) {
            return Err(Error::Falsified(String::from(
                "complementary permuting pair does not realize a direct decomposition",
            )));
        }
        for left in enumerate_direct_decompositions(&qt, limits)? {
            for right in enumerate_direct_decompositions(&qp, limits)? {
                let mut factors = left.factors.clone();
                factors.extend(right.factors.iter().cloned());
                out.push(Factorization { factors });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct UniqueFactorizationReport {
    pub algebra: String,
    pub factorizations: Vec<Factorization>,
    pub unique: bool,
    /// Indices of two factorizations with non-isomorphic factor multisets.
    pub witness: Option<(usize, usize)>,
}

/// Checks that all factorizations into directly indecomposables have
/// pairwise isomorphic factor multisets.
pub fn check_unique_factorization(
    alg: &Arc<FiniteAlgebra>,
    limits: &Limits,
) -> Result<UniqueFactorizationReport> {
    let factorizations = enumerate_direct_decompositions(alg, limits)?;

    // classify every factor across all factorizations by isomorphism type
    let mut class_reps: Vec<Arc<FiniteAlgebra>> = Vec::new();
    let class_of = |reps: &mut Vec<Arc<FiniteAlgebra>>, f: &Arc<FiniteAlgebra>| -> usize {
        for (i, r) in reps.iter().enumerate() {
            if find_isomorphism(r, f).is_some() {
                return i;
            }
        }
        reps.push(f.clone());
        reps.len() - 1
    };
    let signatures: Vec<Vec<usize>> = factorizations
        .iter()
        .map(|f| {
            let mut sig: Vec<usize> = f
                .factors
                .iter()
                .map(|x| class_of(&mut class_reps, x))
                .collect();
            sig.sort_unstable();
            sig
        })
        .collect();

    for i in 0..signatures.len() {
        for j in i + 1..signatures.len() {
            if signatures[i] != signatures[j] {
                return Ok(UniqueFactorizationReport {
                    algebra: String::from(alg.name()),
                    factorizations,
                    unique: false,
                    witness: Some((i, j)),
                });
            }
        }
    }
    Ok(UniqueFactorizationReport {
        algebra: String::from(alg.name()),
        factorizations,
        unique: true,
        witness: None,
    })
}

/// For a non-FSI algebra: pick the canonically least pair of nonzero
/// congruences with zero meet, maximize it, and verify the two-factor
/// representation is product-essential and essential; report whether it is
/// additionally onto.
pub fn verify_two_factor_essential(
    alg: &Arc<FiniteAlgebra>,
    limits: &Limits,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(alg.name());
    let lat = CongruenceLattice::try_build(alg, limits.max_lattice)?;
    if lat.len() == 1 {
        report.push(
            "two-factor-essential",
            CheckOutcome::Skipped {
                reason: String::from("no nonzero congruences"),
            },
        );
        return Ok(report);
    }
    if lat.is_fsi() {
        report.push(
            "two-factor-essential",
            CheckOutcome::Skipped {
                reason: String::from("algebra is finitely subdirectly irreducible"),
            },
        );
        return Ok(report);
    }
    if lat.is_modular().is_err() {
        report.push(
            "two-factor-essential",
            CheckOutcome::Skipped {
                reason: String::from("congruence lattice is not modular"),
            },
        );
        return Ok(report);
    }

    let mut chosen: Option<(usize, usize)> = None;
    'outer: for i in 0..lat.len() {
        if i == lat.zero_index() {
            continue;
        }
        for j in i + 1..lat.len() {
            if j == lat.zero_index() {
                continue;
            }
            if lat.meet_idx(i, j) == lat.zero_index() {
                chosen = Some((i, j));
                break 'outer;
            }
        }
    }
    let (i, j) = chosen.ok_or_else(|| {
        Error::Falsified(String::from(
            "not finitely subdirectly irreducible, yet no zero-meet pair exists",
        ))
    })?;
    let maximized = maximize_meet_system(
        &lat,
        &[lat.partition(i).clone(), lat.partition(j).clone()],
    )?;
    let rep = SubdirectRepresentation::new(alg, maximized.system)?;

    let prod_lat = CongruenceLattice::try_build(rep.product().algebra(), limits.max_lattice)?;
    if prod_lat.is_modular().is_err() {
        report.push(
            "two-factor-essential",
            CheckOutcome::Skipped {
                reason: String::from("product congruence lattice is not modular"),
            },
        );
        return Ok(report);
    }

    report.push(
        "product-essential",
        match is_product_essential(&rep)? {
            ProductEssentialOutcome::ProductEssential => CheckOutcome::Pass,
            ProductEssentialOutcome::NotProductEssential { witness } => CheckOutcome::Fail {
                witness: alloc::format!("{witness:?}"),
            },
        },
    );
    report.push(
        "essential",
        match is_essential(rep.embedding(), limits)? {
            EssentialOutcome::Essential => CheckOutcome::Pass,
            EssentialOutcome::NotEssential { witness } => CheckOutcome::Fail {
                witness: alloc::format!("{witness}"),
            },
        },
    );
    report.push(
        "surjective",
        if rep.embedding().is_surjective() {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Skipped {
                reason: String::from("embedding is proper: a proper essential extension"),
            }
        },
    );
    Ok(report)
}
