//! Difference-term machinery: validation of a ternary difference term, the
//! term-condition characterization of a vanishing commutator, the derived
//! three-variable identity on central pairs, extension of central
//! congruences along subalgebras, and the cube construction of proper
//! essential extensions.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{
    induced_subalgebra, make_product, make_quotient, Embedding, FiniteAlgebra, Homomorphism,
    ProductAlgebra,
};
use crate::commutator::Commutators;
use crate::congruence::{check_congruence, product_congruence, restrict, CongruenceLattice};
use crate::decompose::{is_essential, EssentialOutcome};
use crate::error::{Error, Result};
use crate::partition::{Partition, Relation};
use crate::term::{eval_term, tabulate_term, Term};
use crate::Limits;

/// A ternary term together with the names of the algebras it has been
/// validated on.
#[derive(Debug, Clone)]
pub struct DifferenceTerm {
    pub term: Term,
    pub validated_on: Vec<String>,
}

impl DifferenceTerm {
    pub fn new(term: Term) -> Self {
        DifferenceTerm {
            term,
            validated_on: Vec::new(),
        }
    }

    /// Runs the validation and records the algebra name on success.
    pub fn validate_on(&mut self, lattice: &CongruenceLattice) -> Result<()> {
        match validate_difference_term(lattice, &self.term)? {
            None => {
                let name = String::from(lattice.algebra().name());
                if !self.validated_on.contains(&name) {
                    self.validated_on.push(name);
                }
                Ok(())
            }
            Some(v) => Err(Error::Precondition(alloc::format!(
                "difference term invalid on {}: {v:?}",
                lattice.algebra().name()
            ))),
        }
    }
}

/// How a candidate difference term fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DifferenceTermViolation {
    /// `d(x, y, y) != x`
    RightUnit { x: usize, y: usize, got: usize },
    /// `d(x, x, y) != y` for `(x, y)` in an abelian congruence
    AbelianLeftUnit {
        theta: Partition,
        x: usize,
        y: usize,
        got: usize,
    },
}

/// Validates a difference term on one algebra: `d(x,y,y) = x` everywhere,
/// and `d(x,x,y) = y` for every pair of every abelian congruence. `None`
/// means the term is valid.
pub fn validate_difference_term(
    lattice: &CongruenceLattice,
    d: &Term,
) -> Result<Option<DifferenceTermViolation>> {
    let alg = lattice.algebra();
    d.check_signature(alg)?;
    if d.max_var().unwrap_or(0) > 2 {
        return Err(Error::Precondition(String::from(
            "difference term must be ternary",
        )));
    }
    let n = alg.size();
    for x in 0..n {
        for y in 0..n {
            let got = eval_term(alg, d, &[x, y, y])?;
            if got != x {
                return Ok(Some(DifferenceTermViolation::RightUnit { x, y, got }));
            }
        }
    }
    let mut comms = Commutators::new(lattice)?;
    for t in 0..lattice.len() {
        if !comms.is_abelian_congruence_idx(t)? {
            continue;
        }
        let theta = lattice.partition(t);
        for (x, y) in theta.related_pairs() {
            for (x, y) in [(x, y), (y, x)] {
                let got = eval_term(alg, d, &[x, x, y])?;
                if got != y {
                    return Ok(Some(DifferenceTermViolation::AbelianLeftUnit {
                        theta: theta.clone(),
                        x,
                        y,
                        got,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Witness for a failed term-condition check.
#[derive(Debug, Clone)]
pub enum TermConditionWitness {
    /// Condition (i): `d(y, y, z) != z` for a related pair of the inner
    /// congruence.
    InnerUnit { y: usize, z: usize, got: usize },
    /// Condition (ii): the operation does not commute with the term on the
    /// listed chains.
    Commuting {
        op: String,
        chains: Vec<(usize, usize, usize)>,
        lhs: usize,
        rhs: usize,
    },
}

#[derive(Debug, Clone)]
pub struct TermConditionOutcome {
    pub holds: bool,
    pub witness: Option<TermConditionWitness>,
}

/// Evaluates the two term conditions that characterize `[phi, psi] = 0` for
/// `phi >= psi`: the inner unit law on psi-pairs, and commutation of every
/// basic operation (and of the difference term itself) with `d` over all
/// chains `x phi y psi z`.
pub fn check_term_condition(
    alg: &FiniteAlgebra,
    d: &Term,
    phi: &Partition,
    psi: &Partition,
) -> Result<TermConditionOutcome> {
    if !psi.leq(phi) {
        return Err(Error::Precondition(String::from(
            "the outer congruence must contain the inner one",
        )));
    }
    check_congruence(alg, phi)?;
    check_congruence(alg, psi)?;
    let n = alg.size();
    let dtable = tabulate_term(alg, d, 3)?;
    let d_at = |x: usize, y: usize, z: usize| dtable[(x * n + y) * n + z];

    // condition (i)
    for y in 0..n {
        for z in 0..n {
            if psi.related(y, z) {
                let got = d_at(y, y, z);
                if got != z {
                    return Ok(TermConditionOutcome {
                        holds: false,
                        witness: Some(TermConditionWitness::InnerUnit { y, z, got }),
                    });
                }
            }
        }
    }

    // chains x phi y psi z in canonical order
    let mut chains: Vec<(usize, usize, usize)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !phi.related(x, y) {
                continue;
            }
            for z in 0..n {
                if psi.related(y, z) {
                    chains.push((x, y, z));
                }
            }
        }
    }
    let folded: Vec<usize> = chains.iter().map(|&(x, y, z)| d_at(x, y, z)).collect();

    // operations to test: the basic ones plus the difference term itself
    let mut ops: Vec<(String, usize, Vec<usize>)> = alg
        .operations()
        .iter()
        .map(|op| (op.name.clone(), op.arity, op.table.clone()))
        .collect();
    ops.push((String::from("d"), 3, dtable.clone()));

    for (name, k, table) in &ops {
        let k = *k;
        if k == 0 {
            continue;
        }
        let apply = |args: &[usize]| {
            let mut idx = 0;
            for &a in args {
                idx = idx * n + a;
            }
            table[idx]
        };
        let mut pick = vec![0usize; k];
        let mut xs = vec![0usize; k];
        let mut ys = vec![0usize; k];
        let mut zs = vec![0usize; k];
        let mut ds = vec![0usize; k];
        'tuples: loop {
            for (slot, &ci) in pick.iter().enumerate() {
                let (x, y, z) = chains[ci];
                xs[slot] = x;
                ys[slot] = y;
                zs[slot] = z;
                ds[slot] = folded[ci];
            }
            let lhs = apply(&ds);
            let rhs = d_at(apply(&xs), apply(&ys), apply(&zs));
            if lhs != rhs {
                return Ok(TermConditionOutcome {
                    holds: false,
                    witness: Some(TermConditionWitness::Commuting {
                        op: name.clone(),
                        chains: pick.iter().map(|&ci| chains[ci]).collect(),
                        lhs,
                        rhs,
                    }),
                });
            }
            let mut pos = k;
            loop {
                if pos == 0 {
                    break 'tuples;
                }
                pos -= 1;
                pick[pos] += 1;
                if pick[pos] < chains.len() {
                    break;
                }
                pick[pos] = 0;
            }
        }
    }
    Ok(TermConditionOutcome {
        holds: true,
        witness: None,
    })
}

/// Witness for the failed three-variable identity on central pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralIdentityWitness {
    pub a: usize,
    pub x: usize,
    pub y: usize,
    pub got: usize,
}

/// Checks `d(x, a, d(a, x, y)) = y` for every element `a` and every pair
/// `(x, y)` of the center.
pub fn check_central_identity(
    comms: &mut Commutators<'_>,
    d: &Term,
) -> Result<Option<CentralIdentityWitness>> {
    let lattice = comms.lattice();
    let alg = lattice.algebra().clone();
    let n = alg.size();
    let dtable = tabulate_term(&alg, d, 3)?;
    let d_at = |x: usize, y: usize, z: usize| dtable[(x * n + y) * n + z];
    let zeta = comms.center()?;
    for a in 0..n {
        for x in 0..n {
            for y in 0..n {
                if !zeta.related(x, y) {
                    continue;
                }
                let got = d_at(x, a, d_at(a, x, y));
                if got != y {
                    return Ok(Some(CentralIdentityWitness { a, x, y, got }));
                }
            }
        }
    }
    Ok(None)
}

/// Extends a congruence of a subalgebra to a central congruence of the
/// ambient algebra through the difference term.
///
/// `emb` embeds the subalgebra into the ambient algebra; `a` is an element
/// of the subalgebra; `zeta_ambient` is the center of the ambient algebra,
/// supplied by the caller (for products it is the product of the factor
/// centers, which avoids recomputing centers of large algebras);
/// `alpha_ambient <= zeta_ambient` bounds the extension and
/// `beta <= alpha_ambient` restricted to the subalgebra is the congruence
/// being extended.
///
/// The returned congruence `ext` is defined on the pairs of the center by
/// membership of `d(a, x, y)` in the beta-class of `a`; the three
/// conclusions (congruence-hood, `ext <= alpha_ambient`, exact restriction)
/// are asserted before returning and any failure is reported as a
/// falsification.
pub fn extend_central_congruence(
    emb: &Embedding,
    a: usize,
    alpha_ambient: &Partition,
    beta: &Partition,
    d: &Term,
    zeta_ambient: &Partition,
) -> Result<Partition> {
    let ambient = emb.target().clone();
    let sub = emb.source();
    let n = ambient.size();
    let m = sub.size();
    if a >= m {
        return Err(Error::ElementOutOfRange {
            element: a,
            size: m,
        });
    }
    if alpha_ambient.size() != n || zeta_ambient.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: alpha_ambient.size().max(zeta_ambient.size()),
        });
    }
    if beta.size() != m {
        return Err(Error::SizeMismatch {
            expected: m,
            found: beta.size(),
        });
    }
    if !alpha_ambient.leq(zeta_ambient) {
        return Err(Error::Precondition(String::from(
            "the bounding congruence exceeds the supplied center",
        )));
    }
    if !beta.leq(&restrict(alpha_ambient, emb)) {
        return Err(Error::Precondition(String::from(
            "the congruence to extend exceeds the restriction of the bound",
        )));
    }
    d.check_signature(&ambient)?;

    // scoped difference-term validation: the unit law everywhere and the
    // abelian unit law on the central pairs this construction consumes
    for x in 0..n {
        for y in 0..n {
            if eval_term(&ambient, d, &[x, y, y])? != x {
                return Err(Error::Precondition(alloc::format!(
                    "difference term fails d({x}, {y}, {y}) = {x} on the ambient algebra"
                )));
            }
        }
    }
    for (x, y) in zeta_ambient.related_pairs() {
        for (x, y) in [(x, y), (y, x)] {
            if eval_term(&ambient, d, &[x, x, y])? != y {
                return Err(Error::Precondition(alloc::format!(
                    "difference term fails d({x}, {x}, {y}) = {y} on a central pair"
                )));
            }
        }
    }

    let anchor = emb.apply(a);
    let mut beta_class_image = vec![false; n];
    for b in beta.block_of(a) {
        beta_class_image[emb.apply(b)] = true;
    }

    // relation on the central pairs: d(anchor, x, y) lands in the image of
    // the beta-class of a
    let mut relation = Relation::empty(n);
    for block in zeta_ambient.blocks() {
        for &x in &block {
            for &y in &block {
                if beta_class_image[eval_term(&ambient, d, &[anchor, x, y])?] {
                    relation.insert(x, y);
                }
            }
        }
    }
    if !relation.is_reflexive() {
        return Err(Error::Falsified(String::from(
            "central extension relation is not reflexive",
        )));
    }
    if !relation.is_symmetric() {
        return Err(Error::Falsified(String::from(
            "central extension relation is not symmetric",
        )));
    }
    // transitivity can only fail inside a central block
    for block in zeta_ambient.blocks() {
        for &x in &block {
            for &y in &block {
                if !relation.contains(x, y) {
                    continue;
                }
                for &z in &block {
                    if relation.contains(y, z) && !relation.contains(x, z) {
                        return Err(Error::Falsified(String::from(
                            "central extension relation is not transitive",
                        )));
                    }
                }
            }
        }
    }

    let mut pairs = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if relation.contains(x, y) {
                pairs.push((x, y));
            }
        }
    }
    let ext = Partition::from_pairs(n, &pairs);

    // the three conclusions, asserted
    if let Err(e) = check_congruence(&ambient, &ext) {
        return Err(Error::Falsified(alloc::format!(
            "central extension is not a congruence: {e}"
        )));
    }
    if !ext.leq(alpha_ambient) {
        return Err(Error::Falsified(String::from(
            "central extension exceeds its bound",
        )));
    }
    if restrict(&ext, emb) != *beta {
        return Err(Error::Falsified(String::from(
            "central extension does not restrict to the original congruence",
        )));
    }
    Ok(ext)
}

/// Hypotheses of the cube construction, checked and reported but not
/// enforced, so their necessity can be probed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubeHypotheses {
    pub non_abelian: bool,
    pub center_dense: bool,
}

impl CubeHypotheses {
    pub fn hold(&self) -> bool {
        self.non_abelian && self.center_dense
    }
}

/// The cube construction: the subalgebra of center-chained triples, the
/// kernel of the folding map, its central extension to the whole cube, and
/// the induced embedding of the two quotients.
#[derive(Debug, Clone)]
pub struct CubeExtension {
    pub base: Arc<FiniteAlgebra>,
    pub center: Partition,
    pub cube: ProductAlgebra,
    /// The subalgebra `B` of center-chained triples.
    pub chained: Arc<FiniteAlgebra>,
    pub chained_embedding: Embedding,
    /// The folding map `B ->> A` given by the difference term.
    pub fold: Homomorphism,
    /// Kernel of the fold, on `B`.
    pub theta: Partition,
    /// Central extension of `theta` to the cube.
    pub big_theta: Partition,
    pub quotient_chained: Arc<FiniteAlgebra>,
    pub quotient_cube: Arc<FiniteAlgebra>,
    /// The induced embedding of `B/theta` into `cube/big_theta`.
    pub embedding: Embedding,
    /// True when the induced embedding is not onto.
    pub proper: bool,
    pub hypotheses: CubeHypotheses,
    /// Essentiality of the induced embedding; computed (and asserted) when
    /// the hypotheses hold.
    pub essential: Option<EssentialOutcome>,
}

/// Builds the cube extension of `alg` along a validated difference term.
/// The construction proceeds even when the hypotheses (non-abelian, dense
/// center) fail, reporting them instead, so negative experiments run too.
pub fn build_cube_extension(
    alg: &Arc<FiniteAlgebra>,
    d: &Term,
    limits: &Limits,
) -> Result<CubeExtension> {
    let lat = CongruenceLattice::try_build(alg, limits.max_lattice)?;
    let mut comms = Commutators::new(&lat)?;
    if let Some(v) = validate_difference_term(&lat, d)? {
        return Err(Error::Precondition(alloc::format!(
            "difference term invalid on {}: {v:?}",
            alg.name()
        )));
    }
    let zeta = comms.center()?;
    let zeta_idx = lat.index_of(&zeta).expect("center is a congruence");
    let hypotheses = CubeHypotheses {
        non_abelian: !comms.is_abelian()?,
        center_dense: lat.is_dense_idx(zeta_idx).is_ok(),
    };

    let n = alg.size();
    let cube_size = n * n * n;
    if cube_size > limits.max_universe {
        return Err(Error::UniverseLimit {
            required: cube_size,
            limit: limits.max_universe,
        });
    }
    let cube = make_product(&[alg.clone(), alg.clone(), alg.clone()])?;
    let zeta3 = product_congruence(&[n, n, n], &[zeta.clone(), zeta.clone(), zeta.clone()])?;

    let chained_universe: Vec<usize> = (0..cube_size)
        .filter(|&e| {
            let c = cube.decode(e);
            zeta.related(c[0], c[1]) && zeta.related(c[1], c[2])
        })
        .collect();
    let (chained, chained_embedding) = induced_subalgebra(cube.algebra(), &chained_universe)
        .map_err(|e| {
            Error::Falsified(alloc::format!(
                "center-chained triples are not a subalgebra: {e}"
            ))
        })?;

    // the fold B ->> A must be a surjective homomorphism
    let mut fold_map = Vec::with_capacity(chained_universe.len());
    for &e in &chained_universe {
        let c = cube.decode(e);
        fold_map.push(eval_term(alg, d, &c)?);
    }
    let fold = Homomorphism::new(chained.clone(), alg.clone(), fold_map).map_err(|e| {
        Error::Falsified(alloc::format!(
            "difference-term fold is not a homomorphism: {e}"
        ))
    })?;
    if !fold.is_surjective() {
        return Err(Error::Falsified(String::from(
            "difference-term fold is not surjective",
        )));
    }
    let theta = fold.kernel();

    // anchor at the all-zero triple, which is always chained
    debug_assert_eq!(chained_universe[0], 0);
    let big_theta = extend_central_congruence(&chained_embedding, 0, &zeta3, &theta, d, &zeta3)?;

    let (quotient_chained, chained_nat) = make_quotient(&chained, &theta)?;
    let (quotient_cube, cube_nat) = make_quotient(cube.algebra(), &big_theta)?;

    let mut emb_map = vec![0usize; quotient_chained.size()];
    for b in 0..chained.size() {
        emb_map[chained_nat.apply(b)] = cube_nat.apply(chained_embedding.apply(b));
    }
    let hom = Homomorphism::new(quotient_chained.clone(), quotient_cube.clone(), emb_map)
        .map_err(|e| {
            Error::Falsified(alloc::format!("induced quotient map is not a homomorphism: {e}"))
        })?;
    let embedding = Embedding::new_unchecked(hom).map_err(|e| {
        Error::Falsified(alloc::format!("induced quotient map is not injective: {e}"))
    })?;

    let proper = !embedding.is_surjective();
    if proper == zeta.is_one() {
        return Err(Error::Falsified(String::from(
            "the embedding is onto exactly when the center is full, and this instance violates that",
        )));
    }

    let essential = if hypotheses.hold() {
        let outcome = is_essential(&embedding, limits)?;
        if !outcome.is_essential() {
            return Err(Error::Falsified(String::from(
                "cube extension failed to be essential although the hypotheses hold",
            )));
        }
        Some(outcome)
    } else {
        None
    };

    Ok(CubeExtension {
        base: alg.clone(),
        center: zeta,
        cube,
        chained,
        chained_embedding,
        fold,
        theta,
        big_theta,
        quotient_chained,
        quotient_cube,
        embedding,
        proper,
        hypotheses,
        essential,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn lattice_of(name: &str) -> (Arc<FiniteAlgebra>, CongruenceLattice) {
        let alg = corpus::corpus_entry(name).unwrap().algebra;
        let lat = CongruenceLattice::build(&alg);
        (alg, lat)
    }

    #[test]
    fn group_difference_term_is_valid_on_groups() {
        for name in ["trivial", "z2", "z4", "z6", "klein4", "d4", "q8", "s3"] {
            let (_, lat) = lattice_of(name);
            let d = corpus::group_difference_term();
            assert_eq!(validate_difference_term(&lat, &d).unwrap(), None, "{name}");
        }
    }

    #[test]
    fn projection_is_valid_on_lattices_but_not_on_z4() {
        let (_, lat) = lattice_of("m3");
        let d = corpus::lattice_difference_term();
        assert_eq!(validate_difference_term(&lat, &d).unwrap(), None);

        // on Z4 the projection fails the abelian unit law with theta = 1
        let (_, z4lat) = lattice_of("z4");
        match validate_difference_term(&z4lat, &d).unwrap() {
            Some(DifferenceTermViolation::AbelianLeftUnit { theta, x, y, got }) => {
                assert!(theta.is_one());
                assert_eq!((x, y, got), (0, 1, 0));
            }
            other => panic!("expected an abelian unit violation, got {other:?}"),
        }
    }

    #[test]
    fn module_difference_term_on_z4_module() {
        let (_, lat) = lattice_of("z4mod");
        let d = corpus::module_difference_term();
        assert_eq!(validate_difference_term(&lat, &d).unwrap(), None);
    }

    #[test]
    fn term_condition_on_z4() {
        let z4 = corpus::z4();
        let d = corpus::group_difference_term();
        let one = Partition::one(4);
        let out = check_term_condition(&z4, &d, &one, &one).unwrap();
        assert!(out.holds, "{:?}", out.witness);
        // psi = 0 holds trivially
        let out = check_term_condition(&z4, &d, &one, &Partition::zero(4)).unwrap();
        assert!(out.holds);
    }

    #[test]
    fn term_condition_fails_on_d4_total_pair() {
        let d4 = corpus::d4();
        let d = corpus::group_difference_term();
        let one = Partition::one(8);
        let out = check_term_condition(&d4, &d, &one, &one).unwrap();
        assert!(!out.holds);
        assert!(out.witness.is_some());
    }

    #[test]
    fn central_identity_on_corpus() {
        for name in ["z4", "z6", "d4", "q8", "s3"] {
            let (_, lat) = lattice_of(name);
            let mut comms = Commutators::new(&lat).unwrap();
            let d = corpus::group_difference_term();
            assert_eq!(check_central_identity(&mut comms, &d).unwrap(), None, "{name}");
        }
    }

    #[test]
    fn extend_along_identity_returns_the_same_congruence() {
        let z4 = corpus::z4();
        let lat = CongruenceLattice::build(&z4);
        let mut comms = Commutators::new(&lat).unwrap();
        let zeta = comms.center().unwrap();
        let emb = Embedding::identity(&z4);
        let d = corpus::group_difference_term();
        for beta in lat.elements() {
            if beta.leq(&zeta) {
                let ext =
                    extend_central_congruence(&emb, 0, &zeta, beta, &d, &zeta).unwrap();
                assert_eq!(&ext, beta);
            }
        }
    }

    #[test]
    fn extend_subgroup_congruences_into_z4() {
        let z4 = corpus::z4();
        let (_, emb) = induced_subalgebra(&z4, &[0, 2]).unwrap();
        let d = corpus::group_difference_term();
        let one4 = Partition::one(4);
        // beta = 0 on {0, 2} extends to 0
        let ext = extend_central_congruence(&emb, 0, &one4, &Partition::zero(2), &d, &one4)
            .unwrap();
        assert!(ext.is_zero());
        // beta = 1 on {0, 2} extends to the two-block congruence
        let ext = extend_central_congruence(&emb, 0, &one4, &Partition::one(2), &d, &one4)
            .unwrap();
        assert_eq!(ext, Partition::from_pairs(4, &[(0, 2), (1, 3)]));
    }

    #[test]
    fn cube_on_abelian_base_is_onto() {
        let z4 = corpus::z4();
        let d = corpus::group_difference_term();
        let cube = build_cube_extension(&z4, &d, &Limits::default()).unwrap();
        assert!(cube.center.is_one());
        assert_eq!(cube.chained.size(), 64);
        assert!(!cube.proper);
        assert!(!cube.hypotheses.non_abelian);
        assert_eq!(cube.quotient_chained.size(), 4);
    }

    #[test]
    fn cube_on_d4_is_proper_and_essential() {
        let d4 = corpus::d4();
        let d = corpus::group_difference_term();
        let cube = build_cube_extension(&d4, &d, &Limits::default()).unwrap();
        assert!(cube.hypotheses.hold());
        assert!(cube.proper);
        assert!(matches!(cube.essential, Some(EssentialOutcome::Essential)));
        assert_eq!(cube.chained.size(), 32);
        assert_eq!(cube.quotient_chained.size(), 8);
    }

    #[test]
    fn cube_theta_restriction_is_kernel() {
        let d4 = corpus::d4();
        let d = corpus::group_difference_term();
        let cube = build_cube_extension(&d4, &d, &Limits::default()).unwrap();
        assert_eq!(restrict(&cube.big_theta, &cube.chained_embedding), cube.theta);
    }

    /// The construction anchors the extension at the all-zero triple; any
    /// chained triple is admissible, and on d4 the result does not depend on
    /// the choice.
    #[test]
    fn cube_extension_is_anchor_independent_on_d4() {
        let d4 = corpus::d4();
        let d = corpus::group_difference_term();
        let cube = build_cube_extension(&d4, &d, &Limits::default()).unwrap();
        let zeta3 = product_congruence(
            &[8, 8, 8],
            &[cube.center.clone(), cube.center.clone(), cube.center.clone()],
        )
        .unwrap();
        for anchor in 0..cube.chained.size() {
            let ext = extend_central_congruence(
                &cube.chained_embedding,
                anchor,
                &zeta3,
                &cube.theta,
                &d,
                &zeta3,
            )
            .unwrap();
            assert_eq!(
                ext, cube.big_theta,
                "extension differs at anchor {anchor}"
            );
        }
    }

    #[test]
    fn difference_term_record_tracks_validations() {
        let z4 = corpus::z4();
        let lat = CongruenceLattice::build(&z4);
        let mut record = DifferenceTerm::new(corpus::group_difference_term());
        record.validate_on(&lat).unwrap();
        record.validate_on(&lat).unwrap();
        assert_eq!(record.validated_on, alloc::vec![String::from("z4")]);

        let mut bad = DifferenceTerm::new(corpus::lattice_difference_term());
        assert!(bad.validate_on(&lat).is_err());
        assert!(bad.validated_on.is_empty());
    }
}
