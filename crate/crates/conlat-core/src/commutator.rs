//! The modular commutator `[alpha, beta]`, centers, and the congruence
//! identities built on them.
//!
//! The commutator is computed on the pairs algebra: `A(alpha)` is the
//! subalgebra of `A x A` carried by the alpha-related pairs, `Delta` is the
//! congruence of `A(alpha)` generated by all diagonal pairs `((b,b), (c,c))`
//! with `b beta c`, and `[alpha, beta]` is read off as the relation
//! `{(x, y) : (x,x) Delta (x,y)}`. The read-off orientation is pinned by the
//! oracle tests in this module: it must agree with the normal-subgroup
//! commutator on the corpus groups and with the meet on the corpus lattices
//! before anything downstream is trusted.
//!
//! `Commutators` is the guarded entry point: it refuses non-modular
//! congruence lattices, caches by lattice index, and checks the basic bounds
//! on every value it returns. `raw_commutator` is the unguarded engine for
//! callers that vouch for modularity themselves (the cube construction uses
//! it on products whose full lattice is out of reach).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Embedding, FiniteAlgebra};
use crate::congruence::{
    self, quotient_partition, CongruenceLattice,
};
use crate::error::{Error, Result};
use crate::partition::{compose, Partition, UnionFind};

/// The pairs algebra `A(alpha)` kept virtual: elements are the alpha-related
/// ordered pairs, operations act coordinatewise through the tables of `A`.
struct PairsAlgebra<'a> {
    alg: &'a FiniteAlgebra,
    /// ordered pairs (x, y) with x alpha y, canonical order
    elements: Vec<(usize, usize)>,
    /// x * n + y -> element index, sentinel MAX outside A(alpha)
    index: Vec<u32>,
}

impl<'a> PairsAlgebra<'a> {
    fn new(alg: &'a FiniteAlgebra, alpha: &Partition) -> Self {
        let n = alg.size();
        let mut elements = Vec::new();
        let mut index = vec![u32::MAX; n * n];
        for x in 0..n {
            for y in 0..n {
                if alpha.related(x, y) {
                    index[x * n + y] = elements.len() as u32;
                    elements.push((x, y));
                }
            }
        }
        PairsAlgebra {
            alg,
            elements,
            index,
        }
    }

    #[inline]
    fn index_of(&self, x: usize, y: usize) -> usize {
        self.index[x * self.alg.size() + y] as usize
    }

    #[inline]
    fn diagonal(&self, b: usize) -> usize {
        self.index_of(b, b)
    }
}

/// The commutator `[alpha, beta]` without the modularity guard. The caller
/// vouches that the algebra lives in a congruence modular variety.
pub fn raw_commutator(alg: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Partition {
    let pairs = PairsAlgebra::new(alg, alpha);
    let n = alg.size();
    let m = pairs.elements.len();

    // Delta: close the diagonal beta-pairs under the translations of A(alpha)
    let mut uf = UnionFind::new(m);
    let mut worklist: Vec<(usize, usize)> = Vec::new();
    for block in beta.blocks() {
        let d0 = pairs.diagonal(block[0]);
        for &b in &block[1..] {
            let db = pairs.diagonal(b);
            if uf.union(d0, db) {
                worklist.push((d0, db));
            }
        }
    }

    while let Some((p, q)) = worklist.pop() {
        let (px, py) = pairs.elements[p];
        let (qx, qy) = pairs.elements[q];
        for op in alg.operations() {
            let k = op.arity;
            if k == 0 {
                continue;
            }
            // constants range over the pair universe; odometer over the k-1
            // remaining slots
            let mut consts = vec![0usize; k - 1];
            let mut args_x = vec![0usize; k];
            let mut args_y = vec![0usize; k];
            loop {
                for pos in 0..k {
                    for (ci, &c) in consts.iter().enumerate() {
                        let slot = if ci < pos { ci } else { ci + 1 };
                        let (cx, cy) = pairs.elements[c];
                        args_x[slot] = cx;
                        args_y[slot] = cy;
                    }
                    args_x[pos] = px;
                    args_y[pos] = py;
                    let u = pairs.index_of(op.apply(n, &args_x), op.apply(n, &args_y));
                    args_x[pos] = qx;
                    args_y[pos] = qy;
                    let v = pairs.index_of(op.apply(n, &args_x), op.apply(n, &args_y));
                    if uf.union(u, v) {
                        worklist.push((u, v));
                    }
                }
                // advance the constants odometer
                let mut j = k - 1;
                loop {
                    if j == 0 {
                        break;
                    }
                    j -= 1;
                    consts[j] += 1;
                    if consts[j] < m {
                        break;
                    }
                    consts[j] = 0;
                }
                if k == 1 || consts.iter().all(|&c| c == 0) {
                    break;
                }
            }
        }
    }

    // read off: x ~ y iff (x,x) Delta (x,y)
    let mut merges = Vec::new();
    for &(x, y) in &pairs.elements {
        if x != y && uf.same(pairs.diagonal(x), pairs.index_of(x, y)) {
            merges.push((x, y));
        }
    }
    congruence::congruence_closure(alg, &merges)
}

/// Lattice-backed commutator computations with the modularity guard and a
/// cache keyed by lattice indices. The cache is an optimization only: every
/// stored value is checked against the basic bounds before it is served.
pub struct Commutators<'a> {
    lattice: &'a CongruenceLattice,
    cache: BTreeMap<(usize, usize), usize>,
}

impl<'a> Commutators<'a> {
    /// Refuses algebras whose congruence lattice is not modular, returning
    /// the pentagon witness.
    pub fn new(lattice: &'a CongruenceLattice) -> Result<Self> {
        if let Err(pentagon) = lattice.is_modular() {
            return Err(Error::NonModular(pentagon));
        }
        Ok(Commutators {
            lattice,
            cache: BTreeMap::new(),
        })
    }

    pub fn lattice(&self) -> &CongruenceLattice {
        self.lattice
    }

    /// `[alpha, beta]` by lattice index.
    pub fn commutator_idx(&mut self, alpha: usize, beta: usize) -> Result<usize> {
        if let Some(&v) = self.cache.get(&(alpha, beta)) {
            return Ok(v);
        }
        let value = raw_commutator(
            self.lattice.algebra(),
            self.lattice.partition(alpha),
            self.lattice.partition(beta),
        );
        let idx = self
            .lattice
            .index_of(&value)
            .ok_or_else(|| Error::Falsified(String::from("commutator is not a congruence")))?;
        let bound = self.lattice.meet_idx(alpha, beta);
        if !self.lattice.leq_idx(idx, bound) {
            return Err(Error::Falsified(String::from(
                "commutator exceeds the meet of its arguments",
            )));
        }
        self.cache.insert((alpha, beta), idx);
        Ok(idx)
    }

    pub fn commutator(&mut self, alpha: &Partition, beta: &Partition) -> Result<Partition> {
        let ai = self.index_of(alpha)?;
        let bi = self.index_of(beta)?;
        let v = self.commutator_idx(ai, bi)?;
        Ok(self.lattice.partition(v).clone())
    }

    fn index_of(&self, p: &Partition) -> Result<usize> {
        self.lattice.index_of(p).ok_or_else(|| {
            Error::Precondition(String::from("partition is not a congruence of this algebra"))
        })
    }

    pub fn is_abelian_congruence_idx(&mut self, theta: usize) -> Result<bool> {
        Ok(self.commutator_idx(theta, theta)? == self.lattice.zero_index())
    }

    pub fn is_central_congruence_idx(&mut self, theta: usize) -> Result<bool> {
        Ok(self.commutator_idx(theta, self.lattice.one_index())? == self.lattice.zero_index())
    }

    /// `[1, 1] = 0`.
    pub fn is_abelian(&mut self) -> Result<bool> {
        self.is_abelian_congruence_idx(self.lattice.one_index())
    }

    /// The center as a lattice index, via the principal-commutator
    /// criterion: `a ~ b` iff `[Cg(a,b), 1] = 0`.
    pub fn center_idx(&mut self) -> Result<usize> {
        let n = self.lattice.algebra().size();
        let one = self.lattice.one_index();
        let zero = self.lattice.zero_index();
        let mut central_principal: BTreeMap<usize, bool> = BTreeMap::new();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let cg = self.lattice.principal_index(a, b);
                let ok = match central_principal.get(&cg) {
                    Some(&v) => v,
                    None => {
                        let v = self.commutator_idx(cg, one)? == zero;
                        central_principal.insert(cg, v);
                        v
                    }
                };
                if ok {
                    pairs.push((a, b));
                }
            }
        }
        let zeta = Partition::from_pairs(n, &pairs);
        self.lattice
            .index_of(&zeta)
            .ok_or_else(|| Error::Falsified(String::from("center is not a congruence")))
    }

    pub fn center(&mut self) -> Result<Partition> {
        let idx = self.center_idx()?;
        Ok(self.lattice.partition(idx).clone())
    }

    pub fn is_centerless(&mut self) -> Result<bool> {
        Ok(self.center_idx()? == self.lattice.zero_index())
    }
}

/// Convenience wrapper: the center of `alg`, building the lattice
/// internally. Refuses non-modular lattices.
pub fn center(alg: &Arc<FiniteAlgebra>) -> Result<Partition> {
    let lattice = CongruenceLattice::build(alg);
    Commutators::new(&lattice)?.center()
}

/// Outcome of checking the commutator identity
/// `alpha /\ [beta, beta] = [alpha /\ beta, beta]` over a whole lattice.
#[derive(Debug, Clone)]
pub struct C1Outcome {
    pub holds: bool,
    /// Failing `(alpha, beta, lhs, rhs)` when the identity fails.
    pub witness: Option<(Partition, Partition, Partition, Partition)>,
}

/// Checks (C1) for all congruence pairs. The canonically least failing pair
/// is reported.
pub fn check_c1(comms: &mut Commutators<'_>) -> Result<C1Outcome> {
    let len = comms.lattice.len();
    for alpha in 0..len {
        for beta in 0..len {
            let bb = comms.commutator_idx(beta, beta)?;
            let lhs = comms.lattice.meet_idx(alpha, bb);
            let rhs = comms.commutator_idx(comms.lattice.meet_idx(alpha, beta), beta)?;
            if lhs != rhs {
                let l = comms.lattice;
                return Ok(C1Outcome {
                    holds: false,
                    witness: Some((
                        l.partition(alpha).clone(),
                        l.partition(beta).clone(),
                        l.partition(lhs).clone(),
                        l.partition(rhs).clone(),
                    )),
                });
            }
        }
    }
    Ok(C1Outcome {
        holds: true,
        witness: None,
    })
}

/// Checks that every abelian congruence permutes with every congruence:
/// `theta o phi = phi o theta = theta \/ phi` as relations. Returns the
/// first failing pair.
pub fn check_abelian_permutes(
    comms: &mut Commutators<'_>,
) -> Result<Option<(Partition, Partition)>> {
    let len = comms.lattice.len();
    for t in 0..len {
        if !comms.is_abelian_congruence_idx(t)? {
            continue;
        }
        for p in 0..len {
            let theta = comms.lattice.partition(t);
            let phi = comms.lattice.partition(p);
            let forward = compose(theta, phi);
            let backward = compose(phi, theta);
            let join_rel = comms
                .lattice
                .partition(comms.lattice.join_idx(t, p))
                .to_relation();
            if forward != backward || forward != join_rel {
                return Ok(Some((theta.clone(), phi.clone())));
            }
        }
    }
    Ok(None)
}

use crate::check::{CheckOutcome, CheckReport};

/// Exhaustively verifies the basic commutator facts on one algebra:
/// the meet bound and symmetry, finite join-additivity, the restriction
/// inequality (against a supplied subalgebra), the quotient formula, the
/// product-center formula (against a supplied partner), central restriction,
/// and permutability of abelian congruences.
pub fn check_fact_properties(
    lattice: &CongruenceLattice,
    sub: Option<&Embedding>,
    partner: Option<&Arc<FiniteAlgebra>>,
) -> Result<CheckReport> {
    let mut comms = Commutators::new(lattice)?;
    let len = lattice.len();
    let mut report = CheckReport::new(lattice.algebra().name());
    let mut push = |name: &str, outcome: CheckOutcome| report.push(name, outcome);

    // meet bound and symmetry over all pairs
    let mut bound_ok = CheckOutcome::Pass;
    let mut symm_ok = CheckOutcome::Pass;
    for a in 0..len {
        for b in 0..len {
            let ab = comms.commutator_idx(a, b)?;
            if !lattice.leq_idx(ab, lattice.meet_idx(a, b)) {
                bound_ok = CheckOutcome::Fail {
                    witness: alloc::format!(
                        "[{}, {}] = {}",
                        lattice.partition(a),
                        lattice.partition(b),
                        lattice.partition(ab)
                    ),
                };
            }
            let ba = comms.commutator_idx(b, a)?;
            if ab != ba {
                symm_ok = CheckOutcome::Fail {
                    witness: alloc::format!(
                        "[{}, {}] != [{}, {}]",
                        lattice.partition(a),
                        lattice.partition(b),
                        lattice.partition(b),
                        lattice.partition(a)
                    ),
                };
            }
        }
    }
    push("meet-bound", bound_ok);
    push("symmetry", symm_ok);

    // binary join-additivity, only on small lattices
    if len <= 12 {
        let mut out = CheckOutcome::Pass;
        'additivity: for a in 0..len {
            for b1 in 0..len {
                for b2 in 0..len {
                    let lhs = comms.commutator_idx(a, lattice.join_idx(b1, b2))?;
                    let rhs = lattice.join_idx(
                        comms.commutator_idx(a, b1)?,
                        comms.commutator_idx(a, b2)?,
                    );
                    if lhs != rhs {
                        out = CheckOutcome::Fail {
                            witness: alloc::format!(
                                "alpha={} beta1={} beta2={}",
                                lattice.partition(a),
                                lattice.partition(b1),
                                lattice.partition(b2)
                            ),
                        };
                        break 'additivity;
                    }
                }
            }
        }
        push("join-additivity", out);
    } else {
        push(
            "join-additivity",
            CheckOutcome::Skipped {
                reason: alloc::format!("lattice has {len} > 12 congruences"),
            },
        );
    }

    // restriction inequality on a supplied subalgebra
    match sub {
        Some(emb) => {
            let sub_lat = CongruenceLattice::build(emb.source());
            let mut sub_comms = Commutators::new(&sub_lat)?;
            let mut out = CheckOutcome::Pass;
            'restriction: for a in 0..len {
                for b in 0..len {
                    let ra = congruence::restrict(lattice.partition(a), emb);
                    let rb = congruence::restrict(lattice.partition(b), emb);
                    let lhs = sub_comms.commutator(&ra, &rb)?;
                    let rhs = congruence::restrict(
                        lattice.partition(comms.commutator_idx(a, b)?),
                        emb,
                    );
                    if !lhs.leq(&rhs) {
                        out = CheckOutcome::Fail {
                            witness: alloc::format!(
                                "phi={} psi={}",
                                lattice.partition(a),
                                lattice.partition(b)
                            ),
                        };
                        break 'restriction;
                    }
                }
            }
            push("restriction", out);
        }
        None => push(
            "restriction",
            CheckOutcome::Skipped {
                reason: String::from("no subalgebra supplied"),
            },
        ),
    }

    // quotient formula [phi/pi, psi/pi] = ([phi,psi] \/ pi)/pi
    {
        let mut out = CheckOutcome::Pass;
        'quotient: for pi in 0..len {
            let pi_part = lattice.partition(pi).clone();
            let (quot, _) = crate::algebra::make_quotient(lattice.algebra(), &pi_part)?;
            let quot_lat = CongruenceLattice::build(&quot);
            let mut quot_comms = Commutators::new(&quot_lat)?;
            for a in 0..len {
                if !lattice.leq_idx(pi, a) {
                    continue;
                }
                for b in 0..len {
                    if !lattice.leq_idx(pi, b) {
                        continue;
                    }
                    let abar = quotient_partition(lattice.partition(a), &pi_part)?;
                    let bbar = quotient_partition(lattice.partition(b), &pi_part)?;
                    let lhs = quot_comms.commutator(&abar, &bbar)?;
                    let comm_join_pi =
                        lattice.join_idx(comms.commutator_idx(a, b)?, pi);
                    let rhs = quotient_partition(lattice.partition(comm_join_pi), &pi_part)?;
                    if lhs != rhs {
                        out = CheckOutcome::Fail {
                            witness: alloc::format!(
                                "pi={} phi={} psi={}",
                                pi_part,
                                lattice.partition(a),
                                lattice.partition(b)
                            ),
                        };
                        break 'quotient;
                    }
                }
            }
        }
        push("quotient-image", out);
    }

    // product center formula with a supplied partner
    match partner {
        Some(b) => {
            let prod = crate::algebra::make_product(&[lattice.algebra().clone(), b.clone()])?;
            let prod_lat = CongruenceLattice::build(prod.algebra());
            let mut prod_comms = Commutators::new(&prod_lat)?;
            let b_lat = CongruenceLattice::build(b);
            let mut b_comms = Commutators::new(&b_lat)?;
            let zeta_a = comms.center()?;
            let zeta_b = b_comms.center()?;
            let zeta_prod = prod_comms.center()?;
            let expected = congruence::product_congruence(
                &[lattice.algebra().size(), b.size()],
                &[zeta_a, zeta_b],
            )?;
            push(
                "product-center",
                if zeta_prod == expected {
                    CheckOutcome::Pass
                } else {
                    CheckOutcome::Fail {
                        witness: alloc::format!("center {} != product {}", zeta_prod, expected),
                    }
                },
            );
        }
        None => push(
            "product-center",
            CheckOutcome::Skipped {
                reason: String::from("no product partner supplied"),
            },
        ),
    }

    // restriction of the center is central in the subalgebra
    match sub {
        Some(emb) => {
            let sub_lat = CongruenceLattice::build(emb.source());
            let mut sub_comms = Commutators::new(&sub_lat)?;
            let zeta_a = comms.center()?;
            let restricted = congruence::restrict(&zeta_a, emb);
            let zeta_b = sub_comms.center()?;
            push(
                "center-restriction",
                if restricted.leq(&zeta_b) {
                    CheckOutcome::Pass
                } else {
                    CheckOutcome::Fail {
                        witness: alloc::format!("{} restricts to {}", zeta_a, restricted),
                    }
                },
            );
        }
        None => push(
            "center-restriction",
            CheckOutcome::Skipped {
                reason: String::from("no subalgebra supplied"),
            },
        ),
    }

    // abelian congruences permute with everything
    let permute = check_abelian_permutes(&mut comms)?;
    push(
        "abelian-permute",
        match permute {
            None => CheckOutcome::Pass,
            Some((theta, phi)) => CheckOutcome::Fail {
                witness: alloc::format!("theta={theta} phi={phi}"),
            },
        },
    );

    Ok(report)
}
