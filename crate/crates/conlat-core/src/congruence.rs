//! Congruences of finite algebras: the translation-closure engine, principal
//! congruences, full congruence lattices with cached order structure, and the
//! derived lattice predicates (modularity, density, irreducibility).
//!
//! A partition is compatible with the operations iff it is preserved by every
//! unary translation `f(c_1, .., x, .., c_k)` of every basic operation; the
//! closure engine and the congruence check both work at that level.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{decode_tuple, encode_tuple, Embedding, FiniteAlgebra, ProductAlgebra};
use crate::error::{Error, Result};
use crate::partition::{Partition, UnionFind};

/// Calls `f(base, digits)` for every assignment of the `k-1` argument slots
/// other than `pos`, where `base` is the table index with the `pos` slot set
/// to zero and `digits` are the fixed constants in slot order.
fn for_each_translation_base(
    n: usize,
    k: usize,
    pos: usize,
    mut f: impl FnMut(usize, &[usize]) -> bool,
) {
    let others: Vec<usize> = (0..k).filter(|&i| i != pos).collect();
    let strides: Vec<usize> = others
        .iter()
        .map(|&i| n.pow((k - 1 - i) as u32))
        .collect();
    let mut digits = vec![0usize; others.len()];
    let mut base = 0usize;
    loop {
        if !f(base, &digits) {
            return;
        }
        let mut j = others.len();
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            digits[j] += 1;
            base += strides[j];
            if digits[j] < n {
                break;
            }
            digits[j] = 0;
            base -= strides[j] * n;
        }
    }
}

/// Closes `uf` under all unary translations, starting from `worklist` (whose
/// pairs must already be merged in `uf`).
pub(crate) fn close_under_translations(
    alg: &FiniteAlgebra,
    uf: &mut UnionFind,
    mut worklist: Vec<(usize, usize)>,
) {
    let n = alg.size();
    while let Some((x, y)) = worklist.pop() {
        for op in alg.operations() {
            let k = op.arity;
            if k == 0 {
                continue;
            }
            for pos in 0..k {
                let stride = n.pow((k - 1 - pos) as u32);
                for_each_translation_base(n, k, pos, |base, _| {
                    let u = op.table[base + x * stride];
                    let v = op.table[base + y * stride];
                    if uf.union(u, v) {
                        worklist.push((u, v));
                    }
                    true
                });
            }
        }
    }
}

/// Least congruence relating every pair in `pairs`.
pub fn congruence_closure(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Partition {
    let mut uf = UnionFind::new(alg.size());
    let mut worklist = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            worklist.push((a, b));
        }
    }
    close_under_translations(alg, &mut uf, worklist);
    uf.into_partition()
}

/// Least congruence relating `a` and `b` (Mal'cev closure).
pub fn principal_congruence(alg: &FiniteAlgebra, a: usize, b: usize) -> Partition {
    congruence_closure(alg, &[(a, b)])
}

/// Join of two congruences: the congruence closure of their union.
pub fn join(alg: &FiniteAlgebra, p: &Partition, q: &Partition) -> Partition {
    let mut uf = UnionFind::new(alg.size());
    let mut worklist = Vec::new();
    for i in 0..alg.size() {
        for r in [p.rep(i), q.rep(i)] {
            if uf.union(i, r) {
                worklist.push((i, r));
            }
        }
    }
    close_under_translations(alg, &mut uf, worklist);
    uf.into_partition()
}

/// Checks compatibility of `p` with every operation of `alg`; on failure
/// returns the first violating translation in canonical scan order.
pub fn check_congruence(alg: &FiniteAlgebra, p: &Partition) -> Result<()> {
    if p.size() != alg.size() {
        return Err(Error::SizeMismatch {
            expected: alg.size(),
            found: p.size(),
        });
    }
    let n = alg.size();
    let pairs = p.related_pairs();
    for op in alg.operations() {
        let k = op.arity;
        if k == 0 {
            continue;
        }
        for pos in 0..k {
            let stride = n.pow((k - 1 - pos) as u32);
            for &(x, y) in &pairs {
                let mut witness: Option<(Vec<usize>, (usize, usize))> = None;
                for_each_translation_base(n, k, pos, |base, digits| {
                    let u = op.table[base + x * stride];
                    let v = op.table[base + y * stride];
                    if !p.related(u, v) {
                        witness = Some((digits.to_vec(), (x, y)));
                        return false;
                    }
                    true
                });
                if let Some((constants, pair)) = witness {
                    return Err(Error::NotACongruence {
                        op: op.name.clone(),
                        position: pos,
                        constants,
                        pair,
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn is_congruence(alg: &FiniteAlgebra, p: &Partition) -> bool {
    check_congruence(alg, p).is_ok()
}

/// Restriction of a congruence along an embedding: `a ~ b` iff the images are
/// related.
pub fn restrict(theta: &Partition, emb: &Embedding) -> Partition {
    let m = emb.source().size();
    let mut pairs = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if theta.related(emb.apply(a), emb.apply(b)) {
                pairs.push((a, b));
            }
        }
    }
    Partition::from_pairs(m, &pairs)
}

/// The product congruence of per-factor congruences: tuples related iff
/// related coordinatewise under the mixed-radix encoding.
pub fn product_congruence(factor_sizes: &[usize], parts: &[Partition]) -> Result<Partition> {
    if factor_sizes.len() != parts.len() {
        return Err(Error::SizeMismatch {
            expected: factor_sizes.len(),
            found: parts.len(),
        });
    }
    for (n, p) in factor_sizes.iter().zip(parts) {
        if p.size() != *n {
            return Err(Error::SizeMismatch {
                expected: *n,
                found: p.size(),
            });
        }
    }
    let total: usize = factor_sizes.iter().product();
    let mut rep = vec![0usize; total];
    for e in 0..total {
        let coords = decode_tuple(factor_sizes, e);
        let reps: Vec<usize> = coords
            .iter()
            .zip(parts)
            .map(|(&c, p)| p.rep(c))
            .collect();
        // coordinatewise least representatives encode the least tuple in the
        // block, because the first factor is most significant
        rep[e] = encode_tuple(factor_sizes, &reps);
    }
    Ok(Partition::from_assignment(&rep))
}

/// Outcome of trying to decompose a congruence on a product coordinatewise.
#[derive(Debug, Clone)]
pub enum ProductDecomposition {
    /// `theta` equals the product of the returned factor congruences.
    Product(Vec<Partition>),
    /// `theta` is skew: re-multiplying its coordinate projections yields a
    /// strictly larger relation, first differing at this pair.
    Skew { mismatch: (usize, usize) },
}

/// Projects `theta` to each coordinate (congruence closure of the coordinate
/// pairs) and re-multiplies; decides whether `theta` is a product congruence.
pub fn is_product_congruence(prod: &ProductAlgebra, theta: &Partition) -> Result<ProductDecomposition> {
    let sizes = prod.factor_sizes();
    if theta.size() != prod.algebra().size() {
        return Err(Error::SizeMismatch {
            expected: prod.algebra().size(),
            found: theta.size(),
        });
    }
    let mut coord_pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); sizes.len()];
    for (x, y) in theta.related_pairs() {
        let cx = prod.decode(x);
        let cy = prod.decode(y);
        for i in 0..sizes.len() {
            if cx[i] != cy[i] {
                coord_pairs[i].push((cx[i], cy[i]));
            }
        }
    }
    let parts: Vec<Partition> = (0..sizes.len())
        .map(|i| congruence_closure(&prod.factors()[i], &coord_pairs[i]))
        .collect();
    let remultiplied = product_congruence(&sizes, &parts)?;
    if &remultiplied == theta {
        return Ok(ProductDecomposition::Product(parts));
    }
    // theta <= remultiplied always holds, so the first difference is a pair
    // related in the product but not in theta
    for x in 0..theta.size() {
        for y in x + 1..theta.size() {
            if remultiplied.related(x, y) && !theta.related(x, y) {
                return Ok(ProductDecomposition::Skew { mismatch: (x, y) });
            }
        }
    }
    Err(Error::Falsified(alloc::string::String::from(
        "projection re-multiplication lost pairs of the original congruence",
    )))
}

/// Pushes a congruence `alpha >= eta` down to the quotient by `eta`.
pub fn quotient_partition(alpha: &Partition, eta: &Partition) -> Result<Partition> {
    if !eta.leq(alpha) {
        return Err(Error::Precondition(alloc::string::String::from(
            "quotient congruence requires eta <= alpha",
        )));
    }
    let reps = eta.block_reps();
    let mut pairs = Vec::new();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if alpha.related(reps[i], reps[j]) {
                pairs.push((i, j));
            }
        }
    }
    Ok(Partition::from_pairs(reps.len(), &pairs))
}

/// Pulls a congruence on the quotient by `eta` back to the original universe.
pub fn pullback_partition(bar: &Partition, eta: &Partition) -> Partition {
    let reps = eta.block_reps();
    let block_index: BTreeMap<usize, usize> =
        reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let n = eta.size();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if bar.related(block_index[&eta.rep(a)], block_index[&eta.rep(b)]) {
                pairs.push((a, b));
            }
        }
    }
    Partition::from_pairs(n, &pairs)
}

/// The congruence lattice of a finite algebra with cached order structure.
///
/// Elements are deduplicated and kept in a canonical total order (block
/// arrays compared lexicographically), so index-based results are stable
/// across runs.
pub struct CongruenceLattice {
    algebra: Arc<FiniteAlgebra>,
    elements: Vec<Partition>,
    /// upper[i] bit j set iff elements[i] <= elements[j]
    upper: Vec<Vec<u64>>,
    meet_tbl: Vec<u32>,
    join_tbl: Vec<u32>,
    covers_of: Vec<Vec<u32>>,
    covered_by: Vec<Vec<u32>>,
    heights: Vec<u32>,
    zero: usize,
    one: usize,
    /// principal[a * n + b] = index of Cg(a, b)
    principal: Vec<u32>,
}

impl CongruenceLattice {
    /// Computes all congruences: all principal congruences, closed under
    /// binary join to a fixpoint, plus the zero congruence.
    pub fn build(alg: &Arc<FiniteAlgebra>) -> Self {
        Self::try_build(alg, usize::MAX).expect("unbounded lattice build cannot hit the cap")
    }

    /// As [`CongruenceLattice::build`] but aborts once more than `cap`
    /// congruences have been found.
    pub fn try_build(alg: &Arc<FiniteAlgebra>, cap: usize) -> Result<Self> {
        let n = alg.size();
        let mut principal_part: Vec<Partition> = Vec::new();
        let mut principal_of_pair = vec![u32::MAX; n * n];

        // distinct principal congruences, remembering which pair maps where
        let mut seen: BTreeMap<Partition, u32> = BTreeMap::new();
        for a in 0..n {
            for b in a..n {
                let cg = if a == b {
                    Partition::zero(n)
                } else {
                    principal_congruence(alg, a, b)
                };
                let next = principal_part.len() as u32;
                let id = *seen.entry(cg.clone()).or_insert_with(|| {
                    principal_part.push(cg);
                    next
                });
                principal_of_pair[a * n + b] = id;
                principal_of_pair[b * n + a] = id;
            }
        }

        // close under binary joins
        let mut all: BTreeMap<Partition, ()> = BTreeMap::new();
        all.insert(Partition::zero(n), ());
        for p in &principal_part {
            all.insert(p.clone(), ());
        }
        if all.len() > cap {
            return Err(Error::LatticeLimit { cap });
        }
        let mut frontier: Vec<Partition> = all.keys().cloned().collect();
        while !frontier.is_empty() {
            let mut fresh = Vec::new();
            for f in &frontier {
                let current: Vec<Partition> = all.keys().cloned().collect();
                for e in &current {
                    if f.leq(e) || e.leq(f) {
                        continue;
                    }
                    let j = join(alg, f, e);
                    if !all.contains_key(&j) {
                        all.insert(j.clone(), ());
                        if all.len() > cap {
                            return Err(Error::LatticeLimit { cap });
                        }
                        fresh.push(j);
                    }
                }
            }
            frontier = fresh;
        }

        let elements: Vec<Partition> = all.into_keys().collect();
        let len = elements.len();
        let words = len.div_ceil(64);

        let index_of = |p: &Partition| elements.binary_search(p).ok();

        let mut upper = vec![vec![0u64; words]; len];
        let mut lower = vec![vec![0u64; words]; len];
        for i in 0..len {
            for j in 0..len {
                if elements[i].leq(&elements[j]) {
                    upper[i][j / 64] |= 1 << (j % 64);
                    lower[j][i / 64] |= 1 << (i % 64);
                }
            }
        }

        let zero = index_of(&Partition::zero(n)).expect("zero congruence is always present");
        let one = index_of(&Partition::one(n)).expect("one congruence is always present");

        // meets are blockwise; joins are meets of all common upper bounds
        let mut meet_tbl = vec![0u32; len * len];
        let mut join_tbl = vec![0u32; len * len];
        for i in 0..len {
            for j in i..len {
                let m = elements[i].meet(&elements[j]);
                let mi = index_of(&m).ok_or(Error::Falsified(alloc::string::String::from(
                    "meet escaped the congruence lattice",
                )))? as u32;
                meet_tbl[i * len + j] = mi;
                meet_tbl[j * len + i] = mi;

                let ji = if Self::bit(&upper[i], j) {
                    j as u32
                } else if Self::bit(&upper[j], i) {
                    i as u32
                } else {
                    let mut acc: Option<Partition> = None;
                    for w in 0..words {
                        let mut bits = upper[i][w] & upper[j][w];
                        while bits != 0 {
                            let k = w * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            acc = Some(match acc {
                                None => elements[k].clone(),
                                Some(a) => a.meet(&elements[k]),
                            });
                        }
                    }
                    let lub = acc.ok_or(Error::Falsified(alloc::string::String::from(
                        "no common upper bound in a bounded lattice",
                    )))?;
                    index_of(&lub).ok_or(Error::Falsified(alloc::string::String::from(
                        "join escaped the congruence lattice",
                    )))? as u32
                };
                join_tbl[i * len + j] = ji;
                join_tbl[j * len + i] = ji;
            }
        }

        // covers: j covers i iff i < j and nothing lies strictly between
        let mut covers_of = vec![Vec::new(); len];
        let mut covered_by = vec![Vec::new(); len];
        for i in 0..len {
            for j in 0..len {
                if i == j || !Self::bit(&upper[i], j) {
                    continue;
                }
                let mut between = false;
                'scan: for w in 0..words {
                    let mut bits = upper[i][w] & lower[j][w];
                    while bits != 0 {
                        let k = w * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        if k != i && k != j {
                            between = true;
                            break 'scan;
                        }
                    }
                }
                if !between {
                    covers_of[j].push(i as u32);
                    covered_by[i].push(j as u32);
                }
            }
        }

        // longest chain from the bottom, processed finest-first
        let mut order: Vec<usize> = (0..len).collect();
        order.sort_by_key(|&i| core::cmp::Reverse(elements[i].num_blocks()));
        let mut heights = vec![0u32; len];
        for &i in &order {
            for &below in &covers_of[i] {
                heights[i] = heights[i].max(heights[below as usize] + 1);
            }
        }

        let principal: Vec<u32> = principal_of_pair
            .iter()
            .map(|&id| {
                index_of(&principal_part[id as usize]).expect("principal congruence is in the lattice")
                    as u32
            })
            .collect();

        Ok(CongruenceLattice {
            algebra: alg.clone(),
            elements,
            upper,
            meet_tbl,
            join_tbl,
            covers_of,
            covered_by,
            heights,
            zero,
            one,
            principal,
        })
    }

    #[inline]
    fn bit(row: &[u64], j: usize) -> bool {
        row[j / 64] & (1 << (j % 64)) != 0
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[Partition] {
        &self.elements
    }

    pub fn partition(&self, i: usize) -> &Partition {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn one_index(&self) -> usize {
        self.one
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        Self::bit(&self.upper[i], j)
    }

    pub fn meet_idx(&self, i: usize, j: usize) -> usize {
        self.meet_tbl[i * self.len() + j] as usize
    }

    pub fn join_idx(&self, i: usize, j: usize) -> usize {
        self.join_tbl[i * self.len() + j] as usize
    }

    /// Lattice index of the principal congruence Cg(a, b).
    pub fn principal_index(&self, a: usize, b: usize) -> usize {
        self.principal[a * self.algebra.size() + b] as usize
    }

    /// Indices covering `i` (immediately above).
    pub fn upper_covers(&self, i: usize) -> &[u32] {
        &self.covered_by[i]
    }

    /// Indices covered by `i` (immediately below).
    pub fn lower_covers(&self, i: usize) -> &[u32] {
        &self.covers_of[i]
    }

    /// All covering pairs `(lower, upper)` in canonical order.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for &j in &self.covered_by[i] {
                out.push((i, j as usize));
            }
        }
        out.sort_unstable();
        out
    }

    /// Longest chain from the bottom to `i`, counted in covering steps.
    pub fn height_of(&self, i: usize) -> usize {
        self.heights[i] as usize
    }

    pub fn height(&self) -> usize {
        self.heights[self.one] as usize
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.covered_by[self.zero].iter().map(|&i| i as usize).collect()
    }

    /// Elements with exactly one upper cover. In a finite lattice these are
    /// exactly the (completely) meet-irreducible elements.
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.covered_by[i].len() == 1)
            .collect()
    }

    /// All lattice elements between `lo` and `hi`, canonical order.
    pub fn interval(&self, lo: usize, hi: usize) -> Result<Vec<usize>> {
        if !self.leq_idx(lo, hi) {
            return Err(Error::Precondition(alloc::string::String::from(
                "interval endpoints are not ordered",
            )));
        }
        Ok((0..self.len())
            .filter(|&k| self.leq_idx(lo, k) && self.leq_idx(k, hi))
            .collect())
    }

    /// Modularity via the characterization `b <= a` implies
    /// `a /\ (b \/ c) = b \/ (a /\ c)`. On failure returns five congruences
    /// forming a pentagon sublattice.
    pub fn is_modular(&self) -> core::result::Result<(), Vec<Partition>> {
        let len = self.len();
        for a in 0..len {
            for b in 0..len {
                if a == b || !self.leq_idx(b, a) {
                    continue;
                }
                for c in 0..len {
                    let lhs = self.meet_idx(a, self.join_idx(b, c));
                    let rhs = self.join_idx(b, self.meet_idx(a, c));
                    if lhs != rhs {
                        // rhs < lhs; {rhs, lhs, c, rhs /\ c, rhs \/ c} is an N5
                        let bottom = self.meet_idx(a, c);
                        let top = self.join_idx(b, c);
                        return Err(alloc::vec![
                            self.elements[bottom].clone(),
                            self.elements[rhs].clone(),
                            self.elements[lhs].clone(),
                            self.elements[c].clone(),
                            self.elements[top].clone(),
                        ]);
                    }
                }
            }
        }
        Ok(())
    }

    /// Density of `alpha` in this lattice: every nonzero element meets it
    /// nontrivially. The witness is the canonically least failing element.
    pub fn is_dense_idx(&self, alpha: usize) -> core::result::Result<(), usize> {
        for theta in 0..self.len() {
            if theta == self.zero {
                continue;
            }
            if self.meet_idx(theta, alpha) == self.zero {
                return Err(theta);
            }
        }
        Ok(())
    }

    /// The least nonzero congruence when one exists below all others.
    pub fn monolith(&self) -> Option<usize> {
        let atoms = self.atoms();
        if atoms.len() != 1 {
            return None;
        }
        let a = atoms[0];
        (0..self.len())
            .filter(|&i| i != self.zero)
            .all(|i| self.leq_idx(a, i))
            .then_some(a)
    }

    /// Subdirect irreducibility: zero is completely meet irreducible, i.e. a
    /// unique atom lies below every nonzero congruence.
    pub fn is_si(&self) -> bool {
        self.monolith().is_some()
    }

    /// Finite subdirect irreducibility: zero is meet irreducible. For a
    /// finite lattice this coincides with [`CongruenceLattice::is_si`], but
    /// it is computed from the definition.
    pub fn is_fsi(&self) -> bool {
        if self.len() == 1 {
            // the trivial algebra: zero is the top and not meet irreducible
            return false;
        }
        let mut acc: Option<usize> = None;
        for i in 0..self.len() {
            if i == self.zero {
                continue;
            }
            acc = Some(match acc {
                None => i,
                Some(a) => self.meet_idx(a, i),
            });
        }
        acc != Some(self.zero)
    }
}

impl core::fmt::Debug for CongruenceLattice {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "CongruenceLattice({}, {} congruences)",
            self.algebra.name(),
            self.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::partition::compose;

    #[test]
    fn zero_is_always_a_congruence() {
        for entry in corpus::builtin_corpus() {
            assert!(is_congruence(&entry.algebra, &Partition::zero(entry.algebra.size())));
        }
    }

    #[test]
    fn congruence_check_on_z4() {
        let z4 = corpus::z4();
        assert!(is_congruence(&z4, &Partition::from_pairs(4, &[(0, 2), (1, 3)])));
        let bad = Partition::from_pairs(4, &[(0, 1)]);
        let err = check_congruence(&z4, &bad).unwrap_err();
        match err {
            Error::NotACongruence { op, .. } => assert_eq!(op, "mul"),
            other => panic!("expected congruence violation, got {other:?}"),
        }
    }

    #[test]
    fn principal_congruences_on_z4() {
        let z4 = corpus::z4();
        assert!(principal_congruence(&z4, 1, 1).is_zero());
        assert_eq!(
            principal_congruence(&z4, 0, 2),
            Partition::from_pairs(4, &[(0, 2), (1, 3)])
        );
    }

    #[test]
    fn principal_congruence_on_klein_is_projection_kernel() {
        // klein4 is Z2 x Z2 with (a, b) encoded as 2a + b; relating (0,0) to
        // (1,0) must give the kernel of the second-coordinate projection
        let v = corpus::klein4();
        let cg = principal_congruence(&v, 0, 2);
        assert_eq!(cg, Partition::from_pairs(4, &[(0, 2), (1, 3)]));
    }

    #[test]
    fn lattice_of_z4_is_a_three_chain() {
        let z4 = corpus::z4();
        let lat = CongruenceLattice::build(&z4);
        assert_eq!(lat.len(), 3);
        assert_eq!(lat.height(), 2);
        assert!(lat.is_si());
        assert!(lat.is_fsi());
        assert!(lat.is_modular().is_ok());
    }

    #[test]
    fn lattice_of_klein_four_is_m3() {
        let v = corpus::klein4();
        let lat = CongruenceLattice::build(&v);
        assert_eq!(lat.len(), 5);
        assert_eq!(lat.atoms().len(), 3);
        assert_eq!(lat.covering_pairs().len(), 6);
        assert!(!lat.is_si());
        assert!(lat.is_modular().is_ok());
    }

    #[test]
    fn trivial_algebra_has_one_congruence() {
        let t = corpus::trivial();
        let lat = CongruenceLattice::build(&t);
        assert_eq!(lat.len(), 1);
        assert!(!lat.is_si());
        assert!(!lat.is_fsi());
    }

    #[test]
    fn z6_lattice_meets_and_joins() {
        let z6 = corpus::z6();
        let lat = CongruenceLattice::build(&z6);
        assert_eq!(lat.len(), 4);
        let ker2 = lat.index_of(&Partition::from_pairs(6, &[(0, 2), (2, 4), (1, 3), (3, 5)])).unwrap();
        let ker3 = lat.index_of(&Partition::from_pairs(6, &[(0, 3), (1, 4), (2, 5)])).unwrap();
        assert_eq!(lat.join_idx(ker2, ker3), lat.one_index());
        assert_eq!(lat.meet_idx(ker2, ker3), lat.zero_index());
        assert!(!lat.is_fsi());
        // density: ker2 fails with witness ker3
        assert_eq!(lat.is_dense_idx(ker2), Err(ker3));
        assert!(lat.is_dense_idx(lat.one_index()).is_ok());
    }

    #[test]
    fn partition_lattice_of_bare_set_is_not_modular() {
        let set4 = corpus::set4();
        let lat = CongruenceLattice::build(&set4);
        assert_eq!(lat.len(), 15);
        let pentagon = lat.is_modular().unwrap_err();
        assert_eq!(pentagon.len(), 5);
        // verify the witness really is an N5: chain x < y, side c
        let bottom = &pentagon[0];
        let x = &pentagon[1];
        let y = &pentagon[2];
        let c = &pentagon[3];
        let top = &pentagon[4];
        assert!(x.leq(y) && x != y);
        assert_eq!(&x.meet(c), bottom);
        assert_eq!(&y.meet(c), bottom);
        let lx = lat.index_of(x).unwrap();
        let ly = lat.index_of(y).unwrap();
        let lc = lat.index_of(c).unwrap();
        assert_eq!(lat.join_idx(lx, lc), lat.index_of(top).unwrap());
        assert_eq!(lat.join_idx(ly, lc), lat.index_of(top).unwrap());
    }

    #[test]
    fn three_chain_is_modular() {
        let z4 = corpus::z4();
        assert!(CongruenceLattice::build(&z4).is_modular().is_ok());
    }

    #[test]
    fn interval_endpoints() {
        let z4 = corpus::z4();
        let lat = CongruenceLattice::build(&z4);
        let theta2 = lat
            .index_of(&Partition::from_pairs(4, &[(0, 2), (1, 3)]))
            .unwrap();
        assert_eq!(lat.interval(theta2, theta2).unwrap(), alloc::vec![theta2]);
        assert_eq!(
            lat.interval(lat.zero_index(), lat.one_index()).unwrap().len(),
            3
        );
        assert_eq!(
            lat.interval(lat.zero_index(), theta2).unwrap(),
            {
                let mut v = alloc::vec![lat.zero_index(), theta2];
                v.sort_unstable();
                v
            }
        );
        assert!(lat.interval(lat.one_index(), lat.zero_index()).is_err());
    }

    #[test]
    fn restriction_examples() {
        let z4 = corpus::z4();
        let (_, emb) = crate::algebra::induced_subalgebra(&z4, &[0, 2]).unwrap();
        assert!(restrict(&Partition::zero(4), &emb).is_zero());
        let theta2 = Partition::from_pairs(4, &[(0, 2), (1, 3)]);
        assert!(restrict(&theta2, &emb).is_one());
    }

    #[test]
    fn restriction_of_projection_kernel_to_diagonal_is_zero() {
        let z2 = corpus::z2();
        let prod = crate::algebra::make_product(&[z2.clone(), z2.clone()]).unwrap();
        let diag_map: Vec<usize> = (0..2).map(|a| prod.encode(&[a, a])).collect();
        let emb = Embedding::new(
            crate::algebra::Homomorphism::new_unchecked(z2.clone(), prod.algebra().clone(), diag_map)
                .unwrap(),
        )
        .unwrap();
        let ker_pi1 = prod.projections()[0].kernel();
        assert!(restrict(&ker_pi1, &emb).is_zero());
    }

    #[test]
    fn product_congruence_corners() {
        let sizes = [2usize, 2usize];
        let zero2 = Partition::zero(2);
        let one2 = Partition::one(2);
        assert!(product_congruence(&sizes, &[zero2.clone(), zero2.clone()])
            .unwrap()
            .is_zero());
        assert!(product_congruence(&sizes, &[one2.clone(), one2.clone()])
            .unwrap()
            .is_one());
        // (1, 0): relates iff second coordinates equal = kernel of pi_2
        let p = product_congruence(&sizes, &[one2, zero2]).unwrap();
        assert_eq!(p, Partition::from_pairs(4, &[(0, 2), (1, 3)]));
    }

    #[test]
    fn skew_diagonal_congruence_is_refused() {
        let z2 = corpus::z2();
        let prod = crate::algebra::make_product(&[z2.clone(), z2.clone()]).unwrap();
        let zero4 = Partition::zero(4);
        match is_product_congruence(&prod, &zero4).unwrap() {
            ProductDecomposition::Product(parts) => {
                assert!(parts.iter().all(Partition::is_zero))
            }
            _ => panic!("zero is a product congruence"),
        }
        let ker_pi1 = prod.projections()[0].kernel();
        match is_product_congruence(&prod, &ker_pi1).unwrap() {
            ProductDecomposition::Product(parts) => {
                assert!(parts[0].is_zero() && parts[1].is_one());
            }
            _ => panic!("projection kernels are product congruences"),
        }
        let ker_pi2 = prod.projections()[1].kernel();
        match is_product_congruence(&prod, &ker_pi2).unwrap() {
            ProductDecomposition::Product(parts) => {
                assert!(parts[0].is_one() && parts[1].is_zero());
            }
            _ => panic!("projection kernels are product congruences"),
        }
        // the congruence generated by ((0,0),(1,1)) is skew on Z2 x Z2
        let diag = congruence_closure(prod.algebra(), &[(prod.encode(&[0, 0]), prod.encode(&[1, 1]))]);
        match is_product_congruence(&prod, &diag).unwrap() {
            ProductDecomposition::Skew { .. } => {}
            _ => panic!("diagonal congruence must be refused"),
        }
    }

    #[test]
    fn compose_and_permuting_congruences_on_z6() {
        let ker2 = Partition::from_pairs(6, &[(0, 2), (2, 4), (1, 3), (3, 5)]);
        let ker3 = Partition::from_pairs(6, &[(0, 3), (1, 4), (2, 5)]);
        let fwd = compose(&ker2, &ker3);
        let bwd = compose(&ker3, &ker2);
        assert_eq!(fwd, bwd);
        assert_eq!(fwd.to_partition().unwrap(), Partition::one(6));
    }

    #[test]
    fn theta2_is_dense_in_the_z4_chain() {
        let z4 = corpus::z4();
        let lat = CongruenceLattice::build(&z4);
        let theta2 = lat
            .index_of(&Partition::from_pairs(4, &[(0, 2), (1, 3)]))
            .unwrap();
        assert!(lat.is_dense_idx(theta2).is_ok());
    }

    #[test]
    fn kernel_edge_cases() {
        let z4 = corpus::z4();
        let id = crate::algebra::Homomorphism::new(z4.clone(), z4.clone(), (0..4).collect())
            .unwrap();
        assert!(id.kernel().is_zero());
        let trivial = corpus::trivial();
        let collapse =
            crate::algebra::Homomorphism::new(z4.clone(), trivial, alloc::vec![0, 0, 0, 0])
                .unwrap();
        assert!(collapse.kernel().is_one());
    }

    #[test]
    fn quotient_and_pullback_are_inverse_on_intervals() {
        let z4 = corpus::z4();
        let lat = CongruenceLattice::build(&z4);
        let eta = Partition::from_pairs(4, &[(0, 2), (1, 3)]);
        for alpha in lat.elements() {
            if eta.leq(alpha) {
                let bar = quotient_partition(alpha, &eta).unwrap();
                assert_eq!(&pullback_partition(&bar, &eta), alpha);
            }
        }
    }
}
