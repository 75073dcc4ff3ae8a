//! Partitions of `{0..n-1}` in canonical least-representative form, plus the
//! binary relations that arise from composing them.
//!
//! The canonical form assigns every element the least element of its block,
//! so two partitions are equal as equivalence relations iff their `rep`
//! arrays are equal. All deduplication in the crate depends on this.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A partition of `{0..n-1}`, stored as `rep[i]` = least element of the block
/// containing `i`.
///
/// Invariants: `rep[i] <= i` and `rep[rep[i]] == rep[i]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    rep: Vec<usize>,
}

impl Partition {
    /// The identity (finest) partition: every element is its own block.
    pub fn zero(n: usize) -> Self {
        Partition {
            rep: (0..n).collect(),
        }
    }

    /// The full (coarsest) partition: one block.
    pub fn one(n: usize) -> Self {
        Partition { rep: vec![0; n] }
    }

    /// Builds a partition from an arbitrary block-representative assignment.
    /// `assign[i]` may be any element equivalent to `i`; the result is put in
    /// canonical form.
    pub fn from_assignment(assign: &[usize]) -> Self {
        let mut uf = UnionFind::new(assign.len());
        for (i, &a) in assign.iter().enumerate() {
            uf.union(i, a);
        }
        uf.into_partition()
    }

    /// Builds the finest partition relating every listed pair.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        uf.into_partition()
    }

    /// Builds a partition from explicit blocks. Elements not mentioned become
    /// singletons.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut uf = UnionFind::new(n);
        for block in blocks {
            for &e in block {
                if e >= n {
                    return Err(Error::ElementOutOfRange { element: e, size: n });
                }
                uf.union(block[0], e);
            }
        }
        Ok(uf.into_partition())
    }

    pub fn size(&self) -> usize {
        self.rep.len()
    }

    /// Least element of the block containing `e`.
    pub fn rep(&self, e: usize) -> usize {
        self.rep[e]
    }

    pub fn rep_slice(&self) -> &[usize] {
        &self.rep
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rep[a] == self.rep[b]
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().enumerate().all(|(i, &r)| i == r)
    }

    pub fn is_one(&self) -> bool {
        self.rep.iter().all(|&r| r == 0)
    }

    pub fn num_blocks(&self) -> usize {
        self.rep.iter().enumerate().filter(|&(i, &r)| i == r).count()
    }

    /// Blocks in canonical order (by least element, elements ascending).
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &r) in self.rep.iter().enumerate() {
            map.entry(r).or_default().push(i);
        }
        map.into_values().collect()
    }

    /// The block of `e` as a sorted set.
    pub fn block_of(&self, e: usize) -> Vec<usize> {
        let r = self.rep[e];
        (0..self.size()).filter(|&i| self.rep[i] == r).collect()
    }

    /// Block representatives in ascending order. These label the quotient.
    pub fn block_reps(&self) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.rep[i] == i).collect()
    }

    /// Refinement order: `self <= other` iff every block of `self` lies
    /// inside a block of `other`.
    pub fn leq(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.size(), other.size());
        self.rep
            .iter()
            .enumerate()
            .all(|(i, &r)| other.rep[i] == other.rep[r])
    }

    /// Block-wise intersection.
    pub fn meet(&self, other: &Partition) -> Partition {
        debug_assert_eq!(self.size(), other.size());
        let n = self.size();
        let mut first: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut rep = vec![0; n];
        for i in 0..n {
            let key = (self.rep[i], other.rep[i]);
            let r = *first.entry(key).or_insert(i);
            rep[i] = r;
        }
        Partition { rep }
    }

    /// Join as equivalence relations (transitive closure of the union). For
    /// the join of two congruences use [`crate::congruence::join`], which
    /// additionally closes under the operations.
    pub fn equivalence_join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.size());
        for i in 0..self.size() {
            uf.union(i, self.rep[i]);
            uf.union(i, other.rep[i]);
        }
        uf.into_partition()
    }

    /// All ordered pairs `(a, b)` with `a < b` related by `self`.
    pub fn related_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for block in self.blocks() {
            for i in 0..block.len() {
                for j in i + 1..block.len() {
                    out.push((block[i], block[j]));
                }
            }
        }
        out
    }

    /// Union of the blocks meeting `set`.
    pub fn saturate(&self, set: &[usize]) -> Vec<usize> {
        let mut hit = vec![false; self.size()];
        for &e in set {
            hit[self.rep[e]] = true;
        }
        (0..self.size()).filter(|&i| hit[self.rep[i]]).collect()
    }

    /// Renders as `0,2|1,3` with blocks by least element.
    pub fn display(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for (bi, block) in self.blocks().iter().enumerate() {
            if bi > 0 {
                s.push('|');
            }
            for (ei, e) in block.iter().enumerate() {
                if ei > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{e}");
            }
        }
        s
    }

    /// Converts to a full binary relation.
    pub fn to_relation(&self) -> Relation {
        let mut rel = Relation::empty(self.size());
        for i in 0..self.size() {
            for j in 0..self.size() {
                if self.related(i, j) {
                    rel.insert(i, j);
                }
            }
        }
        rel
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// A binary relation on `{0..n-1}` as a dense bitset.
///
/// Relational composition of congruences is not in general a congruence, so
/// it is returned as a relation together with predicates for the properties
/// it may or may not have.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![0; (n * n).div_ceil(64)],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        let idx = a * self.n + b;
        self.bits[idx / 64] |= 1 << (idx % 64);
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        let idx = a * self.n + b;
        self.bits[idx / 64] & (1 << (idx % 64)) != 0
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.contains(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| !self.contains(a, b) || self.contains(b, a)))
    }

    pub fn is_transitive(&self) -> bool {
        for a in 0..self.n {
            for b in 0..self.n {
                if self.contains(a, b) {
                    for c in 0..self.n {
                        if self.contains(b, c) && !self.contains(a, c) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// First pair contained in `self` but not `other`, scanning in canonical
    /// order.
    pub fn first_difference(&self, other: &Relation) -> Option<(usize, usize)> {
        for a in 0..self.n {
            for b in 0..self.n {
                if self.contains(a, b) != other.contains(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// When the relation happens to be an equivalence, its partition.
    pub fn to_partition(&self) -> Option<Partition> {
        if !(self.is_reflexive() && self.is_symmetric() && self.is_transitive()) {
            return None;
        }
        let mut pairs = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.contains(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        Some(Partition::from_pairs(self.n, &pairs))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation(n={})", self.n)
    }
}

/// Relational composition: `(a, c)` iff there is `b` with `a theta b phi c`.
pub fn compose(theta: &Partition, phi: &Partition) -> Relation {
    debug_assert_eq!(theta.size(), phi.size());
    let n = theta.size();
    let mut rel = Relation::empty(n);
    // group elements by phi-representative for fast class lookup
    let mut phi_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        phi_class.entry(phi.rep(i)).or_default().push(i);
    }
    for a in 0..n {
        for b in 0..n {
            if theta.related(a, b) {
                for &c in &phi_class[&phi.rep(b)] {
                    rel.insert(a, c);
                }
            }
        }
    }
    rel
}

/// Union-find over `{0..n-1}` with path halving. Converted to a canonical
/// [`Partition`] once all unions are done.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns true when they were
    /// previously distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        // keep the smaller index as root so canonicalization is a single pass
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let mut rep = vec![0; n];
        for i in 0..n {
            rep[i] = self.find(i);
        }
        // roots are already the least members because unions keep the smaller
        // index as root
        Partition { rep }
    }
}
