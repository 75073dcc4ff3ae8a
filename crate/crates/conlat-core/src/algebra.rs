//! Finite algebras as operation tables, with products, quotients,
//! subalgebras and homomorphisms.
//!
//! The universe of an algebra of size `n` is `{0..n-1}`. Operation tables are
//! row-major with the last argument varying fastest, and product universes
//! are mixed-radix with the first factor most significant. Both conventions
//! are load-bearing: quotient and subdirect bookkeeping identify elements
//! with tuples through them.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// One finitary operation on a universe of size `n`: `n^arity` table entries,
/// last argument fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperationTable {
    pub name: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

impl OperationTable {
    pub fn new(name: impl Into<String>, arity: usize, table: Vec<usize>) -> Self {
        OperationTable {
            name: name.into(),
            arity,
            table,
        }
    }

    /// Applies the operation to `args` on a universe of size `n`.
    #[inline]
    pub fn apply(&self, n: usize, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        let mut idx = 0;
        for &a in args {
            idx = idx * n + a;
        }
        self.table[idx]
    }
}

/// A finite algebra: a named universe `{0..n-1}` plus an ordered list of
/// operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    operations: Vec<OperationTable>,
}

impl FiniteAlgebra {
    /// Validates table lengths, entry ranges and name uniqueness.
    pub fn new(
        name: impl Into<String>,
        size: usize,
        operations: Vec<OperationTable>,
    ) -> Result<Self> {
        let name = name.into();
        if size == 0 {
            return Err(Error::Precondition(String::from("universe must be non-empty")));
        }
        let mut seen = BTreeSet::new();
        for op in &operations {
            if !seen.insert(op.name.clone()) {
                return Err(Error::Precondition(alloc::format!(
                    "duplicate operation name `{}`",
                    op.name
                )));
            }
            let expected = size.checked_pow(op.arity as u32).ok_or(Error::Precondition(
                String::from("operation table size overflows"),
            ))?;
            if op.table.len() != expected {
                return Err(Error::Precondition(alloc::format!(
                    "operation `{}` has {} entries, expected {}",
                    op.name,
                    op.table.len(),
                    expected
                )));
            }
            for &e in &op.table {
                if e >= size {
                    return Err(Error::ElementOutOfRange { element: e, size });
                }
            }
        }
        Ok(FiniteAlgebra {
            name,
            size,
            operations,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn operations(&self) -> &[OperationTable] {
        &self.operations
    }

    pub fn operation(&self, name: &str) -> Option<&OperationTable> {
        self.operations.iter().find(|op| op.name == name)
    }

    pub fn rename(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Signatures are compatible iff the name/arity lists agree in order.
    /// Returns the first offending operation otherwise.
    pub fn check_signature_compatible(&self, other: &FiniteAlgebra) -> Result<()> {
        if self.operations.len() != other.operations.len() {
            return Err(Error::SignatureMismatch(alloc::format!(
                "operation counts differ ({} vs {})",
                self.operations.len(),
                other.operations.len()
            )));
        }
        for (a, b) in self.operations.iter().zip(&other.operations) {
            if a.name != b.name || a.arity != b.arity {
                return Err(Error::SignatureMismatch(a.name.clone()));
            }
        }
        Ok(())
    }

    /// Values of all nullary operations.
    pub fn constants(&self) -> Vec<usize> {
        self.operations
            .iter()
            .filter(|op| op.arity == 0)
            .map(|op| op.table[0])
            .collect()
    }
}

/// Iterates over all tuples in `{0..n-1}^k` in row-major order (last
/// coordinate fastest), calling `f` on each.
pub(crate) fn for_each_tuple(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut tuple = vec![0usize; k];
    loop {
        f(&tuple);
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// A total map between two algebras of the same signature. Construction via
/// [`Homomorphism::new`] checks the homomorphism property exhaustively.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: Arc<FiniteAlgebra>,
    target: Arc<FiniteAlgebra>,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(
        source: Arc<FiniteAlgebra>,
        target: Arc<FiniteAlgebra>,
        map: Vec<usize>,
    ) -> Result<Self> {
        let h = Homomorphism::new_unchecked(source, target, map)?;
        match h.violation() {
            None => Ok(h),
            Some((op, args)) => Err(Error::NotAHomomorphism { op, args }),
        }
    }

    /// Builds the map without running the preservation check; ranges are
    /// still validated.
    pub fn new_unchecked(
        source: Arc<FiniteAlgebra>,
        target: Arc<FiniteAlgebra>,
        map: Vec<usize>,
    ) -> Result<Self> {
        source.check_signature_compatible(&target)?;
        if map.len() != source.size() {
            return Err(Error::SizeMismatch {
                expected: source.size(),
                found: map.len(),
            });
        }
        for &v in &map {
            if v >= target.size() {
                return Err(Error::ElementOutOfRange {
                    element: v,
                    size: target.size(),
                });
            }
        }
        Ok(Homomorphism {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &Arc<FiniteAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteAlgebra> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, e: usize) -> usize {
        self.map[e]
    }

    /// First violation of the preservation equations, scanning operations in
    /// order and argument tuples in row-major order. `None` means the map is
    /// a homomorphism.
    pub fn violation(&self) -> Option<(String, Vec<usize>)> {
        let n = self.source.size();
        let m = self.target.size();
        for (src_op, tgt_op) in self.source.operations().iter().zip(self.target.operations()) {
            let mut bad: Option<Vec<usize>> = None;
            let mut image = vec![0usize; src_op.arity];
            for_each_tuple(n, src_op.arity, |args| {
                if bad.is_some() {
                    return;
                }
                for (i, &a) in args.iter().enumerate() {
                    image[i] = self.map[a];
                }
                if self.map[src_op.apply(n, args)] != tgt_op.apply(m, &image) {
                    bad = Some(args.to_vec());
                }
            });
            if let Some(args) = bad {
                return Some((src_op.name.clone(), args));
            }
        }
        None
    }

    pub fn is_homomorphism(&self) -> bool {
        self.violation().is_none()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &v in &self.map {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.iter().all(|&s| s)
    }

    /// Kernel partition: `a ~ b` iff the images agree.
    pub fn kernel(&self) -> Partition {
        Partition::from_assignment(
            &(0..self.source.size())
                .map(|e| {
                    // use the least preimage of map[e] as representative
                    self.map
                        .iter()
                        .position(|&v| v == self.map[e])
                        .unwrap_or(e)
                })
                .collect::<Vec<_>>(),
        )
    }

    pub fn compose_with(&self, then: &Homomorphism) -> Result<Homomorphism> {
        if self.target.size() != then.source.size() {
            return Err(Error::SizeMismatch {
                expected: self.target.size(),
                found: then.source.size(),
            });
        }
        Homomorphism::new_unchecked(
            self.source.clone(),
            then.target.clone(),
            self.map.iter().map(|&e| then.map[e]).collect(),
        )
    }
}

/// An injective homomorphism, the carrier of all extension notions.
#[derive(Debug, Clone)]
pub struct Embedding {
    hom: Homomorphism,
}

impl Embedding {
    /// Verifies both the homomorphism property and injectivity.
    pub fn new(hom: Homomorphism) -> Result<Self> {
        if let Some((op, args)) = hom.violation() {
            return Err(Error::NotAHomomorphism { op, args });
        }
        Embedding::new_unchecked(hom)
    }

    /// Skips the preservation check (injectivity is still verified).
    pub fn new_unchecked(hom: Homomorphism) -> Result<Self> {
        for a in 0..hom.map.len() {
            for b in a + 1..hom.map.len() {
                if hom.map[a] == hom.map[b] {
                    return Err(Error::NotInjective { a, b });
                }
            }
        }
        Ok(Embedding { hom })
    }

    pub fn identity(alg: &Arc<FiniteAlgebra>) -> Self {
        Embedding {
            hom: Homomorphism {
                source: alg.clone(),
                target: alg.clone(),
                map: (0..alg.size()).collect(),
            },
        }
    }

    pub fn hom(&self) -> &Homomorphism {
        &self.hom
    }

    pub fn source(&self) -> &Arc<FiniteAlgebra> {
        &self.hom.source
    }

    pub fn target(&self) -> &Arc<FiniteAlgebra> {
        &self.hom.target
    }

    #[inline]
    pub fn apply(&self, e: usize) -> usize {
        self.hom.map[e]
    }

    pub fn map(&self) -> &[usize] {
        &self.hom.map
    }

    /// Sorted image of the source universe.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.hom.map.clone();
        img.sort_unstable();
        img
    }

    pub fn is_surjective(&self) -> bool {
        self.hom.is_surjective()
    }
}

/// A finite product with its element encoding and projection maps.
///
/// Element `e` encodes the tuple `decode(e)`; the first factor is most
/// significant, so the encoding of `(a_1, .., a_m)` is
/// `((a_1 * n_2 + a_2) * n_3 + a_3) ...`.
#[derive(Debug, Clone)]
pub struct ProductAlgebra {
    algebra: Arc<FiniteAlgebra>,
    factors: Vec<Arc<FiniteAlgebra>>,
    projections: Vec<Homomorphism>,
}

impl ProductAlgebra {
    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn factors(&self) -> &[Arc<FiniteAlgebra>] {
        &self.factors
    }

    pub fn projections(&self) -> &[Homomorphism] {
        &self.projections
    }

    pub fn factor_sizes(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.size()).collect()
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        encode_tuple(&self.factor_sizes(), coords)
    }

    pub fn decode(&self, e: usize) -> Vec<usize> {
        decode_tuple(&self.factor_sizes(), e)
    }
}

pub fn encode_tuple(sizes: &[usize], coords: &[usize]) -> usize {
    debug_assert_eq!(sizes.len(), coords.len());
    let mut e = 0;
    for (&n, &c) in sizes.iter().zip(coords) {
        debug_assert!(c < n);
        e = e * n + c;
    }
    e
}

pub fn decode_tuple(sizes: &[usize], mut e: usize) -> Vec<usize> {
    let mut coords = vec![0usize; sizes.len()];
    for i in (0..sizes.len()).rev() {
        coords[i] = e % sizes[i];
        e /= sizes[i];
    }
    coords
}

/// Direct product of signature-compatible algebras, operations acting
/// coordinatewise, together with the projection homomorphisms.
pub fn make_product(factors: &[Arc<FiniteAlgebra>]) -> Result<ProductAlgebra> {
    if factors.is_empty() {
        return Err(Error::Precondition(String::from(
            "product requires at least one factor",
        )));
    }
    for f in &factors[1..] {
        factors[0].check_signature_compatible(f)?;
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let total: usize = sizes.iter().product();
    let m = factors.len();

    let mut ops = Vec::with_capacity(factors[0].operations().len());
    for (oi, op0) in factors[0].operations().iter().enumerate() {
        let k = op0.arity;
        let mut table = Vec::with_capacity(total.pow(k as u32));
        let mut arg_coords = vec![vec![0usize; m]; k];
        let mut result = vec![0usize; m];
        for_each_tuple(total, k, |args| {
            for (ai, &a) in args.iter().enumerate() {
                arg_coords[ai] = decode_tuple(&sizes, a);
            }
            for fi in 0..m {
                let op = &factors[fi].operations()[oi];
                let coord_args: Vec<usize> = (0..k).map(|ai| arg_coords[ai][fi]).collect();
                result[fi] = op.apply(sizes[fi], &coord_args);
            }
            table.push(encode_tuple(&sizes, &result));
        });
        ops.push(OperationTable::new(op0.name.clone(), k, table));
    }

    let name = {
        let mut s = String::new();
        for (i, f) in factors.iter().enumerate() {
            if i > 0 {
                s.push('x');
            }
            s.push_str(f.name());
        }
        s
    };
    let algebra = Arc::new(FiniteAlgebra::new(name, total, ops)?);

    let mut projections = Vec::with_capacity(m);
    for fi in 0..m {
        let map: Vec<usize> = (0..total).map(|e| decode_tuple(&sizes, e)[fi]).collect();
        projections.push(Homomorphism::new_unchecked(
            algebra.clone(),
            factors[fi].clone(),
            map,
        )?);
    }

    Ok(ProductAlgebra {
        algebra,
        factors: factors.to_vec(),
        projections,
    })
}

/// Quotient of `alg` by a congruence: blocks labeled by least member,
/// ascending, plus the natural surjection. Rejects partitions that are not
/// congruences with a violating witness.
pub fn make_quotient(
    alg: &Arc<FiniteAlgebra>,
    theta: &Partition,
) -> Result<(Arc<FiniteAlgebra>, Homomorphism)> {
    crate::congruence::check_congruence(alg, theta)?;
    let reps = theta.block_reps();
    let q = reps.len();
    let block_index = |e: usize| reps.binary_search(&theta.rep(e)).unwrap();

    let mut ops = Vec::with_capacity(alg.operations().len());
    for op in alg.operations() {
        let mut table = Vec::with_capacity(q.pow(op.arity as u32));
        let mut rep_args = vec![0usize; op.arity];
        for_each_tuple(q, op.arity, |args| {
            for (i, &a) in args.iter().enumerate() {
                rep_args[i] = reps[a];
            }
            table.push(block_index(op.apply(alg.size(), &rep_args)));
        });
        ops.push(OperationTable::new(op.name.clone(), op.arity, table));
    }

    let quotient = Arc::new(FiniteAlgebra::new(
        alloc::format!("{}/{}", alg.name(), theta.display()),
        q,
        ops,
    )?);
    let map: Vec<usize> = (0..alg.size()).map(block_index).collect();
    let natural = Homomorphism::new_unchecked(alg.clone(), quotient.clone(), map)?;
    Ok((quotient, natural))
}

/// Least subuniverse containing `seed`, by closure under all operations to a
/// fixpoint. Nullary operation values are always included.
pub fn subalgebra_generated(alg: &FiniteAlgebra, seed: &[usize]) -> Result<Vec<usize>> {
    for &e in seed {
        if e >= alg.size() {
            return Err(Error::ElementOutOfRange {
                element: e,
                size: alg.size(),
            });
        }
    }
    let mut member = vec![false; alg.size()];
    for &e in seed {
        member[e] = true;
    }
    for c in alg.constants() {
        member[c] = true;
    }
    if !member.iter().any(|&m| m) {
        return Err(Error::EmptySubuniverse);
    }

    loop {
        let current: Vec<usize> = (0..alg.size()).filter(|&e| member[e]).collect();
        let mut grew = false;
        for op in alg.operations() {
            if op.arity == 0 {
                continue;
            }
            let mut actual = vec![0usize; op.arity];
            for_each_tuple(current.len(), op.arity, |idxs| {
                for (i, &ix) in idxs.iter().enumerate() {
                    actual[i] = current[ix];
                }
                let v = op.apply(alg.size(), &actual);
                if !member[v] {
                    member[v] = true;
                    grew = true;
                }
            });
        }
        if !grew {
            break;
        }
    }
    Ok((0..alg.size()).filter(|&e| member[e]).collect())
}

/// Builds the induced algebra on a subuniverse (which must be closed; that is
/// verified) together with its inclusion embedding.
pub fn induced_subalgebra(
    alg: &Arc<FiniteAlgebra>,
    subuniverse: &[usize],
) -> Result<(Arc<FiniteAlgebra>, Embedding)> {
    let closed = subalgebra_generated(alg, subuniverse)?;
    if closed != subuniverse {
        return Err(Error::Precondition(String::from(
            "set is not closed under the operations",
        )));
    }
    let index_of = |e: usize| subuniverse.binary_search(&e).unwrap();
    let s = subuniverse.len();
    let mut ops = Vec::with_capacity(alg.operations().len());
    for op in alg.operations() {
        let mut table = Vec::with_capacity(s.pow(op.arity as u32));
        let mut actual = vec![0usize; op.arity];
        for_each_tuple(s, op.arity, |args| {
            for (i, &a) in args.iter().enumerate() {
                actual[i] = subuniverse[a];
            }
            table.push(index_of(op.apply(alg.size(), &actual)));
        });
        ops.push(OperationTable::new(op.name.clone(), op.arity, table));
    }
    let sub = Arc::new(FiniteAlgebra::new(
        alloc::format!("{}|sub", alg.name()),
        s,
        ops,
    )?);
    let emb = Embedding::new_unchecked(Homomorphism::new_unchecked(
        sub.clone(),
        alg.clone(),
        subuniverse.to_vec(),
    )?)?;
    Ok((sub, emb))
}

/// All subuniverses of `alg`, each sorted, listed in canonical order.
/// Exponential in the universe; intended for desk-scale algebras.
pub fn all_subuniverses(alg: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = alg.size();
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for mask in 0usize..(1 << n) {
        let seed: Vec<usize> = (0..n).filter(|&e| mask & (1 << e) != 0).collect();
        if seed.is_empty() && alg.constants().is_empty() {
            continue;
        }
        if let Ok(sub) = subalgebra_generated(alg, &seed) {
            out.insert(sub);
        }
    }
    out.into_iter().collect()
}

/// Searches for an isomorphism by backtracking over partial bijections,
/// pruning on every fully-assigned operation application. Returns the image
/// map on success.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<usize>> {
    if a.size() != b.size() || a.check_signature_compatible(b).is_err() {
        return None;
    }
    let n = a.size();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    // nullary operations pin images immediately
    for (op_a, op_b) in a.operations().iter().zip(b.operations()) {
        if op_a.arity == 0 {
            let (ca, cb) = (op_a.table[0], op_b.table[0]);
            if map[ca] != usize::MAX && map[ca] != cb {
                return None;
            }
            if map[ca] == usize::MAX {
                if used[cb] {
                    return None;
                }
                map[ca] = cb;
                used[cb] = true;
            }
        }
    }

    fn consistent(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[usize]) -> bool {
        let n = a.size();
        let mut ok = true;
        for (op_a, op_b) in a.operations().iter().zip(b.operations()) {
            if !ok {
                break;
            }
            let mut image = vec![0usize; op_a.arity];
            for_each_tuple(n, op_a.arity, |args| {
                if !ok {
                    return;
                }
                for (i, &x) in args.iter().enumerate() {
                    if map[x] == usize::MAX {
                        return;
                    }
                    image[i] = map[x];
                }
                let va = map[op_a.apply(n, args)];
                if va != usize::MAX && va != op_b.apply(n, &image) {
                    ok = false;
                }
            });
        }
        ok
    }

    fn assign(
        a: &FiniteAlgebra,
        b: &FiniteAlgebra,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        let n = a.size();
        let e = match (next..n).find(|&e| map[e] == usize::MAX) {
            Some(e) => e,
            None => return consistent(a, b, map),
        };
        for img in 0..n {
            if used[img] {
                continue;
            }
            map[e] = img;
            used[img] = true;
            if consistent(a, b, map) && assign(a, b, map, used, e + 1) {
                return true;
            }
            map[e] = usize::MAX;
            used[img] = false;
        }
        false
    }

    if assign(a, b, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn product_of_one_is_identity_encoding() {
        let z4 = corpus::z4();
        let p = make_product(&[z4.clone()]).unwrap();
        assert_eq!(p.algebra().size(), 4);
        for e in 0..4 {
            assert_eq!(p.encode(&[e]), e);
            assert_eq!(p.projections()[0].apply(e), e);
        }
        assert!(find_isomorphism(p.algebra(), &z4).is_some());
    }

    #[test]
    fn z2_x_z2_is_klein_four() {
        let z2 = corpus::z2();
        let p = make_product(&[z2.clone(), z2.clone()]).unwrap();
        assert_eq!(p.algebra().size(), 4);
        assert!(find_isomorphism(p.algebra(), &corpus::klein4()).is_some());
    }

    #[test]
    fn z2_x_z3_is_z6() {
        let p = make_product(&[corpus::z2(), corpus::z3()]).unwrap();
        assert_eq!(p.algebra().size(), 6);
        assert!(find_isomorphism(p.algebra(), &corpus::z6()).is_some());
    }

    #[test]
    fn product_rejects_signature_mismatch() {
        let err = make_product(&[corpus::z4(), corpus::z4_module()]).unwrap_err();
        assert!(matches!(err, Error::SignatureMismatch(_)));
    }

    #[test]
    fn projections_are_surjective_homomorphisms() {
        let p = make_product(&[corpus::z2(), corpus::z3()]).unwrap();
        for proj in p.projections() {
            assert!(proj.is_homomorphism());
            assert!(proj.is_surjective());
        }
    }

    #[test]
    fn quotient_by_zero_and_one() {
        let z4 = corpus::z4();
        let (q0, nat0) = make_quotient(&z4, &Partition::zero(4)).unwrap();
        assert_eq!(q0.size(), 4);
        assert_eq!(nat0.map(), &[0, 1, 2, 3]);
        let (q1, _) = make_quotient(&z4, &Partition::one(4)).unwrap();
        assert_eq!(q1.size(), 1);
    }

    #[test]
    fn z4_mod_theta2_is_z2() {
        let z4 = corpus::z4();
        let theta2 = Partition::from_pairs(4, &[(0, 2), (1, 3)]);
        let (q, nat) = make_quotient(&z4, &theta2).unwrap();
        assert_eq!(q.size(), 2);
        assert!(find_isomorphism(&q, &corpus::z2()).is_some());
        assert_eq!(nat.kernel(), theta2);
    }

    #[test]
    fn quotient_rejects_non_congruence() {
        let z4 = corpus::z4();
        let p = Partition::from_pairs(4, &[(0, 1)]);
        let err = make_quotient(&z4, &p).unwrap_err();
        assert!(matches!(err, Error::NotACongruence { .. }));
    }

    #[test]
    fn subalgebra_closure_on_z4() {
        let z4 = corpus::z4();
        assert_eq!(subalgebra_generated(&z4, &[2]).unwrap(), alloc::vec![0, 2]);
        assert_eq!(
            subalgebra_generated(&z4, &[0, 1, 2, 3]).unwrap(),
            alloc::vec![0, 1, 2, 3]
        );
        // idempotent
        let s = subalgebra_generated(&z4, &[3]).unwrap();
        assert_eq!(subalgebra_generated(&z4, &s).unwrap(), s);
    }

    #[test]
    fn empty_seed_needs_constants() {
        let set3 = corpus::set3();
        assert!(matches!(
            subalgebra_generated(&set3, &[]),
            Err(Error::EmptySubuniverse)
        ));
        // groups carry a nullary identity, so the empty seed is fine
        assert_eq!(subalgebra_generated(&corpus::z4(), &[]).unwrap(), alloc::vec![0]);
    }

    #[test]
    fn homomorphism_witnesses() {
        let z4 = corpus::z4();
        let z2 = corpus::z2();
        let ok = Homomorphism::new(z4.clone(), z2.clone(), alloc::vec![0, 1, 0, 1]);
        assert!(ok.is_ok());

        let id = Homomorphism::new(z4.clone(), z4.clone(), (0..4).collect());
        assert!(id.is_ok());

        // a |-> a + 1 preserves no operation; the scan finds mul first, and
        // the constant is also violated
        let shift = Homomorphism::new_unchecked(z4.clone(), z4.clone(), alloc::vec![1, 2, 3, 0]).unwrap();
        let (op, args) = shift.violation().unwrap();
        assert_eq!((op.as_str(), args.as_slice()), ("mul", &[0, 0][..]));
        let e = z4.operation("e").unwrap().table[0];
        assert_ne!(shift.apply(e), e);
    }

    #[test]
    fn kernel_of_mod2_map() {
        let z4 = corpus::z4();
        let z2 = corpus::z2();
        let h = Homomorphism::new(z4, z2, alloc::vec![0, 1, 0, 1]).unwrap();
        assert_eq!(h.kernel(), Partition::from_pairs(4, &[(0, 2), (1, 3)]));
    }
}
