//! Brute-force cross-checks, kept algorithmically independent of the main
//! computation paths: partition enumeration for congruence lattices, the
//! normal-subgroup commutator for group-signature algebras, and a
//! lattice-scan center.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::FiniteAlgebra;
use crate::congruence::{is_congruence, CongruenceLattice};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Enumerates all partitions of `{0..n-1}` in canonical order via restricted
/// growth strings. Exponential; intended for `n <= 12` or so.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(labels: &mut Vec<usize>, pos: usize, max_used: usize, out: &mut Vec<Partition>) {
        let n = labels.len();
        if pos == n {
            // label by first occurrence: the first index carrying the same
            // label is the least member of the block
            let mut rep = vec![0usize; n];
            for i in 0..n {
                rep[i] = (0..=i).find(|&j| labels[j] == labels[i]).unwrap();
            }
            out.push(Partition::from_assignment(&rep));
            return;
        }
        for label in 0..=max_used + 1 {
            labels[pos] = label;
            rec(labels, pos + 1, max_used.max(label), out);
        }
    }
    if n == 0 {
        return out;
    }
    labels[0] = 0;
    rec(&mut labels, 1, 0, &mut out);
    out.sort_unstable();
    out
}

/// All congruences of `alg` by enumeration and filtering; the independent
/// oracle for the lattice construction.
pub fn congruences_by_enumeration(alg: &FiniteAlgebra) -> Vec<Partition> {
    all_partitions(alg.size())
        .into_iter()
        .filter(|p| is_congruence(alg, p))
        .collect()
}

/// Least congruence containing `(a, b)`, found by scanning the enumerated
/// congruences rather than by closure.
pub fn least_congruence_over_pair(alg: &FiniteAlgebra, a: usize, b: usize) -> Partition {
    let mut best: Option<Partition> = None;
    for c in congruences_by_enumeration(alg) {
        if c.related(a, b) {
            best = Some(match best {
                None => c,
                Some(acc) => acc.meet(&c),
            });
        }
    }
    best.expect("the full congruence relates every pair")
}

/// Group-signature view of an algebra: `mul`, `inv`, `e` tables.
struct GroupOps<'a> {
    n: usize,
    mul: &'a [usize],
    inv: &'a [usize],
    e: usize,
}

impl<'a> GroupOps<'a> {
    fn of(alg: &'a FiniteAlgebra) -> Result<Self> {
        let mul = alg
            .operation("mul")
            .ok_or_else(|| Error::UnknownOperation("mul".into()))?;
        let inv = alg
            .operation("inv")
            .ok_or_else(|| Error::UnknownOperation("inv".into()))?;
        let e = alg
            .operation("e")
            .ok_or_else(|| Error::UnknownOperation("e".into()))?;
        Ok(GroupOps {
            n: alg.size(),
            mul: &mul.table,
            inv: &inv.table,
            e: e.table[0],
        })
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Subgroup generated by `gens`.
    fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.n];
        member[self.e] = true;
        for &g in gens {
            member[g] = true;
        }
        loop {
            let current: Vec<usize> = (0..self.n).filter(|&x| member[x]).collect();
            let mut grew = false;
            for &a in &current {
                if !member[self.inv(a)] {
                    member[self.inv(a)] = true;
                    grew = true;
                }
                for &b in &current {
                    let ab = self.mul(a, b);
                    if !member[ab] {
                        member[ab] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        (0..self.n).filter(|&x| member[x]).collect()
    }

    /// Coset partition of a normal subgroup: `x ~ y` iff `x^-1 y` lies in it.
    fn coset_partition(&self, subgroup: &[usize]) -> Partition {
        let mut pairs = Vec::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                if subgroup.contains(&self.mul(self.inv(x), y)) {
                    pairs.push((x, y));
                }
            }
        }
        Partition::from_pairs(self.n, &pairs)
    }
}

/// The normal subgroup corresponding to a congruence of a group-signature
/// algebra: the block of the identity.
pub fn congruence_to_normal_subgroup(alg: &FiniteAlgebra, theta: &Partition) -> Result<Vec<usize>> {
    let g = GroupOps::of(alg)?;
    Ok(theta.block_of(g.e))
}

/// Commutator of two congruences computed through the group commutator of
/// the corresponding normal subgroups: generate `[M, N]` from all
/// `a b a^-1 b^-1` and take its coset partition.
pub fn group_commutator_oracle(
    alg: &FiniteAlgebra,
    alpha: &Partition,
    beta: &Partition,
) -> Result<Partition> {
    let g = GroupOps::of(alg)?;
    let m = alpha.block_of(g.e);
    let n = beta.block_of(g.e);
    let mut gens = Vec::new();
    for &a in &m {
        for &b in &n {
            let c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
            gens.push(c);
        }
    }
    let comm = g.subgroup(&gens);
    Ok(g.coset_partition(&comm))
}

/// The center of a group-signature algebra by brute force on the
/// multiplication table, returned as the coset partition of `Z(G)`.
pub fn group_center_oracle(alg: &FiniteAlgebra) -> Result<Partition> {
    let g = GroupOps::of(alg)?;
    let center: Vec<usize> = (0..g.n)
        .filter(|&z| (0..g.n).all(|x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    Ok(g.coset_partition(&center))
}

/// The largest central congruence found by scanning the whole lattice; the
/// independent cross-check for the principal-commutator center.
pub fn center_by_lattice_scan(
    lattice: &CongruenceLattice,
    mut is_central: impl FnMut(usize) -> Result<bool>,
) -> Result<Partition> {
    let alg: &Arc<FiniteAlgebra> = lattice.algebra();
    let mut best = lattice.zero_index();
    for i in 0..lattice.len() {
        if is_central(i)? && lattice.leq_idx(best, i) {
            best = i;
        }
    }
    // the central congruences are closed under join, so the scan maximum is
    // comparable with every central element; verify to be safe
    for i in 0..lattice.len() {
        if is_central(i)? && !lattice.leq_idx(i, best) {
            return Err(Error::Falsified(alloc::format!(
                "central congruences of {} are not directed",
                alg.name()
            )));
        }
    }
    Ok(lattice.partition(best).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn bell_numbers() {
        assert_eq!(all_partitions(1).len(), 1);
        assert_eq!(all_partitions(3).len(), 5);
        assert_eq!(all_partitions(4).len(), 15);
        assert_eq!(all_partitions(5).len(), 52);
    }

    #[test]
    fn enumerated_partitions_are_canonical_and_distinct() {
        let ps = all_partitions(4);
        for p in &ps {
            for i in 0..4 {
                assert!(p.rep(i) <= i);
                assert_eq!(p.rep(p.rep(i)), p.rep(i));
            }
        }
        let mut qs = ps.clone();
        qs.dedup();
        assert_eq!(qs.len(), ps.len());
    }

    #[test]
    fn bare_set_congruences_are_all_partitions() {
        let set4 = corpus::set4();
        assert_eq!(congruences_by_enumeration(&set4).len(), 15);
    }

    #[test]
    fn z4_congruences_by_enumeration() {
        let z4 = corpus::z4();
        let cs = congruences_by_enumeration(&z4);
        assert_eq!(cs.len(), 3);
    }

    #[test]
    fn least_congruence_matches_malcev_closure() {
        let z6 = corpus::z6();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(
                    least_congruence_over_pair(&z6, a, b),
                    crate::congruence::principal_congruence(&z6, a, b)
                );
            }
        }
    }

    #[test]
    fn group_commutator_of_d4_is_generated_by_r2() {
        let d4 = corpus::d4();
        let one = Partition::one(8);
        let comm = group_commutator_oracle(&d4, &one, &one).unwrap();
        assert_eq!(
            comm,
            crate::congruence::principal_congruence(&d4, 0, 2)
        );
    }

    #[test]
    fn center_oracles() {
        let d4 = corpus::d4();
        let z = group_center_oracle(&d4).unwrap();
        // Z(D4) = {e, r^2}
        assert_eq!(z, crate::congruence::principal_congruence(&d4, 0, 2));
        let s3 = corpus::s3();
        assert!(group_center_oracle(&s3).unwrap().is_zero());
        let z4 = corpus::z4();
        assert!(group_center_oracle(&z4).unwrap().is_one());
    }
}
