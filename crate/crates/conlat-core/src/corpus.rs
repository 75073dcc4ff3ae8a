//! Builtin corpus of small algebras: groups, a module, lattices, and bare
//! sets, each tagged with a difference term where one is valid.
//!
//! All group-signature entries share the operation names `mul`, `inv`, `e`
//! so that products and isomorphism checks between them are well-typed; the
//! module and lattice signatures are deliberately distinct.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{make_product, FiniteAlgebra, OperationTable};
use crate::term::Term;

/// Signature family of a corpus entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignatureKind {
    /// `mul`(2), `inv`(1), `e`(0)
    Group,
    /// `add`(2), `neg`(1), `zero`(0)
    Module,
    /// `meet`(2), `join`(2)
    Lattice,
    /// no operations
    Bare,
}

/// A corpus algebra with its metadata.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub algebra: Arc<FiniteAlgebra>,
    pub kind: SignatureKind,
    /// A difference term valid on this algebra, when the signature carries
    /// one.
    pub difference_term: Option<Term>,
}

impl CorpusEntry {
    pub fn name(&self) -> &str {
        self.algebra.name()
    }
}

fn group(name: &str, n: usize, mul: impl Fn(usize, usize) -> usize, inv: impl Fn(usize) -> usize, e: usize) -> Arc<FiniteAlgebra> {
    let mut mul_tbl = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mul_tbl.push(mul(a, b));
        }
    }
    let inv_tbl: Vec<usize> = (0..n).map(inv).collect();
    Arc::new(
        FiniteAlgebra::new(
            name,
            n,
            vec![
                OperationTable::new("mul", 2, mul_tbl),
                OperationTable::new("inv", 1, inv_tbl),
                OperationTable::new("e", 0, vec![e]),
            ],
        )
        .expect("builtin group tables are well-formed"),
    )
}

fn cyclic(name: &str, n: usize) -> Arc<FiniteAlgebra> {
    group(name, n, |a, b| (a + b) % n, |a| (n - a) % n, 0)
}

pub fn trivial() -> Arc<FiniteAlgebra> {
    cyclic("trivial", 1)
}

pub fn z2() -> Arc<FiniteAlgebra> {
    cyclic("z2", 2)
}

pub fn z3() -> Arc<FiniteAlgebra> {
    cyclic("z3", 3)
}

pub fn z4() -> Arc<FiniteAlgebra> {
    cyclic("z4", 4)
}

pub fn z6() -> Arc<FiniteAlgebra> {
    cyclic("z6", 6)
}

pub fn z8() -> Arc<FiniteAlgebra> {
    cyclic("z8", 8)
}

/// Z2 x Z2 with `(a, b)` encoded as `2a + b`; the group operation is XOR.
pub fn klein4() -> Arc<FiniteAlgebra> {
    group("klein4", 4, |a, b| a ^ b, |a| a, 0)
}

pub fn z2xz4() -> Arc<FiniteAlgebra> {
    let p = make_product(&[z2(), z4()]).expect("compatible signatures");
    Arc::new((**p.algebra()).clone().rename("z2xz4"))
}

/// Dihedral group of the square; element `r^i s^a` is encoded as `i + 4a`.
pub fn d4() -> Arc<FiniteAlgebra> {
    let mul = |x: usize, y: usize| {
        let (i, a) = (x % 4, x / 4);
        let (j, b) = (y % 4, y / 4);
        if a == 0 {
            (i + j) % 4 + 4 * b
        } else {
            (i + 4 - j) % 4 + 4 * ((a + b) % 2)
        }
    };
    let inv = |x: usize| {
        let (i, a) = (x % 4, x / 4);
        if a == 0 {
            (4 - i) % 4
        } else {
            x
        }
    };
    group("d4", 8, mul, inv, 0)
}

/// Quaternion group; element `(unit, sign)` with units `1, i, j, k` is
/// encoded as `2 * unit + sign`.
pub fn q8() -> Arc<FiniteAlgebra> {
    // unit multiplication: returns (unit, extra sign)
    fn unit_mul(u: usize, v: usize) -> (usize, usize) {
        match (u, v) {
            (0, x) => (x, 0),
            (x, 0) => (x, 0),
            (1, 1) => (0, 1),
            (2, 2) => (0, 1),
            (3, 3) => (0, 1),
            (1, 2) => (3, 0),
            (2, 1) => (3, 1),
            (2, 3) => (1, 0),
            (3, 2) => (1, 1),
            (3, 1) => (2, 0),
            (1, 3) => (2, 1),
            _ => unreachable!(),
        }
    }
    let mul = |x: usize, y: usize| {
        let (u, s) = (x / 2, x % 2);
        let (v, t) = (y / 2, y % 2);
        let (w, extra) = unit_mul(u, v);
        2 * w + (s + t + extra) % 2
    };
    let inv = |x: usize| {
        let (u, s) = (x / 2, x % 2);
        if u == 0 {
            x
        } else {
            2 * u + (1 - s)
        }
    };
    group("q8", 8, mul, inv, 0)
}

/// Symmetric group on three letters; elements are the permutations in
/// lexicographic one-line order.
pub fn s3() -> Arc<FiniteAlgebra> {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
    let mul = |x: usize, y: usize| {
        let (p, q) = (perms[x], perms[y]);
        index_of(&[p[q[0]], p[q[1]], p[q[2]]])
    };
    let inv = |x: usize| {
        let p = perms[x];
        let mut r = [0usize; 3];
        for (i, &v) in p.iter().enumerate() {
            r[v] = i;
        }
        index_of(&r)
    };
    group("s3", 6, mul, inv, 0)
}

/// Z4 with module signature `add`, `neg`, `zero`: same tables as the group,
/// deliberately incompatible by name.
pub fn z4_module() -> Arc<FiniteAlgebra> {
    let n = 4;
    let mut add = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push((a + b) % n);
        }
    }
    Arc::new(
        FiniteAlgebra::new(
            "z4mod",
            n,
            vec![
                OperationTable::new("add", 2, add),
                OperationTable::new("neg", 1, (0..n).map(|a| (n - a) % n).collect()),
                OperationTable::new("zero", 0, vec![0]),
            ],
        )
        .expect("builtin module tables are well-formed"),
    )
}

/// Builds a lattice algebra from its order relation. `leq` must define a
/// lattice on `{0..n-1}`.
fn lattice_from_leq(name: &str, n: usize, leq: impl Fn(usize, usize) -> bool) -> Arc<FiniteAlgebra> {
    let bound = |x: usize, y: usize, lower: bool| -> usize {
        let cmp = |a: usize, b: usize| if lower { leq(a, b) } else { leq(b, a) };
        let bounds: Vec<usize> = (0..n).filter(|&z| cmp(z, x) && cmp(z, y)).collect();
        let best = bounds
            .iter()
            .copied()
            .find(|&z| bounds.iter().all(|&w| cmp(w, z)));
        best.expect("order relation is a lattice")
    };
    let mut meet = Vec::with_capacity(n * n);
    let mut join = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            meet.push(bound(a, b, true));
            join.push(bound(a, b, false));
        }
    }
    Arc::new(
        FiniteAlgebra::new(
            name,
            n,
            vec![
                OperationTable::new("meet", 2, meet),
                OperationTable::new("join", 2, join),
            ],
        )
        .expect("builtin lattice tables are well-formed"),
    )
}

pub fn chain(name: &str, n: usize) -> Arc<FiniteAlgebra> {
    lattice_from_leq(name, n, |a, b| a <= b)
}

/// The diamond: bottom 0, atoms 1, 2, 3, top 4.
pub fn m3() -> Arc<FiniteAlgebra> {
    lattice_from_leq("m3", 5, |a, b| a == b || a == 0 || b == 4)
}

/// The pentagon: 0 < 1 < 3 < 4 and 0 < 2 < 4.
pub fn n5() -> Arc<FiniteAlgebra> {
    let chains: [(usize, usize); 9] = [
        (0, 0),
        (1, 1),
        (2, 2),
        (3, 3),
        (4, 4),
        (0, 1),
        (0, 2),
        (0, 3),
        (1, 3),
    ];
    lattice_from_leq("n5", 5, move |a, b| {
        b == 4 || chains.contains(&(a, b))
    })
}

fn bare_set(name: &str, n: usize) -> Arc<FiniteAlgebra> {
    Arc::new(FiniteAlgebra::new(name, n, vec![]).expect("bare set"))
}

pub fn set3() -> Arc<FiniteAlgebra> {
    bare_set("set3", 3)
}

pub fn set4() -> Arc<FiniteAlgebra> {
    bare_set("set4", 4)
}

/// The group difference term `x * y^-1 * z`.
pub fn group_difference_term() -> Term {
    Term::app(
        "mul",
        vec![
            Term::app("mul", vec![Term::var(0), Term::app("inv", vec![Term::var(1)])]),
            Term::var(2),
        ],
    )
}

/// The module difference term `x - y + z`.
pub fn module_difference_term() -> Term {
    Term::app(
        "add",
        vec![
            Term::app("add", vec![Term::var(0), Term::app("neg", vec![Term::var(1)])]),
            Term::var(2),
        ],
    )
}

/// First projection; a valid difference term for lattice-signature entries.
pub fn lattice_difference_term() -> Term {
    Term::var(0)
}

/// Looks up a builtin difference term by name.
pub fn difference_term_by_name(name: &str) -> Option<Term> {
    match name {
        "group_d" => Some(group_difference_term()),
        "module_d" => Some(module_difference_term()),
        "lattice_d" => Some(lattice_difference_term()),
        _ => None,
    }
}

pub const DIFFERENCE_TERM_NAMES: [&str; 3] = ["group_d", "module_d", "lattice_d"];

/// The full builtin corpus in canonical order.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    let g = |algebra: Arc<FiniteAlgebra>| CorpusEntry {
        algebra,
        kind: SignatureKind::Group,
        difference_term: Some(group_difference_term()),
    };
    let l = |algebra: Arc<FiniteAlgebra>| CorpusEntry {
        algebra,
        kind: SignatureKind::Lattice,
        difference_term: Some(lattice_difference_term()),
    };
    vec![
        g(trivial()),
        g(z2()),
        g(z3()),
        g(z4()),
        g(z6()),
        g(z8()),
        g(klein4()),
        g(z2xz4()),
        g(d4()),
        g(q8()),
        g(s3()),
        CorpusEntry {
            algebra: z4_module(),
            kind: SignatureKind::Module,
            difference_term: Some(module_difference_term()),
        },
        l(chain("chain2", 2)),
        l(chain("chain3", 3)),
        l(chain("chain5", 5)),
        l(m3()),
        l(n5()),
        CorpusEntry {
            algebra: set3(),
            kind: SignatureKind::Bare,
            difference_term: None,
        },
        CorpusEntry {
            algebra: set4(),
            kind: SignatureKind::Bare,
            difference_term: None,
        },
    ]
}

/// Looks up a corpus entry by name.
pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    builtin_corpus().into_iter().find(|e| e.name() == name)
}
