//! Terms over a signature and their evaluation on finite algebras.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{for_each_tuple, FiniteAlgebra};
use crate::error::{Error, Result};

/// A term tree: leaves are 0-based variable indices, internal nodes are
/// operation names resolved against the target algebra at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    /// Largest variable index mentioned, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::App(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    /// Checks that every operation resolves in `alg` with the right arity.
    pub fn check_signature(&self, alg: &FiniteAlgebra) -> Result<()> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(name, args) => {
                let op = alg
                    .operation(name)
                    .ok_or_else(|| Error::UnknownOperation(name.clone()))?;
                if op.arity != args.len() {
                    return Err(Error::ArityMismatch {
                        op: name.clone(),
                        expected: op.arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|t| t.check_signature(alg))
            }
        }
    }
}

/// Standard bottom-up evaluation of `t` at `args`.
pub fn eval_term(alg: &FiniteAlgebra, t: &Term, args: &[usize]) -> Result<usize> {
    match t {
        Term::Var(i) => {
            if *i >= args.len() {
                return Err(Error::Precondition(alloc::format!(
                    "term uses variable {i} but only {} arguments were supplied",
                    args.len()
                )));
            }
            let v = args[*i];
            if v >= alg.size() {
                return Err(Error::ElementOutOfRange {
                    element: v,
                    size: alg.size(),
                });
            }
            Ok(v)
        }
        Term::App(name, sub) => {
            let op = alg
                .operation(name)
                .ok_or_else(|| Error::UnknownOperation(name.clone()))?;
            if op.arity != sub.len() {
                return Err(Error::ArityMismatch {
                    op: name.clone(),
                    expected: op.arity,
                    found: sub.len(),
                });
            }
            let mut vals = vec![0usize; sub.len()];
            for (i, s) in sub.iter().enumerate() {
                vals[i] = eval_term(alg, s, args)?;
            }
            Ok(op.apply(alg.size(), &vals))
        }
    }
}

/// Tabulates a term as an explicit `n^k` operation table (last argument
/// fastest). Only sensible for small `n^k`.
pub fn tabulate_term(alg: &FiniteAlgebra, t: &Term, num_vars: usize) -> Result<Vec<usize>> {
    t.check_signature(alg)?;
    if let Some(mv) = t.max_var() {
        if mv >= num_vars {
            return Err(Error::Precondition(alloc::format!(
                "term uses variable {mv} but is declared over {num_vars} variables"
            )));
        }
    }
    let n = alg.size();
    let mut table = Vec::with_capacity(n.pow(num_vars as u32));
    let mut err = None;
    for_each_tuple(n, num_vars, |args| {
        if err.is_some() {
            return;
        }
        match eval_term(alg, t, args) {
            Ok(v) => table.push(v),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(table),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn group_difference_term_on_z4() {
        let z4 = corpus::z4();
        let d = corpus::group_difference_term();
        // x * y^-1 * z with (1, 2, 3): 1 - 2 + 3 = 2 mod 4
        assert_eq!(eval_term(&z4, &d, &[1, 2, 3]).unwrap(), 2);
        // d(x, y, y) = x
        assert_eq!(eval_term(&z4, &d, &[1, 3, 3]).unwrap(), 1);
    }

    #[test]
    fn variable_projection() {
        let z8 = corpus::z8();
        assert_eq!(eval_term(&z8, &Term::var(0), &[5, 1]).unwrap(), 5);
    }

    #[test]
    fn eval_agrees_with_table_lookup_on_plain_applications() {
        let z4 = corpus::z4();
        let t = Term::app("mul", alloc::vec![Term::var(0), Term::var(1)]);
        let op = z4.operation("mul").unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(eval_term(&z4, &t, &[a, b]).unwrap(), op.apply(4, &[a, b]));
            }
        }
    }

    #[test]
    fn unresolved_and_misapplied_operations() {
        let z4 = corpus::z4();
        let bad = Term::app("meet", alloc::vec![Term::var(0), Term::var(1)]);
        assert!(matches!(
            eval_term(&z4, &bad, &[0, 1]),
            Err(Error::UnknownOperation(_))
        ));
        let wrong = Term::app("mul", alloc::vec![Term::var(0)]);
        assert!(matches!(
            eval_term(&z4, &wrong, &[0]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn tabulated_term_matches_pointwise_evaluation() {
        let z4 = corpus::z4();
        let d = corpus::group_difference_term();
        let table = tabulate_term(&z4, &d, 3).unwrap();
        let mut idx = 0;
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    assert_eq!(table[idx], eval_term(&z4, &d, &[x, y, z]).unwrap());
                    idx += 1;
                }
            }
        }
    }
}
