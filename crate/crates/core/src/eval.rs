//! Brute-force evaluation of identities in a finite semiring.
//!
//! Assignments are scanned in lexicographic order with the smallest variable
//! most significant, so the reported counterexample is always the
//! lexicographically first one, whatever the execution mode.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use thiserror::Error;

use crate::algebra::{Element, FiniteAiSemiring};
use crate::par::{self, Execution};
use crate::term::{Identity, SimpleIdentity, Term, Var, Word};

/// Default cap on the number of assignments `n^v` examined per identity.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("{assignments} assignments ({order}^{vars}) exceed the budget of {budget}")]
    BudgetExceeded { order: usize, vars: usize, assignments: u128, budget: u128 },
    #[error("variable {0} is not assigned")]
    Unassigned(Var),
}

pub type Assignment = BTreeMap<Var, Element>;

pub fn eval_word(s: &FiniteAiSemiring, w: &Word, assignment: &Assignment) -> Result<Element, EvalError> {
    let mut it = w.letters().iter();
    let first = *it.next().expect("nonempty");
    let mut acc = *assignment.get(&first).ok_or(EvalError::Unassigned(first))?;
    for x in it {
        acc = s.mul(acc, *assignment.get(x).ok_or(EvalError::Unassigned(*x))?);
    }
    Ok(acc)
}

pub fn eval_term(s: &FiniteAiSemiring, t: &Term, assignment: &Assignment) -> Result<Element, EvalError> {
    let mut acc: Option<Element> = None;
    for w in t.words() {
        let v = eval_word(s, w, assignment)?;
        acc = Some(match acc {
            None => v,
            Some(a) => s.add(a, v),
        });
    }
    Ok(acc.expect("nonempty"))
}

/// An identity with variables replaced by positions `0..vars`.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    vars: Vec<Var>,
    lhs: Vec<Vec<usize>>,
    rhs: Vec<Vec<usize>>,
}

impl Compiled {
    pub(crate) fn new(id: &Identity) -> Self {
        let vars: Vec<Var> = id.vars().into_iter().collect();
        let pos = |x: &Var| vars.binary_search(x).expect("collected");
        let side = |t: &Term| t.words().map(|w| w.letters().iter().map(pos).collect()).collect();
        Self { lhs: side(&id.lhs), rhs: side(&id.rhs), vars }
    }

    fn eval_side(s: &FiniteAiSemiring, side: &[Vec<usize>], values: &[Element]) -> Element {
        let mut acc = None;
        for w in side {
            let mut p = values[w[0]];
            for &x in &w[1..] {
                p = s.mul(p, values[x]);
            }
            acc = Some(match acc {
                None => p,
                Some(a) => s.add(a, p),
            });
        }
        acc.expect("nonempty")
    }

    #[inline]
    pub(crate) fn holds_at(&self, s: &FiniteAiSemiring, values: &[Element]) -> bool {
        Self::eval_side(s, &self.lhs, values) == Self::eval_side(s, &self.rhs, values)
    }

    /// First failing assignment among those whose leading `prefix.len()`
    /// values equal `prefix`.
    /// `abandon` is polled now and then; once it returns true the result
    /// is no longer wanted and `None` is returned.
    fn first_failure_with_prefix(
        &self,
        s: &FiniteAiSemiring,
        prefix: &[Element],
        abandon: &dyn Fn() -> bool,
    ) -> Option<Vec<Element>> {
        let n = s.order();
        let v = self.vars.len();
        let mut values = vec![0; v];
        values[..prefix.len()].copy_from_slice(prefix);
        let mut steps = 0u32;
        loop {
            if steps.is_multiple_of(1024) && abandon() {
                return None;
            }
            steps = steps.wrapping_add(1);
            if !self.holds_at(s, &values) {
                return Some(values);
            }
            // Odometer over the free positions, last position fastest.
            let mut i = v;
            loop {
                if i == prefix.len() {
                    return None;
                }
                i -= 1;
                values[i] += 1;
                if values[i] < n {
                    break;
                }
                values[i] = 0;
            }
        }
    }
}

/// Evaluation settings.
#[derive(Debug, Clone, Copy)]
pub struct Evaluator {
    pub budget: u128,
    pub execution: Execution,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, execution: Execution::available() }
    }
}

impl Evaluator {
    pub fn sequential() -> Self {
        Self { execution: Execution::Sequential, ..Self::default() }
    }

    fn check_budget(&self, n: usize, v: usize) -> Result<(), EvalError> {
        let assignments = (n as u128).checked_pow(v as u32).unwrap_or(u128::MAX);
        if assignments > self.budget {
            return Err(EvalError::BudgetExceeded { order: n, vars: v, assignments, budget: self.budget });
        }
        Ok(())
    }

    /// The lexicographically first assignment falsifying `id`, if any.
    pub fn counterexample(&self, s: &FiniteAiSemiring, id: &Identity) -> Result<Option<Assignment>, EvalError> {
        let compiled = Compiled::new(id);
        let n = s.order();
        let v = compiled.vars.len();
        self.check_budget(n, v)?;
        // Split the search on a prefix of the variables so that there are
        // enough independent chunks; chunks are in lexicographic order.
        let mut depth = 0;
        let mut chunks = 1usize;
        if self.execution.is_parallel() {
            while depth < v && chunks < 256 && (n as u128).pow(v as u32) >= 4096 {
                depth += 1;
                chunks *= n;
            }
        }
        // Lowest chunk known to hold a failure; later chunks give up early.
        let first_hit = AtomicUsize::new(usize::MAX);
        let found = par::map_range(self.execution, chunks, |c| {
            let mut prefix = vec![0; depth];
            let mut rest = c;
            for slot in prefix.iter_mut().rev() {
                *slot = rest % n;
                rest /= n;
            }
            let hit = compiled.first_failure_with_prefix(s, &prefix, &|| first_hit.load(Ordering::Relaxed) < c);
            if hit.is_some() {
                first_hit.fetch_min(c, Ordering::Relaxed);
            }
            hit
        });
        Ok(found
            .into_iter()
            .flatten()
            .next()
            .map(|values| compiled.vars.iter().copied().zip(values).collect()))
    }

    pub fn satisfies(&self, s: &FiniteAiSemiring, id: &Identity) -> Result<bool, EvalError> {
        Ok(self.counterexample(s, id)?.is_none())
    }

    pub fn check_basis(&self, s: &FiniteAiSemiring, ids: &[Identity]) -> Result<BasisReport, EvalError> {
        let mut results = Vec::with_capacity(ids.len());
        for id in ids {
            let witness = self.counterexample(s, id)?;
            results.push(IdentityVerdict { identity: id.clone(), witness });
        }
        Ok(BasisReport { results })
    }
}

/// Whether `id` holds in `s`, with the default budget and execution.
pub fn satisfies(s: &FiniteAiSemiring, id: &Identity) -> Result<bool, EvalError> {
    Evaluator::default().satisfies(s, id)
}

pub fn counterexample(s: &FiniteAiSemiring, id: &Identity) -> Result<Option<Assignment>, EvalError> {
    Evaluator::default().counterexample(s, id)
}

pub fn satisfies_simple(s: &FiniteAiSemiring, id: &SimpleIdentity) -> Result<bool, EvalError> {
    satisfies(s, &id.as_identity())
}

pub fn check_basis(s: &FiniteAiSemiring, ids: &[Identity]) -> Result<BasisReport, EvalError> {
    Evaluator::default().check_basis(s, ids)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityVerdict {
    pub identity: Identity,
    pub witness: Option<Assignment>,
}

impl IdentityVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisReport {
    pub results: Vec<IdentityVerdict>,
}

impl BasisReport {
    pub fn all_hold(&self) -> bool {
        self.results.iter().all(IdentityVerdict::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityVerdict> {
        self.results.iter().filter(|r| !r.holds())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two(mul: [[usize; 2]; 2]) -> FiniteAiSemiring {
        let mul: Vec<Vec<usize>> = mul.iter().map(|r| r.to_vec()).collect();
        FiniteAiSemiring::from_tables("t", &[vec![0, 1], vec![1, 1]], &mul).unwrap()
    }

    fn id(s: &str) -> Identity {
        s.parse().unwrap()
    }

    #[test]
    fn left_zero_semiring_satisfies_xy_equals_x() {
        let l2 = two([[0, 0], [1, 1]]);
        assert!(satisfies(&l2, &id("xy ≈ x")).unwrap());
        assert!(!satisfies(&l2, &id("xy ≈ y")).unwrap());
    }

    #[test]
    fn counterexample_is_lexicographically_first() {
        let t2 = two([[1, 1], [1, 1]]);
        let w = counterexample(&t2, &id("x + yz ≈ x")).unwrap().unwrap();
        let names: Vec<(String, usize)> = w.iter().map(|(k, &v)| (k.to_string(), v)).collect();
        assert_eq!(names, vec![("x".into(), 0), ("y".into(), 0), ("z".into(), 0)]);
        assert!(satisfies(&t2, &id("xy ≈ zw")).unwrap());
    }

    #[test]
    fn modes_agree_on_witnesses() {
        let m2 = two([[0, 1], [1, 1]]);
        let identity = id("x1x2 + x3 + x4x5x6 ≈ x1x2x3");
        let seq = Evaluator::sequential().counterexample(&m2, &identity).unwrap();
        let par = Evaluator::default().counterexample(&m2, &identity).unwrap();
        assert_eq!(seq, par);
        assert!(seq.is_some());
    }

    #[test]
    fn budget_is_enforced() {
        let m2 = two([[0, 1], [1, 1]]);
        let ev = Evaluator { budget: 7, ..Evaluator::default() };
        let err = ev.satisfies(&m2, &id("xyz ≈ zyx")).unwrap_err();
        assert!(matches!(err, EvalError::BudgetExceeded { assignments: 8, .. }));
    }

    #[test]
    fn term_evaluation_joins_summands() {
        let m2 = two([[0, 1], [1, 1]]);
        let x: Var = "x".parse().unwrap();
        let y: Var = "y".parse().unwrap();
        let a: Assignment = [(x, 0), (y, 1)].into();
        assert_eq!(eval_term(&m2, &"x + xy".parse().unwrap(), &a).unwrap(), 1);
        assert_eq!(eval_term(&m2, &"x".parse().unwrap(), &a).unwrap(), 0);
        assert!(eval_term(&m2, &"z".parse().unwrap(), &a).is_err());
    }
}
