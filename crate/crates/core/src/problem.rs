//! Bi-objective problem definitions, domination relations and evaluation accounting.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Objective vector of a bi-objective (minimization) problem.
pub type Objectives<T> = [T; 2];

/// A to-be-minimized bi-objective problem over an `n`-dimensional real decision space.
///
/// Problems without a genuine domain only provide initialization ranges and the search
/// is unbounded after initialization. Problems with a box domain report it through
/// [`MoProblem::domain_bounds`]; optimizers then sample inside it, and the problem still
/// handles out-of-domain inputs itself.
pub trait MoProblem<T: Scalar>: Send + Sync {
    fn name(&self) -> String;

    /// Decision-space dimension `n`.
    fn dimension(&self) -> usize;

    /// Initialization box `(lower, upper)`, each of length `n`.
    fn init_bounds(&self) -> (Vec<T>, Vec<T>);

    /// Raw objective function. Use [`evaluate`] to get budget accounting.
    fn objectives(&self, x: &[T]) -> Objectives<T>;

    /// Box domain `(lower, upper)` of the decision space, if the problem has one.
    fn domain_bounds(&self) -> Option<(Vec<T>, Vec<T>)> {
        None
    }

    /// Whether the objectives are additively separable in the decision variables.
    fn is_separable(&self) -> bool {
        true
    }
}

/// Checks the structural invariants of a problem (`n >= 1`, `lower < upper`).
pub fn check_problem<T: Scalar, P: MoProblem<T> + ?Sized>(problem: &P) -> Result<()> {
    let n = problem.dimension();
    if n == 0 {
        return Err(Error::InvalidProblem(format!(
            "{}: dimension must be positive",
            problem.name()
        )));
    }
    let (lo, hi) = problem.init_bounds();
    if lo.len() != n || hi.len() != n {
        return Err(Error::InvalidProblem(format!(
            "{}: init bounds must have length {n}",
            problem.name()
        )));
    }
    if let Some(i) = (0..n).find(|&i| !(lo[i] < hi[i])) {
        return Err(Error::InvalidProblem(format!(
            "{}: lower_init[{i}] must be below upper_init[{i}]",
            problem.name()
        )));
    }
    Ok(())
}

/// Counts MO-fevals (one evaluation of `f` on one decision vector) against an optional budget.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EvaluationCounter {
    fevals: u64,
    budget: Option<u64>,
}

impl EvaluationCounter {
    pub fn new(budget: Option<u64>) -> Self {
        Self { fevals: 0, budget }
    }

    pub fn unlimited() -> Self {
        Self::new(None)
    }

    pub fn fevals(&self) -> u64 {
        self.fevals
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    /// Number of evaluations left, `None` when unlimited.
    pub fn remaining(&self) -> Option<u64> {
        self.budget.map(|b| b.saturating_sub(self.fevals))
    }

    pub fn is_exhausted(&self) -> bool {
        self.remaining() == Some(0)
    }

    /// Reserves `k` evaluations at once, failing without side effects if they do not fit.
    pub fn reserve(&mut self, k: u64) -> Result<()> {
        if let Some(budget) = self.budget {
            if self.fevals + k > budget {
                return Err(Error::BudgetExhausted { budget });
            }
        }
        self.fevals += k;
        Ok(())
    }
}

/// Evaluates `f(x)` and charges one MO-feval to `counter`.
///
/// Passing a vector of the wrong length is a programming error and panics.
pub fn evaluate<T: Scalar, P: MoProblem<T> + ?Sized>(
    problem: &P,
    x: &[T],
    counter: &mut EvaluationCounter,
) -> Result<Objectives<T>> {
    assert_eq!(
        x.len(),
        problem.dimension(),
        "decision vector length does not match problem dimension"
    );
    counter.reserve(1)?;
    Ok(problem.objectives(x))
}

/// A decision vector together with its cached objective vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<T> {
    pub x: Vec<T>,
    pub f: Objectives<T>,
}

impl<T: Scalar> Solution<T> {
    pub fn evaluate<P: MoProblem<T> + ?Sized>(
        problem: &P,
        x: Vec<T>,
        counter: &mut EvaluationCounter,
    ) -> Result<Self> {
        let f = evaluate(problem, &x, counter)?;
        Ok(Self { x, f })
    }
}

/// Outcome of comparing two objective vectors under Pareto domination.
///
/// For two objectives, weak domination without strict domination means equality,
/// so `a ⪯ b` holds exactly for [`Dominance::ADominates`] and [`Dominance::Equal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    ADominates,
    BDominates,
    Equal,
    Incomparable,
}

fn check_finite<T: Scalar>(v: &[T], what: &'static str) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

pub fn compare_domination<T: Scalar>(a: &Objectives<T>, b: &Objectives<T>) -> Result<Dominance> {
    check_finite(a, "objective vector")?;
    check_finite(b, "objective vector")?;
    Ok(domination_unchecked(a, b))
}

pub(crate) fn domination_unchecked<T: Scalar>(a: &Objectives<T>, b: &Objectives<T>) -> Dominance {
    let mut a_better = false;
    let mut b_better = false;
    for i in 0..2 {
        match a[i].partial_cmp(&b[i]) {
            Some(Ordering::Less) => a_better = true,
            Some(Ordering::Greater) => b_better = true,
            _ => {}
        }
    }
    match (a_better, b_better) {
        (true, false) => Dominance::ADominates,
        (false, true) => Dominance::BDominates,
        (false, false) => Dominance::Equal,
        (true, true) => Dominance::Incomparable,
    }
}

/// `a ≺ b`: no worse in both objectives and strictly better in at least one.
#[inline]
pub fn dominates<T: Scalar>(a: &Objectives<T>, b: &Objectives<T>) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1])
}

/// `a ⪯ b`.
#[inline]
pub fn weakly_dominates<T: Scalar>(a: &Objectives<T>, b: &Objectives<T>) -> bool {
    a[0] <= b[0] && a[1] <= b[1]
}

/// Indices of the non-dominated members of `f`, in their original order.
///
/// Members with identical objective vectors do not dominate each other and are all kept.
pub fn approximation_set<T: Scalar>(f: &[Objectives<T>]) -> Vec<usize> {
    (0..f.len())
        .filter(|&i| !f.iter().any(|g| dominates(g, &f[i])))
        .collect()
}

/// The non-dominated members of a solution set, in their original order.
pub fn approximation_subset<T: Scalar>(set: &[Solution<T>]) -> Vec<Solution<T>> {
    let f: Vec<_> = set.iter().map(|s| s.f).collect();
    approximation_set(&f)
        .into_iter()
        .map(|i| set[i].clone())
        .collect()
}
