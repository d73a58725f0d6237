//! Bézier-curve parameterized approximation sets.
//!
//! The genotype holds `q` control points in decision space. Each evaluation samples `p`
//! equidistant points on the curve, keeps the navigational subsequence, and scores it by
//! hypervolume. Samples that fold back or leave the navigational order make the genotype
//! infeasible with the violation from [`crate::bezier::constraint`].

use crate::bezier::{
    constraint, nav_smoothness, navigational_order, sample_points, sample_standardized,
    BezierSolutionSet, ControlPolygon, NavResult,
};
use crate::error::{Error, Result};
use crate::gomea::{self, FitnessFunction, FosKind, GomeaConfig, Individual, StopReason};
use crate::indicators::{hv2d, ReferencePoint};
use crate::problem::{EvaluationCounter, MoProblem, Objectives};
use crate::scalar::Scalar;

/// Everything computed while scoring one control polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct BezEvaluation<T> {
    pub hv: T,
    pub constraint: T,
    /// Samples of the direction-standardized curve.
    pub set: BezierSolutionSet<T>,
    pub nav: NavResult<T>,
    /// Whether standardization inverted the control point order.
    pub reversed: bool,
}

/// Scores the curve encoded by `phi` (`q·n` values): standardize, sample `p` points
/// (`p` MO-fevals), take the navigational order, and return the hypervolume of the
/// navigational subset with the constraint violation.
pub fn bez_fitness<T: Scalar, P: MoProblem<T> + ?Sized>(
    phi: &[T],
    problem: &P,
    p: usize,
    r: &ReferencePoint<T>,
    counter: &mut EvaluationCounter,
) -> Result<BezEvaluation<T>> {
    let polygon = ControlPolygon::from_genotype(phi, problem.dimension())?;
    if let Some(rem) = counter.remaining() {
        if rem < p as u64 {
            return Err(Error::BudgetExhausted {
                budget: counter.budget().unwrap_or_default(),
            });
        }
    }
    let (set, reversed) = sample_standardized(&polygon, p, problem, counter)?;
    let nav = navigational_order(&set.f);
    let (hv, c) = match (hv2d(&nav.front, r), constraint(&set.f, &nav, r)) {
        (Ok(hv), Ok(c)) => (hv, c),
        _ => (T::neg_infinity(), T::infinity()),
    };
    Ok(BezEvaluation {
        hv,
        constraint: c,
        set,
        nav,
        reversed,
    })
}

/// Population size for BezEA: `N = 200` on WFG problems, otherwise the guideline on
/// `l = q·n`.
pub fn default_population_size<T: Scalar, P: MoProblem<T> + ?Sized>(
    problem: &P,
    q: usize,
) -> usize {
    if problem.name().starts_with("wfg") {
        200
    } else {
        gomea::guideline_population_size(q * problem.dimension(), problem.is_separable())
    }
}

/// [`FitnessFunction`] wrapper around [`bez_fitness`]. Rewrites genotypes into their
/// standardized orientation and caches the sampled objective vectors.
pub struct BezFitness<'a, T, P: ?Sized> {
    problem: &'a P,
    p: usize,
    q: usize,
    r: ReferencePoint<T>,
    counter: EvaluationCounter,
}

impl<'a, T: Scalar, P: MoProblem<T> + ?Sized> BezFitness<'a, T, P> {
    pub fn new(
        problem: &'a P,
        p: usize,
        q: usize,
        r: ReferencePoint<T>,
        budget: Option<u64>,
    ) -> Self {
        Self {
            problem,
            p,
            q,
            r,
            counter: EvaluationCounter::new(budget),
        }
    }

    pub fn counter(&self) -> &EvaluationCounter {
        &self.counter
    }
}

impl<T: Scalar, P: MoProblem<T> + ?Sized> FitnessFunction<T> for BezFitness<'_, T, P> {
    fn genotype_len(&self) -> usize {
        self.q * self.problem.dimension()
    }

    fn init_bounds(&self) -> (Vec<T>, Vec<T>) {
        let (lo, hi) = self.problem.init_bounds();
        (lo.repeat(self.q), hi.repeat(self.q))
    }

    fn domain_bounds(&self) -> Option<(Vec<T>, Vec<T>)> {
        let (lo, hi) = self.problem.domain_bounds()?;
        Some((lo.repeat(self.q), hi.repeat(self.q)))
    }

    fn evaluate(&mut self, ind: &mut Individual<T>) -> Result<()> {
        let eval = bez_fitness(
            &ind.genotype,
            self.problem,
            self.p,
            &self.r,
            &mut self.counter,
        )?;
        if eval.reversed {
            ind.genotype = eval.set.polygon.as_genotype().to_vec();
        }
        ind.fitness = eval.hv;
        ind.constraint = eval.constraint;
        ind.cache = eval.set.f.iter().flatten().copied().collect();
        Ok(())
    }

    fn fevals(&self) -> u64 {
        self.counter.fevals()
    }
}

/// One convergence-trace row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BezTraceRow<T> {
    pub fevals: u64,
    pub hv: T,
    pub constraint: T,
    /// Smoothness of the navigational subset; `None` below 3 navigable samples.
    pub sm: Option<T>,
    pub nav_len: usize,
}

#[derive(Debug, Clone)]
pub struct BezRun<T> {
    pub set: BezierSolutionSet<T>,
    pub nav: NavResult<T>,
    pub hv: T,
    pub constraint: T,
    pub sm: Option<T>,
    pub trace: Vec<BezTraceRow<T>>,
    pub fevals: u64,
    pub generations: u64,
    pub stop: StopReason,
}

/// Rebuilds the sample set of an evaluated individual from its genotype and cached
/// objective vectors, without spending evaluations.
fn decoded<T: Scalar>(ind: &Individual<T>, n: usize, p: usize) -> Option<BezierSolutionSet<T>> {
    if ind.cache.len() != 2 * p {
        return None;
    }
    let polygon = ControlPolygon::from_genotype(&ind.genotype, n).ok()?;
    let x = sample_points(&polygon, p).ok()?;
    let f: Vec<Objectives<T>> = ind.cache.chunks(2).map(|c| [c[0], c[1]]).collect();
    Some(BezierSolutionSet {
        polygon,
        t: (0..p)
            .map(|i| crate::bezier::sample_parameter(i, p))
            .collect(),
        x,
        f,
    })
}

/// Optimizes a `q`-point Bézier curve of `p` samples on `problem` with BezEA. The FOS
/// in `config` is replaced by a single element over the whole genotype.
pub fn run_bezea<T: Scalar, P: MoProblem<T> + ?Sized>(
    problem: &P,
    p: usize,
    q: usize,
    r: ReferencePoint<T>,
    config: &GomeaConfig<T>,
) -> Result<BezRun<T>> {
    if q < 2 {
        return Err(Error::InvalidConfig("BezEA needs q >= 2".into()));
    }
    if p < 2 {
        return Err(Error::InvalidConfig("BezEA needs p >= 2".into()));
    }
    let n = problem.dimension();
    let mut config = config.clone();
    config.fos = FosKind::Full;
    let mut fitness = BezFitness::new(problem, p, q, r, config.budget);
    let res = gomea::run(&mut fitness, &config, |best, fevals| {
        match decoded(best, n, p) {
            Some(set) => {
                let nav = navigational_order(&set.f);
                BezTraceRow {
                    fevals,
                    hv: best.fitness,
                    constraint: best.constraint,
                    sm: nav_smoothness(&set, &nav),
                    nav_len: nav.len(),
                }
            }
            None => BezTraceRow {
                fevals,
                hv: best.fitness,
                constraint: best.constraint,
                sm: None,
                nav_len: 0,
            },
        }
    })?;
    let set = decoded(&res.best, n, p).ok_or(Error::BudgetExhausted {
        budget: config.budget.unwrap_or_default(),
    })?;
    let nav = navigational_order(&set.f);
    let sm = nav_smoothness(&set, &nav);
    Ok(BezRun {
        hv: res.best.fitness,
        constraint: res.best.constraint,
        sm,
        set,
        nav,
        trace: res.trace,
        fevals: res.fevals,
        generations: res.generations,
        stop: res.stop,
    })
}
