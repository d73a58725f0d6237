//! Real-valued gene-pool optimal mixing evolutionary algorithm (maximization).
//!
//! Each generation estimates one Gaussian per FOS element from the truncation
//! selection (the covariance is a running average over generations), then varies every non-elitist individual element by element: sample new
//! values for the element, re-evaluate, keep the change unless it made the individual
//! worse under constraint domination. Per-element distribution multipliers adapt the
//! sampling spread, anticipated mean shift pushes part of the population along the
//! direction the mean moved, and individuals that stop improving are pulled toward the
//! elitist (forced improvement).

mod distribution;
mod fos;

pub use distribution::{estimate_distribution, update_distribution, ElementDistribution};
pub use fos::{Fos, FosKind};

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A genotype with its fitness (maximized), constraint violation (`0` is feasible) and
/// whatever per-genotype data the fitness function caches for partial re-evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual<T> {
    pub genotype: Vec<T>,
    pub fitness: T,
    pub constraint: T,
    pub cache: Vec<T>,
}

impl<T: Scalar> Individual<T> {
    /// Placeholder ranking below every evaluated individual.
    pub fn unevaluated(genotype: Vec<T>) -> Self {
        Self {
            genotype,
            fitness: T::neg_infinity(),
            constraint: T::infinity(),
            cache: Vec::new(),
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.constraint <= T::zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    ABetter,
    BBetter,
    Tie,
}

/// Feasibility first, then smaller violation, then larger fitness.
pub fn constraint_dominated_compare<T: Scalar>(a: &Individual<T>, b: &Individual<T>) -> Preference {
    let ord = match (a.is_feasible(), b.is_feasible()) {
        (true, true) => a.fitness.partial_cmp(&b.fitness),
        (true, false) => Some(Ordering::Greater),
        (false, true) => Some(Ordering::Less),
        (false, false) => b.constraint.partial_cmp(&a.constraint),
    };
    match ord {
        Some(Ordering::Greater) => Preference::ABetter,
        Some(Ordering::Less) => Preference::BBetter,
        _ => Preference::Tie,
    }
}

fn rank_order<T: Scalar>(a: &Individual<T>, b: &Individual<T>) -> Ordering {
    match constraint_dominated_compare(a, b) {
        Preference::ABetter => Ordering::Less,
        Preference::BBetter => Ordering::Greater,
        Preference::Tie => Ordering::Equal,
    }
}

/// Population-size guideline: `⌊10 √l⌋` for separable problems and
/// `17 + ⌊3 l^1.5⌋` otherwise.
pub fn guideline_population_size(l: usize, separable: bool) -> usize {
    let lf = l as f64;
    if separable {
        (10.0 * lf.sqrt() + 1e-9).floor() as usize
    } else {
        17 + (3.0 * lf * lf.sqrt() + 1e-9).floor() as usize
    }
}

/// Number of individuals kept by truncation selection: `⌈τN⌉`.
pub fn selection_size(population: usize, tau: f64) -> usize {
    ((tau * population as f64 - 1e-9).ceil() as usize).clamp(1, population.max(1))
}

/// Indices of the best `⌈τN⌉` individuals, best first; ties keep population order.
pub fn truncation_selection<T: Scalar>(population: &[Individual<T>], tau: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..population.len()).collect();
    idx.sort_by(|&a, &b| rank_order(&population[a], &population[b]));
    idx.truncate(selection_size(population.len(), tau));
    idx
}

/// Objective of the optimizer. Implementations own their MO-feval counter and report
/// [`Error::BudgetExhausted`] once it is spent.
pub trait FitnessFunction<T: Scalar> {
    fn genotype_len(&self) -> usize;

    /// Initialization box of the genotype.
    fn init_bounds(&self) -> (Vec<T>, Vec<T>);

    /// Box the genotype must stay in, if any. Variation only produces values inside it.
    fn domain_bounds(&self) -> Option<(Vec<T>, Vec<T>)> {
        None
    }

    /// Fills `fitness`, `constraint` and `cache` of `ind`. May rewrite the genotype into
    /// an equivalent canonical form.
    fn evaluate(&mut self, ind: &mut Individual<T>) -> Result<()>;

    /// Like [`FitnessFunction::evaluate`] for an `ind` that differs from the evaluated
    /// `parent` only at the `changed` genotype positions.
    fn evaluate_partial(
        &mut self,
        ind: &mut Individual<T>,
        parent: &Individual<T>,
        changed: &[usize],
    ) -> Result<()> {
        let _ = (parent, changed);
        self.evaluate(ind)
    }

    /// MO-fevals spent so far.
    fn fevals(&self) -> u64;
}

#[derive(Debug, Clone, PartialEq)]
pub struct GomeaConfig<T> {
    pub population_size: usize,
    /// Truncation selection fraction.
    pub tau: f64,
    pub fos: FosKind,
    /// MO-feval budget; the fitness function's counter enforces it.
    pub budget: Option<u64>,
    pub max_generations: Option<u64>,
    /// Stop once a feasible elitist reaches this fitness.
    pub value_to_reach: Option<T>,
    /// Generations without improvement before forced improvement; defaults to
    /// `25 + l` for a genotype of length `l`.
    pub no_improvement_threshold: Option<usize>,
    /// Weight of the newest maximum-likelihood estimate in the running covariance.
    /// `1` re-estimates from scratch every generation.
    pub covariance_learning_rate: f64,
    pub seed: u64,
}

impl<T: Scalar> GomeaConfig<T> {
    pub fn new(population_size: usize, fos: FosKind, seed: u64) -> Self {
        Self {
            population_size,
            tau: 0.35,
            fos,
            budget: None,
            max_generations: None,
            value_to_reach: None,
            no_improvement_threshold: None,
            covariance_learning_rate: 0.1,
            seed,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::InvalidConfig(
                "population size must be at least 2".into(),
            ));
        }
        if !(self.tau > 0.0 && self.tau < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "selection fraction {} outside (0, 1)",
                self.tau
            )));
        }
        let eta = self.covariance_learning_rate;
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "covariance learning rate {eta} outside (0, 1]"
            )));
        }
        Ok(())
    }
}

/// Fraction of the selection size that gets the anticipated mean shift each generation.
const AMS_FRACTION: f64 = 0.5;
/// Shift length in units of the mean's last move, before the multiplier.
const AMS_FACTOR: f64 = 3.0;
const MULTIPLIER_DECREASE: f64 = 0.9;
const MULTIPLIER_MIN: f64 = 1e-10;
const MULTIPLIER_MAX: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Budget,
    MaxGenerations,
    ValueReached,
}

#[derive(Debug, Clone)]
pub struct GomeaResult<T, R> {
    pub best: Individual<T>,
    pub trace: Vec<R>,
    pub generations: u64,
    pub fevals: u64,
    pub stop: StopReason,
}

/// Result of one optimal-mixing pass over a single individual.
#[derive(Debug, Clone)]
pub struct GomStep<T> {
    pub individual: Individual<T>,
    /// Set when the budget ran out during the pass; the individual holds the last
    /// accepted state.
    pub exhausted: bool,
}

/// Optimal mixing on one individual: for every FOS element in random order, sample new
/// values from that element's distribution (plus `shifts[e]` when given), re-evaluate,
/// and keep the change unless the individual got worse. With `bounds`, samples outside
/// the box are redrawn (a shifted sample falls back to its unshifted value); an element
/// without an in-box sample after 100 draws is left alone. `on_accept` sees every accepted
/// change together with the element index, the values written and the MO-fevals spent.
pub fn gom_step<T, F, G>(
    ind: &Individual<T>,
    fos: &Fos,
    dists: &[ElementDistribution<T>],
    shifts: Option<&[Vec<T>]>,
    bounds: Option<&(Vec<T>, Vec<T>)>,
    fitness: &mut F,
    rng: &mut G,
    mut on_accept: impl FnMut(usize, &Individual<T>, &[T], u64),
) -> Result<GomStep<T>>
where
    T: Scalar,
    F: FitnessFunction<T> + ?Sized,
    G: Rng + ?Sized,
{
    let mut current = ind.clone();
    let mut order: Vec<usize> = (0..fos.len()).collect();
    order.shuffle(rng);
    for e in order {
        let element = &fos.elements()[e];
        let Some(values) = draw(
            &dists[e],
            shifts.map(|s| s[e].as_slice()),
            element,
            bounds,
            rng,
        ) else {
            continue;
        };
        let mut candidate = current.clone();
        for (&i, &v) in element.iter().zip(&values) {
            candidate.genotype[i] = v;
        }
        match fitness.evaluate_partial(&mut candidate, &current, element) {
            Ok(()) => {}
            Err(Error::BudgetExhausted { .. }) => {
                return Ok(GomStep {
                    individual: current,
                    exhausted: true,
                })
            }
            Err(e) => return Err(e),
        }
        if constraint_dominated_compare(&candidate, &current) != Preference::BBetter {
            current = candidate;
            on_accept(e, &current, &values, fitness.fevals());
        }
    }
    Ok(GomStep {
        individual: current,
        exhausted: false,
    })
}

const MAX_DRAWS: usize = 100;

fn draw<T: Scalar, G: Rng + ?Sized>(
    dist: &ElementDistribution<T>,
    shift: Option<&[T]>,
    element: &[usize],
    bounds: Option<&(Vec<T>, Vec<T>)>,
    rng: &mut G,
) -> Option<Vec<T>> {
    let inside = |v: &[T]| match bounds {
        None => true,
        Some((lo, hi)) => element
            .iter()
            .zip(v)
            .all(|(&i, &x)| x >= lo[i] && x <= hi[i]),
    };
    for _ in 0..MAX_DRAWS {
        let values = dist.sample(rng);
        if let Some(shift) = shift {
            let shifted: Vec<T> = values.iter().zip(shift).map(|(&v, &s)| v + s).collect();
            if inside(&shifted) {
                return Some(shifted);
            }
        }
        if inside(&values) {
            return Some(values);
        }
    }
    None
}

fn best_index<T: Scalar>(population: &[Individual<T>]) -> usize {
    (1..population.len()).fold(0, |best, i| {
        if constraint_dominated_compare(&population[i], &population[best]) == Preference::ABetter {
            i
        } else {
            best
        }
    })
}

/// Runs GOMEA on `fitness`. `record` is called with the elitist and the MO-fevals spent
/// after initialization, at every elitist improvement and at the end of every generation;
/// its outputs form the trace.
pub fn run<T, F, R>(
    fitness: &mut F,
    config: &GomeaConfig<T>,
    mut record: impl FnMut(&Individual<T>, u64) -> R,
) -> Result<GomeaResult<T, R>>
where
    T: Scalar,
    F: FitnessFunction<T> + ?Sized,
{
    config.validate()?;
    let l = fitness.genotype_len();
    let fos = Fos::build(&config.fos, l)?;
    let n = config.population_size;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (lo, hi) = fitness.init_bounds();
    if lo.len() != l || hi.len() != l {
        return Err(Error::InvalidConfig(
            "init bounds do not match genotype length".into(),
        ));
    }
    let domain = fitness.domain_bounds();
    if domain
        .as_ref()
        .is_some_and(|(a, b)| a.len() != l || b.len() != l)
    {
        return Err(Error::InvalidConfig(
            "domain bounds do not match genotype length".into(),
        ));
    }

    let mut stop = None;
    let mut population = Vec::with_capacity(n);
    for _ in 0..n {
        let genotype: Vec<T> = (0..l)
            .map(|i| lo[i] + (hi[i] - lo[i]) * T::lit(rng.random::<f64>()))
            .collect();
        let mut ind = Individual::unevaluated(genotype.clone());
        if stop.is_none() {
            match fitness.evaluate(&mut ind) {
                Ok(()) => {}
                Err(Error::BudgetExhausted { .. }) => {
                    ind = Individual::unevaluated(genotype);
                    stop = Some(StopReason::Budget);
                }
                Err(e) => return Err(e),
            }
        }
        population.push(ind);
    }
    let mut best = population[best_index(&population)].clone();
    let mut trace = vec![record(&best, fitness.fevals())];

    let elements = fos.len();
    let mut multipliers = vec![T::one(); elements];
    let mut prev_dists: Vec<Option<ElementDistribution<T>>> = vec![None; elements];
    let mut no_improvement = vec![0usize; n];
    let nis_threshold = config.no_improvement_threshold.unwrap_or(25 + l);
    let selected = selection_size(n, config.tau).max(2);
    let ams_count = selection_size(n, AMS_FRACTION * config.tau).min(n - 1);
    let mut generation = 0u64;

    while stop.is_none() {
        if config.budget.is_some_and(|b| fitness.fevals() >= b) {
            stop = Some(StopReason::Budget);
            break;
        }
        if config.max_generations.is_some_and(|g| generation >= g) {
            stop = Some(StopReason::MaxGenerations);
            break;
        }
        if let Some(vtr) = config.value_to_reach {
            if best.is_feasible() && best.fitness >= vtr {
                stop = Some(StopReason::ValueReached);
                break;
            }
        }

        let mut ranked: Vec<usize> = (0..n).collect();
        ranked.sort_by(|&a, &b| rank_order(&population[a], &population[b]));
        let selection: Vec<&[T]> = ranked[..selected]
            .iter()
            .map(|&i| population[i].genotype.as_slice())
            .collect();
        let mut dists = Vec::with_capacity(elements);
        let mut shifts = Vec::with_capacity(elements);
        for (e, element) in fos.elements().iter().enumerate() {
            let (d, shift) = match &prev_dists[e] {
                Some(prev) => {
                    let eta = T::lit(config.covariance_learning_rate);
                    let d = update_distribution(&selection, prev, multipliers[e], eta)?;
                    let factor = T::lit(AMS_FACTOR) * multipliers[e];
                    let shift: Vec<T> = d
                        .mean
                        .iter()
                        .zip(&prev.mean)
                        .map(|(&m, &pm)| factor * (m - pm))
                        .collect();
                    (d, shift)
                }
                None => (
                    estimate_distribution(&selection, element, multipliers[e])?,
                    vec![T::zero(); element.len()],
                ),
            };
            prev_dists[e] = Some(d.clone());
            dists.push(d);
            shifts.push(shift);
        }

        let elitist = best_index(&population);
        let mut others: Vec<usize> = (0..n).filter(|&i| i != elitist).collect();
        others.shuffle(&mut rng);
        let mut shifted = vec![false; n];
        for &i in &others[..ams_count] {
            shifted[i] = true;
        }

        let generation_best = best.clone();
        let mut improved = vec![false; elements];
        let mut improving_sums: Vec<(Vec<T>, usize)> = fos
            .elements()
            .iter()
            .map(|e| (vec![T::zero(); e.len()], 0))
            .collect();

        for i in 0..n {
            if i == elitist {
                continue;
            }
            let before = population[i].clone();
            let step = gom_step(
                &before,
                &fos,
                &dists,
                shifted[i].then_some(shifts.as_slice()),
                domain.as_ref(),
                fitness,
                &mut rng,
                |e, ind, values, fevals| {
                    if constraint_dominated_compare(ind, &generation_best) == Preference::ABetter {
                        improved[e] = true;
                        let (sum, count) = &mut improving_sums[e];
                        for (s, &v) in sum.iter_mut().zip(values) {
                            *s += v;
                        }
                        *count += 1;
                    }
                    if constraint_dominated_compare(ind, &best) == Preference::ABetter {
                        best = ind.clone();
                        trace.push(record(&best, fevals));
                    }
                },
            )?;
            debug_assert_ne!(
                constraint_dominated_compare(&step.individual, &before),
                Preference::BBetter
            );
            population[i] = step.individual;
            if step.exhausted {
                stop = Some(StopReason::Budget);
                break;
            }
            if constraint_dominated_compare(&population[i], &before) == Preference::ABetter {
                no_improvement[i] = 0;
            } else {
                no_improvement[i] += 1;
            }
            if no_improvement[i] > nis_threshold {
                no_improvement[i] = 0;
                match forced_improvement(&population[i], &best, &fos, fitness, &mut rng)? {
                    Some(ind) => {
                        if constraint_dominated_compare(&ind, &best) == Preference::ABetter {
                            best = ind.clone();
                            trace.push(record(&best, fitness.fevals()));
                        }
                        population[i] = ind;
                    }
                    None => {
                        stop = Some(StopReason::Budget);
                        break;
                    }
                }
            }
        }

        for e in 0..elements {
            let mut m = multipliers[e];
            if improved[e] {
                m = m.max(T::one());
                let (sum, count) = &improving_sums[e];
                let avg: Vec<T> = sum.iter().map(|&s| s / T::from_count(*count)).collect();
                if dists[e].standard_deviation_ratio(&avg) > T::one() {
                    m /= T::lit(MULTIPLIER_DECREASE);
                }
            } else {
                m *= T::lit(MULTIPLIER_DECREASE);
            }
            multipliers[e] = m.max(T::lit(MULTIPLIER_MIN)).min(T::lit(MULTIPLIER_MAX));
        }
        generation += 1;
        trace.push(record(&best, fitness.fevals()));
    }

    Ok(GomeaResult {
        best,
        trace,
        generations: generation,
        fevals: fitness.fevals(),
        stop: stop.unwrap_or(StopReason::Budget),
    })
}

/// Moves `ind` toward the elitist one element at a time, keeping the first change that
/// strictly improves it. Element values become `α x + (1 - α) elitist` for α halving
/// from 0.5 down to 1/64, then a plain copy of the elitist values. Falls back to a copy
/// of the elitist. `None` when the budget ran out.
fn forced_improvement<T, F, G>(
    ind: &Individual<T>,
    elitist: &Individual<T>,
    fos: &Fos,
    fitness: &mut F,
    rng: &mut G,
) -> Result<Option<Individual<T>>>
where
    T: Scalar,
    F: FitnessFunction<T> + ?Sized,
    G: Rng + ?Sized,
{
    let mut order: Vec<usize> = (0..fos.len()).collect();
    let mut alpha = 0.5;
    loop {
        let a = T::lit(alpha);
        order.shuffle(rng);
        for &e in &order {
            let element = &fos.elements()[e];
            let mut candidate = ind.clone();
            for &i in element {
                candidate.genotype[i] = a * ind.genotype[i] + (T::one() - a) * elitist.genotype[i];
            }
            if candidate.genotype == ind.genotype {
                continue;
            }
            if candidate.genotype == elitist.genotype {
                candidate = elitist.clone();
            } else {
                match fitness.evaluate_partial(&mut candidate, ind, element) {
                    Ok(()) => {}
                    Err(Error::BudgetExhausted { .. }) => return Ok(None),
                    Err(e) => return Err(e),
                }
            }
            if constraint_dominated_compare(&candidate, ind) == Preference::ABetter {
                return Ok(Some(candidate));
            }
        }
        if alpha == 0.0 {
            break;
        }
        alpha = if alpha > 0.02 { alpha * 0.5 } else { 0.0 };
    }
    Ok(Some(elitist.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::EvaluationCounter;

    struct Sphere {
        n: usize,
        counter: EvaluationCounter,
    }

    impl Sphere {
        fn new(n: usize, budget: Option<u64>) -> Self {
            Self {
                n,
                counter: EvaluationCounter::new(budget),
            }
        }
    }

    impl FitnessFunction<f64> for Sphere {
        fn genotype_len(&self) -> usize {
            self.n
        }

        fn init_bounds(&self) -> (Vec<f64>, Vec<f64>) {
            (vec![-5.0; self.n], vec![5.0; self.n])
        }

        fn evaluate(&mut self, ind: &mut Individual<f64>) -> Result<()> {
            self.counter.reserve(1)?;
            ind.fitness = -ind.genotype.iter().map(|v| v * v).sum::<f64>();
            ind.constraint = 0.0;
            Ok(())
        }

        fn fevals(&self) -> u64 {
            self.counter.fevals()
        }
    }

    fn ind(fitness: f64, constraint: f64) -> Individual<f64> {
        Individual {
            genotype: vec![],
            fitness,
            constraint,
            cache: vec![],
        }
    }

    #[test]
    fn constraint_domination_examples() {
        use Preference::*;
        assert_eq!(
            constraint_dominated_compare(&ind(1.0, 0.0), &ind(5.0, 0.1)),
            ABetter
        );
        assert_eq!(
            constraint_dominated_compare(&ind(0.0, 0.2), &ind(9.0, 0.1)),
            BBetter
        );
        assert_eq!(
            constraint_dominated_compare(&ind(2.0, 0.0), &ind(1.0, 0.0)),
            ABetter
        );
        assert_eq!(
            constraint_dominated_compare(&ind(2.0, 0.0), &ind(2.0, 0.0)),
            Tie
        );
        let u = Individual::unevaluated(vec![]);
        assert_eq!(
            constraint_dominated_compare(&ind(-1e300, 1e300), &u),
            ABetter
        );
        assert_eq!(constraint_dominated_compare(&u, &u.clone()), Tie);
    }

    #[test]
    fn population_guideline() {
        assert_eq!(guideline_population_size(100, true), 100);
        assert_eq!(guideline_population_size(4, false), 41);
        assert_eq!(guideline_population_size(1, true), 10);
    }

    #[test]
    fn truncation_keeps_the_best() {
        let pop: Vec<_> = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0, 5.0, 3.0]
            .iter()
            .map(|&f| ind(f, 0.0))
            .collect();
        assert_eq!(truncation_selection(&pop, 0.35), vec![5, 7, 4, 8]);
        assert_eq!(selection_size(2, 0.35), 1);
        assert_eq!(selection_size(20, 0.35), 7);
    }

    #[test]
    fn solves_one_dimensional_sphere() {
        let mut f = Sphere::new(1, Some(20_000));
        let cfg = GomeaConfig::new(10, FosKind::Univariate, 1).with_budget(20_000);
        let res = run(&mut f, &cfg, |b, _| b.fitness).unwrap();
        assert!(-res.best.fitness < 1e-8, "{}", res.best.fitness);
    }

    #[test]
    fn solves_ten_dimensional_sphere() {
        let mut f = Sphere::new(10, Some(100_000));
        let n = guideline_population_size(10, true);
        let cfg = GomeaConfig::new(n, FosKind::Univariate, 3).with_budget(100_000);
        let res = run(&mut f, &cfg, |b, _| b.fitness).unwrap();
        assert!(-res.best.fitness < 1e-6, "{}", res.best.fitness);
        assert_eq!(res.stop, StopReason::Budget);
    }

    #[test]
    fn full_fos_also_converges() {
        let mut f = Sphere::new(5, Some(100_000));
        let cfg = GomeaConfig::new(60, FosKind::Full, 5).with_budget(100_000);
        let res = run(&mut f, &cfg, |b, _| b.fitness).unwrap();
        assert!(-res.best.fitness < 1e-6, "{}", res.best.fitness);
    }

    #[test]
    fn same_seed_same_run() {
        let go = |seed| {
            let mut f = Sphere::new(4, Some(3000));
            let cfg = GomeaConfig::new(20, FosKind::Univariate, seed).with_budget(3000);
            run(&mut f, &cfg, |b, e| (b.fitness, e)).unwrap()
        };
        let (a, b, c) = (go(11), go(11), go(12));
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.best, b.best);
        assert_ne!(a.trace, c.trace);
    }

    #[test]
    fn elitist_never_gets_worse_and_budget_is_respected() {
        let mut f = Sphere::new(6, Some(5000));
        let cfg = GomeaConfig::new(25, FosKind::Univariate, 9).with_budget(5000);
        let res = run(&mut f, &cfg, |b, e| (b.fitness, e)).unwrap();
        for w in res.trace.windows(2) {
            assert!(w[1].0 >= w[0].0);
            assert!(w[1].1 >= w[0].1);
        }
        assert!(res.fevals <= 5000);
    }

    #[test]
    fn zero_budget_returns_unevaluated_best() {
        let mut f = Sphere::new(3, Some(0));
        let cfg = GomeaConfig::new(5, FosKind::Univariate, 1).with_budget(0);
        let res = run(&mut f, &cfg, |_, e| e).unwrap();
        assert_eq!(res.fevals, 0);
        assert_eq!(res.best.fitness, f64::NEG_INFINITY);
        assert_eq!(res.stop, StopReason::Budget);
    }

    #[test]
    fn max_generations_and_value_to_reach() {
        let mut f = Sphere::new(2, None);
        let mut cfg = GomeaConfig::new(10, FosKind::Univariate, 1);
        cfg.max_generations = Some(3);
        let res = run(&mut f, &cfg, |_, e| e).unwrap();
        assert_eq!((res.generations, res.stop), (3, StopReason::MaxGenerations));

        let mut f = Sphere::new(2, None);
        let mut cfg = GomeaConfig::new(10, FosKind::Univariate, 1);
        cfg.value_to_reach = Some(-1e-4);
        let res = run(&mut f, &cfg, |_, e| e).unwrap();
        assert_eq!(res.stop, StopReason::ValueReached);
        assert!(res.best.fitness >= -1e-4);
    }

    #[test]
    fn gom_step_with_zero_spread_changes_nothing() {
        let mut f = Sphere::new(3, None);
        let sel = vec![vec![1.0, 2.0, 3.0]; 4];
        let fos = Fos::univariate(3);
        let dists: Vec<_> = fos
            .elements()
            .iter()
            .map(|e| estimate_distribution(&sel, e, 1.0).unwrap())
            .collect();
        let mut start = Individual::unevaluated(vec![1.0, 2.0, 3.0]);
        f.evaluate(&mut start).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let step = gom_step(
            &start,
            &fos,
            &dists,
            None,
            None,
            &mut f,
            &mut rng,
            |_, _, _, _| {},
        )
        .unwrap();
        assert_eq!(step.individual, start);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut f = Sphere::new(2, None);
        assert!(run(
            &mut f,
            &GomeaConfig::new(1, FosKind::Univariate, 0),
            |_, _| ()
        )
        .is_err());
        let mut cfg = GomeaConfig::new(10, FosKind::Univariate, 0);
        cfg.tau = 1.5;
        assert!(run(&mut f, &cfg, |_, _| ()).is_err());
        let cfg = GomeaConfig::new(10, FosKind::Blocks(vec![1]), 0);
        assert!(run(&mut f, &cfg, |_, _| ()).is_err());
    }

    proptest::proptest! {
        #[test]
        fn constraint_domination_is_transitive(
            v in proptest::collection::vec((-3i32..3, 0i32..3), 3)
        ) {
            let ab: Vec<_> = v.iter().map(|&(f, c)| ind(f as f64, c as f64 * 0.5)).collect();
            let better = |x: &Individual<f64>, y: &Individual<f64>| {
                constraint_dominated_compare(x, y) == Preference::ABetter
            };
            if better(&ab[0], &ab[1]) && better(&ab[1], &ab[2]) {
                proptest::prop_assert!(better(&ab[0], &ab[2]));
            }
            let sym = constraint_dominated_compare(&ab[0], &ab[1]);
            let rev = constraint_dominated_compare(&ab[1], &ab[0]);
            proptest::prop_assert_eq!(
                sym,
                match rev {
                    Preference::ABetter => Preference::BBetter,
                    Preference::BBetter => Preference::ABetter,
                    Preference::Tie => Preference::Tie,
                }
            );
        }
    }
}
