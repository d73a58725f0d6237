//! Uncrowded-hypervolume optimization of `p` concatenated solutions.
//!
//! The genotype `[x_1 .. x_p]` is scored by the uncrowded hypervolume of the decoded
//! set. The grey-box variant varies one solution per FOS element and only re-evaluates
//! the solution that changed; the black-box variant treats the whole genotype as one
//! element.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gomea::{self, FitnessFunction, Fos, FosKind, GomeaConfig, Individual, StopReason};
use crate::indicators::{hv2d, left_to_right_order, smoothness, uhv, ReferencePoint};
use crate::problem::{approximation_set, EvaluationCounter, MoProblem, Objectives, Solution};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UhvVariant {
    /// Grey-box: one FOS element per solution, partial re-evaluation.
    Gb,
    /// Black-box: a single FOS element over the whole genotype.
    Bb,
}

impl fmt::Display for UhvVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UhvVariant::Gb => "gb",
            UhvVariant::Bb => "bb",
        })
    }
}

impl FromStr for UhvVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gb" => Ok(UhvVariant::Gb),
            "bb" => Ok(UhvVariant::Bb),
            other => Err(Error::InvalidConfig(format!(
                "unknown UHVEA variant {other:?}"
            ))),
        }
    }
}

/// Splits a concatenated genotype into its `n`-dimensional decision vectors.
pub fn decode<T>(phi: &[T], n: usize) -> Result<Vec<&[T]>> {
    if n == 0 || phi.is_empty() || phi.len() % n != 0 {
        return Err(Error::InvalidConfig(format!(
            "genotype of length {} does not split into vectors of length {n}",
            phi.len()
        )));
    }
    Ok(phi.chunks(n).collect())
}

/// Linkage model: `p` blocks of `n` variables (gb) or one block of `p·n` (bb).
pub fn build_fos_uhvea(p: usize, n: usize, variant: UhvVariant) -> Fos {
    match variant {
        UhvVariant::Gb => Fos::blocks(&vec![n; p]).expect("non-empty blocks"),
        UhvVariant::Bb => Fos::full(p * n),
    }
}

fn fos_kind(p: usize, n: usize, variant: UhvVariant) -> FosKind {
    match variant {
        UhvVariant::Gb => FosKind::Blocks(vec![n; p]),
        UhvVariant::Bb => FosKind::Full,
    }
}

/// Population-size guideline for UHVEA: based on `l = n` for gb and `l = p·n` for bb.
pub fn default_population_size<T: Scalar, P: MoProblem<T> + ?Sized>(
    problem: &P,
    p: usize,
    variant: UhvVariant,
) -> usize {
    let n = problem.dimension();
    let l = match variant {
        UhvVariant::Gb => n,
        UhvVariant::Bb => p * n,
    };
    gomea::guideline_population_size(l, problem.is_separable())
}

fn hash_vector<T: Scalar>(x: &[T]) -> u64 {
    let mut h = DefaultHasher::new();
    for v in x {
        v.as_f64().to_bits().hash(&mut h);
    }
    h.finish()
}

fn uhv_or_worst<T: Scalar>(f: &[Objectives<T>], r: &ReferencePoint<T>) -> T {
    uhv(f, r).unwrap_or(T::neg_infinity())
}

/// Objective vectors of the decoded solutions and the resulting UHV.
#[derive(Debug, Clone, PartialEq)]
pub struct UhvCache<T> {
    pub objectives: Vec<Objectives<T>>,
    pub uhv: T,
    hashes: Vec<u64>,
}

impl<T: Scalar> UhvCache<T> {
    /// Evaluates every solution of `phi` (`p` MO-fevals).
    pub fn evaluate<P: MoProblem<T> + ?Sized>(
        phi: &[T],
        problem: &P,
        r: &ReferencePoint<T>,
        counter: &mut EvaluationCounter,
    ) -> Result<Self> {
        let xs = decode(phi, problem.dimension())?;
        counter.reserve(xs.len() as u64)?;
        let objectives: Vec<_> = xs.iter().map(|x| problem.objectives(x)).collect();
        Ok(Self {
            uhv: uhv_or_worst(&objectives, r),
            hashes: xs.iter().map(|x| hash_vector(x)).collect(),
            objectives,
        })
    }

    fn flatten(&self) -> Vec<T> {
        self.objectives.iter().flatten().copied().collect()
    }

    fn from_flat(flat: &[T], phi: &[T], n: usize, uhv: T) -> Self {
        Self {
            objectives: flat.chunks(2).map(|c| [c[0], c[1]]).collect(),
            uhv,
            hashes: phi.chunks(n).map(hash_vector).collect(),
        }
    }
}

/// UHV of the set decoded from `phi`; evaluates all `p` solutions.
pub fn uhv_fitness<T: Scalar, P: MoProblem<T> + ?Sized>(
    phi: &[T],
    problem: &P,
    r: &ReferencePoint<T>,
    counter: &mut EvaluationCounter,
) -> Result<T> {
    Ok(UhvCache::evaluate(phi, problem, r, counter)?.uhv)
}

/// UHV of `phi` re-evaluating only the solutions listed in `changed`; the others are
/// taken from `cache`, which is updated in place. Bitwise equal to [`uhv_fitness`].
pub fn partial_uhv_fitness<T: Scalar, P: MoProblem<T> + ?Sized>(
    phi: &[T],
    changed: &[usize],
    cache: &mut UhvCache<T>,
    problem: &P,
    r: &ReferencePoint<T>,
    counter: &mut EvaluationCounter,
) -> Result<T> {
    let xs = decode(phi, problem.dimension())?;
    assert_eq!(
        xs.len(),
        cache.objectives.len(),
        "cache belongs to a different set size"
    );
    let mut changed = changed.to_vec();
    changed.sort_unstable();
    changed.dedup();
    if changed.is_empty() {
        return Ok(cache.uhv);
    }
    if cfg!(debug_assertions) {
        for (i, x) in xs.iter().enumerate() {
            if changed.binary_search(&i).is_err() {
                debug_assert_eq!(
                    hash_vector(x),
                    cache.hashes[i],
                    "stale cache for solution {i}"
                );
            }
        }
    }
    counter.reserve(changed.len() as u64)?;
    for &i in &changed {
        cache.objectives[i] = problem.objectives(xs[i]);
        cache.hashes[i] = hash_vector(xs[i]);
    }
    cache.uhv = uhv_or_worst(&cache.objectives, r);
    Ok(cache.uhv)
}

/// [`FitnessFunction`] wrapper: fitness is the UHV, the constraint is always zero, and the
/// individual's cache holds the flattened objective vectors.
pub struct UhvFitness<'a, T, P: ?Sized> {
    problem: &'a P,
    p: usize,
    r: ReferencePoint<T>,
    variant: UhvVariant,
    counter: EvaluationCounter,
}

impl<'a, T: Scalar, P: MoProblem<T> + ?Sized> UhvFitness<'a, T, P> {
    pub fn new(
        problem: &'a P,
        p: usize,
        r: ReferencePoint<T>,
        variant: UhvVariant,
        budget: Option<u64>,
    ) -> Self {
        Self {
            problem,
            p,
            r,
            variant,
            counter: EvaluationCounter::new(budget),
        }
    }

    pub fn counter(&self) -> &EvaluationCounter {
        &self.counter
    }
}

impl<T: Scalar, P: MoProblem<T> + ?Sized> FitnessFunction<T> for UhvFitness<'_, T, P> {
    fn genotype_len(&self) -> usize {
        self.p * self.problem.dimension()
    }

    fn init_bounds(&self) -> (Vec<T>, Vec<T>) {
        let (lo, hi) = self.problem.init_bounds();
        (lo.repeat(self.p), hi.repeat(self.p))
    }

    fn domain_bounds(&self) -> Option<(Vec<T>, Vec<T>)> {
        let (lo, hi) = self.problem.domain_bounds()?;
        Some((lo.repeat(self.p), hi.repeat(self.p)))
    }

    fn evaluate(&mut self, ind: &mut Individual<T>) -> Result<()> {
        let cache = UhvCache::evaluate(&ind.genotype, self.problem, &self.r, &mut self.counter)?;
        ind.fitness = cache.uhv;
        ind.constraint = T::zero();
        ind.cache = cache.flatten();
        Ok(())
    }

    fn evaluate_partial(
        &mut self,
        ind: &mut Individual<T>,
        parent: &Individual<T>,
        changed: &[usize],
    ) -> Result<()> {
        let n = self.problem.dimension();
        if self.variant == UhvVariant::Bb || parent.cache.len() != 2 * self.p {
            return self.evaluate(ind);
        }
        let solutions: Vec<usize> = changed.iter().map(|&i| i / n).collect();
        let mut cache = UhvCache::from_flat(&parent.cache, &parent.genotype, n, parent.fitness);
        let value = partial_uhv_fitness(
            &ind.genotype,
            &solutions,
            &mut cache,
            self.problem,
            &self.r,
            &mut self.counter,
        )?;
        ind.fitness = value;
        ind.constraint = T::zero();
        ind.cache = cache.flatten();
        Ok(())
    }

    fn fevals(&self) -> u64 {
        self.counter.fevals()
    }
}

/// One convergence-trace row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UhvTraceRow<T> {
    pub fevals: u64,
    pub hv: T,
    pub uhv: T,
    /// Smoothness of the approximation set in left-to-right order; `None` below 3 points.
    pub sm: Option<T>,
}

#[derive(Debug, Clone)]
pub struct UhvRun<T> {
    /// Non-dominated solutions of the best genotype, left to right.
    pub set: Vec<Solution<T>>,
    /// All `p` decoded solutions of the best genotype, in genotype order.
    pub solutions: Vec<Solution<T>>,
    pub hv: T,
    pub uhv: T,
    pub sm: Option<T>,
    pub trace: Vec<UhvTraceRow<T>>,
    pub fevals: u64,
    pub generations: u64,
    pub stop: StopReason,
}

/// Approximation set of a decoded genotype, ordered left to right.
pub fn approximation_set_of<T: Scalar>(
    phi: &[T],
    f: &[Objectives<T>],
    n: usize,
) -> Vec<Solution<T>> {
    let front = approximation_set(f);
    let ff: Vec<_> = front.iter().map(|&i| f[i]).collect();
    left_to_right_order(&ff)
        .into_iter()
        .map(|k| {
            let i = front[k];
            Solution {
                x: phi[i * n..(i + 1) * n].to_vec(),
                f: f[i],
            }
        })
        .collect()
}

fn set_metrics<T: Scalar>(set: &[Solution<T>], r: &ReferencePoint<T>) -> (T, Option<T>) {
    let f: Vec<_> = set.iter().map(|s| s.f).collect();
    let hv = hv2d(&f, r).unwrap_or(T::zero());
    let xs: Vec<&[T]> = set.iter().map(|s| s.x.as_slice()).collect();
    let order: Vec<usize> = (0..set.len()).collect();
    (hv, smoothness(&xs, &order).ok())
}

fn cached_objectives<T: Scalar>(ind: &Individual<T>) -> Vec<Objectives<T>> {
    ind.cache.chunks(2).map(|c| [c[0], c[1]]).collect()
}

/// Optimizes a set of `p` solutions of `problem` with UHVEA. The FOS in `config` is
/// replaced by the one matching `variant`.
pub fn run_uhvea<T: Scalar, P: MoProblem<T> + ?Sized>(
    problem: &P,
    p: usize,
    r: ReferencePoint<T>,
    variant: UhvVariant,
    config: &GomeaConfig<T>,
) -> Result<UhvRun<T>> {
    if p == 0 {
        return Err(Error::InvalidConfig("UHVEA needs p >= 1".into()));
    }
    let n = problem.dimension();
    let mut config = config.clone();
    config.fos = fos_kind(p, n, variant);
    let mut fitness = UhvFitness::new(problem, p, r, variant, config.budget);
    let res = gomea::run(&mut fitness, &config, |best, fevals| {
        let f = cached_objectives(best);
        let set = approximation_set_of(&best.genotype, &f, n);
        let (hv, sm) = set_metrics(&set, &r);
        UhvTraceRow {
            fevals,
            hv,
            uhv: best.fitness,
            sm,
        }
    })?;
    let (set, solutions) = if res.best.cache.len() == 2 * p {
        let f = cached_objectives(&res.best);
        let all = res
            .best
            .genotype
            .chunks(n)
            .zip(&f)
            .map(|(x, &f)| Solution { x: x.to_vec(), f })
            .collect();
        (approximation_set_of(&res.best.genotype, &f, n), all)
    } else {
        (Vec::new(), Vec::new())
    };
    let (hv, sm) = set_metrics(&set, &r);
    Ok(UhvRun {
        set,
        solutions,
        hv,
        uhv: res.best.fitness,
        sm,
        trace: res.trace,
        fevals: res.fevals,
        generations: res.generations,
        stop: res.stop,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{BiSphere, CurvePs};

    fn r11() -> ReferencePoint<f64> {
        ReferencePoint([11.0, 11.0])
    }

    #[test]
    fn fos_layouts() {
        assert_eq!(
            build_fos_uhvea(3, 2, UhvVariant::Gb).elements(),
            &[vec![0, 1], vec![2, 3], vec![4, 5]]
        );
        assert_eq!(
            build_fos_uhvea(3, 2, UhvVariant::Bb).elements(),
            &[vec![0, 1, 2, 3, 4, 5]]
        );
        assert_eq!(
            build_fos_uhvea(1, 4, UhvVariant::Gb),
            build_fos_uhvea(1, 4, UhvVariant::Bb)
        );
    }

    #[test]
    fn single_and_duplicated_solutions() {
        let mut c = EvaluationCounter::unlimited();
        let one = uhv_fitness(&[0.0, 0.0], &CurvePs, &r11(), &mut c).unwrap();
        assert!((one - 100.0).abs() < 1e-12);
        let two = uhv_fitness(&[0.0, 0.0, 0.0, 0.0], &CurvePs, &r11(), &mut c).unwrap();
        assert_eq!(one, two);
        assert_eq!(c.fevals(), 3);
    }

    #[test]
    fn matches_indicator_on_decoded_set() {
        let phi = [0.2, 0.9, 1.5, -0.3, 0.7, 0.4, 3.0, 3.0];
        let mut c = EvaluationCounter::unlimited();
        let got = uhv_fitness(&phi, &CurvePs, &r11(), &mut c).unwrap();
        let f: Vec<_> = phi.chunks(2).map(|x| CurvePs.objectives(x)).collect();
        assert_eq!(got, uhv(&f, &r11()).unwrap());
    }

    #[test]
    fn partial_evaluation_costs_and_equivalence() {
        let problem = BiSphere::new(10);
        let mut phi: Vec<f64> = (0..100)
            .map(|i| ((i * 37 % 19) as f64) * 0.1 - 0.9)
            .collect();
        let mut c = EvaluationCounter::unlimited();
        let mut cache = UhvCache::evaluate(&phi, &problem, &r11(), &mut c).unwrap();
        assert_eq!(c.fevals(), 10);
        let same = partial_uhv_fitness(&phi, &[], &mut cache, &problem, &r11(), &mut c).unwrap();
        assert_eq!((same, c.fevals()), (cache.uhv, 10));
        phi[35] += 0.25;
        let part = partial_uhv_fitness(&phi, &[3], &mut cache, &problem, &r11(), &mut c).unwrap();
        assert_eq!(c.fevals(), 11);
        let full = uhv_fitness(&phi, &problem, &r11(), &mut c).unwrap();
        assert_eq!(part.to_bits(), full.to_bits());
        let all: Vec<usize> = (0..10).collect();
        let again = partial_uhv_fitness(&phi, &all, &mut cache, &problem, &r11(), &mut c).unwrap();
        assert_eq!(again.to_bits(), full.to_bits());
    }

    #[test]
    fn budget_is_all_or_nothing() {
        let mut c = EvaluationCounter::new(Some(3));
        assert!(uhv_fitness(&[0.0; 8], &CurvePs, &r11(), &mut c).is_err());
        assert_eq!(c.fevals(), 0);
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("GB".parse::<UhvVariant>().unwrap(), UhvVariant::Gb);
        assert_eq!(UhvVariant::Bb.to_string(), "bb");
        assert!("xx".parse::<UhvVariant>().is_err());
    }

    #[test]
    fn p_one_maximizes_a_single_point() {
        let cfg = GomeaConfig::new(10, FosKind::Full, 4).with_budget(5000);
        let run = run_uhvea(&CurvePs, 1, r11(), UhvVariant::Gb, &cfg).unwrap();
        assert_eq!(run.set.len(), 1);
        assert!(run.uhv > 0.0 && run.fevals <= 5000);
        assert_eq!(run.uhv, run.hv);
    }

    #[test]
    fn gb_run_on_curveps_is_deterministic_and_monotone() {
        let cfg = GomeaConfig::new(14, FosKind::Full, 2).with_budget(20_000);
        let a = run_uhvea(&CurvePs, 5, r11(), UhvVariant::Gb, &cfg).unwrap();
        let b = run_uhvea(&CurvePs, 5, r11(), UhvVariant::Gb, &cfg).unwrap();
        assert_eq!(a.trace, b.trace);
        for w in a.trace.windows(2) {
            assert!(w[1].uhv >= w[0].uhv);
        }
        for w in a.set.windows(2) {
            assert!(w[0].f[0] < w[1].f[0] && w[0].f[1] > w[1].f[1]);
        }
        assert_eq!(a.set.len(), 5);
    }
}
