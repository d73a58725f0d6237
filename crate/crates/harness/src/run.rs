//! Experiment execution.

use std::time::Instant;

use rayon::prelude::*;
use smoothfront::benchmarks::Benchmark;
use smoothfront::bezea::{self, run_bezea};
use smoothfront::bezier::{bezier_eval, sample_parameter, ControlPolygon};
use smoothfront::gomea::{FosKind, GomeaConfig};
use smoothfront::indicators::{left_to_right_order, uhv, ReferencePoint};
use smoothfront::problem::{approximation_set, MoProblem};
use smoothfront::uhvea::{self, run_uhvea};

use crate::bundle::{BundlePoint, Metrics, ResultBundle, TraceRow};
use crate::config::RunConfig;
use crate::error::Result;

/// Keeps the first and last rows and every row at least `stride` MO-fevals after the
/// previously kept one.
pub fn thin_trace(rows: Vec<TraceRow>, stride: u64) -> Vec<TraceRow> {
    if stride == 0 || rows.len() <= 2 {
        return rows;
    }
    let last = rows.len() - 1;
    let mut kept: Vec<TraceRow> = Vec::new();
    for (i, row) in rows.into_iter().enumerate() {
        let keep = match kept.last() {
            None => true,
            Some(prev) => i == last || row.fevals >= prev.fevals.saturating_add(stride),
        };
        if keep {
            kept.push(row);
        }
    }
    kept
}

/// Samples `count` points of the curve at equidistant `t` and evaluates them.
pub fn dense_curve(
    polygon: &ControlPolygon<f64>,
    problem: &Benchmark,
    count: usize,
) -> Result<Vec<BundlePoint>> {
    (0..count)
        .map(|i| {
            let t: f64 = sample_parameter(i, count);
            let x = bezier_eval(polygon, t)?;
            let f = problem.objectives(&x);
            Ok(BundlePoint { t: Some(t), x, f })
        })
        .collect()
}

fn gomea_config(cfg: &RunConfig, population: usize, seed: u64) -> GomeaConfig<f64> {
    let mut g = GomeaConfig::new(population, FosKind::Full, seed).with_budget(cfg.budget);
    if let Some(eta) = cfg.covariance_learning_rate {
        g.covariance_learning_rate = eta;
    }
    g.no_improvement_threshold = cfg.no_improvement_threshold;
    g
}

/// Runs the configured algorithm once with `seed`.
pub fn run_single(cfg: &RunConfig, seed: u64) -> Result<ResultBundle> {
    cfg.validate()?;
    let problem = cfg.benchmark()?;
    let r = ReferencePoint::new(cfg.r[0], cfg.r[1])?;
    let start = Instant::now();
    let mut bundle = match cfg.algorithm.uhv_variant() {
        None => {
            let q = cfg.q.expect("validated");
            let n = cfg
                .population_size
                .unwrap_or_else(|| bezea::default_population_size::<f64, _>(&problem, q));
            let run = run_bezea(&problem, cfg.p, q, r, &gomea_config(cfg, n, seed))?;
            let points: Vec<BundlePoint> = (0..run.set.len())
                .map(|i| BundlePoint {
                    t: Some(run.set.t[i]),
                    x: run.set.x[i].clone(),
                    f: run.set.f[i],
                })
                .collect();
            let control_points: Vec<Vec<f64>> =
                run.set.polygon.points().map(<[f64]>::to_vec).collect();
            ResultBundle {
                config: cfg.clone(),
                seed,
                nav_order: run.nav.order.clone(),
                dense: Some(dense_curve(&run.set.polygon, &problem, cfg.dense_samples)?),
                control_points: Some(control_points),
                metrics: Metrics {
                    hv: run.hv,
                    uhv: uhv(&run.set.f, &r)?,
                    delta_hv: None,
                    sm: run.sm,
                    nav_len: run.nav.len(),
                    constraint: run.constraint,
                },
                points,
                trace: run
                    .trace
                    .iter()
                    .map(|t| TraceRow::new(t.fevals, t.hv, None, t.constraint, t.sm))
                    .collect(),
                fevals: run.fevals,
                generations: run.generations,
                stop: format!("{:?}", run.stop),
                wall_clock_secs: 0.0,
            }
        }
        Some(variant) => {
            let n = cfg.population_size.unwrap_or_else(|| {
                uhvea::default_population_size::<f64, _>(&problem, cfg.p, variant)
            });
            let run = run_uhvea(&problem, cfg.p, r, variant, &gomea_config(cfg, n, seed))?;
            let f: Vec<[f64; 2]> = run.solutions.iter().map(|s| s.f).collect();
            let front = approximation_set(&f);
            let front_f: Vec<[f64; 2]> = front.iter().map(|&i| f[i]).collect();
            let nav_order: Vec<usize> = left_to_right_order(&front_f)
                .into_iter()
                .map(|k| front[k])
                .collect();
            ResultBundle {
                config: cfg.clone(),
                seed,
                points: run
                    .solutions
                    .iter()
                    .map(|s| BundlePoint {
                        t: None,
                        x: s.x.clone(),
                        f: s.f,
                    })
                    .collect(),
                metrics: Metrics {
                    hv: run.hv,
                    uhv: run.uhv,
                    delta_hv: None,
                    sm: run.sm,
                    nav_len: nav_order.len(),
                    constraint: 0.0,
                },
                nav_order,
                control_points: None,
                dense: None,
                trace: run
                    .trace
                    .iter()
                    .map(|t| TraceRow::new(t.fevals, t.hv, Some(t.uhv), 0.0, t.sm))
                    .collect(),
                fevals: run.fevals,
                generations: run.generations,
                stop: format!("{:?}", run.stop),
                wall_clock_secs: 0.0,
            }
        }
    };
    bundle.metrics.delta_hv = cfg.hv_star.map(|h| h - bundle.metrics.hv);
    bundle.trace = thin_trace(std::mem::take(&mut bundle.trace), cfg.trace_stride);
    bundle.wall_clock_secs = start.elapsed().as_secs_f64();
    Ok(bundle)
}

/// One bundle per repetition with seeds `seed, seed + 1, ...`, run in parallel.
pub fn run_experiment(cfg: &RunConfig) -> Result<Vec<ResultBundle>> {
    cfg.validate()?;
    (0..cfg.repetitions as u64)
        .into_par_iter()
        .map(|k| run_single(cfg, cfg.seed + k))
        .collect()
}
