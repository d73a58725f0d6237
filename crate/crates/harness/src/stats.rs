//! Cell statistics and the Wilcoxon rank-sum test.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::bundle::ResultBundle;
use crate::error::{HarnessError, Result};

/// Combined sample size up to which the rank-sum test enumerates exactly.
pub const EXACT_LIMIT: usize = 40;

/// Significance level for the comparison against the baseline.
pub const ALPHA: f64 = 0.05;

/// Midranks (1-based) of `values`, ties sharing the average rank.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Two-sided p-value of the Wilcoxon rank-sum test of `a` against `b`. Exact enumeration
/// of the (midrank) null distribution for small samples, otherwise a normal approximation
/// with tie and continuity correction.
pub fn rank_sum_test(a: &[f64], b: &[f64]) -> f64 {
    let (n1, n2) = (a.len(), b.len());
    if n1 == 0 || n2 == 0 {
        return 1.0;
    }
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = midranks(&pooled);
    let w: f64 = ranks[..n1].iter().sum();
    if n1 + n2 <= EXACT_LIMIT {
        exact_p(&ranks, n1, w)
    } else {
        normal_p(&pooled, &ranks, n1, w)
    }
}

fn exact_p(ranks: &[f64], n1: usize, w: f64) -> f64 {
    // doubled midranks are integers
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let max_sum: usize = doubled.iter().sum();
    // counts[k][s]: subsets of size k with doubled rank sum s
    let mut counts = vec![vec![0.0f64; max_sum + 1]; n1 + 1];
    counts[0][0] = 1.0;
    for &d in &doubled {
        for k in (1..=n1).rev() {
            for s in (d..=max_sum).rev() {
                let add = counts[k - 1][s - d];
                if add > 0.0 {
                    counts[k][s] += add;
                }
            }
        }
    }
    let total: f64 = counts[n1].iter().sum();
    let observed = (2.0 * w).round() as usize;
    let lower: f64 = counts[n1][..=observed].iter().sum();
    let upper: f64 = counts[n1][observed..].iter().sum();
    (2.0 * lower.min(upper) / total).min(1.0)
}

fn normal_p(pooled: &[f64], ranks: &[f64], n1: usize, w: f64) -> f64 {
    let n = pooled.len() as f64;
    let (n1f, n2f) = (n1 as f64, n - n1 as f64);
    let mean = n1f * (n + 1.0) / 2.0;
    let mut sorted = ranks.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut ties = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&r| r == sorted[i]).count();
        let t = j as f64;
        ties += t * t * t - t;
        i += j;
    }
    let var = n1f * n2f / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((w - mean).abs() - 0.5).max(0.0) / var.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    (2.0 * (1.0 - normal.cdf(z))).min(1.0)
}

/// Mean and sample standard deviation; the values are summed in sorted order so the
/// result does not depend on input order.
pub fn mean_std(values: &[f64]) -> (f64, Option<f64>) {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let std = (v.len() >= 2).then(|| {
        let mut dev: Vec<f64> = v.iter().map(|x| (x - mean) * (x - mean)).collect();
        dev.sort_by(f64::total_cmp);
        (dev.iter().sum::<f64>() / (n - 1.0)).sqrt()
    });
    (mean, std)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub problem: String,
    pub algorithm: String,
    pub p: usize,
    pub runs: usize,
    pub hv_mean: f64,
    pub hv_std: Option<f64>,
    pub sm_mean: Option<f64>,
    /// Rank by mean HV within the problem, 1 is best; ties share the average.
    pub rank: f64,
    /// Rank-sum p-value against the problem's baseline; `None` for the baseline.
    pub p_value: Option<f64>,
    /// Whether the HV differs significantly from the baseline.
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub cells: Vec<CellSummary>,
}

/// Groups bundles into (problem, algorithm) cells, ranks the cells of each problem by
/// mean HV and tests each against `baseline` (an algorithm label) or, by default, the
/// best-ranked cell of the problem.
pub fn summarize(bundles: &[ResultBundle], baseline: Option<&str>) -> Result<Summary> {
    let mut groups: BTreeMap<String, BTreeMap<String, Vec<&ResultBundle>>> = BTreeMap::new();
    for b in bundles {
        groups
            .entry(b.config.problem.clone())
            .or_default()
            .entry(b.config.label())
            .or_default()
            .push(b);
    }
    let mut cells = Vec::new();
    for (problem, algos) in groups {
        let first = algos
            .values()
            .next()
            .and_then(|v| v.first())
            .expect("non-empty group");
        let (p, r) = (first.config.p, first.config.r);
        if let Some(bad) = algos
            .values()
            .flatten()
            .find(|b| b.config.p != p || b.config.r != r)
        {
            return Err(HarnessError::Mismatch(format!(
                "{problem}: {} has p = {}, r = {:?}; expected p = {p}, r = {r:?}",
                bad.config.label(),
                bad.config.p,
                bad.config.r
            )));
        }
        let samples: Vec<(String, Vec<f64>, Vec<f64>)> = algos
            .into_iter()
            .map(|(label, runs)| {
                let hv = runs.iter().map(|b| b.metrics.hv).collect();
                let sm = runs.iter().filter_map(|b| b.metrics.sm).collect();
                (label, hv, sm)
            })
            .collect();
        let means: Vec<f64> = samples.iter().map(|(_, hv, _)| mean_std(hv).0).collect();
        let neg: Vec<f64> = means.iter().map(|m| -m).collect();
        let ranks = midranks(&neg);
        let base = match baseline {
            Some(label) => samples.iter().position(|(l, _, _)| l == label),
            None => (0..samples.len()).min_by(|&a, &b| ranks[a].total_cmp(&ranks[b])),
        };
        for (k, (label, hv, sm)) in samples.iter().enumerate() {
            let (hv_mean, hv_std) = mean_std(hv);
            let p_value = base
                .filter(|&b| b != k)
                .map(|b| rank_sum_test(hv, &samples[b].1));
            cells.push(CellSummary {
                problem: problem.clone(),
                algorithm: label.clone(),
                p,
                runs: hv.len(),
                hv_mean,
                hv_std,
                sm_mean: (!sm.is_empty()).then(|| mean_std(sm).0),
                rank: ranks[k],
                p_value,
                significant: p_value.is_some_and(|v| v < ALPHA),
            });
        }
    }
    Ok(Summary { cells })
}

impl Summary {
    pub fn write_csv<W: std::io::Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for c in &self.cells {
            w.serialize(c)?;
        }
        w.flush().map_err(|e| HarnessError::Csv(e.into()))
    }

    /// Table-style report: `mean ± std (rank)` per cell, `*` marking significant
    /// differences from the baseline.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<16} {:<10} {:>4} {:>26} {:>8} {:>10}",
            "problem", "algorithm", "runs", "HV mean ± std (rank)", "Sm", "p-value"
        );
        for c in &self.cells {
            let std = c.hv_std.map_or("-".to_string(), |s| format!("{s:.2e}"));
            let hv = format!("{:.4} ± {std} ({})", c.hv_mean, c.rank);
            let sm = c.sm_mean.map_or("-".to_string(), |s| format!("{s:.4}"));
            let pv = c.p_value.map_or("base".to_string(), |v| {
                format!("{v:.3}{}", if c.significant { "*" } else { "" })
            });
            let _ = writeln!(
                out,
                "{:<16} {:<10} {:>4} {:>26} {:>8} {:>10}",
                c.problem, c.algorithm, c.runs, hv, sm, pv
            );
        }
        out
    }
}
