//! Serialized outcome of one run.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use smoothfront::bezier::{nav_smoothness, navigational_order, BezierSolutionSet, ControlPolygon};
use smoothfront::indicators::{hv2d, smoothness, uhv, ReferencePoint};

use crate::config::RunConfig;
use crate::error::{HarnessError, Result};

/// Tolerance for recomputed metrics.
pub const CONSISTENCY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundlePoint {
    /// Curve parameter; BezEA only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    pub x: Vec<f64>,
    pub f: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub hv: f64,
    pub uhv: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_hv: Option<f64>,
    /// `None` with fewer than three navigable points.
    pub sm: Option<f64>,
    /// Number of points in navigational order.
    pub nav_len: usize,
    pub constraint: f64,
}

/// Trace row; non-finite values are stored as `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub fevals: u64,
    pub hv: Option<f64>,
    /// UHV fitness of the elitist; UHVEA only.
    pub uhv: Option<f64>,
    pub constraint: Option<f64>,
    pub sm: Option<f64>,
}

impl TraceRow {
    pub fn new(fevals: u64, hv: f64, uhv: Option<f64>, constraint: f64, sm: Option<f64>) -> Self {
        let finite = |v: f64| v.is_finite().then_some(v);
        Self {
            fevals,
            hv: finite(hv),
            uhv: uhv.and_then(finite),
            constraint: finite(constraint),
            sm,
        }
    }
}

/// Final set, metrics and convergence trace of one run. `points` holds all `p` solutions:
/// curve samples in curve order for BezEA, genotype order for UHVEA. `nav_order` lists the
/// approximation set from left to right.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultBundle {
    pub config: RunConfig,
    pub seed: u64,
    pub points: Vec<BundlePoint>,
    pub nav_order: Vec<usize>,
    #[serde(default)]
    pub control_points: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub dense: Option<Vec<BundlePoint>>,
    pub metrics: Metrics,
    pub trace: Vec<TraceRow>,
    pub fevals: u64,
    pub generations: u64,
    pub stop: String,
    pub wall_clock_secs: f64,
}

impl ResultBundle {
    pub fn r(&self) -> ReferencePoint<f64> {
        ReferencePoint(self.config.r)
    }

    /// Same run outcome, ignoring wall-clock time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        let mut a = self.clone();
        a.wall_clock_secs = other.wall_clock_secs;
        a == *other
    }

    /// Recomputes HV, UHV and Sm from the stored points.
    pub fn recompute_metrics(&self) -> Result<(f64, f64, Option<f64>)> {
        let r = self.r();
        let f: Vec<[f64; 2]> = self.points.iter().map(|p| p.f).collect();
        let nav_f: Vec<[f64; 2]> = self.nav_order.iter().map(|&i| f[i]).collect();
        let hv = hv2d(&nav_f, &r)?;
        let u = uhv(&f, &r)?;
        let sm = match &self.control_points {
            Some(cp) => {
                let set = BezierSolutionSet {
                    polygon: ControlPolygon::new(cp)?,
                    t: self
                        .points
                        .iter()
                        .map(|p| p.t.unwrap_or(f64::NAN))
                        .collect(),
                    x: self.points.iter().map(|p| p.x.clone()).collect(),
                    f,
                };
                let nav = navigational_order(&set.f);
                if nav.order != self.nav_order {
                    return Err(HarnessError::Inconsistent(
                        "stored navigational order differs".into(),
                    ));
                }
                nav_smoothness(&set, &nav)
            }
            None => {
                let xs: Vec<&[f64]> = self
                    .nav_order
                    .iter()
                    .map(|&i| self.points[i].x.as_slice())
                    .collect();
                let order: Vec<usize> = (0..xs.len()).collect();
                smoothness(&xs, &order).ok()
            }
        };
        Ok((hv, u, sm))
    }

    /// Checks that stored metrics match the stored data and that the trace is ordered.
    pub fn check_consistency(&self) -> Result<()> {
        if self.nav_order.iter().any(|&i| i >= self.points.len()) {
            return Err(HarnessError::Inconsistent(
                "navigation index out of range".into(),
            ));
        }
        let (hv, u, sm) = self.recompute_metrics()?;
        let close = |a: f64, b: f64| (a - b).abs() <= CONSISTENCY_TOL;
        if !close(hv, self.metrics.hv) {
            return Err(HarnessError::Inconsistent(format!(
                "hv {hv} vs stored {}",
                self.metrics.hv
            )));
        }
        if !close(u, self.metrics.uhv) {
            return Err(HarnessError::Inconsistent(format!(
                "uhv {u} vs stored {}",
                self.metrics.uhv
            )));
        }
        match (sm, self.metrics.sm) {
            (None, None) => {}
            (Some(a), Some(b)) if close(a, b) => {}
            (a, b) => {
                return Err(HarnessError::Inconsistent(format!(
                    "sm {a:?} vs stored {b:?}"
                )))
            }
        }
        if self.trace.windows(2).any(|w| w[1].fevals < w[0].fevals) {
            return Err(HarnessError::Inconsistent(
                "trace not ordered by fevals".into(),
            ));
        }
        if self.fevals > self.config.budget {
            return Err(HarnessError::Inconsistent(format!(
                "{} MO-fevals exceed the budget of {}",
                self.fevals, self.config.budget
            )));
        }
        Ok(())
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| HarnessError::io(path, e))?;
        let mut w = std::io::BufWriter::new(file);
        serde_json::to_writer_pretty(&mut w, self).map_err(|e| HarnessError::json(path, e))?;
        w.flush().map_err(|e| HarnessError::io(path, e))
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| HarnessError::json(path, e))
    }

    /// Writes the trace as CSV with columns `fevals,hv,uhv,constraint,sm`.
    pub fn write_trace_csv<W: std::io::Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for row in &self.trace {
            w.serialize(row)?;
        }
        w.flush().map_err(|e| HarnessError::Csv(e.into()))
    }

    /// File stem identifying problem, algorithm, p and seed.
    pub fn file_stem(&self) -> String {
        let problem: String = self
            .config
            .problem
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        format!(
            "{problem}-{}-p{}-seed{}",
            self.config.label(),
            self.config.p,
            self.seed
        )
    }
}
