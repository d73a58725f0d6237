//! Navigator JSON: the file format read by the approximation-set browser.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use smoothfront::bezier::{nav_smoothness, BezierSolutionSet, ControlPolygon, NavResult};
use smoothfront::indicators::{hv2d, smoothness, uhv, ReferencePoint};

use crate::bundle::{BundlePoint, ResultBundle};
use crate::error::{HarnessError, Result};
use crate::run::dense_curve;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NavMeta {
    pub schema_version: u32,
    pub problem: String,
    pub algorithm: String,
    pub p: usize,
    pub q: Option<usize>,
    pub r: [f64; 2],
    pub seed: u64,
    /// Set when there is no curve to scrub along.
    pub discrete: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NavPoint {
    pub idx: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    pub x: Vec<f64>,
    pub f: [f64; 2],
    pub in_nav_order: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub t: f64,
    pub x: Vec<f64>,
    pub f: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NavCurve {
    pub control_points: Vec<Vec<f64>>,
    pub dense: Vec<CurveSample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NavMetrics {
    pub hv: f64,
    pub uhv: f64,
    pub sm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_hv: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NavTraceRow {
    pub fevals: u64,
    pub hv: Option<f64>,
    pub constraint: Option<f64>,
    pub sm: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NavigatorBundle {
    pub meta: NavMeta,
    pub points: Vec<NavPoint>,
    pub nav_order: Vec<usize>,
    pub curve: Option<NavCurve>,
    pub metrics: NavMetrics,
    pub trace: Vec<NavTraceRow>,
}

fn to_samples(points: Vec<BundlePoint>) -> Vec<CurveSample> {
    points
        .into_iter()
        .map(|p| CurveSample {
            t: p.t.unwrap_or_default(),
            x: p.x,
            f: p.f,
        })
        .collect()
}

/// Converts a bundle to the navigator format with `dense_p` curve samples. Stored samples
/// are reused when their count matches; otherwise the curve is re-evaluated. UHVEA
/// bundles export their points only and are flagged `discrete`.
pub fn export_navigator_bundle(bundle: &ResultBundle, dense_p: usize) -> Result<NavigatorBundle> {
    if dense_p < 2 {
        return Err(HarnessError::Config("dense_p must be at least 2".into()));
    }
    let curve = match &bundle.control_points {
        Some(cp) => {
            let dense = match &bundle.dense {
                Some(d) if d.len() == dense_p => d.clone(),
                _ => dense_curve(
                    &ControlPolygon::new(cp)?,
                    &bundle.config.benchmark()?,
                    dense_p,
                )?,
            };
            Some(NavCurve {
                control_points: cp.clone(),
                dense: to_samples(dense),
            })
        }
        None => None,
    };
    let points = bundle
        .points
        .iter()
        .enumerate()
        .map(|(idx, p)| NavPoint {
            idx,
            t: p.t,
            x: p.x.clone(),
            f: p.f,
            in_nav_order: bundle.nav_order.contains(&idx),
        })
        .collect();
    Ok(NavigatorBundle {
        meta: NavMeta {
            schema_version: SCHEMA_VERSION,
            problem: bundle.config.problem.clone(),
            algorithm: bundle.config.algorithm.to_string(),
            p: bundle.config.p,
            q: bundle.config.q,
            r: bundle.config.r,
            seed: bundle.seed,
            discrete: curve.is_none(),
        },
        points,
        nav_order: bundle.nav_order.clone(),
        curve,
        metrics: NavMetrics {
            hv: bundle.metrics.hv,
            uhv: bundle.metrics.uhv,
            sm: bundle.metrics.sm,
            delta_hv: bundle.metrics.delta_hv,
        },
        trace: bundle
            .trace
            .iter()
            .map(|t| NavTraceRow {
                fevals: t.fevals,
                hv: t.hv,
                constraint: t.constraint,
                sm: t.sm,
            })
            .collect(),
    })
}

impl NavigatorBundle {
    /// Structural checks: version, index ranges, point numbering and curve ordering.
    pub fn validate(&self) -> Result<()> {
        if self.meta.schema_version != SCHEMA_VERSION {
            return Err(HarnessError::SchemaVersion {
                found: self.meta.schema_version,
                expected: SCHEMA_VERSION,
            });
        }
        let bad = |msg: String| Err(HarnessError::Inconsistent(msg));
        if let Some(i) = self.nav_order.iter().find(|&&i| i >= self.points.len()) {
            return bad(format!("nav_order index {i} out of range"));
        }
        for (k, p) in self.points.iter().enumerate() {
            if p.idx != k {
                return bad(format!("points[{k}].idx = {}", p.idx));
            }
            if p.in_nav_order != self.nav_order.contains(&k) {
                return bad(format!("points[{k}].in_nav_order disagrees with nav_order"));
            }
        }
        match &self.curve {
            Some(c) => {
                if self.meta.discrete {
                    return bad("discrete bundle with a curve".into());
                }
                if c.dense.windows(2).any(|w| w[1].t <= w[0].t) {
                    return bad("dense t not strictly increasing".into());
                }
            }
            None if !self.meta.discrete => return bad("curve missing".into()),
            None => {}
        }
        Ok(())
    }

    /// HV, UHV and Sm computed from the exported points alone.
    pub fn recompute_metrics(&self) -> Result<(f64, f64, Option<f64>)> {
        let r = ReferencePoint::new(self.meta.r[0], self.meta.r[1])?;
        let f: Vec<[f64; 2]> = self.points.iter().map(|p| p.f).collect();
        let nav_f: Vec<[f64; 2]> = self.nav_order.iter().map(|&i| f[i]).collect();
        let hv = hv2d(&nav_f, &r)?;
        let u = uhv(&f, &r)?;
        let sm = match &self.curve {
            Some(c) => {
                let set = BezierSolutionSet {
                    polygon: ControlPolygon::new(&c.control_points)?,
                    t: self
                        .points
                        .iter()
                        .map(|p| p.t.unwrap_or(f64::NAN))
                        .collect(),
                    x: self.points.iter().map(|p| p.x.clone()).collect(),
                    f,
                };
                let nav = NavResult {
                    order: self.nav_order.clone(),
                    front: nav_f,
                };
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

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut file = std::fs::File::create(path).map_err(|e| HarnessError::io(path, e))?;
        serde_json::to_writer_pretty(&mut file, self).map_err(|e| HarnessError::json(path, e))?;
        writeln!(file).map_err(|e| HarnessError::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        let nav: Self = serde_json::from_str(&text).map_err(|e| HarnessError::json(path, e))?;
        nav.validate()?;
        Ok(nav)
    }
}
