//! Flat `key = value` run configuration.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smoothfront::benchmarks::Benchmark;
use smoothfront::uhvea::UhvVariant;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    UhveaBb,
    UhveaGb,
    Bezea,
}

impl Algorithm {
    pub fn uhv_variant(self) -> Option<UhvVariant> {
        match self {
            Algorithm::UhveaBb => Some(UhvVariant::Bb),
            Algorithm::UhveaGb => Some(UhvVariant::Gb),
            Algorithm::Bezea => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::UhveaBb => "uhvea-bb",
            Algorithm::UhveaGb => "uhvea-gb",
            Algorithm::Bezea => "bezea",
        })
    }
}

impl FromStr for Algorithm {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uhvea-bb" => Ok(Algorithm::UhveaBb),
            "uhvea-gb" => Ok(Algorithm::UhveaGb),
            "bezea" => Ok(Algorithm::Bezea),
            other => Err(HarnessError::Config(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// One experiment: an algorithm on a problem, repeated with consecutive seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub algorithm: Algorithm,
    pub problem: String,
    pub p: usize,
    pub q: Option<usize>,
    /// Population size; `None` uses the guideline for the algorithm.
    pub population_size: Option<usize>,
    pub r: [f64; 2],
    pub budget: u64,
    pub seed: u64,
    pub repetitions: usize,
    /// Minimum MO-feval gap between kept trace rows; `0` keeps every row.
    pub trace_stride: u64,
    pub output: Option<PathBuf>,
    /// Number of curve samples stored for BezEA runs.
    pub dense_samples: usize,
    /// Optimal hypervolume for ΔHV; looked up in a reference store when absent.
    pub hv_star: Option<f64>,
    pub covariance_learning_rate: Option<f64>,
    pub no_improvement_threshold: Option<usize>,
}

impl RunConfig {
    pub fn new(algorithm: Algorithm, problem: &str, p: usize, budget: u64) -> Self {
        Self {
            algorithm,
            problem: problem.to_string(),
            p,
            q: None,
            population_size: None,
            r: [11.0, 11.0],
            budget,
            seed: 0,
            repetitions: 1,
            trace_stride: 0,
            output: None,
            dense_samples: 200,
            hv_star: None,
            covariance_learning_rate: None,
            no_improvement_threshold: None,
        }
    }

    pub fn benchmark(&self) -> Result<Benchmark> {
        self.problem
            .parse()
            .map_err(|e| HarnessError::Config(format!("problem {:?}: {e}", self.problem)))
    }

    /// Cell label used in summaries, e.g. `bezea-q3` or `uhvea-gb`.
    pub fn label(&self) -> String {
        match (self.algorithm, self.q) {
            (Algorithm::Bezea, Some(q)) => format!("bezea-q{q}"),
            (a, _) => a.to_string(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.benchmark()?;
        if self.p < 2 {
            return Err(HarnessError::Config(format!(
                "p = {} must be at least 2",
                self.p
            )));
        }
        match (self.algorithm, self.q) {
            (Algorithm::Bezea, None) => {
                return Err(HarnessError::Config("bezea requires q".into()));
            }
            (Algorithm::Bezea, Some(q)) if q < 2 => {
                return Err(HarnessError::Config(format!("q = {q} must be at least 2")));
            }
            (Algorithm::UhveaBb | Algorithm::UhveaGb, Some(_)) => {
                return Err(HarnessError::Config("q only applies to bezea".into()));
            }
            _ => {}
        }
        if self.population_size.is_some_and(|n| n < 2) {
            return Err(HarnessError::Config("N must be at least 2".into()));
        }
        if !self.r.iter().all(|v| v.is_finite()) {
            return Err(HarnessError::Config(
                "reference point must be finite".into(),
            ));
        }
        if self.budget == 0 {
            return Err(HarnessError::Config("budget must be positive".into()));
        }
        if self.repetitions == 0 {
            return Err(HarnessError::Config("repetitions must be positive".into()));
        }
        if self.dense_samples < 2 {
            return Err(HarnessError::Config(
                "dense-samples must be at least 2".into(),
            ));
        }
        if let Some(eta) = self.covariance_learning_rate {
            if !(eta > 0.0 && eta <= 1.0) {
                return Err(HarnessError::Config(format!("eta = {eta} outside (0, 1]")));
            }
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        text.parse()
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value
        .parse()
        .map_err(|_| HarnessError::Config(format!("line {line}: bad value {value:?} for {key}")))
}

impl FromStr for RunConfig {
    type Err = HarnessError;

    /// Parses `key = value` lines. `#` starts a comment. Keys: algorithm, problem, p, q,
    /// N, r, budget, seed, repetitions, trace-stride, output, dense-samples, hv-star,
    /// eta, nis. The first four of algorithm, problem, p, budget are required.
    fn from_str(text: &str) -> Result<Self> {
        let mut algorithm = None;
        let mut problem = None;
        let mut p = None;
        let mut budget = None;
        let mut cfg = RunConfig::new(Algorithm::Bezea, "", 0, 0);
        let mut seen = std::collections::HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| {
                HarnessError::Config(format!("line {line}: expected key = value"))
            })?;
            let key = key.trim();
            let value = value.trim();
            if !seen.insert(key.to_string()) {
                return Err(HarnessError::Config(format!(
                    "line {line}: duplicate key {key}"
                )));
            }
            match key {
                "algorithm" => algorithm = Some(value.parse()?),
                "problem" => problem = Some(value.to_string()),
                "p" => p = Some(parse_value(key, value, line)?),
                "budget" => budget = Some(parse_value::<f64>(key, value, line)? as u64),
                "q" => cfg.q = Some(parse_value(key, value, line)?),
                "N" => cfg.population_size = Some(parse_value(key, value, line)?),
                "r" => {
                    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
                    if parts.len() != 2 {
                        return Err(HarnessError::Config(format!(
                            "line {line}: r needs two values"
                        )));
                    }
                    cfg.r = [
                        parse_value(key, parts[0], line)?,
                        parse_value(key, parts[1], line)?,
                    ];
                }
                "seed" => cfg.seed = parse_value(key, value, line)?,
                "repetitions" => cfg.repetitions = parse_value(key, value, line)?,
                "trace-stride" => cfg.trace_stride = parse_value::<f64>(key, value, line)? as u64,
                "output" => cfg.output = Some(PathBuf::from(value)),
                "dense-samples" => cfg.dense_samples = parse_value(key, value, line)?,
                "hv-star" => cfg.hv_star = Some(parse_value(key, value, line)?),
                "eta" => cfg.covariance_learning_rate = Some(parse_value(key, value, line)?),
                "nis" => cfg.no_improvement_threshold = Some(parse_value(key, value, line)?),
                other => {
                    return Err(HarnessError::Config(format!(
                        "line {line}: unknown key {other}"
                    )))
                }
            }
        }
        let missing = |k: &str| HarnessError::Config(format!("missing required key {k}"));
        cfg.algorithm = algorithm.ok_or_else(|| missing("algorithm"))?;
        cfg.problem = problem.ok_or_else(|| missing("problem"))?;
        cfg.p = p.ok_or_else(|| missing("p"))?;
        cfg.budget = budget.ok_or_else(|| missing("budget"))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algorithm = {}", self.algorithm)?;
        writeln!(f, "problem = {}", self.problem)?;
        writeln!(f, "p = {}", self.p)?;
        if let Some(q) = self.q {
            writeln!(f, "q = {q}")?;
        }
        if let Some(n) = self.population_size {
            writeln!(f, "N = {n}")?;
        }
        writeln!(f, "r = {}, {}", self.r[0], self.r[1])?;
        writeln!(f, "budget = {}", self.budget)?;
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "repetitions = {}", self.repetitions)?;
        writeln!(f, "trace-stride = {}", self.trace_stride)?;
        if let Some(o) = &self.output {
            writeln!(f, "output = {}", o.display())?;
        }
        writeln!(f, "dense-samples = {}", self.dense_samples)?;
        if let Some(h) = self.hv_star {
            writeln!(f, "hv-star = {h}")?;
        }
        if let Some(e) = self.covariance_learning_rate {
            writeln!(f, "eta = {e}")?;
        }
        if let Some(n) = self.no_improvement_threshold {
            writeln!(f, "nis = {n}")?;
        }
        Ok(())
    }
}
