//! Benchmark problems and the string-addressable problem registry.

mod wfg;

pub use wfg::Wfg;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::problem::{MoProblem, Objectives};
use crate::scalar::Scalar;

/// Two-variable problem with a curved Pareto set from `(1, 0)` to `(0, 1)`.
///
/// `f1 = (x1 - 1)^2 + 0.01 x2^2`, `f2 = x1^2 + (x2 - 1)^2`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CurvePs;

impl<T: Scalar> MoProblem<T> for CurvePs {
    fn name(&self) -> String {
        "curveps".into()
    }

    fn dimension(&self) -> usize {
        2
    }

    fn init_bounds(&self) -> (Vec<T>, Vec<T>) {
        (vec![T::lit(-1.0); 2], vec![T::lit(2.0); 2])
    }

    fn objectives(&self, x: &[T]) -> Objectives<T> {
        let one = T::one();
        let f1 = (x[0] - one) * (x[0] - one) + T::lit(0.01) * x[1] * x[1];
        let f2 = x[0] * x[0] + (x[1] - one) * (x[1] - one);
        [f1, f2]
    }
}

impl CurvePs {
    /// Point of the Pareto set for trade-off `a ∈ [0, 1]` (`a = 1` minimizes `f1`).
    pub fn pareto_point<T: Scalar>(a: T) -> [T; 2] {
        let one = T::one();
        [a, (one - a) / (one - T::lit(0.99) * a)]
    }
}

/// Two spheres, one centred at the origin and one at `e_1`. Its Pareto set is the segment
/// between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BiSphere {
    n: usize,
}

impl BiSphere {
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl<T: Scalar> MoProblem<T> for BiSphere {
    fn name(&self) -> String {
        format!("bisphere:n={}", self.n)
    }

    fn dimension(&self) -> usize {
        self.n
    }

    fn init_bounds(&self) -> (Vec<T>, Vec<T>) {
        (vec![T::lit(-5.0); self.n], vec![T::lit(5.0); self.n])
    }

    fn objectives(&self, x: &[T]) -> Objectives<T> {
        let f1: T = x.iter().map(|&v| v * v).sum();
        let shifted = x[0] - T::one();
        let f2: T = shifted * shifted + x[1..].iter().map(|&v| v * v).sum::<T>();
        [f1, f2]
    }
}

/// Registry entry for the benchmark problems, addressable by string id:
/// `curveps`, `bisphere` / `bisphere:n=10`, `wfg1` .. `wfg9` (optionally `wfg4:k=4,l=20`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Benchmark {
    CurvePs(CurvePs),
    BiSphere(BiSphere),
    Wfg(Wfg),
}

impl Benchmark {
    pub fn id(&self) -> String {
        match self {
            Benchmark::CurvePs(_) => "curveps".into(),
            Benchmark::BiSphere(b) => format!("bisphere:n={}", b.n),
            Benchmark::Wfg(w) if w.position_vars() == 4 && w.distance_vars() == 20 => {
                format!("wfg{}", w.which())
            }
            Benchmark::Wfg(w) => format!(
                "wfg{}:k={},l={}",
                w.which(),
                w.position_vars(),
                w.distance_vars()
            ),
        }
    }

    fn as_problem<T: Scalar>(&self) -> &dyn MoProblem<T> {
        match self {
            Benchmark::CurvePs(p) => p,
            Benchmark::BiSphere(p) => p,
            Benchmark::Wfg(p) => p,
        }
    }
}

impl fmt::Display for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

fn parse_params(id: &str, params: &str) -> Result<Vec<(String, usize)>> {
    params
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::UnknownProblem(id.to_string()))?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| Error::UnknownProblem(id.to_string()))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

impl FromStr for Benchmark {
    type Err = Error;

    fn from_str(id: &str) -> Result<Self> {
        let lower = id.trim().to_ascii_lowercase();
        let (name, params) = lower.split_once(':').unwrap_or((&lower, ""));
        let params = parse_params(id, params)?;
        let get = |key: &str, default: usize| -> Result<usize> {
            match params.iter().find(|(k, _)| k == key) {
                Some((_, v)) => Ok(*v),
                None => Ok(default),
            }
        };
        if let Some((k, _)) = params
            .iter()
            .find(|(k, _)| !matches!(k.as_str(), "n" | "k" | "l"))
        {
            return Err(Error::UnknownProblem(format!(
                "{id} (unknown parameter {k})"
            )));
        }
        match name {
            "curveps" if params.is_empty() => Ok(Benchmark::CurvePs(CurvePs)),
            "bisphere" => {
                let n = get("n", 10)?;
                if n == 0 {
                    return Err(Error::InvalidProblem("bisphere needs n >= 1".into()));
                }
                Ok(Benchmark::BiSphere(BiSphere::new(n)))
            }
            _ => {
                let which = name
                    .strip_prefix("wfg")
                    .and_then(|s| s.parse::<u8>().ok())
                    .ok_or_else(|| Error::UnknownProblem(id.to_string()))?;
                Ok(Benchmark::Wfg(Wfg::new(
                    which,
                    get("k", 4)?,
                    get("l", 20)?,
                )?))
            }
        }
    }
}

impl<T: Scalar> MoProblem<T> for Benchmark {
    fn name(&self) -> String {
        self.id()
    }

    fn dimension(&self) -> usize {
        self.as_problem::<T>().dimension()
    }

    fn init_bounds(&self) -> (Vec<T>, Vec<T>) {
        self.as_problem::<T>().init_bounds()
    }

    fn objectives(&self, x: &[T]) -> Objectives<T> {
        self.as_problem::<T>().objectives(x)
    }

    fn domain_bounds(&self) -> Option<(Vec<T>, Vec<T>)> {
        self.as_problem::<T>().domain_bounds()
    }

    fn is_separable(&self) -> bool {
        self.as_problem::<T>().is_separable()
    }
}
