//! Bézier-curve parameterized solution sets.
//!
//! A control polygon of `q` points in decision space defines a curve `B(t)`, `t ∈ [0, 1]`.
//! Sampling it at `p` equidistant parameter values gives a solution set whose intrinsic
//! order follows the curve. The navigational order keeps the part of that sequence that
//! walks the front from best `f1` to best `f2`, and the constraint value measures how far
//! the sampled curve is from being fully unfolded in objective space.

use crate::error::{Error, Result};
use crate::indicators::{smoothness, uncrowded_distance, ReferencePoint};
use crate::problem::{approximation_set, evaluate, EvaluationCounter, MoProblem, Objectives};
use crate::scalar::Scalar;

/// Ordered control points `c_1 .. c_q`, stored contiguously.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlPolygon<T> {
    dim: usize,
    coords: Vec<T>,
}

impl<T: Scalar> ControlPolygon<T> {
    pub fn new(points: &[Vec<T>]) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if points.len() < 2 {
            return Err(Error::TooFewPoints {
                what: "control polygon",
                required: 2,
                got: points.len(),
            });
        }
        if dim == 0 || points.iter().any(|c| c.len() != dim) {
            return Err(Error::InvalidConfig(
                "control points must share a positive dimension".into(),
            ));
        }
        Ok(Self {
            dim,
            coords: points.concat(),
        })
    }

    /// Decodes a genotype `[c_1 ... c_q]` of length `q * dim`.
    pub fn from_genotype(genotype: &[T], dim: usize) -> Result<Self> {
        if dim == 0 || genotype.len() % dim != 0 || genotype.len() / dim < 2 {
            return Err(Error::InvalidConfig(format!(
                "genotype of length {} does not hold at least two control points of dimension {dim}",
                genotype.len()
            )));
        }
        Ok(Self {
            dim,
            coords: genotype.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, j: usize) -> &[T] {
        &self.coords[j * self.dim..(j + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[T]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn as_genotype(&self) -> &[T] {
        &self.coords
    }

    pub fn reversed(&self) -> Self {
        let coords = self
            .coords
            .rchunks_exact(self.dim)
            .flatten()
            .copied()
            .collect();
        Self {
            dim: self.dim,
            coords,
        }
    }

    pub fn is_palindromic(&self) -> bool {
        let q = self.len();
        (0..q / 2).all(|j| self.point(j) == self.point(q - 1 - j))
    }
}

fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    let k = k.min(n - k);
    let mut c = T::one();
    for i in 0..k {
        c = c * T::from_count(n - i) / T::from_count(i + 1);
    }
    c.round()
}

fn check_t<T: Scalar>(t: T) -> Result<()> {
    if t >= T::zero() && t <= T::one() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "t",
            value: t.as_f64(),
        })
    }
}

/// Bernstein basis polynomial `C(degree, j) (1-t)^(degree-j) t^j`.
pub fn bernstein<T: Scalar>(j: usize, degree: usize, t: T) -> Result<T> {
    check_t(t)?;
    if j > degree {
        return Err(Error::OutOfRange {
            name: "j",
            value: j as f64,
        });
    }
    Ok(bernstein_unchecked(j, degree, t))
}

#[inline]
fn bernstein_unchecked<T: Scalar>(j: usize, degree: usize, t: T) -> T {
    binomial::<T>(degree, j) * (T::one() - t).powi((degree - j) as i32) * t.powi(j as i32)
}

/// Point `B(t)` on the curve. `B(0) = c_1` and `B(1) = c_q` exactly.
pub fn bezier_eval<T: Scalar>(polygon: &ControlPolygon<T>, t: T) -> Result<Vec<T>> {
    check_t(t)?;
    let q = polygon.len();
    if t == T::zero() {
        return Ok(polygon.point(0).to_vec());
    }
    if t == T::one() {
        return Ok(polygon.point(q - 1).to_vec());
    }
    let mut x = vec![T::zero(); polygon.dim()];
    for (j, c) in polygon.points().enumerate() {
        let b = bernstein_unchecked(j, q - 1, t);
        for (xi, &ci) in x.iter_mut().zip(c) {
            *xi += b * ci;
        }
    }
    Ok(x)
}

/// Curve parameter of the `i`-th of `p` equidistant samples.
#[inline]
pub fn sample_parameter<T: Scalar>(i: usize, p: usize) -> T {
    T::from_count(i) / T::from_count(p - 1)
}

/// `p` curve samples in intrinsic order (ascending `t`) with their objective vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct BezierSolutionSet<T> {
    pub polygon: ControlPolygon<T>,
    pub t: Vec<T>,
    pub x: Vec<Vec<T>>,
    pub f: Vec<Objectives<T>>,
}

impl<T: Scalar> BezierSolutionSet<T> {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Decision vectors of `p >= 2` equidistant curve samples, without evaluating them.
pub fn sample_points<T: Scalar>(polygon: &ControlPolygon<T>, p: usize) -> Result<Vec<Vec<T>>> {
    if p < 2 {
        return Err(Error::TooFewPoints {
            what: "Bezier sample set",
            required: 2,
            got: p,
        });
    }
    (0..p)
        .map(|i| bezier_eval(polygon, sample_parameter(i, p)))
        .collect()
}

/// Samples `p` equidistant points on the curve and evaluates them (`p` MO-fevals).
pub fn sample_set<T: Scalar, P: MoProblem<T> + ?Sized>(
    polygon: &ControlPolygon<T>,
    p: usize,
    problem: &P,
    counter: &mut EvaluationCounter,
) -> Result<BezierSolutionSet<T>> {
    let x = sample_points(polygon, p)?;
    let f = x
        .iter()
        .map(|xi| evaluate(problem, xi, counter))
        .collect::<Result<Vec<_>>>()?;
    Ok(BezierSolutionSet {
        polygon: polygon.clone(),
        t: (0..p).map(|i| sample_parameter(i, p)).collect(),
        x,
        f,
    })
}

/// Orients the polygon so that its first control point has the smaller `f1`.
///
/// The order is inverted only when `f1(c_1) > f1(c_q)` and the polygon is not a
/// palindrome; ties keep the current orientation. Returns the polygon and whether it
/// was inverted. The curve as a point set is unchanged.
pub fn standardize_direction<T: Scalar>(
    polygon: &ControlPolygon<T>,
    f1_first: T,
    f1_last: T,
) -> (ControlPolygon<T>, bool) {
    if f1_first > f1_last && !polygon.is_palindromic() {
        (polygon.reversed(), true)
    } else {
        (polygon.clone(), false)
    }
}

/// Evaluates the curve endpoints, standardizes the direction, then samples the
/// interior. Costs exactly `p` MO-fevals since `B(0)` and `B(1)` are the endpoints.
pub fn sample_standardized<T: Scalar, P: MoProblem<T> + ?Sized>(
    polygon: &ControlPolygon<T>,
    p: usize,
    problem: &P,
    counter: &mut EvaluationCounter,
) -> Result<(BezierSolutionSet<T>, bool)> {
    if p < 2 {
        return Err(Error::TooFewPoints {
            what: "Bezier sample set",
            required: 2,
            got: p,
        });
    }
    let q = polygon.len();
    let first = polygon.point(0).to_vec();
    let last = polygon.point(q - 1).to_vec();
    let f_first = evaluate(problem, &first, counter)?;
    let f_last = evaluate(problem, &last, counter)?;
    let (polygon, reversed) = standardize_direction(polygon, f_first[0], f_last[0]);
    let (first, f_first, last, f_last) = if reversed {
        (last, f_last, first, f_first)
    } else {
        (first, f_first, last, f_last)
    };
    let mut x = Vec::with_capacity(p);
    let mut f = Vec::with_capacity(p);
    x.push(first);
    f.push(f_first);
    for i in 1..p - 1 {
        let xi = bezier_eval(&polygon, sample_parameter(i, p))?;
        f.push(evaluate(problem, &xi, counter)?);
        x.push(xi);
    }
    x.push(last);
    f.push(f_last);
    Ok((
        BezierSolutionSet {
            polygon,
            t: (0..p).map(|i| sample_parameter(i, p)).collect(),
            x,
            f,
        },
        reversed,
    ))
}

/// Navigational subsequence of a curve-ordered sample set.
#[derive(Debug, Clone, PartialEq)]
pub struct NavResult<T> {
    /// Indices into the sample set, ascending along the curve.
    pub order: Vec<usize>,
    /// Objective vectors of the samples in `order`.
    pub front: Vec<Objectives<T>>,
}

impl<T> NavResult<T> {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Navigational order of curve samples `f` given in curve order.
///
/// Starts at the sample with the best `f1` and follows the curve forward, appending every
/// non-dominated sample that strictly improves `f2` on the last appended one. Samples
/// before the starting point are never navigable. The start is the lowest `f1`, ties
/// broken by lower `f2`, then by lower curve index.
pub fn navigational_order<T: Scalar>(f: &[Objectives<T>]) -> NavResult<T> {
    if f.is_empty() {
        return NavResult {
            order: Vec::new(),
            front: Vec::new(),
        };
    }
    let eta = (1..f.len()).fold(0, |best, i| {
        if f[i][0] < f[best][0] || (f[i][0] == f[best][0] && f[i][1] < f[best][1]) {
            i
        } else {
            best
        }
    });
    let mut in_front = vec![false; f.len()];
    for i in approximation_set(f) {
        in_front[i] = true;
    }
    let mut order = vec![eta];
    for j in eta + 1..f.len() {
        let end = order[order.len() - 1];
        if in_front[j] && f[j][1] < f[end][1] {
            order.push(j);
        }
    }
    let front = order.iter().map(|&i| f[i]).collect();
    NavResult { order, front }
}

/// Constraint violation of a curve-ordered sample set given its navigational order.
///
/// Mean squared uncrowded distance to the navigational front plus, for every pair of
/// consecutive curve samples of which at least one is off the navigational order, the
/// objective-space distance between them.
pub fn constraint<T: Scalar>(
    f: &[Objectives<T>],
    nav: &NavResult<T>,
    r: &ReferencePoint<T>,
) -> Result<T> {
    if f.is_empty() {
        return Ok(T::zero());
    }
    let mut ud_sum = T::zero();
    for fx in f {
        let d = uncrowded_distance(fx, &nav.front, r)?;
        ud_sum += d * d;
    }
    let mut on_nav = vec![false; f.len()];
    for &i in &nav.order {
        on_nav[i] = true;
    }
    let mut pull = T::zero();
    for j in 0..f.len() - 1 {
        if !on_nav[j] || !on_nav[j + 1] {
            pull += (f[j][0] - f[j + 1][0]).hypot(f[j][1] - f[j + 1][1]);
        }
    }
    Ok(ud_sum / T::from_count(f.len()) + pull)
}

/// Smoothness of the navigational subset of a curve sample set.
///
/// For a two-point polygon the curve is affine in `t`, so every distance between samples
/// is a fixed multiple of their parameter gap; the ratio is then evaluated on the integer
/// sample indices, which makes a straight curve exactly 1. Other polygons use the
/// decision-space distances. `None` when fewer than three samples are navigable.
pub fn nav_smoothness<T: Scalar>(set: &BezierSolutionSet<T>, nav: &NavResult<T>) -> Option<T> {
    if nav.len() < 3 {
        return None;
    }
    if set.polygon.len() == 2 {
        let mut total = T::zero();
        for w in nav.order.windows(3) {
            let direct = w[2] - w[0];
            let detour = (w[1] - w[0]) + (w[2] - w[1]);
            total += T::from_count(direct) / T::from_count(detour);
        }
        Some(total / T::from_count(nav.len() - 2))
    } else {
        smoothness(&set.x, &nav.order).ok()
    }
}
