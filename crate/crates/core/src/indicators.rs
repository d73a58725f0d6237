//! Quality indicators for bi-objective approximation sets.
//!
//! Everything here reads cached objective vectors; nothing evaluates the problem.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::problem::{approximation_set, dominates, Objectives};
use crate::scalar::Scalar;

/// Reference point bounding the hypervolume. Only points strictly below it in both
/// objectives contribute.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferencePoint<T>(pub [T; 2]);

impl<T: Scalar> ReferencePoint<T> {
    pub fn new(r1: T, r2: T) -> Result<Self> {
        if r1.is_finite() && r2.is_finite() {
            Ok(Self([r1, r2]))
        } else {
            Err(Error::NonFinite("reference point"))
        }
    }

    /// Strict componentwise domination of the reference point.
    #[inline]
    pub fn contains(&self, f: &Objectives<T>) -> bool {
        f[0] < self.0[0] && f[1] < self.0[1]
    }

    /// Euclidean distance from `f` to the quadrant `{y : y <= r}`.
    pub fn distance_to_box(&self, f: &Objectives<T>) -> T {
        let d0 = (f[0] - self.0[0]).max(T::zero());
        let d1 = (f[1] - self.0[1]).max(T::zero());
        d0.hypot(d1)
    }
}

impl Default for ReferencePoint<f64> {
    fn default() -> Self {
        Self([11.0, 11.0])
    }
}

fn check_points<T: Scalar>(points: &[Objectives<T>]) -> Result<()> {
    if points.iter().flatten().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite("objective vectors"))
    }
}

fn by_f1_then_f2<T: Scalar>(a: &Objectives<T>, b: &Objectives<T>) -> Ordering {
    a[0].partial_cmp(&b[0])
        .unwrap_or(Ordering::Equal)
        .then(a[1].partial_cmp(&b[1]).unwrap_or(Ordering::Equal))
}

/// Area dominated by `points` and bounded by `r`.
///
/// Dominated points and points not strictly dominating `r` contribute nothing.
pub fn hv2d<T: Scalar>(points: &[Objectives<T>], r: &ReferencePoint<T>) -> Result<T> {
    check_points(points)?;
    let mut inside: Vec<Objectives<T>> = points.iter().copied().filter(|f| r.contains(f)).collect();
    inside.sort_by(by_f1_then_f2);
    let mut area = T::zero();
    let mut level = r.0[1];
    for f in &inside {
        if f[1] < level {
            area += (r.0[0] - f[0]) * (level - f[1]);
            level = f[1];
        }
    }
    Ok(area)
}

#[inline]
fn dist_to_vertical<T: Scalar>(p: &Objectives<T>, x: T, y_lo: T, y_hi: T) -> T {
    let dy = if p[1] < y_lo {
        y_lo - p[1]
    } else if p[1] > y_hi {
        p[1] - y_hi
    } else {
        T::zero()
    };
    (p[0] - x).hypot(dy)
}

#[inline]
fn dist_to_horizontal<T: Scalar>(p: &Objectives<T>, y: T, x_lo: T, x_hi: T) -> T {
    let dx = if p[0] < x_lo {
        x_lo - p[0]
    } else if p[0] > x_hi {
        p[0] - x_hi
    } else {
        T::zero()
    };
    dx.hypot(p[1] - y)
}

/// Distance from `p` to the boundary of the region dominated by `front` inside the box
/// of `r`.
///
/// The boundary runs from `r`'s top edge down the vertical segment above the leftmost
/// point, along the alternating horizontal and vertical segments between consecutive
/// points, and right to `r`'s right edge from the rightmost point. `front` must be
/// non-empty, mutually non-dominated and strictly inside the box.
fn distance_to_staircase<T: Scalar>(
    p: &Objectives<T>,
    front: &[Objectives<T>],
    r: &ReferencePoint<T>,
) -> T {
    let mut sorted = front.to_vec();
    sorted.sort_by(by_f1_then_f2);
    let first = sorted[0];
    let last = sorted[sorted.len() - 1];
    let mut best = dist_to_vertical(p, first[0], first[1], r.0[1]);
    best = best.min(dist_to_horizontal(p, last[1], last[0], r.0[0]));
    for w in sorted.windows(2) {
        let (a, b) = (w[0], w[1]);
        best = best.min(dist_to_horizontal(p, a[1], a[0], b[0]));
        best = best.min(dist_to_vertical(p, b[0], b[1], a[1]));
    }
    best
}

/// Uncrowded distance of `fx` with respect to a mutually non-dominated `front`.
///
/// Zero when `fx` is not strictly dominated by any front member and lies strictly inside
/// the reference box. Otherwise the distance to the nearest such point: for points
/// dominated by a front member inside the box, the distance to the part of the attainment
/// staircase inside the box; for the rest, the distance to the box. Front members outside
/// the box dominate nothing inside it and are ignored.
pub fn uncrowded_distance<T: Scalar>(
    fx: &Objectives<T>,
    front: &[Objectives<T>],
    r: &ReferencePoint<T>,
) -> Result<T> {
    check_points(std::slice::from_ref(fx))?;
    check_points(front)?;
    Ok(ud_unchecked(fx, front, r))
}

fn ud_unchecked<T: Scalar>(
    fx: &Objectives<T>,
    front: &[Objectives<T>],
    r: &ReferencePoint<T>,
) -> T {
    if front.iter().any(|g| r.contains(g) && dominates(g, fx)) {
        let inside: Vec<Objectives<T>> = front.iter().copied().filter(|g| r.contains(g)).collect();
        distance_to_staircase(fx, &inside, r)
    } else if r.contains(fx) {
        T::zero()
    } else {
        r.distance_to_box(fx)
    }
}

/// Uncrowded hypervolume: `HV(S) - mean(ud(f(x), A(S))^2)`.
pub fn uhv<T: Scalar>(f: &[Objectives<T>], r: &ReferencePoint<T>) -> Result<T> {
    check_points(f)?;
    if f.is_empty() {
        return Ok(T::zero());
    }
    let front: Vec<_> = approximation_set(f).into_iter().map(|i| f[i]).collect();
    let hv = hv2d(&front, r)?;
    let penalty: T = f
        .iter()
        .map(|fx| {
            let d = ud_unchecked(fx, &front, r);
            d * d
        })
        .sum();
    Ok(hv - penalty / T::from_count(f.len()))
}

/// Navigational smoothness of the decision vectors `xs` visited in `order`.
///
/// Mean over interior positions of direct distance divided by detour distance.
/// A coincident triple (zero detour) counts as 1.
pub fn smoothness<T: Scalar, V: AsRef<[T]>>(xs: &[V], order: &[usize]) -> Result<T> {
    if order.len() < 3 {
        return Err(Error::TooFewPoints {
            what: "smoothness",
            required: 3,
            got: order.len(),
        });
    }
    let dist = |a: usize, b: usize| -> T {
        xs[a]
            .as_ref()
            .iter()
            .zip(xs[b].as_ref())
            .map(|(&u, &v)| (u - v) * (u - v))
            .sum::<T>()
            .sqrt()
    };
    let mut total = T::zero();
    for w in order.windows(3) {
        let direct = dist(w[0], w[2]);
        let detour = dist(w[0], w[1]) + dist(w[1], w[2]);
        total += if detour > T::zero() {
            direct / detour
        } else {
            T::one()
        };
    }
    if !total.is_finite() {
        return Err(Error::NonFinite("decision vectors"));
    }
    Ok(total / T::from_count(order.len() - 2))
}

/// Permutation visiting `f` from left to right: ascending `f1`, then `f2`, then index.
pub fn left_to_right_order<T: Scalar>(f: &[Objectives<T>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..f.len()).collect();
    order.sort_by(|&a, &b| by_f1_then_f2(&f[a], &f[b]).then(a.cmp(&b)));
    order
}

/// Greedy hypervolume subset selection.
///
/// Repeatedly adds the point with the largest hypervolume gain until `p` points are
/// chosen or no point adds positive hypervolume. Ties go to the lowest index.
/// Returns indices in selection order; all indices when `p >= points.len()`.
pub fn ghss<T: Scalar>(
    points: &[Objectives<T>],
    r: &ReferencePoint<T>,
    p: usize,
) -> Result<Vec<usize>> {
    check_points(points)?;
    if p >= points.len() {
        return Ok((0..points.len()).collect());
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(p);
    let mut chosen_f: Vec<Objectives<T>> = Vec::with_capacity(p);
    let mut current = T::zero();
    while chosen.len() < p {
        let mut best: Option<(usize, T)> = None;
        for (i, f) in points.iter().enumerate() {
            if chosen.contains(&i) {
                continue;
            }
            chosen_f.push(*f);
            let gain = hv2d(&chosen_f, r)? - current;
            chosen_f.pop();
            if gain > T::zero() && best.is_none_or(|(_, g)| gain > g) {
                best = Some((i, gain));
            }
        }
        match best {
            Some((i, gain)) => {
                chosen.push(i);
                chosen_f.push(points[i]);
                current += gain;
            }
            None => break,
        }
    }
    Ok(chosen)
}

/// Gap between a best-known hypervolume and the hypervolume of `f`.
///
/// Negative when `f` beats the stored value; callers report it as is.
pub fn delta_hv<T: Scalar>(hv_star: T, f: &[Objectives<T>], r: &ReferencePoint<T>) -> Result<T> {
    Ok(hv_star - hv2d(f, r)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r11() -> ReferencePoint<f64> {
        ReferencePoint([11.0, 11.0])
    }

    #[test]
    fn hv_examples() {
        let r = ReferencePoint([1.0, 1.0]);
        assert_eq!(hv2d(&[[0.0, 0.0]], &r).unwrap(), 1.0);
        assert_eq!(hv2d(&[[0.25, 0.75], [0.75, 0.25]], &r).unwrap(), 0.3125);
        assert_eq!(hv2d::<f64>(&[], &r).unwrap(), 0.0);
        assert_eq!(hv2d(&[[1.0, 0.5], [2.0, 0.0]], &r).unwrap(), 0.0);
        assert!(hv2d(&[[f64::NAN, 0.0]], &r).is_err());
        assert_eq!(hv2d(&[[1.0, 3.0], [3.0, 1.0]], &r11()).unwrap(), 96.0);
    }

    #[test]
    fn hv_f32() {
        let r = ReferencePoint([1.0f32, 1.0]);
        assert_eq!(hv2d(&[[0.25f32, 0.75], [0.75, 0.25]], &r).unwrap(), 0.3125);
    }

    #[test]
    fn ud_examples() {
        let r = ReferencePoint([1.0, 1.0]);
        assert_eq!(
            uncrowded_distance(&[0.5, 0.5], &[[0.0, 0.0]], &r).unwrap(),
            0.5
        );
        let front = [[1.0, 3.0], [3.0, 1.0]];
        assert_eq!(
            uncrowded_distance(&[2.0, 4.0], &front, &r11()).unwrap(),
            1.0
        );
        assert_eq!(
            uncrowded_distance(&[0.5, 0.5], &front, &r11()).unwrap(),
            0.0
        );
        // on the front itself
        assert_eq!(
            uncrowded_distance(&[1.0, 3.0], &front, &r11()).unwrap(),
            0.0
        );
    }

    #[test]
    fn ud_outside_box() {
        let r = r11();
        assert_eq!(uncrowded_distance(&[14.0, 15.0], &[], &r).unwrap(), 5.0);
        assert_eq!(
            uncrowded_distance(&[0.0, 12.0], &[[1.0, 3.0]], &r).unwrap(),
            1.0
        );
        assert_eq!(uncrowded_distance(&[3.0, 4.0], &[], &r).unwrap(), 0.0);
        // dominated and outside: distance to the staircase clipped at the box
        assert_eq!(
            uncrowded_distance(&[12.0, 5.0], &[[1.0, 3.0]], &r).unwrap(),
            5f64.sqrt()
        );
        // front members outside the box dominate nothing inside it
        assert_eq!(
            uncrowded_distance(&[13.0, 12.0], &[[12.0, 1.0]], &r).unwrap(),
            5f64.sqrt()
        );
    }

    #[test]
    fn uhv_examples() {
        let r = r11();
        let front = [[1.0, 3.0], [3.0, 1.0]];
        assert_eq!(uhv(&front, &r).unwrap(), hv2d(&front, &r).unwrap());
        let s = [[1.0, 3.0], [2.0, 4.0], [3.0, 1.0]];
        assert_eq!(uhv(&s, &r).unwrap(), 96.0 - 1.0 / 3.0);
        // single solution at r: no hypervolume, ud is the box distance 0
        assert_eq!(uhv(&[[11.0, 11.0]], &r).unwrap(), 0.0);
        assert_eq!(uhv(&[[12.0, 11.0]], &r).unwrap(), -1.0);
    }

    #[test]
    fn smoothness_examples() {
        let line = [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]];
        assert_eq!(smoothness::<f64, _>(&line, &[0, 1, 2]).unwrap(), 1.0);
        let corner = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]];
        let sm: f64 = smoothness(&corner, &[0, 1, 2]).unwrap();
        assert!((sm - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let same = [[1.0, 1.0], [1.0, 1.0], [1.0, 1.0]];
        assert_eq!(smoothness::<f64, _>(&same, &[0, 1, 2]).unwrap(), 1.0);
        assert!(matches!(
            smoothness::<f64, _>(&line, &[0, 1]),
            Err(Error::TooFewPoints { got: 2, .. })
        ));
    }

    #[test]
    fn left_to_right_examples() {
        assert_eq!(left_to_right_order(&[[3.0, 1.0], [1.0, 3.0]]), vec![1, 0]);
        assert_eq!(
            left_to_right_order(&[[1.0, 3.0], [2.0, 2.0], [3.0, 1.0]]),
            vec![0, 1, 2]
        );
        assert_eq!(left_to_right_order(&[[1.0, 1.0], [1.0, 1.0]]), vec![0, 1]);
    }

    #[test]
    fn ghss_examples() {
        let pts = [[1.0, 9.0], [5.0, 5.0], [9.0, 1.0]];
        // Single contributions are 20, 36, 20. Best pairs both contain the middle
        // point (HV 44); the two extremes together only reach 36.
        let sel = ghss(&pts, &r11(), 2).unwrap();
        assert_eq!(sel, vec![1, 0]);
        let chosen: Vec<_> = sel.iter().map(|&i| pts[i]).collect();
        assert_eq!(hv2d(&chosen, &r11()).unwrap(), 44.0);
        assert_eq!(ghss(&pts, &r11(), 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(ghss(&pts, &r11(), 1).unwrap(), vec![1]);
        // dominated points add nothing, so selection stops early
        assert_eq!(
            ghss(&[[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]], &r11(), 2).unwrap(),
            vec![0]
        );
    }

    #[test]
    fn delta_hv_examples() {
        let r = r11();
        let f = [[1.0, 3.0], [3.0, 1.0]];
        assert_eq!(delta_hv(96.0, &f, &r).unwrap(), 0.0);
        assert_eq!(delta_hv(96.0, &[], &r).unwrap(), 96.0);
        assert_eq!(delta_hv(90.0, &f, &r).unwrap(), -6.0);
    }
}
