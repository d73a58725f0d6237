//! Bi-objective WFG1–WFG9 test problems.
//!
//! Variables `z_i` live in `[0, 2i]` (1-based). The first `k` are position-related,
//! the remaining `l` distance-related. With two objectives the fronts span
//! `f1 ∈ [0, 2]` and `f2 ∈ [0, 4]`.

use crate::error::{Error, Result};
use crate::problem::{MoProblem, Objectives};
use crate::scalar::Scalar;

const EPS: f64 = 1e-10;

fn c<T: Scalar>(v: f64) -> T {
    T::lit(v)
}

fn correct_to_01<T: Scalar>(a: T) -> T {
    let eps = c::<T>(EPS);
    if a <= T::zero() && a >= -eps {
        T::zero()
    } else if a >= T::one() && a <= T::one() + eps {
        T::one()
    } else {
        a
    }
}

// Shape functions for M = 2, parameterized by the single position value x.

fn linear<T: Scalar>(x: T) -> [T; 2] {
    [x, T::one() - x]
}

fn convex<T: Scalar>(x: T) -> [T; 2] {
    let a = x * T::FRAC_PI_2();
    [T::one() - a.cos(), T::one() - a.sin()]
}

fn concave<T: Scalar>(x: T) -> [T; 2] {
    let a = x * T::FRAC_PI_2();
    [a.sin(), a.cos()]
}

fn mixed<T: Scalar>(x: T, alpha: T, big_a: T) -> T {
    let tmp = c::<T>(2.0) * big_a * T::PI();
    correct_to_01((T::one() - x - (tmp * x + T::FRAC_PI_2()).cos() / tmp).powf(alpha))
}

fn disc<T: Scalar>(x: T, alpha: T, beta: T, big_a: T) -> T {
    let v = (big_a * x.powf(beta) * T::PI()).cos();
    correct_to_01(T::one() - x.powf(alpha) * v * v)
}

// Transformation functions.

fn b_poly<T: Scalar>(y: T, alpha: T) -> T {
    correct_to_01(y.powf(alpha))
}

fn b_flat<T: Scalar>(y: T, a: T, b: T, cc: T) -> T {
    let zero = T::zero();
    let one = T::one();
    let tmp1 = (y - b).floor().min(zero) * a * (b - y) / b;
    let tmp2 = (cc - y).floor().min(zero) * (one - a) * (y - cc) / (one - cc);
    correct_to_01(a + tmp1 - tmp2)
}

fn b_param<T: Scalar>(y: T, u: T, a: T, b: T, cc: T) -> T {
    let half = c::<T>(0.5);
    let v = a - (T::one() - c::<T>(2.0) * u) * ((half - u).floor() + a).abs();
    correct_to_01(y.powf(b + (cc - b) * v))
}

fn s_linear<T: Scalar>(y: T, a: T) -> T {
    correct_to_01((y - a).abs() / ((a - y).floor() + a).abs())
}

fn s_decept<T: Scalar>(y: T, a: T, b: T, cc: T) -> T {
    let one = T::one();
    let tmp1 = (y - a + b).floor() * (one - cc + (a - b) / b) / (a - b);
    let tmp2 = (a + b - y).floor() * (one - cc + (one - a - b) / b) / (one - a - b);
    correct_to_01(one + ((y - a).abs() - b) * (tmp1 + tmp2 + one / b))
}

fn s_multi<T: Scalar>(y: T, a: T, b: T, cc: T) -> T {
    let two = c::<T>(2.0);
    let tmp1 = (y - cc).abs() / (two * ((cc - y).floor() + cc));
    let tmp2 = (c::<T>(4.0) * a + two) * T::PI() * (c::<T>(0.5) - tmp1);
    correct_to_01((T::one() + tmp2.cos() + c::<T>(4.0) * b * tmp1 * tmp1) / (b + two))
}

fn r_sum<T: Scalar>(y: &[T], w: &[T]) -> T {
    let num: T = y.iter().zip(w).map(|(&yi, &wi)| yi * wi).sum();
    let den: T = w.iter().copied().sum();
    correct_to_01(num / den)
}

fn r_sum_unit<T: Scalar>(y: &[T]) -> T {
    correct_to_01(y.iter().copied().sum::<T>() / T::from_count(y.len()))
}

fn r_nonsep<T: Scalar>(y: &[T], a: usize) -> T {
    let len = y.len();
    let mut num = T::zero();
    for j in 0..len {
        num += y[j];
        for k in 0..a.saturating_sub(1) {
            num += (y[j] - y[(1 + j + k) % len]).abs();
        }
    }
    let half_a = a.div_ceil(2);
    let den = T::from_count(len) / T::from_count(a)
        * T::from_count(half_a)
        * T::from_count(1 + 2 * a - 2 * half_a);
    correct_to_01(num / den)
}

fn param_exponent_inputs<T: Scalar>() -> (T, T, T) {
    (c(0.98 / 49.98), c(0.02), c(50.0))
}

/// One of the nine WFG problems with two objectives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wfg {
    which: u8,
    k: usize,
    l: usize,
}

impl Wfg {
    /// `k` position and `l` distance variables. For two objectives `k` may be any positive
    /// value; WFG2 and WFG3 additionally need an even `l`.
    pub fn new(which: u8, k: usize, l: usize) -> Result<Self> {
        if !(1..=9).contains(&which) {
            return Err(Error::InvalidProblem(format!(
                "no WFG problem number {which}"
            )));
        }
        if k == 0 || l == 0 {
            return Err(Error::InvalidProblem(
                "WFG needs at least one position and one distance variable".into(),
            ));
        }
        if matches!(which, 2 | 3) && l % 2 != 0 {
            return Err(Error::InvalidProblem(format!(
                "WFG{which} needs an even number of distance variables"
            )));
        }
        Ok(Self { which, k, l })
    }

    /// The benchmark configuration: 24 variables, 4 of them position-related.
    pub fn standard(which: u8) -> Result<Self> {
        Self::new(which, 4, 20)
    }

    pub fn which(&self) -> u8 {
        self.which
    }

    pub fn position_vars(&self) -> usize {
        self.k
    }

    pub fn distance_vars(&self) -> usize {
        self.l
    }

    /// Upper domain bound `2i` of variable `i` (0-based index).
    pub fn upper_bound<T: Scalar>(&self, i: usize) -> T {
        T::from_count(2 * (i + 1))
    }

    /// Clamps `z` to the domain and normalizes to `[0, 1]`.
    fn normalize<T: Scalar>(&self, z: &[T]) -> Vec<T> {
        z.iter()
            .enumerate()
            .map(|(i, &zi)| {
                let ub = self.upper_bound::<T>(i);
                zi.max(T::zero()).min(ub) / ub
            })
            .collect()
    }

    /// A Pareto-optimal decision vector whose position variables are set from `position`
    /// (values in `[0, 1]`, one per position variable).
    pub fn optimal_solution<T: Scalar>(&self, position: &[T]) -> Vec<T> {
        assert_eq!(position.len(), self.k);
        let n = self.k + self.l;
        let mut y: Vec<T> = position.to_vec();
        y.resize(n, c(0.35));
        let (a, b, cc) = param_exponent_inputs::<T>();
        let exponent = |u: T| {
            let v = a - (T::one() - c::<T>(2.0) * u) * ((c::<T>(0.5) - u).floor() + a).abs();
            b + (cc - b) * v
        };
        match self.which {
            8 => {
                for i in self.k..n {
                    let u = r_sum_unit(&y[..i]);
                    y[i] = c::<T>(0.35).powf(T::one() / exponent(u));
                }
            }
            9 => {
                for i in (self.k..n - 1).rev() {
                    let u = r_sum_unit(&y[i + 1..]);
                    y[i] = c::<T>(0.35).powf(T::one() / exponent(u));
                }
            }
            _ => {}
        }
        y.iter()
            .enumerate()
            .map(|(i, &yi)| yi * self.upper_bound::<T>(i))
            .collect()
    }

    fn transform<T: Scalar>(&self, y: &mut Vec<T>) {
        let (k, n) = (self.k, self.k + self.l);
        let half = c::<T>(0.35);
        match self.which {
            1 => {
                for yi in &mut y[k..] {
                    *yi = s_linear(*yi, half);
                }
                for yi in &mut y[k..] {
                    *yi = b_flat(*yi, c(0.8), c(0.75), c(0.85));
                }
                for yi in y.iter_mut() {
                    *yi = b_poly(*yi, c(0.02));
                }
                let w: Vec<T> = (1..=n).map(|i| T::from_count(2 * i)).collect();
                *y = vec![r_sum(&y[..k], &w[..k]), r_sum(&y[k..], &w[k..])];
            }
            2 | 3 => {
                for yi in &mut y[k..] {
                    *yi = s_linear(*yi, half);
                }
                let mut reduced: Vec<T> = y[..k].to_vec();
                for pair in y[k..].chunks_exact(2) {
                    reduced.push(r_nonsep(pair, 2));
                }
                *y = vec![r_sum_unit(&reduced[..k]), r_sum_unit(&reduced[k..])];
            }
            4 => {
                for yi in y.iter_mut() {
                    *yi = s_multi(*yi, c(30.0), c(10.0), half);
                }
                *y = vec![r_sum_unit(&y[..k]), r_sum_unit(&y[k..])];
            }
            5 => {
                for yi in y.iter_mut() {
                    *yi = s_decept(*yi, half, c(0.001), c(0.05));
                }
                *y = vec![r_sum_unit(&y[..k]), r_sum_unit(&y[k..])];
            }
            6 => {
                for yi in &mut y[k..] {
                    *yi = s_linear(*yi, half);
                }
                *y = vec![r_nonsep(&y[..k], k), r_nonsep(&y[k..], n - k)];
            }
            7 => {
                let (a, b, cc) = param_exponent_inputs::<T>();
                let orig = y.clone();
                for i in 0..k {
                    y[i] = b_param(orig[i], r_sum_unit(&orig[i + 1..]), a, b, cc);
                }
                for yi in &mut y[k..] {
                    *yi = s_linear(*yi, half);
                }
                *y = vec![r_sum_unit(&y[..k]), r_sum_unit(&y[k..])];
            }
            8 => {
                let (a, b, cc) = param_exponent_inputs::<T>();
                let orig = y.clone();
                for i in k..n {
                    y[i] = b_param(orig[i], r_sum_unit(&orig[..i]), a, b, cc);
                }
                for yi in &mut y[k..] {
                    *yi = s_linear(*yi, half);
                }
                *y = vec![r_sum_unit(&y[..k]), r_sum_unit(&y[k..])];
            }
            9 => {
                let (a, b, cc) = param_exponent_inputs::<T>();
                let orig = y.clone();
                for i in 0..n - 1 {
                    y[i] = b_param(orig[i], r_sum_unit(&orig[i + 1..]), a, b, cc);
                }
                for yi in &mut y[..k] {
                    *yi = s_decept(*yi, half, c(0.001), c(0.05));
                }
                for yi in &mut y[k..] {
                    *yi = s_multi(*yi, c(30.0), c(95.0), half);
                }
                *y = vec![r_nonsep(&y[..k], k), r_nonsep(&y[k..], n - k)];
            }
            _ => unreachable!("validated in constructor"),
        }
    }

    fn shape<T: Scalar>(&self, x: T) -> [T; 2] {
        match self.which {
            1 => [convex(x)[0], mixed(x, T::one(), c(5.0))],
            2 => [convex(x)[0], disc(x, T::one(), T::one(), c(5.0))],
            3 => linear(x),
            _ => concave(x),
        }
    }
}

impl<T: Scalar> MoProblem<T> for Wfg {
    fn name(&self) -> String {
        format!("wfg{}", self.which)
    }

    fn dimension(&self) -> usize {
        self.k + self.l
    }

    fn init_bounds(&self) -> (Vec<T>, Vec<T>) {
        let n = self.k + self.l;
        (
            vec![T::zero(); n],
            (0..n).map(|i| self.upper_bound(i)).collect(),
        )
    }

    fn domain_bounds(&self) -> Option<(Vec<T>, Vec<T>)> {
        Some(MoProblem::<T>::init_bounds(self))
    }

    /// Inputs outside `[0, 2i]` are clamped to the domain before evaluation.
    fn objectives(&self, z: &[T]) -> Objectives<T> {
        let mut t = self.normalize(z);
        self.transform(&mut t);
        let (pos, dist) = (t[0], t[1]);
        // degeneracy constant A_1 = 1 for two objectives
        let x1 = dist.max(T::one()) * (pos - c(0.5)) + c(0.5);
        let h = self.shape(x1);
        [dist + c::<T>(2.0) * h[0], dist + c::<T>(4.0) * h[1]]
    }

    fn is_separable(&self) -> bool {
        !matches!(self.which, 6 | 9)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_transformations_at_known_points() {
        assert_eq!(s_linear(0.35f64, 0.35), 0.0);
        assert!((s_multi(0.35f64, 30.0, 10.0, 0.35)).abs() < 1e-12);
        assert!((s_decept(0.35f64, 0.35, 0.001, 0.05)).abs() < 1e-12);
        assert_eq!(b_poly(0.5f64, 1.0), 0.5);
        assert_eq!(b_flat(0.8f64, 0.8, 0.75, 0.85), 0.8);
        assert!((r_nonsep(&[0.3f64, 0.3, 0.3], 3) - 0.15).abs() < 1e-12);
        assert!((r_nonsep(&[0.3f64, 0.3, 0.3], 1) - 0.3).abs() < 1e-12);
        assert!((mixed(0.0f64, 1.0, 5.0) - 1.0).abs() < 1e-12);
        assert!(mixed(1.0f64, 1.0, 5.0).abs() < 1e-12);
        assert_eq!(disc(0.0f64, 1.0, 1.0, 5.0), 1.0);
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(Wfg::new(0, 4, 20).is_err());
        assert!(Wfg::new(10, 4, 20).is_err());
        assert!(Wfg::new(2, 4, 19).is_err());
        assert!(Wfg::new(4, 4, 19).is_ok());
    }

    #[test]
    fn separability_flags() {
        for which in 1..=9 {
            let w = Wfg::standard(which).unwrap();
            assert_eq!(MoProblem::<f64>::is_separable(&w), !matches!(which, 6 | 9));
        }
    }

    #[test]
    fn extreme_optimal_points() {
        let w = Wfg::standard(3).unwrap();
        let left = w.optimal_solution(&[0.0f64; 4]);
        let right = w.optimal_solution(&[1.0f64; 4]);
        let fl = w.objectives(&left);
        let fr = w.objectives(&right);
        assert!(fl[0].abs() < 1e-9 && (fl[1] - 4.0).abs() < 1e-9, "{fl:?}");
        assert!((fr[0] - 2.0).abs() < 1e-9 && fr[1].abs() < 1e-9, "{fr:?}");
    }

    #[test]
    fn clamps_out_of_domain_inputs() {
        let w = Wfg::standard(4).unwrap();
        let mut z = w.optimal_solution(&[0.5f64; 4]);
        let inside = w.objectives(&z);
        z[0] = -3.0;
        let clamped = {
            let mut zz = z.clone();
            zz[0] = 0.0;
            w.objectives(&zz)
        };
        assert_eq!(w.objectives(&z), clamped);
        assert_ne!(inside, clamped);
    }
}
