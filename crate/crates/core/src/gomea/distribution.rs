use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Gaussian sampling model for one FOS element.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementDistribution<T> {
    pub element: Vec<usize>,
    pub mean: Vec<T>,
    /// Row-major `s × s` sampling covariance, already scaled by `multiplier²`.
    pub covariance: Vec<T>,
    pub multiplier: T,
    /// Unscaled per-variable standard deviations of the estimate.
    pub std_dev: Vec<T>,
    /// Unscaled, unregularized covariance estimate the sampling covariance derives from.
    base: Vec<T>,
    cholesky: Vec<T>,
}

fn cholesky<T: Scalar>(a: &[T], s: usize) -> Option<Vec<T>> {
    let mut l = vec![T::zero(); s * s];
    for i in 0..s {
        for j in 0..=i {
            let mut sum = a[i * s + j];
            for k in 0..j {
                sum -= l[i * s + k] * l[j * s + k];
            }
            if i == j {
                if !(sum > T::zero()) {
                    return None;
                }
                l[i * s + i] = sum.sqrt();
            } else {
                l[i * s + j] = sum / l[j * s + j];
            }
        }
    }
    Some(l)
}

/// Maximum-likelihood Gaussian over the `element` variables of `selection`.
///
/// A selection with no more individuals than the element has variables cannot span the
/// element, so only the variances are estimated and the covariances are set to zero.
///
/// The covariance gets `1e-10 · trace` added to its diagonal and is scaled by
/// `multiplier²`. If it is still not positive definite the diagonal of sample
/// variances is used instead.
pub fn estimate_distribution<T: Scalar, G: AsRef<[T]>>(
    selection: &[G],
    element: &[usize],
    multiplier: T,
) -> Result<ElementDistribution<T>> {
    let (mean, cov) = ml_estimate(selection, element)?;
    Ok(finish(element, mean, cov, multiplier))
}

/// Like [`estimate_distribution`], but the covariance is a running estimate: the
/// maximum-likelihood covariance around the new mean is blended into the previous one
/// with weight `eta`. `eta = 1` gives the plain estimate.
pub fn update_distribution<T: Scalar, G: AsRef<[T]>>(
    selection: &[G],
    prev: &ElementDistribution<T>,
    multiplier: T,
    eta: T,
) -> Result<ElementDistribution<T>> {
    let (mean, ml) = ml_estimate(selection, &prev.element)?;
    let cov = if prev.base.len() == ml.len() {
        prev.base
            .iter()
            .zip(&ml)
            .map(|(&old, &new)| (T::one() - eta) * old + eta * new)
            .collect()
    } else {
        ml
    };
    Ok(finish(&prev.element, mean, cov, multiplier))
}

fn ml_estimate<T: Scalar, G: AsRef<[T]>>(
    selection: &[G],
    element: &[usize],
) -> Result<(Vec<T>, Vec<T>)> {
    if selection.len() < 2 {
        return Err(Error::TooFewPoints {
            what: "distribution estimate",
            required: 2,
            got: selection.len(),
        });
    }
    let s = element.len();
    let count = T::from_count(selection.len());
    let mut mean = vec![T::zero(); s];
    for g in selection {
        let g = g.as_ref();
        for (m, &i) in mean.iter_mut().zip(element) {
            *m += g[i];
        }
    }
    for m in &mut mean {
        *m /= count;
    }
    let mut cov = vec![T::zero(); s * s];
    for g in selection {
        let g = g.as_ref();
        for a in 0..s {
            let da = g[element[a]] - mean[a];
            for b in 0..=a {
                cov[a * s + b] += da * (g[element[b]] - mean[b]);
            }
        }
    }
    let full = selection.len() > s;
    for a in 0..s {
        for b in 0..=a {
            let v = if full || a == b {
                cov[a * s + b] / count
            } else {
                T::zero()
            };
            cov[a * s + b] = v;
            cov[b * s + a] = v;
        }
    }
    Ok((mean, cov))
}

fn finish<T: Scalar>(
    element: &[usize],
    mean: Vec<T>,
    base: Vec<T>,
    multiplier: T,
) -> ElementDistribution<T> {
    let s = element.len();
    let std_dev: Vec<T> = (0..s)
        .map(|a| base[a * s + a].max(T::zero()).sqrt())
        .collect();
    let trace: T = (0..s).map(|a| base[a * s + a]).sum();
    let jitter = T::lit(1e-10) * trace;
    let scale = multiplier * multiplier;
    let mut cov = base.clone();
    for a in 0..s {
        cov[a * s + a] += jitter;
    }
    for v in &mut cov {
        *v *= scale;
    }
    let chol = match cholesky(&cov, s) {
        Some(l) => l,
        None => {
            let mut diag = vec![T::zero(); s * s];
            let mut l = vec![T::zero(); s * s];
            for a in 0..s {
                let var = std_dev[a] * std_dev[a] * scale;
                diag[a * s + a] = var;
                l[a * s + a] = var.sqrt();
            }
            cov = diag;
            l
        }
    };
    ElementDistribution {
        element: element.to_vec(),
        mean,
        covariance: cov,
        multiplier,
        std_dev,
        base,
        cholesky: chol,
    }
}

impl<T: Scalar> ElementDistribution<T> {
    pub fn dim(&self) -> usize {
        self.element.len()
    }

    /// Draws one vector of element values.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<T> {
        let s = self.dim();
        let z: Vec<T> = (0..s)
            .map(|_| T::lit(rng.sample::<f64, _>(StandardNormal)))
            .collect();
        (0..s)
            .map(|a| {
                let mut v = self.mean[a];
                for b in 0..=a {
                    v += self.cholesky[a * s + b] * z[b];
                }
                v
            })
            .collect()
    }

    /// Largest absolute deviation of `point` from the mean, in units of the estimated
    /// per-variable standard deviation. Variables with zero spread are ignored.
    pub fn standard_deviation_ratio(&self, point: &[T]) -> T {
        point
            .iter()
            .zip(&self.mean)
            .zip(&self.std_dev)
            .filter(|(_, &sd)| sd > T::zero())
            .map(|((&x, &m), &sd)| ((x - m) / sd).abs())
            .fold(T::zero(), T::max)
    }
}
