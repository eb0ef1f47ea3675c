//! Multiplier-bootstrap engine: weight laws, the conditional distribution of
//! the square-root bootstrap likelihood ratio, and its (plain and smoothed)
//! upper quantiles.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::dataset::Theta;
use crate::error::{Error, Result};
use crate::model::Model;
use crate::optim::{bootstrap_lr_statistic, WeightVector};
use crate::rng::{stream, sub_seed};

/// Distribution of the i.i.d. multiplier weights; every law has mean 1 and
/// variance 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightLaw {
    /// `2 * Bernoulli(0.5)`: weights in {0, 2}.
    RademacherShifted,
    /// `N(1, 1)`.
    Gaussian,
    /// `Exp(1)`.
    Exponential,
}

impl WeightLaw {
    fn draw(self, rng: &mut impl Rng) -> f64 {
        match self {
            WeightLaw::RademacherShifted => {
                if rng.random::<bool>() {
                    2.0
                } else {
                    0.0
                }
            }
            WeightLaw::Gaussian => {
                let z: f64 = StandardNormal.sample(rng);
                1.0 + z
            }
            WeightLaw::Exponential => {
                let e: f64 = Exp1.sample(rng);
                e
            }
        }
    }
}

/// Draws `n` i.i.d. multiplier weights; deterministic in `seed`.
pub fn sample_weights(law: WeightLaw, n: usize, seed: u64) -> WeightVector {
    let mut rng = stream(seed, &[]);
    let u: Vec<f64> = (0..n).map(|_| law.draw(&mut rng)).collect();
    WeightVector::new(u).expect("weight laws produce finite values")
}

/// `B` draws of `sqrt(2 L°(theta°) - 2 L°(theta_hat))`, conditional on one
/// dataset, sorted ascending.
#[derive(Debug, Clone)]
pub struct BootstrapSample {
    stats: Vec<f64>,
    law: WeightLaw,
    seed: u64,
    resample_count: usize,
}

impl BootstrapSample {
    /// Wraps raw statistics (sorting them), rejecting negative or non-finite
    /// values. Mostly useful for tests and for rebuilding from disk.
    pub fn from_stats(
        mut stats: Vec<f64>,
        law: WeightLaw,
        seed: u64,
        resample_count: usize,
    ) -> Result<Self> {
        if stats.is_empty() {
            return Err(Error::InvalidModel("empty bootstrap sample".into()));
        }
        if stats.iter().any(|s| !s.is_finite() || *s < 0.0) {
            return Err(Error::InvalidModel(
                "bootstrap statistics must be finite and nonnegative".into(),
            ));
        }
        stats.sort_unstable_by(f64::total_cmp);
        Ok(Self {
            stats,
            law,
            seed,
            resample_count,
        })
    }

    /// Sorted values of the square-root bootstrap likelihood ratio.
    pub fn stats(&self) -> &[f64] {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.stats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stats.is_empty()
    }

    pub fn law(&self) -> WeightLaw {
        self.law
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of degenerate draws that had to be replaced.
    pub fn resample_count(&self) -> usize {
        self.resample_count
    }
}

/// Builds the conditional bootstrap sample for a fitted model.
///
/// Draw `b` uses the sub-seed `(seed, b, retry)`; degenerate draws are
/// resampled with `retry` bumped, so the result does not depend on whether
/// draws run sequentially or in parallel. More than `B` resamples in total
/// abort with a pathological-sample error.
pub fn draw_bootstrap_sample(
    model: &Model,
    theta_hat: &Theta,
    law: WeightLaw,
    b: usize,
    seed: u64,
) -> Result<BootstrapSample> {
    if b == 0 {
        return Err(Error::InvalidModel("need at least one bootstrap draw".into()));
    }
    let n = model.n();
    let mut stats = Vec::with_capacity(b);
    let mut resample_count = 0usize;
    for draw in 0..b {
        let mut retry = 0u64;
        loop {
            let u = sample_weights(law, n, sub_seed(seed, &[draw as u64, retry]));
            match bootstrap_lr_statistic(model, &u, theta_hat) {
                Ok(lr) => {
                    stats.push((2.0 * lr).max(0.0).sqrt());
                    break;
                }
                Err(Error::DegenerateDraw(_)) => {
                    resample_count += 1;
                    if resample_count > b {
                        return Err(Error::PathologicalSample {
                            resamples: resample_count,
                            budget: b,
                        });
                    }
                    retry += 1;
                }
                Err(e) => return Err(e),
            }
        }
    }
    BootstrapSample::from_stats(stats, law, seed, resample_count)
}

/// Like [`draw_bootstrap_sample`] but with every weight forced to 1; all
/// statistics are then exactly zero. Calibration hook for tests and the CLI.
pub fn draw_bootstrap_sample_unit_weights(
    model: &Model,
    theta_hat: &Theta,
    b: usize,
) -> Result<BootstrapSample> {
    if b == 0 {
        return Err(Error::InvalidModel("need at least one bootstrap draw".into()));
    }
    let ones = WeightVector::ones(model.n());
    let mut stats = Vec::with_capacity(b);
    for _ in 0..b {
        let lr = bootstrap_lr_statistic(model, &ones, theta_hat)?;
        stats.push((2.0 * lr).max(0.0).sqrt());
    }
    BootstrapSample::from_stats(stats, WeightLaw::RademacherShifted, 0, 0)
}

/// Upper-alpha empirical quantile on a sorted slice: the smallest value `z`
/// in the sample with `#{s > z} / B <= alpha`, i.e. the `ceil(B(1-alpha))`-th
/// ascending order statistic.
pub fn order_statistic_quantile(sorted: &[f64], alpha: f64) -> f64 {
    assert!(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    assert!(!sorted.is_empty(), "empty sample");
    let b = sorted.len() as f64;
    let target = b * (1.0 - alpha);
    // guard against directed rounding in b * (1 - alpha)
    let rounded = target.round();
    let m = if (target - rounded).abs() <= 1e-9 * b.max(1.0) {
        rounded as usize
    } else {
        target.ceil() as usize
    };
    sorted[m.clamp(1, sorted.len()) - 1]
}

/// Bootstrap quantile `z_alpha°`: upper-alpha quantile of the sample.
pub fn bootstrap_quantile(sample: &BootstrapSample, alpha: f64) -> f64 {
    order_statistic_quantile(&sample.stats, alpha)
}

/// C3 polynomial step: 0 for `t <= 0`, 1 for `t >= 1`, and the degree-7
/// smoothstep `35t^4 - 84t^5 + 70t^6 - 20t^7` in between.
fn smoothstep3(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let t2 = t * t;
        t2 * t2 * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)))
    }
}

/// Smoothed indicator `g_Delta(x, z) = g((x^2 - z^2) / (2 Delta z))`.
///
/// Sandwiched by `1{x - z > Delta} <= g_Delta(x, z) <= 1{x - z > 0}`.
pub fn smooth_indicator(x: f64, z: f64, delta: f64) -> f64 {
    assert!(x >= 0.0, "x must be nonnegative");
    assert!(z > 0.0 && delta > 0.0, "z and delta must be positive");
    smoothstep3((x * x - z * z) / (2.0 * delta * z))
}

/// Smoothed bootstrap quantile: the smallest `z >= 0` such that
/// `mean_b g_Delta(s_b, z) <= alpha`, found by bisection to 1e-8.
pub fn smoothed_bootstrap_quantile(sample: &BootstrapSample, alpha: f64, delta: f64) -> f64 {
    assert!(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    assert!(delta > 0.0 && delta <= 0.22, "delta must lie in (0, 0.22]");
    let mean_g = |z: f64| -> f64 {
        let sum: f64 = sample
            .stats
            .iter()
            .map(|&s| smooth_indicator(s, z, delta))
            .sum();
        sum / sample.stats.len() as f64
    };
    let mut hi = *sample.stats.last().expect("nonempty sample");
    if hi <= 0.0 {
        return 0.0;
    }
    // mean_g is strictly decreasing in z, is <= alpha at z = s_max (where it
    // vanishes), and the answer is 0 if even z -> 0+ satisfies the bound
    let mut lo = 0.0f64;
    let eps_z = 1e-12 * hi;
    if mean_g(eps_z) <= alpha {
        return 0.0;
    }
    while hi - lo > 1e-8 {
        let mid = 0.5 * (lo + hi);
        if mean_g(mid) <= alpha {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
