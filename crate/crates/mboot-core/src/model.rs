//! Quasi-log-likelihood families over a fixed-design dataset.
//!
//! Each family exposes the per-observation log-density `l_i(theta)`, its
//! gradient and (for smooth families) its Hessian, summed over observations.
//! The model may be misspecified relative to the law that produced the data;
//! nothing here assumes correct specification.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::format;
use nalgebra::{DMatrix, DVector};

use crate::dataset::{Dataset, Theta};
use crate::error::{Error, Result};

/// Cumulant function of a canonical-link exponential family.
///
/// The log-density in the natural parameter `v` is `y * v - d(v)`; the four
/// built-in variants are the usual Gaussian / negative-exponential / Poisson /
/// Bernoulli cumulants, and `Custom` takes `(d, d', d'')` directly.
#[derive(Debug, Clone, Copy)]
pub enum CanonicalLink {
    /// `N(v, 1)`: `d(v) = v^2 / 2`.
    Gaussian,
    /// `Exp(-v)` for `v < 0`: `d(v) = -log(-v)`.
    NegativeExponential,
    /// `Pois(e^v)`: `d(v) = e^v`.
    Poisson,
    /// `Binom(1, e^v / (1 + e^v))`: `d(v) = log(1 + e^v)`.
    Bernoulli,
    /// User-supplied convex cumulant with its first two derivatives.
    Custom {
        d: fn(f64) -> f64,
        d1: fn(f64) -> f64,
        d2: fn(f64) -> f64,
    },
}

/// `log(1 + e^v)` without overflow for large `v`.
fn log1p_exp(v: f64) -> f64 {
    if v > 0.0 {
        v + (-v).exp().ln_1p()
    } else {
        v.exp().ln_1p()
    }
}

/// Logistic function `e^v / (1 + e^v)`.
pub fn sigmoid(v: f64) -> f64 {
    if v >= 0.0 {
        1.0 / (1.0 + (-v).exp())
    } else {
        let e = v.exp();
        e / (1.0 + e)
    }
}

impl CanonicalLink {
    /// Whether `v` lies in the interior of the natural-parameter domain.
    pub fn in_domain(&self, v: f64) -> bool {
        match self {
            CanonicalLink::NegativeExponential => v < 0.0,
            _ => v.is_finite(),
        }
    }

    pub fn d(&self, v: f64) -> f64 {
        match self {
            CanonicalLink::Gaussian => 0.5 * v * v,
            CanonicalLink::NegativeExponential => -(-v).ln(),
            CanonicalLink::Poisson => v.exp(),
            CanonicalLink::Bernoulli => log1p_exp(v),
            CanonicalLink::Custom { d, .. } => d(v),
        }
    }

    pub fn d1(&self, v: f64) -> f64 {
        match self {
            CanonicalLink::Gaussian => v,
            CanonicalLink::NegativeExponential => -1.0 / v,
            CanonicalLink::Poisson => v.exp(),
            CanonicalLink::Bernoulli => sigmoid(v),
            CanonicalLink::Custom { d1, .. } => d1(v),
        }
    }

    pub fn d2(&self, v: f64) -> f64 {
        match self {
            CanonicalLink::Gaussian => 1.0,
            CanonicalLink::NegativeExponential => 1.0 / (v * v),
            CanonicalLink::Poisson => v.exp(),
            CanonicalLink::Bernoulli => {
                let s = sigmoid(v);
                s * (1.0 - s)
            }
            CanonicalLink::Custom { d2, .. } => d2(v),
        }
    }
}

/// The quasi-likelihood family used for fitting.
#[derive(Debug, Clone, Copy)]
pub enum Family {
    /// `l_i = -(y_i - psi_i' theta)^2 / 2` (unit-variance Gaussian regression).
    GaussianLinear,
    /// Logistic regression with 0/1 responses; canonical Bernoulli link.
    BernoulliGlm,
    /// Canonical-link GLM with an explicit cumulant.
    GlmCanonical(CanonicalLink),
    /// Linear quantile regression through the check loss
    /// `rho_tau(x) = x (tau - 1{x < 0})`; non-smooth.
    Quantile { tau: f64 },
}

impl Family {
    /// Smooth families admit Hessians and Newton fitting; the quantile family
    /// does not.
    pub fn is_smooth(&self) -> bool {
        !matches!(self, Family::Quantile { .. })
    }

    fn link(&self) -> Option<CanonicalLink> {
        match self {
            Family::BernoulliGlm => Some(CanonicalLink::Bernoulli),
            Family::GlmCanonical(link) => Some(*link),
            _ => None,
        }
    }
}

/// A family bound to a dataset. Immutable; all operations are pure.
#[derive(Debug, Clone)]
pub struct Model {
    family: Family,
    dataset: Dataset,
}

impl Model {
    /// Binds a family to data, validating family-specific invariants.
    pub fn new(family: Family, dataset: Dataset) -> Result<Self> {
        match family {
            Family::BernoulliGlm => {
                if dataset.y().iter().any(|&v| v != 0.0 && v != 1.0) {
                    return Err(Error::InvalidModel(
                        "bernoulli_glm requires all responses in {0, 1}".into(),
                    ));
                }
            }
            Family::Quantile { tau } => {
                if !(tau > 0.0 && tau < 1.0) {
                    return Err(Error::InvalidModel(format!(
                        "quantile level tau must lie in (0, 1), got {tau}"
                    )));
                }
            }
            _ => {}
        }
        Ok(Self { family, dataset })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn dataset(&self) -> &Dataset {
        &self.dataset
    }

    pub fn n(&self) -> usize {
        self.dataset.n()
    }

    pub fn p(&self) -> usize {
        self.dataset.p()
    }

    fn check_theta(&self, theta: &Theta) -> Result<()> {
        if theta.len() != self.p() {
            return Err(Error::DomainViolation(format!(
                "theta has dimension {}, model has p = {}",
                theta.len(),
                self.p()
            )));
        }
        Ok(())
    }

    /// Per-observation log-density at linear predictor `v`.
    fn obs_log_lik(&self, y: f64, v: f64) -> Result<f64> {
        match &self.family {
            Family::GaussianLinear => {
                let r = y - v;
                Ok(-0.5 * r * r)
            }
            Family::Quantile { tau } => {
                let x = y - v;
                Ok(-x * (tau - f64::from(x < 0.0)))
            }
            _ => {
                let link = self.family.link().expect("glm family");
                if !link.in_domain(v) {
                    return Err(Error::DomainViolation(format!(
                        "linear predictor {v} outside the natural-parameter domain"
                    )));
                }
                Ok(y * v - link.d(v))
            }
        }
    }

    /// d/dv of the per-observation log-density.
    fn obs_score(&self, y: f64, v: f64) -> Result<f64> {
        match &self.family {
            Family::GaussianLinear => Ok(y - v),
            // Check-loss subgradient with 1{0 < 0} = 0 at the kink.
            Family::Quantile { tau } => Ok(tau - f64::from(y - v < 0.0)),
            _ => {
                let link = self.family.link().expect("glm family");
                if !link.in_domain(v) {
                    return Err(Error::DomainViolation(format!(
                        "linear predictor {v} outside the natural-parameter domain"
                    )));
                }
                Ok(y - link.d1(v))
            }
        }
    }

    /// d^2/dv^2 of the per-observation log-density (smooth families).
    fn obs_curvature(&self, v: f64) -> Result<f64> {
        match &self.family {
            Family::GaussianLinear => Ok(-1.0),
            Family::Quantile { .. } => Err(Error::Unsupported(
                "hessian of the non-smooth quantile family",
            )),
            _ => {
                let link = self.family.link().expect("glm family");
                if !link.in_domain(v) {
                    return Err(Error::DomainViolation(format!(
                        "linear predictor {v} outside the natural-parameter domain"
                    )));
                }
                Ok(-link.d2(v))
            }
        }
    }

    /// Log-likelihood `L(theta) = sum_i l_i(theta)`.
    pub fn log_lik(&self, theta: &Theta) -> Result<f64> {
        self.log_lik_weighted(theta, None)
    }

    /// Multiplier-weighted log-likelihood `sum_i l_i(theta) u_i`.
    ///
    /// `weights = None` means the unweighted sum.
    pub fn log_lik_weighted(&self, theta: &Theta, weights: Option<&[f64]>) -> Result<f64> {
        self.check_theta(theta)?;
        let eta = self.dataset.predictors(theta);
        let y = self.dataset.y();
        let mut total = 0.0;
        for i in 0..self.n() {
            let li = self.obs_log_lik(y[i], eta[i])?;
            total += weights.map_or(li, |u| li * u[i]);
        }
        Ok(total)
    }

    /// Score vector `grad L(theta)`.
    pub fn score(&self, theta: &Theta) -> Result<DVector<f64>> {
        self.score_weighted(theta, None)
    }

    /// Weighted score `grad sum_i l_i(theta) u_i`.
    pub fn score_weighted(&self, theta: &Theta, weights: Option<&[f64]>) -> Result<DVector<f64>> {
        self.check_theta(theta)?;
        let eta = self.dataset.predictors(theta);
        let y = self.dataset.y();
        let psi = self.dataset.psi();
        let mut g = DVector::zeros(self.p());
        for i in 0..self.n() {
            let mut s = self.obs_score(y[i], eta[i])?;
            if let Some(u) = weights {
                s *= u[i];
            }
            g.axpy(s, &psi.row(i).transpose(), 1.0);
        }
        Ok(g)
    }

    /// Per-observation score rows: row `i` is `grad l_i(theta)` transposed.
    pub fn score_rows(&self, theta: &Theta) -> Result<DMatrix<f64>> {
        self.check_theta(theta)?;
        let eta = self.dataset.predictors(theta);
        let y = self.dataset.y();
        let psi = self.dataset.psi();
        let mut rows = DMatrix::zeros(self.n(), self.p());
        for i in 0..self.n() {
            let s = self.obs_score(y[i], eta[i])?;
            for j in 0..self.p() {
                rows[(i, j)] = s * psi[(i, j)];
            }
        }
        Ok(rows)
    }

    /// Hessian `grad^2 L(theta)`; errors for the non-smooth quantile family.
    pub fn hessian(&self, theta: &Theta) -> Result<DMatrix<f64>> {
        self.hessian_weighted(theta, None)
    }

    /// Weighted Hessian `grad^2 sum_i l_i(theta) u_i`.
    pub fn hessian_weighted(&self, theta: &Theta, weights: Option<&[f64]>) -> Result<DMatrix<f64>> {
        self.check_theta(theta)?;
        let eta = self.dataset.predictors(theta);
        let psi = self.dataset.psi();
        let p = self.p();
        let mut h = DMatrix::zeros(p, p);
        for i in 0..self.n() {
            let mut c = self.obs_curvature(eta[i])?;
            if let Some(u) = weights {
                c *= u[i];
            }
            // h += c * psi_i psi_i', filling both triangles to keep exact symmetry
            for a in 0..p {
                let ca = c * psi[(i, a)];
                for b in a..p {
                    let v = ca * psi[(i, b)];
                    h[(a, b)] += v;
                    if a != b {
                        h[(b, a)] = h[(a, b)];
                    }
                }
            }
        }
        // mirror once more so both triangles are bit-identical
        for a in 0..p {
            for b in (a + 1)..p {
                h[(b, a)] = h[(a, b)];
            }
        }
        Ok(h)
    }
}
