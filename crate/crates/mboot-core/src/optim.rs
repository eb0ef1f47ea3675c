//! Quasi-MLE solvers: damped Newton ascent with a closed-form path for the
//! Gaussian linear family, plus likelihood-ratio statistics in the data world
//! and the bootstrap world.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use nalgebra::{Cholesky, DMatrix, DVector};

use crate::dataset::Theta;
use crate::error::{Error, Result};
use crate::model::{Family, Model};

/// Parameter box `||theta||_inf <= THETA_BOX` used as the compact domain for
/// GLM families; iterates escaping it are treated as degenerate.
pub const THETA_BOX: f64 = 50.0;

const MAX_ITER: usize = 200;
const MAX_HALVINGS: usize = 30;

/// Gradient-norm convergence tolerance, scaled with the O(n) size of `L`.
pub fn grad_tolerance(n: usize) -> f64 {
    1e-10 * (n as f64).max(1.0)
}

/// Multiplier weights for one bootstrap draw (or the degenerate `u = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Builds a weight vector, rejecting non-finite or empty input.
    pub fn new(u: Vec<f64>) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::InvalidModel("empty weight vector".into()));
        }
        if u.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidModel("non-finite multiplier weight".into()));
        }
        Ok(Self(u))
    }

    /// The deterministic weights `u = 1` under which the bootstrap world
    /// collapses onto the data world.
    pub fn ones(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// A converged (or best-effort) maximizer with its attained log-likelihood.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub theta_hat: Theta,
    pub loglik_at_max: f64,
    pub iterations: usize,
    pub grad_norm: f64,
    pub converged: bool,
}

/// Computes the quasi-MLE `argmax L(theta)`.
///
/// Gaussian linear models are solved by normal equations; other smooth
/// families by damped Newton from the origin. The quantile family has a
/// non-smooth objective and is not supported here.
pub fn fit_mle(model: &Model) -> Result<FitResult> {
    match model.family() {
        Family::GaussianLinear => fit_gaussian(model, None),
        Family::Quantile { .. } => Err(Error::Unsupported(
            "quantile-family MLE (non-smooth objective)",
        )),
        _ => newton_fit(model, None, &Theta::zeros(model.p()), false),
    }
}

/// Computes the weighted quasi-MLE `argmax sum_i l_i(theta) u_i`.
pub fn fit_weighted_mle(model: &Model, u: &WeightVector) -> Result<FitResult> {
    check_weights(model, u)?;
    match model.family() {
        Family::GaussianLinear => fit_gaussian(model, Some(u.as_slice())),
        Family::Quantile { .. } => Err(Error::Unsupported(
            "quantile-family MLE (non-smooth objective)",
        )),
        _ => newton_fit(model, Some(u.as_slice()), &Theta::zeros(model.p()), true),
    }
}

/// Likelihood-ratio statistic `L(theta_hat) - L(theta0) >= 0`.
pub fn lr_statistic(model: &Model, theta0: &Theta) -> Result<f64> {
    let fit = fit_mle(model)?;
    Ok(fit.loglik_at_max - model.log_lik(theta0)?)
}

/// Bootstrap likelihood-ratio statistic `L°(theta°) - L°(theta_hat)`, where
/// `theta_hat` must be the unweighted MLE and `L°` the `u`-weighted
/// log-likelihood. The weighted fit is warm-started at `theta_hat`.
pub fn bootstrap_lr_statistic(model: &Model, u: &WeightVector, theta_hat: &Theta) -> Result<f64> {
    check_weights(model, u)?;
    let fit = match model.family() {
        Family::GaussianLinear => fit_gaussian(model, Some(u.as_slice()))?,
        Family::Quantile { .. } => {
            return Err(Error::Unsupported(
                "quantile-family MLE (non-smooth objective)",
            ))
        }
        _ => newton_fit(model, Some(u.as_slice()), theta_hat, true)?,
    };
    Ok(fit.loglik_at_max - model.log_lik_weighted(theta_hat, Some(u.as_slice()))?)
}

fn check_weights(model: &Model, u: &WeightVector) -> Result<()> {
    if u.len() != model.n() {
        return Err(Error::InvalidModel(format!(
            "weight vector has length {}, dataset has n = {}",
            u.len(),
            model.n()
        )));
    }
    if u.as_slice().iter().all(|&v| v == 0.0) {
        return Err(Error::DegenerateDraw("all multiplier weights are zero"));
    }
    Ok(())
}

/// Closed-form (weighted) least squares via normal equations with one step of
/// iterative refinement. The Cholesky factorization doubles as the positive
/// definiteness check on `Psi' U Psi`.
fn fit_gaussian(model: &Model, weights: Option<&[f64]>) -> Result<FitResult> {
    let psi = model.dataset().psi();
    let y = model.dataset().y();
    let (n, p) = (model.n(), model.p());

    let mut m = DMatrix::<f64>::zeros(p, p);
    let mut b = DVector::<f64>::zeros(p);
    for i in 0..n {
        let w = weights.map_or(1.0, |u| u[i]);
        if w == 0.0 {
            continue;
        }
        for a in 0..p {
            let wa = w * psi[(i, a)];
            b[a] += wa * y[i];
            for c in a..p {
                m[(a, c)] += wa * psi[(i, c)];
            }
        }
    }
    for a in 0..p {
        for c in (a + 1)..p {
            m[(c, a)] = m[(a, c)];
        }
    }

    let chol = Cholesky::new(m.clone()).ok_or(if weights.is_some() {
        Error::DegenerateDraw("weighted design Psi' U Psi is not positive definite")
    } else {
        Error::SingularMatrix("design matrix Psi' Psi")
    })?;

    let mut theta = chol.solve(&b);
    let tol = grad_tolerance(n);
    // Refinement keeps the gradient residual well below tolerance even on
    // badly conditioned polynomial designs.
    let mut grad_norm = (&b - &m * &theta).norm();
    for _ in 0..8 {
        if grad_norm <= tol {
            break;
        }
        theta += chol.solve(&(&b - &m * &theta));
        grad_norm = (&b - &m * &theta).norm();
    }
    if grad_norm > tol {
        return Err(Error::NonConvergence {
            iterations: 1,
            grad_norm,
            last_iterate: theta.iter().copied().collect(),
        });
    }

    let theta_hat = Theta::new(theta)?;
    let loglik_at_max = model.log_lik_weighted(&theta_hat, weights)?;
    Ok(FitResult {
        theta_hat,
        loglik_at_max,
        iterations: 1,
        grad_norm,
        converged: true,
    })
}

/// Damped Newton ascent: full step, halved until the objective does not
/// decrease; the negated Hessian is ridge-damped when its Cholesky fails.
fn newton_fit(
    model: &Model,
    weights: Option<&[f64]>,
    init: &Theta,
    weighted_context: bool,
) -> Result<FitResult> {
    let p = model.p();
    let tol = grad_tolerance(model.n());
    let degenerate = |reason: &'static str, iterations: usize, grad_norm: f64, t: &DVector<f64>| {
        if weighted_context {
            Error::DegenerateDraw(reason)
        } else {
            Error::NonConvergence {
                iterations,
                grad_norm,
                last_iterate: t.iter().copied().collect(),
            }
        }
    };

    let mut theta = init.coords().clone();
    let mut ll = model.log_lik_weighted(init, weights)?;

    for iter in 1..=MAX_ITER {
        let cur = Theta::new(theta.clone())?;
        let g = model.score_weighted(&cur, weights)?;
        let grad_norm = g.norm();
        if grad_norm <= tol {
            return Ok(FitResult {
                theta_hat: cur,
                loglik_at_max: ll,
                iterations: iter - 1,
                grad_norm,
                converged: true,
            });
        }

        let neg_h = -model.hessian_weighted(&cur, weights)?;
        let chol = match Cholesky::new(neg_h.clone()) {
            Some(c) => c,
            None => {
                let ridge = 1e-8 * neg_h.trace() / p as f64;
                if !(ridge > 0.0) {
                    return Err(degenerate(
                        "weighted Hessian has no ascent direction",
                        iter,
                        grad_norm,
                        &theta,
                    ));
                }
                let damped = &neg_h + DMatrix::identity(p, p) * ridge;
                Cholesky::new(damped).ok_or_else(|| {
                    degenerate(
                        "weighted Hessian is indefinite after ridge damping",
                        iter,
                        grad_norm,
                        &theta,
                    )
                })?
            }
        };
        let direction = chol.solve(&g);

        let mut accepted = false;
        let mut step = 1.0;
        for _ in 0..=MAX_HALVINGS {
            let cand = &theta + &direction * step;
            if let Ok(t) = Theta::new(cand.clone()) {
                if let Ok(cand_ll) = model.log_lik_weighted(&t, weights) {
                    if cand_ll >= ll {
                        theta = cand;
                        ll = cand_ll;
                        accepted = true;
                        break;
                    }
                }
            }
            step *= 0.5;
        }
        if !accepted {
            return Err(degenerate(
                "no ascent step along the Newton direction",
                iter,
                grad_norm,
                &theta,
            ));
        }
        if theta.iter().fold(0.0f64, |m, v| m.max(v.abs())) > THETA_BOX {
            return Err(degenerate(
                "iterate escaped the parameter box",
                iter,
                grad_norm,
                &theta,
            ));
        }
    }

    let cur = Theta::new(theta.clone())?;
    let grad_norm = model.score_weighted(&cur, weights)?.norm();
    Err(Error::NonConvergence {
        iterations: MAX_ITER,
        grad_norm,
        last_iterate: theta.iter().copied().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Dataset;
    use crate::model::CanonicalLink;
    use alloc::vec;
    use approx::assert_relative_eq;
    use rand::Rng;

    fn gaussian_model(y: &[f64], rows: &[Vec<f64>]) -> Model {
        Model::new(Family::GaussianLinear, Dataset::from_rows(y, rows).unwrap()).unwrap()
    }

    fn intercept_only_logistic(y: &[f64]) -> Model {
        let rows: Vec<Vec<f64>> = y.iter().map(|_| vec![1.0]).collect();
        Model::new(Family::BernoulliGlm, Dataset::from_rows(y, &rows).unwrap()).unwrap()
    }

    #[test]
    fn gaussian_sample_mean() {
        let m = gaussian_model(&[1.0, 1.0], &[vec![1.0], vec![1.0]]);
        let fit = fit_mle(&m).unwrap();
        assert!(fit.converged);
        assert_relative_eq!(fit.theta_hat.coords()[0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn logistic_intercept_closed_form() {
        // k ones out of n: theta_hat = log(k / (n - k))
        let y = [1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
        let k = 4.0f64;
        let n = 10.0f64;
        let m = intercept_only_logistic(&y);
        let fit = fit_mle(&m).unwrap();
        assert!(fit.converged);
        assert_relative_eq!(
            fit.theta_hat.coords()[0],
            (k / (n - k)).ln(),
            epsilon = 1e-9
        );
    }

    #[test]
    fn gaussian_matches_normal_equations_oracle() {
        let mut rng = crate::rng::stream(11, &[0]);
        let n = 50;
        let p = 3;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..p).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect())
            .collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 4.0 - 2.0).collect();
        let m = gaussian_model(&y, &rows);

        let psi = m.dataset().psi().clone();
        let gram = psi.transpose() * &psi;
        let oracle = gram
            .clone()
            .try_inverse()
            .unwrap()
            * psi.transpose()
            * m.dataset().y();

        let fit = fit_mle(&m).unwrap();
        assert!((fit.theta_hat.coords() - oracle).norm() <= 1e-10);
    }

    #[test]
    fn weighted_gaussian_matches_wls_oracle() {
        let mut rng = crate::rng::stream(13, &[0]);
        let n = 40;
        let p = 2;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..p).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect())
            .collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 4.0 - 2.0).collect();
        let u: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 2.0).collect();
        let m = gaussian_model(&y, &rows);

        let psi = m.dataset().psi().clone();
        let uw = DMatrix::from_diagonal(&DVector::from_column_slice(&u));
        let oracle = (psi.transpose() * &uw * &psi)
            .try_inverse()
            .unwrap()
            * psi.transpose()
            * &uw
            * m.dataset().y();

        let fit = fit_weighted_mle(&m, &WeightVector::new(u).unwrap()).unwrap();
        assert!((fit.theta_hat.coords() - oracle).norm() <= 1e-10);
    }

    #[test]
    fn unit_weights_reproduce_plain_fit() {
        let y = [1.0, 0.0, 1.0, 1.0, 0.0, 1.0];
        let m = intercept_only_logistic(&y);
        let plain = fit_mle(&m).unwrap();
        let weighted = fit_weighted_mle(&m, &WeightVector::ones(6)).unwrap();
        assert_eq!(plain.theta_hat, weighted.theta_hat);
        assert_eq!(plain.loglik_at_max, weighted.loglik_at_max);
    }

    #[test]
    fn weighted_logistic_intercept_closed_form() {
        let y = [1.0, 0.0, 1.0, 0.0, 0.0];
        let u = vec![0.5, 1.5, 2.0, 1.0, 0.5];
        let m = intercept_only_logistic(&y);
        let fit = fit_weighted_mle(&m, &WeightVector::new(u.clone()).unwrap()).unwrap();
        let mean: f64 =
            y.iter().zip(&u).map(|(a, b)| a * b).sum::<f64>() / u.iter().sum::<f64>();
        assert_relative_eq!(
            fit.theta_hat.coords()[0],
            (mean / (1.0 - mean)).ln(),
            epsilon = 1e-9
        );
    }

    #[test]
    fn lr_statistic_identity_and_quadratic_form() {
        let mut rng = crate::rng::stream(17, &[0]);
        let n = 30;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| vec![1.0, i as f64 / n as f64])
            .collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 2.0).collect();
        let m = gaussian_model(&y, &rows);
        let fit = fit_mle(&m).unwrap();

        assert!(lr_statistic(&m, &fit.theta_hat).unwrap().abs() <= 1e-9);

        let theta0 = Theta::from_slice(&[0.2, -0.4]).unwrap();
        let d = fit.theta_hat.coords() - theta0.coords();
        let quad = 0.5 * (m.dataset().psi() * d).norm_squared();
        assert_relative_eq!(
            lr_statistic(&m, &theta0).unwrap(),
            quad,
            max_relative = 1e-9
        );
    }

    #[test]
    fn logistic_lr_matches_grid_search() {
        let m = Model::new(
            Family::BernoulliGlm,
            Dataset::from_rows(&[1.0, 0.0], &[vec![1.0], vec![0.5]]).unwrap(),
        )
        .unwrap();
        let theta0 = Theta::from_slice(&[0.7]).unwrap();
        let lr = lr_statistic(&m, &theta0).unwrap();

        let mut best = f64::NEG_INFINITY;
        let mut t = -10.0;
        while t <= 10.0 {
            best = best.max(m.log_lik(&Theta::from_slice(&[t]).unwrap()).unwrap());
            t += 1e-4;
        }
        let oracle = best - m.log_lik(&theta0).unwrap();
        assert!((lr - oracle).abs() <= 1e-6, "lr={lr} oracle={oracle}");
    }

    #[test]
    fn bootstrap_lr_unit_weights_is_zero() {
        let y = [1.0, 0.0, 1.0, 1.0];
        let m = intercept_only_logistic(&y);
        let fit = fit_mle(&m).unwrap();
        let lr = bootstrap_lr_statistic(&m, &WeightVector::ones(4), &fit.theta_hat).unwrap();
        assert!(lr.abs() <= 1e-12);
    }

    #[test]
    fn bootstrap_lr_gaussian_weighted_ls_identity() {
        let mut rng = crate::rng::stream(19, &[0]);
        let n = 25;
        let rows: Vec<Vec<f64>> = (0..n).map(|i| vec![1.0, (i as f64).sin()]).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let m = gaussian_model(&y, &rows);
        let fit = fit_mle(&m).unwrap();
        let u: Vec<f64> = (0..n)
            .map(|_| if rng.random::<bool>() { 2.0 } else { 0.0 })
            .collect();
        let w = WeightVector::new(u.clone()).unwrap();

        let lr = bootstrap_lr_statistic(&m, &w, &fit.theta_hat).unwrap();
        assert!(lr >= -1e-9);

        let boot = fit_weighted_mle(&m, &w).unwrap();
        let d = boot.theta_hat.coords() - fit.theta_hat.coords();
        let psi = m.dataset().psi();
        let quad: f64 = 0.5
            * (0..n)
                .map(|i| {
                    let r = psi.row(i).transpose().dot(&d);
                    u[i] * r * r
                })
                .sum::<f64>();
        assert!((lr - quad).abs() <= 1e-9, "lr={lr} quad={quad}");
    }

    #[test]
    fn bootstrap_lr_logistic_grid_oracle() {
        let m = Model::new(
            Family::BernoulliGlm,
            Dataset::from_rows(&[1.0, 0.0], &[vec![1.0], vec![1.0]]).unwrap(),
        )
        .unwrap();
        let fit = fit_mle(&m).unwrap();
        let w = WeightVector::new(vec![2.0, 0.5]).unwrap();
        let lr = bootstrap_lr_statistic(&m, &w, &fit.theta_hat).unwrap();

        let mut best = f64::NEG_INFINITY;
        let mut t = -10.0;
        while t <= 10.0 {
            let c = Theta::from_slice(&[t]).unwrap();
            best = best.max(m.log_lik_weighted(&c, Some(w.as_slice())).unwrap());
            t += 1e-4;
        }
        let oracle =
            best - m.log_lik_weighted(&fit.theta_hat, Some(w.as_slice())).unwrap();
        assert!((lr - oracle).abs() <= 1e-6, "lr={lr} oracle={oracle}");
    }

    #[test]
    fn bootstrap_lr_logistic_single_label_draw_attains_supremum() {
        // weight (2, 0) keeps only the y = 1 observation, so the weighted
        // likelihood climbs to its supremum 0 at the edge of the compact
        // parameter box; the statistic must equal -L°(theta_hat) = 2 log 2
        let m = Model::new(
            Family::BernoulliGlm,
            Dataset::from_rows(&[1.0, 0.0], &[vec![1.0], vec![1.0]]).unwrap(),
        )
        .unwrap();
        let fit = fit_mle(&m).unwrap();
        let w = WeightVector::new(vec![2.0, 0.0]).unwrap();
        let lr = bootstrap_lr_statistic(&m, &w, &fit.theta_hat).unwrap();
        assert!(
            (lr - 2.0 * core::f64::consts::LN_2).abs() <= 1e-6,
            "lr={lr}"
        );
    }

    #[test]
    fn permutation_invariance() {
        let y = [1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0];
        let x = [0.1, 0.8, 0.4, 0.9, 0.2, 0.6, 0.5];
        let rows: Vec<Vec<f64>> = x.iter().map(|&v| vec![1.0, v]).collect();
        let m1 = Model::new(
            Family::BernoulliGlm,
            Dataset::from_rows(&y, &rows).unwrap(),
        )
        .unwrap();
        let perm = [3usize, 0, 6, 2, 5, 1, 4];
        let y2: Vec<f64> = perm.iter().map(|&i| y[i]).collect();
        let rows2: Vec<Vec<f64>> = perm.iter().map(|&i| rows[i].clone()).collect();
        let m2 = Model::new(
            Family::BernoulliGlm,
            Dataset::from_rows(&y2, &rows2).unwrap(),
        )
        .unwrap();
        let f1 = fit_mle(&m1).unwrap();
        let f2 = fit_mle(&m2).unwrap();
        assert!((f1.theta_hat.coords() - f2.theta_hat.coords()).norm() <= 1e-12);
    }

    #[test]
    fn affine_reparameterization_maps_estimate_and_preserves_lr() {
        let mut rng = crate::rng::stream(23, &[0]);
        let n = 40;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| vec![1.0, i as f64 / 10.0, (i as f64 / 10.0).cos()])
            .collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 3.0).collect();
        let a = DMatrix::from_row_slice(3, 3, &[1.0, 0.5, 0.0, 0.0, 2.0, -1.0, 0.3, 0.0, 1.5]);
        let m1 = gaussian_model(&y, &rows);
        let psi2 = m1.dataset().psi() * &a;
        let m2 = Model::new(
            Family::GaussianLinear,
            Dataset::new(m1.dataset().y().clone(), psi2).unwrap(),
        )
        .unwrap();

        let f1 = fit_mle(&m1).unwrap();
        let f2 = fit_mle(&m2).unwrap();
        let mapped = a.clone().try_inverse().unwrap() * f1.theta_hat.coords();
        assert!((f2.theta_hat.coords() - &mapped).norm() <= 1e-8);

        let theta0 = Theta::from_slice(&[0.4, -0.2, 0.1]).unwrap();
        let theta0_mapped =
            Theta::new(a.try_inverse().unwrap() * theta0.coords()).unwrap();
        let lr1 = lr_statistic(&m1, &theta0).unwrap();
        let lr2 = lr_statistic(&m2, &theta0_mapped).unwrap();
        assert!((lr1 - lr2).abs() <= 1e-9);
    }

    #[test]
    fn degenerate_weighted_designs_report_errors() {
        // negative weight flips the intercept-only objective into a convex
        // function with no ascent direction
        let m = intercept_only_logistic(&[1.0]);
        let u = WeightVector::new(vec![-1.0]).unwrap();
        assert!(matches!(
            fit_weighted_mle(&m, &u),
            Err(Error::DegenerateDraw(_))
        ));

        // weighted gaussian design loses rank when too few weights survive
        let g = gaussian_model(&[1.0, 2.0], &[vec![1.0, 0.0], vec![1.0, 1.0]]);
        let u = WeightVector::new(vec![2.0, 0.0]).unwrap();
        assert!(matches!(
            fit_weighted_mle(&g, &u),
            Err(Error::DegenerateDraw(_))
        ));
    }

    #[test]
    fn mixed_sign_weights_escaping_the_box_are_degenerate() {
        // u = (3, -1) on labels (0, 1) gives an objective increasing without
        // bound to the left; the iterate must be stopped at the box
        let m = Model::new(
            Family::BernoulliGlm,
            Dataset::from_rows(&[0.0, 1.0], &[vec![1.0], vec![1.0]]).unwrap(),
        )
        .unwrap();
        let u = WeightVector::new(vec![3.0, -1.0]).unwrap();
        assert!(matches!(
            fit_weighted_mle(&m, &u),
            Err(Error::DegenerateDraw(_))
        ));
    }

    #[test]
    fn all_zero_weights_rejected() {
        let m = intercept_only_logistic(&[1.0, 0.0]);
        let u = WeightVector::new(vec![0.0, 0.0]).unwrap();
        assert!(matches!(
            fit_weighted_mle(&m, &u),
            Err(Error::DegenerateDraw(_))
        ));
    }

    #[test]
    fn poisson_newton_converges() {
        let rows: Vec<Vec<f64>> = (0..20).map(|i| vec![1.0, i as f64 / 20.0]).collect();
        let y: Vec<f64> = (0..20).map(|i| (i % 4) as f64).collect();
        let m = Model::new(
            Family::GlmCanonical(CanonicalLink::Poisson),
            Dataset::from_rows(&y, &rows).unwrap(),
        )
        .unwrap();
        let fit = fit_mle(&m).unwrap();
        assert!(fit.converged);
        assert!(fit.grad_norm <= grad_tolerance(20));
        // first-order condition: sum_i (y_i - e^eta_i) psi_i = 0
        let g = m.score(&fit.theta_hat).unwrap();
        assert!(g.norm() <= grad_tolerance(20));
    }

    #[test]
    fn ascent_never_decreases_from_init() {
        // FitResult invariant: attained value >= value at the initializer
        let y = [1.0, 0.0, 0.0, 1.0, 1.0];
        let m = intercept_only_logistic(&y);
        let fit = fit_mle(&m).unwrap();
        assert!(fit.loglik_at_max >= m.log_lik(&Theta::zeros(1)).unwrap());
    }
}
