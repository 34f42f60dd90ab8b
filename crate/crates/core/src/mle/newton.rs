use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::likelihood::{check_identifiable, derivatives, value};
use super::profile::fit_baseline;
use crate::error::{Error, Result};
use crate::gumbel::ModelParams;
use crate::sampler::CensoredSample;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub max_iter: usize,
    /// Converged once `|score|_inf` falls below this.
    pub score_tol: f64,
    /// Relative parameter change that also counts as converged, provided the
    /// score is below `stall_score_tol`.
    pub step_tol: f64,
    pub stall_score_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_iter: 200,
            score_tol: 1e-8,
            step_tol: 1e-10,
            stall_score_tol: 1e-5,
        }
    }
}

/// Maximum likelihood estimate with its observed information.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MleFit {
    pub params_hat: ModelParams,
    pub loglik: f64,
    /// `|score|_inf` at `params_hat`.
    pub score_norm: f64,
    pub info_matrix: [[f64; 3]; 3],
    pub cov_matrix: [[f64; 3]; 3],
    pub converged: bool,
    pub iterations: usize,
}

impl MleFit {
    pub fn std_errors(&self) -> [f64; 3] {
        [0, 1, 2].map(|i| self.cov_matrix[i][i].max(0.0).sqrt())
    }
}

/// Starting values for `fit_mle` when none are supplied.
///
/// Shape and scale come from a complete-sample profile fit to the failures
/// observed before the change point (those are untampered), falling back to
/// all failures when fewer than two precede it. `beta` starts at 0.5.
pub fn initial_guess(s: &CensoredSample) -> ModelParams {
    let pre = s.pre_tau();
    let base = if pre.len() >= 2 {
        fit_baseline(pre)
    } else {
        fit_baseline(s.times())
    };
    match base {
        Ok(g) => ModelParams {
            alpha: g.alpha,
            lambda: g.lambda,
            beta: 0.5,
        },
        Err(_) => ModelParams {
            alpha: 1.0,
            lambda: 1.0,
            beta: 0.5,
        },
    }
}

/// Newton-Raphson maximum likelihood on `(ln alpha, ln lambda, ln beta)`
/// with step halving. The estimate of `beta` is not capped at 1: the
/// likelihood is defined for any `beta > 0`, and small samples often peak
/// past 1 when the true value is near it. Falls back to a handful of alternative `beta` starts
/// if the default start does not converge.
pub fn fit_mle(s: &CensoredSample, opts: &SolverOptions) -> Result<MleFit> {
    check_identifiable(s)?;
    if s.r() < 3 {
        return Err(Error::TooFewFailures { r: s.r() });
    }
    let start = initial_guess(s);
    let mut first_err = None;
    for beta0 in [0.5, 0.2, 0.8, 0.05, 0.95] {
        match newton(s, ModelParams { beta: beta0, ..start }, opts) {
            Ok(fit) => return Ok(fit),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(first_err.expect("at least one start attempted"))
}

/// Newton-Raphson from a given starting point.
pub fn fit_mle_from(s: &CensoredSample, start: ModelParams, opts: &SolverOptions) -> Result<MleFit> {
    check_identifiable(s)?;
    if s.r() < 3 {
        return Err(Error::TooFewFailures { r: s.r() });
    }
    newton(s, start, opts)
}

fn to_raw(phi: &Vector3<f64>) -> ModelParams {
    ModelParams {
        alpha: phi[0].exp(),
        lambda: phi[1].exp(),
        beta: phi[2].exp(),
    }
}

fn to_free(p: &ModelParams) -> Vector3<f64> {
    Vector3::new(p.alpha.ln(), p.lambda.ln(), p.beta.ln())
}

fn inf_norm(v: &[f64; 3]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn newton(s: &CensoredSample, start: ModelParams, opts: &SolverOptions) -> Result<MleFit> {
    if !(start.alpha > 0.0 && start.lambda > 0.0 && start.beta > 0.0 && start.beta.is_finite()) {
        return Err(Error::InvalidParams(format!("starting point {start:?} outside the open domain")));
    }
    let mut phi = to_free(&start);
    let mut p = to_raw(&phi);
    let mut d = derivatives(&p, s);
    if !d.value.is_finite() {
        return Err(Error::InvalidParams(format!("log-likelihood not finite at start {start:?}")));
    }

    for iter in 1..=opts.max_iter {
        let g = d.grad;
        let h = d.hess;
        let jac = p.as_array();
        let grad_phi = Vector3::from_fn(|i, _| jac[i] * g[i]);
        let hess_phi = Matrix3::from_fn(|i, j| {
            jac[i] * h[i][j] * jac[j] + if i == j { g[i] * jac[i] } else { 0.0 }
        });
        let step = ascent_direction(&hess_phi, &grad_phi);

        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let cand_phi = phi + step * t;
            let cand = to_raw(&cand_phi);
            let v = value(&cand, s);
            if v.is_finite() && v >= d.value - 4.0 * f64::EPSILON * d.value.abs() {
                accepted = Some((cand_phi, cand));
                break;
            }
            t *= 0.5;
        }
        let Some((new_phi, new_p)) = accepted else {
            return finish(p, d, iter, opts, false);
        };

        let rel_step = [
            (new_p.alpha - p.alpha) / p.alpha,
            (new_p.lambda - p.lambda) / p.lambda,
            (new_p.beta - p.beta) / p.beta,
        ];
        let rel_step = inf_norm(&rel_step);
        phi = new_phi;
        p = new_p;
        d = derivatives(&p, s);

        let score_norm = inf_norm(&d.grad);
        if score_norm <= opts.score_tol
            || (rel_step <= opts.step_tol && score_norm <= opts.stall_score_tol)
        {
            return finish(p, d, iter, opts, true);
        }
    }
    Err(Error::NoConvergence {
        last: p,
        iterations: opts.max_iter,
        score_norm: inf_norm(&d.grad),
    })
}

fn finish(
    p: ModelParams,
    d: super::likelihood::Derivatives,
    iterations: usize,
    opts: &SolverOptions,
    converged: bool,
) -> Result<MleFit> {
    let score_norm = inf_norm(&d.grad);
    let converged = converged || score_norm <= opts.stall_score_tol;
    if !converged {
        return Err(Error::NoConvergence {
            last: p,
            iterations,
            score_norm,
        });
    }
    let info = Matrix3::from_fn(|i, j| -d.hess[i][j]);
    let cov = info.try_inverse().ok_or(Error::SingularInformation)?;
    Ok(MleFit {
        params_hat: p,
        loglik: d.value,
        score_norm,
        info_matrix: to_rows(&info),
        cov_matrix: to_rows(&cov),
        converged,
        iterations,
    })
}

fn to_rows(m: &Matrix3<f64>) -> [[f64; 3]; 3] {
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| m[(i, j)]))
}

/// Newton direction for maximization. Where the Hessian is not negative
/// definite its eigenvalues are reflected to `-max(|ev|, floor)`, which keeps
/// the step an ascent direction.
fn ascent_direction(hess: &Matrix3<f64>, grad: &Vector3<f64>) -> Vector3<f64> {
    if let Some(chol) = (-hess).cholesky() {
        return chol.solve(grad);
    }
    let eig = hess.symmetric_eigen();
    let scale = eig.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = (scale * 1e-8).max(1e-12);
    let mut dir = Vector3::zeros();
    for k in 0..3 {
        let v = eig.eigenvectors.column(k);
        let ev = eig.eigenvalues[k].abs().max(floor);
        dir += v * (v.dot(grad) / ev);
    }
    dir
}
