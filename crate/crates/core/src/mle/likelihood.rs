//! Log-likelihood of a censored step-stress sample and its first two
//! derivatives in `(alpha, lambda, beta)`.
//!
//! With `z_i = tau + (t_i - tau) / beta` for the post-change failures,
//!
//! ```text
//! l = r ln(alpha) + r ln(lambda) - (r - N) ln(beta)
//!     - (alpha + 1) (sum_pre ln t_i + sum_post ln z_i)
//!     - lambda (sum_pre t_i^-alpha + sum_post z_i^-alpha)
//!     + (n - r) ln(1 - exp(-lambda z_r^-alpha))
//! ```
//!
//! The `-(r - N) ln(beta)` term is the Jacobian of the post-change time
//! scaling, so `l` is exactly the sum of `ln trv_pdf` over the failures plus
//! the survivor term of the `n - r` censored units.

use crate::error::{Error, Result};
use crate::gumbel::ModelParams;
use crate::sampler::{Case, CensoredSample};

/// Log-likelihood, score, and Hessian at one parameter point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Derivatives {
    pub value: f64,
    pub grad: [f64; 3],
    pub hess: [[f64; 3]; 3],
}

/// Log-likelihood. Parameters outside `alpha, lambda, beta > 0` give `-inf`.
///
/// Case I samples are rejected: with every failure before the change point
/// the tampering coefficient drops out of the likelihood.
pub fn log_likelihood(p: &ModelParams, s: &CensoredSample) -> Result<f64> {
    check_identifiable(s)?;
    Ok(value(p, s))
}

/// Gradient of [`log_likelihood`] with respect to `(alpha, lambda, beta)`.
pub fn score(p: &ModelParams, s: &CensoredSample) -> Result<[f64; 3]> {
    check_identifiable(s)?;
    Ok(derivatives(p, s).grad)
}

/// Negative Hessian of [`log_likelihood`].
pub fn observed_information(p: &ModelParams, s: &CensoredSample) -> Result<[[f64; 3]; 3]> {
    check_identifiable(s)?;
    let h = derivatives(p, s).hess;
    let mut info = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            info[i][j] = -h[i][j];
        }
    }
    Ok(info)
}

pub(crate) fn check_identifiable(s: &CensoredSample) -> Result<()> {
    if s.case() == Case::CaseI {
        return Err(Error::Unidentifiable {
            param: "beta",
            case: Case::CaseI,
        });
    }
    Ok(())
}

fn in_domain(p: &ModelParams) -> bool {
    p.alpha > 0.0
        && p.lambda > 0.0
        && p.beta > 0.0
        && p.alpha.is_finite()
        && p.lambda.is_finite()
        && p.beta.is_finite()
}

/// Value only; the hot path of the MCMC sampler.
pub(crate) fn value(p: &ModelParams, s: &CensoredSample) -> f64 {
    if !in_domain(p) {
        return f64::NEG_INFINITY;
    }
    let (alpha, lambda, beta) = (p.alpha, p.lambda, p.beta);
    let tau = s.tau().get();
    let r = s.r() as f64;
    let post = s.post_tau();

    let mut sum_log = 0.0;
    let mut sum_pow = 0.0;
    for &t in s.pre_tau() {
        let l = t.ln();
        sum_log += l;
        sum_pow += (-alpha * l).exp();
    }
    for &t in post {
        let l = (tau + (t - tau) / beta).ln();
        sum_log += l;
        sum_pow += (-alpha * l).exp();
    }
    let mut v = r * (alpha.ln() + lambda.ln()) - post.len() as f64 * beta.ln()
        - (alpha + 1.0) * sum_log
        - lambda * sum_pow;

    let censored = (s.n() - s.r()) as f64;
    if censored > 0.0 {
        let zr = p.equivalent_age(s.tau(), s.last());
        let x = lambda * (-alpha * zr.ln()).exp();
        v += censored * (-(-x).exp_m1()).ln();
    }
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

/// Log-argument of one observation and its derivatives in `beta`.
struct Age {
    /// `ln z`
    l: f64,
    /// `d ln z / d beta`
    lb: f64,
    /// `d^2 ln z / d beta^2`
    lbb: f64,
}

impl Age {
    fn fixed(t: f64) -> Self {
        Age {
            l: t.ln(),
            lb: 0.0,
            lbb: 0.0,
        }
    }

    fn tampered(t: f64, tau: f64, beta: f64) -> Self {
        let z = tau + (t - tau) / beta;
        // dz/dbeta = (tau - t) / beta^2, d2z/dbeta2 = -2 (dz/dbeta) / beta
        let dz = (tau - t) / (beta * beta);
        let lb = dz / z;
        Age {
            l: z.ln(),
            lb,
            lbb: -2.0 * lb / beta - lb * lb,
        }
    }
}

/// `u = z^-alpha` and its partial derivatives.
struct Power {
    u: f64,
    ua: f64,
    ub: f64,
    uaa: f64,
    uab: f64,
    ubb: f64,
}

impl Power {
    fn new(age: &Age, alpha: f64) -> Self {
        let u = (-alpha * age.l).exp();
        Power {
            u,
            ua: -age.l * u,
            ub: -alpha * u * age.lb,
            uaa: age.l * age.l * u,
            uab: u * age.lb * (alpha * age.l - 1.0),
            ubb: alpha * alpha * u * age.lb * age.lb - alpha * u * age.lbb,
        }
    }
}

pub(crate) fn derivatives(p: &ModelParams, s: &CensoredSample) -> Derivatives {
    let (alpha, lambda, beta) = (p.alpha, p.lambda, p.beta);
    let tau = s.tau().get();
    let r = s.r() as f64;
    let mut g = [0.0; 3];
    let mut h = [[0.0; 3]; 3];

    let mut accumulate = |age: &Age, tampered: bool| {
        let w = Power::new(age, alpha);
        g[0] += -age.l - lambda * w.ua;
        g[1] += -w.u;
        h[0][0] += -lambda * w.uaa;
        h[0][1] += -w.ua;
        if tampered {
            g[2] += -1.0 / beta - (alpha + 1.0) * age.lb - lambda * w.ub;
            h[0][2] += -age.lb - lambda * w.uab;
            h[1][2] += -w.ub;
            h[2][2] += 1.0 / (beta * beta) - (alpha + 1.0) * age.lbb - lambda * w.ubb;
        }
    };
    for &t in s.pre_tau() {
        accumulate(&Age::fixed(t), false);
    }
    for &t in s.post_tau() {
        accumulate(&Age::tampered(t, tau, beta), true);
    }

    g[0] += r / alpha;
    g[1] += r / lambda;
    h[0][0] -= r / (alpha * alpha);
    h[1][1] -= r / (lambda * lambda);

    let censored = (s.n() - s.r()) as f64;
    if censored > 0.0 {
        let last = s.last();
        let age = if last > tau {
            Age::tampered(last, tau, beta)
        } else {
            Age::fixed(last)
        };
        let w = Power::new(&age, alpha);
        let x = lambda * w.u;
        // d/dx ln(1 - e^-x) = 1 / (e^x - 1) =: k, dk/dx = -k (1 + k)
        let k = 1.0 / x.exp_m1();
        let dk = -k * (1.0 + k);
        let dx = [lambda * w.ua, w.u, lambda * w.ub];
        let ddx = [
            [lambda * w.uaa, w.ua, lambda * w.uab],
            [w.ua, 0.0, w.ub],
            [lambda * w.uab, w.ub, lambda * w.ubb],
        ];
        for i in 0..3 {
            g[i] += censored * k * dx[i];
            for j in i..3 {
                h[i][j] += censored * (dk * dx[i] * dx[j] + k * ddx[i][j]);
            }
        }
    }

    for i in 0..3 {
        for j in 0..i {
            h[i][j] = h[j][i];
        }
    }
    Derivatives {
        value: value(p, s),
        grad: g,
        hess: h,
    }
}
