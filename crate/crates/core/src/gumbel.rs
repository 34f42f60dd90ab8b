//! Gumbel Type-II lifetimes and their tampered (step-stress) transform.
//!
//! The baseline law has CDF `F(t) = exp(-lambda * t^-alpha)` for `t > 0`.
//! Under a simple step-stress test the stress is raised at the tampering
//! time `tau`; the remaining life after `tau` is scaled by the tampering
//! coefficient `beta`:
//!
//! ```text
//! T_trv = T                      if T <= tau
//!       = tau + beta * (T - tau) if T >  tau
//! ```
//!
//! so that `F_trv(t) = F(tau + (t - tau) / beta)` past the change point.
//!
//! Powers `t^-alpha` are always evaluated as `exp(-alpha * ln t)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Baseline Gumbel Type-II distribution (shape `alpha`, scale `lambda`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GumbelII {
    pub alpha: f64,
    pub lambda: f64,
}

/// Parameters of the tampered model: baseline shape and scale plus the
/// tampering coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub alpha: f64,
    pub lambda: f64,
    pub beta: f64,
}

/// Time at which the stress level changes.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct TamperingTime(f64);

impl GumbelII {
    pub fn new(alpha: f64, lambda: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParams(format!("alpha must be positive, got {alpha}")));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParams(format!("lambda must be positive, got {lambda}")));
        }
        Ok(Self { alpha, lambda })
    }

    /// `ln f(t)`; `-inf` where the density underflows.
    pub fn ln_pdf(&self, t: f64) -> Result<f64> {
        check_positive("t", t)?;
        let lt = t.ln();
        Ok(self.alpha.ln() + self.lambda.ln() - (self.alpha + 1.0) * lt - self.lambda * (-self.alpha * lt).exp())
    }

    pub fn pdf(&self, t: f64) -> Result<f64> {
        self.ln_pdf(t).map(f64::exp)
    }

    pub fn cdf(&self, t: f64) -> Result<f64> {
        check_nonnegative("t", t)?;
        if t == 0.0 {
            return Ok(0.0);
        }
        Ok((-self.lambda * (-self.alpha * t.ln()).exp()).exp())
    }

    /// `1 - F(t)` without cancellation in the upper tail.
    pub fn survival(&self, t: f64) -> Result<f64> {
        check_nonnegative("t", t)?;
        if t == 0.0 {
            return Ok(1.0);
        }
        Ok(-(-self.lambda * (-self.alpha * t.ln()).exp()).exp_m1())
    }

    pub fn quantile(&self, u: f64) -> Result<f64> {
        check_open_unit("u", u)?;
        Ok(((self.lambda.ln() - (-u.ln()).ln()) / self.alpha).exp())
    }

    pub fn hazard(&self, t: f64) -> Result<f64> {
        check_positive("t", t)?;
        let x = self.lambda * (-self.alpha * t.ln()).exp();
        let ln_surv = (-(-x).exp_m1()).ln();
        Ok((self.ln_pdf(t)? - ln_surv).exp())
    }
}

impl ModelParams {
    pub fn new(alpha: f64, lambda: f64, beta: f64) -> Result<Self> {
        let p = Self { alpha, lambda, beta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        GumbelII::new(self.alpha, self.lambda)?;
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "beta must lie in (0, 1], got {}",
                self.beta
            )));
        }
        Ok(())
    }

    pub fn baseline(&self) -> GumbelII {
        GumbelII {
            alpha: self.alpha,
            lambda: self.lambda,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.lambda, self.beta]
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        Self {
            alpha: v[0],
            lambda: v[1],
            beta: v[2],
        }
    }

    /// Baseline age equivalent to the tampered time `t`:
    /// `tau + (t - tau) / beta` past the change point, `t` before it.
    pub fn equivalent_age(&self, tau: TamperingTime, t: f64) -> f64 {
        if t < tau.0 || self.beta == 1.0 {
            t
        } else {
            tau.0 + (t - tau.0) / self.beta
        }
    }
}

impl TamperingTime {
    pub fn new(tau: f64) -> Result<Self> {
        check_positive("tau", tau)?;
        if !tau.is_finite() {
            return Err(Error::domain("tau", tau, "finite"));
        }
        Ok(Self(tau))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for TamperingTime {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<TamperingTime> for f64 {
    fn from(t: TamperingTime) -> f64 {
        t.0
    }
}

pub fn baseline_pdf(p: &ModelParams, t: f64) -> Result<f64> {
    p.baseline().pdf(t)
}

pub fn baseline_cdf(p: &ModelParams, t: f64) -> Result<f64> {
    p.baseline().cdf(t)
}

pub fn baseline_quantile(p: &ModelParams, u: f64) -> Result<f64> {
    p.baseline().quantile(u)
}

pub fn baseline_hazard(p: &ModelParams, t: f64) -> Result<f64> {
    p.baseline().hazard(t)
}

pub fn trv_cdf(p: &ModelParams, tau: TamperingTime, t: f64) -> Result<f64> {
    check_nonnegative("t", t)?;
    p.baseline().cdf(p.equivalent_age(tau, t))
}

/// Density of the tampered lifetime. At `t == tau` the post-change branch is
/// used.
pub fn trv_pdf(p: &ModelParams, tau: TamperingTime, t: f64) -> Result<f64> {
    check_positive("t", t)?;
    let base = p.baseline();
    if t < tau.0 || p.beta == 1.0 {
        base.pdf(t)
    } else {
        Ok(base.pdf(p.equivalent_age(tau, t))? / p.beta)
    }
}

pub fn trv_quantile(p: &ModelParams, tau: TamperingTime, u: f64) -> Result<f64> {
    let q = p.baseline().quantile(u)?;
    if q <= tau.0 || p.beta == 1.0 {
        Ok(q)
    } else {
        Ok(tau.0 + p.beta * (q - tau.0))
    }
}

fn check_positive(what: &'static str, x: f64) -> Result<()> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(what, x, "must be > 0"))
    }
}

fn check_nonnegative(what: &'static str, x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(what, x, "must be >= 0"))
    }
}

fn check_open_unit(what: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(what, x, "must lie in (0, 1)"))
    }
}
