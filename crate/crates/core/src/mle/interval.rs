use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::newton::MleFit;
use crate::error::{Error, Result};

/// Two-sided interval estimate at confidence or credibility `level`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalEstimate {
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
}

impl IntervalEstimate {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Upper `q` quantile of the standard normal, `z` with `P(Z > z) = q`.
pub fn upper_normal_quantile(q: f64) -> f64 {
    if q == 0.5 {
        return 0.0;
    }
    Normal::standard().inverse_cdf(1.0 - q)
}

/// Wald intervals `theta_hat -/+ z_{gamma/2} * se` for alpha, lambda, beta.
pub fn asymptotic_ci(fit: &MleFit, gamma: f64) -> Result<[IntervalEstimate; 3]> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::InvalidInterval(format!("gamma must lie in (0, 1], got {gamma}")));
    }
    if !fit.converged {
        return Err(Error::InvalidInterval("fit did not converge".into()));
    }
    let z = upper_normal_quantile(gamma / 2.0);
    let est = fit.params_hat.as_array();
    let names = ["alpha", "lambda", "beta"];
    let mut out = [IntervalEstimate {
        lower: 0.0,
        upper: 0.0,
        level: 1.0 - gamma,
    }; 3];
    for i in 0..3 {
        let var = fit.cov_matrix[i][i];
        if !(var > 0.0) {
            return Err(Error::NonPositiveVariance { param: names[i] });
        }
        let half = z * var.sqrt();
        out[i].lower = est[i] - half;
        out[i].upper = est[i] + half;
    }
    Ok(out)
}
