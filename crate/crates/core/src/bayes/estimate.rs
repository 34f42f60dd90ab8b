use serde::{Deserialize, Serialize};

use super::mh::PosteriorChain;
use crate::error::{Error, Result};
use crate::gumbel::ModelParams;
use crate::mle::IntervalEstimate;

/// Loss function for Bayes point estimation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LossSpec {
    /// Squared error; the estimate is the posterior mean.
    Sel,
    /// `L(d) = e^(u d) - u d - 1` with `d` the estimation error; the
    /// estimate is `-(1/u) ln E[e^(-u theta)]`.
    Linex { u: f64 },
}

impl LossSpec {
    pub fn linex(u: f64) -> Result<Self> {
        let l = LossSpec::Linex { u };
        l.validate()?;
        Ok(l)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            LossSpec::Linex { u } if !(u != 0.0 && u.is_finite()) => Err(Error::InvalidParams(
                format!("LINEX shape must be finite and nonzero, got {u}"),
            )),
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            LossSpec::Sel => "SEL".to_string(),
            LossSpec::Linex { u } => format!("LINEX({u})"),
        }
    }
}

/// Bayes estimate of each coordinate under `loss`, from the retained draws.
pub fn point_estimate(chain: &PosteriorChain, loss: LossSpec) -> Result<ModelParams> {
    loss.validate()?;
    if chain.retained().is_empty() {
        return Err(Error::Empty);
    }
    let est = [0, 1, 2].map(|k| estimate_column(&chain.column(k), loss));
    Ok(ModelParams::from_array(est))
}

pub(crate) fn estimate_column(x: &[f64], loss: LossSpec) -> f64 {
    match loss {
        LossSpec::Sel => x.iter().sum::<f64>() / x.len() as f64,
        LossSpec::Linex { u } => {
            // ln mean e^(-u x) with the largest exponent factored out
            let shift = x.iter().map(|v| -u * v).fold(f64::NEG_INFINITY, f64::max);
            let s: f64 = x.iter().map(|v| (-u * v - shift).exp_m1()).sum();
            let log_mean = shift + (s / x.len() as f64).ln_1p();
            -log_mean / u
        }
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::InvalidInterval(format!("gamma must lie in [0, 1), got {gamma}")));
    }
    Ok(())
}

/// 1-based rank `ceil(x)`, tolerant of rounding in `x` and at least 1.
fn ceil_rank(x: f64) -> usize {
    ((x - 1e-9).ceil() as usize).max(1)
}

/// Equal-tailed `100(1 - gamma)%` interval: the order statistics of ranks
/// `ceil(M gamma / 2)` and `ceil(M (1 - gamma / 2))` among the `M` retained
/// draws.
pub fn credible_interval(chain: &PosteriorChain, gamma: f64) -> Result<[IntervalEstimate; 3]> {
    check_gamma(gamma)?;
    let m = chain.retained().len();
    if gamma > 0.0 && (m as f64) * gamma / 2.0 < 1.0 {
        return Err(Error::InvalidInterval(format!(
            "{m} draws are too few for gamma = {gamma}"
        )));
    }
    Ok([0, 1, 2].map(|k| {
        let mut x = chain.column(k);
        x.sort_by(f64::total_cmp);
        percentile_sorted(&x, gamma)
    }))
}

pub(crate) fn percentile_sorted(x: &[f64], gamma: f64) -> IntervalEstimate {
    let m = x.len() as f64;
    let lo = ceil_rank(m * gamma / 2.0).min(x.len());
    let hi = ceil_rank(m * (1.0 - gamma / 2.0)).min(x.len());
    IntervalEstimate {
        lower: x[lo - 1],
        upper: x[hi - 1],
        level: 1.0 - gamma,
    }
}

/// Highest posterior density interval: the narrowest window of
/// `ceil(M (1 - gamma))` consecutive order statistics.
pub fn hpd_interval(chain: &PosteriorChain, gamma: f64) -> Result<[IntervalEstimate; 3]> {
    check_gamma(gamma)?;
    if chain.retained().is_empty() {
        return Err(Error::Empty);
    }
    Ok([0, 1, 2].map(|k| {
        let mut x = chain.column(k);
        x.sort_by(f64::total_cmp);
        hpd_sorted(&x, gamma)
    }))
}

pub(crate) fn hpd_sorted(x: &[f64], gamma: f64) -> IntervalEstimate {
    let m = x.len();
    let k = ceil_rank(m as f64 * (1.0 - gamma)).min(m);
    let mut best = 0;
    for i in 1..=(m - k) {
        if x[i + k - 1] - x[i] < x[best + k - 1] - x[best] {
            best = i;
        }
    }
    IntervalEstimate {
        lower: x[best],
        upper: x[best + k - 1],
        level: 1.0 - gamma,
    }
}

/// Monte Carlo standard error of the mean of an autocorrelated series, by
/// non-overlapping batch means.
pub fn batch_means_se(x: &[f64], batches: usize) -> f64 {
    let b = batches.max(2).min(x.len());
    let size = x.len() / b;
    if size == 0 {
        return f64::NAN;
    }
    let means: Vec<f64> = (0..b)
        .map(|i| x[i * size..(i + 1) * size].iter().sum::<f64>() / size as f64)
        .collect();
    let grand = means.iter().sum::<f64>() / b as f64;
    let var = means.iter().map(|m| (m - grand).powi(2)).sum::<f64>() / (b - 1) as f64;
    (var / b as f64).sqrt()
}
