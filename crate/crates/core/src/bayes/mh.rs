use rand::distr::Open01;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::posterior::{posterior_value, PriorSpec};
use crate::error::{Error, Result};
use crate::gumbel::ModelParams;
use crate::mle::{check_identifiable, MleFit};
use crate::sampler::{rng_from_seed, CensoredSample};

/// How the three coordinate updates within one sweep see each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanScheme {
    /// Each update conditions on the most recent values of the other two
    /// coordinates. Leaves the posterior invariant.
    #[default]
    Systematic,
    /// Each update's acceptance ratio conditions on the other coordinates
    /// as they stood at the start of the sweep, even when they have already
    /// moved. Kept for comparison; its stationary law is not the posterior
    /// in general.
    Stale,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MhConfig {
    /// Draws recorded, burn-in included.
    pub chain_length: usize,
    pub burn_in: usize,
    pub init: ModelParams,
    /// Random-walk standard deviations for `(alpha, lambda, beta)`.
    pub proposal_sds: [f64; 3],
    pub seed: u64,
    pub scheme: ScanScheme,
    /// Coordinates that are updated; the others stay at `init`.
    pub update: [bool; 3],
}

impl MhConfig {
    pub fn new(chain_length: usize, burn_in: usize, init: ModelParams, proposal_sds: [f64; 3], seed: u64) -> Self {
        Self {
            chain_length,
            burn_in,
            init,
            proposal_sds,
            seed,
            scheme: ScanScheme::Systematic,
            update: [true; 3],
        }
    }
}

/// Starting point and proposal scales: the MLE and its standard errors when
/// a usable fit is available, otherwise the prior means with scale 0.1. An
/// estimate of `beta` outside `(0, 1)` is replaced by its prior mean.
pub fn default_start(fit: Option<&MleFit>, h: &PriorSpec) -> (ModelParams, [f64; 3]) {
    if let Some(f) = fit {
        let mut p = f.params_hat;
        let mut se = f.std_errors();
        let usable = p.alpha > 0.0 && p.lambda > 0.0 && se.iter().all(|s| *s > 0.0 && s.is_finite());
        if usable {
            if !(p.beta > 0.0 && p.beta < 1.0) {
                p.beta = h.mean().beta;
                se[2] = se[2].min(0.1);
            }
            return (p, se);
        }
    }
    (h.mean(), [0.1; 3])
}

/// Markov chain output. `draws` holds every recorded state, burn-in
/// included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosteriorChain {
    pub draws: Vec<ModelParams>,
    pub burn_in: usize,
    /// Fraction of accepted proposals per coordinate.
    pub acceptance_rates: [f64; 3],
    pub seed: u64,
    pub warnings: Vec<String>,
}

impl PosteriorChain {
    /// Draws after burn-in.
    pub fn retained(&self) -> &[ModelParams] {
        &self.draws[self.burn_in..]
    }

    /// Retained draws of one coordinate.
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.retained().iter().map(|p| p.as_array()[k]).collect()
    }
}

/// Random-walk Metropolis-Hastings within Gibbs, updating `alpha`, `lambda`
/// and `beta` in turn with normal proposals. Proposals outside the support
/// are rejected.
pub fn run_mh(s: &CensoredSample, h: &PriorSpec, cfg: &MhConfig) -> Result<PosteriorChain> {
    check_identifiable(s)?;
    h.validate()?;
    if let Some(sd) = cfg.proposal_sds.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidSampler(format!("proposal standard deviation must be > 0, got {sd}")));
    }
    if cfg.chain_length <= cfg.burn_in {
        return Err(Error::InvalidSampler(format!(
            "chain length {} must exceed burn-in {}",
            cfg.chain_length, cfg.burn_in
        )));
    }
    let mut cur = cfg.init.as_array();
    let mut cur_lp = posterior_value(&cfg.init, h, s);
    if !cur_lp.is_finite() {
        return Err(Error::InvalidSampler(format!(
            "initial state {:?} has zero posterior density",
            cfg.init
        )));
    }

    let mut rng = rng_from_seed(cfg.seed);
    let mut accepted = [0usize; 3];
    let mut draws = Vec::with_capacity(cfg.chain_length);
    for _ in 0..cfg.chain_length {
        let sweep_start = cur;
        let sweep_lp = cur_lp;
        for k in 0..3 {
            if !cfg.update[k] {
                continue;
            }
            let z: f64 = rng.sample(StandardNormal);
            let proposal = cur[k] + cfg.proposal_sds[k] * z;
            let u: f64 = rng.sample(Open01);
            let (log_ratio, prop_lp) = match cfg.scheme {
                ScanScheme::Systematic => {
                    let mut cand = cur;
                    cand[k] = proposal;
                    let lp = posterior_value(&ModelParams::from_array(cand), h, s);
                    (lp - cur_lp, lp)
                }
                ScanScheme::Stale => {
                    // at the start of a sweep coordinate k still holds its
                    // previous value, so the denominator is the sweep start
                    let mut num = sweep_start;
                    num[k] = proposal;
                    (posterior_value(&ModelParams::from_array(num), h, s) - sweep_lp, f64::NAN)
                }
            };
            // out-of-support proposals give -inf and are never accepted
            if log_ratio > f64::NEG_INFINITY && u.ln() < log_ratio {
                cur[k] = proposal;
                cur_lp = prop_lp;
                accepted[k] += 1;
            }
        }
        if cfg.scheme == ScanScheme::Stale {
            cur_lp = posterior_value(&ModelParams::from_array(cur), h, s);
        }
        draws.push(ModelParams::from_array(cur));
    }

    let m = cfg.chain_length as f64;
    let acceptance_rates = accepted.map(|a| a as f64 / m);
    let mut warnings = Vec::new();
    for (k, name) in ["alpha", "lambda", "beta"].iter().enumerate() {
        let rate = acceptance_rates[k];
        if cfg.update[k] && !(0.05..=0.95).contains(&rate) {
            let msg = format!("acceptance rate for {name} is {rate:.3}, outside [0.05, 0.95]");
            log::warn!("{msg}");
            warnings.push(msg);
        }
    }
    Ok(PosteriorChain {
        draws,
        burn_in: cfg.burn_in,
        acceptance_rates,
        seed: cfg.seed,
        warnings,
    })
}
