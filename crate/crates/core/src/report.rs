//! Serializable summaries of fits, chains and the real-data analysis.

use serde::{Deserialize, Serialize};

use crate::bayes::{
    credible_interval, default_start, hpd_interval, point_estimate, run_mh, LossSpec, MhConfig, PosteriorChain,
    PriorSpec, ScanScheme,
};
use crate::data::{bladder_remission, bladder_step_stress};
use crate::error::Result;
use crate::gof::{ks_test, parametric_bootstrap_p, Dataset, KsResult};
use crate::gumbel::{GumbelII, ModelParams};
use crate::mle::{asymptotic_ci, fit_baseline, fit_mle, IntervalEstimate, MleFit, SolverOptions};
use crate::sampler::{Case, CensoredSample};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub n: usize,
    pub r: usize,
    pub tau: f64,
    pub n_pre_tau: usize,
    pub case: Case,
}

impl From<&CensoredSample> for SampleSummary {
    fn from(s: &CensoredSample) -> Self {
        Self {
            n: s.n(),
            r: s.r(),
            tau: s.tau().get(),
            n_pre_tau: s.n_pre_tau(),
            case: s.case(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MleSummary {
    pub estimates: ModelParams,
    pub std_errors: [f64; 3],
    pub loglik: f64,
    pub score_norm: f64,
    pub iterations: usize,
    pub cov_matrix: [[f64; 3]; 3],
    pub gamma: f64,
    /// Asymptotic intervals for alpha, lambda, beta.
    pub intervals: [IntervalEstimate; 3],
}

impl MleSummary {
    pub fn new(fit: &MleFit, gamma: f64) -> Result<Self> {
        Ok(Self {
            estimates: fit.params_hat,
            std_errors: fit.std_errors(),
            loglik: fit.loglik,
            score_norm: fit.score_norm,
            iterations: fit.iterations,
            cov_matrix: fit.cov_matrix,
            gamma,
            intervals: asymptotic_ci(fit, gamma)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinexEstimate {
    pub u: f64,
    pub estimate: ModelParams,
}

/// Sampler settings for [`analyze`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BayesOptions {
    pub prior: PriorSpec,
    pub chain_length: usize,
    pub burn_in: usize,
    pub linex_u: Vec<f64>,
    pub gamma: f64,
    pub seed: u64,
    pub scheme: ScanScheme,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BayesSummary {
    pub prior: PriorSpec,
    pub chain_length: usize,
    pub burn_in: usize,
    pub seed: u64,
    pub scheme: ScanScheme,
    pub init: ModelParams,
    pub proposal_sds: [f64; 3],
    pub sel: ModelParams,
    pub linex: Vec<LinexEstimate>,
    pub gamma: f64,
    /// Equal-tailed intervals.
    pub percentile: [IntervalEstimate; 3],
    pub hpd: [IntervalEstimate; 3],
    pub acceptance_rates: [f64; 3],
    pub warnings: Vec<String>,
}

impl BayesSummary {
    pub fn new(chain: &PosteriorChain, cfg: &MhConfig, opts: &BayesOptions) -> Result<Self> {
        let linex = opts
            .linex_u
            .iter()
            .map(|&u| {
                Ok(LinexEstimate {
                    u,
                    estimate: point_estimate(chain, LossSpec::linex(u)?)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            prior: opts.prior,
            chain_length: cfg.chain_length,
            burn_in: cfg.burn_in,
            seed: cfg.seed,
            scheme: cfg.scheme,
            init: cfg.init,
            proposal_sds: cfg.proposal_sds,
            sel: point_estimate(chain, LossSpec::Sel)?,
            linex,
            gamma: opts.gamma,
            percentile: credible_interval(chain, opts.gamma)?,
            hpd: hpd_interval(chain, opts.gamma)?,
            acceptance_rates: chain.acceptance_rates,
            warnings: chain.warnings.clone(),
        })
    }
}

/// Maximum likelihood followed by Metropolis-Hastings started at the MLE.
/// If the likelihood cannot be maximised the chain starts from the prior
/// means and the MLE part is `None`.
pub fn analyze(
    s: &CensoredSample,
    opts: &BayesOptions,
) -> Result<(Option<MleSummary>, BayesSummary, PosteriorChain)> {
    let fit = fit_mle(s, &SolverOptions::default());
    if let Err(e) = &fit {
        log::warn!("maximum likelihood failed ({e}); starting the chain at the prior means");
    }
    let fit = fit.ok();
    let (init, sds) = default_start(fit.as_ref(), &opts.prior);
    let mut cfg = MhConfig::new(opts.chain_length, opts.burn_in, init, sds, opts.seed);
    cfg.scheme = opts.scheme;
    let chain = run_mh(s, &opts.prior, &cfg)?;
    let mle = fit.map(|f| MleSummary::new(&f, opts.gamma)).transpose()?;
    let bayes = BayesSummary::new(&chain, &cfg, opts)?;
    Ok((mle, bayes, chain))
}

/// Centre of the default prior for the embedded step-stress data.
pub const REAL_DATA_PRIOR_CENTER: ModelParams = ModelParams {
    alpha: 0.75,
    lambda: 2.5,
    beta: 0.5,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofSummary {
    pub label: String,
    pub n: usize,
    pub model: GumbelII,
    /// Whether `model` was fitted to the same data.
    pub fitted: bool,
    pub ks: KsResult,
    /// Parametric-bootstrap p-value, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bootstrap_p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bootstrap_replicates: Option<usize>,
}

/// K-S test of `d` against `model`, or against the baseline fitted to `d`
/// when `model` is `None`. `bootstrap` is `(replicates, seed)`; it needs a
/// fitted model.
pub fn goodness_of_fit(d: &Dataset, model: Option<GumbelII>, bootstrap: Option<(usize, u64)>) -> Result<GofSummary> {
    let fitted = model.is_none();
    let model = match model {
        Some(m) => m,
        None => fit_baseline(d.values())?,
    };
    let ks = ks_test(d, &model)?;
    let bootstrap_p = match bootstrap {
        Some((reps, seed)) if fitted => Some(parametric_bootstrap_p(d, &model, reps, seed)?),
        Some(_) => {
            return Err(crate::Error::Config(
                "the parametric bootstrap applies to fitted parameters only".into(),
            ))
        }
        None => None,
    };
    Ok(GofSummary {
        label: d.label().to_string(),
        n: d.len(),
        model,
        fitted,
        ks,
        bootstrap_p,
        bootstrap_replicates: bootstrap.map(|b| b.0),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealDataReport {
    pub sample: SampleSummary,
    pub mle: MleSummary,
    pub bayes: BayesSummary,
    /// Baseline fit and K-S test on the complete remission-time sample.
    pub gof: GofSummary,
}

/// Maximum likelihood and Bayes fits to one embedded configuration.
pub fn real_data_report(tau: f64, r: usize, opts: &BayesOptions) -> Result<RealDataReport> {
    real_data_analysis(tau, r, opts).map(|(rep, _)| rep)
}

/// As [`real_data_report`], also returning the chain.
pub fn real_data_analysis(tau: f64, r: usize, opts: &BayesOptions) -> Result<(RealDataReport, PosteriorChain)> {
    let s = bladder_step_stress(tau, r)?.sample()?;
    let fit = fit_mle(&s, &SolverOptions::default())?;
    let mle = MleSummary::new(&fit, opts.gamma)?;
    let (init, sds) = default_start(Some(&fit), &opts.prior);
    let mut cfg = MhConfig::new(opts.chain_length, opts.burn_in, init, sds, opts.seed);
    cfg.scheme = opts.scheme;
    let chain = run_mh(&s, &opts.prior, &cfg)?;
    let report = RealDataReport {
        sample: SampleSummary::from(&s),
        mle,
        bayes: BayesSummary::new(&chain, &cfg, opts)?,
        gof: goodness_of_fit(&bladder_remission(), None, None)?,
    };
    Ok((report, chain))
}
