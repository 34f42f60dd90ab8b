//! Inference for Gumbel Type-II lifetimes observed in a simple step-stress
//! life test with Type-II censoring, under the tampered random variable
//! model.
//!
//! The crate covers
//!
//! * the distribution kernel ([`gumbel`]) and sample generation
//!   ([`sampler`]),
//! * maximum likelihood with observed-information intervals ([`mle`]),
//! * Bayesian estimation by Metropolis-Hastings ([`bayes`]),
//! * a Monte Carlo study harness ([`study`]),
//! * goodness-of-fit tooling and the embedded bladder-cancer data
//!   ([`gof`], [`data`]).
//!
//! ```
//! use gumbel_sslt::prelude::*;
//!
//! let truth = ModelParams::new(1.0, 0.75, 0.35)?;
//! let design = ExperimentDesign::new(250, 200, TamperingTime::new(0.6)?)?;
//! let sample = generate_censored_sample(&truth, &design, &mut rng_from_seed(7))?;
//! let fit = fit_mle(&sample, &SolverOptions::default())?;
//! assert!((fit.params_hat.alpha - 1.0).abs() < 0.3);
//! # Ok::<(), gumbel_sslt::Error>(())
//! ```

pub mod bayes;
pub mod data;
pub mod error;
pub mod gof;
pub mod gumbel;
pub mod io;
pub mod mle;
pub mod report;
pub mod sampler;
pub mod study;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::bayes::{run_mh, LossSpec, MhConfig, PosteriorChain, PriorSpec};
    pub use crate::error::{Error, Result};
    pub use crate::gumbel::{GumbelII, ModelParams, TamperingTime};
    pub use crate::mle::{asymptotic_ci, fit_mle, IntervalEstimate, MleFit, SolverOptions};
    pub use crate::sampler::{
        generate_censored_sample, rng_from_seed, Case, CensoredSample, ExperimentDesign,
    };
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/mle.md")]
    mod mle {}
    #[doc = include_str!("../../../book/src/bayes.md")]
    mod bayes {}
    #[doc = include_str!("../../../book/src/study.md")]
    mod study {}
    #[doc = include_str!("../../../book/src/real_data.md")]
    mod real_data {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
