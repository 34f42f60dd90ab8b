//! Bayesian inference: priors and posterior kernels, a coordinate-wise
//! Metropolis-Hastings sampler, and point and interval summaries of the
//! resulting chain.

mod estimate;
mod mh;
mod posterior;

pub use estimate::{batch_means_se, credible_interval, hpd_interval, point_estimate, LossSpec};
pub use mh::{default_start, run_mh, MhConfig, PosteriorChain, ScanScheme};
pub use posterior::{log_conditional, log_posterior_unnorm, log_prior, Coordinate, PriorSpec};

pub(crate) use estimate::{estimate_column, hpd_sorted, percentile_sorted};
