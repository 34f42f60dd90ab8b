//! Classical inference: likelihood, Newton-Raphson fitting, and Wald
//! intervals from the observed information.

mod interval;
mod likelihood;
mod newton;
mod profile;

pub use interval::{asymptotic_ci, upper_normal_quantile, IntervalEstimate};
pub use likelihood::{log_likelihood, observed_information, score};
pub use newton::{fit_mle, fit_mle_from, initial_guess, MleFit, SolverOptions};
pub use profile::fit_baseline;

pub(crate) use likelihood::{check_identifiable, value as log_likelihood_value};
