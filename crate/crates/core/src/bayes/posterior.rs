use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gumbel::ModelParams;
use crate::mle::log_likelihood_value;
use crate::sampler::CensoredSample;

/// Independent gamma priors on `alpha` and `lambda` (shape, rate) and a beta
/// prior on `beta`.
///
/// ```text
/// pi(alpha, lambda, beta) ∝ alpha^(a-1) e^(-b alpha)
///                          * lambda^(c-1) e^(-d lambda)
///                          * beta^(p-1) (1 - beta)^(q-1)
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub p: f64,
    pub q: f64,
}

impl PriorSpec {
    pub fn new(a: f64, b: f64, c: f64, d: f64, p: f64, q: f64) -> Result<Self> {
        let h = Self { a, b, c, d, p, q };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        let named = [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
            ("p", self.p),
            ("q", self.q),
        ];
        for (name, v) in named {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParams(format!(
                    "hyperparameter {name} must be finite and > 0, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Priors centred on `center`: gamma priors with shape 4 (standard
    /// deviation half the mean) and a beta prior with mean `center.beta`
    /// and standard deviation `beta_sd`.
    pub fn centered(center: &ModelParams, beta_sd: f64) -> Result<Self> {
        center.validate()?;
        let m = center.beta;
        let v = beta_sd * beta_sd;
        if !(m < 1.0 && v > 0.0 && v < m * (1.0 - m)) {
            return Err(Error::InvalidParams(format!(
                "no beta prior has mean {m} and standard deviation {beta_sd}"
            )));
        }
        let total = m * (1.0 - m) / v - 1.0;
        Self::new(
            4.0,
            4.0 / center.alpha,
            4.0,
            4.0 / center.lambda,
            m * total,
            (1.0 - m) * total,
        )
    }

    /// Prior means of `(alpha, lambda, beta)`.
    pub fn mean(&self) -> ModelParams {
        ModelParams {
            alpha: self.a / self.b,
            lambda: self.c / self.d,
            beta: self.p / (self.p + self.q),
        }
    }
}

/// Log prior density up to an additive constant; `-inf` outside the support.
pub fn log_prior(p: &ModelParams, h: &PriorSpec) -> f64 {
    if !(p.alpha > 0.0 && p.lambda > 0.0 && p.beta > 0.0 && p.beta < 1.0) {
        return f64::NEG_INFINITY;
    }
    let v = (h.a - 1.0) * p.alpha.ln() - h.b * p.alpha + (h.c - 1.0) * p.lambda.ln()
        - h.d * p.lambda
        + (h.p - 1.0) * p.beta.ln()
        + (h.q - 1.0) * (-p.beta).ln_1p();
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

/// Log prior plus log-likelihood; the posterior normalising constant is
/// omitted.
pub fn log_posterior_unnorm(p: &ModelParams, h: &PriorSpec, s: &CensoredSample) -> Result<f64> {
    crate::mle::check_identifiable(s)?;
    Ok(posterior_value(p, h, s))
}

pub(crate) fn posterior_value(p: &ModelParams, h: &PriorSpec, s: &CensoredSample) -> f64 {
    let lp = log_prior(p, h);
    if lp == f64::NEG_INFINITY {
        return lp;
    }
    lp + log_likelihood_value(p, s)
}

/// Which coordinate a full conditional refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coordinate {
    Alpha,
    Lambda,
    Beta,
}

impl Coordinate {
    pub const ALL: [Coordinate; 3] = [Coordinate::Alpha, Coordinate::Lambda, Coordinate::Beta];

    pub fn index(self) -> usize {
        match self {
            Coordinate::Alpha => 0,
            Coordinate::Lambda => 1,
            Coordinate::Beta => 2,
        }
    }
}

/// Unnormalised log full conditional of `which` at `p`.
///
/// Evaluated as the joint log posterior; the two differ by a quantity that
/// does not depend on the selected coordinate, so ratios in that coordinate
/// are exact.
pub fn log_conditional(
    which: Coordinate,
    p: &ModelParams,
    h: &PriorSpec,
    s: &CensoredSample,
) -> Result<f64> {
    let _ = which;
    log_posterior_unnorm(p, h, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gumbel::TamperingTime;

    fn sample(n: usize) -> CensoredSample {
        CensoredSample::new(vec![0.21, 0.37, 0.55, 0.71, 0.93], n, TamperingTime::new(0.6).unwrap())
            .unwrap()
    }

    #[test]
    fn unit_shapes_leave_only_the_rate_terms() {
        let h = PriorSpec::new(1.0, 0.5, 1.0, 2.0, 1.0, 1.0).unwrap();
        for (a, l, b) in [(0.3, 0.2, 0.1), (2.0, 5.0, 0.9), (1.0, 1.0, 0.5)] {
            let p = ModelParams::new(a, l, b).unwrap();
            assert!((log_prior(&p, &h) - (-0.5 * a - 2.0 * l)).abs() < 1e-14);
        }
    }

    #[test]
    fn density_ratio_matches_closed_form() {
        let h = PriorSpec::new(2.5, 1.5, 3.0, 0.7, 2.0, 4.0).unwrap();
        let dens = |p: &ModelParams| {
            p.alpha.powf(h.a - 1.0)
                * (-h.b * p.alpha).exp()
                * p.lambda.powf(h.c - 1.0)
                * (-h.d * p.lambda).exp()
                * p.beta.powf(h.p - 1.0)
                * (1.0 - p.beta).powf(h.q - 1.0)
        };
        let p1 = ModelParams::new(0.8, 1.3, 0.25).unwrap();
        let p2 = ModelParams::new(1.7, 0.4, 0.6).unwrap();
        let ratio = (log_prior(&p1, &h) - log_prior(&p2, &h)).exp();
        assert!((ratio / (dens(&p1) / dens(&p2)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn support_edges() {
        let h = PriorSpec::new(2.0, 1.0, 2.0, 1.0, 2.0, 2.0).unwrap();
        assert_eq!(
            log_prior(&ModelParams { alpha: 1.0, lambda: 1.0, beta: 1.0 }, &h),
            f64::NEG_INFINITY
        );
        assert_eq!(
            log_prior(&ModelParams { alpha: 0.0, lambda: 1.0, beta: 0.5 }, &h),
            f64::NEG_INFINITY
        );
        let near = log_prior(&ModelParams { alpha: 1.0, lambda: 1.0, beta: 1.0 - 1e-300 }, &h);
        assert!(near < -600.0 || near == f64::NEG_INFINITY);
    }

    #[test]
    fn unit_prior_posterior_tracks_the_likelihood() {
        let s = sample(7);
        let h = PriorSpec::new(1.0, 1e-300, 1.0, 1e-300, 1.0, 1.0).unwrap();
        let ll = |p: &ModelParams| crate::mle::log_likelihood(p, &s).unwrap();
        let p1 = ModelParams::new(0.8, 1.3, 0.25).unwrap();
        let p2 = ModelParams::new(1.7, 0.4, 0.6).unwrap();
        let d_post = log_posterior_unnorm(&p1, &h, &s).unwrap() - log_posterior_unnorm(&p2, &h, &s).unwrap();
        assert!((d_post - (ll(&p1) - ll(&p2))).abs() < 1e-10);
    }

    #[test]
    fn conditional_differences_match_the_joint() {
        let s = sample(9);
        let h = PriorSpec::new(2.0, 2.0, 3.0, 1.0, 2.0, 3.0).unwrap();
        let base = ModelParams::new(1.1, 0.9, 0.4).unwrap();
        for c in Coordinate::ALL {
            let mut p1 = base.as_array();
            let mut p2 = base.as_array();
            p1[c.index()] *= 0.8;
            p2[c.index()] *= 1.1;
            let (p1, p2) = (ModelParams::from_array(p1), ModelParams::from_array(p2));
            let dc = log_conditional(c, &p1, &h, &s).unwrap() - log_conditional(c, &p2, &h, &s).unwrap();
            let dj = log_posterior_unnorm(&p1, &h, &s).unwrap() - log_posterior_unnorm(&p2, &h, &s).unwrap();
            assert_eq!(dc, dj);
        }
    }

    #[test]
    fn centred_prior_moments() {
        let truth = ModelParams::new(1.0, 0.75, 0.35).unwrap();
        let h = PriorSpec::centered(&truth, 0.15).unwrap();
        assert_eq!((h.a, h.c), (4.0, 4.0));
        let m = h.mean();
        assert!((m.alpha - 1.0).abs() < 1e-12);
        assert!((m.lambda - 0.75).abs() < 1e-12);
        assert!((m.beta - 0.35).abs() < 1e-12);
        let s2 = h.p * h.q / ((h.p + h.q).powi(2) * (h.p + h.q + 1.0));
        assert!((s2.sqrt() - 0.15).abs() < 1e-12);
        assert!(PriorSpec::centered(&ModelParams::new(1.0, 1.0, 0.5).unwrap(), 0.6).is_err());
    }

    #[test]
    fn rejects_bad_hyperparameters() {
        assert!(PriorSpec::new(0.0, 1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(PriorSpec::new(1.0, 1.0, 1.0, 1.0, 1.0, f64::NAN).is_err());
    }
}
