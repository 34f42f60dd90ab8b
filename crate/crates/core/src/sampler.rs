//! Type-II censored step-stress samples.
//!
//! All randomness flows through [`SampleRng`], a PCG64 generator
//! (`rand_pcg::Pcg64`, XSL-RR 128/64). Its output stream is fixed by the
//! algorithm, so a seed reproduces the same draws on every platform.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gumbel::{trv_quantile, ModelParams, TamperingTime};

pub type SampleRng = rand_pcg::Pcg64;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    SampleRng::seed_from_u64(seed)
}

/// Seed of the `index`-th independent replicate of a study.
pub fn replicate_seed(master: u64, index: u64) -> u64 {
    master ^ index
}

/// Where the observed failures fall relative to the tampering time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// Every observed failure happened before `tau` (`N = r`).
    #[serde(rename = "I")]
    CaseI,
    /// Failures on both sides of `tau` (`0 < N < r`).
    #[serde(rename = "II")]
    CaseII,
    /// Every observed failure happened after `tau` (`N = 0`).
    #[serde(rename = "III")]
    CaseIII,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentDesign {
    /// Units placed on test.
    pub n: usize,
    /// Failures observed before the test stops.
    pub r: usize,
    pub tau: TamperingTime,
}

impl ExperimentDesign {
    pub fn new(n: usize, r: usize, tau: TamperingTime) -> Result<Self> {
        let d = Self { n, r, tau };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 || self.r > self.n {
            return Err(Error::InvalidDesign(format!(
                "need 1 <= r <= n, got r = {}, n = {}",
                self.r, self.n
            )));
        }
        Ok(())
    }
}

/// Ordered failure times of a Type-II censored step-stress test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensoredSample {
    times: Vec<f64>,
    n_pre_tau: usize,
    design: ExperimentDesign,
    case: Case,
}

impl CensoredSample {
    /// Builds a sample from `r` strictly increasing failure times. `N` and the
    /// case tag are derived; a failure exactly at `tau` counts as pre-change.
    pub fn new(times: Vec<f64>, n: usize, tau: TamperingTime) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(i) = times.iter().position(|t| !(*t > 0.0 && t.is_finite())) {
            return Err(Error::domain("failure time", times[i], "must be finite and > 0"));
        }
        let case = classify_case(&times, tau)?;
        let design = ExperimentDesign::new(n, times.len(), tau)?;
        let n_pre_tau = times.partition_point(|&t| t <= tau.get());
        Ok(Self {
            times,
            n_pre_tau,
            design,
            case,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Failures observed at the first stress level.
    pub fn n_pre_tau(&self) -> usize {
        self.n_pre_tau
    }

    pub fn pre_tau(&self) -> &[f64] {
        &self.times[..self.n_pre_tau]
    }

    pub fn post_tau(&self) -> &[f64] {
        &self.times[self.n_pre_tau..]
    }

    pub fn design(&self) -> &ExperimentDesign {
        &self.design
    }

    pub fn tau(&self) -> TamperingTime {
        self.design.tau
    }

    pub fn n(&self) -> usize {
        self.design.n
    }

    pub fn r(&self) -> usize {
        self.design.r
    }

    pub fn case(&self) -> Case {
        self.case
    }

    /// Largest observed failure time, `t_{r:n}`.
    pub fn last(&self) -> f64 {
        self.times[self.times.len() - 1]
    }

    /// Stress level (1 or 2) of each observation.
    pub fn stress_levels(&self) -> impl Iterator<Item = (f64, u8)> + '_ {
        self.times
            .iter()
            .enumerate()
            .map(move |(i, &t)| (t, if i < self.n_pre_tau { 1 } else { 2 }))
    }
}

pub fn classify_case(times: &[f64], tau: TamperingTime) -> Result<Case> {
    if times.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(i) = times.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::NotStrictlyIncreasing { index: i + 1 });
    }
    let n_pre = times.partition_point(|&t| t <= tau.get());
    Ok(if n_pre == times.len() {
        Case::CaseI
    } else if n_pre == 0 {
        Case::CaseIII
    } else {
        Case::CaseII
    })
}

/// `n` i.i.d. tampered lifetimes by inversion of a uniform on `(0, 1)`.
pub fn draw_trv_lifetimes<R: Rng + ?Sized>(
    p: &ModelParams,
    tau: TamperingTime,
    n: usize,
    rng: &mut R,
) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let u: f64 = rng.sample(Open01);
            trv_quantile(p, tau, u).expect("u in (0, 1) and validated parameters")
        })
        .collect()
}

/// Puts `n` units on test and stops at the `r`-th failure.
pub fn generate_censored_sample<R: Rng + ?Sized>(
    p: &ModelParams,
    design: &ExperimentDesign,
    rng: &mut R,
) -> Result<CensoredSample> {
    p.validate()?;
    design.validate()?;
    let mut draws = draw_trv_lifetimes(p, design.tau, design.n, rng);
    order_and_censor(&mut draws, design.r);
    CensoredSample::new(draws, design.n, design.tau)
}

/// Sorts ascending, breaks exact ties by moving the later value up one ulp,
/// then keeps the first `r`.
pub(crate) fn order_and_censor(draws: &mut Vec<f64>, r: usize) {
    draws.sort_by(f64::total_cmp);
    for i in 1..draws.len() {
        if draws[i] <= draws[i - 1] {
            draws[i] = draws[i - 1].next_up();
        }
    }
    draws.truncate(r);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(t: f64) -> TamperingTime {
        TamperingTime::new(t).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_case(&[0.1, 0.2, 0.3], tau(1.0)).unwrap(), Case::CaseI);
        assert_eq!(classify_case(&[1.1, 1.2], tau(1.0)).unwrap(), Case::CaseIII);
        assert_eq!(classify_case(&[0.5, 1.5], tau(1.0)).unwrap(), Case::CaseII);
        assert_eq!(classify_case(&[0.5, 1.0], tau(1.0)).unwrap(), Case::CaseI);
        assert_eq!(
            classify_case(&[0.5, 0.5], tau(1.0)),
            Err(Error::NotStrictlyIncreasing { index: 1 })
        );
        assert_eq!(
            classify_case(&[0.5, 0.7, 0.6], tau(1.0)),
            Err(Error::NotStrictlyIncreasing { index: 2 })
        );
    }

    #[test]
    fn ties_are_broken_by_one_ulp() {
        let mut v = vec![2.0, 1.0, 2.0, 2.0, 3.0];
        order_and_censor(&mut v, 5);
        assert_eq!(v[0], 1.0);
        assert_eq!(v[1], 2.0);
        assert_eq!(v[2], 2.0f64.next_up());
        assert_eq!(v[3], 2.0f64.next_up().next_up());
        assert!(v.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn boundary_cases() {
        let p = ModelParams::new(1.0, 0.75, 0.35).unwrap();
        let mut rng = rng_from_seed(3);
        let d = ExperimentDesign::new(20, 15, tau(1e12)).unwrap();
        let s = generate_censored_sample(&p, &d, &mut rng).unwrap();
        assert_eq!(s.case(), Case::CaseI);
        assert_eq!(s.n_pre_tau(), 15);

        let d = ExperimentDesign::new(20, 15, tau(1e-12)).unwrap();
        let s = generate_censored_sample(&p, &d, &mut rng).unwrap();
        assert_eq!(s.case(), Case::CaseIII);
        assert_eq!(s.n_pre_tau(), 0);
    }

    #[test]
    fn sample_invariants() {
        let p = ModelParams::new(1.0, 0.75, 0.35).unwrap();
        let d = ExperimentDesign::new(50, 30, tau(0.6)).unwrap();
        let mut rng = rng_from_seed(11);
        for _ in 0..200 {
            let s = generate_censored_sample(&p, &d, &mut rng).unwrap();
            assert_eq!(s.times().len(), 30);
            let n = s.n_pre_tau();
            assert!(s.times()[..n].iter().all(|&t| t <= 0.6));
            assert!(s.times()[n..].iter().all(|&t| t > 0.6));
            let expected = match n {
                30 => Case::CaseI,
                0 => Case::CaseIII,
                _ => Case::CaseII,
            };
            assert_eq!(s.case(), expected);
        }
    }

    #[test]
    fn invalid_designs() {
        assert!(ExperimentDesign::new(5, 0, tau(1.0)).is_err());
        assert!(ExperimentDesign::new(5, 6, tau(1.0)).is_err());
        assert!(CensoredSample::new(vec![], 5, tau(1.0)).is_err());
        assert!(CensoredSample::new(vec![0.0, 1.0], 5, tau(1.0)).is_err());
        assert!(CensoredSample::new(vec![0.5, 1.0], 1, tau(1.0)).is_err());
    }

    #[test]
    fn draws_are_positive_and_reproducible() {
        let p = ModelParams::new(1.5, 0.75, 0.7).unwrap();
        let a = draw_trv_lifetimes(&p, tau(0.75), 1000, &mut rng_from_seed(42));
        let b = draw_trv_lifetimes(&p, tau(0.75), 1000, &mut rng_from_seed(42));
        assert!(a.iter().all(|&t| t > 0.0));
        assert_eq!(
            a.iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
            b.iter().map(|x| x.to_bits()).collect::<Vec<_>>()
        );
    }
}
