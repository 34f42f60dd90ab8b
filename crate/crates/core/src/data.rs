//! Bladder-cancer remission times (months).
//!
//! Two views are provided:
//!
//! * [`bladder_remission`]: the complete remission-time sample used for
//!   goodness-of-fit checks of the baseline law.
//! * [`bladder_step_stress`]: four simple step-stress samples built from the
//!   smallest remission times. Failures after the change point are recorded
//!   on the accelerated clock with tampering coefficient 0.5, i.e. a raw
//!   time `x > tau` appears as `tau + 0.5 (x - tau)`. Each sample stops at
//!   the `r`-th failure out of [`BLADDER_UNITS`] patients on test.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gof::Dataset;
use crate::gumbel::TamperingTime;
use crate::sampler::CensoredSample;

/// Units on test in the step-stress samples.
pub const BLADDER_UNITS: usize = 124;

const STAGE1_TAU_4: [f64; 40] = [
    0.080, 0.200, 0.400, 0.500, 0.510, 0.810, 0.900, 1.050, 1.190, 1.260, 1.350, 1.400, 1.460,
    1.760, 2.020, 2.020, 2.090, 2.220, 2.260, 2.460, 2.540, 2.620, 2.640, 2.690, 2.690, 2.730,
    2.750, 2.830, 2.870, 3.020, 3.250, 3.310, 3.360, 3.480, 3.520, 3.570, 3.640, 3.700, 3.820,
    3.880,
];

const STAGE2_TAU_4: [f64; 20] = [
    4.090, 4.115, 4.130, 4.165, 4.170, 4.200, 4.250, 4.255, 4.435, 4.490, 4.530, 4.545, 4.585,
    4.660, 4.660, 4.670, 4.705, 4.705, 4.745, 4.810,
];

const STAGE2_TAU_2_5: [f64; 40] = [
    2.520, 2.560, 2.570, 2.595, 2.595, 2.615, 2.625, 2.665, 2.685, 2.760, 2.875, 2.905, 2.930,
    2.990, 3.010, 3.035, 3.070, 3.100, 3.160, 3.190, 3.340, 3.365, 3.380, 3.415, 3.420, 3.450,
    3.500, 3.505, 3.685, 3.740, 3.780, 3.795, 3.835, 3.910, 3.910, 3.920, 3.955, 3.955, 3.995,
    4.060,
];

/// Remission times beyond the first sixty.
const REMAINDER: [f64; 67] = [
    5.71, 5.85, 6.25, 6.54, 6.76, 6.93, 6.94, 6.97, 7.09, 7.26, 7.28, 7.32, 7.39, 7.59, 7.62,
    7.63, 7.66, 7.87, 7.93, 8.26, 8.37, 8.53, 8.65, 8.66, 9.02, 9.22, 9.47, 9.74, 10.06, 10.34,
    10.66, 10.75, 11.25, 11.64, 11.79, 11.98, 12.02, 12.03, 12.07, 12.63, 13.11, 13.29, 13.80,
    14.24, 14.76, 14.77, 14.83, 15.96, 16.62, 17.12, 17.14, 17.36, 18.10, 19.13, 20.28, 21.73,
    22.69, 23.63, 25.74, 25.82, 26.31, 32.15, 34.26, 36.66, 43.01, 46.12, 79.05,
];

/// Tampering coefficient used to build the accelerated-clock records.
const RECORDED_BETA: f64 = 0.5;

/// One of the four embedded step-stress configurations.
#[derive(Debug, Clone, Serialize)]
pub struct BladderStepStress {
    pub tau: f64,
    pub r: usize,
    /// Failure times as recorded, including duplicates.
    pub recorded: Vec<f64>,
    /// Failures at the first stress level.
    pub n_pre_tau: usize,
}

impl BladderStepStress {
    /// The configuration as a censored sample. Repeated recorded times are
    /// separated by one ulp so that the order is strict.
    pub fn sample(&self) -> Result<CensoredSample> {
        let mut t = self.recorded.clone();
        crate::sampler::order_and_censor(&mut t, self.r);
        CensoredSample::new(t, BLADDER_UNITS, TamperingTime::new(self.tau)?)
    }
}

/// Step-stress configuration for `tau` in {2.5, 4} and `r` in {50, 60}.
pub fn bladder_step_stress(tau: f64, r: usize) -> Result<BladderStepStress> {
    let (stage1, stage2): (&[f64], &[f64]) = if tau == 2.5 {
        (&STAGE1_TAU_4[..20], &STAGE2_TAU_2_5[..])
    } else if tau == 4.0 {
        (&STAGE1_TAU_4[..], &STAGE2_TAU_4[..])
    } else {
        return Err(Error::InvalidDesign(format!(
            "embedded data exist for tau in {{2.5, 4}}, got {tau}"
        )));
    };
    if r != 50 && r != 60 {
        return Err(Error::InvalidDesign(format!(
            "embedded data exist for r in {{50, 60}}, got {r}"
        )));
    }
    let recorded: Vec<f64> = stage1.iter().chain(stage2).copied().take(r).collect();
    Ok(BladderStepStress {
        tau,
        r,
        recorded,
        n_pre_tau: stage1.len(),
    })
}

/// All four embedded configurations in (tau, r) order.
pub fn bladder_configurations() -> Vec<BladderStepStress> {
    [(2.5, 50), (2.5, 60), (4.0, 50), (4.0, 60)]
        .into_iter()
        .map(|(t, r)| bladder_step_stress(t, r).expect("embedded configuration"))
        .collect()
}

/// The complete remission-time sample, ascending.
///
/// The first sixty values are the untampered times underlying the
/// step-stress records; the later stage-two records are mapped back to the
/// original clock.
pub fn bladder_remission() -> Dataset {
    let mut values: Vec<f64> = STAGE1_TAU_4.to_vec();
    values.extend(
        STAGE2_TAU_4
            .iter()
            .map(|&t| round_cents(4.0 + (t - 4.0) / RECORDED_BETA)),
    );
    values.extend_from_slice(&REMAINDER);
    Dataset::new(values, "bladder cancer remission times (months)").expect("embedded data")
}

fn round_cents(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::Case;

    #[test]
    fn table_values() {
        let a = bladder_step_stress(2.5, 50).unwrap();
        assert_eq!(a.recorded.len(), 50);
        assert_eq!(a.recorded[0], 0.080);
        assert_eq!(*a.recorded.last().unwrap(), 3.740);
        assert_eq!(a.n_pre_tau, 20);
        let b = bladder_step_stress(4.0, 60).unwrap();
        assert_eq!(*b.recorded.last().unwrap(), 4.810);
        assert_eq!(b.n_pre_tau, 40);
        assert_eq!(*bladder_step_stress(2.5, 60).unwrap().recorded.last().unwrap(), 4.060);
        assert_eq!(*bladder_step_stress(4.0, 50).unwrap().recorded.last().unwrap(), 4.490);
    }

    #[test]
    fn configurations_are_ordered_case_two_samples() {
        for c in bladder_configurations() {
            assert!(c.recorded.windows(2).all(|w| w[1] >= w[0]));
            let s = c.sample().unwrap();
            assert_eq!(s.case(), Case::CaseII);
            assert_eq!(s.n_pre_tau(), c.n_pre_tau);
            assert_eq!(s.n(), BLADDER_UNITS);
            assert_eq!(s.r(), c.r);
        }
    }

    /// Sum of the recorded times in thousandths, per configuration; guards
    /// the transcription.
    #[test]
    fn transcription_checksums() {
        let sums: Vec<i64> = bladder_configurations()
            .iter()
            .map(|c| c.recorded.iter().map(|t| (t * 1000.0).round() as i64).sum())
            .collect();
        let expected: Vec<i64> = vec![
            STAGE1_TAU_4[..20].iter().chain(&STAGE2_TAU_2_5[..30]),
            STAGE1_TAU_4[..20].iter().chain(&STAGE2_TAU_2_5[..]),
            STAGE1_TAU_4[..].iter().chain(&STAGE2_TAU_4[..10]),
            STAGE1_TAU_4[..].iter().chain(&STAGE2_TAU_4[..]),
        ]
        .into_iter()
        .map(|it| it.map(|t| (t * 1000.0).round() as i64).sum())
        .collect();
        assert_eq!(sums, expected);
        assert_eq!(sums, vec![117_195, 156_310, 131_150, 177_765]);
    }

    #[test]
    fn both_stage_two_records_map_to_the_same_raw_times() {
        // The tau = 2.5 records from 3.34 on and the tau = 4 records describe
        // the same patients.
        for (a, b) in STAGE2_TAU_2_5[20..].iter().zip(STAGE2_TAU_4.iter()) {
            let raw_a = round_cents(2.5 + (a - 2.5) / RECORDED_BETA);
            let raw_b = round_cents(4.0 + (b - 4.0) / RECORDED_BETA);
            assert_eq!(raw_a, raw_b);
        }
        for (a, b) in STAGE2_TAU_2_5[..20].iter().zip(STAGE1_TAU_4[20..].iter()) {
            assert_eq!(round_cents(2.5 + (a - 2.5) / RECORDED_BETA), *b);
        }
    }

    #[test]
    fn full_sample_is_right_skewed() {
        let d = bladder_remission();
        assert!(d.values().windows(2).all(|w| w[1] >= w[0]));
        let v = d.values();
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        let median = if v.len() % 2 == 0 {
            0.5 * (v[v.len() / 2 - 1] + v[v.len() / 2])
        } else {
            v[v.len() / 2]
        };
        assert!(mean > median);
    }
}
