//! Posterior kernel and sampler checked against brute-force quadrature.

use gumbel_sslt::bayes::{
    batch_means_se, log_conditional, log_posterior_unnorm, run_mh, Coordinate, MhConfig, PriorSpec,
};
use gumbel_sslt::gumbel::{ModelParams, TamperingTime};
use gumbel_sslt::sampler::{generate_censored_sample, rng_from_seed, Case, CensoredSample, ExperimentDesign};
use statrs::distribution::{ChiSquared, Continuous, ContinuousCDF, Gamma};

/// Log posterior written out from the densities, without the crate's
/// likelihood code.
fn reference_log_post(p: [f64; 3], h: &PriorSpec, s: &CensoredSample) -> f64 {
    let [a, l, b] = p;
    let tau = s.tau().get();
    let ln_f = |z: f64| a.ln() + l.ln() - (a + 1.0) * z.ln() - l * z.powf(-a);
    let mut v = (h.a - 1.0) * a.ln() - h.b * a + (h.c - 1.0) * l.ln() - h.d * l
        + (h.p - 1.0) * b.ln()
        + (h.q - 1.0) * (1.0 - b).ln();
    for &t in s.times() {
        v += if t <= tau { ln_f(t) } else { ln_f(tau + (t - tau) / b) - b.ln() };
    }
    let last = s.last();
    let zr = if last <= tau { last } else { tau + (last - tau) / b };
    v + (s.n() - s.r()) as f64 * (1.0 - (-l * zr.powf(-a)).exp()).ln()
}

struct Grid {
    hi: [f64; 3],
    k: usize,
}

impl Grid {
    fn node(&self, i: usize, axis: usize) -> f64 {
        (i as f64 + 0.5) * self.hi[axis] / self.k as f64
    }

    fn cell(&self) -> f64 {
        self.hi.iter().map(|h| h / self.k as f64).product()
    }

    /// Normalising constant and posterior means, with log densities shifted
    /// by `shift` to avoid underflow.
    fn integrate(&self, f: impl Fn([f64; 3]) -> f64, shift: f64) -> (f64, [f64; 3]) {
        let mut z = 0.0;
        let mut m = [0.0; 3];
        for i in 0..self.k {
            for j in 0..self.k {
                for l in 0..self.k {
                    let p = [self.node(i, 0), self.node(j, 1), self.node(l, 2)];
                    let w = (f(p) - shift).exp();
                    z += w;
                    for d in 0..3 {
                        m[d] += w * p[d];
                    }
                }
            }
        }
        let c = self.cell();
        (z * c, m.map(|v| v / z))
    }
}

fn prior() -> PriorSpec {
    PriorSpec::new(2.0, 1.0, 2.0, 1.0, 2.0, 2.0).unwrap()
}

/// The first five case-two samples of eight failures out of ten.
fn small_samples() -> Vec<CensoredSample> {
    let truth = ModelParams::new(1.0, 0.75, 0.35).unwrap();
    let design = ExperimentDesign::new(10, 8, TamperingTime::new(0.6).unwrap()).unwrap();
    (0..)
        .map(|seed| generate_censored_sample(&truth, &design, &mut rng_from_seed(seed)).unwrap())
        .filter(|s| s.case() == Case::CaseII)
        .take(5)
        .collect()
}

const BOX: [f64; 3] = [8.0, 12.0, 1.0];

#[test]
fn crate_kernel_matches_the_reference_kernel() {
    let h = prior();
    for s in small_samples() {
        for p in [[0.5, 0.3, 0.2], [1.2, 2.0, 0.6], [3.0, 0.9, 0.95]] {
            let mp = ModelParams::from_array(p);
            let diff = log_posterior_unnorm(&mp, &h, &s).unwrap() - reference_log_post(p, &h, &s);
            assert!(diff.abs() < 1e-9, "{p:?}: {diff}");
        }
    }
}

#[test]
fn grid_normalised_posterior_integrates_to_one() {
    let h = prior();
    let s = &small_samples()[0];
    let f = |p: [f64; 3]| log_posterior_unnorm(&ModelParams::from_array(p), &h, s).unwrap();
    let shift = f([1.0, 0.75, 0.35]);
    let (z80, _) = Grid { hi: BOX, k: 80 }.integrate(f, shift);
    let (z120, _) = Grid { hi: BOX, k: 120 }.integrate(f, shift);
    assert!((z120 / z80 - 1.0).abs() < 1e-3, "{z80} {z120}");
}

#[test]
fn sharper_alpha_prior_moves_the_mode_down() {
    let s = &small_samples()[1];
    let argmax_alpha = |b: f64| {
        let h = PriorSpec::new(2.0, b, 2.0, 1.0, 2.0, 2.0).unwrap();
        let g = Grid { hi: BOX, k: 60 };
        let mut best = (f64::NEG_INFINITY, 0.0);
        for i in 0..g.k {
            for j in 0..g.k {
                for l in 0..g.k {
                    let p = [g.node(i, 0), g.node(j, 1), g.node(l, 2)];
                    let v = log_posterior_unnorm(&ModelParams::from_array(p), &h, s).unwrap();
                    if v > best.0 {
                        best = (v, p[0]);
                    }
                }
            }
        }
        best.1
    };
    assert!(argmax_alpha(20.0) < argmax_alpha(1.0));
}

#[test]
fn lambda_conditional_is_a_gamma_density_without_censoring() {
    let h = PriorSpec::new(2.0, 1.0, 3.0, 0.5, 2.0, 2.0).unwrap();
    let tau = TamperingTime::new(0.6).unwrap();
    let s = CensoredSample::new(vec![0.21, 0.37, 0.55, 0.71, 0.93, 1.42], 6, tau).unwrap();
    let (alpha, beta) = (1.3, 0.4);
    let pow: f64 = s
        .times()
        .iter()
        .map(|&t| if t <= 0.6 { t } else { 0.6 + (t - 0.6) / beta })
        .map(|z| z.powf(-alpha))
        .sum();
    let gamma = Gamma::new(s.r() as f64 + h.c, h.d + pow).unwrap();

    let k = 20_000;
    let hi = 15.0;
    let dx = hi / k as f64;
    let lc = |l: f64| {
        log_conditional(Coordinate::Lambda, &ModelParams { alpha, lambda: l, beta }, &h, &s).unwrap()
    };
    let shift = lc((gamma.shape() - 1.0) / gamma.rate());
    let z: f64 = (0..k).map(|i| (lc((i as f64 + 0.5) * dx) - shift).exp()).sum::<f64>() * dx;
    for l in [0.5, 1.0, 2.0, 3.5, 6.0] {
        let grid_pdf = (lc(l) - shift).exp() / z;
        assert!((grid_pdf - gamma.pdf(l)).abs() < 1e-6, "{l}: {grid_pdf} vs {}", gamma.pdf(l));
    }
}

#[test]
fn beta_conditional_with_one_tampered_failure() {
    let h = PriorSpec::new(2.0, 1.0, 2.0, 1.0, 3.0, 2.0).unwrap();
    let tau = TamperingTime::new(0.6).unwrap();
    let s = CensoredSample::new(vec![0.21, 0.37, 0.55, 0.9], 7, tau).unwrap();
    let (a, l) = (1.1, 0.8);
    let term = |b: f64| {
        let z = 0.6 + 0.3 / b;
        (h.p - 1.0) * b.ln() + (h.q - 1.0) * (1.0 - b).ln() - b.ln() - (a + 1.0) * z.ln() - l * z.powf(-a)
            + 3.0 * (1.0 - (-l * z.powf(-a)).exp()).ln()
    };
    let lc = |b: f64| {
        log_conditional(Coordinate::Beta, &ModelParams { alpha: a, lambda: l, beta: b }, &h, &s).unwrap()
    };
    for (b1, b2) in [(0.2, 0.7), (0.05, 0.5), (0.9, 0.3)] {
        assert!(((lc(b1) - lc(b2)) - (term(b1) - term(b2))).abs() < 1e-10);
    }
}

#[test]
fn chain_means_match_grid_quadrature() {
    let h = prior();
    for (idx, s) in small_samples().iter().enumerate() {
        let f = |p: [f64; 3]| reference_log_post(p, &h, s);
        let (_, grid_mean) = Grid { hi: BOX, k: 80 }.integrate(f, f([1.0, 0.75, 0.35]));
        let init = ModelParams::from_array(grid_mean);
        let cfg = MhConfig::new(200_000, 5_000, init, [0.5, 0.6, 0.25], 1000 + idx as u64);
        let chain = run_mh(s, &h, &cfg).unwrap();
        for k in 0..3 {
            let col = chain.column(k);
            let mean = col.iter().sum::<f64>() / col.len() as f64;
            let se = batch_means_se(&col, 50);
            assert!(
                (mean - grid_mean[k]).abs() < 3.0 * se,
                "sample {idx} coordinate {k}: chain {mean} grid {} se {se}",
                grid_mean[k]
            );
        }
    }
}

#[test]
fn one_dimensional_slice_has_the_conditional_as_stationary_law() {
    let h = prior();
    let s = &small_samples()[2];
    let (alpha, lambda) = (1.0, 0.8);
    let lc = |b: f64| {
        log_conditional(Coordinate::Beta, &ModelParams { alpha, lambda, beta: b }, &h, s).unwrap()
    };
    let bins = 50;
    let fine = 200;
    let shift = (1..100).map(|i| lc(i as f64 / 100.0)).fold(f64::NEG_INFINITY, f64::max);
    let mut prob = vec![0.0; bins];
    for (i, p) in prob.iter_mut().enumerate() {
        for j in 0..fine {
            let b = (i as f64 + (j as f64 + 0.5) / fine as f64) / bins as f64;
            *p += (lc(b) - shift).exp();
        }
    }
    let total: f64 = prob.iter().sum();
    prob.iter_mut().for_each(|p| *p /= total);

    let m = 200_000;
    let thin = 10;
    let mut cfg = MhConfig::new(m * thin + 1000, 1000, ModelParams { alpha, lambda, beta: 0.5 }, [1.0, 1.0, 0.3], 77);
    cfg.update = [false, false, true];
    let chain = run_mh(s, &h, &cfg).unwrap();
    let draws: Vec<f64> = chain.column(2).into_iter().step_by(thin).collect();
    let mut counts = vec![0usize; bins];
    for b in &draws {
        counts[((b * bins as f64) as usize).min(bins - 1)] += 1;
    }
    let n = draws.len() as f64;
    let chi2: f64 = counts
        .iter()
        .zip(&prob)
        .map(|(&o, &p)| (o as f64 - n * p).powi(2) / (n * p))
        .sum();
    let crit = ChiSquared::new((bins - 1) as f64).unwrap().inverse_cdf(0.99);
    assert!(chi2 < crit, "chi2 {chi2} >= {crit}");
}
