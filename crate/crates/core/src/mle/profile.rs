use crate::error::{Error, Result};
use crate::gumbel::GumbelII;

/// Maximum likelihood fit of the baseline law to a complete sample.
///
/// For fixed `alpha` the scale has the closed form
/// `lambda(alpha) = k / sum x_i^-alpha`; the profile score in `alpha`
/// is then solved by bisection on `ln(alpha)`.
pub fn fit_baseline(values: &[f64]) -> Result<GumbelII> {
    if values.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(&v) = values.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::domain("observation", v, "must be finite and > 0"));
    }
    let logs: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let lmin = logs.iter().copied().fold(f64::INFINITY, f64::min);
    let lmax = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lmax - lmin < 1e-12 {
        return Err(Error::InvalidParams(
            "shape is unbounded for a sample with no spread".into(),
        ));
    }
    let k = logs.len() as f64;
    let sum_log: f64 = logs.iter().sum();

    // d/d(alpha) of the profile log-likelihood; strictly decreasing from
    // +inf at 0 to a negative limit.
    let profile_score = |alpha: f64| {
        let (mut s0, mut s1) = (0.0, 0.0);
        for &l in &logs {
            // shift by the smallest log to keep the weights bounded
            let w = (-alpha * (l - lmin)).exp();
            s0 += w;
            s1 += w * l;
        }
        k / alpha - sum_log + k * s1 / s0
    };

    let (mut lo, mut hi) = (-20.0f64, 20.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if profile_score(mid.exp()) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    let alpha = (0.5 * (lo + hi)).exp();
    let pow: f64 = logs.iter().map(|l| (-alpha * l).exp()).sum();
    GumbelII::new(alpha, k / pow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::rng_from_seed;
    use rand::distr::Open01;
    use rand::Rng;

    #[test]
    fn recovers_parameters_from_a_large_sample() {
        let truth = GumbelII::new(1.5, 0.75).unwrap();
        let mut rng = rng_from_seed(5);
        let xs: Vec<f64> = (0..50_000)
            .map(|_| truth.quantile(rng.sample(Open01)).unwrap())
            .collect();
        let fit = fit_baseline(&xs).unwrap();
        assert!((fit.alpha - 1.5).abs() < 0.03, "{fit:?}");
        assert!((fit.lambda - 0.75).abs() < 0.02, "{fit:?}");
    }

    #[test]
    fn stationary_point_of_the_full_likelihood() {
        let xs = [0.3, 0.8, 1.1, 2.5, 4.0, 9.0];
        let fit = fit_baseline(&xs).unwrap();
        let ll = |a: f64, l: f64| -> f64 {
            let g = GumbelII::new(a, l).unwrap();
            xs.iter().map(|&x| g.ln_pdf(x).unwrap()).sum()
        };
        let best = ll(fit.alpha, fit.lambda);
        for (da, dl) in [(1e-4, 0.0), (-1e-4, 0.0), (0.0, 1e-4), (0.0, -1e-4)] {
            assert!(ll(fit.alpha + da, fit.lambda + dl) < best);
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(fit_baseline(&[]).is_err());
        assert!(fit_baseline(&[1.0, 1.0]).is_err());
        assert!(fit_baseline(&[1.0, -2.0]).is_err());
    }
}
