//! Goodness-of-fit for the baseline law: empirical CDF, one-sample
//! Kolmogorov-Smirnov test, Q-Q points, and histogram/box-plot summaries.

use rand::distr::Open01;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gumbel::GumbelII;
use crate::mle::fit_baseline;
use crate::sampler::rng_from_seed;

/// A labelled sample of positive observations, kept in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    values: Vec<f64>,
    label: String,
}

impl Dataset {
    pub fn new(mut values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(&v) = values.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::domain("observation", v, "must be finite and > 0"));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self {
            values,
            label: label.into(),
        })
    }

    /// Observations in ascending order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EcdfPoint {
    pub x: f64,
    /// `F_n(x) = #{x_i <= x} / n`
    pub f: f64,
}

/// Jump points of the empirical CDF; tied observations share one point.
pub fn ecdf(d: &Dataset) -> Vec<EcdfPoint> {
    let n = d.len() as f64;
    let v = d.values();
    let mut out: Vec<EcdfPoint> = Vec::with_capacity(v.len());
    for (i, &x) in v.iter().enumerate() {
        let f = (i + 1) as f64 / n;
        match out.last_mut() {
            Some(last) if last.x == x => last.f = f,
            _ => out.push(EcdfPoint { x, f }),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    /// `sup_t |F_n(t) - F(t)|`
    pub statistic: f64,
    /// Asymptotic p-value `Q(sqrt(n) D)`.
    pub p_value: f64,
    pub n: usize,
}

/// One-sample Kolmogorov-Smirnov test against a fully specified baseline.
pub fn ks_test(d: &Dataset, model: &GumbelII) -> Result<KsResult> {
    let statistic = ks_statistic(d.values(), model)?;
    let n = d.len();
    Ok(KsResult {
        statistic,
        p_value: kolmogorov_survival((n as f64).sqrt() * statistic),
        n,
    })
}

/// `D` over sorted observations, checking both one-sided gaps at every jump.
pub(crate) fn ks_statistic(sorted: &[f64], model: &GumbelII) -> Result<f64> {
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = model.cdf(x)?;
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(d)
}

/// Survival function of the Kolmogorov distribution, `P(K > x)`.
///
/// Uses the alternating series `2 sum (-1)^(k-1) exp(-2 k^2 x^2)` for
/// `x >= 1` and the Jacobi theta form for smaller `x`, truncating once terms
/// drop below 1e-10.
pub fn kolmogorov_survival(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < 1.0 {
        let c = std::f64::consts::PI.powi(2) / (8.0 * x * x);
        let mut sum = 0.0;
        for k in 1..=100 {
            let j = (2 * k - 1) as f64;
            let term = (-j * j * c).exp();
            sum += term;
            if term < 1e-10 {
                break;
            }
        }
        return (1.0 - (2.0 * std::f64::consts::PI).sqrt() / x * sum).clamp(0.0, 1.0);
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * x * x).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-10 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Monte Carlo p-value of the K-S statistic when the baseline parameters
/// were estimated from the same data: refit on `replicates` samples drawn
/// from `fitted` and count statistics at least as large as the observed one.
pub fn parametric_bootstrap_p(d: &Dataset, fitted: &GumbelII, replicates: usize, seed: u64) -> Result<f64> {
    let observed = ks_statistic(d.values(), fitted)?;
    let mut rng = rng_from_seed(seed);
    let mut exceed = 0usize;
    for _ in 0..replicates {
        let mut xs: Vec<f64> = (0..d.len())
            .map(|_| fitted.quantile(rng.sample(Open01)))
            .collect::<Result<_>>()?;
        xs.sort_by(f64::total_cmp);
        let refit = fit_baseline(&xs)?;
        if ks_statistic(&xs, &refit)? >= observed {
            exceed += 1;
        }
    }
    Ok((exceed + 1) as f64 / (replicates + 1) as f64)
}

/// Q-Q pairs `(F^-1(i / (n + 1)), x_(i))` for `i = 1..n`.
pub fn qq_points(d: &Dataset, model: &GumbelII) -> Result<Vec<(f64, f64)>> {
    let n = d.len() as f64;
    d.values()
        .iter()
        .enumerate()
        .map(|(i, &x)| Ok((model.quantile((i + 1) as f64 / (n + 1.0))?, x)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
    /// `count / (n * width)`
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxPlot {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    /// Most extreme observations within 1.5 IQR of the quartiles.
    pub lower_whisker: f64,
    pub upper_whisker: f64,
    pub outliers: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotData {
    pub histogram: Vec<HistogramBin>,
    pub boxplot: BoxPlot,
    /// Model density on a 200-point grid spanning the data.
    pub density: Vec<(f64, f64)>,
}

pub fn summary_plots_data(d: &Dataset, model: &GumbelII, bins: usize) -> Result<PlotData> {
    if bins == 0 {
        return Err(Error::InvalidParams("at least one histogram bin is required".into()));
    }
    let v = d.values();
    let (lo, hi) = (v[0], v[v.len() - 1]);
    let n = v.len() as f64;
    let width = if hi > lo { (hi - lo) / bins as f64 } else { 1.0 };
    let mut counts = vec![0usize; bins];
    for &x in v {
        let k = (((x - lo) / width) as usize).min(bins - 1);
        counts[k] += 1;
    }
    let histogram = counts
        .iter()
        .enumerate()
        .map(|(k, &c)| HistogramBin {
            lower: lo + k as f64 * width,
            upper: lo + (k + 1) as f64 * width,
            count: c,
            density: c as f64 / (n * width),
        })
        .collect();

    let q1 = quantile_sorted(v, 0.25);
    let q3 = quantile_sorted(v, 0.75);
    let iqr = q3 - q1;
    let (lo_fence, hi_fence) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);
    let boxplot = BoxPlot {
        min: lo,
        q1,
        median: quantile_sorted(v, 0.5),
        q3,
        max: hi,
        lower_whisker: v.iter().copied().find(|&x| x >= lo_fence).unwrap_or(lo),
        upper_whisker: v.iter().rev().copied().find(|&x| x <= hi_fence).unwrap_or(hi),
        outliers: v
            .iter()
            .copied()
            .filter(|&x| x < lo_fence || x > hi_fence)
            .collect(),
    };

    const GRID: usize = 200;
    let density = (0..GRID)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (GRID - 1) as f64;
            Ok((x, model.pdf(x)?))
        })
        .collect::<Result<_>>()?;

    Ok(PlotData {
        histogram,
        boxplot,
        density,
    })
}

/// Linear-interpolation sample quantile (Hyndman-Fan type 7).
fn quantile_sorted(v: &[f64], p: f64) -> f64 {
    let h = (v.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(v.len() - 1);
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}
