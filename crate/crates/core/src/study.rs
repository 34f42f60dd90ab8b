//! Monte Carlo study: repeated sampling from a known model, fitting each
//! sample, and aggregating average estimate (AE), mean squared error (MSE),
//! average interval length (AL) and coverage probability (CP).

use std::fmt::Write as _;

use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bayes::{
    default_start, estimate_column, hpd_sorted, percentile_sorted, run_mh, LossSpec, MhConfig, PriorSpec,
};
use crate::error::{Error, Result};
use crate::gumbel::{ModelParams, TamperingTime};
use crate::mle::{asymptotic_ci, fit_mle, IntervalEstimate, SolverOptions};
use crate::sampler::{generate_censored_sample, replicate_seed, rng_from_seed, Case, ExperimentDesign};

/// Largest tolerated ratio of resampled to requested replicates.
pub const MAX_RESAMPLE_RATE: f64 = 0.2;

pub const PARAMETER_NAMES: [&str; 3] = ["alpha", "lambda", "beta"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BayesSettings {
    pub prior: PriorSpec,
    pub losses: Vec<LossSpec>,
    pub chain_length: usize,
    pub burn_in: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub true_params: ModelParams,
    pub design: ExperimentDesign,
    pub replicates: usize,
    pub gamma: f64,
    /// Maximum likelihood estimates with asymptotic intervals.
    pub mle: bool,
    /// Bayes estimates and credible intervals; `None` for classical runs.
    pub bayes: Option<BayesSettings>,
    pub seed: u64,
}

/// On-disk form of [`StudyConfig`]: one flat table of keys.
///
/// Prior hyperparameters that are left out follow the centred rule of
/// [`PriorSpec::centered`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyFile {
    pub alpha: f64,
    pub lambda: f64,
    pub beta: f64,
    pub tau: f64,
    pub n: usize,
    pub r: usize,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "yes")]
    pub mle: bool,
    #[serde(default)]
    pub bayes: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default = "default_beta_sd")]
    pub prior_beta_sd: f64,
    #[serde(default = "default_linex")]
    pub linex_u: Vec<f64>,
    #[serde(default = "default_chain_length")]
    pub chain_length: usize,
    #[serde(default = "default_burn_in")]
    pub burn_in: usize,
}

fn default_replicates() -> usize {
    1000
}
fn default_gamma() -> f64 {
    0.05
}
fn yes() -> bool {
    true
}
fn default_beta_sd() -> f64 {
    0.15
}
fn default_linex() -> Vec<f64> {
    vec![1.0]
}
fn default_chain_length() -> usize {
    10_000
}
fn default_burn_in() -> usize {
    2_000
}

impl StudyFile {
    pub fn into_config(self) -> Result<StudyConfig> {
        let true_params = ModelParams::new(self.alpha, self.lambda, self.beta)?;
        let design = ExperimentDesign::new(self.n, self.r, TamperingTime::new(self.tau)?)?;
        let bayes = if self.bayes {
            let c = PriorSpec::centered(&true_params, self.prior_beta_sd)?;
            let prior = PriorSpec::new(
                self.a.unwrap_or(c.a),
                self.b.unwrap_or(c.b),
                self.c.unwrap_or(c.c),
                self.d.unwrap_or(c.d),
                self.p.unwrap_or(c.p),
                self.q.unwrap_or(c.q),
            )?;
            let mut losses = vec![LossSpec::Sel];
            for u in self.linex_u {
                losses.push(LossSpec::linex(u)?);
            }
            Some(BayesSettings {
                prior,
                losses,
                chain_length: self.chain_length,
                burn_in: self.burn_in,
            })
        } else {
            None
        };
        let cfg = StudyConfig {
            true_params,
            design,
            replicates: self.replicates,
            gamma: self.gamma,
            mle: self.mle,
            bayes,
            seed: self.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl StudyConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: StudyFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        file.into_config()
    }

    /// Flat form with every prior hyperparameter written out.
    pub fn to_file(&self) -> StudyFile {
        let b = self.bayes.as_ref();
        StudyFile {
            alpha: self.true_params.alpha,
            lambda: self.true_params.lambda,
            beta: self.true_params.beta,
            tau: self.design.tau.get(),
            n: self.design.n,
            r: self.design.r,
            replicates: self.replicates,
            gamma: self.gamma,
            seed: self.seed,
            mle: self.mle,
            bayes: b.is_some(),
            a: b.map(|s| s.prior.a),
            b: b.map(|s| s.prior.b),
            c: b.map(|s| s.prior.c),
            d: b.map(|s| s.prior.d),
            p: b.map(|s| s.prior.p),
            q: b.map(|s| s.prior.q),
            prior_beta_sd: default_beta_sd(),
            linex_u: b
                .map(|s| {
                    s.losses
                        .iter()
                        .filter_map(|l| match l {
                            LossSpec::Linex { u } => Some(*u),
                            LossSpec::Sel => None,
                        })
                        .collect()
                })
                .unwrap_or_default(),
            chain_length: b.map_or(default_chain_length(), |s| s.chain_length),
            burn_in: b.map_or(default_burn_in(), |s| s.burn_in),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.true_params.validate()?;
        self.design.validate()?;
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be at least 1".into()));
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(Error::Config(format!("gamma must lie in (0, 1), got {}", self.gamma)));
        }
        if !self.mle && self.bayes.is_none() {
            return Err(Error::Config("enable at least one of mle and bayes".into()));
        }
        if let Some(b) = &self.bayes {
            b.prior.validate()?;
            for l in &b.losses {
                l.validate()?;
            }
            if b.chain_length <= b.burn_in {
                return Err(Error::Config(format!(
                    "chain_length {} must exceed burn_in {}",
                    b.chain_length, b.burn_in
                )));
            }
        }
        Ok(())
    }
}

/// Estimator or interval whose metrics a row reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Method {
    /// Maximum likelihood estimate and asymptotic interval.
    #[serde(rename = "MLE")]
    Mle,
    #[serde(rename = "SEL")]
    Sel,
    #[serde(rename = "LINEX")]
    Linex { u: f64 },
    /// Equal-tailed credible interval.
    #[serde(rename = "Percentile")]
    Percentile,
    #[serde(rename = "HPD")]
    Hpd,
}

impl Method {
    pub fn label(&self) -> String {
        match self {
            Method::Mle => "MLE".into(),
            Method::Sel => "SEL".into(),
            Method::Linex { u } => format!("LINEX({u})"),
            Method::Percentile => "Percentile".into(),
            Method::Hpd => "HPD".into(),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "MLE" => Some(Method::Mle),
            "SEL" => Some(Method::Sel),
            "Percentile" => Some(Method::Percentile),
            "HPD" => Some(Method::Hpd),
            _ => s
                .strip_prefix("LINEX(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|u| u.parse().ok())
                .map(|u| Method::Linex { u }),
        }
    }
}

/// Aggregated metrics for one parameter under one method. Point-only
/// methods leave `al` and `cp` empty; interval-only methods leave `ae` and
/// `mse` empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub tau: f64,
    pub beta: f64,
    pub n: usize,
    pub r: usize,
    pub method: Method,
    pub parameter: String,
    pub ae: Option<f64>,
    pub mse: Option<f64>,
    pub al: Option<f64>,
    pub cp: Option<f64>,
}

/// Everything computed for one replicate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateRecord {
    pub index: usize,
    /// Samples discarded (Case I or III, or a failed fit) before this one.
    pub resamples: usize,
    pub n_pre_tau: usize,
    pub mle: Option<ModelParams>,
    pub aci: Option<[IntervalEstimate; 3]>,
    /// Bayes estimates in the order of the configured losses.
    pub bayes: Vec<ModelParams>,
    pub percentile: Option<[IntervalEstimate; 3]>,
    pub hpd: Option<[IntervalEstimate; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyReport {
    pub config: StudyConfig,
    pub rows: Vec<StudyRow>,
    pub resamples: usize,
    pub records: Vec<ReplicateRecord>,
}

/// Runs the study. Replicates run in parallel; each draws everything it
/// needs from its own stream seeded with `seed ^ index`, and metrics are
/// accumulated in replicate order, so the result does not depend on the
/// thread count.
pub fn run_study(cfg: &StudyConfig) -> Result<StudyReport> {
    cfg.validate()?;
    // a replicate may resample at most this often before the whole study
    // is certain to exceed the limit
    let budget = (MAX_RESAMPLE_RATE * cfg.replicates as f64).floor() as usize;
    let records: Vec<ReplicateRecord> = (0..cfg.replicates)
        .into_par_iter()
        .map(|i| run_replicate(cfg, i, budget))
        .collect::<Result<_>>()?;
    let resamples: usize = records.iter().map(|r| r.resamples).sum();
    if resamples as f64 > MAX_RESAMPLE_RATE * cfg.replicates as f64 {
        return Err(Error::ExcessiveResampling {
            resamples,
            replicates: cfg.replicates,
        });
    }
    if resamples > 0 {
        log::info!("{resamples} samples redrawn over {} replicates", cfg.replicates);
    }
    Ok(StudyReport {
        rows: aggregate(cfg, &records),
        config: cfg.clone(),
        resamples,
        records,
    })
}

fn run_replicate(cfg: &StudyConfig, index: usize, budget: usize) -> Result<ReplicateRecord> {
    let mut rng = rng_from_seed(replicate_seed(cfg.seed, index as u64));
    let mut resamples = 0;
    loop {
        if resamples > budget {
            return Err(Error::ExcessiveResampling {
                resamples,
                replicates: cfg.replicates,
            });
        }
        let s = generate_censored_sample(&cfg.true_params, &cfg.design, &mut rng)?;
        let chain_seed = rng.next_u64();
        if s.case() != Case::CaseII {
            resamples += 1;
            continue;
        }
        let fit = match fit_mle(&s, &SolverOptions::default()) {
            Ok(f) => f,
            Err(e) => {
                log::debug!("replicate {index}: fit failed ({e}), redrawing");
                resamples += 1;
                continue;
            }
        };
        let aci = if cfg.mle {
            match asymptotic_ci(&fit, cfg.gamma) {
                Ok(ci) => Some(ci),
                Err(e) => {
                    log::debug!("replicate {index}: interval failed ({e}), redrawing");
                    resamples += 1;
                    continue;
                }
            }
        } else {
            None
        };
        let mut rec = ReplicateRecord {
            index,
            resamples,
            n_pre_tau: s.n_pre_tau(),
            mle: cfg.mle.then_some(fit.params_hat),
            aci,
            bayes: vec![],
            percentile: None,
            hpd: None,
        };
        if let Some(b) = &cfg.bayes {
            let (init, sds) = default_start(Some(&fit), &b.prior);
            let chain = run_mh(&s, &b.prior, &MhConfig::new(b.chain_length, b.burn_in, init, sds, chain_seed))?;
            let mut cols = [0, 1, 2].map(|k| chain.column(k));
            rec.bayes = b
                .losses
                .iter()
                .map(|&l| ModelParams::from_array([0, 1, 2].map(|k| estimate_column(&cols[k], l))))
                .collect();
            cols.iter_mut().for_each(|c| c.sort_by(f64::total_cmp));
            rec.percentile = Some([0, 1, 2].map(|k| percentile_sorted(&cols[k], cfg.gamma)));
            rec.hpd = Some([0, 1, 2].map(|k| hpd_sorted(&cols[k], cfg.gamma)));
        }
        return Ok(rec);
    }
}

/// Compensated running sum.
#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

fn mean_of(values: impl Iterator<Item = f64>, n: usize) -> f64 {
    let mut k = Kahan::default();
    values.for_each(|v| k.add(v));
    k.sum / n as f64
}

fn aggregate(cfg: &StudyConfig, records: &[ReplicateRecord]) -> Vec<StudyRow> {
    let m = records.len();
    let truth = cfg.true_params.as_array();
    let row = |method: Method, k: usize| StudyRow {
        tau: cfg.design.tau.get(),
        beta: cfg.true_params.beta,
        n: cfg.design.n,
        r: cfg.design.r,
        method,
        parameter: PARAMETER_NAMES[k].to_string(),
        ae: None,
        mse: None,
        al: None,
        cp: None,
    };
    let points = |row: &mut StudyRow, get: &dyn Fn(&ReplicateRecord) -> f64, k: usize| {
        row.ae = Some(mean_of(records.iter().map(get), m));
        row.mse = Some(mean_of(records.iter().map(|r| (get(r) - truth[k]).powi(2)), m));
    };
    let intervals = |row: &mut StudyRow, get: &dyn Fn(&ReplicateRecord) -> IntervalEstimate, k: usize| {
        row.al = Some(mean_of(records.iter().map(|r| get(r).width()), m));
        let hits = records.iter().filter(|r| get(r).contains(truth[k])).count();
        row.cp = Some(hits as f64 / m as f64);
    };

    let mut rows = Vec::new();
    if cfg.mle {
        for k in 0..3 {
            let mut r = row(Method::Mle, k);
            points(&mut r, &|rec| rec.mle.expect("mle enabled").as_array()[k], k);
            intervals(&mut r, &|rec| rec.aci.expect("mle enabled")[k], k);
            rows.push(r);
        }
    }
    if let Some(b) = &cfg.bayes {
        for (j, loss) in b.losses.iter().enumerate() {
            let method = match *loss {
                LossSpec::Sel => Method::Sel,
                LossSpec::Linex { u } => Method::Linex { u },
            };
            for k in 0..3 {
                let mut r = row(method, k);
                points(&mut r, &|rec| rec.bayes[j].as_array()[k], k);
                rows.push(r);
            }
        }
        for k in 0..3 {
            let mut r = row(Method::Percentile, k);
            intervals(&mut r, &|rec| rec.percentile.expect("bayes enabled")[k], k);
            rows.push(r);
        }
        for k in 0..3 {
            let mut r = row(Method::Hpd, k);
            intervals(&mut r, &|rec| rec.hpd.expect("bayes enabled")[k], k);
            rows.push(r);
        }
    }
    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Csv,
    Markdown,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "markdown" | "md" => Ok(TableFormat::Markdown),
            "json" => Ok(TableFormat::Json),
            _ => Err(Error::Config(format!("unknown table format {s:?}"))),
        }
    }
}

pub const TABLE_COLUMNS: [&str; 10] = ["tau", "beta", "n", "r", "method", "parameter", "AE", "MSE", "AL", "CP"];

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Renders rows with columns in [`TABLE_COLUMNS`] order. Numbers are
/// written in shortest round-trip form.
pub fn emit_table(rows: &[StudyRow], format: TableFormat) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::Empty);
    }
    match format {
        TableFormat::Json => serde_json::to_string_pretty(rows).map_err(|e| Error::Io(e.to_string())),
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(vec![]);
            w.write_record(TABLE_COLUMNS).map_err(csv_err)?;
            for r in rows {
                w.write_record(fields(r)).map_err(csv_err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?)
                .map_err(|e| Error::Io(e.to_string()))
        }
        TableFormat::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "| {} |", TABLE_COLUMNS.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(TABLE_COLUMNS.len()));
            for r in rows {
                let f: Vec<String> = fields(r)
                    .into_iter()
                    .enumerate()
                    .map(|(i, s)| match s.parse::<f64>() {
                        Ok(x) if i >= 6 => format!("{x:.4}"),
                        _ => s,
                    })
                    .collect();
                let _ = writeln!(out, "| {} |", f.join(" | "));
            }
            Ok(out)
        }
    }
}

fn fields(r: &StudyRow) -> Vec<String> {
    vec![
        r.tau.to_string(),
        r.beta.to_string(),
        r.n.to_string(),
        r.r.to_string(),
        r.method.label(),
        r.parameter.clone(),
        cell(r.ae),
        cell(r.mse),
        cell(r.al),
        cell(r.cp),
    ]
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Reads a table written by [`emit_table`] in CSV form.
pub fn parse_table_csv(text: &str) -> Result<Vec<StudyRow>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().map_err(csv_err)?.clone();
    if header.iter().ne(TABLE_COLUMNS) {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header {}", TABLE_COLUMNS.join(",")),
        });
    }
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i as u64 + 2;
        let rec = rec.map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        let bad = |what: &str| Error::Parse {
            line,
            message: format!("invalid {what}"),
        };
        let num = |j: usize| -> Result<f64> { rec[j].parse().map_err(|_| bad(TABLE_COLUMNS[j])) };
        let opt = |j: usize| -> Result<Option<f64>> {
            if rec[j].is_empty() {
                Ok(None)
            } else {
                num(j).map(Some)
            }
        };
        rows.push(StudyRow {
            tau: num(0)?,
            beta: num(1)?,
            n: rec[2].parse().map_err(|_| bad("n"))?,
            r: rec[3].parse().map_err(|_| bad("r"))?,
            method: Method::parse(&rec[4]).ok_or_else(|| bad("method"))?,
            parameter: rec[5].to_string(),
            ae: opt(6)?,
            mse: opt(7)?,
            al: opt(8)?,
            cp: opt(9)?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(bayes: bool) -> StudyConfig {
        let text = format!(
            "alpha = 1.0\nlambda = 0.75\nbeta = 0.35\ntau = 0.6\nn = 50\nr = 30\n\
             replicates = 6\nseed = 42\nbayes = {bayes}\nchain_length = 600\nburn_in = 100\n"
        );
        StudyConfig::from_toml_str(&text).unwrap()
    }

    #[test]
    fn single_replicate_identity() {
        let mut cfg = small(false);
        cfg.replicates = 1;
        let rep = run_study(&cfg).unwrap();
        let est = rep.records[0].mle.unwrap();
        let ae = rep.rows[0].ae.unwrap();
        assert_eq!(ae, est.alpha);
        assert_eq!(rep.rows[0].mse.unwrap(), (est.alpha - 1.0).powi(2));
        assert_eq!(rep.rows.len(), 3);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let cfg = small(true);
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run_study(&cfg).unwrap());
        let many = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| run_study(&cfg).unwrap());
        assert_eq!(one, many);
    }

    #[test]
    fn rows_cover_every_method_and_parameter() {
        let rep = run_study(&small(true)).unwrap();
        let labels: Vec<String> = rep.rows.iter().map(|r| r.method.label()).collect();
        assert_eq!(rep.rows.len(), 15);
        for l in ["MLE", "SEL", "LINEX(1)", "Percentile", "HPD"] {
            assert_eq!(labels.iter().filter(|x| *x == l).count(), 3, "{l}");
        }
        for r in &rep.rows {
            assert!(r.mse.is_none_or(|v| v >= 0.0));
            assert!(r.cp.is_none_or(|v| (0.0..=1.0).contains(&v)));
        }
    }

    #[test]
    fn csv_round_trip() {
        let rows = run_study(&small(true)).unwrap().rows;
        let text = emit_table(&rows, TableFormat::Csv).unwrap();
        assert!(text.starts_with("tau,beta,n,r,method,parameter,AE,MSE,AL,CP\n"));
        assert_eq!(parse_table_csv(&text).unwrap(), rows);
    }

    #[test]
    fn json_keeps_full_precision() {
        let rows = run_study(&small(false)).unwrap().rows;
        let text = emit_table(&rows, TableFormat::Json).unwrap();
        let back: Vec<StudyRow> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn markdown_has_one_line_per_row() {
        let rows = run_study(&small(false)).unwrap().rows;
        let text = emit_table(&rows, TableFormat::Markdown).unwrap();
        assert_eq!(text.lines().count(), rows.len() + 2);
        assert!(emit_table(&[], TableFormat::Markdown).is_err());
    }

    #[test]
    fn degenerate_design_aborts() {
        // tau far beyond every plausible failure time: almost every sample
        // is case one
        let text = "alpha = 1.0\nlambda = 0.75\nbeta = 0.35\ntau = 1e6\nn = 20\nr = 5\nreplicates = 10\n";
        let cfg = StudyConfig::from_toml_str(text).unwrap();
        assert!(matches!(run_study(&cfg), Err(Error::ExcessiveResampling { .. })));
    }

    #[test]
    fn config_file_round_trip_and_validation() {
        let cfg = small(true);
        let text = toml::to_string(&cfg.to_file()).unwrap();
        assert_eq!(StudyConfig::from_toml_str(&text).unwrap(), cfg);
        assert!(StudyConfig::from_toml_str("alpha = 1.0").is_err());
        let typo = "alpha = 1.0\nlambda = 0.75\nbeta = 0.35\ntau = 0.6\nn = 50\nr = 30\nreplicate = 3\n";
        assert!(StudyConfig::from_toml_str(typo).is_err());
        let zero = "alpha = 1.0\nlambda = 0.75\nbeta = 0.35\ntau = 0.6\nn = 50\nr = 30\nreplicates = 0\n";
        assert!(StudyConfig::from_toml_str(zero).is_err());
    }

    #[test]
    fn method_labels_parse_back() {
        for m in [Method::Mle, Method::Sel, Method::Linex { u: -0.5 }, Method::Percentile, Method::Hpd] {
            assert_eq!(Method::parse(&m.label()), Some(m));
        }
    }
}
