use std::fs;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use gumbel_sslt::bayes::{PosteriorChain, PriorSpec, ScanScheme};
use gumbel_sslt::data::bladder_remission;
use gumbel_sslt::gof::{ecdf, qq_points, summary_plots_data, Dataset};
use gumbel_sslt::gumbel::{GumbelII, ModelParams, TamperingTime};
use gumbel_sslt::io::{parse_time_column, read_sample_csv, sample_to_csv, RunManifest};
use gumbel_sslt::mle::SolverOptions;
use gumbel_sslt::report::{
    analyze, goodness_of_fit, real_data_analysis, BayesOptions, MleSummary, SampleSummary, REAL_DATA_PRIOR_CENTER,
};
use gumbel_sslt::sampler::{generate_censored_sample, rng_from_seed, ExperimentDesign};
use gumbel_sslt::study::{emit_table, run_study, StudyConfig, TableFormat};
use serde::Serialize;
use serde_json::json;

use crate::args::*;
use crate::output::{emit, to_json, write_plots, WithManifest};

pub fn simulate(a: SimulateArgs) -> Result<()> {
    let started = Instant::now();
    let truth = ModelParams::new(a.alpha, a.lambda, a.beta)?;
    let design = ExperimentDesign::new(a.n, a.r, TamperingTime::new(a.tau)?)?;
    let seed = a.seed.seed;
    let s = generate_censored_sample(&truth, &design, &mut rng_from_seed(seed))?;
    let manifest = RunManifest::new(
        "simulate",
        json!({ "params": truth, "design": design, "format": format!("{:?}", a.format).to_lowercase() }),
        Some(seed),
    );
    let text = match a.format {
        SampleFormat::Csv => sample_to_csv(&s),
        SampleFormat::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                params: ModelParams,
                sample: SampleSummary,
                seed: u64,
                times: &'a [f64],
            }
            to_json(&WithManifest {
                manifest: &manifest,
                body: Body {
                    params: truth,
                    sample: SampleSummary::from(&s),
                    seed,
                    times: s.times(),
                },
            })?
        }
    };
    emit(a.out.output.as_deref(), &text, &manifest, started)
}

pub fn fit_mle(a: FitMleArgs) -> Result<()> {
    let started = Instant::now();
    let d = &a.data;
    let s = read_sample_csv(&d.data, TamperingTime::new(d.tau)?, d.n)?;
    let solver = SolverOptions {
        max_iter: a.max_iter,
        ..SolverOptions::default()
    };
    let fit = gumbel_sslt::mle::fit_mle(&s, &solver)?;
    let manifest = RunManifest::new(
        "fit-mle",
        json!({ "data": d.data, "tau": d.tau, "n": s.n(), "gamma": d.gamma, "solver": solver }),
        None,
    );
    #[derive(Serialize)]
    struct Body {
        sample: SampleSummary,
        mle: MleSummary,
    }
    let text = to_json(&WithManifest {
        manifest: &manifest,
        body: Body {
            sample: SampleSummary::from(&s),
            mle: MleSummary::new(&fit, d.gamma)?,
        },
    })?;
    emit(a.out.output.as_deref(), &text, &manifest, started)
}

/// Explicit hyperparameters override those of `fallback`.
fn prior_from(p: &PriorArgs, fallback: PriorSpec) -> Result<PriorSpec> {
    Ok(PriorSpec::new(
        p.a.unwrap_or(fallback.a),
        p.b.unwrap_or(fallback.b),
        p.c.unwrap_or(fallback.c),
        p.d.unwrap_or(fallback.d),
        p.p.unwrap_or(fallback.p),
        p.q.unwrap_or(fallback.q),
    )?)
}

/// Shape 1 and rate 0.001 for the gamma priors, uniform on `beta`.
fn vague_prior() -> PriorSpec {
    PriorSpec {
        a: 1.0,
        b: 1e-3,
        c: 1.0,
        d: 1e-3,
        p: 1.0,
        q: 1.0,
    }
}

fn bayes_options(c: &ChainArgs, prior: PriorSpec, gamma: f64) -> BayesOptions {
    BayesOptions {
        prior,
        chain_length: c.chain_length,
        burn_in: c.burn_in,
        linex_u: c.linex_u.clone(),
        gamma,
        seed: c.seed.seed,
        scheme: match c.scheme {
            Scheme::Systematic => ScanScheme::Systematic,
            Scheme::Stale => ScanScheme::Stale,
        },
    }
}

fn dump_chain(path: &std::path::Path, chain: &PosteriorChain) -> Result<()> {
    let mut s = String::from("iter,alpha,lambda,beta\n");
    for (i, p) in chain.draws.iter().enumerate() {
        s.push_str(&format!("{},{},{},{}\n", i + 1, p.alpha, p.lambda, p.beta));
    }
    fs::write(path, s).with_context(|| format!("writing {}", path.display()))
}

pub fn fit_bayes(a: FitBayesArgs) -> Result<()> {
    let started = Instant::now();
    let d = &a.data;
    let s = read_sample_csv(&d.data, TamperingTime::new(d.tau)?, d.n)?;
    let opts = bayes_options(&a.chain, prior_from(&a.prior, vague_prior())?, d.gamma);
    let (mle, bayes, chain) = analyze(&s, &opts)?;
    if let Some(p) = &a.chain.dump_chain {
        dump_chain(p, &chain)?;
    }
    let manifest = RunManifest::new(
        "fit-bayes",
        json!({ "data": d.data, "tau": d.tau, "n": s.n(), "options": opts }),
        Some(opts.seed),
    );
    #[derive(Serialize)]
    struct Body {
        sample: SampleSummary,
        mle: Option<MleSummary>,
        bayes: gumbel_sslt::report::BayesSummary,
    }
    let text = to_json(&WithManifest {
        manifest: &manifest,
        body: Body {
            sample: SampleSummary::from(&s),
            mle,
            bayes,
        },
    })?;
    emit(a.out.output.as_deref(), &text, &manifest, started)
}

pub fn mc_study(a: McStudyArgs) -> Result<()> {
    let started = Instant::now();
    let text = fs::read_to_string(&a.config).with_context(|| format!("reading {}", a.config.display()))?;
    let mut cfg = StudyConfig::from_toml_str(&text)?;
    if let Some(r) = a.replicates {
        cfg.replicates = r;
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    let report = match a.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .context("building the thread pool")?
            .install(|| run_study(&cfg))?,
        None => run_study(&cfg)?,
    };
    if report.resamples > 0 {
        eprintln!("{} samples redrawn (case I/III or failed fit)", report.resamples);
    }
    let manifest = RunManifest::new(
        "mc-study",
        json!({ "study": cfg.to_file(), "resamples": report.resamples }),
        Some(cfg.seed),
    );
    let out = match a.format {
        TableFormatArg::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                resamples: usize,
                rows: &'a [gumbel_sslt::study::StudyRow],
                #[serde(skip_serializing_if = "Option::is_none")]
                records: Option<&'a [gumbel_sslt::study::ReplicateRecord]>,
            }
            to_json(&WithManifest {
                manifest: &manifest,
                body: Body {
                    resamples: report.resamples,
                    rows: &report.rows,
                    records: a.records.then_some(report.records.as_slice()),
                },
            })?
        }
        _ if a.records => bail!("--records needs --format json"),
        TableFormatArg::Csv => emit_table(&report.rows, TableFormat::Csv)?,
        TableFormatArg::Markdown => emit_table(&report.rows, TableFormat::Markdown)?,
    };
    emit(a.out.output.as_deref(), &out, &manifest, started)
}

fn plots_for(dir: &std::path::Path, d: &Dataset, model: &GumbelII, bins: usize) -> Result<()> {
    let e: Vec<(f64, f64)> = ecdf(d).iter().map(|p| (p.x, p.f)).collect();
    let qq = qq_points(d, model)?;
    write_plots(dir, &e, &qq, &summary_plots_data(d, model, bins)?)
}

pub fn gof(a: GofArgs) -> Result<()> {
    let started = Instant::now();
    let d = match &a.data {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Dataset::new(parse_time_column(&text)?, path.display().to_string())?
        }
        None => bladder_remission(),
    };
    let model = match (a.alpha, a.lambda) {
        (Some(al), Some(l)) => Some(GumbelII::new(al, l)?),
        (None, None) => None,
        _ => bail!("--alpha and --lambda go together"),
    };
    let seed = a.seed.seed;
    let summary = goodness_of_fit(&d, model, a.parametric_bootstrap.map(|r| (r, seed)))?;
    if let Some(dir) = &a.plots {
        plots_for(dir, &d, &summary.model, a.bins)?;
    }
    let manifest = RunManifest::new(
        "gof",
        json!({
            "data": a.data, "embedded": a.data.is_none(), "alpha": a.alpha, "lambda": a.lambda,
            "parametric_bootstrap": a.parametric_bootstrap, "plots": a.plots, "bins": a.bins,
        }),
        a.parametric_bootstrap.map(|_| seed),
    );
    let text = to_json(&WithManifest {
        manifest: &manifest,
        body: summary,
    })?;
    emit(a.out.output.as_deref(), &text, &manifest, started)
}

pub fn real_data(a: RealDataArgs) -> Result<()> {
    let started = Instant::now();
    let center = PriorSpec::centered(&REAL_DATA_PRIOR_CENTER, 0.15)?;
    let opts = bayes_options(&a.chain, prior_from(&a.prior, center)?, a.gamma);
    let (report, chain) = real_data_analysis(a.tau, a.r, &opts)?;
    if let Some(p) = &a.chain.dump_chain {
        dump_chain(p, &chain)?;
    }
    if let Some(dir) = &a.plots {
        plots_for(dir, &bladder_remission(), &report.gof.model, a.bins)?;
    }
    let manifest = RunManifest::new(
        "real-data",
        json!({ "tau": a.tau, "r": a.r, "options": opts }),
        Some(opts.seed),
    );
    let text = to_json(&WithManifest {
        manifest: &manifest,
        body: report,
    })?;
    emit(a.out.output.as_deref(), &text, &manifest, started)
}
