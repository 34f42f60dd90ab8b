use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use gumbel_sslt::gof::PlotData;
use gumbel_sslt::io::RunManifest;
use serde::Serialize;

/// A JSON document with the manifest first.
#[derive(Serialize)]
pub struct WithManifest<'a, T: Serialize> {
    pub manifest: &'a RunManifest,
    #[serde(flatten)]
    pub body: T,
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// Writes `text` to `out` or standard output. With a file, the manifest
/// (including wall time) goes to `<file>.manifest.json`.
pub fn emit(out: Option<&Path>, text: &str, manifest: &RunManifest, started: Instant) -> Result<()> {
    let secs = started.elapsed().as_secs_f64();
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            let mut m = manifest.clone();
            m.wall_time_secs = Some(secs);
            let side = sidecar(path);
            fs::write(&side, to_json(&m)?).with_context(|| format!("writing {}", side.display()))?;
        }
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
        }
    }
    log::info!("{} finished in {secs:.3} s", manifest.command);
    Ok(())
}

pub fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Plot data as one CSV file per panel.
pub fn write_plots(dir: &Path, ecdf: &[(f64, f64)], qq: &[(f64, f64)], plots: &PlotData) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let pairs = |header: &str, rows: &[(f64, f64)]| {
        let mut s = format!("{header}\n");
        for (a, b) in rows {
            s.push_str(&format!("{a},{b}\n"));
        }
        s
    };
    let mut hist = String::from("lower,upper,count,density\n");
    for b in &plots.histogram {
        hist.push_str(&format!("{},{},{},{}\n", b.lower, b.upper, b.count, b.density));
    }
    let bp = &plots.boxplot;
    let mut boxplot = String::from("statistic,value\n");
    for (k, v) in [
        ("min", bp.min),
        ("lower_whisker", bp.lower_whisker),
        ("q1", bp.q1),
        ("median", bp.median),
        ("q3", bp.q3),
        ("upper_whisker", bp.upper_whisker),
        ("max", bp.max),
    ] {
        boxplot.push_str(&format!("{k},{v}\n"));
    }
    for o in &bp.outliers {
        boxplot.push_str(&format!("outlier,{o}\n"));
    }
    let files = [
        ("ecdf.csv", pairs("x,ecdf", ecdf)),
        ("qq.csv", pairs("theoretical,empirical", qq)),
        ("histogram.csv", hist),
        ("boxplot.csv", boxplot),
        ("density.csv", pairs("x,density", &plots.density)),
    ];
    for (name, text) in files {
        let p = dir.join(name);
        fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}
