//! Sample files and run manifests.
//!
//! A sample file is CSV with header `time,stress_level`, one failure per
//! row in increasing time order, stress level 1 before the change point and
//! 2 after it.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gumbel::TamperingTime;
use crate::sampler::CensoredSample;

const SAMPLE_HEADER: [&str; 2] = ["time", "stress_level"];

/// Reads a sample file. `n` is the number of units on test and defaults to
/// the number of rows (no censoring).
pub fn read_sample_csv(path: impl AsRef<Path>, tau: TamperingTime, n: Option<usize>) -> Result<CensoredSample> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_sample_csv(&text, tau, n)
}

/// Parses sample CSV text; see [`read_sample_csv`].
///
/// Rows must be in nondecreasing time order. Repeated times are separated
/// by one ulp, as in simulated samples.
pub fn parse_sample_csv(text: &str, tau: TamperingTime, n: Option<usize>) -> Result<CensoredSample> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .has_headers(false)
        .from_reader(text.as_bytes());
    let mut records = rdr.records();
    let header = match records.next() {
        None => return Err(Error::Empty),
        Some(h) => h.map_err(|e| parse_err(1, e.to_string()))?,
    };
    if header.iter().ne(SAMPLE_HEADER) {
        return Err(parse_err(1, format!("expected header {:?}", SAMPLE_HEADER.join(","))));
    }

    let mut times: Vec<f64> = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 2 {
            return Err(parse_err(line, format!("expected 2 fields, found {}", rec.len())));
        }
        let t: f64 = rec[0]
            .parse()
            .map_err(|_| parse_err(line, format!("invalid time {:?}", &rec[0])))?;
        if !(t > 0.0 && t.is_finite()) {
            return Err(parse_err(line, format!("time must be finite and > 0, got {t}")));
        }
        let level: u8 = match &rec[1] {
            "1" => 1,
            "2" => 2,
            other => return Err(parse_err(line, format!("stress level must be 1 or 2, got {other:?}"))),
        };
        if level == 1 && t > tau.get() {
            return Err(parse_err(line, format!("level-1 time {t} exceeds tau = {}", tau.get())));
        }
        if level == 2 && t <= tau.get() {
            return Err(parse_err(line, format!("level-2 time {t} does not exceed tau = {}", tau.get())));
        }
        if let Some(&prev) = times.last() {
            if t < prev {
                return Err(parse_err(line, format!("time {t} is smaller than the previous time {prev}")));
            }
        }
        times.push(t);
    }
    if times.is_empty() {
        return Err(Error::Empty);
    }
    for i in 1..times.len() {
        if times[i] <= times[i - 1] {
            times[i] = times[i - 1].next_up();
        }
    }
    let n = n.unwrap_or(times.len());
    CensoredSample::new(times, n, tau)
}

/// Reads the `time` column of a CSV file with a header row, for example a
/// sample file or a one-column list of observations.
pub fn parse_time_column(text: &str) -> Result<Vec<f64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
    let col = headers
        .iter()
        .position(|h| h == "time")
        .ok_or_else(|| parse_err(1, "no `time` column in the header".into()))?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| parse_err(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        let field = rec.get(col).ok_or_else(|| parse_err(line, "missing time field".into()))?;
        let t: f64 = field
            .parse()
            .map_err(|_| parse_err(line, format!("invalid time {field:?}")))?;
        if !(t > 0.0 && t.is_finite()) {
            return Err(parse_err(line, format!("time must be finite and > 0, got {t}")));
        }
        out.push(t);
    }
    if out.is_empty() {
        return Err(Error::Empty);
    }
    Ok(out)
}

fn parse_err(line: u64, message: String) -> Error {
    Error::Parse { line, message }
}

/// Sample as CSV; times are written in shortest round-trip form, so
/// [`parse_sample_csv`] restores them exactly.
pub fn sample_to_csv(s: &CensoredSample) -> String {
    let mut out = String::from("time,stress_level\n");
    for (t, level) in s.stress_levels() {
        out.push_str(&format!("{t},{level}\n"));
    }
    out
}

/// How an artifact was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Effective settings after defaults and overrides.
    pub config: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: String,
    /// Wall-clock seconds. Left out of the primary outputs so that those are
    /// byte-identical across repeated runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
}

impl RunManifest {
    pub fn new(command: impl Into<String>, config: serde_json::Value, seed: Option<u64>) -> Self {
        Self {
            command: command.into(),
            config,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_secs: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gumbel::ModelParams;
    use crate::sampler::{generate_censored_sample, rng_from_seed, ExperimentDesign};

    fn tau() -> TamperingTime {
        TamperingTime::new(0.6).unwrap()
    }

    #[test]
    fn simulated_samples_round_trip() {
        let p = ModelParams::new(1.0, 0.75, 0.35).unwrap();
        let d = ExperimentDesign::new(80, 60, tau()).unwrap();
        let s = generate_censored_sample(&p, &d, &mut rng_from_seed(3)).unwrap();
        let back = parse_sample_csv(&sample_to_csv(&s), tau(), Some(80)).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(parse_sample_csv("", tau(), None), Err(Error::Empty));
        assert_eq!(parse_sample_csv("time,stress_level\n", tau(), None), Err(Error::Empty));
        assert_eq!(Error::Empty.to_string(), "no observations");
    }

    #[test]
    fn errors_name_the_line() {
        let text = "time,stress_level\n0.2,1\n0.5,1\n0.4,1\n";
        match parse_sample_csv(text, tau(), None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        let text = "time,stress_level\n0.2,1\nabc,1\n";
        assert!(matches!(parse_sample_csv(text, tau(), None), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn stress_level_must_agree_with_tau() {
        let text = "time,stress_level\n0.2,1\n0.7,1\n";
        assert!(matches!(parse_sample_csv(text, tau(), None), Err(Error::Parse { line: 3, .. })));
        let text = "time,stress_level\n0.2,2\n";
        assert!(matches!(parse_sample_csv(text, tau(), None), Err(Error::Parse { line: 2, .. })));
        let text = "time,stress_level\n0.2,3\n";
        assert!(parse_sample_csv(text, tau(), None).is_err());
    }

    #[test]
    fn time_column() {
        assert_eq!(parse_time_column("time\n3.5\n1.25\n").unwrap(), vec![3.5, 1.25]);
        assert_eq!(parse_time_column("time,stress_level\n0.2,1\n0.9,2\n").unwrap(), vec![0.2, 0.9]);
        assert!(matches!(parse_time_column("x\n1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_time_column("time\n1\n-2\n"), Err(Error::Parse { line: 3, .. })));
        assert_eq!(parse_time_column("time\n"), Err(Error::Empty));
    }

    #[test]
    fn header_is_checked() {
        assert!(matches!(
            parse_sample_csv("t,level\n0.2,1\n", tau(), None),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn ties_are_separated_and_n_defaults_to_rows() {
        let s = parse_sample_csv("time,stress_level\n0.2,1\n0.2,1\n0.9,2\n", tau(), None).unwrap();
        assert_eq!(s.n(), 3);
        assert_eq!(s.times()[1], 0.2f64.next_up());
        assert!(parse_sample_csv("time,stress_level\n0.2,1\n", tau(), Some(0)).is_err());
    }
}
