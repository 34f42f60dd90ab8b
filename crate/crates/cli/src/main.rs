//! `gumbel-sslt`: simulation, fitting, Monte Carlo studies and
//! goodness-of-fit checks for Gumbel Type-II step-stress data.
//!
//! Exit status: 0 on success, 1 for invalid input, 2 for numerical failure
//! (non-convergence and the like), 64 for command-line usage errors.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

const EXIT_INVALID: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();

    let result = match cli.command {
        Command::Simulate(a) => commands::simulate(a),
        Command::FitMle(a) => commands::fit_mle(a),
        Command::FitBayes(a) => commands::fit_bayes(a),
        Command::McStudy(a) => commands::mc_study(a),
        Command::Gof(a) => commands::gof(a),
        Command::RealData(a) => commands::real_data(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let numerical = e
                .downcast_ref::<gumbel_sslt::Error>()
                .is_some_and(gumbel_sslt::Error::is_numerical);
            ExitCode::from(if numerical { EXIT_NUMERICAL } else { EXIT_INVALID })
        }
    }
}
