//! `daqc`: QFT fidelity experiments for digital and digital-analog
//! protocols.

mod args;
mod commands;
mod manifest;
mod plot;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Failures, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, files or parameters: exit 2.
    Input(String),
    /// Numerical or verification failure: exit 1.
    Runtime(String),
}

impl From<daqc_core::Error> for CliError {
    fn from(e: daqc_core::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Runtime(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::SweepBeta(a) => commands::sweep_beta(a),
        Command::SweepErrorScale(a) => commands::sweep_error_scale(a),
        Command::Compile(a) => commands::compile(a),
        Command::Nn2ata(a) => commands::nn2ata(a),
        Command::Plot(a) => commands::plot(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
