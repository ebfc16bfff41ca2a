mod args;
mod commands;
mod render;
mod verify;

use args::{Cli, Command};
use clap::Parser;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const CATALOGUE_ENV: &str = "NILSPEC_CATALOGUE_DIR";

fn run(cli: &Cli) -> anyhow::Result<commands::Report> {
    match &cli.command {
        Command::Lie(c) => commands::lie(c),
        Command::Spectra(c) => commands::spectra(c),
        Command::Bundle(c) => commands::bundle(c),
        Command::Theorem(c) => commands::theorem(c),
        Command::Matrix(c) => commands::matrix(c),
        Command::ExteriorPower { matrix, degree } => commands::exterior(matrix, *degree),
        Command::VerifyPaper => {
            let dir = std::env::var_os(CATALOGUE_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(nilspec_core::catalogue::default_dir);
            verify::verify_paper(&dir)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            let lines: Vec<String> = if cli.machine {
                report.machine.iter().map(|v| v.to_string()).collect()
            } else {
                report.human
            };
            let mut out = std::io::stdout().lock();
            for line in lines {
                // a closed reader (`| head`) ends output early
                if writeln!(out, "{line}").is_err() {
                    break;
                }
            }
            ExitCode::from(report.status)
        }
        Err(e) => {
            if cli.machine {
                println!("{}", serde_json::json!({ "error": format!("{e:#}") }));
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
