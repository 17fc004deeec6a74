//! `sharpbound` command-line driver.
//!
//! Exit codes: 0 ok, 1 usage or evaluation error, 2 inequality violated with
//! its hypotheses met (`verify`), 3 counterexamples found (`mine`).

mod args;
mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

const EXIT_ERROR: u8 = 1;

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let (payload, code, out) = match &cli.command {
        Command::Verify(a) => {
            let (p, c) = commands::verify(a)?;
            (p, c, &a.output)
        }
        Command::Audit(a) => {
            let (p, c) = commands::audit(a)?;
            (p, c, &a.output)
        }
        Command::Bounds(a) => {
            let (p, c) = commands::bounds(a)?;
            (p, c, &a.output)
        }
        Command::Mine(a) => {
            let (p, c) = commands::mine(a)?;
            (p, c, &a.output)
        }
    };
    let text = output::render(&payload, out.format)?;
    output::emit(&text, out)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_ERROR,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
