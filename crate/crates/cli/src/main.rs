mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use seqdelib::Error;

use args::{Cli, Command};

/// 2 for bad flag values, 1 for everything else (IO, structural problems).
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::InvalidInput(_) | Error::Domain(_) | Error::UnsupportedSpace { .. }) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate(args) => commands::simulate(args).map(|()| true),
        Command::Theory(args) => commands::theory(args).map(|()| true),
        Command::Experiment(args) => commands::experiment(args).map(|()| true),
        Command::ValidateSpace(args) => commands::validate_space(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
