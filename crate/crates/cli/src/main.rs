//! `gmatk`: matroids, chordality, strong elimination orders and Betti
//! tables from the command line.

mod config;
mod report;

use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;

use config::{Cli, Command, RunConfig};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let config = RunConfig::from_cli(&cli)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build_global()?;
    let out = match &cli.command {
        Command::Matroid(args) => report::matroid_info(&config, args)?,
        Command::Chordality(args) => report::chordality(&config, args)?,
        Command::Groebner(args) => report::groebner(&config, args)?,
        Command::Betti(args) => report::betti(&config, args)?,
        Command::ReproducePaper(args) => report::reproduce(&config, args)?,
    };
    print!("{}", out.text);
    Ok(ExitCode::from(out.code))
}

/// 2 for bad input, 3 for resource caps, 4 for internal inconsistencies.
fn exit_code(e: &anyhow::Error) -> u8 {
    use gmatk::Error;
    match e.downcast_ref::<Error>() {
        Some(Error::SizeLimit(_)) => 3,
        Some(Error::MismatchBug(_)) => 4,
        Some(_) => 2,
        None => 2,
    }
}
