//! `lissajous`: verification suites, unirrep spectra and the physical
//! comparison for Lissajous systems on the sphere.
//!
//! Exit status is 0 when every selected check passes, 1 when a check fails
//! and 2 for configuration or usage errors.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::{Mode, RunConfig, Suite};

#[derive(Parser, Debug)]
#[command(name = "lissajous", version, about = "Exact algebra and spectrum checks for Lissajous systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigen equations, action tables, algebra relations and realizations.
    Verify(Args),
    /// Finite-dimensional unirreps and their energies.
    Spectrum(Args),
    /// Audit of the unirreps against the separated spectrum.
    Compare(Args),
    /// Write the spectrum table, P1/P2 coefficients and the action table.
    Export(Args),
}

#[derive(clap::Args, Debug)]
struct Args {
    /// Run configuration.
    #[arg(short, long)]
    config: PathBuf,
    /// Override `[run] mode`.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Override `[output] dir`.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Override `[run] suites`, comma separated.
    #[arg(long)]
    suites: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Numeric,
}

fn load(args: &Args) -> Result<RunConfig, config::ConfigError> {
    let mut cfg = RunConfig::load(&args.config)?;
    if let Some(m) = args.mode {
        cfg.mode = match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Numeric => Mode::Numeric,
        };
    }
    if let Some(dir) = &args.out {
        cfg.out_dir = dir.clone();
    }
    if let Some(s) = &args.suites {
        cfg.suites = Suite::parse_list(s)?;
    }
    cfg.check()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::Verify(a) => ("verify", a),
        Command::Spectrum(a) => ("spectrum", a),
        Command::Compare(a) => ("compare", a),
        Command::Export(a) => ("export", a),
    };
    let cfg = match load(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("lissajous {name}: configuration error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Verify(_) => commands::verify(&cfg),
        Command::Spectrum(_) => commands::spectrum(&cfg),
        Command::Compare(_) => commands::compare(&cfg),
        Command::Export(_) => commands::export(&cfg),
    };
    match result {
        Ok(out) => {
            for f in &out.failures {
                eprintln!("{f}");
            }
            for p in &out.written {
                println!("wrote {}", p.display());
            }
            println!("{}", out.summary);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("lissajous {name}: {e:#}");
            ExitCode::from(2)
        }
    }
}
