//! `optoforce` command-line frontend.

mod commands;
mod config;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{ContourArgs, MapArgs, OscillatorArgs, PointArgs, SpectrumArgs, TablesArgs};
use crate::config::CommonArgs;
use crate::error::CliError;

/// Force sensitivity of a free particle in a dissipatively coupled cavity
/// with a degenerate parametric amplifier. Emits plot-ready CSV.
#[derive(Debug, Parser)]
#[command(name = "optoforce", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sensitivity R/F_SQL^2 and its shot, backaction and thermal parts.
    Sensitivity {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        args: PointArgs,
    },
    /// Output-quadrature spectrum.
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        args: SpectrumArgs,
    },
    /// Grid of mu over (omega/kappa0, G/kappa0).
    MuMap {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        args: MapArgs,
    },
    /// Level-set polylines of K, mu or R_rel.
    Contour {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        args: ContourArgs,
    },
    /// Minimum of mu over frequency for the reference tables.
    Tables {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        args: TablesArgs,
    },
    /// Harmonically bound particle compared with the free particle.
    Oscillator {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        args: OscillatorArgs,
    },
}

fn run(cli: Cli, diag: &mut dyn Write) -> Result<(), CliError> {
    let common = match &cli.command {
        Command::Sensitivity { common, .. }
        | Command::Spectrum { common, .. }
        | Command::MuMap { common, .. }
        | Command::Contour { common, .. }
        | Command::Tables { common, .. }
        | Command::Oscillator { common, .. } => common,
    };
    let file = common.file()?;
    let setup = common.resolve(&file, diag)?;
    let text = match &cli.command {
        Command::Sensitivity { args, .. } => commands::sensitivity_csv(&setup, &file, args)?,
        Command::Spectrum { args, .. } => commands::spectrum_csv(&setup, &file, args)?,
        Command::MuMap { args, .. } => commands::mu_map_csv(&setup, &file, args)?,
        Command::Contour { args, .. } => commands::contour_csv(&setup, &file, args)?,
        Command::Tables { args, .. } => commands::tables_csv(&setup, &file, args)?,
        Command::Oscillator { args, .. } => commands::oscillator_csv(&setup, &file, args, diag)?,
    };
    match &setup.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Output {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Output {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stderr = std::io::stderr();
    match run(cli, &mut stderr) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
