use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use menon_core::harness::{
    character_table, format_character_table, format_report, reproduce_remark, run_sweep,
    search_with, Identity, IdentityReport, OutputFormat, SweepConfig, DEFAULT_TOLERANCE,
};
use menon_core::Error;

#[derive(Parser)]
#[command(
    name = "menon",
    version,
    about = "Exhaustive checks of Menon-type gcd identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify an identity over every qualifying instance up to --n-max.
    Verify {
        identity: Identity,
        #[arg(long)]
        n_max: u64,
        /// Comma-separated s values (number of variables for sury).
        #[arg(long, value_delimiter = ',', default_value = "1")]
        s: Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Evaluate the n = 4, s = 2 counterexample for the principal character.
    Remark {
        #[arg(long, default_value = "text")]
        format: OutputFormat,
    },
    /// List every failure of the unrestricted generalized identity.
    Search {
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        s: Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Dump the character table of modulus n.
    CharTable {
        n: u64,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
    },
}

fn emit(bytes: &[u8]) -> Result<(), Error> {
    std::io::stdout()
        .lock()
        .write_all(bytes)
        .map_err(|e| Error::Resource(format!("writing output: {e}")))
}

fn emit_report(report: &IdentityReport, format: OutputFormat) -> Result<u8, Error> {
    emit(&format_report(report, format))?;
    Ok(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Verify {
            identity,
            n_max,
            s,
            tolerance,
            format,
            jobs,
        } => {
            let config = SweepConfig {
                identity,
                n_max,
                s_values: s,
                tolerance,
                output: format,
                parallelism: jobs,
            };
            emit_report(&run_sweep(&config)?, format)
        }
        Command::Remark { format } => emit_report(&reproduce_remark()?, format),
        Command::Search {
            n_max,
            s,
            tolerance,
            format,
            jobs,
        } => {
            let config = SweepConfig {
                identity: Identity::StrictGen,
                n_max,
                s_values: s,
                tolerance,
                output: format,
                parallelism: jobs,
            };
            emit_report(&search_with(config)?, format)
        }
        Command::CharTable { n, format } => {
            let rows = character_table(n)?;
            emit(&format_character_table(n, &rows, format))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("menon: {e}");
            match e {
                Error::Integrity(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
