//! `catalan` — compute Catalan's constant to arbitrary precision via four
//! central binomial series, reproduce their deviation table, predict term
//! counts, verify the underlying identity chain, and benchmark the kernels.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use catalan_cli::commands::{self, CliError, CmdOutput};

#[derive(Parser)]
#[command(
    name = "catalan",
    version,
    about = "Catalan's constant via rapidly converging central binomial series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format: text, csv (table only) or json.
    #[arg(long, default_value = "text")]
    format: String,
    /// Write the report to a file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute G to a number of decimal digits through one series.
    Compute {
        /// Series: ramanujan, lupas, sun or theorem1.
        #[arg(long)]
        series: String,
        /// Decimal digits to print.
        #[arg(long)]
        digits: u32,
        /// Summation method: incremental or binsplit.
        #[arg(long, default_value = "binsplit")]
        method: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Deviations S_N - G of the four series for a list of N values.
    Table {
        /// Comma-separated truncation indices.
        #[arg(long = "n", value_delimiter = ',', default_values_t = vec![5u64, 10, 50, 100, 500, 1000])]
        n: Vec<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Predict the number of terms needed for a digit target.
    Estimate {
        #[arg(long)]
        series: String,
        #[arg(long)]
        digits: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the oracle suite verifying the identity chain.
    Verify {
        /// fast: coarse checks, 15-digit quadrature; full: 30-digit
        /// quadrature and million-term coarse sums.
        #[arg(long, default_value = "fast")]
        level: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Time every kernel with both methods at a digit target.
    Bench {
        #[arg(long)]
        digits: u32,
        #[arg(long, default_value_t = 1)]
        repetitions: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn dispatch(cli: Cli) -> Result<(CmdOutput, OutputArgs), CliError> {
    match cli.command {
        Command::Compute {
            series,
            digits,
            method,
            output,
        } => Ok((
            commands::run_compute(&series, digits, &method, &output.format)?,
            output,
        )),
        Command::Table { n, output } => Ok((commands::run_table(&n, &output.format)?, output)),
        Command::Estimate {
            series,
            digits,
            output,
        } => Ok((
            commands::run_estimate(&series, digits, &output.format)?,
            output,
        )),
        Command::Verify { level, output } => {
            Ok((commands::run_verify(&level, &output.format)?, output))
        }
        Command::Bench {
            digits,
            repetitions,
            output,
        } => Ok((
            commands::run_bench(digits, repetitions, &output.format)?,
            output,
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok((result, output)) => {
            if let Some(path) = output.out {
                if let Err(e) = std::fs::write(&path, result.text.as_bytes()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                let mut stdout = std::io::stdout().lock();
                let _ = stdout.write_all(result.text.as_bytes());
            }
            ExitCode::from(result.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit_code as u8)
        }
    }
}
