use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hydrowallis_cli::commands::{self, Format, ScanRequest};
use hydrowallis_cli::verify::{self, Level};
use hydrowallis_cli::Failure;

/// Variational hydrogen atom in N dimensions and the Wallis product for π.
#[derive(Debug, Parser)]
#[command(name = "hydrowallis", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact accuracy ratio of the Gaussian bound to the exact ground level.
    Ratio {
        #[arg(long)]
        ell: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        dim: u32,
        /// Bits of precision for the decimal value.
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(53..))]
        precision: u32,
    },
    /// Estimate π as twice a partial Wallis product.
    Pi {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        terms: u64,
        #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u32).range(53..))]
        precision: u32,
    },
    /// Tabulate ratio, partial product and π estimate over ℓ.
    Scan {
        #[arg(long)]
        ell_max: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        dim: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        step: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u32).range(53..))]
        precision: u32,
        /// Write to this file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the identity and oracle checks.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyLevel::Fast)]
        level: VerifyLevel,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
    Plot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyLevel {
    Fast,
    Full,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Ratio { ell, dim, precision } => commands::ratio(&mut out, ell, dim, precision)?,
        Command::Pi { terms, precision } => commands::pi(&mut out, terms, precision)?,
        Command::Scan {
            ell_max,
            dim,
            step,
            format,
            precision,
            output,
        } => {
            let req = ScanRequest {
                ell_max,
                dim,
                step,
                format: match format {
                    OutputFormat::Csv => Format::Csv,
                    OutputFormat::Json => Format::Json,
                    OutputFormat::Plot => Format::Plot,
                },
                precision_bits: precision,
            };
            match output {
                Some(path) => {
                    let mut file = BufWriter::new(File::create(path)?);
                    commands::scan(&mut file, &req)?;
                }
                None => commands::scan(&mut out, &req)?,
            }
        }
        Command::Verify { level, inject_fault } => {
            let level = match level {
                VerifyLevel::Fast => Level::Fast,
                VerifyLevel::Full => Level::Full,
            };
            verify::verify(&mut out, level, inject_fault)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hydrowallis: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
