use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use brauer_cli::error::CliError;
use brauer_cli::report::sha256_hex;
use brauer_cli::run::{run_brauer, run_cohomology, Outcome, RunOptions};
use brauer_cli::ReportDocument;
use brauer_core::Limits;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "brauer", version, about = "Brauer groups of gerbes over stacky curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Write the machine-readable report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Resource cap on matrix entries.
    #[arg(long, default_value_t = Limits::DEFAULT_MAX_ENTRIES)]
    max_entries: u64,
    /// Base field characteristic (0 or a prime).
    #[arg(long = "char")]
    characteristic: Option<u64>,
    /// Cross-check against independent oracles and fail on mismatch.
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Brauer group described by an input file.
    Brauer {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Compute one group cohomology group.
    Cohomology {
        /// cyclic:<n>, product:<a>*<b>, semidirect_z2:<n>:<a> or table:<path>
        #[arg(long)]
        group: String,
        #[arg(long)]
        degree: usize,
        /// Z, Z/<m> or units
        #[arg(long)]
        coeff: String,
        #[command(flatten)]
        common: Common,
    },
}

fn options(c: &Common) -> RunOptions {
    RunOptions { limits: Limits::new(c.max_entries), characteristic: c.characteristic, verify: c.verify }
}

fn finish(outcome: Outcome, report: Option<&Path>) -> ExitCode {
    print!("{}", outcome.summary);
    if let Some(path) = report {
        if let Err(e) = fs::write(path, outcome.report.to_string()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(outcome.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Brauer { input, common } => {
            let outcome = match fs::read_to_string(&input) {
                Ok(text) => {
                    let base = input.parent().unwrap_or(Path::new("."));
                    run_brauer(&text, base, &options(&common))
                }
                Err(source) => {
                    let err = CliError::Io { path: input.clone(), source };
                    Outcome {
                        summary: format!("error [{}]: {err}\n", err.code()),
                        report: ReportDocument::error("brauer", &sha256_hex(""), &err),
                    }
                }
            };
            finish(outcome, common.report.as_deref())
        }
        Command::Cohomology { group, degree, coeff, common } => {
            let outcome = run_cohomology(&group, degree, &coeff, Path::new("."), &options(&common));
            finish(outcome, common.report.as_deref())
        }
    }
}
