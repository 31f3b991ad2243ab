use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use relalg::suite::{all_ok, emit_report, parse_suite, run_suite, Format, RunOptions};
use relalg::Error;

#[derive(Parser)]
#[command(name = "relalg", version, about = "Run relalg verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check in a suite document.
    Verify {
        file: PathBuf,
        /// Seed for randomized probes; overrides the document.
        #[arg(long)]
        seed: Option<u64>,
        /// Largest module size the probes enumerate.
        #[arg(long)]
        max_size: Option<usize>,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
        format: OutputFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Human,
    Structured,
}

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn verify(
    file: PathBuf,
    seed: Option<u64>,
    max_size: Option<usize>,
    report: Option<PathBuf>,
    format: OutputFormat,
) -> anyhow::Result<u8> {
    let text =
        std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
    let suite = match parse_suite(&text) {
        Ok(s) => s,
        Err(e) => {
            let what = match e {
                Error::Parse { .. } => "parse",
                Error::Resolution { .. } => "resolution",
                _ => "validation",
            };
            eprintln!("{}: {what} error: {e}", file.display());
            return Ok(EXIT_INPUT);
        }
    };
    let mut opts = RunOptions::from_env()?;
    opts.seed = seed;
    opts.max_size = max_size;
    let rows = run_suite(&suite, &opts);
    let fmt = match format {
        OutputFormat::Human => Format::Human,
        OutputFormat::Structured => Format::Structured,
    };
    let out = emit_report(&rows, fmt);
    print!("{out}");
    if let Some(path) = report {
        std::fs::write(&path, &out).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if all_ok(&rows) { 0 } else { EXIT_FAILED })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            file,
            seed,
            max_size,
            report,
            format,
        } => verify(file, seed, max_size, report, format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
