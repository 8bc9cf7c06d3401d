//! Command-line driver. Exit codes: 0 on success (and verified), 1 on input
//! errors, 2 when verification fails (the report is still emitted).

use crate::complex::build_affine_complex;
use crate::io::{self, ResolvedJob};
use crate::stratification::enumerate_strata;
use crate::verify::{hilbert_function, verify_theorem1};
use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_VERIFICATION_FAILED: i32 = 2;

#[derive(Parser)]
#[command(
    name = "hhl",
    version,
    about = "Build and verify HHL complexes from lattice maps"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the stratification and print the census document.
    Strata { input: PathBuf },
    /// Build the complex and print the full complex document.
    Complex { input: PathBuf },
    /// Verify the resolution claim degree by degree over a window.
    Verify {
        input: PathBuf,
        /// Bound on the free coordinates of the degree window.
        #[arg(long)]
        window: Option<i64>,
        /// Additionally certify H_0 free of rank one over the integers.
        #[arg(long)]
        integral: bool,
    },
    /// Print the Hilbert function of the semigroup algebra on a window.
    Hilbert {
        input: PathBuf,
        #[arg(long)]
        window: Option<i64>,
    },
    /// Export the complex (json document, M2 script, or SVG picture).
    Export {
        input: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Write to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert a gs block into the equivalent lattice-map job.
    ConvertGs { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Json,
    M2,
    Svg,
}

fn load(path: &Path) -> Result<ResolvedJob> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    Ok(io::parse_input(&text)?)
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn default_window(job: &ResolvedJob, flag: Option<i64>) -> i64 {
    flag.or(job.options.window).unwrap_or(3)
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            EXIT_INPUT_ERROR
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Strata { input } => {
            let job = load(&input)?;
            let strata = enumerate_strata(&job.input)?;
            let doc = io::strata_document(&strata, &job.input_sha256);
            emit(&None, &io::to_pretty_json(&doc))?;
            Ok(EXIT_OK)
        }
        Command::Complex { input } => {
            let job = load(&input)?;
            let strata = enumerate_strata(&job.input)?;
            let complex = build_affine_complex(&strata)?;
            let group = io::resolve_group(&job.group, &complex.grading)?;
            let doc = io::complex_document(&complex, &strata, &group, &job.input_sha256);
            emit(&None, &io::to_pretty_json(&doc))?;
            Ok(EXIT_OK)
        }
        Command::Verify { input, window, integral } => {
            let job = load(&input)?;
            let bound = default_window(&job, window);
            let integral = integral || job.options.integral;
            let strata = enumerate_strata(&job.input)?;
            let complex = build_affine_complex(&strata)?;
            let report = verify_theorem1(&complex, &strata, bound, integral);
            let doc = io::report_document(&report, &job.input_sha256);
            emit(&None, &io::to_pretty_json(&doc))?;
            if report.verdict {
                Ok(EXIT_OK)
            } else {
                eprintln!("verification failed; see the report above");
                Ok(EXIT_VERIFICATION_FAILED)
            }
        }
        Command::Hilbert { input, window } => {
            let job = load(&input)?;
            let bound = default_window(&job, window);
            let strata = enumerate_strata(&job.input)?;
            let complex = build_affine_complex(&strata)?;
            let values = hilbert_function(&job.input, &complex.grading, bound);
            let doc = io::hilbert_document(&values, bound, &job.input_sha256);
            emit(&None, &io::to_pretty_json(&doc))?;
            Ok(EXIT_OK)
        }
        Command::Export { input, format, output } => {
            let job = load(&input)?;
            let strata = enumerate_strata(&job.input)?;
            match format {
                ExportFormat::Json => {
                    let complex = build_affine_complex(&strata)?;
                    let group = io::resolve_group(&job.group, &complex.grading)?;
                    let doc =
                        io::complex_document(&complex, &strata, &group, &job.input_sha256);
                    emit(&output, &io::to_pretty_json(&doc))?;
                }
                ExportFormat::M2 => {
                    let complex = build_affine_complex(&strata)?;
                    emit(&output, &io::m2::export_m2(&complex, job.input.n))?;
                }
                ExportFormat::Svg => {
                    let svg = io::svg::export_svg(&strata)?;
                    emit(&output, &svg)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::ConvertGs { input } => {
            let job = load(&input)?;
            let echoed = io::job_from_resolved(&job);
            emit(&None, &io::to_pretty_json(&echoed))?;
            Ok(EXIT_OK)
        }
    }
}
