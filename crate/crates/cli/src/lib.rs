//! Command-line driver: parses a run configuration, evaluates points or
//! scan grids in parallel and renders JSON, text and CSV reports.

pub mod args;
pub mod config;
pub mod format;
pub mod report;
pub mod run;

use std::fs;
use std::io::Write;

use finsler_core::{ParseError, PresetError};

pub use args::Args;
pub use config::{FunctionSource, OutputFormat, RunConfig, ScanSpec};
pub use report::{PointReport, Report, ScanSummary};
pub use run::{run, scan, Evaluator, RunOutcome, ScanOutcome};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}", render_parse_error(source_text, error))]
    Parse {
        source_text: String,
        error: ParseError,
    },
    #[error(transparent)]
    Preset(#[from] PresetError),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn render_parse_error(source: &str, e: &ParseError) -> String {
    let span = e.span;
    let width = span.end.saturating_sub(span.start).max(1);
    format!(
        "parse error: {e}\n  {source}\n  {}{}",
        " ".repeat(source[..span.start.min(source.len())].chars().count()),
        "^".repeat(width)
    )
}

/// Runs a parsed command line and returns the process exit code.
pub fn main_with(args: &Args) -> i32 {
    match execute(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(args: &Args) -> Result<i32, CliError> {
    let config = RunConfig::from_args(args)?;
    let (report, code, csv) = if config.scan.is_some() {
        let out = scan(&config)?;
        (out.report, 0, Some(out.csv))
    } else {
        let out = run(&config)?;
        (out.report, out.exit_code, None)
    };
    let json = format::to_json(&report);
    let rendered = match config.format {
        OutputFormat::Json => json,
        OutputFormat::Text => format::to_text(&json),
    };
    match &config.out {
        Some(path) => fs::write(path, rendered)?,
        None => std::io::stdout().write_all(rendered.as_bytes())?,
    }
    if let (Some(path), Some(csv)) = (&config.csv, csv) {
        fs::write(path, csv)?;
    }
    Ok(code)
}
