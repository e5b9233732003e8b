//! `powtool`: a command line shell over `powtool-core`.
//!
//! Problems are read from files in the format described in [`dsl`]. Every
//! command produces a [`report::Report`], printed as indented text or as
//! JSON (`--json`). With several files the JSON output is an array.

pub mod commands;
pub mod dsl;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

pub use commands::{run_command, CliError, Command, Flags};
pub use dsl::{parse_problem, ParseError, ProblemFile};
pub use report::{Report, Settings};

#[derive(Debug, Parser)]
#[command(name = "powtool", version, about = "Analyze and solve systems of exponential-sum equations")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Problem files; each gets its own report.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Height bound for normality and confinement searches.
    #[arg(long)]
    pub height: Option<u32>,
    /// Largest torsion order examined by `cert`.
    #[arg(long)]
    pub torsion: Option<u64>,
    /// Seed for `solve` and `confine`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Working precision in bits.
    #[arg(long)]
    pub precision: Option<usize>,
    /// Radius of the sampling region.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Number of Newton attempts.
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

impl Cli {
    pub fn flags(&self) -> Flags {
        Flags {
            height: self.height,
            torsion: self.torsion,
            seed: self.seed,
            precision: self.precision,
            radius: self.radius,
            budget: self.budget,
        }
    }
}

/// Reads, parses and runs one file.
pub fn run_file(cmd: Command, path: &str, flags: &Flags) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(e.to_string()))?;
    let problem = parse_problem(&text).map_err(CliError::Parse)?;
    run_command(cmd, path, &problem, flags)
}

fn error_report(cmd: Command, path: &str, e: &CliError) -> Report {
    let (line, column) = match e {
        CliError::Parse(p) => (Some(p.line), Some(p.column)),
        _ => (None, None),
    };
    Report {
        schema: report::SCHEMA,
        command: cmd.name().into(),
        file: path.into(),
        inputs_digest: None,
        settings: None,
        result: serde_json::Value::Null,
        warnings: vec![],
        error: Some(report::ErrorInfo { kind: e.kind(), message: e.to_string(), line, column }),
    }
}

/// Runs every file and writes the reports. Returns the exit status: zero,
/// or the code of the first failing file.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let flags = cli.flags();
    let mut status = 0;
    let mut reports = Vec::new();
    for path in &cli.files {
        let path = path.to_string_lossy().into_owned();
        let report = match run_file(cli.command, &path, &flags) {
            Ok(r) => r,
            Err(e) => {
                if status == 0 {
                    status = e.exit_code();
                }
                let _ = writeln!(err, "error: {path}: {e}");
                error_report(cli.command, &path, &e)
            }
        };
        reports.push(report);
    }
    if cli.json {
        let values: Vec<_> = reports.iter().map(Report::to_json).collect();
        let doc = if values.len() == 1 { values.into_iter().next().unwrap() } else { values.into() };
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        let texts: Vec<String> = reports.iter().filter(|r| r.error.is_none()).map(Report::to_text).collect();
        let _ = write!(out, "{}", texts.join("\n"));
    }
    status
}
