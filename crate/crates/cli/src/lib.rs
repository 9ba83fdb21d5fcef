//! Command-line front end for the stability calculus: reads a JSON job
//! configuration, dispatches to the computational crate and renders
//! reports as text or canonical JSON. Reports go to standard output,
//! diagnostics to standard error; exit codes are 0 (success), 2 (config
//! error) and 3 (operation precondition violated).

pub mod config;
pub mod jsonio;
pub mod parallel;
pub mod polytext;
pub mod report;

use serde::Serialize;

use cohsys::stability::AlphaPoly;

use crate::config::{CliError, Format, JobConfig};
use crate::parallel::enumerate_walls_parallel;
use crate::polytext::{parse_candidate, parse_poly};
use crate::report::{
    alpha_independent_diagnostics, bound_envelope, bound_text, candidate_diagnostics,
    check_report, check_text, clifford_envelope, clifford_text, dim_envelope, dim_text,
    info_envelope, info_text, smooth_envelope, smooth_text, stability_diagnostics, walls_json,
    walls_text, Envelope, InputEcho,
};

/// A resolved subcommand, independent of the argument parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Info,
    Bound,
    Walls { workers: usize },
    Dim,
    Clifford { a: Option<i64> },
    Smooth,
    Check { alpha: String, candidate: String },
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// The report, ready for standard output.
    pub stdout: String,
    /// Diagnostic lines for standard error.
    pub diagnostics: Vec<String>,
}

fn to_json_line<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Precondition(e.to_string()))
}

pub fn execute(command: &Command, config: &JobConfig, format: Format) -> Result<Outcome, CliError> {
    match command {
        Command::Info => {
            let (surface, system) = config.resolve()?;
            let envelope = info_envelope(config)?;
            let diagnostics = stability_diagnostics(&surface, &system)?;
            let stdout = match format {
                Format::Json => to_json_line(&envelope)?,
                Format::Text => info_text(
                    &surface,
                    &system,
                    &envelope.report,
                    config.options.assert_ample,
                )?,
            };
            Ok(Outcome { stdout, diagnostics })
        }
        Command::Bound => {
            let (surface, system) = config.resolve()?;
            let envelope = bound_envelope(config)?;
            let diagnostics = stability_diagnostics(&surface, &system)?;
            let stdout = match format {
                Format::Json => to_json_line(&envelope)?,
                Format::Text => bound_text(&envelope.report),
            };
            Ok(Outcome { stdout, diagnostics })
        }
        Command::Walls { workers } => {
            let (surface, system) = config.resolve()?;
            let window = config.window_or_default(&surface, &system)?;
            let report = enumerate_walls_parallel(&surface, &system, &window, *workers)?;
            let mut diagnostics = stability_diagnostics(&surface, &system)?;
            diagnostics.extend(alpha_independent_diagnostics(&report));
            let stdout = match format {
                Format::Json => to_json_line(&walls_json(&report))?,
                Format::Text => walls_text(&report),
            };
            Ok(Outcome { stdout, diagnostics })
        }
        Command::Dim => {
            let envelope = dim_envelope(config)?;
            let stdout = match format {
                Format::Json => to_json_line(&envelope)?,
                Format::Text => dim_text(&envelope.report),
            };
            Ok(Outcome { stdout, diagnostics: Vec::new() })
        }
        Command::Clifford { a } => {
            let envelope = clifford_envelope(config, *a)?;
            let stdout = match format {
                Format::Json => to_json_line(&envelope)?,
                Format::Text => clifford_text(&envelope.report),
            };
            Ok(Outcome { stdout, diagnostics: Vec::new() })
        }
        Command::Smooth => {
            let envelope = smooth_envelope(config)?;
            let stdout = match format {
                Format::Json => to_json_line(&envelope)?,
                Format::Text => smooth_text(&envelope.report),
            };
            Ok(Outcome { stdout, diagnostics: Vec::new() })
        }
        Command::Check { alpha, candidate } => {
            let (surface, system) = config.resolve()?;
            let alpha = AlphaPoly::new(parse_poly(alpha)?)?;
            let cand = parse_candidate(candidate)?;
            let mut diagnostics = stability_diagnostics(&surface, &system)?;
            diagnostics.extend(candidate_diagnostics(&cand));
            let report = check_report(&surface, &system, &alpha, &cand)?;
            let envelope = Envelope {
                command: "check".to_string(),
                input: InputEcho::from_config(config),
                report,
            };
            let stdout = match format {
                Format::Json => to_json_line(&envelope)?,
                Format::Text => check_text(&envelope.report),
            };
            Ok(Outcome { stdout, diagnostics })
        }
    }
}
