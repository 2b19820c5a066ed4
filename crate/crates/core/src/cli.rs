//! Command line front end: `analyze`, `lens`, `catalog` and `selftest`.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use thiserror::Error;

use crate::borsuk::{classify_all_with, ClassifyOptions};
use crate::catalog::{self, lens_family_index};
use crate::error::Error;
use crate::homology::{first_homology, DEFAULT_CAP};
use crate::report::{CatalogReport, InputEcho, LensCheck, Report, SCHEMA, VERSION};
use crate::selftest::{self, SelftestSummary};
use crate::surgery::{
    lens_presentation, linking_matrix, parse_presentation_with, ParseError, ParseOptions,
    SurgeryPresentation, LENS_CONVENTION,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "borsuk-ulam",
    version,
    about = "Z/2-index of free involutions on 3-manifolds from surgery linking matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Maximum number of cover classes to enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP, global = true)]
    pub cap: usize,

    /// Classify only a kernel basis when the class count exceeds the cap.
    #[arg(long, global = true)]
    pub allow_truncate: bool,

    /// Skip the linking-form cross-check.
    #[arg(long, global = true)]
    pub no_crosscheck: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify every connected double cover of a presented manifold.
    Analyze {
        /// JSON input document (`-` for stdin).
        file: PathBuf,
        /// Fill in the mirror of one-sided linking entries instead of
        /// rejecting them.
        #[arg(long)]
        symmetrize: bool,
    },
    /// Classify the double cover of the lens space L(p, q).
    Lens {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// Look up known classifications by manifold name.
    Catalog { name: String },
    /// Run the built-in verification suites.
    Selftest {
        /// Fixtures only.
        #[arg(long)]
        quick: bool,
    },
}

/// Flags shared by the classification commands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    pub cap: usize,
    pub allow_truncate: bool,
    pub crosscheck: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            allow_truncate: false,
            crosscheck: true,
        }
    }
}

impl From<&Cli> for Flags {
    fn from(cli: &Cli) -> Self {
        Self {
            cap: cli.cap,
            allow_truncate: cli.allow_truncate,
            crosscheck: !cli.no_crosscheck,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 2 for input validation, 3 for the cap policy, 4 for internal
    /// invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) => 2,
            CliError::Core(Error::CapExceeded { .. }) => 3,
            CliError::Core(Error::Invariant(_)) => 4,
            CliError::Core(Error::Parse(_)) => 2,
            CliError::Core(_) => 2,
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io_err = |e: std::io::Error| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(io_err)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

/// Full classification report for a presentation.
pub fn analyze_presentation(
    pres: &SurgeryPresentation,
    command: &str,
    flags: Flags,
) -> Result<Report, CliError> {
    let b = linking_matrix(pres);
    let homology = first_homology(&b)?;
    let opts = ClassifyOptions {
        crosscheck: flags.crosscheck,
    };
    let classification = classify_all_with(&b, flags.cap, opts)?;
    if classification.truncated && !flags.allow_truncate {
        let total: BigInt = (BigInt::from(1) << classification.kernel_dim) - 1;
        return Err(Error::CapExceeded {
            classes: total.to_string(),
            cap: flags.cap,
        }
        .into());
    }
    let mut warnings = Vec::new();
    if !flags.crosscheck {
        warnings.push("linking-form cross-check skipped".to_string());
    }
    Ok(Report {
        schema: SCHEMA,
        version: VERSION.to_string(),
        command: command.to_string(),
        input: InputEcho {
            label: pres.label().map(str::to_string),
            matrix: b,
        },
        homology,
        k: classification.kernel_dim,
        classes: classification.reports,
        truncated: classification.truncated,
        crosscheck: flags.crosscheck,
        notes: classification.notes,
        warnings,
        lens: None,
    })
}

pub fn cmd_analyze_text(text: &str, symmetrize: bool, flags: Flags) -> Result<Report, CliError> {
    let pres = parse_presentation_with(text, ParseOptions { symmetrize })?;
    analyze_presentation(&pres, "analyze", flags)
}

pub fn cmd_analyze(path: &Path, symmetrize: bool, flags: Flags) -> Result<Report, CliError> {
    cmd_analyze_text(&read_input(path)?, symmetrize, flags)
}

pub fn cmd_lens(p: i64, q: i64, flags: Flags) -> Result<Report, CliError> {
    let pres = lens_presentation(p, q)?;
    let mut report = analyze_presentation(&pres, "lens", flags)?;
    let expected = lens_family_index(p);
    let agrees = match expected {
        Some(idx) => report.classes.len() == 1 && report.classes[0].index == idx,
        None => report.classes.is_empty(),
    };
    report.lens = Some(LensCheck {
        p,
        q,
        convention: LENS_CONVENTION.to_string(),
        expected_index: expected,
        agrees,
    });
    if !agrees {
        report
            .warnings
            .push("computed index disagrees with the lens family rule".to_string());
    }
    Ok(report)
}

pub fn cmd_catalog(name: &str) -> CatalogReport {
    let entries = catalog::lookup(name);
    let notes = if entries.is_empty() {
        vec![format!("no catalog entry matches {name:?}")]
    } else {
        Vec::new()
    };
    CatalogReport {
        schema: SCHEMA,
        version: VERSION.to_string(),
        query: name.to_string(),
        entries,
        notes,
    }
}

pub fn cmd_selftest(quick: bool) -> SelftestSummary {
    selftest::run(quick)
}

/// Runs a parsed command line; returns the text to print on stdout and the
/// process exit status. Errors go to the returned text for status != 0.
pub fn run(cli: &Cli) -> (String, i32) {
    let flags = Flags::from(cli);
    let render = |report: &Report| match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let result = match &cli.command {
        Command::Analyze { file, symmetrize } => cmd_analyze(file, *symmetrize, flags).map(|r| render(&r)),
        Command::Lens { p, q } => cmd_lens(*p, *q, flags).map(|r| render(&r)),
        Command::Catalog { name } => {
            let r = cmd_catalog(name);
            Ok(match cli.format {
                Format::Json => r.to_json(),
                Format::Text => r.to_text(),
            })
        }
        Command::Selftest { quick } => {
            let summary = cmd_selftest(*quick);
            let text = match cli.format {
                Format::Json => summary.to_json(),
                Format::Text => summary.to_text(),
            };
            return (text, if summary.passed { 0 } else { 1 });
        }
    };
    match result {
        Ok(text) => (text, 0),
        Err(e) => (format!("error: {e}"), e.exit_code()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borsuk::Index;

    #[test]
    fn analyze_examples() {
        let r = cmd_analyze_text(r#"{"matrix": [[-4]]}"#, false, Flags::default()).unwrap();
        assert_eq!(r.classes.len(), 1);
        assert_eq!(r.classes[0].index, Index::Two);

        let r = cmd_analyze_text(r#"{"matrix": [[-3]]}"#, false, Flags::default()).unwrap();
        assert!(r.classes.is_empty());
        assert!(r.notes.iter().any(|n| n.contains("no connected double cover")));

        let e = cmd_analyze_text(r#"{"matrix": [[0,1],[0,0]]}"#, false, Flags::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("asymmetric"));
    }

    #[test]
    fn cap_policy() {
        let doc = r#"{"matrix": [[0,0,0],[0,0,0],[0,0,0]]}"#;
        let tight = Flags {
            cap: 3,
            ..Flags::default()
        };
        let e = cmd_analyze_text(doc, false, tight).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let r = cmd_analyze_text(
            doc,
            false,
            Flags {
                allow_truncate: true,
                ..tight
            },
        )
        .unwrap();
        assert!(r.truncated);
        assert_eq!(r.classes.len(), 3);
        assert_eq!(r.k, 3);
    }

    #[test]
    fn lens_examples() {
        let r = cmd_lens(6, 1, Flags::default()).unwrap();
        assert_eq!(r.classes[0].index, Index::Three);
        assert!(r.lens.as_ref().unwrap().agrees);
        let r = cmd_lens(8, 3, Flags::default()).unwrap();
        assert_eq!(r.classes[0].index, Index::Two);
        let r = cmd_lens(5, 2, Flags::default()).unwrap();
        assert!(r.classes.is_empty());
        assert_eq!(r.lens.unwrap().expected_index, None);
        assert_eq!(cmd_lens(4, 2, Flags::default()).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn catalog_examples() {
        assert_eq!(cmd_catalog("S1xS2").entries.len(), 4);
        let k3 = cmd_catalog("K3");
        assert_eq!(k3.entries.len(), 1);
        assert_eq!(k3.entries[0].index, Index::Three);
        let none = cmd_catalog("unknown");
        assert!(none.entries.is_empty());
        assert_eq!(none.notes.len(), 1);
    }

    #[test]
    fn report_json_is_deterministic_and_round_trips() {
        let doc = r#"{"matrix": [[2,0],[0,2]], "label": "RP3#RP3"}"#;
        let a = cmd_analyze_text(doc, false, Flags::default()).unwrap().to_json();
        let b = cmd_analyze_text(doc, false, Flags::default()).unwrap().to_json();
        assert_eq!(a, b);
        let parsed: Report = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed.to_json(), a);
    }

    #[test]
    fn text_report_mentions_verdict() {
        let r = cmd_analyze_text(r#"{"matrix": [[-2]]}"#, false, Flags::default()).unwrap();
        let text = r.to_text();
        assert!(text.contains("index: 3"));
        assert!(text.contains("Borsuk-Ulam property holds for (M, tau, R^n) for n <= 3"));
        assert!(text.contains("self-linking of beta(x): 1/2"));
    }
}
