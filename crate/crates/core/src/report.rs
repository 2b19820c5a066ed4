//! Report documents emitted by the command line front end.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::borsuk::{Index, IndexReport};
use crate::catalog::CatalogEntry;
use crate::linalg::{AbelianGroup, IntMatrix};

pub const SCHEMA: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub label: Option<String>,
    #[serde(with = "crate::serde_int::matrix")]
    pub matrix: IntMatrix,
}

/// Expected verdict from the lens family rule, next to the computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LensCheck {
    pub p: i64,
    pub q: i64,
    pub convention: String,
    pub expected_index: Option<Index>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub version: String,
    pub command: String,
    pub input: InputEcho,
    pub homology: AbelianGroup,
    /// Rank of H¹(N; Z/2).
    pub k: usize,
    pub classes: Vec<IndexReport>,
    pub truncated: bool,
    pub crosscheck: bool,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lens: Option<LensCheck>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let label = self.input.label.as_deref().unwrap_or("(unlabelled)");
        let _ = writeln!(out, "manifold:        {label}");
        let _ = writeln!(out, "linking matrix:  {}", self.input.matrix);
        let _ = writeln!(out, "H_1(N; Z):       {}", self.homology);
        let _ = writeln!(out, "dim H^1(N; Z/2): {}", self.k);
        if let Some(lens) = &self.lens {
            let expected = lens
                .expected_index
                .map_or("no connected double cover".to_string(), |i| format!("index {i}"));
            let _ = writeln!(
                out,
                "lens rule:       L({},{}) -> {expected} ({})",
                lens.p,
                lens.q,
                if lens.agrees { "agrees" } else { "DISAGREES" }
            );
            let _ = writeln!(out, "convention:      {}", lens.convention);
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        for warning in &self.warnings {
            let _ = writeln!(out, "warning: {warning}");
        }
        for r in &self.classes {
            let _ = writeln!(out);
            let _ = writeln!(out, "class x = {}", r.class);
            let _ = writeln!(out, "  X = {}", join(&r.lift));
            let _ = writeln!(out, "  Y = B.X/2 = {}", join(&r.bockstein_rep));
            let _ = writeln!(out, "  beta(x) vanishes: {}", r.beta_vanishes);
            let _ = writeln!(out, "  X^T B X / 2 mod 2: {}", r.triple_cup);
            match &r.self_linking {
                Some(l) => {
                    let _ = writeln!(out, "  self-linking of beta(x): {l}");
                }
                None => {
                    let _ = writeln!(out, "  self-linking of beta(x): (not computed)");
                }
            }
            let _ = writeln!(out, "  index: {}", r.index);
            let _ = writeln!(
                out,
                "  Borsuk-Ulam property holds for (M, tau, R^n) for n <= {}",
                r.index
            );
        }
        if self.truncated {
            let _ = writeln!(out, "\n(truncated: only kernel basis classes shown)");
        }
        out
    }
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub schema: u32,
    pub version: String,
    pub query: String,
    pub entries: Vec<CatalogEntry>,
    pub notes: Vec<String>,
}

impl CatalogReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{} -> {}: index {} ({})",
                e.cover_manifold, e.quotient_manifold, e.index, e.involution_note
            );
            if let (Some(b), Some(x)) = (&e.surgery_presentation, &e.cover_class) {
                let _ = writeln!(out, "  surgery: B = {b}, class {}", join(x));
            } else {
                let _ = writeln!(out, "  not computable by surgery");
            }
            let _ = writeln!(out, "  source: {}", e.source);
        }
        out
    }
}
