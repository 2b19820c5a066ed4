//! Framed-link surgery presentations and the JSON input format.
//!
//! A presentation is recorded by its linking data only: the framing of each
//! component and the pairwise linking numbers. That is all the index
//! computation consumes.
//!
//! Input documents are JSON objects with exactly one source key:
//!
//! ```json
//! {"matrix": [[2, 1], [1, 2]], "label": "optional"}
//! {"preset": "s3"}
//! {"preset": "lens", "p": 6, "q": 1}
//! {"preset": "connected_sum", "parts": [{"preset": "lens", "p": 2, "q": 1}, {"matrix": [[0]]}]}
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::serde_int::parse_integer;

/// Convention used for lens space chains, echoed in reports.
pub const LENS_CONVENTION: &str = "chain of unknots with framings -a_1..-a_n and linking 1 between \
     neighbours, where p/q = a_1 - 1/(a_2 - 1/(...)) with every a_i >= 2; this presents L(p,q) up to \
     orientation and q -> q^(+-1) mod p";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurgeryPresentation {
    framings: Vec<BigInt>,
    /// Nonzero linking numbers keyed by `(i, j)` with `i < j`.
    linkings: BTreeMap<(usize, usize), BigInt>,
    label: Option<String>,
}

impl SurgeryPresentation {
    /// Builds a presentation from framings and linking numbers. Pairs may be
    /// given in either order; giving both orders with different values is an
    /// error.
    pub fn new<I>(framings: Vec<BigInt>, linkings: I, label: Option<String>) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), BigInt)>,
    {
        let m = framings.len();
        let mut table: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for ((i, j), lk) in linkings {
            if i >= m || j >= m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: i.max(j) + 1,
                });
            }
            if i == j {
                return Err(Error::Invariant(format!(
                    "linking number given for diagonal pair ({i},{i}); use the framing"
                )));
            }
            let key = (i.min(j), i.max(j));
            match table.get(&key) {
                Some(prev) if *prev != lk => {
                    return Err(Error::Asymmetric { row: key.0, col: key.1 })
                }
                _ => {
                    table.insert(key, lk);
                }
            }
        }
        table.retain(|_, v| !v.is_zero());
        Ok(Self {
            framings,
            linkings: table,
            label,
        })
    }

    /// The presentation of S³: no components.
    pub fn empty() -> Self {
        Self {
            framings: Vec::new(),
            linkings: BTreeMap::new(),
            label: None,
        }
    }

    pub fn from_matrix(b: &IntMatrix) -> Result<Self> {
        b.ensure_symmetric()?;
        let n = b.rows();
        let framings = b.diagonal_entries();
        let linkings = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Self::new(
            framings,
            linkings.map(|(i, j)| ((i, j), b[(i, j)].clone())),
            None,
        )
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn component_count(&self) -> usize {
        self.framings.len()
    }

    pub fn framings(&self) -> &[BigInt] {
        &self.framings
    }

    pub fn linking(&self, i: usize, j: usize) -> BigInt {
        self.linkings
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_default()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }
}

/// Symmetric matrix with framings on the diagonal and linking numbers off it.
pub fn linking_matrix(pres: &SurgeryPresentation) -> IntMatrix {
    let mut b = IntMatrix::diagonal(&pres.framings);
    for (&(i, j), lk) in &pres.linkings {
        b[(i, j)] = lk.clone();
        b[(j, i)] = lk.clone();
    }
    b
}

/// Negative continued fraction `p/q = a₁ − 1/(a₂ − …)` with all `aᵢ ≥ 2`.
pub fn negative_continued_fraction(p: i64, q: i64) -> Vec<i64> {
    let (mut num, mut den) = (p, q);
    let mut out = Vec::new();
    while den != 0 {
        let a = Integer::div_ceil(&num, &den);
        out.push(a);
        (num, den) = (den, a * den - num);
    }
    out
}

/// Chain presentation of the lens space L(p, q).
pub fn lens_presentation(p: i64, q: i64) -> Result<SurgeryPresentation> {
    if p < 2 || q <= 0 || q >= p || p.gcd(&q) != 1 {
        return Err(Error::InvalidLens {
            p: p.to_string(),
            q: q.to_string(),
        });
    }
    let coefficients = negative_continued_fraction(p, q);
    let framings: Vec<BigInt> = coefficients.iter().map(|&a| BigInt::from(-a)).collect();
    let n = framings.len();
    let det = tridiagonal_determinant(&framings);
    if det.abs() != BigInt::from(p) {
        return Err(Error::Invariant(format!(
            "lens chain for L({p},{q}) has determinant {det}"
        )));
    }
    let links = (1..n).map(|i| ((i - 1, i), BigInt::from(1)));
    SurgeryPresentation::new(framings, links, Some(format!("L({p},{q})")))
}

/// Determinant of the tridiagonal matrix with the given diagonal and all
/// off-diagonal entries 1, via the continuant recurrence.
fn tridiagonal_determinant(diag: &[BigInt]) -> BigInt {
    let mut prev = BigInt::from(1);
    let mut cur = BigInt::from(1);
    for (k, d) in diag.iter().enumerate() {
        let next = if k == 0 { d.clone() } else { d * &cur - &prev };
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Disjoint union of the two links, which surgers to the connected sum.
pub fn connected_sum(a: &SurgeryPresentation, b: &SurgeryPresentation) -> SurgeryPresentation {
    let shift = a.component_count();
    let mut framings = a.framings.clone();
    framings.extend(b.framings.iter().cloned());
    let mut linkings = a.linkings.clone();
    linkings.extend(
        b.linkings
            .iter()
            .map(|(&(i, j), v)| ((i + shift, j + shift), v.clone())),
    );
    let label = match (a.label(), b.label()) {
        (Some(x), Some(y)) => Some(format!("{x} # {y}")),
        (Some(x), None) if b.component_count() == 0 => Some(x.to_string()),
        (None, Some(y)) if a.component_count() == 0 => Some(y.to_string()),
        _ => None,
    };
    SurgeryPresentation {
        framings,
        linkings,
        label,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("input document must be a JSON object")]
    NotAnObject,
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("document needs exactly one of `matrix` or `preset`")]
    MissingSource,
    #[error("document has both `matrix` and `preset`")]
    ConflictingSource,
    #[error("`{0}` must be an array of arrays of integers")]
    NotAMatrix(String),
    #[error("non-integer entry at ({row},{col})")]
    NonInteger { row: usize, col: usize },
    #[error("field `{0}` must be an integer")]
    NonIntegerField(String),
    #[error("matrix is not square: {rows} rows but row {row} has {len} entries")]
    Shape { rows: usize, row: usize, len: usize },
    #[error("linking data is asymmetric at ({row},{col}): {upper} vs {lower}")]
    Asymmetric {
        row: usize,
        col: usize,
        upper: String,
        lower: String,
    },
    #[error("`label` must be a string")]
    BadLabel,
    #[error("unknown preset `{0}` (expected s3, lens or connected_sum)")]
    UnknownPreset(String),
    #[error("preset `{preset}` requires field `{field}`")]
    MissingField { preset: String, field: String },
    #[error("invalid preset parameters: {0}")]
    InvalidPreset(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept triangular linking data: a zero entry whose mirror is nonzero
    /// is filled in from the mirror. Conflicting nonzero pairs are still
    /// rejected.
    pub symmetrize: bool,
}

pub fn parse_presentation(text: &str) -> Result<SurgeryPresentation, ParseError> {
    parse_presentation_with(text, ParseOptions::default())
}

pub fn parse_presentation_with(
    text: &str,
    opts: ParseOptions,
) -> Result<SurgeryPresentation, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError::Syntax(e.to_string()))?;
    parse_document(&value, opts)
}

fn parse_document(value: &Value, opts: ParseOptions) -> Result<SurgeryPresentation, ParseError> {
    let obj = value.as_object().ok_or(ParseError::NotAnObject)?;
    let label = match obj.get("label") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(ParseError::BadLabel),
    };
    let mut pres = match (obj.get("matrix"), obj.get("preset")) {
        (Some(_), Some(_)) => return Err(ParseError::ConflictingSource),
        (None, None) => return Err(ParseError::MissingSource),
        (Some(m), None) => {
            check_keys(obj, &["matrix", "label"])?;
            parse_matrix(m, opts)?
        }
        (None, Some(p)) => parse_preset(obj, p, opts)?,
    };
    if label.is_some() {
        pres.label = label;
    }
    Ok(pres)
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str]) -> Result<(), ParseError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(ParseError::UnknownKey(k.clone())),
        None => Ok(()),
    }
}

fn parse_matrix(value: &Value, opts: ParseOptions) -> Result<SurgeryPresentation, ParseError> {
    let not_matrix = || ParseError::NotAMatrix("matrix".into());
    let rows = value.as_array().ok_or_else(not_matrix)?;
    let n = rows.len();
    let mut entries: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(not_matrix)?;
        if row.len() != n {
            return Err(ParseError::Shape {
                rows: n,
                row: i,
                len: row.len(),
            });
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, x)| match x {
                Value::Number(num) => {
                    parse_integer(num).ok_or(ParseError::NonInteger { row: i, col: j })
                }
                _ => Err(ParseError::NonInteger { row: i, col: j }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        entries.push(parsed);
    }
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in i + 1..n {
            if entries[i][j] == entries[j][i] {
                continue;
            }
            if opts.symmetrize && (entries[i][j].is_zero() || entries[j][i].is_zero()) {
                let v = if entries[i][j].is_zero() {
                    entries[j][i].clone()
                } else {
                    entries[i][j].clone()
                };
                entries[i][j] = v.clone();
                entries[j][i] = v;
                continue;
            }
            return Err(ParseError::Asymmetric {
                row: i,
                col: j,
                upper: entries[i][j].to_string(),
                lower: entries[j][i].to_string(),
            });
        }
    }
    let b = IntMatrix::from_rows(entries).expect("rows checked square");
    Ok(SurgeryPresentation::from_matrix(&b).expect("matrix checked symmetric"))
}

fn integer_field(obj: &Map<String, Value>, preset: &str, field: &str) -> Result<i64, ParseError> {
    let v = obj.get(field).ok_or_else(|| ParseError::MissingField {
        preset: preset.into(),
        field: field.into(),
    })?;
    v.as_i64()
        .filter(|_| v.as_number().and_then(parse_integer).is_some())
        .ok_or_else(|| ParseError::NonIntegerField(field.into()))
}

fn parse_preset(
    obj: &Map<String, Value>,
    preset: &Value,
    opts: ParseOptions,
) -> Result<SurgeryPresentation, ParseError> {
    let name = preset
        .as_str()
        .ok_or_else(|| ParseError::UnknownPreset(preset.to_string()))?;
    match name {
        "s3" => {
            check_keys(obj, &["preset", "label"])?;
            Ok(SurgeryPresentation::empty().with_label("S3"))
        }
        "lens" => {
            check_keys(obj, &["preset", "label", "p", "q"])?;
            let p = integer_field(obj, name, "p")?;
            let q = integer_field(obj, name, "q")?;
            lens_presentation(p, q).map_err(|e| ParseError::InvalidPreset(e.to_string()))
        }
        "connected_sum" => {
            check_keys(obj, &["preset", "label", "parts"])?;
            let parts = obj
                .get("parts")
                .ok_or_else(|| ParseError::MissingField {
                    preset: name.into(),
                    field: "parts".into(),
                })?
                .as_array()
                .ok_or_else(|| ParseError::InvalidPreset("`parts` must be an array".into()))?;
            parts
                .iter()
                .try_fold(SurgeryPresentation::empty(), |acc, part| {
                    Ok(connected_sum(&acc, &parse_document(part, opts)?))
                })
        }
        other => Err(ParseError::UnknownPreset(other.into())),
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDocument {
    #[serde(with = "crate::serde_int::matrix")]
    matrix: IntMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// Writes the presentation as a `{"matrix": ..}` document.
pub fn serialize_presentation(pres: &SurgeryPresentation) -> String {
    serde_json::to_string(&MatrixDocument {
        matrix: linking_matrix(pres),
        label: pres.label.clone(),
    })
    .expect("presentation serializes")
}
