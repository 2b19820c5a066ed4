//! Z/2-index of a free involution from the linking matrix of its quotient.
//!
//! Let `x ∈ ker(B mod 2)` classify the double cover and let `X` be the
//! {0,1}-lift of `x`. With `Y = B·X / 2`:
//!
//! * index 1 iff `Y ∈ im(B)` (the Bockstein of `x` vanishes),
//! * index 3 iff `XᵀBX / 2` is odd,
//! * index 2 otherwise.
//!
//! The self-linking `λ(Y, Y)` of the Bockstein class is computed alongside as
//! an independent check: it must equal `XᵀBX / 4 mod 1` and be nonzero
//! exactly in the index 3 case.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{cover_classes, torsion_linking_with, CoverClass, QmodZ};
use crate::linalg::{dot, smith_normal_form, IntMatrix, IntVector, SmithDecomposition};

/// The Z/2-index, always 1, 2 or 3 for closed 3-manifolds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Index {
    One = 1,
    Two = 2,
    Three = 3,
}

impl Index {
    pub fn value(self) -> u8 {
        self as u8
    }

    /// Dimensions n for which (M, τ, Rⁿ) has the Borsuk-Ulam property.
    pub fn borsuk_ulam_dimensions(self) -> Vec<u8> {
        (1..=self.value()).collect()
    }
}

impl From<Index> for u8 {
    fn from(i: Index) -> u8 {
        i.value()
    }
}

impl TryFrom<u8> for Index {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, String> {
        match v {
            1 => Ok(Index::One),
            2 => Ok(Index::Two),
            3 => Ok(Index::Three),
            _ => Err(format!("index must be 1, 2 or 3, got {v}")),
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Evaluate the linking form cross-check on every class.
    pub crosscheck: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { crosscheck: true }
    }
}

/// Verdict for one cover class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReport {
    pub class: CoverClass,
    #[serde(with = "crate::serde_int::vec")]
    pub lift: IntVector,
    #[serde(with = "crate::serde_int::vec")]
    pub bockstein_rep: IntVector,
    pub beta_vanishes: bool,
    pub triple_cup: u8,
    /// `None` when the cross-check was switched off.
    pub self_linking: Option<QmodZ>,
    pub index: Index,
    pub bu_holds_for: Vec<u8>,
}

/// Canonical {0,1} lift of a class to `Zᵐ`.
pub fn lift_class(x: &CoverClass) -> IntVector {
    x.bits()
        .to_bits()
        .into_iter()
        .map(BigInt::from)
        .collect()
}

/// `Y = B·X / 2`; fails when `B·X` is odd somewhere.
pub fn bockstein_representative(b: &IntMatrix, lift: &[BigInt]) -> Result<IntVector> {
    b.mul_vec(lift)?
        .into_iter()
        .map(|v| {
            let (q, r) = v.div_rem(&BigInt::from(2));
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::Parity)
            }
        })
        .collect()
}

pub fn beta_vanishes(b: &IntMatrix, lift: &[BigInt]) -> Result<bool> {
    let y = bockstein_representative(b, lift)?;
    smith_normal_form(b).contains(&y)
}

/// `(XᵀBX / 2) mod 2`.
pub fn triple_cup(b: &IntMatrix, lift: &[BigInt]) -> Result<u8> {
    b.ensure_square()?;
    let y = bockstein_representative(b, lift)?;
    Ok(half_quadratic_mod2(lift, &y))
}

/// `XᵀBX / 2 = Xᵀ·Y`, reduced into {0, 1}.
fn half_quadratic_mod2(lift: &[BigInt], y: &[BigInt]) -> u8 {
    let r = dot(lift, y).mod_floor(&BigInt::from(2));
    r.to_u8().expect("residue mod 2")
}

/// Verdict for an arbitrary integral lift `X` of a kernel class, without the
/// linking cross-check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftVerdict {
    pub beta_vanishes: bool,
    pub triple_cup: u8,
    pub index: Index,
}

pub fn evaluate_lift(b: &IntMatrix, lift: &[BigInt]) -> Result<LiftVerdict> {
    b.ensure_square()?;
    let y = bockstein_representative(b, lift)?;
    let vanishes = smith_normal_form(b).contains(&y)?;
    let cup = half_quadratic_mod2(lift, &y);
    Ok(LiftVerdict {
        beta_vanishes: vanishes,
        triple_cup: cup,
        index: verdict(cup, vanishes)?,
    })
}

fn verdict(cup: u8, vanishes: bool) -> Result<Index> {
    match (cup, vanishes) {
        (1, true) => Err(Error::Invariant(
            "triple cup is nonzero but the Bockstein vanishes".into(),
        )),
        (1, false) => Ok(Index::Three),
        (_, true) => Ok(Index::One),
        _ => Ok(Index::Two),
    }
}

/// Linking matrix together with its Smith decomposition, shared by every
/// class of one presentation.
#[derive(Clone, Debug)]
pub struct Classifier {
    b: IntMatrix,
    snf: SmithDecomposition,
    opts: ClassifyOptions,
}

impl Classifier {
    pub fn new(b: &IntMatrix, opts: ClassifyOptions) -> Result<Self> {
        b.ensure_symmetric()?;
        Ok(Self {
            b: b.clone(),
            snf: smith_normal_form(b),
            opts,
        })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    pub fn classify(&self, x: &CoverClass) -> Result<IndexReport> {
        if x.len() != self.b.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.b.cols(),
                found: x.len(),
            });
        }
        let lift = lift_class(x);
        let y = bockstein_representative(&self.b, &lift).map_err(|_| Error::NotInKernel)?;
        let vanishes = self.snf.contains(&y)?;
        let cup = half_quadratic_mod2(&lift, &y);

        let index = verdict(cup, vanishes).map_err(|e| match e {
            Error::Invariant(msg) => Error::Invariant(format!("class {x}: {msg}")),
            other => other,
        })?;

        let self_linking = if self.opts.crosscheck {
            Some(self.check_linking(x, &lift, &y, cup)?)
        } else {
            None
        };

        Ok(IndexReport {
            class: x.clone(),
            lift,
            bockstein_rep: y,
            beta_vanishes: vanishes,
            triple_cup: cup,
            self_linking,
            index,
            bu_holds_for: index.borsuk_ulam_dimensions(),
        })
    }

    fn check_linking(&self, x: &CoverClass, lift: &[BigInt], y: &[BigInt], cup: u8) -> Result<QmodZ> {
        let lambda = torsion_linking_with(&self.b, &self.snf, y, y)?;
        let quarter = QmodZ::new(BigRational::new(self.b.bilinear(lift, lift)?, BigInt::from(4)));
        if lambda != quarter {
            return Err(Error::Invariant(format!(
                "class {x}: self-linking {lambda} differs from XᵀBX/4 = {quarter}"
            )));
        }
        let expected = if cup == 1 { QmodZ::half() } else { QmodZ::zero() };
        if lambda != expected {
            return Err(Error::Invariant(format!(
                "class {x}: self-linking {lambda} disagrees with triple cup {cup}"
            )));
        }
        Ok(lambda)
    }
}

pub fn classify_class(b: &IntMatrix, x: &CoverClass) -> Result<IndexReport> {
    classify_class_with(b, x, ClassifyOptions::default())
}

pub fn classify_class_with(b: &IntMatrix, x: &CoverClass, opts: ClassifyOptions) -> Result<IndexReport> {
    Classifier::new(b, opts)?.classify(x)
}

/// Reports for every cover class of `b`, in the order of [`cover_classes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kernel_dim: usize,
    pub reports: Vec<IndexReport>,
    /// Only the kernel basis was classified.
    pub truncated: bool,
    pub notes: Vec<String>,
}

pub const SIMPLY_CONNECTED_NOTE: &str =
    "simply connected: no free involutions with connected quotient data in this framework";
pub const NO_COVER_NOTE: &str = "no connected double cover: H^1(N; Z/2) = 0";

pub fn classify_all(b: &IntMatrix, cap: usize) -> Result<Classification> {
    classify_all_with(b, cap, ClassifyOptions::default())
}

pub fn classify_all_with(b: &IntMatrix, cap: usize, opts: ClassifyOptions) -> Result<Classification> {
    let set = cover_classes(b, cap)?;
    let reports = if set.classes.is_empty() {
        Vec::new()
    } else {
        let classifier = Classifier::new(b, opts)?;
        set.classes
            .par_iter()
            .map(|x| classifier.classify(x))
            .collect::<Result<Vec<_>>>()?
    };
    let mut notes = Vec::new();
    if b.rows() == 0 {
        notes.push(SIMPLY_CONNECTED_NOTE.to_string());
    } else if set.kernel_dim == 0 {
        notes.push(NO_COVER_NOTE.to_string());
    }
    if set.truncated {
        notes.push(format!(
            "H^1(N; Z/2) has rank {}; only the {} basis classes were classified",
            set.kernel_dim,
            set.classes.len()
        ));
    }
    Ok(Classification {
        kernel_dim: set.kernel_dim,
        reports,
        truncated: set.truncated,
        notes,
    })
}

/// Closed form for diagonal linking matrices: index 3 iff the sum of the
/// even nonzero entries selected by `x` is not divisible by 4, else index 2
/// iff `x` selects some even nonzero entry, else 1.
pub fn diagonal_index<T: Into<BigInt> + Clone>(diagonal: &[T], x: &CoverClass) -> Result<Index> {
    if diagonal.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: diagonal.len(),
            found: x.len(),
        });
    }
    let mut sum = BigInt::zero();
    let mut selected = false;
    for (i, a) in diagonal.iter().enumerate() {
        if !x.bits().get(i) {
            continue;
        }
        let a: BigInt = a.clone().into();
        if a.is_odd() {
            return Err(Error::NotInKernel);
        }
        if !a.is_zero() {
            sum += a;
            selected = true;
        }
    }
    Ok(if !sum.is_multiple_of(&BigInt::from(4)) {
        Index::Three
    } else if selected {
        Index::Two
    } else {
        Index::One
    })
}
