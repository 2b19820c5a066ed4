//! Borsuk-Ulam property for free involutions on closed oriented 3-manifolds.
//!
//! The quotient manifold N is given by a surgery presentation, i.e. by the
//! symmetric linking matrix B of a framed link. Connected double covers of N
//! correspond to nonzero vectors of `ker(B mod 2)`, and for each of them the
//! Z/2-index of the deck involution is read off B:
//!
//! ```
//! use borsuk_ulam::{classify_all, IntMatrix, Index};
//!
//! // L(4,1) = surgery on a (-4)-framed unknot, double covered by RP³.
//! let b = IntMatrix::from_rows(vec![vec![-4]]).unwrap();
//! let result = classify_all(&b, 1024).unwrap();
//! assert_eq!(result.reports.len(), 1);
//! assert_eq!(result.reports[0].index, Index::Two);
//! ```

pub mod borsuk;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod gen;
pub mod homology;
pub mod linalg;
pub mod report;
pub mod selftest;
mod serde_int;
pub mod surgery;

pub use borsuk::{
    classify_all, classify_all_with, classify_class, classify_class_with, diagonal_index,
    Classification, ClassifyOptions, Index, IndexReport,
};
pub use error::{Error, Result};
pub use homology::{cover_classes, first_homology, torsion_linking, CoverClass, QmodZ};
pub use linalg::{int_vec, AbelianGroup, GF2Vector, IntMatrix, IntVector};
pub use surgery::{parse_presentation, ParseError, SurgeryPresentation};
