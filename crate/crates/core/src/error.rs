use thiserror::Error;

/// Errors raised by the linear algebra, homology and classification layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric: entry ({row},{col}) differs from its transpose")]
    Asymmetric { row: usize, col: usize },

    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: String },

    #[error("invalid lens space parameters p={p}, q={q}: need p >= 2, 0 < q < p, gcd(p, q) = 1")]
    InvalidLens { p: String, q: String },

    #[error("class is not in the kernel of the mod 2 linking matrix")]
    NotInKernel,

    #[error("the zero class does not classify a connected double cover")]
    ZeroClass,

    #[error("class has infinite order in the cokernel")]
    NotTorsion,

    #[error("B*X is not divisible by 2; X does not lift a kernel class")]
    Parity,

    #[error("{classes} cover classes exceed the cap of {cap}")]
    CapExceeded { classes: String, cap: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Parse(#[from] crate::surgery::ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
