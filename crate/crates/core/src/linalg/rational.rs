use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Vector of exact rationals, each kept in lowest terms with positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(Vec<BigRational>);

impl RationalVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entries rendered as canonical `num/den` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

/// `num/den` with den > 0; integers keep the `/1`.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Exact solve of `b·z = y` over Q. Free variables are set to zero; returns
/// `None` when `y` lies outside the rational column span.
pub fn solve_rational(b: &IntMatrix, y: &[BigInt]) -> Result<Option<RationalVector>> {
    if y.len() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: b.rows(),
            found: y.len(),
        });
    }
    let m = b.rows();
    let n = b.cols();
    let mut aug: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            b.row(i)
                .iter()
                .chain(std::iter::once(&y[i]))
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i == r || aug[i][c].is_zero() {
                continue;
            }
            let f = aug[i][c].clone();
            let pivot_row = aug[r].clone();
            for (x, p) in aug[i].iter_mut().zip(&pivot_row).skip(c) {
                *x -= &f * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if aug[r..].iter().any(|row| !row[n].is_zero()) {
        return Ok(None);
    }
    let mut z = vec![BigRational::zero(); n];
    for (row, &c) in pivots.iter().enumerate() {
        debug_assert!(aug[row][c].is_one());
        z[c] = aug[row][n].clone();
    }
    Ok(Some(RationalVector(z)))
}
