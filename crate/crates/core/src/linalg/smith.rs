//! Smith normal form and the cokernel queries built on it.
//!
//! Every query about `coker B` (structure, membership of a vector in the
//! integral image, orders of elements) goes through a [`SmithDecomposition`]
//! `U·B·V = S`. Solving `B·z = y` becomes `S·w = U·y` with `z = V·w`, which
//! is a list of independent scalar divisibility tests.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{IntMatrix, IntVector};
use crate::error::{Error, Result};

/// Unimodular `u`, `v` and diagonal `s` with `u·b·v = s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    rank: usize,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries of `s`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Diagonal entries `d₁ | d₂ | …`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.s.diagonal_entries()
    }

    /// Returns `z` with `b·z = y`, or `None` when `y ∉ im(b)`.
    pub fn solve(&self, y: &[BigInt]) -> Result<Option<IntVector>> {
        let w = self.transformed_rhs(y)?;
        let mut scaled = vec![BigInt::zero(); self.v.rows()];
        for (i, wi) in w.iter().enumerate() {
            if i < self.rank {
                let (q, r) = wi.div_rem(&self.s[(i, i)]);
                if !r.is_zero() {
                    return Ok(None);
                }
                scaled[i] = q;
            } else if !wi.is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(self.v.mul_vec(&scaled)?))
    }

    pub fn contains(&self, y: &[BigInt]) -> Result<bool> {
        let w = self.transformed_rhs(y)?;
        Ok(w.iter().enumerate().all(|(i, wi)| {
            if i < self.rank {
                wi.is_multiple_of(&self.s[(i, i)])
            } else {
                wi.is_zero()
            }
        }))
    }

    /// Least `n ≥ 1` with `n·y ∈ im(b)`; `None` when `y` has infinite order.
    pub fn order(&self, y: &[BigInt]) -> Result<Option<BigInt>> {
        let w = self.transformed_rhs(y)?;
        let mut order = BigInt::one();
        for (i, wi) in w.iter().enumerate() {
            if i < self.rank {
                let d = &self.s[(i, i)];
                let needed = d / d.gcd(wi);
                order = order.lcm(&needed);
            } else if !wi.is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(order))
    }

    fn transformed_rhs(&self, y: &[BigInt]) -> Result<IntVector> {
        if y.len() != self.u.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.u.cols(),
                found: y.len(),
            });
        }
        self.u.mul_vec(y)
    }
}

/// Computes the Smith normal form of any integer matrix.
///
/// Pivots on the nonzero entry of least absolute value in the active block.
pub fn smith_normal_form(b: &IntMatrix) -> SmithDecomposition {
    let m = b.rows();
    let n = b.cols();
    let mut a = b.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut rank = 0;

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_pivot(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = min_pivot_cross(&a, t);
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the block.
            if a[(t, t)].abs().is_one() {
                break;
            }
            match non_multiple_row(&a, t) {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        rank += 1;
    }

    SmithDecomposition { u, s: a, v, rank }
}

fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), &BigInt)> = None;
    for i in t..a.rows() {
        for (j, x) in a.row(i).iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(_, b)| x.magnitude() < b.magnitude()) {
                best = Some(((i, j), x));
                if x.abs().is_one() {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Least nonzero entry among row `t` and column `t` of the active block.
/// After a reduction pass the remainders there are strictly smaller than the
/// old pivot, so this is enough to make progress.
fn min_pivot_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_mag = a[(t, t)].magnitude().clone();
    for i in t + 1..a.rows() {
        let x = &a[(i, t)];
        if !x.is_zero() && *x.magnitude() < best_mag {
            best = (i, t);
            best_mag = x.magnitude().clone();
        }
    }
    for j in t + 1..a.cols() {
        let x = &a[(t, j)];
        if !x.is_zero() && *x.magnitude() < best_mag {
            best = (t, j);
            best_mag = x.magnitude().clone();
        }
    }
    best
}

fn non_multiple_row(a: &IntMatrix, t: usize) -> Option<usize> {
    let p = &a[(t, t)];
    (t + 1..a.rows()).find(|&i| {
        a.row(i)
            .iter()
            .skip(t + 1)
            .any(|x| !x.is_multiple_of(p))
    })
}

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    #[serde(with = "crate::serde_int::vec")]
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Number of even invariant factors plus the free rank, i.e. the rank of
    /// `Hom(G, Z/2)`.
    pub fn two_rank(&self) -> usize {
        self.free_rank
            + self
                .invariant_factors
                .iter()
                .filter(|d| d.is_even())
                .count()
    }

    /// Direct sum, normalized back into invariant-factor form.
    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let diag: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned()
            .collect();
        let mut g = cokernel_of_diagonal(&diag);
        g.free_rank += self.free_rank + other.free_rank;
        g
    }
}

fn cokernel_of_diagonal(diag: &[BigInt]) -> AbelianGroup {
    let snf = smith_normal_form(&IntMatrix::diagonal(diag));
    group_from_diagonal(&snf.diagonal())
}

fn group_from_diagonal(diag: &[BigInt]) -> AbelianGroup {
    AbelianGroup {
        invariant_factors: diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect(),
        free_rank: diag.iter().filter(|d| d.is_zero()).count(),
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Structure of `coker b` for a square `b`.
pub fn cokernel_structure(b: &IntMatrix) -> Result<AbelianGroup> {
    b.ensure_square()?;
    Ok(group_from_diagonal(&smith_normal_form(b).diagonal()))
}

pub fn is_in_integral_image(b: &IntMatrix, y: &[BigInt]) -> Result<bool> {
    check_rhs(b, y)?;
    smith_normal_form(b).contains(y)
}

pub fn solve_integral(b: &IntMatrix, y: &[BigInt]) -> Result<Option<IntVector>> {
    check_rhs(b, y)?;
    smith_normal_form(b).solve(y)
}

fn check_rhs(b: &IntMatrix, y: &[BigInt]) -> Result<()> {
    if y.len() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: b.rows(),
            found: y.len(),
        });
    }
    Ok(())
}
