//! Exact integer, rational and GF(2) linear algebra.

mod gf2;
mod matrix;
mod rational;
mod smith;

pub use gf2::{gf2_kernel_basis, GF2Matrix, GF2Vector};
pub use matrix::{congruence_transform, int_vec, IntMatrix, IntVector};
pub(crate) use matrix::dot;
pub use rational::{format_rational, solve_rational, RationalVector};
pub use smith::{
    cokernel_structure, is_in_integral_image, smith_normal_form, solve_integral, AbelianGroup,
    SmithDecomposition,
};
