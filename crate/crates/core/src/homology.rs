//! Homological data of the surgered manifold N read off its linking matrix B.
//!
//! `H₁(N) = coker B`, `H¹(N; Z/2) = ker (B mod 2)`, and the torsion linking
//! form is evaluated with the presentation-matrix formula
//! `λ(a, c) = (zᵀ·c)/n mod 1` where `n·a = B·z`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{
    cokernel_structure, dot, gf2_kernel_basis, format_rational, smith_normal_form, AbelianGroup,
    GF2Vector, IntMatrix, SmithDecomposition,
};

/// Default bound on the number of enumerated cover classes.
pub const DEFAULT_CAP: usize = 1024;

/// `H₁(N; Z)` for the manifold presented by the symmetric matrix `b`.
pub fn first_homology(b: &IntMatrix) -> Result<AbelianGroup> {
    b.ensure_symmetric()?;
    cokernel_structure(b)
}

/// A nonzero element of `ker(B mod 2) ≅ H¹(N; Z/2)`, i.e. the classifying
/// class of a connected double cover of N.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoverClass {
    bits: GF2Vector,
}

impl CoverClass {
    pub fn new(b: &IntMatrix, bits: GF2Vector) -> Result<Self> {
        if bits.len() != b.cols() {
            return Err(Error::DimensionMismatch {
                expected: b.cols(),
                found: bits.len(),
            });
        }
        if bits.is_zero() {
            return Err(Error::ZeroClass);
        }
        if !b.reduce_mod2().mul_vec(&bits).is_zero() {
            return Err(Error::NotInKernel);
        }
        Ok(Self { bits })
    }

    pub fn from_bits<T: Copy + Into<i64>>(b: &IntMatrix, bits: &[T]) -> Result<Self> {
        Self::new(b, GF2Vector::from_bits(bits))
    }

    pub fn bits(&self) -> &GF2Vector {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

impl fmt::Debug for CoverClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoverClass{}", self.bits)
    }
}

impl fmt::Display for CoverClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits.fmt(f)
    }
}

impl Serialize for CoverClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.bits.to_bits().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoverClass {
    /// Deserializes the bit list without a matrix to check it against; the
    /// kernel condition is only enforced by [`CoverClass::new`].
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let bits = Vec::<u8>::deserialize(d)?;
        Ok(Self {
            bits: GF2Vector::from_bits(&bits),
        })
    }
}

/// Output of [`cover_classes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverClassSet {
    /// Dimension k of `H¹(N; Z/2)`.
    pub kernel_dim: usize,
    /// All `2^k − 1` classes, or only the basis when `truncated`.
    pub classes: Vec<CoverClass>,
    pub truncated: bool,
}

/// Enumerates the connected double covers of N.
///
/// Classes are ordered by the integer `Σ xᵢ·2ⁱ`, so `(1,0) < (0,1) < (1,1)`.
/// When `2^k − 1 > cap` only the kernel basis is returned and the set is
/// marked truncated.
pub fn cover_classes(b: &IntMatrix, cap: usize) -> Result<CoverClassSet> {
    b.ensure_symmetric()?;
    let basis = gf2_kernel_basis(&b.reduce_mod2());
    let k = basis.len();
    let total_fits = k < 64 && (1u64 << k) - 1 <= cap as u64;
    let mut classes: Vec<CoverClass> = if total_fits {
        (1u64..1 << k)
            .map(|mask| {
                let mut v = GF2Vector::zeros(b.cols());
                for (i, e) in basis.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        v.xor_assign(e);
                    }
                }
                CoverClass { bits: v }
            })
            .collect()
    } else {
        basis.into_iter().map(|bits| CoverClass { bits }).collect()
    };
    classes.sort_by(|a, b| cmp_little_endian(&a.bits, &b.bits));
    Ok(CoverClassSet {
        kernel_dim: k,
        classes,
        truncated: !total_fits,
    })
}

fn cmp_little_endian(a: &GF2Vector, b: &GF2Vector) -> std::cmp::Ordering {
    a.words().iter().rev().cmp(b.words().iter().rev())
}

/// Order of an element of `coker b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

pub fn order_in_cokernel(b: &IntMatrix, y: &[BigInt]) -> Result<Order> {
    b.ensure_square()?;
    order_with(&smith_normal_form(b), y)
}

fn order_with(snf: &SmithDecomposition, y: &[BigInt]) -> Result<Order> {
    Ok(match snf.order(y)? {
        Some(n) => Order::Finite(n),
        None => Order::Infinite,
    })
}

/// An element of Q/Z, stored as the representative in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QmodZ(BigRational);

impl QmodZ {
    pub fn new(value: BigRational) -> Self {
        let floor = value.floor();
        Self(value - floor)
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn half() -> Self {
        Self(BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl std::ops::Add for &QmodZ {
    type Output = QmodZ;

    fn add(self, rhs: &QmodZ) -> QmodZ {
        QmodZ::new(&self.0 + &rhs.0)
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl std::str::FromStr for QmodZ {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (n, d) = s.split_once('/').ok_or_else(|| format!("expected num/den, got {s:?}"))?;
        let n: BigInt = n.parse().map_err(|e| format!("{e}"))?;
        let d: BigInt = d.parse().map_err(|e| format!("{e}"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(QmodZ::new(BigRational::new(n, d)))
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QmodZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Linking pairing `λ(a, c)` of two torsion classes of `coker b`.
pub fn torsion_linking(b: &IntMatrix, a: &[BigInt], c: &[BigInt]) -> Result<QmodZ> {
    b.ensure_symmetric()?;
    torsion_linking_with(b, &smith_normal_form(b), a, c)
}

/// As [`torsion_linking`], reusing a precomputed decomposition of `b`.
pub(crate) fn torsion_linking_with(
    b: &IntMatrix,
    snf: &SmithDecomposition,
    a: &[BigInt],
    c: &[BigInt],
) -> Result<QmodZ> {
    let n = order_with(snf, a)?.finite().cloned().ok_or(Error::NotTorsion)?;
    if order_with(snf, c)?.finite().is_none() {
        return Err(Error::NotTorsion);
    }
    let scaled: Vec<BigInt> = a.iter().map(|x| x * &n).collect();
    let z = snf.solve(&scaled)?.ok_or_else(|| {
        Error::Invariant("n·a has no integral preimage although a has order n".into())
    })?;
    debug_assert_eq!(b.mul_vec(&z)?, scaled);
    let num = dot(&z, c);
    Ok(QmodZ::new(BigRational::new(num.mod_floor(&n), n)))
}
