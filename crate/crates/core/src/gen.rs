//! Seeded random instances for property checks and the self-test.

use num_bigint::BigInt;
use rand::Rng;

use crate::linalg::IntMatrix;

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let entries = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::new(rows, cols, entries).expect("entry count matches")
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IntMatrix {
    let mut b = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = BigInt::from(rng.gen_range(-bound..=bound));
            b[(i, j)] = v.clone();
            b[(j, i)] = v;
        }
    }
    b
}

/// Symmetric matrix biased towards even entries so that `B mod 2` has a
/// nontrivial kernel more often.
pub fn random_even_biased_symmetric<R: Rng>(rng: &mut R, n: usize, bound: i64) -> IntMatrix {
    let mut b = random_symmetric(rng, n, bound);
    for i in 0..n {
        for j in i..n {
            if rng.gen_bool(0.6) {
                let v = BigInt::from(2 * rng.gen_range(-bound / 2..=bound / 2));
                b[(i, j)] = v.clone();
                b[(j, i)] = v;
            }
        }
    }
    b
}

pub fn random_diagonal<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()
}

/// Product of random elementary moves: row additions with small
/// multipliers, swaps and sign changes. Always has determinant ±1.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, moves: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    if n == 0 {
        return p;
    }
    for _ in 0..moves {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..4) {
            0 | 1 if i != j => {
                let k = BigInt::from(rng.gen_range(-2i64..=2));
                p.add_row_multiple(i, j, &k);
            }
            2 => p.swap_rows(i, j),
            _ => p.negate_row(i),
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 0..6 {
            assert!(random_symmetric(&mut rng, n, 5).is_symmetric());
            assert!(random_even_biased_symmetric(&mut rng, n, 5).is_symmetric());
            assert!(random_unimodular(&mut rng, n, 12).is_unimodular());
        }
        let m = random_matrix(&mut rng, 3, 7, 100);
        assert_eq!((m.rows(), m.cols()), (3, 7));
    }
}
