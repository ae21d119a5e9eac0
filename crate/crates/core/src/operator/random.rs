use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::DenseMatrix;

/// Rotation of the plane by `theta` radians.
pub fn rotation(theta: f64) -> DenseMatrix {
    let (s, c) = (libm::sin(theta), libm::cos(theta));
    DenseMatrix::new(2, alloc::vec![c, -s, s, c]).unwrap()
}

/// Convex combination of `dim + 1` random permutation matrices.
pub fn random_doubly_stochastic(dim: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = simplex_point(&mut rng, dim + 1);
    let mut m = DenseMatrix::zeros(dim);
    let mut perm: Vec<usize> = (0..dim).collect();
    for w in weights {
        perm.shuffle(&mut rng);
        for (i, &j) in perm.iter().enumerate() {
            m.set(i, j, m.get(i, j) + w);
        }
    }
    m
}

/// Nonnegative entries, each row summing to one.
pub fn random_row_stochastic(dim: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = DenseMatrix::zeros(dim);
    for i in 0..dim {
        for (j, w) in simplex_point(&mut rng, dim).into_iter().enumerate() {
            m.set(i, j, w);
        }
    }
    m
}

/// Nonnegative entries, each column summing to one.
pub fn random_column_stochastic(dim: usize, seed: u64) -> DenseMatrix {
    random_row_stochastic(dim, seed).transpose()
}

/// Symmetric with entries scaled so that `‖T‖_∞ = radius`; its spectrum
/// lies in `[-radius, radius]`.
pub fn random_symmetric(dim: usize, seed: u64, radius: f64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = DenseMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..=i {
            let v = rng.gen_range(-1.0..1.0);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    let scale = radius / m.norm(super::Norm::OpInf);
    m.scale(scale)
}

fn simplex_point(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..len).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / total).collect()
}
