use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sample::{gaussian_matrix, haar};
use crate::error::{Error, Result};
use crate::frames::Group;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Symmetric `n x n` weight matrix with entries drawn uniformly from `{0, 1, 2}`.
pub fn random_weighted_graph<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix<f64> {
    let mut a = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let w = f64::from(rng.random_range(0..3u8));
            a[(i, j)] = w;
            a[(j, i)] = w;
        }
    }
    a
}

/// Random input for `group`: a Gaussian `d x n` cloud, or a weighted graph on
/// `n` nodes for the permutation group.
pub fn random_input<T: Scalar, R: Rng + ?Sized>(group: &Group, n: usize, rng: &mut R) -> Matrix<T> {
    match group.dim() {
        Some(d) => gaussian_matrix(d, n, rng),
        None => random_weighted_graph(n, rng).map(T::from_real),
    }
}

/// `d x n` cloud `U Σ Vᵀ` whose leading `multiplicity` singular values are all 1.
///
/// The remaining singular values are `1.5, 2.0, 2.5, ...`, so `P Pᵀ` has exactly
/// one repeated eigenvalue when `multiplicity > 1`.
pub fn make_degenerate_cloud(d: usize, n: usize, multiplicity: usize, seed: u64) -> Result<Matrix<f64>> {
    let m = d.min(n);
    if multiplicity == 0 || multiplicity > m {
        return Err(Error::InvalidSpec(format!(
            "multiplicity {multiplicity} must lie in 1..={m} for a {d}x{n} cloud"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u: Matrix<f64> = haar(d, &mut rng);
    let v: Matrix<f64> = haar(n, &mut rng);
    let sigma = Matrix::from_fn(d, n, |i, j| {
        if i != j {
            0.0
        } else if i < multiplicity {
            1.0
        } else {
            1.0 + 0.5 * (i + 1 - multiplicity) as f64
        }
    });
    Ok(&(&u * &sigma) * &v.transpose())
}
