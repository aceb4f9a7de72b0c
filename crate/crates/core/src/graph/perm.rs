//! Permutations stored as image vectors: `p[i]` is the image of `i`.
//!
//! The permutation matrix of `p` has `S[p(i), i] = 1`.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Permutation matrix with `S[p(i), i] = 1`.
pub fn perm_matrix<T: Scalar>(p: &[usize]) -> Matrix<T> {
    let mut s = Matrix::zeros(p.len(), p.len());
    for (i, &x) in p.iter().enumerate() {
        s[(x, i)] = T::one();
    }
    s
}

/// `B[i][j] = A[p(i)][p(j)]`, i.e. `Sᵀ A S`.
pub fn act_symmetric<T: Scalar>(p: &[usize], a: &Matrix<T>) -> Matrix<T> {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| a[(p[i], p[j])])
}

/// `B[i, :] = Y[p(i), :]`, i.e. `Sᵀ Y`.
pub fn act_rows<T: Scalar>(p: &[usize], y: &Matrix<T>) -> Matrix<T> {
    Matrix::from_fn(y.rows(), y.cols(), |i, j| y[(p[i], j)])
}

/// `B[:, i] = P[:, p(i)]`, i.e. `P S`.
pub fn act_cols<T: Scalar>(p: &[usize], x: &Matrix<T>) -> Matrix<T> {
    Matrix::from_fn(x.rows(), x.cols(), |i, j| x[(i, p[j])])
}

/// Closure of `gens` under composition, failing once more than `cap`
/// elements have been found. The identity is always included.
pub fn enumerate_group(gens: &[Perm], n: usize, cap: usize) -> Result<Vec<Perm>> {
    let id = identity(n);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                if out.len() >= cap {
                    return Err(Error::StabilizerTooLarge {
                        order: format!(">{cap}"),
                        cap,
                    });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Orbit id of each point under `⟨gens⟩`; ids are the smallest member of each orbit.
pub fn orbits(gens: &[Perm], n: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for (i, &j) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|i| find(&mut parent, i)).collect()
}
