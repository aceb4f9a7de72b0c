//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use minframe::linalg::Metric;
use minframe::Matrix;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Every permutation of `0..n` (Heap-style swaps, order irrelevant).
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    let mut out = Vec::new();
    rec(0, &mut (0..n).collect(), &mut out);
    out
}

/// `A[p(i), p(j)] == A[i, j]` for all `i, j`, compared exactly.
pub fn preserves(a: &Matrix<f64>, p: &[usize]) -> bool {
    let n = a.rows();
    (0..n).all(|i| (0..n).all(|j| a[(p[i], p[j])] == a[(i, j)]))
}

/// Same check with an absolute tolerance.
pub fn preserves_approx(a: &Matrix<f64>, p: &[usize], tol: f64) -> bool {
    let n = a.rows();
    (0..n).all(|i| (0..n).all(|j| (a[(p[i], p[j])] - a[(i, j)]).abs() <= tol))
}

pub fn brute_aut_order(a: &Matrix<f64>) -> usize {
    all_perms(a.rows()).iter().filter(|p| preserves(a, p)).count()
}

/// Minimum upper-triangle bit string over all relabelings: a complete
/// isomorphism invariant for small unweighted graphs.
pub fn brute_certificate(adj: &[Vec<bool>], perms: &[Vec<usize>]) -> u64 {
    let n = adj.len();
    perms
        .iter()
        .map(|p| {
            let mut bits = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    bits = (bits << 1) | u64::from(adj[p[i]][p[j]]);
                }
            }
            bits
        })
        .min()
        .unwrap_or(0)
}

pub fn is_connected(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if adj[u][v] && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Graph on `n` vertices whose upper-triangle edges are the bits of `mask`.
pub fn graph_from_mask(n: usize, mask: u64) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> k & 1 == 1 {
                adj[i][j] = true;
                adj[j][i] = true;
            }
            k += 1;
        }
    }
    adj
}

pub fn edges(adj: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = adj.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| adj[i][j])
        .collect()
}

fn eta_dot(u: &[f64], v: &[f64], eta: &Metric) -> f64 {
    u.iter().zip(v).enumerate().map(|(i, (a, b))| eta.sign(i) * a * b).sum()
}

/// Fills the zero columns of `q` with random vectors that make it
/// `η`-orthonormal, each matching the sign of `η` at its slot.
pub fn random_completion<R: Rng>(q: &Matrix<f64>, eta: &Metric, rng: &mut R) -> Matrix<f64> {
    let d = q.rows();
    let mut out = q.clone();
    let mut basis: Vec<usize> = (0..d).filter(|&j| q.col(j).iter().any(|&x| x != 0.0)).collect();
    for slot in 0..d {
        if basis.contains(&slot) {
            continue;
        }
        loop {
            let mut v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
            for &b in &basis {
                let qb = out.col(b);
                let c = eta_dot(&qb, &v, eta) * eta_dot(&qb, &qb, eta).signum();
                for (x, y) in v.iter_mut().zip(&qb) {
                    *x -= c * y;
                }
            }
            let nn = eta_dot(&v, &v, eta);
            if nn.signum() == eta.sign(slot) && nn.abs() > 1e-3 {
                let s = 1.0 / nn.abs().sqrt();
                out.set_col(slot, &v.iter().map(|x| x * s).collect::<Vec<_>>());
                basis.push(slot);
                break;
            }
        }
    }
    out
}
