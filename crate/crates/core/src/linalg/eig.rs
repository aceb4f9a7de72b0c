use super::Matrix;
use crate::error::{Error, Result};

/// Eigenpairs of a real symmetric matrix, eigenvalues in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct EigResult {
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns.
    pub vectors: Matrix<f64>,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigensolver.
///
/// Rejects input whose asymmetry exceeds `sym_tol` relative to its largest entry.
pub fn eig_sym(a: &Matrix<f64>, sym_tol: f64) -> Result<EigResult> {
    let (n, c) = a.shape();
    if n != c {
        return Err(Error::DimensionMismatch(format!(
            "eig_sym needs a square matrix, got {n}x{c}"
        )));
    }
    let scale = a.max_abs();
    let asym = a.max_diff(&a.transpose());
    if asym > sym_tol * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NotSymmetric(asym));
    }
    let mut m = Matrix::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]));
    let mut v = Matrix::<f64>::identity(n);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum();
        if off.sqrt() <= f64::EPSILON * scale * 1e-3 || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = cs * mkp - sn * mkq;
                    m[(k, q)] = sn * mkp + cs * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = cs * mpk - sn * mqk;
                    m[(q, k)] = sn * mpk + cs * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = cs * vkp - sn * vkq;
                    v[(k, q)] = sn * vkp + cs * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[(y, y)].total_cmp(&m[(x, x)]));
    Ok(EigResult {
        values: order.iter().map(|&i| m[(i, i)]).collect(),
        vectors: v.select_columns(&order),
    })
}

/// Groups the nonzero eigenvalues (descending) into clusters of numerically
/// equal values. Returns index ranges into `values`.
pub fn eigen_clusters(values: &[f64], eig_tol: f64, zero_tol: f64) -> Vec<std::ops::Range<usize>> {
    let top = values.iter().fold(0.0_f64, |a, &x| a.max(x.abs()));
    if top == 0.0 {
        return Vec::new();
    }
    let nonzero = values.iter().take_while(|&&x| x > zero_tol * top).count();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=nonzero {
        if i == nonzero || values[i - 1] - values[i] > eig_tol * top {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// `Σ (multiplicity - 1)` over nonzero eigenvalue clusters.
pub fn degeneracy_excess(values: &[f64], eig_tol: f64, zero_tol: f64) -> usize {
    eigen_clusters(values, eig_tol, zero_tol)
        .iter()
        .map(|r| r.len() - 1)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_spectrum() {
        let e = eig_sym(&Matrix::identity(3), 1e-9).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_is_sorted() {
        let e = eig_sym(&Matrix::diag(&[1.0, 3.0]), 1e-9).unwrap();
        assert_eq!(e.values, vec![3.0, 1.0]);
        assert_eq!(e.vectors, Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]));
    }

    #[test]
    fn two_by_two() {
        let a = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let e = eig_sym(&a, 1e-9).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn asymmetric_rejected() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(matches!(eig_sym(&a, 1e-9), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn clusters_skip_zero_eigenvalues() {
        let c = eigen_clusters(&[4.0, 4.0, 1.0, 0.0, 0.0], 1e-8, 1e-10);
        assert_eq!(c, vec![0..2, 2..3]);
        assert_eq!(degeneracy_excess(&[4.0, 4.0, 1.0, 0.0, 0.0], 1e-8, 1e-10), 1);
    }
}
