use serde::{Deserialize, Serialize};

use super::metric::{euclid_inner, inner, norm};
use super::{Matrix, Metric};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DropReason {
    Null,
    Dependent,
}

/// Columns kept by [`select_columns`] and the reason each other column was dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnMask {
    pub kept: Vec<usize>,
    pub dropped: Vec<(usize, DropReason)>,
}

impl ColumnMask {
    pub fn rank(&self) -> usize {
        self.kept.len()
    }

    pub fn apply<T: Scalar>(&self, p: &Matrix<T>) -> Matrix<T> {
        p.select_columns(&self.kept)
    }
}

/// Greedy left-to-right selection of non-null, linearly independent columns.
///
/// A column `v` is null when `|<v,v>_η| <= null_tol * max(|v|², 1)`. A
/// non-null column is dependent when its residual against the span of the
/// columns kept so far is at most `rank_tol` times the larger of `|v|` and the
/// largest pivot seen.
pub fn select_columns<T: Scalar>(
    p: &Matrix<T>,
    eta: &Metric,
    null_tol: f64,
    rank_tol: f64,
) -> Result<ColumnMask> {
    if p.rows() != eta.dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, metric has dimension {}",
            p.rows(),
            eta.dim()
        )));
    }
    if p.cols() == 0 {
        return Err(Error::DegenerateInput("matrix has no columns".into()));
    }
    let mut basis: Vec<Vec<T>> = Vec::new();
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    let mut max_pivot = 0.0_f64;
    let mut any_non_null = false;
    for j in 0..p.cols() {
        let v = p.col(j);
        let nv = norm(&v);
        if inner(&v, &v, eta).modulus() <= null_tol * (nv * nv).max(1.0) {
            dropped.push((j, DropReason::Null));
            continue;
        }
        any_non_null = true;
        if basis.len() == p.rows() {
            dropped.push((j, DropReason::Dependent));
            continue;
        }
        let mut r = v;
        for _ in 0..2 {
            for b in &basis {
                let c = euclid_inner(b, &r);
                for (x, &y) in r.iter_mut().zip(b) {
                    *x -= c * y;
                }
            }
        }
        let nr = norm(&r);
        if nr <= rank_tol * nv.max(max_pivot) {
            dropped.push((j, DropReason::Dependent));
            continue;
        }
        max_pivot = max_pivot.max(nr);
        basis.push(r.iter().map(|&x| x.scale(1.0 / nr)).collect());
        kept.push(j);
    }
    if !any_non_null {
        return Err(Error::DegenerateInput("every column is null".into()));
    }
    Ok(ColumnMask { kept, dropped })
}
