use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{degeneracy_excess, eig_sym, perturb_degenerate, Matrix};

/// Eigendecomposition frame of `φ(P) = P diag(1 + z) Pᵀ` for `O(d)`.
///
/// Elements are `O diag(s)` over all sign vectors `s` on the `d′` eigenvectors
/// spanning the range of `P`; the complement columns are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct EigFrame {
    /// `d x d′` eigenvectors for the nonzero eigenvalues, descending.
    pub vectors: Matrix<f64>,
    pub values: Vec<f64>,
    /// Column weights from the perturbation step (all zero when skipped).
    pub z: Vec<f64>,
}

impl EigFrame {
    pub fn rank(&self) -> usize {
        self.vectors.cols()
    }

    pub fn size(&self) -> usize {
        1 << self.rank()
    }

    /// The `d x d` frame elements, one per sign vector, in a fixed order.
    pub fn elements(&self) -> Vec<Matrix<f64>> {
        let (d, r) = self.vectors.shape();
        (0..1usize << r)
            .map(|bits| {
                let mut o = Matrix::zeros(d, d);
                for c in 0..r {
                    let s = if bits >> c & 1 == 1 { -1.0 } else { 1.0 };
                    for i in 0..d {
                        o[(i, c)] = s * self.vectors[(i, c)];
                    }
                }
                o
            })
            .collect()
    }
}

pub fn frame_orthogonal_ppt(p: &Matrix<f64>, perturb: bool, tol: &Tolerances) -> Result<EigFrame> {
    let n = p.cols();
    if p.max_abs() == 0.0 {
        return Err(Error::DegenerateInput("zero point cloud".into()));
    }
    let z = if perturb {
        perturb_degenerate(p, tol)?.z
    } else {
        vec![0.0; n]
    };
    let w: Vec<f64> = z.iter().map(|x| 1.0 + x).collect();
    let m = &p.scale_cols(&w) * &p.transpose();
    let eig = eig_sym(&m, tol.sym_tol)?;
    let excess = degeneracy_excess(&eig.values, tol.eig_tol, tol.zero_eig_tol);
    if excess > 0 {
        return Err(Error::RepeatedEigenvalues(format!(
            "multiplicity excess {excess} in {:?}",
            eig.values
        )));
    }
    let top = eig.values[0].abs();
    let rank = eig.values.iter().take_while(|&&x| x > tol.zero_eig_tol * top).count();
    let cols: Vec<usize> = (0..rank).collect();
    Ok(EigFrame {
        vectors: eig.vectors.select_columns(&cols),
        values: eig.values[..rank].to_vec(),
        z,
    })
}
