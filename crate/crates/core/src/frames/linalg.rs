use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{
    apply_det_constraint, generalized_qr, select_columns, ColumnMask, GeneralizedQr, Matrix, Metric,
};
use crate::scalar::Scalar;

/// Column mean `t`; the canonical form `P - t 1ᵀ` has zero mean.
#[derive(Debug, Clone, PartialEq)]
pub struct TranslationFrame<T> {
    pub t: Vec<T>,
}

impl<T: Scalar> TranslationFrame<T> {
    pub fn canonical(&self, p: &Matrix<T>) -> Matrix<T> {
        let neg: Vec<T> = self.t.iter().map(|&x| -x).collect();
        p.add_to_columns(&neg)
    }
}

pub fn frame_translation<T: Scalar>(p: &Matrix<T>) -> Result<TranslationFrame<T>> {
    if p.cols() == 0 {
        return Err(Error::DegenerateInput("point cloud has no points".into()));
    }
    Ok(TranslationFrame { t: p.column_mean() })
}

/// Minimal frame of `G_η(d)` in closed form.
///
/// The frame is `Q̂ · Stab(R̂)`. Averaging over it only needs `Q₀` (the
/// determinate columns of `Q̂`, others zero) and `P₀ = η Q̂ᴴ η P`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinAlgFrame<T> {
    pub eta: Metric,
    pub special: bool,
    pub mask: ColumnMask,
    pub qr: GeneralizedQr<T>,
    pub q0: Matrix<T>,
    pub p0: Matrix<T>,
}

impl<T: Scalar> LinAlgFrame<T> {
    pub fn rank(&self) -> usize {
        self.qr.rank
    }

    /// The canonical form `R̂`.
    pub fn canonical(&self) -> &Matrix<T> {
        &self.qr.r_hat
    }

    /// Number of elements when the frame is finite (no indeterminate columns).
    pub fn finite_size(&self) -> Option<usize> {
        self.qr.indeterminate().is_empty().then_some(1)
    }
}

pub fn frame_linalg<T: Scalar>(
    p: &Matrix<T>,
    eta: &Metric,
    special: bool,
    tol: &Tolerances,
) -> Result<LinAlgFrame<T>> {
    if p.rows() != eta.dim() {
        return Err(Error::DimensionMismatch(format!(
            "cloud has dimension {}, group has {}",
            p.rows(),
            eta.dim()
        )));
    }
    let mask = select_columns(p, eta, tol.null_tol, tol.rank_tol)?;
    let qr = generalized_qr(&mask.apply(p), eta, tol)?;
    let qr = if special {
        apply_det_constraint(qr, eta, tol)?
    } else {
        qr
    };
    let q0 = qr.q_hat.clone();
    let p0 = &eta.group_inverse(&q0) * p;
    Ok(LinAlgFrame {
        eta: eta.clone(),
        special,
        mask,
        qr,
        q0,
        p0,
    })
}

/// Frame of `GL(d)` / `SL(d)`: the single element `φ(P)` or `φ(P) D`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFrame<T> {
    pub mask: ColumnMask,
    /// `φ(P) = P M`, square and invertible.
    pub phi: Matrix<T>,
    /// `D` for the special linear group.
    pub scale: Option<Matrix<T>>,
    /// Frame element `φ(P)` or `φ(P) D`.
    pub element: Matrix<T>,
    pub element_inv: Matrix<T>,
    /// `I` or `D⁻¹`.
    pub canonical: Matrix<T>,
}

/// For `SL(d)`, `D = sign(det)/|det|^{1/d} · I` when `d` is odd. For even `d`
/// a negative determinant cannot be fixed by a scalar, so `D` is
/// `|det|^{-1/d} · diag(1, …, 1, -1)`.
pub fn frame_general_linear<T: Scalar>(
    p: &Matrix<T>,
    special: bool,
    tol: &Tolerances,
) -> Result<LinearFrame<T>> {
    let d = p.rows();
    let mask = select_columns(p, &Metric::euclidean(d), tol.null_tol, tol.rank_tol)?;
    if mask.rank() < d {
        return Err(Error::RankDeficient {
            rank: mask.rank(),
            required: d,
        });
    }
    let phi = mask.apply(p);
    let det = phi.det();
    let lower = tol.det_bound;
    let upper = 1.0 / tol.det_bound;
    let adet = det.modulus();
    if !(lower..=upper).contains(&adet) {
        return Err(Error::DeterminantOutOfBounds {
            det: adet,
            lower,
            upper,
        });
    }
    let (scale, element, canonical) = if special {
        let mag = adet.powf(-1.0 / d as f64);
        let mut diag = vec![T::from_real(mag); d];
        if det.re() < 0.0 {
            if d % 2 == 1 {
                diag.iter_mut().for_each(|x| *x = -*x);
            } else {
                diag[d - 1] = -diag[d - 1];
            }
        }
        let dm = Matrix::diag(&diag);
        let inv_diag: Vec<T> = diag.iter().map(|&x| T::one() / x).collect();
        let element = &phi * &dm;
        (Some(dm), element, Matrix::diag(&inv_diag))
    } else {
        (None, phi.clone(), Matrix::identity(d))
    };
    let element_inv = element.inverse()?;
    Ok(LinearFrame {
        mask,
        phi,
        scale,
        element,
        element_inv,
        canonical,
    })
}
