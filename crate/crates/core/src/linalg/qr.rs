use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::metric::{inner, norm};
use super::{Matrix, Metric};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarKind};

/// What the determinant constraint did to a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DetAdjust {
    /// Constraint not requested.
    NotApplied,
    /// `det(Q̂)` was already 1.
    Unchanged,
    /// Column (and matching row of `R̂`) negated.
    FlippedColumn { col: usize },
    /// The single indeterminate column was completed and signed.
    Completed { slot: usize, flipped: bool },
    /// Complex case: `Q̂` scaled by a unit phase.
    Phase { re: f64, im: f64 },
    /// Two or more indeterminate columns; their signs cancel in averaging.
    Unsigned,
}

/// `φ(P) = Q̂ R̂` with `Q̂ᴴ η Q̂ = η` on determinate columns and `R̂` invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedQr<T> {
    /// `d x d`; indeterminate columns are zero.
    pub q_hat: Matrix<T>,
    /// `d x m`; rows of indeterminate slots are zero.
    pub r_hat: Matrix<T>,
    /// `<q_j, q_j>` for the Gram-Schmidt columns in input order.
    pub d_eta: Vec<i8>,
    /// Slot of `Q̂` → Gram-Schmidt column placed there, `None` if indeterminate.
    pub sig_perm: Vec<Option<usize>>,
    pub rank: usize,
    pub det_adjust: DetAdjust,
}

impl<T: Scalar> GeneralizedQr<T> {
    /// Slots of `Q̂` that hold a column.
    pub fn determinate(&self) -> Vec<usize> {
        (0..self.q_hat.cols())
            .filter(|&p| self.is_determinate(p))
            .collect()
    }

    pub fn is_determinate(&self, slot: usize) -> bool {
        self.sig_perm[slot].is_some() || matches!(self.det_adjust, DetAdjust::Completed { slot: s, .. } if s == slot)
    }

    pub fn indeterminate(&self) -> Vec<usize> {
        (0..self.q_hat.cols())
            .filter(|&p| !self.is_determinate(p))
            .collect()
    }

    pub fn reconstruct(&self) -> Matrix<T> {
        &self.q_hat * &self.r_hat
    }
}

/// Generalized Gram-Schmidt with respect to `η` followed by the signature
/// permutation, for a full-column-rank `d x m` matrix with non-null columns.
pub fn generalized_qr<T: Scalar>(
    a: &Matrix<T>,
    eta: &Metric,
    tol: &Tolerances,
) -> Result<GeneralizedQr<T>> {
    let (d, m) = a.shape();
    if d != eta.dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {d} rows, metric has dimension {}",
            eta.dim()
        )));
    }
    if m == 0 || m > d {
        return Err(Error::DimensionMismatch(format!(
            "generalized QR needs 1 <= m <= d, got {d}x{m}"
        )));
    }

    let mut q: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut signs: Vec<f64> = Vec::with_capacity(m);
    for j in 0..m {
        let aj = a.col(j);
        let mut v = aj.clone();
        for _ in 0..2 {
            for (qi, &si) in q.iter().zip(&signs) {
                let c = inner(qi, &v, eta).scale(si);
                for (x, &y) in v.iter_mut().zip(qi) {
                    *x -= c * y;
                }
            }
        }
        let nv = norm(&v);
        if nv == 0.0 || nv <= tol.rank_tol * norm(&aj) {
            return Err(Error::DegenerateInput(format!("column {j} is linearly dependent")));
        }
        let nn = inner(&v, &v, eta).re();
        if nn.abs() <= tol.null_tol * nv * nv {
            return Err(Error::DegenerateInput(format!(
                "cannot normalize a null vector at column {j}"
            )));
        }
        let s = 1.0 / nn.abs().sqrt();
        let mut qj: Vec<T> = v.iter().map(|&x| x.scale(s)).collect();
        let ph = inner(&qj, &aj, eta).phase();
        for x in &mut qj {
            *x *= ph;
        }
        q.push(qj);
        signs.push(nn.signum());
    }

    let mut r = Matrix::zeros(m, m);
    for j in 0..m {
        let aj = a.col(j);
        for i in 0..=j {
            r[(i, j)] = inner(&q[i], &aj, eta);
        }
        // The diagonal equals sqrt|<v,v>| exactly; drop round-off imaginary parts.
        r[(j, j)] = T::from_real(r[(j, j)].modulus());
    }

    let d_eta: Vec<i8> = signs.iter().map(|&s| if s < 0.0 { -1 } else { 1 }).collect();
    let sig_perm = signature_permutation(&d_eta, eta);

    let mut q_hat = Matrix::zeros(d, d);
    let mut r_hat = Matrix::zeros(d, m);
    for (p, src) in sig_perm.iter().enumerate() {
        if let Some(k) = *src {
            q_hat.set_col(p, &q[k]);
            for c in 0..m {
                r_hat[(p, c)] = r[(k, c)].scale(signs[k]);
            }
        }
    }
    Ok(GeneralizedQr {
        q_hat,
        r_hat,
        d_eta,
        sig_perm,
        rank: m,
        det_adjust: DetAdjust::NotApplied,
    })
}

/// Places Gram-Schmidt columns with signs `d_eta` into slots of `η` with
/// matching sign. Depends only on `d_eta` and `η`, so it is invariant.
///
/// Follows the swap rule between mismatched determinate slots; a column that
/// has no such partner is moved into a later indeterminate slot of the right
/// sign. Returns slot → column.
pub fn signature_permutation(d_eta: &[i8], eta: &Metric) -> Vec<Option<usize>> {
    let d = eta.dim();
    let b = eta.signature();
    let mut a: Vec<i8> = d_eta.iter().copied().chain(std::iter::repeat(0)).take(d).collect();
    let mut at: Vec<usize> = (0..d).collect();
    for i in 0..d {
        if a[i] == 0 || a[i] == b[i] {
            continue;
        }
        let partner = (i + 1..d)
            .find(|&j| a[j] != 0 && a[j] != b[j] && a[j] == b[i])
            .or_else(|| (i + 1..d).find(|&j| a[j] == 0 && b[j] == a[i]));
        if let Some(j) = partner {
            a.swap(i, j);
            at.swap(i, j);
        }
    }
    let m = d_eta.len();
    if a.iter().zip(b).all(|(&x, &y)| x == 0 || x == y) {
        return at.into_iter().map(|k| (k < m).then_some(k)).collect();
    }
    // Greedy swaps got stuck; fall back to first-fit, still a function of the signs alone.
    let mut slots = vec![None; d];
    for (k, &s) in d_eta.iter().enumerate() {
        if let Some(p) = (0..d).find(|&p| slots[p].is_none() && b[p] == s) {
            slots[p] = Some(k);
        }
    }
    slots
}

/// Restricts `Q̂` to determinant one.
///
/// With no indeterminate column the last column of `Q̂` and last row of `R̂`
/// are negated when needed (complex: `Q̂` is scaled by the principal root
/// `det^{-1/d}`). With exactly one indeterminate column, that column is
/// completed from the first best-conditioned standard basis vector and its
/// sign chosen to make the determinant one. Otherwise nothing changes.
pub fn apply_det_constraint<T: Scalar>(
    mut qr: GeneralizedQr<T>,
    eta: &Metric,
    tol: &Tolerances,
) -> Result<GeneralizedQr<T>> {
    let d = qr.q_hat.rows();
    let open = qr.indeterminate();
    match open.len() {
        0 => {
            let det = qr.q_hat.det();
            match T::KIND {
                ScalarKind::Real => {
                    if det.re() < 0.0 {
                        let last = d - 1;
                        for i in 0..d {
                            qr.q_hat[(i, last)] = -qr.q_hat[(i, last)];
                        }
                        for c in 0..qr.r_hat.cols() {
                            qr.r_hat[(last, c)] = -qr.r_hat[(last, c)];
                        }
                        qr.det_adjust = DetAdjust::FlippedColumn { col: last };
                    } else {
                        qr.det_adjust = DetAdjust::Unchanged;
                    }
                }
                ScalarKind::Complex => {
                    let z = Complex64::new(det.re(), det.im());
                    let root = Complex64::from_polar(1.0, -z.arg() / d as f64);
                    let s = T::from_complex(root);
                    qr.q_hat = qr.q_hat.scale(s);
                    qr.r_hat = qr.r_hat.scale(s.conj());
                    qr.det_adjust = DetAdjust::Phase {
                        re: root.re,
                        im: root.im,
                    };
                }
            }
        }
        1 => {
            let slot = open[0];
            let col = complete_column(&qr, eta, tol)?;
            qr.q_hat.set_col(slot, &col);
            let det = qr.q_hat.det();
            let flipped = match T::KIND {
                ScalarKind::Real => det.re() < 0.0,
                ScalarKind::Complex => true,
            };
            if flipped {
                let f = det.phase().conj();
                for i in 0..d {
                    qr.q_hat[(i, slot)] *= f;
                }
            }
            qr.det_adjust = DetAdjust::Completed { slot, flipped };
        }
        _ => qr.det_adjust = DetAdjust::Unsigned,
    }
    Ok(qr)
}

/// Unit vector spanning the `η`-orthogonal complement of the determinate columns.
fn complete_column<T: Scalar>(
    qr: &GeneralizedQr<T>,
    eta: &Metric,
    tol: &Tolerances,
) -> Result<Vec<T>> {
    let d = qr.q_hat.rows();
    let basis: Vec<(Vec<T>, f64)> = qr
        .determinate()
        .into_iter()
        .map(|p| (qr.q_hat.col(p), eta.sign(p)))
        .collect();
    let mut best: Option<(f64, Vec<T>)> = None;
    for k in 0..d {
        let mut v = vec![T::zero(); d];
        v[k] = T::one();
        for _ in 0..2 {
            for (qb, s) in &basis {
                let c = inner(qb, &v, eta).scale(*s);
                for (x, &y) in v.iter_mut().zip(qb) {
                    *x -= c * y;
                }
            }
        }
        let nn = inner(&v, &v, eta).re();
        if best.as_ref().map_or(true, |(b, _)| nn.abs() > *b) {
            best = Some((nn.abs(), v));
        }
    }
    let (nn, v) = best.expect("d >= 1");
    if nn <= tol.null_tol {
        return Err(Error::DegenerateInput(
            "could not complete the indeterminate column".into(),
        ));
    }
    let s = 1.0 / nn.sqrt();
    Ok(v.into_iter().map(|x| x.scale(s)).collect())
}
