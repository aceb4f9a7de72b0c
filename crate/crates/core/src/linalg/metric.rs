use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Diagonal signature `η` with entries ±1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct Metric {
    signature: Vec<i8>,
}

impl Metric {
    pub fn new(signature: Vec<i8>) -> Result<Self> {
        if signature.is_empty() {
            return Err(Error::InvalidSpec("metric must have length >= 1".into()));
        }
        if let Some(bad) = signature.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidSpec(format!("metric entry {bad} is not ±1")));
        }
        Ok(Self { signature })
    }

    /// `η = I_d`.
    pub fn euclidean(d: usize) -> Self {
        Self {
            signature: vec![1; d.max(1)],
        }
    }

    /// `η = diag(1, -1, ..., -1)`.
    pub fn minkowski(d: usize) -> Self {
        let mut signature = vec![-1; d.max(1)];
        signature[0] = 1;
        Self { signature }
    }

    pub fn dim(&self) -> usize {
        self.signature.len()
    }

    pub fn signature(&self) -> &[i8] {
        &self.signature
    }

    #[inline]
    pub fn sign(&self, i: usize) -> f64 {
        f64::from(self.signature[i])
    }

    pub fn signs_f64(&self) -> Vec<f64> {
        self.signature.iter().map(|&s| f64::from(s)).collect()
    }

    pub fn is_euclidean(&self) -> bool {
        self.signature.iter().all(|&s| s == 1)
    }

    pub fn to_matrix<T: Scalar>(&self) -> Matrix<T> {
        let diag: Vec<T> = self.signature.iter().map(|&s| T::from_real(s.into())).collect();
        Matrix::diag(&diag)
    }

    /// `η Aᴴ η`, the inverse of any `A` with `Aᴴ η A = η`.
    pub fn group_inverse<T: Scalar>(&self, a: &Matrix<T>) -> Matrix<T> {
        let s = self.signs_f64();
        a.adjoint().scale_rows(&s).scale_cols(&s)
    }
}

impl TryFrom<Vec<i8>> for Metric {
    type Error = Error;

    fn try_from(v: Vec<i8>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Metric> for Vec<i8> {
    fn from(m: Metric) -> Self {
        m.signature
    }
}

/// `Σ η_i conj(u_i) v_i`.
pub fn pseudo_inner<T: Scalar>(u: &[T], v: &[T], eta: &Metric) -> Result<T> {
    if u.len() != v.len() || u.len() != eta.dim() {
        return Err(Error::DimensionMismatch(format!(
            "pseudo_inner of lengths {}, {} with metric of dimension {}",
            u.len(),
            v.len(),
            eta.dim()
        )));
    }
    Ok(inner(u, v, eta))
}

#[inline]
pub(crate) fn inner<T: Scalar>(u: &[T], v: &[T], eta: &Metric) -> T {
    u.iter()
        .zip(v)
        .zip(&eta.signature)
        .map(|((&a, &b), &s)| {
            let t = a.conj() * b;
            if s < 0 {
                -t
            } else {
                t
            }
        })
        .sum()
}

#[inline]
pub(crate) fn euclid_inner<T: Scalar>(u: &[T], v: &[T]) -> T {
    u.iter().zip(v).map(|(&a, &b)| a.conj() * b).sum()
}

#[inline]
pub(crate) fn norm<T: Scalar>(v: &[T]) -> f64 {
    v.iter().map(|x| x.modulus_sqr()).sum::<f64>().sqrt()
}

/// `‖Aᴴ η A - η‖_∞` over the given columns.
pub fn eta_orthonormality_residual<T: Scalar>(a: &Matrix<T>, cols: &[usize], eta: &Metric) -> f64 {
    let mut worst = 0.0_f64;
    for (x, &i) in cols.iter().enumerate() {
        let ci = a.col(i);
        for &j in &cols[x..] {
            let g = inner(&ci, &a.col(j), eta);
            let target = if i == j { eta.sign(i) } else { 0.0 };
            worst = worst.max((g - T::from_real(target)).modulus());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_products_in_minkowski_plane() {
        let eta = Metric::new(vec![1, -1]).unwrap();
        assert_eq!(pseudo_inner(&[1.0, 0.0], &[1.0, 0.0], &eta).unwrap(), 1.0);
        assert_eq!(pseudo_inner(&[0.0, 1.0], &[0.0, 1.0], &eta).unwrap(), -1.0);
        assert_eq!(pseudo_inner(&[1.0, 1.0], &[1.0, -1.0], &eta).unwrap(), 2.0);
    }

    #[test]
    fn rejects_bad_signature_and_length() {
        assert!(Metric::new(vec![1, 0]).is_err());
        assert!(Metric::new(vec![]).is_err());
        let eta = Metric::euclidean(2);
        assert!(pseudo_inner(&[1.0], &[1.0], &eta).is_err());
    }

    #[test]
    fn complex_inner_conjugates_left() {
        use num_complex::Complex64 as C;
        let eta = Metric::euclidean(1);
        let u = [C::new(0.0, 1.0)];
        let v = [C::new(0.0, 1.0)];
        assert_eq!(pseudo_inner(&u, &v, &eta).unwrap(), C::new(1.0, 0.0));
    }
}
