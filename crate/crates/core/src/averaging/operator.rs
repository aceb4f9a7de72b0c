use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::frames::{
    frame_general_linear, frame_linalg, frame_orthogonal_ppt, frame_permutation, frame_product,
    frame_translation, Group,
};
use crate::linalg::{Matrix, Metric};
use crate::scalar::{Scalar, ScalarKind};

use super::backbone::{Backbone, Mode};
use super::ops::{
    fa_eig, mfa_general_linear, mfa_linalg, mfa_permutation, mfa_product, mfa_translation,
    LinAlgWrapped,
};

/// How a backbone is symmetrized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Minimal frame averaging.
    Mfa,
    /// No averaging: the raw backbone.
    Plain,
    /// Eigendecomposition frame of `P Pᵀ` (orthogonal and Euclidean groups only).
    FaEig,
}

/// A backbone symmetrized over a group.
#[derive(Debug, Clone, PartialEq)]
pub struct Averager {
    pub group: Group,
    pub method: Method,
    pub mode: Mode,
    /// Lift repeated eigenvalues before building an eigendecomposition frame.
    pub perturb: bool,
    pub tol: Tolerances,
}

impl Averager {
    pub fn new(group: Group, method: Method, mode: Mode) -> Self {
        Self {
            group,
            method,
            mode,
            perturb: true,
            tol: Tolerances::default(),
        }
    }

    pub fn apply<T: Scalar>(&self, phi: &dyn Backbone<T>, x: &Matrix<T>) -> Result<Matrix<T>> {
        if let Some(d) = self.group.dim() {
            if x.rows() != d {
                return Err(Error::DimensionMismatch(format!(
                    "input has {} rows, group dimension is {d}",
                    x.rows()
                )));
            }
        }
        if self.group.scalar_kind() != T::KIND {
            return Err(Error::InvalidSpec(format!(
                "group expects {:?} scalars, got {:?}",
                self.group.scalar_kind(),
                T::KIND
            )));
        }
        match self.method {
            Method::Plain => phi.eval(x),
            Method::Mfa => self.mfa(phi, x),
            Method::FaEig => self.eig(phi, x),
        }
    }

    fn mfa<T: Scalar>(&self, phi: &dyn Backbone<T>, x: &Matrix<T>) -> Result<Matrix<T>> {
        let (mode, tol) = (self.mode, &self.tol);
        match &self.group {
            Group::Translation { .. } => mfa_translation(phi, &frame_translation(x)?, x, mode),
            Group::LinAlg { eta, special } => mfa_linalg(phi, &frame_linalg(x, eta, *special, tol)?, mode),
            Group::Unitary { d, special } => {
                mfa_linalg(phi, &frame_linalg(x, &Metric::euclidean(*d), *special, tol)?, mode)
            }
            Group::Euclidean { d, special } => {
                let inner = LinAlgWrapped::new(phi, Metric::euclidean(*d), *special, mode, *tol);
                mfa_translation(&inner, &frame_translation(x)?, x, mode)
            }
            Group::GeneralLinear { special, .. } => {
                mfa_general_linear(phi, &frame_general_linear(x, *special, tol)?, x, mode)
            }
            Group::Permutation => {
                let (rphi, rx) = real_view(phi, x)?;
                from_real(mfa_permutation(&rphi, &frame_permutation(&rx, tol)?, mode)?)
            }
            Group::Product { eta, special } => {
                let (rphi, rx) = real_view(phi, x)?;
                let fd = frame_product(&rx, eta, *special, tol)?;
                let wrapped = LinAlgWrapped::new(rphi, eta.clone(), *special, mode, *tol);
                from_real(mfa_product(&wrapped, &fd, &rx, mode)?)
            }
        }
    }

    fn eig<T: Scalar>(&self, phi: &dyn Backbone<T>, x: &Matrix<T>) -> Result<Matrix<T>> {
        let (mode, tol) = (self.mode, &self.tol);
        let (rphi, rx) = real_view(phi, x)?;
        match &self.group {
            Group::LinAlg { eta, .. } if eta.is_euclidean() => {
                from_real(fa_eig(&rphi, &frame_orthogonal_ppt(&rx, self.perturb, tol)?, &rx, mode)?)
            }
            Group::Euclidean { .. } => {
                let t = frame_translation(&rx)?;
                let centered = t.canonical(&rx);
                let fd = frame_orthogonal_ppt(&centered, self.perturb, tol)?;
                let y = fa_eig(&rphi, &fd, &centered, mode)?;
                from_real(match mode {
                    Mode::Equivariant => y.add_to_columns(&t.t),
                    Mode::Invariant => y,
                })
            }
            other => Err(Error::InvalidSpec(format!(
                "the eigendecomposition frame only covers O(d), SO(d), E(d), SE(d); got {other:?}"
            ))),
        }
    }
}

/// Views a real-scalar backbone and input as `f64`.
struct RealView<'a, T> {
    inner: &'a dyn Backbone<T>,
}

impl<T: Scalar> Backbone<f64> for RealView<'_, T> {
    fn name(&self) -> &str {
        self.inner.name()
    }

    fn eval(&self, x: &Matrix<f64>) -> Result<Matrix<f64>> {
        Ok(self.inner.eval(&x.map(T::from_real))?.map(|v| v.re()))
    }
}

fn real_view<'a, T: Scalar>(
    phi: &'a dyn Backbone<T>,
    x: &Matrix<T>,
) -> Result<(RealView<'a, T>, Matrix<f64>)> {
    if T::KIND != ScalarKind::Real {
        return Err(Error::InvalidSpec("this group requires real scalars".into()));
    }
    Ok((RealView { inner: phi }, x.map(|v| v.re())))
}

fn from_real<T: Scalar>(m: Matrix<f64>) -> Result<Matrix<T>> {
    Ok(m.map(T::from_real))
}
