use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::frames::{
    frame_linalg, EigFrame, GroupElement, LinAlgFrame, LinearFrame, PermutationFrame, ProductFrame,
    TranslationFrame,
};
use crate::graph::perm;
use crate::linalg::{Matrix, Metric};
use crate::scalar::Scalar;

use super::backbone::{Backbone, Mode, Symmetry};

fn eval_checked<T: Scalar, B: Backbone<T> + ?Sized>(
    phi: &B,
    x: &Matrix<T>,
    expected: Option<(usize, usize)>,
) -> Result<Matrix<T>> {
    let y = phi.eval(x)?;
    match expected {
        Some(want) if y.shape() != want => Err(Error::ShapeMismatch {
            got: y.shape(),
            expected: want,
        }),
        _ => Ok(y),
    }
}

fn mean<T: Scalar>(terms: Vec<Matrix<T>>) -> Result<Matrix<T>> {
    let k = terms.len();
    let mut it = terms.into_iter();
    let first = it.next().ok_or(Error::EmptyGroup)?;
    let mut acc = first;
    for t in it {
        if t.shape() != acc.shape() {
            return Err(Error::ShapeMismatch {
                got: t.shape(),
                expected: acc.shape(),
            });
        }
        acc = &acc + &t;
    }
    Ok(acc.scale(T::from_real(1.0 / k as f64)))
}

/// `(1/|G|) Σ_g g·Φ(g⁻¹·x)` over an explicit list of elements; invariant
/// mode drops the outer action.
pub fn group_average<T: Scalar, B: Backbone<T> + ?Sized>(
    phi: &B,
    elements: &[GroupElement<T>],
    x: &Matrix<T>,
    mode: Mode,
) -> Result<Matrix<T>> {
    if elements.is_empty() {
        return Err(Error::EmptyGroup);
    }
    let mut terms = Vec::with_capacity(elements.len());
    for g in elements {
        let y = phi.eval(&g.inverse()?.act_input(x)?)?;
        terms.push(match mode {
            Mode::Equivariant => g.act_output(&y)?,
            Mode::Invariant => y,
        });
    }
    mean(terms)
}

/// Same formula as [`group_average`] over the frame `F(x)`.
pub fn frame_average_finite<T: Scalar, B: Backbone<T> + ?Sized>(
    phi: &B,
    frame: &[GroupElement<T>],
    x: &Matrix<T>,
    mode: Mode,
) -> Result<Matrix<T>> {
    group_average(phi, frame, x, mode)
}

/// `Φ(P - t1ᵀ) + t1ᵀ`.
pub fn mfa_translation<T: Scalar, B: Backbone<T> + ?Sized>(
    phi: &B,
    fd: &TranslationFrame<T>,
    p: &Matrix<T>,
    mode: Mode,
) -> Result<Matrix<T>> {
    let y = eval_checked(phi, &fd.canonical(p), mode_shape(mode, p))?;
    Ok(match mode {
        Mode::Equivariant => y.add_to_columns(&fd.t),
        Mode::Invariant => y,
    })
}

/// `Q₀ Φ(P₀)`, one backbone call.
pub fn mfa_linalg<T: Scalar, B: Backbone<T> + ?Sized>(
    phi: &B,
    fd: &LinAlgFrame<T>,
    mode: Mode,
) -> Result<Matrix<T>> {
    let y = eval_checked(phi, &fd.p0, mode_shape(mode, &fd.p0))?;
    Ok(match mode {
        Mode::Equivariant => &fd.q0 * &y,
        Mode::Invariant => y,
    })
}

/// `F Φ(F⁻¹ P)` for the general or special linear group.
pub fn mfa_general_linear<T: Scalar, B: Backbone<T> + ?Sized>(
    phi: &B,
    fd: &LinearFrame<T>,
    p: &Matrix<T>,
    mode: Mode,
) -> Result<Matrix<T>> {
    let y = eval_checked(phi, &(&fd.element_inv * p), mode_shape(mode, p))?;
    Ok(match mode {
        Mode::Equivariant => &fd.element * &y,
        Mode::Invariant => y,
    })
}

/// `(1/2^{d′}) Σ_s O_s Φ(O_sᵀ P)` over the eigendecomposition frame.
pub fn fa_eig<B: Backbone<f64> + ?Sized>(
    phi: &B,
    fd: &EigFrame,
    p: &Matrix<f64>,
    mode: Mode,
) -> Result<Matrix<f64>> {
    let mut terms = Vec::with_capacity(fd.size());
    for o in fd.elements() {
        let y = eval_checked(phi, &(&o.transpose() * p), mode_shape(mode, p))?;
        terms.push(match mode {
            Mode::Equivariant => &o * &y,
            Mode::Invariant => y,
        });
    }
    mean(terms)
}

/// Single-pass permutation averaging.
///
/// Invariant: `Φ(c(A))`. Equivariant: `M_A · S_σ Φ(c(A))`, where `S_σ` moves
/// row `i` of the canonical output back to node `σ(i)` and `M_A` is the
/// orbit-average matrix of `Aut(A)`.
pub fn mfa_permutation<B: Backbone<f64> + ?Sized>(
    phi: &B,
    fd: &PermutationFrame,
    mode: Mode,
) -> Result<Matrix<f64>> {
    let n = fd.canonical.rows();
    let y = phi.eval(&fd.canonical)?;
    if mode == Mode::Equivariant && y.rows() != n {
        return Err(Error::ShapeMismatch {
            got: y.shape(),
            expected: (n, y.cols()),
        });
    }
    Ok(match mode {
        Mode::Equivariant => {
            let moved = perm::act_rows(&perm::inverse(&fd.canonical_perm), &y);
            &fd.orbit_average * &moved
        }
        Mode::Invariant => y,
    })
}

/// `(1/|F|) Σ_τ Φ_η(P S_τ) S_τᵀ` with `Φ_η` declared `G_η`-symmetric.
pub fn mfa_product<B: Backbone<f64> + ?Sized>(
    phi: &B,
    fd: &ProductFrame,
    p: &Matrix<f64>,
    mode: Mode,
) -> Result<Matrix<f64>> {
    match phi.symmetry() {
        Symmetry::GEta(eta) if eta == fd.eta => {}
        _ => return Err(Error::MissingSymmetry(phi.name().to_string())),
    }
    let mut terms = Vec::with_capacity(fd.reps.len());
    for tau in &fd.reps {
        let y = eval_checked(phi, &perm::act_cols(tau, p), mode_shape(mode, p))?;
        terms.push(match mode {
            Mode::Equivariant => perm::act_cols(&perm::inverse(tau), &y),
            Mode::Invariant => y,
        });
    }
    mean(terms)
}

/// Equivariant outputs must have the input's shape; invariant ones are free.
fn mode_shape<T: Scalar>(mode: Mode, p: &Matrix<T>) -> Option<(usize, usize)> {
    match mode {
        Mode::Equivariant => Some(p.shape()),
        Mode::Invariant => None,
    }
}

/// Makes an arbitrary backbone `G_η`-symmetric by closed-form averaging.
pub struct LinAlgWrapped<B> {
    inner: B,
    eta: Metric,
    special: bool,
    mode: Mode,
    tol: Tolerances,
}

impl<B> LinAlgWrapped<B> {
    pub fn new(inner: B, eta: Metric, special: bool, mode: Mode, tol: Tolerances) -> Self {
        Self {
            inner,
            eta,
            special,
            mode,
            tol,
        }
    }
}

impl<T: Scalar, B: Backbone<T>> Backbone<T> for LinAlgWrapped<B> {
    fn name(&self) -> &str {
        self.inner.name()
    }

    fn eval(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        let fd = frame_linalg(x, &self.eta, self.special, &self.tol)?;
        mfa_linalg(&self.inner, &fd, self.mode)
    }

    fn symmetry(&self) -> Symmetry {
        Symmetry::GEta(self.eta.clone())
    }
}
