use crate::error::{Error, Result};
use crate::graph::perm::{self, Perm};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A concrete group element together with its action on inputs and outputs.
///
/// Inputs are `d x n` clouds (points as columns) except for permutations,
/// whose inputs are symmetric `n x n` matrices. Outputs of an equivariant
/// map have the input's shape; permutation outputs carry one row per node.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupElement<T> {
    /// `X ↦ X + t 1ᵀ`.
    Translation(Vec<T>),
    /// `X ↦ g X`.
    Linear(Matrix<T>),
    /// `X ↦ g X + t 1ᵀ`.
    Affine { linear: Matrix<T>, shift: Vec<T> },
    /// `A ↦ S A Sᵀ` on inputs, `Y ↦ S Y` on outputs, with `S[p(i), i] = 1`.
    Permutation(Perm),
    /// `X ↦ O X Sᵀ`.
    Product { perm: Perm, linear: Matrix<T> },
}

impl<T: Scalar> GroupElement<T> {
    pub fn act_input(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        match self {
            GroupElement::Permutation(p) => {
                check(p.len() == x.rows() && x.rows() == x.cols(), "permutation input", x)?;
                Ok(perm::act_symmetric(&perm::inverse(p), x))
            }
            _ => self.act_output(x),
        }
    }

    pub fn act_output(&self, y: &Matrix<T>) -> Result<Matrix<T>> {
        match self {
            GroupElement::Translation(t) => {
                check(t.len() == y.rows(), "translation", y)?;
                Ok(y.add_to_columns(t))
            }
            GroupElement::Linear(g) => {
                check(g.cols() == y.rows(), "linear", y)?;
                Ok(g * y)
            }
            GroupElement::Affine { linear, shift } => {
                check(linear.cols() == y.rows() && shift.len() == y.rows(), "affine", y)?;
                Ok((linear * y).add_to_columns(shift))
            }
            GroupElement::Permutation(p) => {
                check(p.len() == y.rows(), "permutation output", y)?;
                Ok(perm::act_rows(&perm::inverse(p), y))
            }
            GroupElement::Product { perm: p, linear } => {
                check(linear.cols() == y.rows() && p.len() == y.cols(), "product", y)?;
                Ok(perm::act_cols(&perm::inverse(p), &(linear * y)))
            }
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(match self {
            GroupElement::Translation(t) => GroupElement::Translation(t.iter().map(|&x| -x).collect()),
            GroupElement::Linear(g) => GroupElement::Linear(g.inverse()?),
            GroupElement::Affine { linear, shift } => {
                let inv = linear.inverse()?;
                let s = Matrix::from_columns(shift.len(), std::slice::from_ref(shift));
                let shift = (&inv * &s).col(0).into_iter().map(|x| -x).collect();
                GroupElement::Affine { linear: inv, shift }
            }
            GroupElement::Permutation(p) => GroupElement::Permutation(perm::inverse(p)),
            GroupElement::Product { perm: p, linear } => GroupElement::Product {
                perm: perm::inverse(p),
                linear: linear.inverse()?,
            },
        })
    }
}

fn check<T: Scalar>(ok: bool, what: &str, m: &Matrix<T>) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "{what} element cannot act on a {}x{} matrix",
            m.rows(),
            m.cols()
        )))
    }
}
