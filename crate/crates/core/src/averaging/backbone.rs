use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{Matrix, Metric};
use crate::scalar::Scalar;

/// Symmetry a backbone declares about itself.
#[derive(Debug, Clone, PartialEq)]
pub enum Symmetry {
    None,
    /// Equivariant (or invariant, in invariant mode) under `G_η(d)`.
    GEta(Metric),
}

/// Whether the averaged output is transported back by the frame element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Equivariant,
    Invariant,
}

/// A deterministic map of matrices: the function being symmetrized.
pub trait Backbone<T: Scalar>: Send + Sync {
    fn name(&self) -> &str;

    fn eval(&self, x: &Matrix<T>) -> Result<Matrix<T>>;

    fn symmetry(&self) -> Symmetry {
        Symmetry::None
    }
}

impl<T: Scalar, B: Backbone<T> + ?Sized> Backbone<T> for &B {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn eval(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        (**self).eval(x)
    }

    fn symmetry(&self) -> Symmetry {
        (**self).symmetry()
    }
}

/// Backbone from a closure.
pub struct FnBackbone<F> {
    name: String,
    f: F,
}

impl<F> FnBackbone<F> {
    pub fn new(name: impl Into<String>, f: F) -> Self {
        Self { name: name.into(), f }
    }
}

impl<T, F> Backbone<T> for FnBackbone<F>
where
    T: Scalar,
    F: Fn(&Matrix<T>) -> Matrix<T> + Send + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn eval(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        Ok((self.f)(x))
    }
}

/// Counts how often the wrapped backbone is evaluated.
pub struct Counted<B> {
    inner: B,
    calls: AtomicUsize,
}

impl<B> Counted<B> {
    pub fn new(inner: B) -> Self {
        Self {
            inner,
            calls: AtomicUsize::new(0),
        }
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }
}

impl<T: Scalar, B: Backbone<T>> Backbone<T> for Counted<B> {
    fn name(&self) -> &str {
        self.inner.name()
    }

    fn eval(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.eval(x)
    }

    fn symmetry(&self) -> Symmetry {
        self.inner.symmetry()
    }
}

/// Declares a symmetry on behalf of a backbone known to have it.
pub struct Declared<B> {
    inner: B,
    symmetry: Symmetry,
}

impl<B> Declared<B> {
    pub fn new(inner: B, symmetry: Symmetry) -> Self {
        Self { inner, symmetry }
    }
}

impl<T: Scalar, B: Backbone<T>> Backbone<T> for Declared<B> {
    fn name(&self) -> &str {
        self.inner.name()
    }

    fn eval(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        self.inner.eval(x)
    }

    fn symmetry(&self) -> Symmetry {
        self.symmetry.clone()
    }
}
