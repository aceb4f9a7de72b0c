use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sample::gaussian_matrix;
use crate::averaging::Backbone;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::scalar::{Scalar, ScalarKind};

/// Hidden width of [`Toy::Mlp`].
pub const MLP_HIDDEN: usize = 16;

/// Added to `‖x‖` by [`Toy::Sine`] when the input is zero.
pub const SINE_EPS: f64 = 1e-12;

/// Deterministic non-equivariant test functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ToyKind {
    Relu,
    Sine,
    Mlp,
    Identity,
}

impl ToyKind {
    /// The three non-equivariant backbones used by default audits.
    pub const DEFAULT: [ToyKind; 3] = [ToyKind::Relu, ToyKind::Sine, ToyKind::Mlp];

    pub fn as_str(self) -> &'static str {
        match self {
            ToyKind::Relu => "relu",
            ToyKind::Sine => "sine",
            ToyKind::Mlp => "mlp",
            ToyKind::Identity => "identity",
        }
    }
}

impl std::fmt::Display for ToyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A toy backbone; MLP weights are drawn from `seed` and the input shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Toy {
    pub kind: ToyKind,
    pub seed: u64,
}

impl Toy {
    pub fn new(kind: ToyKind, seed: u64) -> Self {
        Self { kind, seed }
    }
}

/// `x + max(x, 0)` entrywise.
pub fn relu(x: &Matrix<f64>) -> Matrix<f64> {
    x.map(|v| v + v.max(0.0))
}

/// `sin(x) - x / ‖x‖` with the Frobenius norm.
pub fn sine<T: Scalar>(x: &Matrix<T>) -> Matrix<T> {
    let mut norm = x.frobenius();
    if norm == 0.0 {
        norm += SINE_EPS;
    }
    x.map(|v| T::from_complex(Complex64::new(v.re(), v.im()).sin()) - v.scale(1.0 / norm))
}

/// `W₂ tanh(W₁ X V + B)`: mixes both the feature and the node dimension.
pub fn mlp(x: &Matrix<f64>, seed: u64) -> Matrix<f64> {
    let (d, n) = x.shape();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((d as u64) << 32) | n as u64);
    let w1: Matrix<f64> = gaussian_matrix(MLP_HIDDEN, d, &mut rng).scale(1.0 / (d as f64).sqrt());
    let v: Matrix<f64> = gaussian_matrix(n, n, &mut rng).scale(1.0 / (n as f64).sqrt());
    let b: Matrix<f64> = gaussian_matrix(MLP_HIDDEN, n, &mut rng);
    let w2: Matrix<f64> = gaussian_matrix(d, MLP_HIDDEN, &mut rng).scale(1.0 / (MLP_HIDDEN as f64).sqrt());
    let h = (&(&(&w1 * x) * &v) + &b).map(f64::tanh);
    &w2 * &h
}

impl Toy {
    fn real(&self, x: &Matrix<f64>) -> Matrix<f64> {
        match self.kind {
            ToyKind::Relu => relu(x),
            ToyKind::Sine => sine(x),
            ToyKind::Mlp => mlp(x, self.seed),
            ToyKind::Identity => x.clone(),
        }
    }
}

impl<T: Scalar> Backbone<T> for Toy {
    fn name(&self) -> &str {
        self.kind.as_str()
    }

    /// Complex inputs: `sine` is the holomorphic extension; the others act on
    /// real and imaginary parts separately.
    fn eval(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        if self.kind == ToyKind::Sine {
            return Ok(sine(x));
        }
        match T::KIND {
            ScalarKind::Real => Ok(self.real(&x.map(|v| v.re())).map(T::from_real)),
            ScalarKind::Complex => {
                let re = self.real(&x.map(|v| v.re()));
                let im = self.real(&x.map(|v| v.im()));
                Ok(Matrix::from_fn(re.rows(), re.cols(), |i, j| {
                    T::from_complex(Complex64::new(re[(i, j)], im[(i, j)]))
                }))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relu_hand_values() {
        let x = Matrix::from_rows(&[vec![0.0, -1.0, 2.0]]);
        assert_eq!(relu(&x).as_slice(), &[0.0, -1.0, 4.0]);
    }

    #[test]
    fn sine_is_entrywise_with_global_norm() {
        let h = std::f64::consts::FRAC_PI_2;
        let x = Matrix::from_rows(&[vec![h, h]]);
        let y = sine(&x);
        let norm = (2.0 * h * h).sqrt();
        for &v in y.as_slice() {
            assert!((v - (1.0 - h / norm)).abs() < 1e-15);
        }
    }

    #[test]
    fn sine_guards_zero_input() {
        let y = sine(&Matrix::<f64>::zeros(2, 2));
        assert!(y.is_finite());
        assert_eq!(y.max_abs(), 0.0);
    }

    #[test]
    fn mlp_is_deterministic_and_shape_preserving() {
        let x = Matrix::from_fn(3, 5, |i, j| (i as f64) - 0.3 * j as f64);
        let a = mlp(&x, 9);
        assert_eq!(a.shape(), (3, 5));
        assert_eq!(a, mlp(&x, 9));
        assert_ne!(a, mlp(&x, 10));
    }
}
