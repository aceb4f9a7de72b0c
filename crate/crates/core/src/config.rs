//! Numerical tolerances shared by every decomposition and frame constructor.
//!
//! A single [`Tolerances`] value is threaded through the API explicitly; there
//! is no global state.

use serde::{Deserialize, Serialize};

/// Parameters of the degeneracy-lifting eigenvalue perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbParams {
    /// Initial relative perturbation size.
    pub eps_start: f64,
    /// Increment applied after each rejected attempt.
    pub eps_incr: f64,
    /// Attempts per perturbed entry before giving up.
    pub max_subiter: usize,
}

impl Default for PerturbParams {
    fn default() -> Self {
        Self {
            eps_start: 0.05,
            eps_incr: 0.05,
            max_subiter: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// A column `v` is null iff `|<v,v>| <= null_tol * max(|v|^2, 1)`.
    pub null_tol: f64,
    /// Relative threshold of the greedy linear-dependence test.
    pub rank_tol: f64,
    /// Maximum relative asymmetry accepted by symmetric routines.
    pub sym_tol: f64,
    /// Relative gap below which two eigenvalues are considered equal.
    pub eig_tol: f64,
    /// Relative threshold below which an eigenvalue is treated as zero.
    pub zero_eig_tol: f64,
    /// Determinant bound for the general/special linear frames.
    pub det_bound: f64,
    /// Bucket width used to quantize edge weights into colors.
    pub quant_step: f64,
    /// Maximum number of permutation coset representatives in a product frame.
    pub stabilizer_cap: usize,
    pub perturb: PerturbParams,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            null_tol: 1e-10,
            rank_tol: 1e-9,
            sym_tol: 1e-9,
            eig_tol: 1e-8,
            zero_eig_tol: 1e-10,
            det_bound: 1e-6,
            quant_step: 1e-9,
            stabilizer_cap: 4096,
            perturb: PerturbParams::default(),
        }
    }
}
