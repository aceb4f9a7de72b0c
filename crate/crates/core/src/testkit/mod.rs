//! Samplers, synthetic data, toy backbones and equivariance metrics.

mod audit;
mod backbones;
mod data;
mod sample;

pub use audit::{
    default_grid, equivariance_error, invariance_error, run_cell, AuditCell, ErrorReport, REPORT_SCHEMA,
};
pub use backbones::{mlp, relu, sine, Toy, ToyKind, MLP_HIDDEN, SINE_EPS};
pub use data::{make_degenerate_cloud, random_input, random_weighted_graph};
pub use sample::{
    defining_residual, gaussian, gaussian_matrix, haar, random_perm, sample_element, sample_g_eta,
    sample_general_linear, sample_group_element, sample_unitary, GL_BUDGET, GL_DET_RANGE, MAX_RAPIDITY,
};
