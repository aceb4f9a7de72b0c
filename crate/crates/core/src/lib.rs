//! Minimal frame averaging.
//!
//! Wraps an arbitrary function of a point cloud or graph so that it becomes
//! exactly equivariant (or invariant) under a symmetry group, by averaging
//! over the smallest possible frame: a canonical form plus its stabilizer.

pub mod averaging;
pub mod config;
pub mod error;
pub mod frames;
pub mod graph;
pub mod linalg;
pub mod scalar;
pub mod testkit;

pub use config::{PerturbParams, Tolerances};
pub use error::{Error, Result};
pub use linalg::{DenseMatrix, Matrix, Metric};
pub use scalar::{Scalar, ScalarKind};
