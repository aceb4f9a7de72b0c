//! Dense linear algebra over a diagonal pseudo-metric.

mod eig;
mod io;
mod mask;
mod matrix;
mod metric;
mod perturb;
mod qr;

pub use eig::{degeneracy_excess, eig_sym, eigen_clusters, EigResult};
pub use io::{format_matrix, parse_matrix, DenseMatrix};
pub use mask::{select_columns, ColumnMask, DropReason};
pub use matrix::Matrix;
pub use metric::{eta_orthonormality_residual, pseudo_inner, Metric};
pub use perturb::{perturb_degenerate, Perturbation};
pub use qr::{apply_det_constraint, generalized_qr, signature_permutation, DetAdjust, GeneralizedQr};
