//! Minimal frame constructors for every supported group.

mod eig;
mod element;
mod linalg;
mod permutation;
mod spec;

pub use eig::{frame_orthogonal_ppt, EigFrame};
pub use element::GroupElement;
pub use linalg::{
    frame_general_linear, frame_linalg, frame_translation, LinAlgFrame, LinearFrame, TranslationFrame,
};
pub use permutation::{
    detect_point_group, frame_permutation, frame_product, gram_matrix, PermutationFrame, PointGroup,
    ProductFrame,
};
pub use spec::{Group, GroupSpec, GroupTag};

use crate::config::Tolerances;
use crate::error::Result;
use crate::linalg::{Matrix, Metric};

/// `frame_translation` followed by `frame_linalg` with `η = I` on the centered cloud.
pub fn frame_euclidean(
    p: &Matrix<f64>,
    special: bool,
    tol: &Tolerances,
) -> Result<(TranslationFrame<f64>, LinAlgFrame<f64>)> {
    let t = frame_translation(p)?;
    let centered = t.canonical(p);
    let l = frame_linalg(&centered, &Metric::euclidean(p.rows()), special, tol)?;
    Ok((t, l))
}
