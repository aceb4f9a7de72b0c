//! Frame-averaging operators.

mod backbone;
mod operator;
mod ops;

pub use backbone::{Backbone, Counted, Declared, FnBackbone, Mode, Symmetry};
pub use operator::{Averager, Method};
pub use ops::{
    fa_eig, frame_average_finite, group_average, mfa_general_linear, mfa_linalg, mfa_permutation,
    mfa_product, mfa_translation, LinAlgWrapped,
};
