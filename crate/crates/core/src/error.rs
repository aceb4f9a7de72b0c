use thiserror::Error;

/// Errors raised by frame construction, decompositions and averaging.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("repeated nonzero eigenvalues ({0}); enable the perturbation step")]
    RepeatedEigenvalues(String),

    #[error("eigenvalue perturbation did not resolve degeneracy: {0}")]
    PerturbationExhausted(String),

    #[error("rank deficient: rank {rank} < required {required}")]
    RankDeficient { rank: usize, required: usize },

    #[error("determinant {det:e} outside bound [{lower:e}, {upper:e}]")]
    DeterminantOutOfBounds { det: f64, lower: f64, upper: f64 },

    #[error("stabilizer order {order} exceeds cap {cap}")]
    StabilizerTooLarge { order: String, cap: usize },

    #[error("backbone output shape {got:?} does not match expected {expected:?}")]
    ShapeMismatch {
        got: (usize, usize),
        expected: (usize, usize),
    },

    #[error("backbone `{0}` does not declare the symmetry required by this operator")]
    MissingSymmetry(String),

    #[error("empty group element list")]
    EmptyGroup,

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("sampling budget exhausted: {0}")]
    SamplingExhausted(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
