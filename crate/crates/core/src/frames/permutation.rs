use num_bigint::BigUint;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::graph::perm::{self, Perm};
use crate::graph::{canonical_label_weighted, orbit_average_matrix, WeightedGraph};
use crate::linalg::{select_columns, Matrix, Metric};

/// Frame `σ · Stab(c(A))` of a symmetric matrix under `S_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationFrame {
    /// `σ` with `c(A)[i][j] = A[σ(i)][σ(j)]`.
    pub canonical_perm: Perm,
    /// Generators of `Aut(A)` on the input labels.
    pub generators: Vec<Perm>,
    pub aut_order: BigUint,
    /// `(1/|Aut|) Σ ρ(g)` over `Aut(A)`.
    pub orbit_average: Matrix<f64>,
    pub canonical: Matrix<f64>,
    pub collisions: Vec<(f64, f64)>,
}

impl PermutationFrame {
    /// Explicit frame elements `γ ∘ σ` for `γ ∈ Aut(A)`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Perm>> {
        let n = self.canonical_perm.len();
        let group = perm::enumerate_group(&self.generators, n, cap)?;
        Ok(group
            .iter()
            .map(|g| perm::compose(g, &self.canonical_perm))
            .collect())
    }
}

pub fn frame_permutation(a: &Matrix<f64>, tol: &Tolerances) -> Result<PermutationFrame> {
    let w = WeightedGraph::new(a.clone())?;
    let r = canonical_label_weighted(&w, tol.quant_step);
    let n = a.rows();
    Ok(PermutationFrame {
        canonical: perm::act_symmetric(&r.canonical_perm, a),
        orbit_average: orbit_average_matrix(&r.aut_generators, n),
        canonical_perm: r.canonical_perm,
        generators: r.aut_generators,
        aut_order: r.aut_order,
        collisions: r.collisions,
    })
}

/// Frame of `S_n x G_η(d)` built from the Gram matrix `Pᵀ η P`.
///
/// `reps` lists the permutation parts `τ = γ ∘ σ`; the linear part of each
/// element comes from the `G_η` frame of `P S_τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductFrame {
    pub eta: Metric,
    pub special: bool,
    pub gram: PermutationFrame,
    pub reps: Vec<Perm>,
}

impl ProductFrame {
    pub fn size(&self) -> usize {
        self.reps.len()
    }
}

pub fn gram_matrix(p: &Matrix<f64>, eta: &Metric) -> Matrix<f64> {
    let g = &p.transpose() * &p.scale_rows(&eta.signs_f64());
    // Symmetrize so quantization sees identical (i,j) and (j,i) entries.
    Matrix::from_fn(g.rows(), g.cols(), |i, j| if i <= j { g[(i, j)] } else { g[(j, i)] })
}

pub fn frame_product(
    p: &Matrix<f64>,
    eta: &Metric,
    special: bool,
    tol: &Tolerances,
) -> Result<ProductFrame> {
    if p.rows() != eta.dim() {
        return Err(Error::DimensionMismatch(format!(
            "cloud has dimension {}, group has {}",
            p.rows(),
            eta.dim()
        )));
    }
    let gram = frame_permutation(&gram_matrix(p, eta), tol)?;
    if gram.aut_order > BigUint::from(tol.stabilizer_cap) {
        return Err(Error::StabilizerTooLarge {
            order: gram.aut_order.to_string(),
            cap: tol.stabilizer_cap,
        });
    }
    let reps = gram.elements(tol.stabilizer_cap)?;
    Ok(ProductFrame {
        eta: eta.clone(),
        special,
        gram,
        reps,
    })
}

/// Point group of a cloud: the permutations of its points realizable by `G_η`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointGroup {
    pub trivial: bool,
    pub order: BigUint,
    pub generators: Vec<Perm>,
}

/// Requires `rank(P) = d` and no null or repeated columns.
pub fn detect_point_group(p: &Matrix<f64>, eta: &Metric, tol: &Tolerances) -> Result<PointGroup> {
    let d = eta.dim();
    if p.rows() != d {
        return Err(Error::DimensionMismatch(format!(
            "cloud has dimension {}, metric has {d}",
            p.rows()
        )));
    }
    let mask = select_columns(p, eta, tol.null_tol, tol.rank_tol)?;
    if let Some(&(j, _)) = mask
        .dropped
        .iter()
        .find(|(_, r)| *r == crate::linalg::DropReason::Null)
    {
        return Err(Error::DegenerateInput(format!("column {j} is null")));
    }
    if mask.rank() < d {
        return Err(Error::RankDeficient {
            rank: mask.rank(),
            required: d,
        });
    }
    for i in 0..p.cols() {
        for j in i + 1..p.cols() {
            let diff = (0..d).map(|k| (p[(k, i)] - p[(k, j)]).abs()).fold(0.0, f64::max);
            if diff <= tol.quant_step {
                return Err(Error::DegenerateInput(format!("columns {i} and {j} coincide")));
            }
        }
    }
    let g = frame_permutation(&gram_matrix(p, eta), tol)?;
    Ok(PointGroup {
        trivial: g.generators.is_empty(),
        order: g.aut_order,
        generators: g.generators,
    })
}
