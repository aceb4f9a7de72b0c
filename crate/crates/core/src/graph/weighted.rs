use std::collections::BTreeMap;

use super::canon::{canonical_label, CanonResult};
use super::perm::Perm;
use super::ColoredGraph;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Symmetric real weight matrix; diagonal entries are vertex weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    weights: Matrix<f64>,
}

impl WeightedGraph {
    pub fn new(weights: Matrix<f64>) -> Result<Self> {
        if weights.rows() != weights.cols() {
            return Err(Error::DimensionMismatch(format!(
                "weight matrix is {}x{}",
                weights.rows(),
                weights.cols()
            )));
        }
        if !weights.is_finite() {
            return Err(Error::InvalidSpec("non-finite weight".into()));
        }
        let asym = weights.max_diff(&weights.transpose());
        if asym > 1e-12 * weights.max_abs().max(1.0) {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(Self { weights })
    }

    pub fn n(&self) -> usize {
        self.weights.rows()
    }

    pub fn weights(&self) -> &Matrix<f64> {
        &self.weights
    }

    pub fn is_automorphism(&self, p: &[usize], step: f64) -> bool {
        let n = self.n();
        p.len() == n
            && (0..n).all(|i| {
                (0..n).all(|j| quantize(self.weights[(p[i], p[j])], step) == quantize(self.weights[(i, j)], step))
            })
    }
}

/// Colored graph encoding of a weighted graph.
///
/// Vertices `0..n` are the original vertices colored by their quantized
/// diagonal weight; each nonzero off-diagonal pair gets an extra vertex
/// adjacent to both endpoints and colored by its quantized weight.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedEncoding {
    pub graph: ColoredGraph,
    pub n_original: usize,
    /// Pairs of raw weights further apart than ten buckets that share a key.
    pub collisions: Vec<(f64, f64)>,
}

pub fn quantize(w: f64, step: f64) -> i64 {
    (w / step).round() as i64
}

pub fn weighted_to_colored(w: &WeightedGraph, step: f64) -> WeightedEncoding {
    let n = w.n();
    let a = w.weights();
    let mut buckets: BTreeMap<i64, (f64, f64)> = BTreeMap::new();
    let mut note = |k: i64, x: f64| {
        let e = buckets.entry(k).or_insert((x, x));
        e.0 = e.0.min(x);
        e.1 = e.1.max(x);
    };

    let vkeys: Vec<i64> = (0..n).map(|i| quantize(a[(i, i)], step)).collect();
    for i in 0..n {
        note(vkeys[i], a[(i, i)]);
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let k = quantize(a[(i, j)], step);
            if k != 0 {
                note(k, a[(i, j)]);
                pairs.push((i, j, k));
            }
        }
    }

    let vcolor = dense_ranks(&vkeys);
    let offset = vcolor.iter().max().map_or(0, |&m| m + 1);
    let ekeys: Vec<i64> = pairs.iter().map(|p| p.2).collect();
    let ecolor = dense_ranks(&ekeys);

    let total = n + pairs.len();
    let mut edges = Vec::with_capacity(2 * pairs.len());
    let mut colors = vcolor;
    for (idx, &(i, j, _)) in pairs.iter().enumerate() {
        edges.push((i, n + idx));
        edges.push((j, n + idx));
        colors.push(offset + ecolor[idx]);
    }
    let graph = ColoredGraph::from_edges(total, &edges)
        .and_then(|g| g.with_colors(colors))
        .expect("encoding produces a valid colored graph");
    let collisions = buckets
        .values()
        .filter(|(lo, hi)| hi - lo > 10.0 * step)
        .map(|&(lo, hi)| (lo, hi))
        .collect();
    WeightedEncoding {
        graph,
        n_original: n,
        collisions,
    }
}

/// Canonical labeling of a weighted graph, restricted to the original vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedCanon {
    /// `σ` with `canonical[i][j] = W[σ(i)][σ(j)]`.
    pub canonical_perm: Perm,
    /// Automorphism generators on the original vertices.
    pub aut_generators: Vec<Perm>,
    pub aut_order: num_bigint::BigUint,
    pub collisions: Vec<(f64, f64)>,
}

pub fn canonical_label_weighted(w: &WeightedGraph, step: f64) -> WeightedCanon {
    let enc = weighted_to_colored(w, step);
    let n = enc.n_original;
    let CanonResult {
        canonical_perm,
        aut_generators,
        aut_order,
        ..
    } = canonical_label(&enc.graph);
    // Vertex colors are all below edge-node colors and the canonical form is
    // sorted by color first, so original vertices occupy the first n slots.
    let perm: Perm = canonical_perm[..n].to_vec();
    debug_assert!(perm.iter().all(|&v| v < n));
    let mut gens: Vec<Perm> = Vec::new();
    for g in aut_generators {
        let r: Perm = g[..n].to_vec();
        if !super::perm::is_identity(&r) && !gens.contains(&r) {
            gens.push(r);
        }
    }
    WeightedCanon {
        canonical_perm: perm,
        aut_generators: gens,
        aut_order,
        collisions: enc.collisions,
    }
}

fn dense_ranks(keys: &[i64]) -> Vec<usize> {
    let mut uniq = keys.to_vec();
    uniq.sort_unstable();
    uniq.dedup();
    keys.iter()
        .map(|k| uniq.binary_search(k).expect("key present"))
        .collect()
}
