use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Simple undirected graph with vertex colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredGraph {
    n: usize,
    adj: Vec<bool>,
    colors: Vec<usize>,
}

impl ColoredGraph {
    /// Uncolored graph from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self {
            n,
            adj: vec![false; n * n],
            colors: vec![0; n],
        };
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::DimensionMismatch(format!("edge ({u},{v}) with n={n}")));
            }
            if u == v {
                return Err(Error::InvalidSpec(format!("self-loop at {u}")));
            }
            g.adj[u * n + v] = true;
            g.adj[v * n + u] = true;
        }
        Ok(g)
    }

    /// From a symmetric 0/1 matrix with zero diagonal.
    pub fn from_adjacency(a: &Matrix<f64>) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n {
            return Err(Error::DimensionMismatch("adjacency must be square".into()));
        }
        let mut edges = Vec::new();
        for i in 0..n {
            if a[(i, i)] != 0.0 {
                return Err(Error::InvalidSpec(format!("nonzero diagonal at {i}")));
            }
            for j in i + 1..n {
                if a[(i, j)] != a[(j, i)] {
                    return Err(Error::NotSymmetric((a[(i, j)] - a[(j, i)]).abs()));
                }
                match a[(i, j)] {
                    0.0 => {}
                    1.0 => edges.push((i, j)),
                    x => return Err(Error::InvalidSpec(format!("entry {x} is not 0/1"))),
                }
            }
        }
        Self::from_edges(n, &edges)
    }

    /// Replaces the colors. Ids must be dense: every id below the maximum is used.
    pub fn with_colors(mut self, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{} colors for {} vertices",
                colors.len(),
                self.n
            )));
        }
        let k = colors.iter().max().map_or(0, |&m| m + 1);
        let mut used = vec![false; k];
        for &c in &colors {
            used[c] = true;
        }
        if used.iter().any(|&u| !u) {
            return Err(Error::InvalidSpec("color ids are not dense".into()));
        }
        self.colors = colors;
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn num_colors(&self) -> usize {
        self.colors.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_edge(u, v))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn adjacency(&self) -> Matrix<f64> {
        Matrix::from_fn(self.n, self.n, |i, j| f64::from(u8::from(self.has_edge(i, j))))
    }

    /// Graph with `B[i][j] = A[p(i)][p(j)]` and colors `c'[i] = c[p(i)]`.
    pub fn relabel(&self, p: &[usize]) -> Self {
        let n = self.n;
        let mut adj = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                adj[i * n + j] = self.has_edge(p[i], p[j]);
            }
        }
        Self {
            n,
            adj,
            colors: p.iter().map(|&x| self.colors[x]).collect(),
        }
    }

    /// Whether `p` maps edges to edges and preserves colors.
    pub fn is_automorphism(&self, p: &[usize]) -> bool {
        let n = self.n;
        if p.len() != n {
            return false;
        }
        (0..n).all(|u| self.colors[p[u]] == self.colors[u])
            && (0..n).all(|u| (u + 1..n).all(|v| self.has_edge(p[u], p[v]) == self.has_edge(u, v)))
    }
}

/// Ordered list of disjoint vertex cells covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderedPartition {
    pub cells: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn unit(n: usize) -> Self {
        Self {
            cells: if n == 0 { vec![] } else { vec![(0..n).collect()] },
        }
    }

    /// One cell per color id, ordered by id.
    pub fn from_colors(colors: &[usize]) -> Self {
        let k = colors.iter().max().map_or(0, |&m| m + 1);
        let mut cells = vec![Vec::new(); k];
        for (v, &c) in colors.iter().enumerate() {
            cells[c].push(v);
        }
        cells.retain(|c| !c.is_empty());
        Self { cells }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// Cell index of every vertex.
    pub fn cell_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (i, c) in self.cells.iter().enumerate() {
            for &v in c {
                out[v] = i;
            }
        }
        out
    }

    /// Checks that the cells are disjoint and cover `0..n`.
    pub fn is_partition_of(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for &v in self.cells.iter().flatten() {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }
}
