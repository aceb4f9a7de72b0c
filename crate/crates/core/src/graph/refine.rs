use super::{ColoredGraph, OrderedPartition};

/// Coarsest equitable refinement of `pi`.
///
/// Each round splits every cell by the vector of neighbor counts into all
/// cells; sub-cells replace their parent in place, ordered by that vector
/// ascending. Rounds repeat until nothing splits. The result depends only on
/// counts, never on vertex labels, so it commutes with relabeling.
pub fn refine_equitable(g: &ColoredGraph, pi: &OrderedPartition) -> OrderedPartition {
    let n = g.n();
    let mut cells: Vec<Vec<usize>> = pi.cells.iter().map(|c| sorted(c)).collect();
    loop {
        let cell_of = cell_index(&cells, n);
        let k = cells.len();
        let mut counts = vec![0u32; n * k];
        for u in 0..n {
            for v in g.neighbors(u) {
                counts[u * k + cell_of[v]] += 1;
            }
        }
        let mut next = Vec::with_capacity(k);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(&[u32], usize)> = cell
                .iter()
                .map(|&v| (&counts[v * k..(v + 1) * k], v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return OrderedPartition { cells: next };
        }
        cells = next;
    }
}

/// Moves `v` to a singleton cell placed just before the rest of its cell.
pub fn individualize(pi: &OrderedPartition, v: usize) -> OrderedPartition {
    let mut cells = Vec::with_capacity(pi.cells.len() + 1);
    for c in &pi.cells {
        if c.contains(&v) && c.len() > 1 {
            cells.push(vec![v]);
            cells.push(c.iter().copied().filter(|&x| x != v).collect());
        } else {
            cells.push(c.clone());
        }
    }
    OrderedPartition { cells }
}

/// Whether every vertex of a cell has the same number of neighbors in each cell.
pub fn is_equitable(g: &ColoredGraph, pi: &OrderedPartition) -> bool {
    let cell_of = cell_index(&pi.cells, g.n());
    let k = pi.cells.len();
    let profile = |u: usize| {
        let mut c = vec![0usize; k];
        for v in g.neighbors(u) {
            c[cell_of[v]] += 1;
        }
        c
    };
    pi.cells.iter().all(|cell| {
        let first = profile(cell[0]);
        cell.iter().all(|&u| profile(u) == first)
    })
}

fn sorted(c: &[usize]) -> Vec<usize> {
    let mut c = c.to_vec();
    c.sort_unstable();
    c
}

fn cell_index(cells: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for (i, c) in cells.iter().enumerate() {
        for &v in c {
            out[v] = i;
        }
    }
    out
}
