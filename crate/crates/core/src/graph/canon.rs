use std::cmp::Ordering;

use num_bigint::BigUint;

use super::perm::{self, Perm};
use super::refine::{individualize, refine_equitable};
use super::{ColoredGraph, OrderedPartition};

/// Canonical labeling of a colored graph together with its automorphism group.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonResult {
    /// `σ` with `canonical[i][j] = A[σ(i)][σ(j)]`.
    pub canonical_perm: Perm,
    pub canonical: ColoredGraph,
    /// Generators of `Aut(A)` acting on the input labels.
    pub aut_generators: Vec<Perm>,
    pub aut_order: BigUint,
}

struct Leaf {
    perm: Perm,
    cert: Vec<u64>,
    trace: Vec<u64>,
    path: Vec<usize>,
}

enum Flow {
    Continue,
    /// Abandon every node deeper than this level.
    JumpTo(usize),
}

struct Search<'a> {
    g: &'a ColoredGraph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Perm>,
    /// Orbit size of the first-path child at each level of the first path.
    level_orbits: Vec<usize>,
}

/// Individualization-refinement search for a canonical form.
///
/// Target cells are the first smallest non-singleton cell. Leaves are ranked
/// by the sequence of node invariants along their path, then by the relabeled
/// adjacency bits, then by the relabeled colors; the minimum is canonical.
/// Leaves with identical certificates yield automorphisms, which prune the
/// rest of the tree through orbit checks.
pub fn canonical_label(g: &ColoredGraph) -> CanonResult {
    let n = g.n();
    if n == 0 {
        return CanonResult {
            canonical_perm: vec![],
            canonical: g.clone(),
            aut_generators: vec![],
            aut_order: BigUint::from(1u32),
        };
    }
    let mut s = Search {
        g,
        first: None,
        best: None,
        gens: Vec::new(),
        level_orbits: Vec::new(),
    };
    let root = refine_equitable(g, &OrderedPartition::from_colors(g.colors()));
    let trace = vec![node_invariant(g, &root)];
    s.visit(root, Vec::new(), trace);

    let best = s.best.expect("search reaches at least one leaf");
    let aut_order = s
        .level_orbits
        .iter()
        .fold(BigUint::from(1u32), |acc, &k| acc * BigUint::from(k));
    CanonResult {
        canonical: g.relabel(&best.perm),
        canonical_perm: best.perm,
        aut_generators: s.gens,
        aut_order,
    }
}

impl Search<'_> {
    fn visit(&mut self, pi: OrderedPartition, path: Vec<usize>, trace: Vec<u64>) -> Flow {
        let depth = path.len();
        if pi.is_discrete() {
            return self.leaf(&pi, path, trace);
        }
        let on_first = self.first.as_ref().map_or(true, |f| f.path.len() >= depth && f.path[..depth] == path[..]);
        let target = pi
            .cells
            .iter()
            .filter(|c| c.len() > 1)
            .min_by_key(|c| c.len())
            .expect("non-discrete partition has a non-singleton cell")
            .clone();

        let mut explored: Vec<usize> = Vec::new();
        for &v in &target {
            if !explored.is_empty() {
                let stab: Vec<Perm> = self
                    .gens
                    .iter()
                    .filter(|g| path.iter().all(|&x| g[x] == x))
                    .cloned()
                    .collect();
                let orb = perm::orbits(&stab, self.g.n());
                if explored.iter().any(|&w| orb[w] == orb[v]) {
                    continue;
                }
            }
            explored.push(v);

            let child = refine_equitable(self.g, &individualize(&pi, v));
            let mut child_trace = trace.clone();
            child_trace.push(node_invariant(self.g, &child));
            if self.should_prune(&child_trace) {
                continue;
            }
            let mut child_path = path.clone();
            child_path.push(v);
            if let Flow::JumpTo(level) = self.visit(child, child_path, child_trace) {
                if level < depth {
                    return Flow::JumpTo(level);
                }
            }
        }

        if on_first {
            let stab: Vec<Perm> = self
                .gens
                .iter()
                .filter(|g| path.iter().all(|&x| g[x] == x))
                .cloned()
                .collect();
            let orb = perm::orbits(&stab, self.g.n());
            let first_child = target[0];
            let size = orb.iter().filter(|&&o| o == orb[first_child]).count();
            if self.level_orbits.len() <= depth {
                self.level_orbits.resize(depth + 1, 1);
            }
            self.level_orbits[depth] = size;
        }
        Flow::Continue
    }

    /// A node can be skipped when no leaf below it can be equivalent to the
    /// first leaf or beat the best leaf.
    fn should_prune(&self, trace: &[u64]) -> bool {
        let (Some(first), Some(best)) = (&self.first, &self.best) else {
            return false;
        };
        let matches_first = first.trace.len() >= trace.len() && first.trace[..trace.len()] == *trace;
        !matches_first && compare_prefix(trace, &best.trace) == Ordering::Greater
    }

    fn leaf(&mut self, pi: &OrderedPartition, path: Vec<usize>, trace: Vec<u64>) -> Flow {
        let perm: Perm = pi.cells.iter().map(|c| c[0]).collect();
        let cert = certificate(self.g, &perm);
        let leaf = Leaf {
            perm,
            cert,
            trace,
            path,
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                perm: leaf.perm.clone(),
                cert: leaf.cert.clone(),
                trace: leaf.trace.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return Flow::Continue;
        };
        if first.cert == leaf.cert {
            let level = common_prefix(&first.path, &leaf.path);
            let gamma = perm::compose(&first.perm, &perm::inverse(&leaf.perm));
            self.record(gamma);
            return Flow::JumpTo(level);
        }
        let best = self.best.as_ref().expect("set with first");
        match (leaf.trace.as_slice(), leaf.cert.as_slice()).cmp(&(best.trace.as_slice(), best.cert.as_slice())) {
            Ordering::Less => {
                self.best = Some(leaf);
                Flow::Continue
            }
            Ordering::Equal => {
                let level = common_prefix(&best.path, &leaf.path);
                let gamma = perm::compose(&best.perm, &perm::inverse(&leaf.perm));
                self.record(gamma);
                Flow::JumpTo(level)
            }
            Ordering::Greater => Flow::Continue,
        }
    }

    fn record(&mut self, gamma: Perm) {
        debug_assert!(self.g.is_automorphism(&gamma));
        if !perm::is_identity(&gamma) && !self.gens.contains(&gamma) {
            self.gens.push(gamma);
        }
    }
}

/// Order of a prefix against a full trace: `Greater` means every extension
/// of `prefix` sorts after `full`.
fn compare_prefix(prefix: &[u64], full: &[u64]) -> Ordering {
    let k = prefix.len().min(full.len());
    match prefix[..k].cmp(&full[..k]) {
        Ordering::Equal if prefix.len() > full.len() => Ordering::Greater,
        Ordering::Equal => Ordering::Equal,
        o => o,
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Isomorphism-invariant summary of an equitable partition: cell sizes,
/// cell colors and the quotient neighbor counts, folded into one word.
fn node_invariant(g: &ColoredGraph, pi: &OrderedPartition) -> u64 {
    let n = g.n();
    let cell_of = pi.cell_of(n);
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut mix = |x: u64| {
        h ^= x;
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    mix(pi.cells.len() as u64);
    for cell in &pi.cells {
        let u = cell[0];
        mix(cell.len() as u64);
        mix(g.colors()[u] as u64);
        let mut counts = vec![0u64; pi.cells.len()];
        for v in g.neighbors(u) {
            counts[cell_of[v]] += 1;
        }
        for c in counts {
            mix(c);
        }
    }
    // Keep one bit of headroom so traces never hit u64::MAX comparisons oddly.
    h >> 1
}

/// Adjacency bits (upper triangle, row-major) followed by colors, under `perm`.
fn certificate(g: &ColoredGraph, perm: &[usize]) -> Vec<u64> {
    let n = g.n();
    let mut words = vec![0u64; (n * n.saturating_sub(1) / 2).div_ceil(64)];
    let mut bit = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(perm[i], perm[j]) {
                words[bit / 64] |= 1 << (63 - bit % 64);
            }
            bit += 1;
        }
    }
    words.extend(perm.iter().map(|&v| g.colors()[v] as u64));
    words
}
