//! graph6 encoding of simple undirected graphs.

use super::ColoredGraph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub fn encode_graph6(g: &ColoredGraph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn decode_graph6(line: &str) -> Result<ColoredGraph> {
    let line = line.trim();
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 line".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("byte {b} outside graph6 range")));
    }
    let six = |s: &[u8]| s.iter().fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
    let (n, body) = if bytes[0] != 126 {
        (six(&bytes[..1]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated graph6 size".into()));
        }
        (six(&bytes[1..4]), &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(Error::Parse("truncated graph6 size".into()));
        }
        (six(&bytes[2..8]), &bytes[8..])
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {need} for n={n}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    let tail = nbits % 6;
    if tail != 0 && (body[need - 1] - 63) & ((1 << (6 - tail)) - 1) != 0 {
        return Err(Error::Parse("nonzero padding bits".into()));
    }
    ColoredGraph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_encodings() {
        let k3 = ColoredGraph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(encode_graph6(&k3), "Bw");
        let c4 = ColoredGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(decode_graph6("Cl").unwrap(), c4);
        assert_eq!(decode_graph6(">>graph6<<Bw").unwrap(), k3);
    }

    #[test]
    fn large_round_trip() {
        let edges: Vec<_> = (0..99).map(|i| (i, i + 1)).collect();
        let g = ColoredGraph::from_edges(100, &edges).unwrap();
        assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn malformed_lines() {
        assert!(decode_graph6("").is_err());
        assert!(decode_graph6("C").is_err());
        assert!(decode_graph6("B\x01").is_err());
    }
}
