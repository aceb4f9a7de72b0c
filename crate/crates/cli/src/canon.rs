use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, Context};
use minframe::graph::{canonical_label, decode_graph6, encode_graph6};
use serde_json::{json, Value};

use crate::{json, Failure};

const HEADER: &str = ">>graph6<<";

/// One JSON line per non-blank input line. Malformed lines produce an
/// `error` record and make the command exit 1 after the whole file is read.
pub fn run(path: &Path) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::usage)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut bad = 0usize;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line == HEADER {
            continue;
        }
        let rec = record(i + 1, line);
        if rec.get("error").is_some() {
            bad += 1;
        }
        writeln!(out, "{rec}").map_err(Failure::run)?;
    }
    if bad > 0 {
        return Err(Failure::run(anyhow!("{bad} malformed graph6 line(s)")));
    }
    Ok(())
}

fn record(line_no: usize, line: &str) -> Value {
    match decode_graph6(line) {
        Err(e) => json!({ "line": line_no, "input": line, "error": e.to_string() }),
        Ok(g) => {
            let c = canonical_label(&g);
            json!({
                "line": line_no,
                "n": g.n(),
                "canonical_g6": encode_graph6(&c.canonical),
                "aut_order": json::big(&c.aut_order),
                "n_generators": c.aut_generators.len(),
                "generators": c.aut_generators,
            })
        }
    }
}
