use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use minframe::testkit::{run_cell, ErrorReport};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{AuditConfig, Format};
use crate::Failure;

/// Environment variable capping the number of worker threads.
pub const THREADS_VAR: &str = "MINFRAME_THREADS";

#[derive(Serialize)]
struct JsonReport<'a> {
    seed: u64,
    threshold: f64,
    passed: bool,
    reports: &'a [ErrorReport],
}

pub fn run(config: Option<&Path>, seed: Option<u64>, output: Option<PathBuf>) -> Result<(), Failure> {
    let mut cfg = match config {
        Some(p) => AuditConfig::load(p).map_err(Failure::usage)?,
        None => AuditConfig::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if output.is_some() {
        cfg.output = output;
    }
    cfg.validate().context("invalid audit config").map_err(Failure::usage)?;
    let pool = thread_pool().map_err(Failure::usage)?;

    let cells = cfg.cells();
    let results: Vec<_> = pool.install(|| cells.par_iter().map(run_cell).collect());

    let mut reports = Vec::with_capacity(results.len());
    let mut failed = Vec::new();
    for (cell, r) in cells.iter().zip(results) {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => failed.push(format!("{} / {}: {e}", cell.spec.group, cell.backbone)),
        }
    }
    let breaches: Vec<&ErrorReport> = reports.iter().filter(|r| !within(r, cfg.threshold)).collect();
    let passed = failed.is_empty() && breaches.is_empty();

    let body = render(&cfg, &reports, passed).map_err(Failure::run)?;
    match &cfg.output {
        Some(path) => {
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display())).map_err(Failure::run)?;
            summarize(&mut std::io::stdout(), &reports, cfg.threshold);
        }
        None => {
            std::io::stdout().write_all(body.as_bytes()).map_err(Failure::run)?;
            summarize(&mut std::io::stderr(), &reports, cfg.threshold);
        }
    }

    for f in &failed {
        eprintln!("cell failed: {f}");
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::run(anyhow!(
            "{} of {} cells at or above threshold {:e}, {} failed to run",
            breaches.len(),
            cells.len(),
            cfg.threshold,
            failed.len()
        )))
    }
}

/// NaN errors count as breaches.
fn within(r: &ErrorReport, threshold: f64) -> bool {
    r.worst().partial_cmp(&threshold) == Some(std::cmp::Ordering::Less)
}

fn thread_pool() -> anyhow::Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let k: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&k| k > 0)
            .ok_or_else(|| anyhow!("{THREADS_VAR} must be a positive integer, got `{v}`"))?;
        builder = builder.num_threads(k);
    }
    Ok(builder.build()?)
}

fn render(cfg: &AuditConfig, reports: &[ErrorReport], passed: bool) -> anyhow::Result<String> {
    match cfg.format {
        Format::Json => {
            let doc = JsonReport {
                seed: cfg.seed,
                threshold: cfg.threshold,
                passed,
                reports,
            };
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in reports {
                w.serialize(r)?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
    }
}

fn summarize(out: &mut dyn Write, reports: &[ErrorReport], threshold: f64) {
    for r in reports {
        let status = if within(r, threshold) { "ok" } else { "BREACH" };
        let inv = r.invariance_error.map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"));
        let _ = writeln!(
            out,
            "{:<20} {:<6} {:<7} equivariance {:.3e}  invariance {:<10} {}",
            r.group.as_str(),
            r.backbone.as_str(),
            method_name(r),
            r.equivariance_error,
            inv,
            status
        );
    }
}

fn method_name(r: &ErrorReport) -> &'static str {
    match r.method {
        minframe::averaging::Method::Mfa => "mfa",
        minframe::averaging::Method::Plain => "plain",
        minframe::averaging::Method::FaEig => "fa_eig",
    }
}
