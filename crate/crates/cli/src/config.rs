use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use minframe::averaging::Method;
use minframe::frames::{Group, GroupSpec, GroupTag};
use minframe::testkit::{AuditCell, ToyKind};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// A group given either as a bare tag or as a full spec object.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum GroupEntry {
    Tag(GroupTag),
    Spec(GroupSpec),
}

impl GroupEntry {
    fn spec(&self) -> GroupSpec {
        match self {
            GroupEntry::Tag(t) => GroupSpec::new(*t),
            GroupEntry::Spec(s) => s.clone(),
        }
    }
}

/// Audit settings. Every key is optional; unknown keys are rejected.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditConfig {
    #[serde(default = "all_groups")]
    groups: Vec<GroupEntry>,
    #[serde(default = "default_backbones")]
    pub backbones: Vec<ToyKind>,
    #[serde(default = "default_method")]
    pub method: Method,
    /// Point dimension for groups whose spec leaves `d` unset.
    #[serde(default)]
    pub d: Option<usize>,
    /// Points per cloud, or nodes per graph.
    #[serde(default = "default_n")]
    pub n: usize,
    /// Inputs drawn per cell.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Group elements drawn per input.
    #[serde(default = "default_elements")]
    pub elements_per_sample: usize,
    #[serde(default)]
    pub seed: u64,
    /// Draw clouds whose leading singular value repeats this many times.
    #[serde(default)]
    pub degenerate: Option<usize>,
    #[serde(default = "yes")]
    pub perturb: bool,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
    /// Report destination; stdout when absent.
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub format: Format,
    /// Record wall-clock time per sample. Makes reports non-reproducible.
    #[serde(default)]
    pub timing: bool,
}

fn all_groups() -> Vec<GroupEntry> {
    GroupTag::ALL.iter().map(|&t| GroupEntry::Tag(t)).collect()
}

fn default_backbones() -> Vec<ToyKind> {
    ToyKind::DEFAULT.to_vec()
}

fn default_method() -> Method {
    Method::Mfa
}

fn default_n() -> usize {
    8
}

fn default_samples() -> usize {
    100
}

fn default_elements() -> usize {
    10
}

fn yes() -> bool {
    true
}

fn default_threshold() -> f64 {
    1e-6
}

fn default_format() -> Format {
    Format::Json
}

impl Default for AuditConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("empty config is valid")
    }
}

impl AuditConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// Group specs with the config-wide `d` filled in.
    pub fn specs(&self) -> Vec<GroupSpec> {
        self.groups
            .iter()
            .map(|g| {
                let mut s = g.spec();
                if s.d.is_none() && s.group != GroupTag::Permutation {
                    s.d = self.d;
                }
                s
            })
            .collect()
    }

    /// Checks everything that can be checked without running a cell.
    pub fn validate(&self) -> anyhow::Result<()> {
        if self.groups.is_empty() {
            bail!("`groups` is empty");
        }
        if self.backbones.is_empty() {
            bail!("`backbones` is empty");
        }
        if self.n == 0 || self.samples == 0 || self.elements_per_sample == 0 {
            bail!("`n`, `samples` and `elements_per_sample` must be positive");
        }
        if !(self.threshold.is_finite() && self.threshold > 0.0) {
            bail!("`threshold` must be a positive number, got {}", self.threshold);
        }
        for spec in self.specs() {
            let group = spec
                .resolve()
                .with_context(|| format!("group {}", spec.group))?;
            if self.method == Method::FaEig && !eig_frame_covers(&group) {
                bail!("method fa_eig does not cover {}", spec.group);
            }
            if let (Some(k), Some(d)) = (self.degenerate, group.dim()) {
                let m = d.min(self.n);
                if k == 0 || k > m {
                    bail!("`degenerate` = {k} must lie in 1..={m} for {} with n = {}", spec.group, self.n);
                }
            }
        }
        Ok(())
    }

    /// Cells in report order: groups sorted by tag, then backbones.
    pub fn cells(&self) -> Vec<AuditCell> {
        let mut specs = self.specs();
        specs.sort_by_key(|s| s.group);
        let mut backbones = self.backbones.clone();
        backbones.sort();
        backbones.dedup();
        specs
            .into_iter()
            .flat_map(|spec| {
                backbones.iter().map(move |&b| AuditCell {
                    n: self.n,
                    data_count: self.samples,
                    samples_per_datum: self.elements_per_sample,
                    seed: self.seed,
                    degenerate: self.degenerate,
                    perturb: self.perturb,
                    timing: self.timing,
                    ..AuditCell::new(spec.clone(), b, self.method)
                })
            })
            .collect()
    }
}

fn eig_frame_covers(group: &Group) -> bool {
    match group {
        Group::LinAlg { eta, .. } => eta.is_euclidean(),
        Group::Euclidean { .. } => true,
        _ => false,
    }
}
