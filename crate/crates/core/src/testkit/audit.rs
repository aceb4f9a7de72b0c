use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::backbones::{Toy, ToyKind};
use super::data::{make_degenerate_cloud, random_input};
use super::sample::sample_element;
use crate::averaging::{Averager, Backbone, Counted, Method, Mode};
use crate::error::Result;
use crate::frames::{Group, GroupSpec, GroupTag};
use crate::linalg::Matrix;
use crate::scalar::{Scalar, ScalarKind};

pub const REPORT_SCHEMA: u32 = 1;

/// Outcome of one (group, backbone, method) audit cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub schema: u32,
    pub group: GroupTag,
    pub backbone: ToyKind,
    pub method: Method,
    /// Number of (datum, group element) pairs.
    pub samples: usize,
    /// Mean entrywise L1 norm of `Φ(g·x) − g·Φ(x)`.
    pub equivariance_error: f64,
    /// Mean entrywise L1 norm of `Φ(g·x) − Φ(x)` for the invariant operator;
    /// reported for groups containing `S_n`.
    pub invariance_error: Option<f64>,
    pub seconds_per_sample: Option<f64>,
    pub backbone_calls: usize,
}

impl ErrorReport {
    /// Largest of the reported errors.
    pub fn worst(&self) -> f64 {
        self.equivariance_error.max(self.invariance_error.unwrap_or(0.0))
    }
}

/// Mean L1 discrepancy `‖Ψ(g·x) − g·Ψ(x)‖₁` over `data` and
/// `samples_per_datum` sampled elements per datum.
pub fn equivariance_error<T: Scalar, R: Rng + ?Sized>(
    wrapped: impl Fn(&Matrix<T>) -> Result<Matrix<T>>,
    group: &Group,
    data: &[Matrix<T>],
    samples_per_datum: usize,
    rng: &mut R,
) -> Result<f64> {
    discrepancy(wrapped, group, data, samples_per_datum, rng, true)
}

/// Mean L1 discrepancy `‖Ψ(g·x) − Ψ(x)‖₁`.
pub fn invariance_error<T: Scalar, R: Rng + ?Sized>(
    wrapped: impl Fn(&Matrix<T>) -> Result<Matrix<T>>,
    group: &Group,
    data: &[Matrix<T>],
    samples_per_datum: usize,
    rng: &mut R,
) -> Result<f64> {
    discrepancy(wrapped, group, data, samples_per_datum, rng, false)
}

fn discrepancy<T: Scalar, R: Rng + ?Sized>(
    wrapped: impl Fn(&Matrix<T>) -> Result<Matrix<T>>,
    group: &Group,
    data: &[Matrix<T>],
    samples_per_datum: usize,
    rng: &mut R,
    transport: bool,
) -> Result<f64> {
    let mut total = 0.0;
    let mut count = 0usize;
    for x in data {
        let y = wrapped(x)?;
        for _ in 0..samples_per_datum {
            let g = sample_element::<T, _>(group, x.cols(), rng)?;
            let lhs = wrapped(&g.act_input(x)?)?;
            let rhs = if transport { g.act_output(&y)? } else { y.clone() };
            total += (&lhs - &rhs).l1();
            count += 1;
        }
    }
    Ok(if count == 0 { 0.0 } else { total / count as f64 })
}

/// One cell of an audit grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditCell {
    pub spec: GroupSpec,
    pub backbone: ToyKind,
    pub method: Method,
    /// Points per cloud, or nodes per graph.
    pub n: usize,
    pub data_count: usize,
    pub samples_per_datum: usize,
    pub seed: u64,
    /// Replace Gaussian clouds by clouds with this many repeated singular values.
    pub degenerate: Option<usize>,
    /// Lift repeated eigenvalues in the eigendecomposition frame.
    pub perturb: bool,
    pub timing: bool,
}

impl AuditCell {
    pub fn new(spec: GroupSpec, backbone: ToyKind, method: Method) -> Self {
        Self {
            spec,
            backbone,
            method,
            n: 8,
            data_count: 100,
            samples_per_datum: 10,
            seed: 0,
            degenerate: None,
            perturb: true,
            timing: false,
        }
    }

    /// Stream id that separates the random sequences of different cells
    /// sharing one seed.
    fn stream(&self) -> u64 {
        let g = GroupTag::ALL.iter().position(|&t| t == self.spec.group).unwrap_or(0) as u64;
        let method = match self.method {
            Method::Mfa => 0,
            Method::Plain => 1,
            Method::FaEig => 2,
        };
        (g << 16) | ((self.backbone as u64) << 8) | method
    }
}

/// Runs `cell` and summarizes it.
pub fn run_cell(cell: &AuditCell) -> Result<ErrorReport> {
    let group = cell.spec.resolve()?;
    match group.scalar_kind() {
        ScalarKind::Real => run_typed::<f64>(cell, &group),
        ScalarKind::Complex => run_typed::<Complex64>(cell, &group),
    }
}

fn run_typed<T: Scalar>(cell: &AuditCell, group: &Group) -> Result<ErrorReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cell.seed);
    rng.set_stream(cell.stream());
    let data: Vec<Matrix<T>> = match (cell.degenerate, group.dim()) {
        (Some(k), Some(d)) => (0..cell.data_count)
            .map(|_| Ok(make_degenerate_cloud(d, cell.n, k, rng.random())?.map(T::from_real)))
            .collect::<Result<_>>()?,
        _ => (0..cell.data_count).map(|_| random_input(group, cell.n, &mut rng)).collect(),
    };
    let phi = Counted::new(Toy::new(cell.backbone, cell.seed));
    let averager = |mode| {
        let mut a = Averager::new(group.clone(), cell.method, mode);
        a.perturb = cell.perturb;
        a
    };
    let start = Instant::now();
    let eq = averager(Mode::Equivariant);
    let equivariance = equivariance_error(
        |x: &Matrix<T>| eq.apply(&phi as &dyn Backbone<T>, x),
        group,
        &data,
        cell.samples_per_datum,
        &mut rng,
    )?;
    let invariance = match group {
        Group::Permutation | Group::Product { .. } => {
            let inv = averager(Mode::Invariant);
            Some(invariance_error(
                |x: &Matrix<T>| inv.apply(&phi as &dyn Backbone<T>, x),
                group,
                &data,
                cell.samples_per_datum,
                &mut rng,
            )?)
        }
        _ => None,
    };
    let samples = cell.data_count * cell.samples_per_datum;
    let elapsed = start.elapsed().as_secs_f64();
    Ok(ErrorReport {
        schema: REPORT_SCHEMA,
        group: cell.spec.group,
        backbone: cell.backbone,
        method: cell.method,
        samples,
        equivariance_error: equivariance,
        invariance_error: invariance,
        seconds_per_sample: (cell.timing && samples > 0).then(|| elapsed / samples as f64),
        backbone_calls: phi.calls(),
    })
}

/// Every group tag crossed with the default backbones.
pub fn default_grid(method: Method, seed: u64) -> Vec<AuditCell> {
    GroupTag::ALL
        .iter()
        .flat_map(|&tag| {
            ToyKind::DEFAULT.iter().map(move |&b| AuditCell {
                seed,
                ..AuditCell::new(GroupSpec::new(tag), b, method)
            })
        })
        .collect()
}
