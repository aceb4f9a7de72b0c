use super::eig::{degeneracy_excess, eig_sym, eigen_clusters};
use super::mask::select_columns;
use super::metric::{euclid_inner, norm};
use super::{Matrix, Metric};
use crate::config::Tolerances;
use crate::error::{Error, Result};

/// Outcome of [`perturb_degenerate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Perturbation {
    /// Column weights `z`; `P diag(1 + z) Pᵀ` has simple nonzero eigenvalues.
    pub z: Vec<f64>,
    /// Accepted rank-one steps.
    pub steps: usize,
}

/// Lifts repeated nonzero eigenvalues of `P Pᵀ` by reweighting columns of `P`.
///
/// Each step takes the first degenerate eigenspace, builds an orthonormal
/// basis from the projected columns of `P`, and scales the first unused column
/// with a nonzero component in that eigenspace so the eigenvalue moves by a
/// relative `eps`. `eps` grows by `eps_incr` until the step strictly reduces
/// the total multiplicity excess. Every quantity involved is a function of
/// `PᵀP`, so `z` is `O(d)`-invariant.
pub fn perturb_degenerate(p: &Matrix<f64>, tol: &Tolerances) -> Result<Perturbation> {
    let (d, n) = p.shape();
    if p.max_abs() == 0.0 {
        return Err(Error::DegenerateInput("zero matrix".into()));
    }
    let params = tol.perturb;
    let spectrum = |m: &Matrix<f64>| eig_sym(&(m * &m.transpose()), tol.sym_tol);

    let mut cur = p.clone();
    let mut z = vec![1.0; n];
    let mut used = vec![false; n];
    let mut steps = 0;
    loop {
        let eig = spectrum(&cur)?;
        let excess = degeneracy_excess(&eig.values, tol.eig_tol, tol.zero_eig_tol);
        if excess == 0 {
            break;
        }
        let cluster = eigen_clusters(&eig.values, tol.eig_tol, tol.zero_eig_tol)
            .into_iter()
            .find(|r| r.len() > 1)
            .expect("excess > 0 implies a degenerate cluster");
        let mult = cluster.len();
        let lambda = eig.values[cluster.clone()].iter().sum::<f64>() / mult as f64;

        let basis = eig.vectors.select_columns(&cluster.collect::<Vec<_>>());
        let proj = &basis * &(&basis.transpose() * &cur);
        let mask = select_columns(&proj, &Metric::euclidean(d), tol.null_tol, tol.rank_tol)?;
        let mut vs: Vec<Vec<f64>> = Vec::with_capacity(mult);
        for &j in mask.kept.iter().take(mult) {
            let mut v = proj.col(j);
            for _ in 0..2 {
                for b in &vs {
                    let c = euclid_inner(b, &v);
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x -= c * y;
                    }
                }
            }
            let nv = norm(&v);
            vs.push(v.into_iter().map(|x| x / nv).collect());
        }
        let vmat = Matrix::from_columns(d, &vs);
        let proj_coords = &cur.transpose() * &vmat;

        let pick = (0..n).find_map(|k| {
            if used[k] {
                return None;
            }
            let usq: f64 = proj_coords.row(k).iter().map(|x| x * x).sum();
            (usq > tol.zero_eig_tol * lambda).then_some((k, usq))
        });
        let Some((k, usq)) = pick else {
            return Err(Error::PerturbationExhausted(format!(
                "no unused column touches the eigenspace of {lambda:e}"
            )));
        };
        used[k] = true;

        let mut eps = params.eps_start;
        let mut accepted = None;
        for _ in 0..params.max_subiter {
            let zk = eps * lambda / usq;
            let mut trial = cur.clone();
            let s = (1.0 + zk).sqrt();
            for i in 0..d {
                trial[(i, k)] *= s;
            }
            let e2 = spectrum(&trial)?;
            if degeneracy_excess(&e2.values, tol.eig_tol, tol.zero_eig_tol) < excess {
                accepted = Some((trial, zk));
                break;
            }
            eps += params.eps_incr;
        }
        let Some((trial, zk)) = accepted else {
            return Err(Error::PerturbationExhausted(format!(
                "{} attempts on column {k}",
                params.max_subiter
            )));
        };
        cur = trial;
        z[k] *= 1.0 + zk;
        steps += 1;
    }
    Ok(Perturbation {
        z: z.into_iter().map(|w| w - 1.0).collect(),
        steps,
    })
}
