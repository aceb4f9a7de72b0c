use std::path::Path;

use anyhow::{anyhow, Context};
use minframe::frames::{
    frame_euclidean, frame_general_linear, frame_linalg, frame_permutation, frame_product,
    frame_translation, Group, GroupSpec, GroupTag, LinAlgFrame,
};
use minframe::linalg::parse_matrix;
use minframe::{DenseMatrix, Error, Matrix, Metric, Scalar, Tolerances};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::{json, Failure};

pub fn run(group: &str, matrix: &Path) -> Result<(), Failure> {
    let spec = parse_group(group).map_err(Failure::usage)?;
    let text = std::fs::read_to_string(matrix)
        .with_context(|| format!("reading {}", matrix.display()))
        .map_err(Failure::usage)?;
    let m = parse_matrix(&text)
        .with_context(|| format!("parsing {}", matrix.display()))
        .map_err(Failure::usage)?;
    let group = spec.resolve().map_err(classify)?;
    let mut out = describe(&group, &m, &Tolerances::default()).map_err(classify)?;
    out.insert("group".into(), json!(spec.group));
    println!("{}", Value::Object(out));
    Ok(())
}

/// Accepts a JSON spec or a bare tag such as `orthogonal`.
fn parse_group(s: &str) -> anyhow::Result<GroupSpec> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).context("parsing --group");
    }
    let tag: GroupTag = serde_json::from_value(json!(s)).map_err(|_| anyhow!("unknown group `{s}`"))?;
    Ok(GroupSpec::new(tag))
}

fn classify(e: Error) -> Failure {
    match e {
        Error::DimensionMismatch(_) | Error::InvalidSpec(_) | Error::Parse(_) | Error::NotSymmetric(_) => {
            Failure::usage(e)
        }
        _ => Failure::run(e),
    }
}

fn real(m: &DenseMatrix, group: &Group) -> Result<Matrix<f64>, Error> {
    match m {
        DenseMatrix::Real(r) => Ok(r.clone()),
        DenseMatrix::Complex(_) => Err(Error::InvalidSpec(format!("{group:?} acts on real matrices"))),
    }
}

fn check_rows(m: &DenseMatrix, d: usize) -> Result<(), Error> {
    let (rows, _) = m.shape();
    if rows != d {
        return Err(Error::DimensionMismatch(format!("matrix has {rows} rows, group dimension is {d}")));
    }
    Ok(())
}

fn describe(group: &Group, m: &DenseMatrix, tol: &Tolerances) -> Result<Map<String, Value>, Error> {
    if let Some(d) = group.dim() {
        check_rows(m, d)?;
    }
    let mut out = Map::new();
    match group {
        Group::Translation { .. } => {
            let p = real(m, group)?;
            let t = frame_translation(&p)?;
            let c = t.canonical(&p);
            out.insert("kind".into(), json!("translation"));
            out.insert("size".into(), json!(1));
            out.insert("t".into(), json!(t.t));
            out.insert("canonical_checksum".into(), json!(json::checksum(&c)));
        }
        Group::LinAlg { eta, special } => {
            let p = real(m, group)?;
            linalg(&mut out, &frame_linalg(&p, eta, *special, tol)?);
        }
        Group::Unitary { d, special } => {
            let p = match m {
                DenseMatrix::Real(r) => r.map(Complex64::from_real),
                DenseMatrix::Complex(c) => c.clone(),
            };
            linalg(&mut out, &frame_linalg(&p, &Metric::euclidean(*d), *special, tol)?);
        }
        Group::Euclidean { special, .. } => {
            let p = real(m, group)?;
            let (t, l) = frame_euclidean(&p, *special, tol)?;
            linalg(&mut out, &l);
            out.insert("kind".into(), json!("euclidean"));
            out.insert("t".into(), json!(t.t));
        }
        Group::GeneralLinear { special, .. } => {
            let p = real(m, group)?;
            let f = frame_general_linear(&p, *special, tol)?;
            out.insert("kind".into(), json!("general_linear"));
            out.insert("size".into(), json!(1));
            out.insert("kept_columns".into(), json!(f.mask.kept));
            out.insert("det".into(), json!(f.phi.det()));
            out.insert("element".into(), json::matrix(&f.element));
            out.insert("canonical".into(), json::matrix(&f.canonical));
            out.insert("canonical_checksum".into(), json!(json::checksum(&f.canonical)));
        }
        Group::Permutation => {
            let a = real(m, group)?;
            if a.rows() != a.cols() {
                return Err(Error::DimensionMismatch(format!("{}x{} matrix is not square", a.rows(), a.cols())));
            }
            let f = frame_permutation(&a, tol)?;
            out.insert("kind".into(), json!("permutation"));
            out.insert("n".into(), json!(a.rows()));
            out.insert("size".into(), json::big(&f.aut_order));
            out.insert("aut_order".into(), json::big(&f.aut_order));
            out.insert("canonical_perm".into(), json!(f.canonical_perm));
            out.insert("generators".into(), json!(f.generators));
            out.insert("canonical_checksum".into(), json!(json::checksum(&f.canonical)));
        }
        Group::Product { eta, special } => {
            let p = real(m, group)?;
            let f = frame_product(&p, eta, *special, tol)?;
            out.insert("kind".into(), json!("product"));
            out.insert("size".into(), json!(f.size()));
            out.insert("gram_aut_order".into(), json::big(&f.gram.aut_order));
            out.insert("canonical_perm".into(), json!(f.gram.canonical_perm));
            out.insert("coset_representatives".into(), json!(f.reps));
            out.insert("canonical_checksum".into(), json!(json::checksum(&f.gram.canonical)));
        }
    }
    Ok(out)
}

fn linalg<T: Scalar>(out: &mut Map<String, Value>, f: &LinAlgFrame<T>) {
    let indeterminate = f.qr.indeterminate();
    out.insert("kind".into(), json!("linalg"));
    out.insert("eta".into(), json!(f.eta.signature()));
    out.insert("special".into(), json!(f.special));
    out.insert("rank".into(), json!(f.rank()));
    // An indeterminate column leaves a continuous stabilizer.
    out.insert("size".into(), f.finite_size().map_or(json!("infinite"), |s| json!(s)));
    out.insert("kept_columns".into(), json!(f.mask.kept));
    out.insert("dropped_columns".into(), json!(f.mask.dropped));
    out.insert("indeterminate_slots".into(), json!(indeterminate));
    out.insert("det_adjust".into(), json!(f.qr.det_adjust));
    out.insert("q_hat".into(), json::matrix(&f.qr.q_hat));
    out.insert("r_hat".into(), json::matrix(f.canonical()));
    out.insert("canonical_checksum".into(), json!(json::checksum(f.canonical())));
}
