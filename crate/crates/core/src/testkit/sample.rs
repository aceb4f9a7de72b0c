use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::error::{Error, Result};
use crate::frames::{Group, GroupElement, GroupSpec};
use crate::graph::perm::{self, Perm};
use crate::linalg::{Matrix, Metric};
use crate::scalar::{Scalar, ScalarKind};

/// Rapidity range of sampled Lorentz boosts.
pub const MAX_RAPIDITY: f64 = 2.0;

/// Accepted `|det|` range for general linear samples.
pub const GL_DET_RANGE: (f64, f64) = (0.1, 10.0);

/// Resampling budget for general linear samples.
pub const GL_BUDGET: usize = 1000;

/// Standard normal scalar; complex draws have unit total variance.
pub fn gaussian<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    let re: f64 = StandardNormal.sample(rng);
    match T::KIND {
        ScalarKind::Real => T::from_real(re),
        ScalarKind::Complex => {
            let im: f64 = StandardNormal.sample(rng);
            T::from_complex(Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2)
        }
    }
}

pub fn gaussian_matrix<T: Scalar, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-distributed orthogonal (real) or unitary (complex) matrix.
///
/// Gram-Schmidt on a Gaussian matrix yields `R` with a positive diagonal,
/// which is the sign/phase normalization that makes `Q` Haar.
pub fn haar<T: Scalar, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Matrix<T> {
    loop {
        let g: Matrix<T> = gaussian_matrix(d, d, rng);
        if let Some(q) = gram_schmidt(&g) {
            return q;
        }
    }
}

fn gram_schmidt<T: Scalar>(a: &Matrix<T>) -> Option<Matrix<T>> {
    let d = a.rows();
    let mut cols: Vec<Vec<T>> = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let mut v = a.col(j);
        for q in &cols {
            let c: T = q.iter().zip(&v).map(|(&x, &y)| x.conj() * y).sum();
            for (vi, &qi) in v.iter_mut().zip(q) {
                *vi -= c * qi;
            }
        }
        let norm = v.iter().map(|x| x.modulus_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        v.iter_mut().for_each(|x| *x = x.scale(1.0 / norm));
        cols.push(v);
    }
    Some(Matrix::from_columns(d, &cols))
}

/// Uniform permutation of `0..n`.
pub fn random_perm<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Perm {
    let mut p = perm::identity(n);
    p.shuffle(rng);
    p
}

/// Random element of `G_η(d)`: `K₁ B K₂` with `K₁, K₂` block-orthogonal on the
/// positive and negative index sets and `B` a boost between the first positive
/// axis and a uniform direction in the negative subspace.
pub fn sample_g_eta<R: Rng + ?Sized>(eta: &Metric, special: bool, rng: &mut R) -> Matrix<f64> {
    let d = eta.dim();
    let pos: Vec<usize> = (0..d).filter(|&i| eta.sign(i) > 0.0).collect();
    let neg: Vec<usize> = (0..d).filter(|&i| eta.sign(i) < 0.0).collect();
    let k1 = block_orthogonal(d, &pos, &neg, rng);
    let k2 = block_orthogonal(d, &pos, &neg, rng);
    let mut g = if pos.is_empty() || neg.is_empty() {
        &k1 * &k2
    } else {
        let r = Uniform::new_inclusive(-MAX_RAPIDITY, MAX_RAPIDITY)
            .expect("valid range")
            .sample(rng);
        let dir = unit_vector(neg.len(), rng);
        let mut u = vec![0.0; d];
        for (&i, &x) in neg.iter().zip(&dir) {
            u[i] = x;
        }
        let a = pos[0];
        let (ch, sh) = (r.cosh() - 1.0, r.sinh());
        let boost = Matrix::from_fn(d, d, |i, j| {
            let ea = |k: usize| if k == a { 1.0 } else { 0.0 };
            let delta = if i == j { 1.0 } else { 0.0 };
            delta + ch * (ea(i) * ea(j) + u[i] * u[j]) + sh * (ea(i) * u[j] + u[i] * ea(j))
        });
        &(&k1 * &boost) * &k2
    };
    if special && g.det() < 0.0 {
        negate_col(&mut g, 0);
    }
    g
}

fn block_orthogonal<R: Rng + ?Sized>(d: usize, pos: &[usize], neg: &[usize], rng: &mut R) -> Matrix<f64> {
    let mut k = Matrix::zeros(d, d);
    for idx in [pos, neg] {
        if idx.is_empty() {
            continue;
        }
        let q: Matrix<f64> = haar(idx.len(), rng);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                k[(i, j)] = q[(a, b)];
            }
        }
    }
    k
}

fn unit_vector<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..k).map(|_| StandardNormal.sample(rng)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-8 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

fn negate_col<T: Scalar>(g: &mut Matrix<T>, j: usize) {
    for i in 0..g.rows() {
        g[(i, j)] = -g[(i, j)];
    }
}

/// Haar unitary, with the first column rotated so `det = 1` when `special`.
pub fn sample_unitary<R: Rng + ?Sized>(d: usize, special: bool, rng: &mut R) -> Matrix<Complex64> {
    let mut u: Matrix<Complex64> = haar(d, rng);
    if special {
        let fix = u.det().phase().conj();
        for i in 0..d {
            u[(i, 0)] *= fix;
        }
    }
    u
}

/// Gaussian matrix with `|det|` in [`GL_DET_RANGE`]; `special` rescales to `det = 1`.
pub fn sample_general_linear<R: Rng + ?Sized>(d: usize, special: bool, rng: &mut R) -> Result<Matrix<f64>> {
    for _ in 0..GL_BUDGET {
        let mut g: Matrix<f64> = gaussian_matrix(d, d, rng);
        let det = g.det();
        if !(GL_DET_RANGE.0..=GL_DET_RANGE.1).contains(&det.abs()) {
            continue;
        }
        if special {
            g = g.scale(det.abs().powf(-1.0 / d as f64));
            if det < 0.0 {
                for j in 0..d {
                    g[(0, j)] = -g[(0, j)];
                }
            }
        }
        return Ok(g);
    }
    Err(Error::SamplingExhausted(format!(
        "no general linear sample with |det| in {GL_DET_RANGE:?} after {GL_BUDGET} draws"
    )))
}

/// Random element of `group`; `n` is the node count for groups containing `S_n`.
pub fn sample_element<T: Scalar, R: Rng + ?Sized>(group: &Group, n: usize, rng: &mut R) -> Result<GroupElement<T>> {
    if group.scalar_kind() != T::KIND {
        return Err(Error::InvalidSpec(format!(
            "cannot sample {:?} elements as {:?} scalars",
            group.scalar_kind(),
            T::KIND
        )));
    }
    let real = |m: Matrix<f64>| m.map(T::from_real);
    Ok(match group {
        Group::Translation { d } => GroupElement::Translation((0..*d).map(|_| gaussian(rng)).collect()),
        Group::LinAlg { eta, special } => GroupElement::Linear(real(sample_g_eta(eta, *special, rng))),
        Group::Unitary { d, special } => {
            GroupElement::Linear(sample_unitary(*d, *special, rng).map(T::from_complex))
        }
        Group::Euclidean { d, special } => {
            let linear = real(sample_g_eta(&Metric::euclidean(*d), *special, rng));
            let shift = (0..*d).map(|_| gaussian(rng)).collect();
            GroupElement::Affine { linear, shift }
        }
        Group::GeneralLinear { d, special } => GroupElement::Linear(real(sample_general_linear(*d, *special, rng)?)),
        Group::Permutation => GroupElement::Permutation(random_perm(n, rng)),
        Group::Product { eta, special } => {
            let linear = real(sample_g_eta(eta, *special, rng));
            GroupElement::Product {
                perm: random_perm(n, rng),
                linear,
            }
        }
    })
}

/// Seeded convenience wrapper around [`sample_element`].
pub fn sample_group_element<T: Scalar>(spec: &GroupSpec, n: usize, seed: u64) -> Result<GroupElement<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_element(&spec.resolve()?, n, &mut rng)
}

/// Largest violation of the defining equations of `group` by `g`.
///
/// Translations and general linear elements only need to be invertible; the
/// residual for them is zero unless the determinant vanishes.
pub fn defining_residual<T: Scalar>(group: &Group, g: &GroupElement<T>) -> f64 {
    let det_residual = |m: &Matrix<T>, special: bool| {
        if special {
            (m.det() - T::one()).modulus()
        } else {
            0.0
        }
    };
    let eta_residual = |m: &Matrix<T>, eta: &Metric| {
        let e = eta.to_matrix::<T>();
        (&(&m.adjoint() * &e) * m).max_diff(&e)
    };
    match (group, g) {
        (Group::Translation { d }, GroupElement::Translation(t)) if t.len() == *d => 0.0,
        (Group::LinAlg { eta, special }, GroupElement::Linear(m)) if m.rows() == eta.dim() => {
            eta_residual(m, eta).max(det_residual(m, *special))
        }
        (Group::Unitary { d, special }, GroupElement::Linear(m)) if m.rows() == *d => {
            eta_residual(m, &Metric::euclidean(*d)).max(det_residual(m, *special))
        }
        (Group::Euclidean { d, special }, GroupElement::Affine { linear, shift }) if shift.len() == *d => {
            eta_residual(linear, &Metric::euclidean(*d)).max(det_residual(linear, *special))
        }
        (Group::GeneralLinear { d, special }, GroupElement::Linear(m)) if m.rows() == *d => {
            if m.det().modulus() == 0.0 {
                f64::INFINITY
            } else {
                det_residual(m, *special)
            }
        }
        (Group::Permutation, GroupElement::Permutation(p)) if perm::is_permutation(p) => 0.0,
        (Group::Product { eta, special }, GroupElement::Product { perm: p, linear }) if perm::is_permutation(p) => {
            eta_residual(linear, eta).max(det_residual(linear, *special))
        }
        _ => f64::INFINITY,
    }
}
