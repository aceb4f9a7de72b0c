mod common;

use std::collections::BTreeSet;

use minframe::frames::{
    detect_point_group, frame_euclidean, frame_general_linear, frame_linalg, frame_permutation,
    frame_product, frame_translation, GroupElement, GroupSpec, GroupTag,
};
use minframe::graph::perm;
use minframe::testkit::{
    gaussian_matrix, random_perm, random_weighted_graph, sample_element, sample_g_eta,
    sample_general_linear,
};
use minframe::{Error, Matrix, Metric, Tolerances};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn permutation_frame_transports_as_a_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for t in 0..40 {
        let n = rng.random_range(3..=6);
        let a = if t % 2 == 0 {
            random_weighted_graph(n, &mut rng)
        } else {
            Matrix::from_fn(n, n, |i, j| if (i + 1) % n == j || (j + 1) % n == i { 1.0 } else { 0.0 })
        };
        let g = random_perm(n, &mut rng);
        let ga = GroupElement::Permutation(g.clone()).act_input(&a).unwrap();
        let frame = |m: &Matrix<f64>| -> BTreeSet<Vec<usize>> {
            let fd = frame_permutation(m, &tol()).unwrap();
            fd.elements(10_000).unwrap().into_iter().collect()
        };
        let fa = frame(&a);
        let fga = frame(&ga);
        let transported: BTreeSet<Vec<usize>> = fa.iter().map(|f| perm::compose(&g, f)).collect();
        assert_eq!(fga, transported, "graph {t}");
        assert_eq!(fa.len(), common::brute_aut_order(&a));
        // Every element maps the input to the canonical form.
        let fd = frame_permutation(&a, &tol()).unwrap();
        for f in &fa {
            let back = GroupElement::Permutation(f.clone()).inverse().unwrap().act_input(&a).unwrap();
            assert_eq!(back, fd.canonical);
        }
    }
}

#[test]
fn permutation_canonical_form_and_stabilizer_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let n = rng.random_range(2..=7);
        let a = random_weighted_graph(n, &mut rng);
        let g = random_perm(n, &mut rng);
        let ga = GroupElement::Permutation(g.clone()).act_input(&a).unwrap();
        let fa = frame_permutation(&a, &tol()).unwrap();
        let fga = frame_permutation(&ga, &tol()).unwrap();
        assert_eq!(fa.canonical, fga.canonical);
        assert_eq!(fa.aut_order, fga.aut_order);
        // Conjugated generators fix the moved graph.
        for s in &fa.generators {
            let c = perm::compose(&perm::compose(&g, s), &perm::inverse(&g));
            assert!(common::preserves(&ga, &c));
        }
    }
}

#[test]
fn triangle_frame_averages_to_uniform() {
    let a = Matrix::from_fn(3, 3, |i, j| if i == j { 0.0 } else { 1.0 });
    let fd = frame_permutation(&a, &tol()).unwrap();
    assert_eq!(fd.aut_order, 6u32.into());
    let third = Matrix::from_fn(3, 3, |_, _| 1.0 / 3.0);
    assert!(fd.orbit_average.max_diff(&third) < 1e-15);
}

#[test]
fn continuous_canonical_forms_are_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for tag in [
        GroupTag::Orthogonal,
        GroupTag::SpecialOrthogonal,
        GroupTag::Lorentz,
        GroupTag::SpecialLorentz,
    ] {
        let group = GroupSpec::new(tag).resolve().unwrap();
        let minframe::frames::Group::LinAlg { eta, special } = group.clone() else { unreachable!() };
        for _ in 0..100 {
            let p: Matrix<f64> = gaussian_matrix(eta.dim(), 6, &mut rng);
            let g = sample_element::<f64, _>(&group, 6, &mut rng).unwrap();
            let moved = g.act_input(&p).unwrap();
            let a = frame_linalg(&p, &eta, special, &tol()).unwrap();
            let b = frame_linalg(&moved, &eta, special, &tol()).unwrap();
            let scale = a.canonical().max_abs().max(1.0);
            assert!(a.canonical().max_diff(b.canonical()) < 1e-8 * scale, "{tag}");
            assert!(a.p0.max_diff(&b.p0) < 1e-8 * scale, "{tag}");
            assert_eq!(a.finite_size(), Some(1));
        }
    }
}

#[test]
fn unitary_canonical_form_is_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let eta = Metric::euclidean(3);
    for special in [false, true] {
        let group = GroupSpec {
            special,
            ..GroupSpec::new(GroupTag::Unitary)
        }
        .resolve()
        .unwrap();
        for _ in 0..100 {
            let p: Matrix<Complex64> = gaussian_matrix(3, 4, &mut rng);
            let g = sample_element::<Complex64, _>(&group, 4, &mut rng).unwrap();
            let a = frame_linalg(&p, &eta, special, &tol()).unwrap();
            let b = frame_linalg(&g.act_input(&p).unwrap(), &eta, special, &tol()).unwrap();
            assert!(a.p0.max_diff(&b.p0) < 1e-9);
        }
    }
}

#[test]
fn translation_frame_shifts_with_the_cloud() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let p: Matrix<f64> = gaussian_matrix(3, 5, &mut rng);
    let u = [0.5, -2.0, 3.0];
    let a = frame_translation(&p).unwrap();
    let b = frame_translation(&p.add_to_columns(&u)).unwrap();
    for i in 0..3 {
        assert!((b.t[i] - a.t[i] - u[i]).abs() < 1e-12);
    }
    let centered = a.canonical(&p);
    assert!(centered.column_mean().iter().all(|x| x.abs() < 1e-12));
    assert!(frame_translation(&Matrix::<f64>::zeros(3, 0)).is_err());
}

#[test]
fn euclidean_frame_on_centered_cloud_matches_linalg() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let p: Matrix<f64> = gaussian_matrix(3, 6, &mut rng);
    let centered = frame_translation(&p).unwrap().canonical(&p);
    let (t, l) = frame_euclidean(&centered, false, &tol()).unwrap();
    assert!(t.t.iter().all(|x| x.abs() < 1e-12));
    let direct = frame_linalg(&centered, &Metric::euclidean(3), false, &tol()).unwrap();
    assert!(l.p0.max_diff(&direct.p0) < 1e-12);

    let repeated = Matrix::from_fn(3, 4, |i, _| i as f64 + 1.0);
    assert_eq!(frame_translation(&repeated).unwrap().t, vec![1.0, 2.0, 3.0]);
}

#[test]
fn general_linear_canonical_form_is_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for special in [false, true] {
        for _ in 0..100 {
            let p: Matrix<f64> = gaussian_matrix(3, 5, &mut rng);
            let a = sample_general_linear(3, special, &mut rng).unwrap();
            let Ok(f) = frame_general_linear(&p, special, &tol()) else { continue };
            let g = frame_general_linear(&(&a * &p), special, &tol()).unwrap();
            assert!(f.canonical.max_diff(&g.canonical) < 1e-9);
            let c = &f.element_inv * &p;
            let d = &g.element_inv * &(&a * &p);
            assert!(c.max_diff(&d) < 1e-8);
        }
    }
    let p = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
    let sl = frame_general_linear(&p, true, &tol()).unwrap();
    assert!((sl.element.det() - 1.0).abs() < 1e-12);
}

#[test]
fn product_frame_sizes_match_brute_force() {
    let eta = Metric::euclidean(2);
    let square = Matrix::from_rows(&[vec![1.0, 0.0, -1.0, 0.0], vec![0.0, 1.0, 0.0, -1.0]]);
    let gram = &square.transpose() * &square;
    let brute = common::all_perms(4).iter().filter(|s| common::preserves(&gram, s)).count();
    assert_eq!(brute, 8);
    assert_eq!(frame_product(&square, &eta, false, &tol()).unwrap().size(), 8);
    assert_eq!(detect_point_group(&square, &eta, &tol()).unwrap().order, 8u32.into());

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let p: Matrix<f64> = gaussian_matrix(3, 7, &mut rng);
        let fd = frame_product(&p, &Metric::euclidean(3), false, &tol()).unwrap();
        assert_eq!(fd.size(), 1);
        assert!(detect_point_group(&p, &Metric::euclidean(3), &tol()).unwrap().trivial);
    }
}

#[test]
fn product_gram_is_invariant_and_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let eta = Metric::minkowski(4);
    for _ in 0..30 {
        let p: Matrix<f64> = gaussian_matrix(4, 6, &mut rng);
        let o = sample_g_eta(&eta, false, &mut rng);
        let s = random_perm(6, &mut rng);
        let moved = GroupElement::Product { perm: s, linear: o }.act_input(&p).unwrap();
        let a = frame_product(&p, &eta, false, &tol()).unwrap();
        let b = frame_product(&moved, &eta, false, &tol()).unwrap();
        assert_eq!(a.size(), b.size());
        assert!(a.gram.canonical.max_diff(&b.gram.canonical) < 1e-9);
    }
}

#[test]
fn all_null_lorentz_columns_are_rejected() {
    let p = Matrix::from_rows(&[vec![1.0, 2.0], vec![1.0, -2.0]]);
    let err = frame_linalg(&p, &Metric::minkowski(2), false, &tol()).unwrap_err();
    assert!(matches!(err, Error::DegenerateInput(_)), "{err}");
}
