use minframe::linalg::{
    apply_det_constraint, eig_sym, eigen_clusters, eta_orthonormality_residual, format_matrix,
    generalized_qr, parse_matrix, perturb_degenerate, pseudo_inner, select_columns, DetAdjust,
};
use minframe::testkit::{haar, make_degenerate_cloud, sample_g_eta, sample_unitary};
use minframe::{DenseMatrix, Matrix, Metric, Scalar, Tolerances};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cloud(max_d: usize, max_n: usize) -> impl Strategy<Value = Matrix<f64>> {
    (1..=max_d, 1..=max_n).prop_flat_map(|(d, n)| {
        proptest::collection::vec(-3.0..3.0f64, d * n).prop_map(move |v| Matrix::new(d, n, v).unwrap())
    })
}

fn metric_for(d: usize, bits: u32) -> Metric {
    Metric::new((0..d).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect()).unwrap()
}

fn rel(a: f64, scale: f64) -> f64 {
    a / scale.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn qr_reconstructs_and_is_eta_orthonormal(p in cloud(5, 7), bits in any::<u32>(), seed in any::<u64>()) {
        let tol = Tolerances::default();
        let eta = metric_for(p.rows(), bits);
        let Ok(mask) = select_columns(&p, &eta, tol.null_tol, tol.rank_tol) else { return Ok(()); };
        let a = mask.apply(&p);
        let Ok(qr) = generalized_qr(&a, &eta, &tol) else { return Ok(()); };
        prop_assert!(rel(qr.reconstruct().max_diff(&a), p.max_abs()) < 1e-9);
        prop_assert!(eta_orthonormality_residual(&qr.q_hat, &qr.determinate(), &eta) < 1e-9);
        for (slot, src) in qr.sig_perm.iter().enumerate() {
            if let Some(k) = *src {
                // R̂ row = D_η R row, so the Gram-Schmidt diagonal is recovered by the sign.
                prop_assert!(f64::from(qr.d_eta[k]) * qr.r_hat[(slot, k)] >= 0.0);
                prop_assert_eq!(eta.sign(slot), f64::from(qr.d_eta[k]));
            }
        }
        // Rerunning gives the same bits.
        prop_assert_eq!(&generalized_qr(&a, &eta, &tol).unwrap(), &qr);

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = sample_g_eta(&eta, false, &mut rng);
        let moved = &g * &p;
        let mask2 = select_columns(&moved, &eta, tol.null_tol, tol.rank_tol).unwrap();
        prop_assume!(mask2 == mask);
        let qr2 = generalized_qr(&mask2.apply(&moved), &eta, &tol).unwrap();
        prop_assert!(rel(qr2.r_hat.max_diff(&qr.r_hat), qr.r_hat.max_abs()) < 1e-8);
    }

    #[test]
    fn special_constraint_fixes_determinant(p in cloud(4, 6), bits in any::<u32>()) {
        let tol = Tolerances::default();
        let eta = metric_for(p.rows(), bits);
        let Ok(mask) = select_columns(&p, &eta, tol.null_tol, tol.rank_tol) else { return Ok(()); };
        let a = mask.apply(&p);
        let Ok(qr) = generalized_qr(&a, &eta, &tol) else { return Ok(()); };
        let Ok(fixed) = apply_det_constraint(qr.clone(), &eta, &tol) else { return Ok(()); };
        let d = eta.dim();
        let open = d - qr.rank;
        prop_assert!(rel(fixed.reconstruct().max_diff(&a), p.max_abs()) < 1e-9);
        if open <= 1 {
            prop_assert!((fixed.q_hat.det() - 1.0).abs() < 1e-9);
            prop_assert!(fixed.indeterminate().is_empty());
            prop_assert!(eta_orthonormality_residual(&fixed.q_hat, &(0..d).collect::<Vec<_>>(), &eta) < 1e-9);
        } else {
            prop_assert_eq!(fixed.det_adjust, DetAdjust::Unsigned);
        }
    }

    #[test]
    fn eig_sym_residual_and_order(m in cloud(6, 6)) {
        let d = m.rows();
        let a = &m * &m.transpose();
        let e = eig_sym(&a, 1e-9).unwrap();
        prop_assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        let av = &a * &e.vectors;
        let vl = e.vectors.scale_cols(&e.values);
        prop_assert!(av.max_diff(&vl) < 1e-9 * a.max_abs().max(1.0));
        let vtv = &e.vectors.transpose() * &e.vectors;
        prop_assert!(vtv.max_diff(&Matrix::identity(d)) < 1e-10);
    }

    #[test]
    fn matrix_text_round_trips(m in cloud(5, 5), im in proptest::collection::vec(-1e3..1e3f64, 25)) {
        let real = DenseMatrix::Real(m.clone());
        prop_assert_eq!(parse_matrix(&format_matrix(&real)).unwrap(), real);
        let c = Matrix::from_fn(m.rows(), m.cols(), |i, j| Complex64::new(m[(i, j)], im[i * 5 + j]));
        let complex = DenseMatrix::Complex(c);
        prop_assert_eq!(parse_matrix(&format_matrix(&complex)).unwrap(), complex);
    }
}

#[test]
fn pseudo_inner_examples() {
    let eta = Metric::new(vec![1, -1]).unwrap();
    assert_eq!(pseudo_inner(&[1.0, 0.0], &[1.0, 0.0], &eta).unwrap(), 1.0);
    assert_eq!(pseudo_inner(&[0.0, 1.0], &[0.0, 1.0], &eta).unwrap(), -1.0);
    assert_eq!(pseudo_inner(&[1.0, 1.0], &[1.0, -1.0], &eta).unwrap(), 2.0);
    assert!(pseudo_inner(&[1.0], &[1.0, 2.0], &eta).is_err());
}

#[test]
fn unitary_qr_is_invariant() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let eta = Metric::euclidean(3);
    for special in [false, true] {
        for _ in 0..100 {
            let p: Matrix<Complex64> = minframe::testkit::gaussian_matrix(3, 5, &mut rng);
            let u = sample_unitary(3, special, &mut rng);
            let a = generalized_qr(&p.select_columns(&[0, 1, 2]), &eta, &tol).unwrap();
            let b = generalized_qr(&(&u * &p).select_columns(&[0, 1, 2]), &eta, &tol).unwrap();
            assert!(a.r_hat.max_diff(&b.r_hat) < 1e-10);
            let q = apply_det_constraint(a, &eta, &tol).unwrap().q_hat;
            if special {
                assert!((q.det() - Complex64::new(1.0, 0.0)).modulus() < 1e-10);
            }
            let qhq = &q.adjoint() * &q;
            assert!(qhq.max_diff(&Matrix::identity(3)) < 1e-10);
        }
    }
}

#[test]
fn perturbation_splits_degenerate_clouds() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for seed in 0..60 {
        let d = 2 + (seed as usize) % 3;
        let mult = 2 + (seed as usize) % (d - 1);
        let p = make_degenerate_cloud(d, d + 3, mult, seed).unwrap();
        let out = perturb_degenerate(&p, &tol).unwrap();
        assert!(out.z.iter().all(|&z| z >= 0.0));
        assert!(out.steps <= mult - 1, "{} steps for multiplicity {mult}", out.steps);
        let w: Vec<f64> = out.z.iter().map(|z| 1.0 + z).collect();
        let e = eig_sym(&(&p.scale_cols(&w) * &p.transpose()), 1e-9).unwrap();
        assert!(eigen_clusters(&e.values, tol.eig_tol, tol.zero_eig_tol).iter().all(|c| c.len() == 1));

        // The weights depend only on PᵀP.
        let o: Matrix<f64> = haar(d, &mut rng);
        let moved = perturb_degenerate(&(&o * &p), &tol).unwrap();
        for (a, b) in out.z.iter().zip(&moved.z) {
            assert!((a - b).abs() < 1e-8, "{:?} vs {:?}", out.z, moved.z);
        }
    }
}

#[test]
fn simple_spectrum_needs_no_perturbation() {
    let p = Matrix::from_rows(&[vec![2.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
    let out = perturb_degenerate(&p, &Tolerances::default()).unwrap();
    assert_eq!(out.z, vec![0.0; 3]);
}
