use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use qchain::chain::{build_h1, build_h2, normal_modes, spectrum};
use qchain::linalg::orthogonality_defect;
use qchain::{ChainSpec, Error};
use std::f64::consts::PI;

fn dct_vector(n: usize, j: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|k| (PI * j as f64 * (k as f64 + 0.5) / n as f64).cos()).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

#[test]
fn closed_form_spectrum_matches_dense_solver() {
    for n in 2..=64 {
        for g in [0.1, 1.0, 10.0] {
            let spec = ChainSpec::new(n, 1.0, g, 1.0).unwrap();
            let mut dense: Vec<f64> = SymmetricEigen::new(build_h1(&spec).v_block).eigenvalues.iter().copied().collect();
            dense.sort_by(f64::total_cmp);
            for (a, b) in dense.iter().zip(spectrum(&spec)) {
                assert!((a - b).abs() < 1e-12, "N={n} g={g}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn normal_modes_are_cosine_vectors() {
    for n in [2, 3, 4, 7, 16] {
        let spec = ChainSpec::new(n, 0.8, 1.3, 1.0).unwrap();
        let p = normal_modes(&spec).unwrap().p_matrix;
        for j in 0..n {
            let expected = dct_vector(n, j);
            let dot: f64 = (0..n).map(|k| p[(k, j)] * expected[k]).sum();
            assert!((dot.abs() - 1.0).abs() < 1e-12, "N={n} mode {j}: overlap {dot}");
        }
    }
}

#[test]
fn four_mode_eigenvectors() {
    let p = normal_modes(&ChainSpec::new(4, 1.0, 1.0, 1.0).unwrap()).unwrap().p_matrix;
    let (c1, c3) = ((PI / 8.0).cos() / 2f64.sqrt(), (3.0 * PI / 8.0).cos() / 2f64.sqrt());
    let expected = DMatrix::from_row_slice(
        4,
        4,
        &[
            0.5, c1, 0.5, c3, //
            0.5, c3, -0.5, -c1, //
            0.5, -c3, -0.5, c1, //
            0.5, -c1, 0.5, -c3,
        ],
    );
    // Columns are fixed so that the largest entry is positive; for the last
    // mode the tie between ±c1 goes to the first occurrence.
    let mut fixed = expected.clone();
    fixed.column_mut(3).neg_mut();
    assert!((p - fixed).abs().max() < 1e-12);
}

#[test]
fn two_mode_squeezing_degree() {
    let nm = normal_modes(&ChainSpec::new(2, 1.0, 1.0, 1.0).unwrap()).unwrap();
    assert!((nm.mus[1] - 3f64.sqrt()).abs() < 1e-15);
    assert!((nm.squeeze_params[1] - 0.137327).abs() < 5e-7);
    assert!((nm.squeeze_params[1] - 0.25 * 3f64.sqrt().ln()).abs() < 1e-15);
    assert_eq!(nm.squeeze_params[0], 0.0);
}

#[test]
fn uncoupled_chain_has_trivial_modes() {
    let nm = normal_modes(&ChainSpec::new(5, 2.0, 0.0, 1.0).unwrap()).unwrap();
    assert_eq!(nm.p_matrix, DMatrix::identity(5, 5));
    assert!(nm.mus.iter().all(|&m| m == 2.0));
    assert!(nm.squeeze_params.iter().all(|&r| r == 0.0));
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(matches!(ChainSpec::new(1, 1.0, 1.0, 1.0), Err(Error::InvalidSpec(_))));
    assert!(ChainSpec::new(2, 0.0, 1.0, 1.0).is_err());
    assert!(ChainSpec::new(2, 1.0, -0.1, 1.0).is_err());
    assert!(ChainSpec::new(2, 1.0, 1.0, -1.0).is_err());
    assert!(ChainSpec::new(2, 1.0, f64::NAN, 1.0).is_err());
    assert!(ChainSpec::new(2, 1.0, 1.0, f64::INFINITY).is_ok());
}

#[test]
fn exchange_model_bound() {
    assert!(build_h2(&ChainSpec::new(2, 1.0, 1.99, 1.0).unwrap()).is_ok());
    assert!(matches!(
        build_h2(&ChainSpec::new(2, 1.0, 2.0, 1.0).unwrap()),
        Err(Error::CouplingTooStrong { .. })
    ));
    assert!(build_h2(&ChainSpec::new(3, 1.0, 0.5, 1.0).unwrap()).is_err());
}

proptest! {
    #[test]
    fn spectrum_is_ordered_and_bounded(n in 2usize..40, w in 0.1..5.0f64, g in 0.0..10.0f64) {
        let spec = ChainSpec::new(n, w, g, 1.0).unwrap();
        let l = spectrum(&spec);
        prop_assert_eq!(l[0], w);
        for pair in l.windows(2) {
            prop_assert!(pair[1] >= pair[0]);
        }
        prop_assert!(*l.last().unwrap() < w + 4.0 * g + 1e-12);
    }

    #[test]
    fn spectrum_grows_with_coupling(n in 2usize..20, g in 0.0..5.0f64, dg in 0.01..1.0f64) {
        let a = spectrum(&ChainSpec::new(n, 1.0, g, 1.0).unwrap());
        let b = spectrum(&ChainSpec::new(n, 1.0, g + dg, 1.0).unwrap());
        for (x, y) in a.iter().zip(&b).skip(1) {
            prop_assert!(y > x);
        }
    }

    #[test]
    fn mode_matrix_is_orthogonal(n in 2usize..48, g in 0.01..10.0f64) {
        let nm = normal_modes(&ChainSpec::new(n, 1.0, g, 1.0).unwrap()).unwrap();
        prop_assert!(orthogonality_defect(&nm.p_matrix) < 1e-12);
        let v = build_h1(&ChainSpec::new(n, 1.0, g, 1.0).unwrap()).v_block;
        let d = nm.p_matrix.transpose() * v * &nm.p_matrix;
        for j in 0..n {
            prop_assert!((d[(j, j)] - nm.lambdas[j]).abs() < 1e-11 * (1.0 + 4.0 * g));
        }
    }
}
