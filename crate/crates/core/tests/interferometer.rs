use nalgebra::DMatrix;
use proptest::prelude::*;
use qchain::chain::normal_modes;
use qchain::interferometer::{matrix_hash, reck_decompose, reconstruct};
use qchain::linalg::{max_abs, orthogonality_defect};
use qchain::symplectic::{NetworkElement, OpticalNetwork};
use qchain::{ChainSpec, Error};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_orthogonal(n: usize, rng: &mut StdRng) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0)).qr().q()
}

fn mixer_angles(n: usize) -> Vec<f64> {
    let p = normal_modes(&ChainSpec::new(n, 1.0, 1.0, 1.0).unwrap()).unwrap().p_matrix;
    reck_decompose(&p.transpose())
        .unwrap()
        .network
        .elements
        .iter()
        .filter_map(|e| match e {
            NetworkElement::BeamSplitter { theta, .. } => Some(*theta),
            _ => None,
        })
        .collect()
}

#[test]
fn random_orthogonal_round_trips() {
    let mut rng = StdRng::seed_from_u64(2024);
    for k in 0..100 {
        let n = 2 + k % 15;
        let m = random_orthogonal(n, &mut rng);
        let plan = reck_decompose(&m).unwrap();
        assert_eq!(plan.mixer_count(), n * (n - 1) / 2);
        assert!(max_abs(&(reconstruct(&plan).unwrap() - &m)) < 1e-10);
        assert_eq!(plan.source(), m);
    }
}

#[test]
fn every_element_is_orthogonal() {
    let mut rng = StdRng::seed_from_u64(5);
    let m = random_orthogonal(7, &mut rng);
    let plan = reck_decompose(&m).unwrap();
    for e in &plan.network.elements {
        let single = OpticalNetwork { n_modes: 7, elements: vec![e.clone()] };
        let u = qchain::interferometer::reconstruct_network(&single).unwrap();
        assert!(orthogonality_defect(&u) < 1e-14);
    }
}

#[test]
fn two_mode_mixer_is_balanced() {
    let angles = mixer_angles(2);
    assert_eq!(angles.len(), 1);
    assert!((angles[0].cos().powi(2) - 0.5).abs() < 1e-15);
}

#[test]
fn four_mode_mixer_angles() {
    let tans: Vec<f64> = mixer_angles(4).iter().map(|t| t.tan()).collect();
    for target in [-(4.0 - 8f64.sqrt()).sqrt(), (7.0 + 32f64.sqrt()).sqrt()] {
        assert!(tans.iter().any(|t| (t - target).abs() < 1e-9), "{target} not in {tans:?}");
    }
}

#[test]
fn identity_needs_no_optics() {
    let plan = reck_decompose(&DMatrix::identity(4, 4)).unwrap();
    assert!(plan.network.simplified().elements.is_empty());
    assert_eq!(reconstruct(&plan).unwrap(), DMatrix::identity(4, 4));
}

#[test]
fn reflections_are_realized_with_phase_shifts() {
    let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, -1.0, 1.0]));
    let plan = reck_decompose(&m).unwrap();
    assert!(max_abs(&(reconstruct(&plan).unwrap() - &m)) < 1e-15);
}

#[test]
fn non_orthogonal_input_is_rejected() {
    let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.1, 0.0, 1.0]);
    assert!(matches!(reck_decompose(&m), Err(Error::NotOrthogonal(_))));
}

#[test]
fn plan_json_carries_header_and_elements() {
    let p = normal_modes(&ChainSpec::new(3, 1.0, 0.5, 1.0).unwrap()).unwrap().p_matrix.transpose();
    let plan = reck_decompose(&p).unwrap();
    let v: serde_json::Value = serde_json::from_str(&plan.to_json().unwrap()).unwrap();
    assert_eq!(v["header"]["n_modes"], 3);
    assert_eq!(v["header"]["source_hash"], matrix_hash(&p));
    assert_eq!(v["elements"].as_array().unwrap().len(), plan.network.elements.len());
    assert_eq!(v["elements"][0]["type"], "beam_splitter");
}

#[test]
fn hash_identifies_the_matrix() {
    let a = DMatrix::<f64>::identity(3, 3);
    let mut b = a.clone();
    b[(0, 0)] = 1.0 + f64::EPSILON;
    assert_eq!(matrix_hash(&a), matrix_hash(&a.clone()));
    assert_ne!(matrix_hash(&a), matrix_hash(&b));
    assert_eq!(matrix_hash(&a).len(), 64);
}

proptest! {
    #[test]
    fn round_trip_property(seed in any::<u64>(), n in 2usize..17) {
        let mut rng = StdRng::seed_from_u64(seed);
        let m = random_orthogonal(n, &mut rng);
        let plan = reck_decompose(&m).unwrap();
        prop_assert!(max_abs(&(reconstruct(&plan).unwrap() - &m)) < 1e-10);
        let inv = qchain::interferometer::reconstruct_network(&plan.network.inverse()).unwrap();
        prop_assert!(max_abs(&(inv - m.transpose())) < 1e-10);
    }
}
