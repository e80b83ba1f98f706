use proptest::prelude::*;
use qchain::chain::normal_modes;
use qchain::fock::{unbounded_below, FockSystem, DIMENSION_LIMIT};
use qchain::linalg::max_abs;
use qchain::symplectic::{propagator_network, GaussianState};
use qchain::work::{average_work, chi, free_energy_change, lag_closed_form, rwa_statistics};
use qchain::{ChainSpec, Error, Model, C64};

fn system(n: usize, g: f64, beta: f64, n_max: usize) -> FockSystem {
    FockSystem::build(&ChainSpec::new(n, 1.0, g, beta).unwrap(), n_max, Model::H1).unwrap()
}

#[test]
fn tpm_fourier_transform_is_the_trace_formula() {
    let sys = system(2, 1.0, 1.0, 30);
    let d = sys.tpm_distribution().unwrap();
    for u in [0.0, 0.4, 2.0, 9.5] {
        let a = d.characteristic(u);
        let b = sys.chi(C64::from(u)).unwrap();
        assert!((a - b).norm() < 1e-10 + d.pruned_mass);
    }
    assert!((d.total_probability() + d.pruned_mass - 1.0).abs() < 1e-12);
}

#[test]
fn fock_chi_matches_closed_form() {
    let spec = ChainSpec::new(2, 1.0, 0.6, 1.5).unwrap();
    let sys = FockSystem::build(&spec, 30, Model::H1).unwrap();
    for u in [0.5, 3.0, 8.0] {
        let a = chi(&spec, C64::from(u)).unwrap();
        assert!((a - sys.chi(C64::from(u)).unwrap()).norm() < 1e-8);
    }
}

#[test]
fn low_levels_match_normal_mode_sums() {
    let spec = ChainSpec::new(2, 1.0, 0.9, 1.0).unwrap();
    let sys = FockSystem::build(&spec, 30, Model::H1).unwrap();
    let mus = normal_modes(&spec).unwrap().mus;
    let mut expected: Vec<f64> = (0..8)
        .flat_map(|a| (0..8).map(move |b| (a, b)))
        .map(|(a, b)| mus[0] * (a as f64 + 0.5) + mus[1] * (b as f64 + 0.5))
        .collect();
    expected.sort_by(f64::total_cmp);
    let levels = sys.final_spectrum();
    for k in 0..10 {
        assert!((levels[k] - expected[k]).abs() < 1e-9, "level {k}: {} vs {}", levels[k], expected[k]);
    }
    assert_eq!(sys.hermiticity_defect(), 0.0);
}

#[test]
fn exchange_model_splits_the_frequency() {
    let (w, g) = (1.0, 0.6);
    let spec = ChainSpec::new(2, w, g, 1.0).unwrap();
    let sys = FockSystem::build(&spec, 20, Model::H2).unwrap();
    let (lo, hi) = (w - g / 2.0, w + g / 2.0);
    let mut expected: Vec<f64> = (0..6)
        .flat_map(|a| (0..6).map(move |b| (a, b)))
        .map(|(a, b)| lo * (a as f64 + 0.5) + hi * (b as f64 + 0.5))
        .collect();
    expected.sort_by(f64::total_cmp);
    let levels = sys.final_spectrum();
    for k in 0..12 {
        assert!((levels[k] - expected[k]).abs() < 1e-10, "level {k}");
    }
}

#[test]
fn exchange_model_work_moments() {
    let spec = ChainSpec::new(2, 1.0, 0.5, 1.0).unwrap();
    let d = FockSystem::build(&spec, 40, Model::H2).unwrap().tpm_distribution().unwrap();
    let r = rwa_statistics(&spec).unwrap();
    assert!(d.moment(1).abs() < 1e-8);
    assert!((d.moment(2) - r.second_moment).abs() < 1e-4 * r.second_moment);
}

#[test]
fn strong_exchange_coupling_is_unbounded() {
    let weak = ChainSpec::new(2, 1.0, 1.0, 1.0).unwrap();
    let strong = ChainSpec::new(2, 1.0, 2.5, 1.0).unwrap();
    assert!(!unbounded_below(&weak, Model::H2, 24).unwrap());
    assert!(unbounded_below(&strong, Model::H2, 24).unwrap());
}

#[test]
fn evolved_covariance_follows_the_symplectic_map() {
    let spec = ChainSpec::new(2, 1.0, 0.7, 1.0).unwrap();
    let sys = FockSystem::build(&spec, 30, Model::H1).unwrap();
    for t in [0.0, 0.8, 2.3] {
        let s = propagator_network(&spec, t).unwrap().symplectic();
        let expected = GaussianState::thermal(&spec).apply(&s).cov;
        let got = sys.evolved_covariance(t).unwrap();
        assert!(max_abs(&(got - expected)) < 1e-6, "t={t}");
    }
}

#[test]
fn thermodynamics_match_closed_forms() {
    let spec = ChainSpec::new(2, 1.0, 1.5, 0.8).unwrap();
    let sys = FockSystem::build(&spec, 40, Model::H1).unwrap();
    assert!((sys.delta_free_energy().unwrap() - free_energy_change(&spec).unwrap()).abs() < 1e-8);
    let w = sys.tpm_distribution().unwrap().moment(1);
    assert!((w - average_work(&spec)).abs() < 1e-6 * average_work(&spec));
    let l = lag_closed_form(&spec).unwrap();
    assert!((sys.relative_entropy_lag(0.0).unwrap() - l).abs() < 1e-6);
}

#[test]
fn jarzynski_at_four_modes() {
    let spec = ChainSpec::new(4, 1.0, 0.3, 3.0).unwrap();
    let sys = FockSystem::build(&spec, 7, Model::H1).unwrap();
    let z = sys.chi(C64::new(0.0, spec.beta)).unwrap() * (spec.beta * free_energy_change(&spec).unwrap()).exp();
    assert!((z - 1.0).norm() < 1e-5, "{z}");
}

#[test]
fn relative_entropy_paths_agree_and_ignore_time() {
    let sys = system(2, 1.0, 1.0, 12);
    let spectral = sys.relative_entropy_lag(0.0).unwrap();
    for t in [0.0, 0.5, 4.0] {
        assert!((sys.relative_entropy_lag_dense(t).unwrap() - spectral).abs() < 1e-9);
    }
}

#[test]
fn gibbs_entropy_special_cases() {
    let free = system(2, 0.0, 1.0, 10);
    assert!(free.gibbs_entropy_change(2.0).unwrap().delta.abs() < 1e-12);
    let coupled = system(2, 1.2, 0.7, 14);
    assert!(coupled.gibbs_entropy_change_adiabatic().unwrap().delta.abs() < 1e-12);
    assert!(coupled.gibbs_entropy_change(0.3).unwrap().delta > 0.0);
}

#[test]
fn dimension_guard() {
    let spec = ChainSpec::new(3, 1.0, 1.0, 1.0).unwrap();
    assert!(FockSystem::build(&spec, 15, Model::H1).is_ok());
    match FockSystem::build(&spec, 16, Model::H1) {
        Err(Error::DimensionGuard { dim, limit }) => {
            assert_eq!(dim, 17 * 17 * 17);
            assert_eq!(limit, DIMENSION_LIMIT);
        }
        other => panic!("expected a guard error, got {other:?}"),
    }
    assert!(FockSystem::build(&ChainSpec::new(5, 1.0, 1.0, 1.0).unwrap(), 2, Model::H1).is_err());
    assert!(FockSystem::build(&ChainSpec::new(2, 1.0, 1.0, f64::INFINITY).unwrap(), 5, Model::H1)
        .unwrap()
        .chi(C64::from(1.0))
        .is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn gibbs_entropy_never_decreases(g in 0.0..2.0f64, beta in 0.2..5.0f64, t in 0.0..10.0f64) {
        let sys = system(2, g, beta, 10);
        prop_assert!(sys.gibbs_entropy_change(t).unwrap().delta >= -1e-8);
    }
}
