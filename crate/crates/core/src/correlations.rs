//! Logarithmic negativity and Gaussian discord of the two-mode equilibrium
//! state of the spring-coupled pair.

use crate::chain::{coth_half, normal_modes, ChainSpec};
use crate::error::{Error, Result};
use crate::linalg::{symplectic_eigenvalues, symplectic_form_modewise};
use crate::symplectic::GaussianState;
use crate::work::nonequilibrium_lag;
use argmin::core::{CostFunction, Executor, State};
use argmin::solver::neldermead::NelderMead;
use nalgebra::{DMatrix, Matrix2};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

const ZERO_CLAMP: f64 = 1e-9;

/// Blocks of a two-mode covariance in mode-wise ordering `(x₁, p₁, x₂, p₂)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoModeCov {
    pub alpha1: Matrix2<f64>,
    pub alpha2: Matrix2<f64>,
    pub gamma: Matrix2<f64>,
}

impl TwoModeCov {
    pub fn assembled(&self) -> DMatrix<f64> {
        let mut s = DMatrix::zeros(4, 4);
        s.view_mut((0, 0), (2, 2)).copy_from(&self.alpha1);
        s.view_mut((2, 2), (2, 2)).copy_from(&self.alpha2);
        s.view_mut((0, 2), (2, 2)).copy_from(&self.gamma);
        s.view_mut((2, 0), (2, 2)).copy_from(&self.gamma.transpose());
        s
    }

    /// From a two-mode state in `(x₁, x₂, p₁, p₂)` ordering.
    pub fn from_gaussian(state: &GaussianState) -> Result<Self> {
        if state.n_modes() != 2 {
            return Err(Error::InvalidSpec("two-mode state required".into()));
        }
        let c = &state.cov;
        let at = |i: usize, j: usize| c[(i, j)];
        // mode-wise index k ↦ (x/p, mode) ↦ xxpp index
        let idx = [0, 2, 1, 3];
        let block = |r0: usize, c0: usize| {
            Matrix2::new(
                at(idx[r0], idx[c0]),
                at(idx[r0], idx[c0 + 1]),
                at(idx[r0 + 1], idx[c0]),
                at(idx[r0 + 1], idx[c0 + 1]),
            )
        };
        Ok(TwoModeCov { alpha1: block(0, 0), alpha2: block(2, 2), gamma: block(0, 2) })
    }

    /// Symplectic eigenvalues `(ν₋, ν₊)`; rejects unphysical matrices.
    pub fn symplectic_spectrum(&self) -> Result<(f64, f64)> {
        let nu = symplectic_eigenvalues(&self.assembled(), &symplectic_form_modewise(2))?;
        if nu[0] < 1.0 - 1e-10 {
            return Err(Error::Unphysical(nu[0]));
        }
        Ok((nu[0], nu[1]))
    }

    /// Partial transpose on mode 2 (`p₂ ↦ −p₂`).
    pub fn partial_transpose(&self) -> Self {
        let flip = Matrix2::new(1.0, 0.0, 0.0, -1.0);
        TwoModeCov {
            alpha1: self.alpha1,
            alpha2: flip * self.alpha2 * flip,
            gamma: self.gamma * flip,
        }
    }
}

/// Covariance of the Gibbs state of the coupled chain, `(x.., p..)` ordering.
pub fn gibbs_state(spec: &ChainSpec) -> Result<GaussianState> {
    let nm = normal_modes(spec)?;
    let n = spec.n_modes;
    let w = spec.omega;
    let xx: Vec<f64> = nm.mus.iter().map(|&m| coth_half(spec.beta, m) * w / m).collect();
    let pp: Vec<f64> = nm.mus.iter().map(|&m| coth_half(spec.beta, m) * m / w).collect();
    let p = &nm.p_matrix;
    let rotate = |d: &[f64]| DMatrix::from_fn(n, n, |i, j| (0..n).map(|k| p[(i, k)] * d[k] * p[(j, k)]).sum());
    let mut st = GaussianState::vacuum(n);
    st.cov.view_mut((0, 0), (n, n)).copy_from(&rotate(&xx));
    st.cov.view_mut((n, n), (n, n)).copy_from(&rotate(&pp));
    Ok(st)
}

pub fn equilibrium_covariance(spec: &ChainSpec) -> Result<TwoModeCov> {
    if spec.n_modes != 2 {
        return Err(Error::InvalidSpec("equilibrium_covariance is defined for two modes".into()));
    }
    TwoModeCov::from_gaussian(&gibbs_state(spec)?)
}

fn clamp_zero(x: f64) -> f64 {
    if x.abs() < ZERO_CLAMP {
        0.0
    } else {
        x
    }
}

/// Smallest symplectic eigenvalue of the partially transposed covariance.
pub fn pt_min_symplectic(cov: &TwoModeCov) -> Result<f64> {
    cov.symplectic_spectrum()?;
    let pt = cov.partial_transpose();
    Ok(symplectic_eigenvalues(&pt.assembled(), &symplectic_form_modewise(2))?[0])
}

/// `E = max(0, −ln ν̃₋)`.
pub fn log_negativity(cov: &TwoModeCov) -> Result<f64> {
    Ok(clamp_zero((-pt_min_symplectic(cov)?.ln()).max(0.0)))
}

/// Closed form on the equilibrium family:
/// `max(0, −ln[sqrt(coth(βω/2) coth(βμ/2)) / (1 + 2g0/ω)^{1/4}])`.
pub fn log_negativity_closed_form(spec: &ChainSpec) -> f64 {
    let w = spec.omega;
    let mu = (w * (w + 2.0 * spec.g0)).sqrt();
    let ratio = (coth_half(spec.beta, w) * coth_half(spec.beta, mu)).sqrt()
        / (1.0 + 2.0 * spec.g0 / w).powf(0.25);
    clamp_zero((-ratio.ln()).max(0.0))
}

/// Inverse temperature at which the equilibrium entanglement vanishes.
pub fn entanglement_threshold(omega: f64, g0: f64) -> Result<f64> {
    let spec = ChainSpec::new(2, omega, g0, 1.0)?;
    if g0 == 0.0 {
        return Err(Error::InvalidSpec("no entanglement without coupling".into()));
    }
    let target = (1.0 + 2.0 * g0 / omega).sqrt();
    let mu = (omega * (omega + 2.0 * g0)).sqrt();
    let excess = |b: f64| coth_half(b, omega) * coth_half(b, mu) - target;
    let (mut lo, mut hi) = (1e-8 / omega, 1e8 / omega);
    if excess(lo) <= 0.0 || excess(hi) >= 0.0 {
        return Err(Error::Nonconvergent("threshold not bracketed".into()));
    }
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi / lo - 1.0 < 1e-15 {
            break;
        }
    }
    let _ = spec;
    Ok((lo * hi).sqrt())
}

/// Von Neumann entropy of a mode with symplectic eigenvalue `x ≥ 1`.
pub fn entropy_f(x: f64) -> f64 {
    let p = (x + 1.0) / 2.0;
    let m = (x - 1.0) / 2.0;
    let tail = if m > 0.0 { m * m.ln() } else { 0.0 };
    p * p.ln() - tail
}

/// Covariance of a rotated pure squeezed vacuum `R(φ) diag(e^{2s}, e^{−2s}) R(φ)ᵀ`.
pub fn measurement_covariance(s: f64, phi: f64) -> Matrix2<f64> {
    let (sn, cs) = phi.sin_cos();
    let r = Matrix2::new(cs, -sn, sn, cs);
    r * Matrix2::new((2.0 * s).exp(), 0.0, 0.0, (-2.0 * s).exp()) * r.transpose()
}

/// `f(sqrt det ε)` after a Gaussian measurement `σ₀` on mode 2.
pub fn conditional_entropy(cov: &TwoModeCov, s: f64, phi: f64) -> f64 {
    let m = cov.alpha2 + measurement_covariance(s, phi);
    let inv = m.try_inverse().unwrap_or_else(Matrix2::zeros);
    let eps = cov.alpha1 - cov.gamma * inv * cov.gamma.transpose();
    entropy_f(eps.determinant().max(1.0).sqrt())
}

pub const S_BOUND: f64 = 5.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiscordResult {
    pub discord: f64,
    /// Optimal measurement `(s, φ)`.
    pub s: f64,
    pub phi: f64,
    pub min_conditional_entropy: f64,
}

struct Objective<'a> {
    cov: &'a TwoModeCov,
}

impl CostFunction for Objective<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Self::Param) -> std::result::Result<f64, argmin::core::Error> {
        Ok(conditional_entropy(self.cov, p[0].clamp(-S_BOUND, S_BOUND), p[1]))
    }
}

fn minimize_from(cov: &TwoModeCov, s0: f64, phi0: f64) -> Result<(f64, f64, f64)> {
    let simplex = vec![vec![s0, phi0], vec![s0 + 0.7, phi0], vec![s0, phi0 + 0.4]];
    let solver = NelderMead::new(simplex)
        .with_sd_tolerance(1e-15)
        .map_err(|_| Error::Optimizer { best: f64::NAN })?;
    let res = Executor::new(Objective { cov }, solver)
        .configure(|st| st.max_iters(2000))
        .run()
        .map_err(|_| Error::Optimizer { best: f64::NAN })?;
    let state = res.state();
    let best = state.get_best_param().cloned().ok_or(Error::Optimizer { best: f64::NAN })?;
    Ok((state.get_best_cost(), best[0].clamp(-S_BOUND, S_BOUND), best[1].rem_euclid(PI)))
}

/// `D = f(sqrt det α₂) − f(ν₋) − f(ν₊) + inf_{σ₀} f(sqrt det ε)` with the
/// infimum over rotated squeezed vacua, by multistart Nelder–Mead.
pub fn gaussian_discord(cov: &TwoModeCov) -> Result<DiscordResult> {
    let (nm, np) = cov.symplectic_spectrum()?;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for s0 in [-4.0, 0.0, 4.0] {
        for phi0 in [0.0, PI / 3.0, 2.0 * PI / 3.0] {
            let cand = minimize_from(cov, s0, phi0)?;
            if cand.0 < best.0 {
                best = cand;
            }
        }
    }
    if !best.0.is_finite() {
        return Err(Error::Optimizer { best: best.0 });
    }
    let d = entropy_f(cov.alpha2.determinant().sqrt()) - entropy_f(nm) - entropy_f(np) + best.0;
    Ok(DiscordResult { discord: clamp_zero(d), s: best.1, phi: best.2, min_conditional_entropy: best.0 })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub log_negativity: f64,
    pub nu_minus_pt: f64,
    pub nu_minus: f64,
    pub nu_plus: f64,
    pub discord: f64,
    pub sigma0_s: f64,
    pub sigma0_phi: f64,
}

pub fn correlation_report(cov: &TwoModeCov) -> Result<CorrelationReport> {
    let (nu_minus, nu_plus) = cov.symplectic_spectrum()?;
    let nu_minus_pt = pt_min_symplectic(cov)?;
    let d = gaussian_discord(cov)?;
    Ok(CorrelationReport {
        log_negativity: clamp_zero((-nu_minus_pt.ln()).max(0.0)),
        nu_minus_pt,
        nu_minus,
        nu_plus,
        discord: d.discord,
        sigma0_s: d.s,
        sigma0_phi: d.phi,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LagCorrelationRow {
    pub beta: f64,
    pub lag: f64,
    pub lag_c: f64,
    pub lag_q: f64,
    pub log_neg: f64,
    pub discord: f64,
}

/// Lag and correlations along a `β` grid, in grid order.
pub fn lag_correlation_curves(spec: &ChainSpec, betas: &[f64]) -> Result<Vec<LagCorrelationRow>> {
    betas
        .par_iter()
        .map(|&beta| {
            let s = spec.with_beta(beta);
            let report = nonequilibrium_lag(&s)?;
            let cov = equilibrium_covariance(&s)?;
            Ok(LagCorrelationRow {
                beta,
                lag: report.lag,
                lag_c: report.lag_c,
                lag_q: report.lag_q,
                log_neg: log_negativity(&cov)?,
                discord: gaussian_discord(&cov)?.discord,
            })
        })
        .collect()
}
