//! Work statistics of the sudden quench `g: 0 → g0` from a thermal state.
//!
//! The thermal P-function of identical modes is invariant under the real
//! orthogonal normal-mode mixer, so `χ(u)` factorizes into one factor per
//! normal mode. Each factor is a Gaussian trace with the closed form
//!
//! `χ_j(u) = 2 sinh(βω/2) / sqrt(D)`,
//! `D = 2 cos(μu) cos φ + (ω/μ + μ/ω) sin(μu) sin φ − 2`, `φ = ω(u − iβ)`,
//!
//! which is evaluated in a rescaled, overflow-free form. The square root is
//! continued along the straight path from `u = 0`, so the same code serves
//! real `u` and the Jarzynski point `u = iβ`. A second route convolves the
//! coherent echo with the thermal P-function and is kept as a cross-check.

use crate::chain::{coth_half, normal_modes, ChainSpec};
use crate::error::{Error, Result};
use crate::linalg::continued_sqrt;
use crate::symplectic::mode_echo;
use crate::C64;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq)]
pub struct WorkCharacteristic {
    pub u_grid: Vec<f64>,
    pub chi: Vec<C64>,
    pub spec: ChainSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThermoReport {
    pub avg_work: f64,
    pub delta_f: f64,
    pub lag: f64,
    pub lag_c: f64,
    pub lag_q: f64,
    pub jarzynski_residual: Option<f64>,
}

/// Uniform grid over `[−10/ω, 10/ω]` with 2001 points.
pub fn default_u_grid(spec: &ChainSpec) -> Vec<f64> {
    uniform_grid(-10.0 / spec.omega, 10.0 / spec.omega, 2001)
}

pub fn uniform_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let h = (stop - start) / (count - 1) as f64;
    (0..count).map(|k| start + h * k as f64).collect()
}

/// `ln(2 sinh x)` for `x > 0`, accurate for small and large `x`.
pub fn ln_two_sinh(x: f64) -> f64 {
    x + (-(-2.0 * x).exp_m1()).ln()
}

/// Rescaled radicand `e^{−μ|Im u|} D̃(u)` of one normal mode, where
/// `D̃ = e^{−ωβ} D` keeps the `β → ∞` limit finite.
fn mode_radicand(omega: f64, mu: f64, beta: f64, u: C64) -> C64 {
    let i = C64::i();
    let damp = if beta.is_infinite() { 0.0 } else { (-2.0 * omega * beta).exp() };
    let shift = mu * u.im.abs();
    let cos_mu = ((i * mu * u - shift).exp() + (-i * mu * u - shift).exp()) * 0.5;
    let sin_mu = ((i * mu * u - shift).exp() - (-i * mu * u - shift).exp()) / (2.0 * i);
    let fwd = (i * omega * u).exp();
    let back = (-i * omega * u).exp() * damp;
    let c = (fwd + back) * 0.5;
    let s = (fwd - back) / (2.0 * i);
    let kappa = omega / mu + mu / omega;
    let edge = if beta.is_infinite() { 0.0 } else { 2.0 * (-omega * beta - shift).exp() };
    cos_mu * c * 2.0 + sin_mu * s * kappa - edge
}

/// `ln χ_j(u)` of one normal mode (imaginary part defined modulo 2π).
pub fn ln_chi_mode(omega: f64, mu: f64, beta: f64, u: C64) -> Result<C64> {
    if mu == omega || u == C64::from(0.0) {
        return Ok(C64::from(0.0));
    }
    let root = continued_sqrt(|tau| mode_radicand(omega, mu, beta, u * tau))?;
    let ln_num = if beta.is_infinite() { 0.0 } else { (-(-beta * omega).exp_m1()).ln() };
    Ok(C64::from(ln_num - 0.5 * mu * u.im.abs()) - root.ln())
}

/// `ln χ(u)` for complex `u`.
pub fn ln_chi(spec: &ChainSpec, u: C64) -> Result<C64> {
    spec.validate()?;
    let nm = normal_modes(spec)?;
    nm.mus
        .iter()
        .map(|&mu| ln_chi_mode(spec.omega, mu, spec.beta, u))
        .sum()
}

pub fn chi(spec: &ChainSpec, u: C64) -> Result<C64> {
    Ok(ln_chi(spec, u)?.exp())
}

pub fn characteristic_function(spec: &ChainSpec, u_grid: &[f64]) -> Result<WorkCharacteristic> {
    spec.validate()?;
    let nm = normal_modes(spec)?;
    let chi = u_grid
        .iter()
        .map(|&u| {
            let mut acc = C64::from(0.0);
            for &mu in &nm.mus {
                acc += ln_chi_mode(spec.omega, mu, spec.beta, C64::from(u))?;
            }
            Ok(acc.exp())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WorkCharacteristic { u_grid: u_grid.to_vec(), chi, spec: *spec })
}

/// Quadratic form `Q(α) = a α² + b α*² + c |α|²` in the exponent of the
/// single-mode echo, read off from three sample amplitudes.
fn echo_quadratic(omega: f64, mu: f64, u: C64) -> Result<(C64, C64, C64, C64)> {
    let base = mode_echo(omega, mu, C64::from(0.0), u)?;
    let q = |alpha: C64| -> Result<C64> { Ok((mode_echo(omega, mu, alpha, u)? / base).ln()) };
    let q1 = q(C64::from(1.0))?;
    let qi = q(C64::i())?;
    let qe = q(C64::from_polar(1.0, std::f64::consts::FRAC_PI_4))?;
    let c = (q1 + qi) * 0.5;
    let a_plus_b = (q1 - qi) * 0.5;
    let a_minus_b = (qe - c) / C64::i();
    Ok(((a_plus_b + a_minus_b) * 0.5, (a_plus_b - a_minus_b) * 0.5, c, base))
}

/// `χ_j(u)` from the thermal P-function convolution of the coherent echo.
///
/// Only real `u` is supported; the echo exponent is quadratic in `α`, so the
/// integral is Gaussian and converges when its real part is bounded above.
pub fn chi_mode_convolution(omega: f64, mu: f64, beta: f64, u: f64) -> Result<C64> {
    if mu == omega {
        return Ok(C64::from(1.0));
    }
    let (a, b, c, base) = echo_quadratic(omega, mu, C64::from(u))?;
    let vt = coth_half(beta, omega);
    let nbar = (vt - 1.0) / 2.0;
    if nbar == 0.0 {
        return Ok(base);
    }
    if c.re + (a + b.conj()).norm() >= 1.0 / nbar {
        return Err(Error::Nonconvergent(format!("thermal convolution at u = {u}")));
    }
    let det = (C64::from(1.0) - c * nbar).powi(2) - a * b * 4.0 * nbar * nbar;
    // det is continuous in u and equals 1 at u = 0 with positive real part.
    Ok(base / det.sqrt())
}

pub fn chi_convolution(spec: &ChainSpec, u: f64) -> Result<C64> {
    let nm = normal_modes(spec)?;
    nm.mus
        .iter()
        .map(|&mu| chi_mode_convolution(spec.omega, mu, spec.beta, u))
        .product()
}

/// `⟨W⟩ = g0 V (N−1)/2`.
pub fn average_work(spec: &ChainSpec) -> f64 {
    spec.g0 * spec.thermal_variance() * (spec.n_modes - 1) as f64 / 2.0
}

/// `−i ∂_u χ |₀` by a fourth-order central difference with step `h`.
pub fn average_work_from_chi(spec: &ChainSpec, h: f64) -> Result<f64> {
    let f = |u: f64| chi(spec, C64::from(u));
    let d = ((f(h)? - f(-h)?) * 8.0 - (f(2.0 * h)? - f(-2.0 * h)?)) / (12.0 * h);
    Ok((d * -C64::i()).re)
}

/// Log partition functions of the pre- and post-quench Hamiltonians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PartitionFunctions {
    pub ln_z0: f64,
    pub ln_z: f64,
}

impl PartitionFunctions {
    pub fn z0(&self) -> f64 {
        self.ln_z0.exp()
    }
    pub fn z(&self) -> f64 {
        self.ln_z.exp()
    }
    pub fn ratio(&self) -> f64 {
        (self.ln_z - self.ln_z0).exp()
    }
}

pub fn partition_functions(spec: &ChainSpec) -> Result<PartitionFunctions> {
    spec.validate()?;
    if spec.zero_temperature() {
        return Ok(PartitionFunctions { ln_z0: f64::NEG_INFINITY, ln_z: f64::NEG_INFINITY });
    }
    let nm = normal_modes(spec)?;
    let b = spec.beta;
    Ok(PartitionFunctions {
        ln_z0: -(spec.n_modes as f64) * ln_two_sinh(b * spec.omega / 2.0),
        ln_z: -nm.mus.iter().map(|m| ln_two_sinh(b * m / 2.0)).sum::<f64>(),
    })
}

/// `ΔF = (1/β) Σ_j [ln sinh(βμ_j/2) − ln sinh(βω/2)]`; `Σ (μ_j − ω)/2` at `β = ∞`.
pub fn free_energy_change(spec: &ChainSpec) -> Result<f64> {
    spec.validate()?;
    let nm = normal_modes(spec)?;
    let w = spec.omega;
    if spec.zero_temperature() {
        return Ok(nm.mus.iter().map(|m| (m - w) / 2.0).sum());
    }
    let b = spec.beta;
    let s: f64 = nm.mus.iter().map(|m| ln_two_sinh(b * m / 2.0) - ln_two_sinh(b * w / 2.0)).sum();
    Ok(s / b)
}

/// Closed-form lag `(N−1)(βg0V/2 + ln sinh(βω/2)) − Σ_{j≥2} ln sinh(βμ_j/2)`.
pub fn lag_closed_form(spec: &ChainSpec) -> Result<f64> {
    spec.validate()?;
    if spec.g0 == 0.0 {
        return Ok(0.0);
    }
    if spec.zero_temperature() {
        return Ok(f64::INFINITY);
    }
    let nm = normal_modes(spec)?;
    let b = spec.beta;
    let v = spec.thermal_variance();
    let head = (spec.n_modes - 1) as f64 * (b * spec.g0 * v / 2.0 + ln_two_sinh(b * spec.omega / 2.0));
    let tail: f64 = nm.mus[1..].iter().map(|m| ln_two_sinh(b * m / 2.0)).sum();
    Ok(head - tail)
}

/// `β(⟨W⟩ − ΔF)`.
pub fn lag_from_work(spec: &ChainSpec) -> Result<f64> {
    if spec.zero_temperature() {
        return Ok(if spec.g0 == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok(spec.beta * (average_work(spec) - free_energy_change(spec)?))
}

/// High-temperature limit `(N−1) g0/ω − (1/2) Σ_j ln(λ_j/ω)`.
pub fn lag_classical(spec: &ChainSpec) -> Result<f64> {
    let nm = normal_modes(spec)?;
    let w = spec.omega;
    Ok((spec.n_modes - 1) as f64 * spec.g0 / w - 0.5 * nm.lambdas.iter().map(|l| (l / w).ln()).sum::<f64>())
}

pub fn nonequilibrium_lag(spec: &ChainSpec) -> Result<ThermoReport> {
    let lag = lag_closed_form(spec)?;
    let lag_c = lag_classical(spec)?;
    Ok(ThermoReport {
        avg_work: average_work(spec),
        delta_f: free_energy_change(spec)?,
        lag,
        lag_c,
        lag_q: lag - lag_c,
        jarzynski_residual: None,
    })
}

/// `|χ(iβ) e^{βΔF} − 1|` with `χ` continued along the imaginary axis.
pub fn jarzynski_check(spec: &ChainSpec) -> Result<f64> {
    spec.validate()?;
    if spec.zero_temperature() {
        return Err(Error::InvalidSpec("the Jarzynski point needs finite beta".into()));
    }
    let l = ln_chi(spec, C64::new(0.0, spec.beta))?;
    let z = l + spec.beta * free_energy_change(spec)?;
    Ok((z.exp() - 1.0).norm())
}

/// Work moments of the two-mode exchange quench.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RwaStatistics {
    pub avg_work: f64,
    pub second_moment: f64,
    /// `c` in `χ(u) ≃ 1 − c u²`.
    pub chi_u2_coefficient: f64,
}

/// The exchange coupling commutes with the free Hamiltonian, so `⟨W⟩ = 0`
/// and `χ ≃ 1 − g0²(V² − 1)u²/16`.
pub fn rwa_statistics(spec: &ChainSpec) -> Result<RwaStatistics> {
    spec.validate_h2()?;
    let v = spec.thermal_variance();
    let c = spec.g0 * spec.g0 * (v * v - 1.0) / 16.0;
    Ok(RwaStatistics { avg_work: 0.0, second_moment: 2.0 * c, chi_u2_coefficient: c })
}
