use crate::chain::{normal_modes, ChainSpec};
use crate::error::{Error, Result};
use crate::linalg::{continued_sqrt, ensure_orthogonal};
use crate::C64;
use nalgebra::DMatrix;

/// `D(ζ) S(ξ)|0⟩` with `S(ξ) = exp[(ξ a†² − ξ* a²)/2]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DisplacedSqueezedState {
    pub zeta: C64,
    pub xi: C64,
}

impl DisplacedSqueezedState {
    pub fn new(zeta: C64, xi: C64) -> Self {
        DisplacedSqueezedState { zeta, xi }
    }
}

/// Holomorphic parameters of one side of the overlap: the amplitude `ζ`,
/// an independent stand-in for `ζ*`, `t = e^{iφ} tanh ρ` and its partner,
/// and `cosh ρ`. For physical states the partners are complex conjugates;
/// the echo continues them separately to complex `u`.
#[derive(Clone, Copy, Debug)]
struct Side {
    z: C64,
    z_bar: C64,
    t: C64,
    t_bar: C64,
    cosh: f64,
}

impl Side {
    fn physical(s: &DisplacedSqueezedState) -> Self {
        let rho = s.xi.norm();
        let phase = if rho > 0.0 { s.xi / rho } else { C64::from(1.0) };
        let t = phase * rho.tanh();
        Side { z: s.zeta, z_bar: s.zeta.conj(), t, t_bar: t.conj(), cosh: rho.cosh() }
    }
}

/// Exponent and radicand with `⟨a|b⟩ = exp(exponent) / sqrt(radicand)`.
fn overlap_parts(a: &Side, b: &Side) -> (C64, C64) {
    let d = b.z - a.z;
    let d_bar = b.z_bar - a.z_bar;
    let c = d - b.t * d_bar;
    let k = C64::from(1.0) - a.t_bar * b.t;
    let exponent = -d * d_bar * 0.5
        + b.t * d_bar * d_bar * 0.5
        + (a.z_bar * b.z - a.z * b.z_bar) * 0.5
        + a.t_bar * c * c / (k * 2.0);
    (exponent, k * (a.cosh * b.cosh))
}

/// `⟨ζ_a; ξ_a | ζ_b; ξ_b⟩` including the global phase.
pub fn overlap_dss(a: &DisplacedSqueezedState, b: &DisplacedSqueezedState) -> C64 {
    let (e, radicand) = overlap_parts(&Side::physical(a), &Side::physical(b));
    // |t_a t_b| < 1 keeps the radicand in the right half plane.
    e.exp() / radicand.sqrt()
}

/// Echo amplitude and radicand for one normal mode of frequency `mu`
/// starting in the coherent state `|α⟩` of the free mode `omega`.
fn mode_echo_parts(omega: f64, mu: f64, alpha: C64, u: C64) -> (C64, C64) {
    let s = 0.5 * (mu / omega).ln();
    let (ch, sh) = (s.cosh(), s.sinh());
    let i = C64::i();
    let e_mu = (i * mu * u).exp();
    let e_w = (i * omega * u).exp();
    let (e_mu_inv, e_w_inv) = (C64::from(1.0) / e_mu, C64::from(1.0) / e_w);
    let a_bar = alpha.conj();
    let first = Side {
        z: alpha * ch + a_bar * sh,
        z_bar: a_bar * ch + alpha * sh,
        t: C64::from(s.tanh()),
        t_bar: C64::from(s.tanh()),
        cosh: ch,
    };
    let second = Side {
        z: e_mu * (alpha * e_w_inv * ch + a_bar * e_w * sh),
        z_bar: e_mu_inv * (a_bar * e_w * ch + alpha * e_w_inv * sh),
        t: e_mu * e_mu * s.tanh(),
        t_bar: e_mu_inv * e_mu_inv * s.tanh(),
        cosh: ch,
    };
    let (exponent, radicand) = overlap_parts(&first, &second);
    let prefactor = (i * (mu - omega) * u * 0.5).exp();
    (prefactor * exponent.exp(), radicand)
}

/// `⟨α| e^{iuH_f} e^{−iuH_i} |α⟩` for a single normal mode whose frequency
/// changes from `omega` to `mu`, with the square root continued along the
/// straight path from `u = 0`.
pub fn mode_echo(omega: f64, mu: f64, alpha: C64, u: C64) -> Result<C64> {
    if mu == omega {
        return Ok(C64::from(1.0));
    }
    let (amp, radicand) = mode_echo_parts(omega, mu, alpha, u);
    let root = if u.im == 0.0 {
        // Re(cosh² s − sinh² s e^{2iμu}) > 0 on the real axis.
        radicand.sqrt()
    } else {
        continued_sqrt(|tau| mode_echo_parts(omega, mu, alpha, u * tau).1)?
    };
    Ok(amp / root)
}

/// Two-mode coherent echo for the spring quench.
pub fn coherent_echo(spec: &ChainSpec, alpha1: C64, alpha2: C64, u: C64) -> Result<C64> {
    if spec.n_modes != 2 {
        return Err(Error::InvalidSpec("coherent_echo is defined for two modes".into()));
    }
    chain_echo(spec, &[alpha1, alpha2], u)
}

/// Echo of a product coherent state `⊗|α_j⟩` for any chain length.
pub fn chain_echo(spec: &ChainSpec, alphas: &[C64], u: C64) -> Result<C64> {
    if alphas.len() != spec.n_modes {
        return Err(Error::InvalidSpec("one amplitude per mode is required".into()));
    }
    let nm = normal_modes(spec)?;
    let (_, modes) = coherent_transform(&nm.p_matrix, alphas)?;
    let mut acc = C64::from(1.0);
    for (beta, mu) in modes.iter().zip(&nm.mus) {
        acc *= mode_echo(spec.omega, *mu, *beta, u)?;
    }
    Ok(acc)
}

/// Normal-mode amplitudes `ℙᵀ α` of a site coherent state and the induced
/// global phase, which vanishes for real orthogonal `ℙ`.
pub fn coherent_transform(p_matrix: &DMatrix<f64>, amplitudes: &[C64]) -> Result<(f64, Vec<C64>)> {
    ensure_orthogonal(p_matrix, 1e-10)?;
    if p_matrix.nrows() != amplitudes.len() {
        return Err(Error::InvalidSpec("amplitude count does not match the matrix".into()));
    }
    let out = (0..p_matrix.ncols())
        .map(|i| (0..p_matrix.nrows()).map(|j| amplitudes[j] * p_matrix[(j, i)]).sum())
        .collect();
    Ok((0.0, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn normalization_and_coherent_limit() {
        let a = DisplacedSqueezedState::new(c(0.3, -0.4), c(0.2, 0.5));
        assert!((overlap_dss(&a, &a) - 1.0).norm() < 1e-14);
        let (za, zb) = (c(0.3, 0.1), c(-0.2, 0.7));
        let got = overlap_dss(
            &DisplacedSqueezedState::new(za, C64::from(0.0)),
            &DisplacedSqueezedState::new(zb, C64::from(0.0)),
        );
        let want = (-(za.norm_sqr() + zb.norm_sqr()) / 2.0 + za.conj() * zb).exp();
        assert!((got - want).norm() < 1e-15);
    }

    #[test]
    fn uncoupled_echo_is_one() {
        let spec = ChainSpec::new(2, 1.0, 0.0, 1.0).unwrap();
        let e = coherent_echo(&spec, c(0.3, 0.0), c(0.0, -0.2), C64::from(2.3)).unwrap();
        assert!((e - 1.0).norm() < 1e-15);
    }

    #[test]
    fn symmetric_input_feeds_centre_of_mass() {
        let p = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, -1.0]) / 2f64.sqrt();
        let a = c(0.4, -0.1);
        let (phase, out) = coherent_transform(&p, &[a, a]).unwrap();
        assert_eq!(phase, 0.0);
        assert!((out[0] - a * 2f64.sqrt()).norm() < 1e-15 && out[1].norm() < 1e-15);
        assert!(coherent_transform(&(p * 1.1), &[a, a]).is_err());
    }
}
