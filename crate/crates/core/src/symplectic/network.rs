use super::gaussian::{beam_splitter_modes, SymplecticOp};
use crate::chain::{normal_modes, ChainSpec};
use crate::error::{Error, Result};
use crate::interferometer::reck_decompose;
use crate::C64;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum NetworkElement {
    BeamSplitter { mode_i: usize, mode_j: usize, theta: f64, phi: f64 },
    Rotation { mode: usize, theta: f64 },
    Squeezer { mode: usize, r: f64 },
}

impl NetworkElement {
    pub fn inverse(&self) -> Self {
        match *self {
            Self::BeamSplitter { mode_i, mode_j, theta, phi } => {
                Self::BeamSplitter { mode_i, mode_j, theta: -theta, phi }
            }
            Self::Rotation { mode, theta } => Self::Rotation { mode, theta: -theta },
            Self::Squeezer { mode, r } => Self::Squeezer { mode, r: -r },
        }
    }

    fn modes(&self) -> Vec<usize> {
        match *self {
            Self::BeamSplitter { mode_i, mode_j, .. } => vec![mode_i, mode_j],
            Self::Rotation { mode, .. } | Self::Squeezer { mode, .. } => vec![mode],
        }
    }

    pub fn symplectic(&self, n: usize) -> SymplecticOp {
        let local = match *self {
            Self::BeamSplitter { theta, phi, .. } => SymplecticOp::beam_splitter(theta, phi),
            Self::Rotation { theta, .. } => SymplecticOp::rotation(theta),
            Self::Squeezer { r, .. } => SymplecticOp::squeezer(r),
        };
        local.embed(n, &self.modes())
    }
}

/// Ordered list of elements; element 0 acts first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpticalNetwork {
    pub n_modes: usize,
    pub elements: Vec<NetworkElement>,
}

impl OpticalNetwork {
    pub fn new(n_modes: usize) -> Self {
        OpticalNetwork { n_modes, elements: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        for e in &self.elements {
            let m = e.modes();
            if m.iter().any(|&k| k >= self.n_modes) || (m.len() == 2 && m[0] == m[1]) {
                return Err(Error::InvalidSpec(format!("bad mode indices in {e:?}")));
            }
        }
        Ok(())
    }

    /// Network run backwards with every element inverted.
    pub fn inverse(&self) -> Self {
        OpticalNetwork {
            n_modes: self.n_modes,
            elements: self.elements.iter().rev().map(NetworkElement::inverse).collect(),
        }
    }

    /// Copy without elements that act as the identity (zero angle or degree).
    pub fn simplified(&self) -> Self {
        let keep = |e: &&NetworkElement| match **e {
            NetworkElement::BeamSplitter { theta, .. } | NetworkElement::Rotation { theta, .. } => theta != 0.0,
            NetworkElement::Squeezer { r, .. } => r != 0.0,
        };
        OpticalNetwork { n_modes: self.n_modes, elements: self.elements.iter().filter(keep).cloned().collect() }
    }

    pub fn extend(&mut self, other: &OpticalNetwork) {
        self.elements.extend(other.elements.iter().cloned());
    }

    pub fn symplectic(&self) -> SymplecticOp {
        self.elements
            .iter()
            .fold(SymplecticOp::identity(self.n_modes), |acc, e| acc.then(&e.symplectic(self.n_modes)))
    }

    /// Mode matrix `U` (`a ↦ U a`) of a passive network.
    pub fn mode_matrix(&self) -> Result<DMatrix<C64>> {
        let n = self.n_modes;
        let mut u = DMatrix::<C64>::identity(n, n);
        for e in &self.elements {
            let mut local = DMatrix::<C64>::identity(n, n);
            match *e {
                NetworkElement::BeamSplitter { mode_i, mode_j, theta, phi } => {
                    let b = beam_splitter_modes(theta, phi);
                    let idx = [mode_i, mode_j];
                    for r in 0..2 {
                        for c in 0..2 {
                            local[(idx[r], idx[c])] = b[(r, c)];
                        }
                    }
                }
                NetworkElement::Rotation { mode, theta } => {
                    local[(mode, mode)] = C64::from_polar(1.0, -theta);
                }
                NetworkElement::Squeezer { .. } => {
                    return Err(Error::InvalidSpec("squeezers have no mode matrix".into()));
                }
            }
            u = local * u;
        }
        Ok(u)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let net: OpticalNetwork = serde_json::from_str(s)?;
        net.validate()?;
        Ok(net)
    }
}

/// Network realizing the post-quench evolution `exp(−i H₁ t)`:
/// mixer into normal modes, squeeze, rotate by `μ_j t`, unsqueeze, unmix.
pub fn propagator_network(spec: &ChainSpec, t: f64) -> Result<OpticalNetwork> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidSpec(format!("time must be finite and >= 0, got {t}")));
    }
    let nm = normal_modes(spec)?;
    let mixer = reck_decompose(&nm.p_matrix.transpose())?.network.simplified();
    let n = spec.n_modes;
    let mut net = OpticalNetwork::new(n);
    net.extend(&mixer);
    let squeezed: Vec<usize> = (1..n).filter(|&j| nm.squeeze_params[j] != 0.0).collect();
    for &j in &squeezed {
        net.elements.push(NetworkElement::Squeezer { mode: j, r: nm.squeeze_params[j] });
    }
    for j in 0..n {
        net.elements.push(NetworkElement::Rotation { mode: j, theta: nm.mus[j] * t });
    }
    for &j in &squeezed {
        net.elements.push(NetworkElement::Squeezer { mode: j, r: -nm.squeeze_params[j] });
    }
    net.extend(&mixer.inverse());
    Ok(net)
}
