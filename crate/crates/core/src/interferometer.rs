//! Triangular beam-splitter meshes for real orthogonal mode mixers.
//!
//! Sub-diagonal entries are nulled row by row from the bottom, each by a
//! real Givens rotation on neighbouring columns. Any leftover `−1` on the
//! diagonal becomes a `π` rotation applied last.

use crate::error::{Error, Result};
use crate::linalg::{ensure_orthogonal, max_abs};
use crate::symplectic::{NetworkElement, OpticalNetwork};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanHeader {
    pub n_modes: usize,
    /// SHA-256 of the source matrix entries (row-major, little-endian f64).
    pub source_hash: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkPlan {
    pub header: PlanHeader,
    #[serde(flatten)]
    pub network: OpticalNetwork,
    pub source_matrix: Vec<Vec<f64>>,
}

impl NetworkPlan {
    pub fn source(&self) -> DMatrix<f64> {
        let n = self.source_matrix.len();
        DMatrix::from_fn(n, n, |r, c| self.source_matrix[r][c])
    }

    /// Number of two-mode mixers in the mesh.
    pub fn mixer_count(&self) -> usize {
        self.network
            .elements
            .iter()
            .filter(|e| matches!(e, NetworkElement::BeamSplitter { .. }))
            .count()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn matrix_hash(m: &DMatrix<f64>) -> String {
    let mut h = Sha256::new();
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            h.update(m[(r, c)].to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

/// Decompose a real orthogonal matrix `p` into a mesh with `N(N−1)/2`
/// beam splitters (`φ = 0`) followed by at most `N` sign rotations.
pub fn reck_decompose(p: &DMatrix<f64>) -> Result<NetworkPlan> {
    ensure_orthogonal(p, 1e-10)?;
    let n = p.nrows();
    let mut m = p.clone();
    let mut net = OpticalNetwork::new(n);
    for r in (1..n).rev() {
        for c in 0..r {
            let (a, b) = (m[(r, c + 1)], m[(r, c)]);
            let theta = b.atan2(a);
            let (s, co) = theta.sin_cos();
            for k in 0..n {
                let (mp, mc) = (m[(k, c + 1)], m[(k, c)]);
                m[(k, c + 1)] = co * mp + s * mc;
                m[(k, c)] = -s * mp + co * mc;
            }
            net.elements.push(NetworkElement::BeamSplitter { mode_i: c, mode_j: c + 1, theta, phi: 0.0 });
        }
    }
    // m is now diagonal with ±1 entries and p = m · B_K ⋯ B_1, so the
    // splitters act in the order they were found.
    for k in 0..n {
        if m[(k, k)] < 0.0 {
            net.elements.push(NetworkElement::Rotation { mode: k, theta: PI });
        }
    }
    Ok(NetworkPlan {
        header: PlanHeader { n_modes: n, source_hash: matrix_hash(p) },
        network: net,
        source_matrix: (0..n).map(|r| (0..n).map(|c| p[(r, c)]).collect()).collect(),
    })
}

/// Real mode matrix realized by a passive, real network.
pub fn reconstruct_network(net: &OpticalNetwork) -> Result<DMatrix<f64>> {
    let u = net.mode_matrix()?;
    let imag = u.map(|z| z.im);
    if max_abs(&imag) > 1e-9 {
        return Err(Error::InvalidSpec("network mode matrix is not real".into()));
    }
    Ok(u.map(|z| z.re))
}

pub fn reconstruct(plan: &NetworkPlan) -> Result<DMatrix<f64>> {
    reconstruct_network(&plan.network)
}
