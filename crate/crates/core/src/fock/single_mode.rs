//! Single-mode displaced squeezed vacua built by exponentiating generators
//! in an enlarged truncated space.

use crate::C64;
use nalgebra::{DMatrix, DVector, SymmetricEigen};

const PADDING: usize = 80;

fn ladder(dim: usize) -> DMatrix<C64> {
    DMatrix::from_fn(dim, dim, |r, c| if c == r + 1 { C64::from((c as f64).sqrt()) } else { C64::from(0.0) })
}

/// `exp(G)` for anti-Hermitian `G`, through the eigenbasis of `iG`.
fn exp_anti_hermitian(g: &DMatrix<C64>) -> DMatrix<C64> {
    let h = g * C64::i();
    let h = (&h + h.adjoint()) * C64::from(0.5);
    let eig = SymmetricEigen::new(h);
    let phases = DVector::from_iterator(eig.eigenvalues.len(), eig.eigenvalues.iter().map(|&l| C64::from_polar(1.0, -l)));
    &eig.eigenvectors * DMatrix::from_diagonal(&phases) * eig.eigenvectors.adjoint()
}

/// Amplitudes `⟨n| D(ζ) S(ξ) |0⟩` for `n ≤ n_max`, with
/// `S(ξ) = exp[(ξ a†² − ξ* a²)/2]` and `D(ζ) = exp(ζ a† − ζ* a)`.
pub fn displaced_squeezed(zeta: C64, xi: C64, n_max: usize) -> Vec<C64> {
    let dim = n_max + 1 + PADDING;
    let a = ladder(dim);
    let ad = a.adjoint();
    let sq = (&ad * &ad * xi - &a * &a * xi.conj()) * C64::from(0.5);
    let disp = &ad * zeta - &a * zeta.conj();
    let mut vac = DVector::zeros(dim);
    vac[0] = C64::from(1.0);
    let psi = exp_anti_hermitian(&disp) * (exp_anti_hermitian(&sq) * vac);
    psi.iter().take(n_max + 1).copied().collect()
}
