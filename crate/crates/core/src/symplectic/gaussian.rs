use crate::chain::ChainSpec;
use crate::error::{Error, Result};
use crate::linalg::{max_abs, symplectic_form};
use crate::C64;
use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Displacement and covariance of an `N`-mode Gaussian state, `(x.., p..)`
/// ordering, vacuum covariance = identity.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianState {
    pub displacement: DVector<f64>,
    pub cov: DMatrix<f64>,
}

impl GaussianState {
    pub fn vacuum(n: usize) -> Self {
        Self::isotropic(n, 1.0)
    }

    /// Product of identical thermal modes with variance `v = 2n̄ + 1`.
    pub fn isotropic(n: usize, v: f64) -> Self {
        GaussianState {
            displacement: DVector::zeros(2 * n),
            cov: DMatrix::identity(2 * n, 2 * n) * v,
        }
    }

    /// Pre-quench equilibrium state: `coth(βω/2)·𝟙`.
    pub fn thermal(spec: &ChainSpec) -> Self {
        Self::isotropic(spec.n_modes, spec.thermal_variance())
    }

    pub fn n_modes(&self) -> usize {
        self.displacement.len() / 2
    }

    /// Smallest eigenvalue of the Hermitian matrix `cov + iJ`.
    pub fn uncertainty_margin(&self) -> f64 {
        let j = symplectic_form(self.n_modes());
        let h = DMatrix::from_fn(self.cov.nrows(), self.cov.ncols(), |r, c| {
            C64::new(self.cov[(r, c)], j[(r, c)])
        });
        SymmetricEigen::new(h).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn validate(&self) -> Result<()> {
        if max_abs(&(&self.cov - self.cov.transpose())) > 1e-10 * (1.0 + max_abs(&self.cov)) {
            return Err(Error::InvalidSpec("covariance is not symmetric".into()));
        }
        let margin = self.uncertainty_margin();
        if margin < -1e-10 {
            return Err(Error::Unphysical(margin));
        }
        Ok(())
    }

    pub fn apply(&self, op: &SymplecticOp) -> GaussianState {
        GaussianState {
            displacement: &op.matrix * &self.displacement + &op.displacement_shift,
            cov: &op.matrix * &self.cov * op.matrix.transpose(),
        }
    }

    /// `det σ`, equal to 1 for pure states.
    pub fn purity_determinant(&self) -> f64 {
        self.cov.determinant()
    }
}

/// Affine Heisenberg map `r ↦ S r + d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticOp {
    pub matrix: DMatrix<f64>,
    pub displacement_shift: DVector<f64>,
}

impl SymplecticOp {
    pub fn identity(n: usize) -> Self {
        Self::linear(DMatrix::identity(2 * n, 2 * n))
    }

    pub fn linear(matrix: DMatrix<f64>) -> Self {
        let d = matrix.nrows();
        SymplecticOp { matrix, displacement_shift: DVector::zeros(d) }
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    /// Passive element with mode matrix `u` (`a ↦ u a`).
    pub fn passive(u: &DMatrix<C64>) -> Self {
        let n = u.nrows();
        let mut s = DMatrix::zeros(2 * n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                let z = u[(r, c)];
                s[(r, c)] = z.re;
                s[(r, n + c)] = -z.im;
                s[(n + r, c)] = z.im;
                s[(n + r, n + c)] = z.re;
            }
        }
        Self::linear(s)
    }

    /// Two-mode mixer with mode matrix `[[cos θ, −e^{iφ} sin θ], [e^{−iφ} sin θ, cos θ]]`.
    pub fn beam_splitter(theta: f64, phi: f64) -> Self {
        Self::passive(&beam_splitter_modes(theta, phi))
    }

    /// `exp(−iθ(x² + p²))`: `x ↦ x cos θ + p sin θ`, `p ↦ p cos θ − x sin θ`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::linear(DMatrix::from_row_slice(2, 2, &[c, s, -s, c]))
    }

    /// Single-mode squeezer `diag(e^{2r}, e^{−2r})`.
    ///
    /// The sign is the one that maps a free mode of frequency `ω` onto a mode
    /// with potential `λ` when `e^{8r} = λ/ω`.
    pub fn squeezer(r: f64) -> Self {
        Self::linear(DMatrix::from_row_slice(2, 2, &[(2.0 * r).exp(), 0.0, 0.0, (-2.0 * r).exp()]))
    }

    /// Weyl displacement by complex amplitude `alpha` on one mode.
    pub fn displacement(alpha: C64) -> Self {
        let mut op = Self::identity(1);
        op.displacement_shift[0] = alpha.re;
        op.displacement_shift[1] = alpha.im;
        op
    }

    /// Embed a one- or two-mode op acting on `modes` into `n` modes.
    pub fn embed(&self, n: usize, modes: &[usize]) -> Self {
        let k = modes.len();
        assert_eq!(k, self.n_modes(), "mode list length must match the op");
        let mut out = Self::identity(n);
        let idx = |q: usize| if q < k { modes[q] } else { n + modes[q - k] };
        for r in 0..2 * k {
            for c in 0..2 * k {
                out.matrix[(idx(r), idx(c))] = self.matrix[(r, c)];
            }
            out.displacement_shift[idx(r)] = self.displacement_shift[r];
        }
        out
    }

    /// Apply `self` first, then `next`.
    pub fn then(&self, next: &SymplecticOp) -> SymplecticOp {
        SymplecticOp {
            matrix: &next.matrix * &self.matrix,
            displacement_shift: &next.matrix * &self.displacement_shift + &next.displacement_shift,
        }
    }

    pub fn symplectic_defect(&self) -> f64 {
        let j = symplectic_form(self.n_modes());
        max_abs(&(&self.matrix * &j * self.matrix.transpose() - j))
    }

    pub fn is_symplectic(&self, tol: f64) -> bool {
        self.symplectic_defect() < tol
    }
}

pub(crate) fn beam_splitter_modes(theta: f64, phi: f64) -> DMatrix<C64> {
    let (s, c) = theta.sin_cos();
    let e = C64::from_polar(1.0, phi);
    DMatrix::from_row_slice(2, 2, &[C64::from(c), -e * s, e.conj() * s, C64::from(c)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn elementary_ops_are_symplectic() {
        for op in [
            SymplecticOp::beam_splitter(0.3, 1.1),
            SymplecticOp::squeezer(0.7).embed(2, &[1]),
            SymplecticOp::rotation(2.0).embed(3, &[2]),
        ] {
            assert!(op.is_symplectic(1e-12));
        }
    }

    #[test]
    fn full_turn_and_zero_squeeze_are_identity() {
        assert!(max_abs(&(SymplecticOp::rotation(2.0 * PI).matrix - DMatrix::identity(2, 2))) < 1e-15);
        assert_eq!(SymplecticOp::squeezer(0.0), SymplecticOp::identity(1));
    }

    #[test]
    fn fifty_fifty_twice_swaps_with_sign() {
        let b = SymplecticOp::beam_splitter(PI / 4.0, 0.0);
        let bb = b.then(&b);
        let swap = SymplecticOp::passive(&DMatrix::from_row_slice(
            2,
            2,
            &[C64::from(0.0), C64::from(-1.0), C64::from(1.0), C64::from(0.0)],
        ));
        assert!(max_abs(&(bb.matrix - swap.matrix)) < 1e-15);
        assert!((b.matrix[(0, 0)] - 0.5_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn thermal_variance_values() {
        let s = ChainSpec::new(2, 1.0, 0.0, 1.0).unwrap();
        assert!((GaussianState::thermal(&s).cov[(0, 0)] - 2.163953413738653).abs() < 1e-12);
        let beta = 2.0 * (1.0f64 / 3.0).atanh();
        assert!((GaussianState::thermal(&s.with_beta(beta)).cov[(3, 3)] - 3.0).abs() < 1e-12);
        assert_eq!(GaussianState::thermal(&s.with_beta(f64::INFINITY)).cov, DMatrix::identity(4, 4));
    }

    #[test]
    fn unphysical_covariance_rejected() {
        let mut st = GaussianState::vacuum(1);
        st.cov[(0, 0)] = 0.5;
        assert!(matches!(st.validate(), Err(Error::Unphysical(_))));
        assert!(GaussianState::vacuum(1).validate().is_ok());
    }
}
