//! Small dense linear-algebra helpers shared by the Gaussian and Fock code.

use crate::error::{Error, Result};
use crate::C64;
use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Symplectic form for `(x₁..x_N, p₁..p_N)` ordering: `[[0, I], [−I, 0]]`.
pub fn symplectic_form(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = 1.0;
        j[(n + i, i)] = -1.0;
    }
    j
}

/// Symplectic form for mode-wise ordering `(x₁, p₁, x₂, p₂, ...)`.
pub fn symplectic_form_modewise(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(2 * i, 2 * i + 1)] = 1.0;
        j[(2 * i + 1, 2 * i)] = -1.0;
    }
    j
}

/// Eigen-decomposition of a real symmetric matrix with ascending eigenvalues.
pub fn sym_eigen_sorted(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Principal square root of a symmetric positive-definite matrix.
pub fn sqrtm_spd(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let (vals, vecs) = sym_eigen_sorted(m);
    if vals[0] <= 0.0 {
        return Err(Error::Unphysical(vals[0]));
    }
    let d = DMatrix::from_diagonal(&DVector::from_iterator(
        vals.len(),
        vals.iter().map(|v| v.sqrt()),
    ));
    Ok(&vecs * d * vecs.transpose())
}

/// Symplectic eigenvalues of a positive-definite quadratic form `m` with
/// respect to the symplectic form `j`, ascending, one per mode.
///
/// Uses the symmetric route `eig(m^{1/2} Jᵀ m J m^{1/2}) = ν²` (each twice).
pub fn symplectic_eigenvalues(m: &DMatrix<f64>, j: &DMatrix<f64>) -> Result<Vec<f64>> {
    let half = sqrtm_spd(m)?;
    let mut w = &half * j.transpose() * m * j * &half;
    w = (&w + w.transpose()) * 0.5;
    let (vals, _) = sym_eigen_sorted(&w);
    Ok(vals.iter().step_by(2).map(|v| v.max(0.0).sqrt()).collect())
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |a, v| a.max(v.abs()))
}

/// `max |MᵀM − I|`.
pub fn orthogonality_defect(m: &DMatrix<f64>) -> f64 {
    let n = m.ncols();
    max_abs(&(m.transpose() * m - DMatrix::identity(n, n)))
}

pub fn ensure_orthogonal(m: &DMatrix<f64>, tol: f64) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotOrthogonal(f64::INFINITY));
    }
    let d = orthogonality_defect(m);
    if d.is_finite() && d < tol {
        Ok(())
    } else {
        Err(Error::NotOrthogonal(d))
    }
}

/// Square root of `f(1)` continued by continuity from `sqrt(f(0))`
/// (principal branch at the start) along the parameter interval `[0, 1]`.
///
/// Steps adaptively so that consecutive radicands differ by a ratio close to
/// one; the principal root of that ratio is then unambiguous.
pub fn continued_sqrt(f: impl Fn(f64) -> C64) -> Result<C64> {
    const MAX_RATIO_STEP: f64 = 0.25;
    const MIN_STEP: f64 = 1e-13;
    let mut tau = 0.0;
    let mut value = f(0.0);
    if value.norm() == 0.0 || !value.is_finite() {
        return Err(Error::Continuation("radicand vanishes at the path origin".into()));
    }
    let mut root = value.sqrt();
    let mut h: f64 = 1.0 / 32.0;
    while tau < 1.0 {
        let next_tau = (tau + h).min(1.0);
        let next = f(next_tau);
        if !next.is_finite() {
            return Err(Error::Continuation(format!("radicand not finite at {next_tau}")));
        }
        let ratio = next / value;
        if next.norm() == 0.0 || (ratio - 1.0).norm() > MAX_RATIO_STEP {
            h *= 0.5;
            if h < MIN_STEP {
                return Err(Error::Continuation(format!(
                    "path passes through a branch point near parameter {tau}"
                )));
            }
            continue;
        }
        root *= ratio.sqrt();
        value = next;
        tau = next_tau;
        h = (h * 1.5).min(0.125);
    }
    Ok(root)
}
