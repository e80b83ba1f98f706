//! Chain parameters, pre/post-quench quadratic forms and normal modes.

use crate::error::{Error, Result};
use crate::linalg::{orthogonality_defect, sym_eigen_sorted, symplectic_eigenvalues, symplectic_form};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Which post-quench Hamiltonian is switched on at `t = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Nearest-neighbour spring `g Σ (x_j − x_{j+1})²`.
    #[default]
    H1,
    /// Two-mode exchange `g (x₁p₂ − p₁x₂)`.
    H2,
}

/// Physical parameters of the chain and of the quench `g: 0 → g0`.
///
/// `beta = f64::INFINITY` selects the zero-temperature limit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub n_modes: usize,
    pub omega: f64,
    pub g0: f64,
    pub beta: f64,
}

impl ChainSpec {
    pub fn new(n_modes: usize, omega: f64, g0: f64, beta: f64) -> Result<Self> {
        let spec = ChainSpec { n_modes, omega, g0, beta };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_modes < 2 {
            return Err(Error::InvalidSpec(format!("n_modes must be >= 2, got {}", self.n_modes)));
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::InvalidSpec(format!("omega must be positive, got {}", self.omega)));
        }
        if !(self.g0.is_finite() && self.g0 >= 0.0) {
            return Err(Error::InvalidSpec(format!("g0 must be >= 0, got {}", self.g0)));
        }
        if self.beta.is_nan() || self.beta <= 0.0 {
            return Err(Error::InvalidSpec(format!("beta must be > 0, got {}", self.beta)));
        }
        Ok(())
    }

    pub fn validate_h2(&self) -> Result<()> {
        self.validate()?;
        if self.n_modes != 2 {
            return Err(Error::InvalidSpec("the exchange model is defined for two modes".into()));
        }
        if self.g0 >= 2.0 * self.omega {
            return Err(Error::CouplingTooStrong { g0: self.g0, bound: 2.0 * self.omega });
        }
        Ok(())
    }

    pub fn zero_temperature(&self) -> bool {
        self.beta.is_infinite()
    }

    /// Thermal variance `V = coth(βω/2)` of each uncoupled mode.
    pub fn thermal_variance(&self) -> f64 {
        coth_half(self.beta, self.omega)
    }

    pub fn with_g0(mut self, g0: f64) -> Self {
        self.g0 = g0;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }
}

/// `coth(βν/2)`, equal to 1 at `β = ∞`.
pub fn coth_half(beta: f64, nu: f64) -> f64 {
    if beta.is_infinite() {
        return 1.0;
    }
    let x = beta * nu;
    // coth(x/2) = (1 + e^{-x}) / (1 - e^{-x})
    let e = (-x).exp();
    (1.0 + e) / -(-x).exp_m1()
}

/// `H = xᵀ V x + pᵀ K p + xᵀ C p` with `C` purely off-diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm {
    pub v_block: DMatrix<f64>,
    pub k_block: DMatrix<f64>,
    pub cross_block: DMatrix<f64>,
}

impl QuadraticForm {
    pub fn n_modes(&self) -> usize {
        self.v_block.nrows()
    }

    /// Symmetric `2N×2N` matrix `M` with `H = rᵀ M r`.
    pub fn phase_space_matrix(&self) -> DMatrix<f64> {
        let n = self.n_modes();
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(&self.v_block);
        m.view_mut((n, n), (n, n)).copy_from(&self.k_block);
        let half = &self.cross_block * 0.5;
        m.view_mut((0, n), (n, n)).copy_from(&half);
        m.view_mut((n, 0), (n, n)).copy_from(&half.transpose());
        m
    }

    /// Heisenberg generator `A` with `dr/dt = A r`, i.e. `A = J M`.
    pub fn flow_generator(&self) -> DMatrix<f64> {
        symplectic_form(self.n_modes()) * self.phase_space_matrix()
    }

    /// Normal-mode frequencies (the quanta of the form), ascending.
    pub fn normal_frequencies(&self) -> Result<Vec<f64>> {
        let m = self.phase_space_matrix();
        symplectic_eigenvalues(&m, &symplectic_form(self.n_modes()))
    }
}

/// Uncoupled form `ω Σ (x² + p²)`.
pub fn build_free(spec: &ChainSpec) -> QuadraticForm {
    let n = spec.n_modes;
    QuadraticForm {
        v_block: DMatrix::identity(n, n) * spec.omega,
        k_block: DMatrix::identity(n, n) * spec.omega,
        cross_block: DMatrix::zeros(n, n),
    }
}

/// Post-quench spring chain with tridiagonal potential matrix.
pub fn build_h1(spec: &ChainSpec) -> QuadraticForm {
    let n = spec.n_modes;
    let (w, g) = (spec.omega, spec.g0);
    let v = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            if i == 0 || i == n - 1 {
                w + g
            } else {
                w + 2.0 * g
            }
        } else if i.abs_diff(j) == 1 {
            -g
        } else {
            0.0
        }
    });
    QuadraticForm { v_block: v, ..build_free(spec) }
}

/// Post-quench two-mode exchange coupling `g (x₁p₂ − p₁x₂)`.
pub fn build_h2(spec: &ChainSpec) -> Result<QuadraticForm> {
    spec.validate_h2()?;
    let mut form = build_free(spec);
    form.cross_block[(0, 1)] = spec.g0;
    form.cross_block[(1, 0)] = -spec.g0;
    Ok(form)
}

pub fn build(spec: &ChainSpec, model: Model) -> Result<QuadraticForm> {
    match model {
        Model::H1 => Ok(build_h1(spec)),
        Model::H2 => build_h2(spec),
    }
}

/// Closed-form eigenvalues `λ_j = ω + 2g(1 − cos(π(j−1)/N))`, ascending.
pub fn spectrum(spec: &ChainSpec) -> Vec<f64> {
    let n = spec.n_modes as f64;
    (0..spec.n_modes)
        .map(|j| spec.omega + 2.0 * spec.g0 * (1.0 - (PI * j as f64 / n).cos()))
        .collect()
}

/// Eigenvalues of the potential matrix from a dense symmetric solver.
pub fn dense_spectrum(spec: &ChainSpec) -> Vec<f64> {
    sym_eigen_sorted(&build_h1(spec).v_block).0
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalModeData {
    pub lambdas: Vec<f64>,
    pub mus: Vec<f64>,
    /// Columns are the normal-mode vectors: `x_site = ℙ X_mode`.
    pub p_matrix: DMatrix<f64>,
    pub squeeze_params: Vec<f64>,
}

pub fn normal_modes(spec: &ChainSpec) -> Result<NormalModeData> {
    spec.validate()?;
    let n = spec.n_modes;
    let lambdas = spectrum(spec);
    let p_matrix = if spec.g0 == 0.0 {
        DMatrix::identity(n, n)
    } else {
        let (values, mut vecs) = sym_eigen_sorted(&build_h1(spec).v_block);
        let scale = spec.omega + 4.0 * spec.g0;
        for (a, b) in values.iter().zip(&lambdas) {
            if (a - b).abs() > 1e-10 * scale {
                return Err(Error::Eigensolver(format!(
                    "dense eigenvalue {a} disagrees with closed form {b}"
                )));
            }
        }
        for mut col in vecs.column_iter_mut() {
            let mut best = 0;
            for k in 1..n {
                if col[k].abs() > col[best].abs() + 1e-12 {
                    best = k;
                }
            }
            if col[best] < 0.0 {
                col.neg_mut();
            }
        }
        let defect = orthogonality_defect(&vecs);
        if defect > 1e-12 {
            return Err(Error::Eigensolver(format!("eigenvectors not orthonormal ({defect:.2e})")));
        }
        vecs
    };
    let mus: Vec<f64> = lambdas.iter().map(|l| (l * spec.omega).sqrt()).collect();
    let squeeze_params = mus.iter().map(|m| 0.25 * (m / spec.omega).ln()).collect();
    Ok(NormalModeData { lambdas, mus, p_matrix, squeeze_params })
}
