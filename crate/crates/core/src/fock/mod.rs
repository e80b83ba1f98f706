//! Brute-force truncated-Fock reference implementation.
//!
//! Hamiltonians are assembled normal-ordered from ladder operators,
//! `H = Σ A_ij a_i†a_j + Σ W_ij (a_i a_j + a_i†a_j†) + Tr(V + K)/4` with
//! `A = (V + K)/2` and `W = (V − K)/4`, so the free part is exactly
//! `ω Σ (n + 1/2)` at any truncation. The post-quench matrix is split into
//! the connected components of its coupling graph before diagonalization.
//!
//! The exchange model is represented in the gauge `a₂ ↦ i a₂`, where
//! `g(x₁p₂ − p₁x₂)` becomes `(g/2)(a₁†a₂ + a₂†a₁)`. The gauge is diagonal
//! in the Fock basis, so energies, thermal weights and transition
//! probabilities are unchanged.

mod basis;
mod oracle;
pub mod single_mode;

pub use basis::{inner, FockBasis};
pub use oracle::{GibbsEntropyChange, OracleEntry, WorkDistribution};

use crate::chain::{build, build_free, ChainSpec, Model, QuadraticForm};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::OnceLock;

pub const DIMENSION_LIMIT: usize = 4096;

/// Default per-mode truncation for a chain of `n_modes`.
pub fn default_n_max(n_modes: usize) -> usize {
    match n_modes {
        2 => 60,
        3 => 14,
        _ => 7,
    }
}

/// One diagonalized block of the post-quench Hamiltonian.
#[derive(Clone, Debug)]
pub struct Block {
    /// Fock indices spanned by the block.
    pub states: Vec<usize>,
    /// Ascending eigenvalues.
    pub energies: Vec<f64>,
    /// Column-major eigenvectors: component `r` of eigenvector `m` is `vectors[m * b + r]`.
    pub vectors: Vec<f64>,
}

impl Block {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn vector(&self, m: usize) -> &[f64] {
        let b = self.len();
        &self.vectors[m * b..(m + 1) * b]
    }
}

#[derive(Clone, Debug)]
pub struct FockSystem {
    pub spec: ChainSpec,
    pub model: Model,
    pub basis: FockBasis,
    /// Diagonal of the pre-quench Hamiltonian.
    pub initial_energies: Vec<f64>,
    /// Nonzero entries of the post-quench Hamiltonian.
    pub h_final: HashMap<(usize, usize), f64>,
    pub blocks: Vec<Block>,
    tail_warned: OnceLock<()>,
}

fn normal_ordered_terms(form: &QuadraticForm, model: Model) -> (Vec<Vec<f64>>, Vec<Vec<f64>>, f64) {
    let n = form.n_modes();
    let mut a = vec![vec![0.0; n]; n];
    let mut w = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (v, k) = (form.v_block[(i, j)], form.k_block[(i, j)]);
            a[i][j] = (v + k) / 2.0;
            w[i][j] = (v - k) / 4.0;
        }
    }
    if model == Model::H2 {
        let g = form.cross_block[(0, 1)];
        a[0][1] += g / 2.0;
        a[1][0] += g / 2.0;
    }
    let c = (form.v_block.trace() + form.k_block.trace()) / 4.0;
    (a, w, c)
}

fn assemble(basis: &FockBasis, form: &QuadraticForm, model: Model) -> HashMap<(usize, usize), f64> {
    let (a, w, c) = normal_ordered_terms(form, model);
    let n = basis.n_modes;
    let nm = basis.n_max;
    let mut h: HashMap<(usize, usize), f64> = HashMap::new();
    let mut add = |r: usize, s: usize, v: f64| {
        if v != 0.0 {
            *h.entry((r, s)).or_insert(0.0) += v;
        }
    };
    for s in 0..basis.dim {
        let occ = basis.occupations(s);
        add(s, s, c);
        for i in 0..n {
            for j in 0..n {
                // a_i† a_j
                if a[i][j] != 0.0 && occ[j] > 0 {
                    let mut o = occ.clone();
                    let mut amp = (o[j] as f64).sqrt();
                    o[j] -= 1;
                    if o[i] < nm {
                        amp *= ((o[i] + 1) as f64).sqrt();
                        o[i] += 1;
                        add(basis.index(&o), s, a[i][j] * amp);
                    }
                }
                if w[i][j] == 0.0 {
                    continue;
                }
                // a_i a_j
                let mut o = occ.clone();
                if o[j] > 0 {
                    let mut amp = (o[j] as f64).sqrt();
                    o[j] -= 1;
                    if o[i] > 0 {
                        amp *= (o[i] as f64).sqrt();
                        o[i] -= 1;
                        add(basis.index(&o), s, w[i][j] * amp);
                    }
                }
                // a_i† a_j†
                let mut o = occ.clone();
                if o[j] < nm {
                    let mut amp = ((o[j] + 1) as f64).sqrt();
                    o[j] += 1;
                    if o[i] < nm {
                        amp *= ((o[i] + 1) as f64).sqrt();
                        o[i] += 1;
                        add(basis.index(&o), s, w[i][j] * amp);
                    }
                }
            }
        }
    }
    h.retain(|_, v| *v != 0.0);
    h
}

fn components(dim: usize, h: &HashMap<(usize, usize), f64>) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(r, s) in h.keys() {
        let (a, b) = (find(&mut parent, r), find(&mut parent, s));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for s in 0..dim {
        let root = find(&mut parent, s);
        groups.entry(root).or_default().push(s);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|g| g[0]);
    out
}

fn diagonalize(states: Vec<usize>, h: &HashMap<(usize, usize), f64>) -> Result<Block> {
    let b = states.len();
    let local: HashMap<usize, usize> = states.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let mut m = faer::Mat::<f64>::zeros(b, b);
    for (&(r, s), &v) in h {
        if let (Some(&i), Some(&j)) = (local.get(&r), local.get(&s)) {
            m[(i, j)] = v;
        }
    }
    let eig = m
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    let vals = eig.S().column_vector();
    let u = eig.U();
    let mut order: Vec<usize> = (0..b).collect();
    order.sort_by(|&x, &y| vals[x].total_cmp(&vals[y]));
    let energies = order.iter().map(|&k| vals[k]).collect();
    let mut vectors = Vec::with_capacity(b * b);
    for &k in &order {
        for r in 0..b {
            vectors.push(u[(r, k)]);
        }
    }
    Ok(Block { states, energies, vectors })
}

impl FockSystem {
    pub fn build(spec: &ChainSpec, n_max: usize, model: Model) -> Result<Self> {
        spec.validate()?;
        if spec.n_modes > 4 {
            return Err(Error::InvalidSpec("the Fock oracle supports at most 4 modes".into()));
        }
        if model == Model::H2 && spec.n_modes != 2 {
            return Err(Error::InvalidSpec("the exchange model is defined for two modes".into()));
        }
        let dim = (n_max as u128 + 1).pow(spec.n_modes as u32);
        if dim > DIMENSION_LIMIT as u128 {
            return Err(Error::DimensionGuard { dim: dim.min(usize::MAX as u128) as usize, limit: DIMENSION_LIMIT });
        }
        let basis = FockBasis::new(spec.n_modes, n_max);
        let form = match model {
            Model::H1 => build(spec, Model::H1)?,
            Model::H2 => {
                // The bound is a property of the analytic model; the oracle
                // builds the matrix regardless so that instability shows up.
                let mut f = build_free(spec);
                f.cross_block[(0, 1)] = spec.g0;
                f.cross_block[(1, 0)] = -spec.g0;
                f
            }
        };
        let initial_energies = (0..basis.dim)
            .map(|s| basis.occupations(s).iter().map(|&n| spec.omega * (n as f64 + 0.5)).sum())
            .collect();
        let h_final = assemble(&basis, &form, model);
        let blocks = components(basis.dim, &h_final)
            .into_iter()
            .map(|states| diagonalize(states, &h_final))
            .collect::<Result<Vec<_>>>()?;
        Ok(FockSystem { spec: *spec, model, basis, initial_energies, h_final, blocks, tail_warned: OnceLock::new() })
    }

    pub fn n_max(&self) -> usize {
        self.basis.n_max
    }

    /// `max |H_rs − H_sr|` over stored entries.
    pub fn hermiticity_defect(&self) -> f64 {
        self.h_final
            .iter()
            .map(|(&(r, s), &v)| (v - self.h_final.get(&(s, r)).copied().unwrap_or(0.0)).abs())
            .fold(0.0, f64::max)
    }

    /// All post-quench eigenvalues, ascending.
    pub fn final_spectrum(&self) -> Vec<f64> {
        let mut e: Vec<f64> = self.blocks.iter().flat_map(|b| b.energies.iter().copied()).collect();
        e.sort_by(f64::total_cmp);
        e
    }

    pub fn initial_ground_energy(&self) -> f64 {
        self.initial_energies.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Lowest truncated eigenvalue keeps falling as the truncation grows: the
/// signature of a Hamiltonian that is unbounded below.
pub fn unbounded_below(spec: &ChainSpec, model: Model, n_max: usize) -> Result<bool> {
    let coarse = FockSystem::build(spec, n_max / 2, model)?.final_spectrum()[0];
    let fine = FockSystem::build(spec, n_max, model)?.final_spectrum()[0];
    Ok(fine < coarse - 1e-6 * (1.0 + coarse.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uncoupled_spectrum_is_free() {
        let spec = ChainSpec::new(2, 1.3, 0.0, 1.0).unwrap();
        let sys = FockSystem::build(&spec, 6, Model::H1).unwrap();
        let mut want = sys.initial_energies.clone();
        want.sort_by(f64::total_cmp);
        for (a, b) in sys.final_spectrum().iter().zip(&want) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((sys.initial_ground_energy() - 1.3).abs() < 1e-15);
    }

    #[test]
    fn guard_and_model_checks() {
        let spec = ChainSpec::new(4, 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(FockSystem::build(&spec, 8, Model::H1), Err(Error::DimensionGuard { .. })));
        assert!(FockSystem::build(&spec, 7, Model::H2).is_err());
    }

    #[test]
    fn spring_blocks_follow_total_parity() {
        let spec = ChainSpec::new(2, 1.0, 0.5, 1.0).unwrap();
        let sys = FockSystem::build(&spec, 5, Model::H1).unwrap();
        assert_eq!(sys.blocks.len(), 2);
        assert!(sys.hermiticity_defect() == 0.0);
    }
}
