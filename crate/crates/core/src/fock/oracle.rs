//! Oracle quantities computed from a diagonalized [`FockSystem`].

use super::{Block, FockSystem};
use crate::error::{Error, Result};
use crate::C64;
use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

/// Two-point-measurement work distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct WorkDistribution {
    /// `(w, p)` pairs; atoms below the pruning threshold are dropped.
    pub atoms: Vec<(f64, f64)>,
    pub pruned_mass: f64,
    /// Upper estimate of the thermal weight beyond the truncation.
    pub tail_estimate: f64,
}

impl WorkDistribution {
    pub fn total_probability(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    pub fn moment(&self, k: i32) -> f64 {
        self.atoms.iter().map(|&(w, p)| p * w.powi(k)).sum()
    }

    pub fn characteristic(&self, u: f64) -> C64 {
        self.atoms.iter().map(|&(w, p)| C64::from_polar(p, u * w)).sum()
    }
}

/// One line of an oracle report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleEntry {
    pub quantity: String,
    pub analytic: f64,
    pub oracle: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub tolerance: f64,
    pub n_max: usize,
    pub tail_estimate: f64,
    pub pass: bool,
}

impl OracleEntry {
    pub fn new(quantity: &str, analytic: f64, oracle: f64, tolerance: f64, sys: &FockSystem) -> Self {
        let abs_error = (analytic - oracle).abs();
        let rel_error = if analytic == 0.0 { f64::NAN } else { abs_error / analytic.abs() };
        OracleEntry {
            quantity: quantity.to_string(),
            analytic,
            oracle,
            abs_error,
            rel_error,
            tolerance,
            n_max: sys.n_max(),
            tail_estimate: sys.tail_estimate(),
            pass: abs_error < tolerance,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GibbsEntropyChange {
    pub delta: f64,
    pub initial: f64,
    pub final_: f64,
    /// Whether level ties were met and broken by basis order.
    pub degenerate: bool,
}

const PRUNE: f64 = 1e-20;

fn log_sum_exp(xs: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = xs.collect();
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    m + v.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Ranks `1, 2, ...` of levels sorted ascending; ties keep input order.
fn ranks(energies: &[f64]) -> (Vec<f64>, bool) {
    let mut order: Vec<usize> = (0..energies.len()).collect();
    order.sort_by(|&a, &b| energies[a].total_cmp(&energies[b]));
    let mut rank = vec![0.0; energies.len()];
    let mut degenerate = false;
    for (k, &i) in order.iter().enumerate() {
        rank[i] = (k + 1) as f64;
        if k > 0 && (energies[i] - energies[order[k - 1]]).abs() < 1e-10 {
            degenerate = true;
        }
    }
    (rank, degenerate)
}

impl FockSystem {
    fn beta(&self) -> Result<f64> {
        let b = self.spec.beta;
        if b.is_infinite() {
            return Err(Error::InvalidSpec("the oracle needs a finite beta".into()));
        }
        Ok(b)
    }

    /// `N e^{−βω(n_max+1)}`, a bound on the thermal mass beyond the truncation.
    pub fn tail_estimate(&self) -> f64 {
        let s = &self.spec;
        s.n_modes as f64 * (-s.beta * s.omega * (self.n_max() + 1) as f64).exp()
    }

    fn warn_tail(&self) {
        self.tail_warned.get_or_init(|| {
            let tail = self.tail_estimate();
            if tail > 1e-10 || self.spec.beta < 0.2 {
                log::warn!("thermal tail beyond n_max = {} is about {tail:.2e}", self.n_max());
            }
        });
    }

    /// `ln p_s` of the truncated pre-quench Gibbs state.
    pub fn ln_thermal_weights(&self) -> Result<Vec<f64>> {
        let b = self.beta()?;
        let ln_z = log_sum_exp(self.initial_energies.iter().map(|e| -b * e));
        Ok(self.initial_energies.iter().map(|e| -b * e - ln_z).collect())
    }

    /// `(ln Z_i, ln Z_f)` of the truncated Hamiltonians.
    pub fn ln_partition_functions(&self) -> Result<(f64, f64)> {
        let b = self.beta()?;
        let zi = log_sum_exp(self.initial_energies.iter().map(|e| -b * e));
        let zf = log_sum_exp(self.blocks.iter().flat_map(|bl| bl.energies.iter()).map(|e| -b * e));
        Ok((zi, zf))
    }

    pub fn delta_free_energy(&self) -> Result<f64> {
        let (zi, zf) = self.ln_partition_functions()?;
        Ok(-(zf - zi) / self.beta()?)
    }

    /// `Tr[e^{iuH_f} e^{−iuH_i} ρ₀]` for complex `u`.
    pub fn chi(&self, u: C64) -> Result<C64> {
        self.warn_tail();
        let lnp = self.ln_thermal_weights()?;
        let i = C64::i();
        let mut total = C64::from(0.0);
        for bl in &self.blocks {
            let b = bl.len();
            let left: Vec<C64> = bl.states.iter().map(|&s| (lnp[s] - i * u * self.initial_energies[s]).exp()).collect();
            for (m, &e) in bl.energies.iter().enumerate() {
                let v = bl.vector(m);
                let mut acc = C64::from(0.0);
                for r in 0..b {
                    acc += left[r] * (v[r] * v[r]);
                }
                total += acc * (i * u * e).exp();
            }
        }
        Ok(total)
    }

    pub fn tpm_distribution(&self) -> Result<WorkDistribution> {
        self.warn_tail();
        let lnp = self.ln_thermal_weights()?;
        let mut atoms = Vec::new();
        let mut pruned = 0.0;
        for bl in &self.blocks {
            for (m, &e) in bl.energies.iter().enumerate() {
                let v = bl.vector(m);
                for (r, &s) in bl.states.iter().enumerate() {
                    let p = lnp[s].exp() * v[r] * v[r];
                    if p >= PRUNE {
                        atoms.push((e - self.initial_energies[s], p));
                    } else {
                        pruned += p;
                    }
                }
            }
        }
        Ok(WorkDistribution { atoms, pruned_mass: pruned, tail_estimate: self.tail_estimate() })
    }

    /// Post-quench level populations `⟨m|ρ₀|m⟩`, block by block.
    fn final_populations(&self, lnp: &[f64]) -> Vec<Vec<f64>> {
        self.blocks
            .iter()
            .map(|bl| {
                (0..bl.len())
                    .map(|m| {
                        let v = bl.vector(m);
                        bl.states.iter().enumerate().map(|(r, &s)| lnp[s].exp() * v[r] * v[r]).sum()
                    })
                    .collect()
            })
            .collect()
    }

    /// `D[ρ_t ‖ e^{−βH_f}/Z_f]` using the spectral decomposition of
    /// `ρ_t = Σ p_s U|s⟩⟨s|U†` and `ln ρ_eq = −βH_f − ln Z_f`. Both terms are
    /// invariant under evolution with `H_f`, so `t` drops out; the dense
    /// variant below keeps the explicit time dependence.
    pub fn relative_entropy_lag(&self, _t: f64) -> Result<f64> {
        self.warn_tail();
        let b = self.beta()?;
        let lnp = self.ln_thermal_weights()?;
        let neg_entropy: f64 = lnp.iter().map(|&l| l.exp() * l).sum();
        let (_, ln_zf) = self.ln_partition_functions()?;
        let pops = self.final_populations(&lnp);
        let energy: f64 = self
            .blocks
            .iter()
            .zip(&pops)
            .map(|(bl, pop)| bl.energies.iter().zip(pop).map(|(e, p)| e * p).sum::<f64>())
            .sum();
        Ok(neg_entropy + b * energy + ln_zf)
    }

    /// The same relative entropy from explicit matrices: `ρ_t` is formed in
    /// the Fock basis and its entropy taken from its own eigenvalues.
    /// Intended for small truncations.
    pub fn relative_entropy_lag_dense(&self, t: f64) -> Result<f64> {
        let d = self.basis.dim;
        if d > 1024 {
            return Err(Error::DimensionGuard { dim: d, limit: 1024 });
        }
        let b = self.beta()?;
        let lnp = self.ln_thermal_weights()?;
        let (_, ln_zf) = self.ln_partition_functions()?;
        let mut u = DMatrix::<C64>::zeros(d, d);
        let mut ln_eq = DMatrix::<f64>::zeros(d, d);
        for bl in &self.blocks {
            for (m, &e) in bl.energies.iter().enumerate() {
                let v = bl.vector(m);
                let ph = C64::from_polar(1.0, -e * t);
                let l = -b * e - ln_zf;
                for (r, &sr) in bl.states.iter().enumerate() {
                    for (c, &sc) in bl.states.iter().enumerate() {
                        u[(sr, sc)] += ph * (v[r] * v[c]);
                        ln_eq[(sr, sc)] += l * v[r] * v[c];
                    }
                }
            }
        }
        let rho0 = DMatrix::<C64>::from_diagonal(&nalgebra::DVector::from_iterator(d, lnp.iter().map(|l| C64::from(l.exp()))));
        let rho_t = &u * rho0 * u.adjoint();
        let rho_t = (&rho_t + rho_t.adjoint()) * C64::from(0.5);
        let lam = SymmetricEigen::new(rho_t.clone()).eigenvalues;
        let neg_entropy: f64 = lam.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum();
        let cross: C64 = (0..d).flat_map(|r| (0..d).map(move |c| (r, c))).map(|(r, c)| rho_t[(r, c)] * ln_eq[(c, r)]).sum();
        Ok(neg_entropy - cross.re)
    }

    /// `ΔE = Tr[ρ_t Ê_f] − Tr[ρ₀ Ê_i]`, `Ê = Σ_k ln k |k⟩⟨k|` over levels in
    /// ascending energy with `k` starting at 1.
    pub fn gibbs_entropy_change(&self, _t: f64) -> Result<GibbsEntropyChange> {
        let lnp = self.ln_thermal_weights()?;
        let (rank_i, deg_i) = ranks(&self.initial_energies);
        let initial: f64 = lnp.iter().zip(&rank_i).map(|(l, k)| l.exp() * k.ln()).sum();
        // Populations in the post-quench eigenbasis do not depend on t.
        let pops = self.final_populations(&lnp);
        let energies: Vec<f64> = self.blocks.iter().flat_map(|b| b.energies.iter().copied()).collect();
        let flat_pops: Vec<f64> = pops.into_iter().flatten().collect();
        let (rank_f, deg_f) = ranks(&energies);
        let final_: f64 = flat_pops.iter().zip(&rank_f).map(|(p, k)| p * k.ln()).sum();
        let degenerate = deg_i || deg_f;
        if degenerate {
            log::warn!("degenerate levels met; ties ordered by basis index");
        }
        Ok(GibbsEntropyChange { delta: final_ - initial, initial, final_, degenerate })
    }

    /// `ΔE` for the eigenbasis-following map that sends the k-th initial
    /// level to the k-th final level.
    pub fn gibbs_entropy_change_adiabatic(&self) -> Result<GibbsEntropyChange> {
        let lnp = self.ln_thermal_weights()?;
        let (rank_i, deg_i) = ranks(&self.initial_energies);
        let initial: f64 = lnp.iter().zip(&rank_i).map(|(l, k)| l.exp() * k.ln()).sum();
        let energies: Vec<f64> = self.blocks.iter().flat_map(|b| b.energies.iter().copied()).collect();
        let (rank_f, deg_f) = ranks(&energies);
        let mut by_rank = vec![0.0; lnp.len()];
        for (s, k) in rank_i.iter().enumerate() {
            by_rank[*k as usize - 1] = lnp[s].exp();
        }
        let final_: f64 = rank_f.iter().map(|k| by_rank[*k as usize - 1] * k.ln()).sum();
        Ok(GibbsEntropyChange { delta: final_ - initial, initial, final_, degenerate: deg_i || deg_f })
    }

    fn fock_vector(&self, bl: &Block, coeffs: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::from(0.0); self.basis.dim];
        for (r, &s) in bl.states.iter().enumerate() {
            out[s] = coeffs[r];
        }
        out
    }

    /// `4 Re ⟨ψ| r_a r_b |ψ⟩`, i.e. the vacuum-normalized second moments.
    fn second_moments(&self, psi: &[C64]) -> DMatrix<f64> {
        let n = self.basis.n_modes;
        let applied: Vec<Vec<C64>> = (0..n)
            .map(|k| self.basis.x(k, psi))
            .chain((0..n).map(|k| self.basis.p(k, psi)))
            .collect();
        DMatrix::from_fn(2 * n, 2 * n, |a, b| 4.0 * super::inner(&applied[a], &applied[b]).re)
    }

    /// Covariance of `e^{−βH_f}/Z_f` (spring model, zero mean).
    pub fn final_gibbs_covariance(&self) -> Result<DMatrix<f64>> {
        let b = self.beta()?;
        let (_, ln_zf) = self.ln_partition_functions()?;
        let n = self.basis.n_modes;
        let mut cov = DMatrix::zeros(2 * n, 2 * n);
        for bl in &self.blocks {
            for (m, &e) in bl.energies.iter().enumerate() {
                let w = (-b * e - ln_zf).exp();
                if w < 1e-16 {
                    continue;
                }
                let coeffs: Vec<C64> = bl.vector(m).iter().map(|&x| C64::from(x)).collect();
                cov += self.second_moments(&self.fock_vector(bl, &coeffs)) * w;
            }
        }
        Ok(cov)
    }

    /// Covariance of `ρ_t = e^{−iH_f t} ρ₀ e^{iH_f t}` (spring model).
    pub fn evolved_covariance(&self, t: f64) -> Result<DMatrix<f64>> {
        let lnp = self.ln_thermal_weights()?;
        let n = self.basis.n_modes;
        let mut cov = DMatrix::zeros(2 * n, 2 * n);
        for s in 0..self.basis.dim {
            let p = lnp[s].exp();
            if p < 1e-16 {
                continue;
            }
            let mut psi = vec![C64::from(0.0); self.basis.dim];
            psi[s] = C64::from(1.0);
            cov += self.second_moments(&self.evolve_final(&psi, t)) * p;
        }
        Ok(cov)
    }

    /// `e^{−iH_f t} ψ`.
    pub fn evolve_final(&self, psi: &[C64], t: f64) -> Vec<C64> {
        let mut out = vec![C64::from(0.0); self.basis.dim];
        for bl in &self.blocks {
            let local: Vec<C64> = bl.states.iter().map(|&s| psi[s]).collect();
            if local.iter().all(|z| z.norm() == 0.0) {
                continue;
            }
            for (m, &e) in bl.energies.iter().enumerate() {
                let v = bl.vector(m);
                let proj: C64 = v.iter().zip(&local).map(|(a, b)| b * *a).sum();
                let c = proj * C64::from_polar(1.0, -e * t);
                for (r, &s) in bl.states.iter().enumerate() {
                    out[s] += c * v[r];
                }
            }
        }
        out
    }

    /// `e^{−iH_i t} ψ`.
    pub fn evolve_initial(&self, psi: &[C64], t: f64) -> Vec<C64> {
        psi.iter().zip(&self.initial_energies).map(|(z, e)| z * C64::from_polar(1.0, -e * t)).collect()
    }

    /// `⟨ψ| e^{iuH_f} e^{−iuH_i} |ψ⟩` for real `u`.
    pub fn echo(&self, psi: &[C64], u: f64) -> C64 {
        let fwd = self.evolve_initial(psi, u);
        super::inner(psi, &self.evolve_final(&fwd, -u))
    }
}
