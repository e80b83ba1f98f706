use crate::C64;
use nalgebra::DMatrix;

/// Product Fock basis of `n_modes` modes truncated at `n_max` quanta each.
///
/// Index `Σ_k n_k (n_max+1)^{N−1−k}`, so mode 0 is the most significant digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockBasis {
    pub n_modes: usize,
    pub n_max: usize,
    pub dim: usize,
}

impl FockBasis {
    pub fn new(n_modes: usize, n_max: usize) -> Self {
        FockBasis { n_modes, n_max, dim: (n_max + 1).pow(n_modes as u32) }
    }

    fn stride(&self, mode: usize) -> usize {
        (self.n_max + 1).pow((self.n_modes - 1 - mode) as u32)
    }

    pub fn occupation(&self, index: usize, mode: usize) -> usize {
        (index / self.stride(mode)) % (self.n_max + 1)
    }

    pub fn occupations(&self, index: usize) -> Vec<usize> {
        (0..self.n_modes).map(|k| self.occupation(index, k)).collect()
    }

    pub fn index(&self, occ: &[usize]) -> usize {
        occ.iter().enumerate().map(|(k, &n)| n * self.stride(k)).sum()
    }

    /// `a_mode ψ`.
    pub fn lower(&self, mode: usize, psi: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::from(0.0); self.dim];
        let st = self.stride(mode);
        for (s, &amp) in psi.iter().enumerate() {
            let n = self.occupation(s, mode);
            if n > 0 && amp != C64::from(0.0) {
                out[s - st] += amp * (n as f64).sqrt();
            }
        }
        out
    }

    /// `a†_mode ψ` (components pushed past `n_max` are dropped).
    pub fn raise(&self, mode: usize, psi: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::from(0.0); self.dim];
        let st = self.stride(mode);
        for (s, &amp) in psi.iter().enumerate() {
            let n = self.occupation(s, mode);
            if n < self.n_max && amp != C64::from(0.0) {
                out[s + st] += amp * ((n + 1) as f64).sqrt();
            }
        }
        out
    }

    /// `x_mode ψ = (a + a†)ψ/2`.
    pub fn x(&self, mode: usize, psi: &[C64]) -> Vec<C64> {
        let (l, r) = (self.lower(mode, psi), self.raise(mode, psi));
        l.iter().zip(&r).map(|(a, b)| (a + b) * 0.5).collect()
    }

    /// `p_mode ψ = (a − a†)ψ/(2i)`.
    pub fn p(&self, mode: usize, psi: &[C64]) -> Vec<C64> {
        let (l, r) = (self.lower(mode, psi), self.raise(mode, psi));
        l.iter().zip(&r).map(|(a, b)| (a - b) / C64::new(0.0, 2.0)).collect()
    }

    /// Product coherent state `⊗ |α_k⟩`, truncated and not renormalized.
    pub fn coherent_state(&self, alphas: &[C64]) -> Vec<C64> {
        let single: Vec<Vec<C64>> = alphas
            .iter()
            .map(|&a| {
                let mut v = Vec::with_capacity(self.n_max + 1);
                let mut c = C64::from((-a.norm_sqr() / 2.0).exp());
                for n in 0..=self.n_max {
                    if n > 0 {
                        c *= a / (n as f64).sqrt();
                    }
                    v.push(c);
                }
                v
            })
            .collect();
        (0..self.dim)
            .map(|s| (0..self.n_modes).map(|k| single[k][self.occupation(s, k)]).product())
            .collect()
    }

    /// `exp(Σ_ij A_ij a_i† a_j) ψ` for a real generator `A`, by a scaled
    /// Taylor series. With `e^A = O` the resulting unitary has Heisenberg
    /// mode matrix `O`.
    pub fn apply_passive(&self, a: &DMatrix<f64>, psi: &[C64]) -> Vec<C64> {
        let norm: f64 = a.iter().map(|v| v.abs()).sum::<f64>() * (self.n_max * self.n_modes + 1) as f64;
        let steps = (norm.ceil() as usize).max(1);
        let h = 1.0 / steps as f64;
        let gen = |v: &[C64]| -> Vec<C64> {
            let mut out = vec![C64::from(0.0); self.dim];
            for j in 0..self.n_modes {
                let lowered = self.lower(j, v);
                for i in 0..self.n_modes {
                    let c = a[(i, j)] * h;
                    if c == 0.0 {
                        continue;
                    }
                    for (o, r) in out.iter_mut().zip(self.raise(i, &lowered)) {
                        *o += r * c;
                    }
                }
            }
            out
        };
        let mut state = psi.to_vec();
        for _ in 0..steps {
            let mut term = state.clone();
            let mut acc = state.clone();
            for k in 1..40 {
                term = gen(&term).into_iter().map(|t| t / k as f64).collect();
                let size: f64 = term.iter().map(|t| t.norm()).sum();
                for (x, t) in acc.iter_mut().zip(&term) {
                    *x += t;
                }
                if size < 1e-18 {
                    break;
                }
            }
            state = acc;
        }
        state
    }
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}
