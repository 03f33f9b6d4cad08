//! Brute-force structural constants, Casimir identities and the Lichnerowicz
//! spectrum from an explicit matrix model.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use super::model::{bracket, ip, Mat, MatrixAlgebraModel};

/// Coefficients `⟨[X_α, X_β], E_γ⟩` of brackets of `p` basis vectors in the
/// basis `k ∪ p`, together with `⟨[Z_z, X_β], X_γ⟩` for the `k` action.
pub struct BracketTable {
    pub dim_k: usize,
    pub dim_p: usize,
    pub dims: Vec<usize>,
    /// Summand index of each `p` basis vector.
    pub owner: Vec<usize>,
    /// `pp[α][β]` has length `dim_k + dim_p`.
    pp: Vec<Vec<Vec<f64>>>,
    /// `chi[z]` is `χ(Z_z)` on `p`.
    chi: Vec<DMatrix<f64>>,
}

fn coordinates(m: usize, z: &Mat, basis: &[&Mat]) -> Vec<f64> {
    basis.iter().map(|u| ip(m, z, u)).collect()
}

impl BracketTable {
    pub fn new(model: &MatrixAlgebraModel) -> Self {
        let m = model.m;
        let p: Vec<&Mat> = model.p_basis().collect();
        let all: Vec<&Mat> = model.k_basis.iter().chain(p.iter().copied()).collect();
        let owner = model
            .summands
            .iter()
            .enumerate()
            .flat_map(|(i, s)| std::iter::repeat(i).take(s.basis.len()))
            .collect();
        let pp = p
            .par_iter()
            .map(|x| p.iter().map(|y| coordinates(m, &bracket(x, y), &all)).collect())
            .collect();
        let chi = model
            .k_basis
            .par_iter()
            .map(|z| {
                let cols: Vec<Vec<f64>> = p.iter().map(|y| coordinates(m, &bracket(z, y), &p)).collect();
                DMatrix::from_fn(p.len(), p.len(), |g, b| cols[b][g])
            })
            .collect();
        BracketTable { dim_k: model.k_basis.len(), dim_p: p.len(), dims: model.dims(), owner, pp, chi }
    }

    /// `a(X_α)`: the `k` component of `[X_α, ·]` as a `dim k × dim p` matrix.
    fn a(&self, alpha: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim_k, self.dim_p, |z, b| self.pp[alpha][b][z])
    }

    /// `ad_p X_α`: the `p` component of `[X_α, ·]`.
    fn ad_p(&self, alpha: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim_p, self.dim_p, |g, b| self.pp[alpha][b][self.dim_k + g])
    }

    /// `[ijk]` for all ordered triples, and the spread between the orderings.
    pub fn constants(&self) -> BruteConstants {
        let r = self.dims.len();
        let mut raw = vec![0.0; r * r * r];
        for (alpha, rows) in self.pp.iter().enumerate() {
            for (beta, coeffs) in rows.iter().enumerate() {
                let (i, j) = (self.owner[alpha], self.owner[beta]);
                for (gamma, c) in coeffs[self.dim_k..].iter().enumerate() {
                    raw[(i * r + j) * r + self.owner[gamma]] += c * c;
                }
            }
        }
        let at = |i: usize, j: usize, k: usize| raw[(i * r + j) * r + k];
        let mut spread: f64 = 0.0;
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let v = at(i, j, k);
                    for w in [at(j, i, k), at(i, k, j), at(k, j, i), at(j, k, i), at(k, i, j)] {
                        spread = spread.max((v - w).abs());
                    }
                }
            }
        }
        BruteConstants { dims: self.dims.clone(), raw, symmetry_deviation: spread }
    }

    /// Deviations of the Casimir identities, largest entry of each residual.
    pub fn identities(&self, rho: Option<f64>) -> IdentityDefects {
        let (dk, dp) = (self.dim_k, self.dim_p);
        let mut sum_aat = DMatrix::zeros(dk, dk);
        let mut sum_ata = DMatrix::zeros(dp, dp);
        let mut sum_a_ad = DMatrix::zeros(dk, dp);
        let mut sum_ad2 = DMatrix::zeros(dp, dp);
        for alpha in 0..dp {
            let a = self.a(alpha);
            let ad = self.ad_p(alpha);
            sum_aat += &a * a.transpose();
            sum_ata += a.transpose() * &a;
            sum_a_ad += &a * &ad;
            sum_ad2 += &ad * &ad;
        }
        let b_chi = DMatrix::from_fn(dk, dk, |x, y| (&self.chi[x] * &self.chi[y]).trace());
        let cas_chi = -self.chi.iter().fold(DMatrix::zeros(dp, dp), |acc, c| acc + c * c);
        let max_abs = |m: &DMatrix<f64>| m.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        let id = DMatrix::<f64>::identity(dp, dp);
        let mm = sum_ad2 / 4.0;
        let ric = &mm + &id * 0.5;
        let ric_from_cas = &id * 0.25 + &cas_chi * 0.5;
        let casimir_value = cas_chi.trace() / dp as f64;
        IdentityDefects {
            killing_restriction: max_abs(&(&b_chi + &sum_aat)),
            casimir: max_abs(&(&cas_chi - &sum_ata)),
            casimir_trace: (cas_chi.trace() + b_chi.trace()).abs(),
            mixed: max_abs(&sum_a_ad),
            casimir_vs_p: max_abs(&(&cas_chi * 2.0 - &mm * 4.0 - &id)),
            ricci: max_abs(&(&ric - &ric_from_cas)),
            einstein: rho.map(|r| max_abs(&(&ric - &id * r))),
            casimir_value,
            casimir_scalar: max_abs(&(&cas_chi - &id * casimir_value)),
        }
    }
}

/// Numerical `[ijk]`, indexed by summand position.
pub struct BruteConstants {
    pub dims: Vec<usize>,
    raw: Vec<f64>,
    /// Largest difference between orderings of the same triple.
    pub symmetry_deviation: f64,
}

impl BruteConstants {
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        let r = self.len();
        self.raw[(i * r + j) * r + k]
    }

    /// `ρ_k = ½ − (1/(4d_k)) Σ_{i,j} [ijk]`.
    pub fn ricci(&self) -> Vec<f64> {
        let r = self.len();
        (0..r)
            .map(|k| {
                let s: f64 = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).map(|(i, j)| self.get(i, j, k)).sum();
                0.5 - s / (4.0 * self.dims[k] as f64)
            })
            .collect()
    }

    /// The symmetrised Lichnerowicz matrix on trace-free-compatible
    /// directions, `D^{1/2} S D^{-1/2}`.
    pub fn lich_matrix(&self) -> DMatrix<f64> {
        let r = self.len();
        DMatrix::from_fn(r, r, |k, m| {
            let dk = self.dims[k] as f64;
            if k == m {
                let s: f64 = (0..r).filter(|&j| j != k).flat_map(|j| (0..r).map(move |i| (i, j))).map(|(i, j)| self.get(i, j, k)).sum();
                s / dk
            } else {
                let s: f64 = (0..r).map(|i| self.get(i, k, m)).sum();
                -s / (dk * self.dims[m] as f64).sqrt()
            }
        })
    }

    /// Eigenvalues of the Lichnerowicz matrix, ascending.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.lich_matrix()).eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }
}

/// Largest residual of each identity relating the isotropy representation,
/// the `k` components of brackets and the Ricci tensor.
#[derive(Clone, Debug)]
pub struct IdentityDefects {
    /// `B_χ + Σ a(X_α) a(X_α)ᵗ`.
    pub killing_restriction: f64,
    /// `Cas_χ − Σ a(X_α)ᵗ a(X_α)`.
    pub casimir: f64,
    /// `tr Cas_χ + tr B_χ`.
    pub casimir_trace: f64,
    /// `Σ a(X_α) ad_p X_α`.
    pub mixed: f64,
    /// `2 Cas_χ − 4M − I`.
    pub casimir_vs_p: f64,
    /// `(M + ½I) − (¼I + ½ Cas_χ)`.
    pub ricci: f64,
    /// `Ric − ρI`, when ρ is given.
    pub einstein: Option<f64>,
    /// `tr Cas_χ / dim p`.
    pub casimir_value: f64,
    /// `Cas_χ − (tr Cas_χ / dim p) I`.
    pub casimir_scalar: f64,
}

/// Continued-fraction reconstruction of `x` as `p/q` with `q ≤ max_den`,
/// accepted when `|x − p/q| ≤ tol · max(1, |x|)`.
pub fn reconstruct(x: f64, max_den: u64, tol: f64) -> Option<(i64, u64)> {
    if !x.is_finite() {
        return None;
    }
    let target = tol * x.abs().max(1.0);
    let (mut h0, mut h1): (i128, i128) = (0, 1);
    let (mut k0, mut k1): (i128, i128) = (1, 0);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den as i128 {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() <= target {
            return Some((h2 as i64, k2 as u64));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a;
        if frac == 0.0 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_simple_fractions() {
        assert_eq!(reconstruct(27.0 / 14.0, 1_000_000, 1e-9), Some((27, 14)));
        assert_eq!(reconstruct(-3.0 / 7.0, 1_000_000, 1e-9), Some((-3, 7)));
        assert_eq!(reconstruct(0.0, 1_000_000, 1e-9), Some((0, 1)));
        assert_eq!(reconstruct(std::f64::consts::PI, 100, 1e-9), None);
    }
}
