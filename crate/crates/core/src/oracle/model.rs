//! Explicit matrix models `so(m) ⊃ k` with orthonormal bases of `k` and of
//! each isotropy summand.

use nalgebra::{Complex, DMatrix};

use crate::algebra::SimpleAlgebra;
use crate::error::{Error, Result};
use crate::spaces::{FactorClass, SymSpaceId};

pub type Mat = DMatrix<f64>;
type CMat = DMatrix<Complex<f64>>;

/// Vectors whose residual norm falls below this are treated as dependent.
const DEPENDENCE_TOL: f64 = 1e-9;

/// `⟨X, Y⟩ = −B(X, Y) = (m − 2) Σ X_ab Y_ab` on antisymmetric matrices.
pub fn ip(m: usize, x: &Mat, y: &Mat) -> f64 {
    (m as f64 - 2.0) * x.dot(y)
}

pub fn bracket(x: &Mat, y: &Mat) -> Mat {
    x * y - y * x
}

/// `E_ab − E_ba`.
pub fn elementary(m: usize, a: usize, b: usize) -> Mat {
    let mut e = Mat::zeros(m, m);
    e[(a, b)] = 1.0;
    e[(b, a)] = -1.0;
    e
}

/// Gram–Schmidt in `so(m)`, orthogonal to `against` (assumed orthonormal);
/// dependent inputs are dropped.
pub fn orthonormalize(m: usize, vs: impl IntoIterator<Item = Mat>, against: &[Mat]) -> Vec<Mat> {
    let mut out: Vec<Mat> = Vec::new();
    for v in vs {
        let scale = ip(m, &v, &v).sqrt();
        if scale == 0.0 {
            continue;
        }
        let mut w = v;
        for _ in 0..2 {
            for u in against.iter().chain(out.iter()) {
                let c = ip(m, &w, u);
                w -= u * c;
            }
        }
        let n = ip(m, &w, &w).sqrt();
        if n > DEPENDENCE_TOL * scale {
            out.push(w / n);
        }
    }
    out
}

/// Places an `n×n` block at `(offset, offset)` of an `m×m` zero matrix.
fn embed(m: usize, offset: usize, x: &Mat) -> Mat {
    let mut out = Mat::zeros(m, m);
    out.view_mut((offset, offset), (x.nrows(), x.ncols())).copy_from(x);
    out
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    a.kronecker(b)
}

/// Orthonormal basis of `so(n)` (up to scale) and of traceless symmetric
/// `n×n` matrices.
fn antisymmetric_basis(n: usize) -> Vec<Mat> {
    let mut v = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            v.push(elementary(n, a, b));
        }
    }
    v
}

fn traceless_symmetric_basis(n: usize) -> Vec<Mat> {
    let mut v = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut s = Mat::zeros(n, n);
            s[(a, b)] = 1.0;
            s[(b, a)] = 1.0;
            v.push(s);
        }
    }
    for a in 0..n - 1 {
        let mut s = Mat::zeros(n, n);
        s[(a, a)] = 1.0;
        s[(a + 1, a + 1)] = -1.0;
        v.push(s);
    }
    v
}

/// A Lie algebra `h` given by complex matrices, orthonormal for
/// `−Re tr(XY)`.
fn matrix_lie_basis(h: SimpleAlgebra) -> Result<Vec<CMat>> {
    let i = Complex::new(0.0, 1.0);
    let one = Complex::new(1.0, 0.0);
    let raw: Vec<CMat> = match h {
        SimpleAlgebra::Su(n) => {
            let n = n as usize;
            let mut v = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    let mut x = CMat::zeros(n, n);
                    x[(a, b)] = one;
                    x[(b, a)] = -one;
                    v.push(x);
                    let mut y = CMat::zeros(n, n);
                    y[(a, b)] = i;
                    y[(b, a)] = i;
                    v.push(y);
                }
            }
            for a in 0..n - 1 {
                let mut d = CMat::zeros(n, n);
                d[(a, a)] = i;
                d[(a + 1, a + 1)] = -i;
                v.push(d);
            }
            v
        }
        // sp(2) ≅ so(5): the adjoint representations agree
        SimpleAlgebra::So(_) | SimpleAlgebra::Sp(2) => {
            let n = match h {
                SimpleAlgebra::So(n) => n as usize,
                _ => 5,
            };
            antisymmetric_basis(n).into_iter().map(|x| x.map(|t| Complex::new(t, 0.0))).collect()
        }
        other => return Err(Error::UnsupportedFactor(format!("no matrix model for adj({other})"))),
    };
    let cip = |x: &CMat, y: &CMat| -(x * y).trace().re;
    let mut out: Vec<CMat> = Vec::new();
    for v in raw {
        let mut w = v;
        for u in &out {
            let c = cip(&w, u);
            w -= u * Complex::new(c, 0.0);
        }
        let n = cip(&w, &w).sqrt();
        if n > DEPENDENCE_TOL {
            out.push(w / Complex::new(n, 0.0));
        }
    }
    Ok(out)
}

/// The isotropy representation of one symmetric-space factor: `k_i` inside
/// `so(m_i)`, and for Grassmannians the two halves of the complement.
pub struct FactorModel {
    pub name: String,
    pub dim: usize,
    pub k_gens: Vec<Mat>,
    pub halves: Option<[Vec<Mat>; 2]>,
}

pub fn factor_model(id: SymSpaceId) -> Result<FactorModel> {
    match id {
        SymSpaceId::Sphere(k) => {
            let k = k as usize;
            Ok(FactorModel { name: id.to_string(), dim: k, k_gens: antisymmetric_basis(k), halves: None })
        }
        SymSpaceId::GrassSo(n) => {
            let n = n as usize;
            let id_n = Mat::identity(n, n);
            let a = antisymmetric_basis(n);
            let s = traceless_symmetric_basis(n);
            let mut k_gens = Vec::new();
            for x in &a {
                k_gens.push(kron(x, &id_n));
                k_gens.push(kron(&id_n, x));
            }
            let h1 = a.iter().flat_map(|x| s.iter().map(move |y| kron(x, y))).collect();
            let h2 = s.iter().flat_map(|y| a.iter().map(move |x| kron(y, x))).collect();
            Ok(FactorModel { name: id.to_string(), dim: n * n, k_gens, halves: Some([h1, h2]) })
        }
        SymSpaceId::Adjoint(h) => {
            let basis = matrix_lie_basis(h)?;
            let n = basis.len();
            let cip = |x: &CMat, y: &CMat| -(x * y).trace().re;
            let k_gens = basis
                .iter()
                .map(|e| {
                    Mat::from_fn(n, n, |c, d| {
                        let z = e * &basis[d] - &basis[d] * e;
                        cip(&z, &basis[c])
                    })
                })
                .collect();
            Ok(FactorModel { name: id.to_string(), dim: n, k_gens, halves: None })
        }
        other => Err(Error::UnsupportedFactor(other.to_string())),
    }
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub label: String,
    pub basis: Vec<Mat>,
}

/// `so(m) = k ⊕ p₁ ⊕ ⋯ ⊕ p_r` with orthonormal bases.
#[derive(Clone, Debug)]
pub struct MatrixAlgebraModel {
    pub m: usize,
    pub k_basis: Vec<Mat>,
    pub summands: Vec<Summand>,
}

impl MatrixAlgebraModel {
    pub fn dim_p(&self) -> usize {
        self.summands.iter().map(|s| s.basis.len()).sum()
    }

    pub fn labels(&self) -> Vec<String> {
        self.summands.iter().map(|s| s.label.clone()).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.basis.len()).collect()
    }

    /// `p` basis in summand order.
    pub fn p_basis(&self) -> impl Iterator<Item = &Mat> {
        self.summands.iter().flat_map(|s| s.basis.iter())
    }

    /// Largest deviation of the Gram matrix of `k ∪ p` from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let all: Vec<&Mat> = self.k_basis.iter().chain(self.p_basis()).collect();
        let mut worst: f64 = 0.0;
        for (a, x) in all.iter().enumerate() {
            for (b, y) in all.iter().enumerate().skip(a) {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((ip(self.m, x, y) - target).abs());
            }
        }
        worst
    }

    /// Largest component of `[k, k]` outside `k`.
    pub fn closure_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, x) in self.k_basis.iter().enumerate() {
            for y in &self.k_basis[a + 1..] {
                let z = bracket(x, y);
                let mut rest = z.clone();
                for u in &self.k_basis {
                    rest -= u * ip(self.m, &z, u);
                }
                worst = worst.max(ip(self.m, &rest, &rest).sqrt());
            }
        }
        worst
    }

    /// `dim k + dim p = dim so(m)`.
    pub fn dimension_defect(&self) -> i64 {
        (self.k_basis.len() + self.dim_p()) as i64 - (self.m * (self.m - 1) / 2) as i64
    }
}

fn diag_label(i: usize) -> String {
    format!("({},{})", i + 1, i + 1)
}

fn half_label(i: usize, eps: u8) -> String {
    format!("({},{})^{eps}", i + 1, i + 1)
}

/// `SO(m)/K₁×⋯×K_l` with factors placed in consecutive diagonal blocks, in
/// the summand order of the exact generator (Grassmannian, sphere, other).
/// The Einstein condition is not checked here.
pub fn build_som_algebra(ids: &[SymSpaceId]) -> Result<MatrixAlgebraModel> {
    let mut ids = ids.to_vec();
    ids.sort_by_key(|i| i.class());
    let factors: Vec<FactorModel> = ids.iter().map(|i| factor_model(*i)).collect::<Result<_>>()?;
    let m: usize = factors.iter().map(|f| f.dim).sum();
    let offsets: Vec<usize> = factors
        .iter()
        .scan(0, |acc, f| {
            let o = *acc;
            *acc += f.dim;
            Some(o)
        })
        .collect();

    let mut k_basis = Vec::new();
    let mut block_k: Vec<Vec<Mat>> = Vec::new();
    for (f, &o) in factors.iter().zip(&offsets) {
        let kb = orthonormalize(m, f.k_gens.iter().map(|x| embed(m, o, x)), &[]);
        k_basis.extend(kb.iter().cloned());
        block_k.push(kb);
    }

    let mut summands = Vec::new();
    for (i, ((f, &o), id)) in factors.iter().zip(&offsets).zip(&ids).enumerate() {
        match (id.class(), &f.halves) {
            (FactorClass::Grassmannian, Some([h1, h2])) => {
                let b1 = orthonormalize(m, h1.iter().map(|x| embed(m, o, x)), &block_k[i]);
                let b2 = orthonormalize(m, h2.iter().map(|x| embed(m, o, x)), &[block_k[i].clone(), b1.clone()].concat());
                summands.push(Summand { label: half_label(i, 1), basis: b1 });
                summands.push(Summand { label: half_label(i, 2), basis: b2 });
            }
            (FactorClass::Sphere, _) => {}
            _ => {
                let full = antisymmetric_basis(f.dim).into_iter().map(|x| embed(m, o, &x));
                let basis = orthonormalize(m, full, &block_k[i]);
                summands.push(Summand { label: diag_label(i), basis });
            }
        }
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            let mut basis = Vec::new();
            for a in 0..factors[i].dim {
                for b in 0..factors[j].dim {
                    basis.push(elementary(m, offsets[i] + a, offsets[j] + b));
                }
            }
            let basis = orthonormalize(m, basis, &[]);
            summands.push(Summand { label: format!("({},{})", i + 1, j + 1), basis });
        }
    }
    Ok(MatrixAlgebraModel { m, k_basis, summands })
}

/// `SO(n²)/SO(n)×SO(n)` with the two halves labelled `1` and `2`.
pub fn build_grassmann_algebra(n: u32) -> Result<MatrixAlgebraModel> {
    let mut model = build_som_algebra(&[SymSpaceId::GrassSo(n)])?;
    for (s, label) in model.summands.iter_mut().zip(["1", "2"]) {
        s.label = label.to_string();
    }
    Ok(model)
}

/// `SO(k+1)/SO(k)`: one summand, the last row and column.
pub fn build_sphere_algebra(k: u32) -> MatrixAlgebraModel {
    let k = k as usize;
    let m = k + 1;
    let k_basis = orthonormalize(m, antisymmetric_basis(k).iter().map(|x| embed(m, 0, x)), &[]);
    let p = orthonormalize(m, (0..k).map(|a| elementary(m, a, k)), &[]);
    MatrixAlgebraModel { m, k_basis, summands: vec![Summand { label: "1".into(), basis: p }] }
}

/// `SO(2n)/Tⁿ` with the real root planes `(ij)^1` (`ε_i − ε_j`) and `(ij)^2`
/// (`ε_i + ε_j`).
pub fn build_so_flag_algebra(n: u32) -> MatrixAlgebraModel {
    let n = n as usize;
    let m = 2 * n;
    let k_basis = orthonormalize(m, (0..n).map(|i| elementary(m, 2 * i, 2 * i + 1)), &[]);
    let block = |i: usize, j: usize, b: [[f64; 2]; 2]| {
        let mut x = Mat::zeros(m, m);
        for (r, row) in b.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                x[(2 * i + r, 2 * j + c)] = *v;
                x[(2 * j + c, 2 * i + r)] = -*v;
            }
        }
        x
    };
    let mut summands = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            // rotations commuting with the complex structures on both planes
            let conformal = [block(i, j, [[1.0, 0.0], [0.0, 1.0]]), block(i, j, [[0.0, -1.0], [1.0, 0.0]])];
            let anti = [block(i, j, [[1.0, 0.0], [0.0, -1.0]]), block(i, j, [[0.0, 1.0], [1.0, 0.0]])];
            summands.push(Summand { label: format!("({}{})^1", i + 1, j + 1), basis: orthonormalize(m, conformal, &[]) });
            summands.push(Summand { label: format!("({}{})^2", i + 1, j + 1), basis: orthonormalize(m, anti, &[]) });
        }
    }
    MatrixAlgebraModel { m, k_basis, summands }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_structure() {
        let s = build_som_algebra(&[SymSpaceId::Sphere(3); 3]).unwrap();
        assert_eq!(s.dims(), vec![9, 9, 9]);
        let a = build_som_algebra(&[SymSpaceId::Adjoint(SimpleAlgebra::Su(3)); 2]).unwrap();
        assert_eq!(a.dims(), vec![20, 20, 64]);
        let g = build_grassmann_algebra(3).unwrap();
        assert_eq!(g.dims(), vec![15, 15]);
        for model in [&s, &a, &g, &build_sphere_algebra(8), &build_so_flag_algebra(4)] {
            assert_eq!(model.dimension_defect(), 0);
            assert!(model.orthonormality_defect() < 1e-12);
            assert!(model.closure_defect() < 1e-9);
        }
    }

    #[test]
    fn unsupported_factor() {
        assert!(matches!(factor_model(SymSpaceId::E6F4), Err(Error::UnsupportedFactor(_))));
    }
}
