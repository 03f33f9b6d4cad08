//! `SO(m)/K₁×⋯×K_l`, where `K_i ⊂ SO(m_i)` is the isotropy representation of
//! an irreducible symmetric space `G_i/K_i` and `m = m₁ + ⋯ + m_l`.
//!
//! The complement splits as `p = ⊕ V_i ⊕ ⊕_{i<j} p_(ij)`, with `V_i` the
//! complement of `k_i` in `so(m_i)` (two halves for a Grassmannian, zero for
//! a sphere) and `p_(ij) = R^{m_i} ⊗ R^{m_j}`. Factors are ordered
//! Grassmannians first, then spheres, then the rest.

use super::model::{Constants, KillingComponent, ParametricConstants, SomInfo, SpaceModel};
use super::spec::{FactorClass, SpaceSpec, SymSpaceId};
use super::families::grassmann_square_constants;
use crate::algebra::SimpleAlgebra;
use crate::error::{Error, Result};
use crate::exact::surd::{Surd, SurdSum};
use crate::exact::{q, Rational, SymRationalMatrix};
use crate::killing::som_factor_ratio;
use crate::lich::{assemble_lich_matrix, SummandSet};

fn diag_label(i: usize) -> String {
    format!("({},{})", i + 1, i + 1)
}

fn half_label(i: usize, eps: u8) -> String {
    format!("({},{})^{eps}", i + 1, i + 1)
}

fn pair_label(i: usize, j: usize) -> String {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    format!("({},{})", a + 1, b + 1)
}

/// `r = 2l₁ + (l − l₂) + l(l − 1)/2`.
pub fn summand_count(l: usize, l1: usize, l2: usize) -> usize {
    2 * l1 + (l - l2) + l * (l - 1) / 2
}

/// Validates and orders the factors.
pub fn ordered_factors(ids: &[SymSpaceId]) -> Result<Vec<SymSpaceId>> {
    if ids.len() < 2 {
        return Err(Error::InvalidParameters(format!("som: needs l ≥ 2 factors, got {}", ids.len())));
    }
    let ids: Vec<SymSpaceId> = ids.iter().map(|i| i.validate()).collect::<Result<_>>()?;
    let has = |c: FactorClass| ids.iter().any(|i| i.class() == c);
    if has(FactorClass::Grassmannian) && has(FactorClass::Sphere) {
        return Err(Error::IncompatibleFactors(
            "Grassmannian and sphere factors cannot be combined".into(),
        ));
    }
    let kappa = ids[0].kappa();
    if let Some(bad) = ids.iter().find(|i| i.kappa() != kappa) {
        return Err(Error::NotEinstein(format!(
            "dim k_i/m_i must agree: {} has {kappa}, {bad} has {}",
            ids[0],
            bad.kappa()
        )));
    }
    let mut ordered = ids.clone();
    ordered.sort_by_key(|i| i.class());
    Ok(ordered)
}

/// Builds the model from the closed forms for the nonzero constants.
pub fn build_som(ids: &[SymSpaceId]) -> Result<SpaceModel> {
    let f = ordered_factors(ids)?;
    let l = f.len();
    let l1 = f.iter().filter(|i| i.class() == FactorClass::Grassmannian).count();
    let l2 = l1 + f.iter().filter(|i| i.class() == FactorClass::Sphere).count();
    let m: u64 = f.iter().map(|i| i.m()).sum();
    let kappa = f[0].kappa();
    let mm2 = Rational::int(m as i64 - 2);
    let mi = |i: usize| Rational::int(f[i].m() as i64);
    let di = |i: usize| Rational::int(f[i].d_complement() as i64);

    let mut labels = Vec::new();
    let mut dims = Vec::new();
    for (i, id) in f.iter().enumerate() {
        match id.class() {
            FactorClass::Grassmannian => {
                for eps in [1, 2] {
                    labels.push(half_label(i, eps));
                    dims.push(id.d_complement() / 2);
                }
            }
            FactorClass::Sphere => {}
            FactorClass::Other => {
                labels.push(diag_label(i));
                dims.push(id.d_complement());
            }
        }
    }
    for i in 0..l {
        for j in i + 1..l {
            labels.push(pair_label(i, j));
            dims.push(f[i].m() * f[j].m());
        }
    }
    let summands = SummandSet::new(labels, dims, true)?;

    // Every constant is affine in the unknown [112] of a symplectic
    // Grassmannian factor; for all other inputs the slope is zero.
    let mut pc = ParametricConstants::new("[112] of SO(4n²)/Sp(n)×Sp(n)");
    let zero = Rational::zero;
    for (i, id) in f.iter().enumerate() {
        let scale = (mi(i) - Rational::int(2)) / &mm2;
        match *id {
            SymSpaceId::GrassSo(n) => {
                let (_, c111, c112) = grassmann_square_constants(n);
                let (a, b) = (half_label(i, 1), half_label(i, 2));
                pc.set(&a, &a, &a, &scale * &c111, zero());
                pc.set(&b, &b, &b, &scale * &c111, zero());
                pc.set(&a, &a, &b, &scale * &c112, zero());
                pc.set(&a, &b, &b, &scale * &c112, zero());
            }
            SymSpaceId::GrassSp(n) => {
                let (d1, rho) = grassmann_square_sp_data(n);
                let base = Rational::int(2 * d1 as i64) * (Rational::one() - Rational::int(2) * &rho);
                let (a, b) = (half_label(i, 1), half_label(i, 2));
                pc.set(&a, &a, &a, &scale * &base, &scale * Rational::int(-3));
                pc.set(&b, &b, &b, &scale * &base, &scale * Rational::int(-3));
                pc.set(&a, &a, &b, zero(), scale.clone());
                pc.set(&a, &b, &b, zero(), scale.clone());
            }
            _ if id.class() == FactorClass::Other => {
                let d = diag_label(i);
                let v = di(i) * (mi(i) - Rational::int(2) - Rational::int(4) * &kappa) / &mm2;
                pc.set(&d, &d, &d, v, zero());
            }
            _ => {}
        }
        for j in 0..l {
            if j == i {
                continue;
            }
            let p = pair_label(i, j);
            match id.class() {
                FactorClass::Grassmannian => {
                    let v = mi(j) * di(i) / (Rational::int(2) * &mm2);
                    pc.set(&p, &p, &half_label(i, 1), v.clone(), zero());
                    pc.set(&p, &p, &half_label(i, 2), v, zero());
                }
                FactorClass::Other => {
                    pc.set(&p, &p, &diag_label(i), mi(j) * di(i) / &mm2, zero());
                }
                FactorClass::Sphere => {}
            }
        }
    }
    for i in 0..l {
        for j in i + 1..l {
            for k in j + 1..l {
                let v = mi(i) * mi(j) * mi(k) / (Rational::int(2) * &mm2);
                pc.set(&pair_label(i, j), &pair_label(i, k), &pair_label(j, k), v, zero());
            }
        }
    }
    pc.close();
    let parametric = f.iter().any(|i| matches!(i, SymSpaceId::GrassSp(_)));
    let constants = if parametric {
        Constants::Parametric(pc)
    } else {
        Constants::Numeric(pc.instantiate_fixed()?)
    };

    let c = som_factor_ratio(&kappa, m);
    let killing_components = f
        .iter()
        .map(|id| KillingComponent::new(format!("k[{id}]"), c.clone(), id.dim_k()))
        .collect();
    let rho = q(1, 4) + &kappa / &mm2;
    let mut notes = vec![format!(
        "factors ordered Grassmannian, sphere, other: {}",
        f.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
    )];
    if parametric {
        notes.push("constants depend on the unknown [112] of the symplectic Grassmannian factor".into());
    }
    let mut errata = Vec::new();
    if l1 == 0 && l2 == 0 {
        errata.push(format!(
            "largest eigenvalue (m−1−2κ)/(m−2) = {}; the closed form (m−1−κ)/(m−2) = {} printed for this \
             family disagrees with the trace of the matrix",
            (Rational::int(m as i64 - 1) - Rational::int(2) * &kappa) / &mm2,
            (Rational::int(m as i64 - 1) - &kappa) / &mm2
        ));
    }
    let model = SpaceModel {
        spec: SpaceSpec::Som(ids.to_vec()),
        algebra: SimpleAlgebra::So(m as u32),
        dim_k: f.iter().map(|i| i.dim_k()).sum(),
        r: summands.len(),
        summands: Some(summands),
        constants,
        multiplicity_free: true,
        rho: Some(rho),
        killing_components: Some(killing_components),
        casimir: Some(Rational::int(2) * &kappa / &mm2),
        som: Some(SomInfo { m, l, l1, l2, kappa, factors: f }),
        notes,
        errata,
    };
    if model.r != summand_count(l, l1, l2) {
        return Err(Error::Shape(format!("som: {} summands, expected {}", model.r, summand_count(l, l1, l2))));
    }
    model.validate()
}

/// `d₁` and `ρ` of `SO(4n²)/Sp(n)×Sp(n)`.
pub(crate) fn grassmann_square_sp_data(n: u32) -> (u64, Rational) {
    let n64 = u64::from(n);
    let d1 = n64 * (n64 - 1) * (2 * n64 + 1) * (2 * n64 + 1);
    let ni = n as i64;
    let rho = q(1, 4) + Rational::new(2 * ni + 1, 4 * ni * (2 * ni * ni - 1));
    (d1, rho)
}

/// Outcome of the exact eigenvector check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvectorCheck {
    /// `(name, eigenvalue, holds)` for each vector tested.
    pub vectors: Vec<(String, Rational, bool)>,
}

impl EigenvectorCheck {
    pub fn all_hold(&self) -> bool {
        self.vectors.iter().all(|(_, _, ok)| *ok)
    }
}

fn check_vector(s: &SymRationalMatrix, v: &[Surd], lambda: &Rational) -> bool {
    (0..s.order()).all(|k| {
        let mut acc = SurdSum::default();
        for (m, x) in v.iter().enumerate() {
            let e = s.get(k, m);
            if !e.is_zero() {
                acc.add(&x.scale(e));
            }
        }
        acc.equals(&v[k].scale(lambda))
    })
}

/// Verifies the two families of eigenvectors `A^{ij}` (eigenvalue
/// `m/(2(m−2))`, all pairs) and `B^{ij}` (eigenvalue `(m−1−2κ)/(m−2)`, pairs
/// of factors with irreducible `V_i`) exactly, in the coordinates of the
/// rational matrix `S`. There a vector's entry on `p_k` is the coefficient of
/// the identity of `p_k` in the corresponding endomorphism. `x` supplies the
/// unknown constant of a symplectic Grassmannian factor.
pub fn som_eigenvector_check(model: &SpaceModel, x: Option<&Rational>) -> Result<EigenvectorCheck> {
    let info = model
        .som
        .as_ref()
        .ok_or_else(|| Error::InvalidCase("not an SO(m)/K₁×⋯×K_l model".into()))?;
    let summands = model.summands.as_ref().expect("som models carry summands");
    let sc = match (&model.constants, x) {
        (Constants::Numeric(sc), _) => sc.clone(),
        (Constants::Parametric(pc), Some(x)) => pc.instantiate(x)?,
        (Constants::Parametric(_), None) => return Err(Error::ParametricConstants),
        (Constants::Unavailable, _) => return Err(Error::InvalidCase("no constants".into())),
    };
    let s = assemble_lich_matrix(summands, &sc)?;
    let f = &info.factors;
    let m = info.m as i64;
    let mm2 = Rational::int(m - 2);
    let idx = |label: &str| summands.index_of(label).ok();
    let blank = || vec![Surd::zero(); summands.len()];
    let set_diag = |v: &mut Vec<Surd>, i: usize, val: Surd| {
        for label in [diag_label(i), half_label(i, 1), half_label(i, 2)] {
            if let Some(k) = idx(&label) {
                v[k] = val.clone();
            }
        }
    };
    let mut out = Vec::new();

    let lambda_a = Rational::int(m) / (Rational::int(2) * &mm2);
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            let (m_i, m_j) = (Rational::int(f[i].m() as i64), Rational::int(f[j].m() as i64));
            let mut v = blank();
            set_diag(&mut v, i, Surd::rational(m_j.clone()));
            set_diag(&mut v, j, Surd::rational(-&m_i));
            v[idx(&pair_label(i, j)).expect("pair summand")] = Surd::rational((&m_j - &m_i) / Rational::int(2));
            for h in 0..f.len() {
                if h != i && h != j {
                    v[idx(&pair_label(i, h)).expect("pair summand")] = Surd::rational(&m_j / Rational::int(2));
                    v[idx(&pair_label(j, h)).expect("pair summand")] = Surd::rational(-&m_i / Rational::int(2));
                }
            }
            out.push((format!("A^({},{})", i + 1, j + 1), lambda_a.clone(), check_vector(&s, &v, &lambda_a)));
        }
    }

    let lambda_b = (Rational::int(m - 1) - Rational::int(2) * &info.kappa) / &mm2;
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            if f[i].class() != FactorClass::Other || f[j].class() != FactorClass::Other {
                continue;
            }
            let (d_i, d_j) = (Rational::int(f[i].d_complement() as i64), Rational::int(f[j].d_complement() as i64));
            let mut v = blank();
            set_diag(&mut v, i, Surd::sqrt(&(&d_j / &d_i)));
            set_diag(&mut v, j, Surd::sqrt(&(&d_i / &d_j)));
            let mimj = Rational::int((f[i].m() * f[j].m()) as i64);
            v[idx(&pair_label(i, j)).expect("pair summand")] =
                Surd::sqrt(&(&d_i * &d_j)).scale(&(Rational::int(-2) / mimj));
            out.push((format!("B^({},{})", i + 1, j + 1), lambda_b.clone(), check_vector(&s, &v, &lambda_b)));
        }
    }
    Ok(EigenvectorCheck { vectors: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_spectrum;
    use crate::exact::Spectrum;
    use crate::lich::StructuralConstants;

    fn ids(s: &str) -> Vec<SymSpaceId> {
        match s.parse::<SpaceSpec>().unwrap() {
            SpaceSpec::Som(v) => v,
            _ => unreachable!(),
        }
    }

    fn numeric(m: &SpaceModel) -> &StructuralConstants {
        match &m.constants {
            Constants::Numeric(sc) => sc,
            _ => panic!("expected numeric constants"),
        }
    }

    #[test]
    fn adjoint_pair_spectrum() {
        let m = build_som(&ids("som:adj(su(3))x2")).unwrap();
        assert_eq!(m.r, 3);
        assert_eq!(m.rho, Some(q(9, 28)));
        let s = assemble_lich_matrix(m.summands.as_ref().unwrap(), numeric(&m)).unwrap();
        assert_eq!(s.trace(), q(3, 2));
        let spec = rational_spectrum(&s).unwrap();
        assert_eq!(spec, Spectrum::from_unsorted([(q(0, 1), 1), (q(4, 7), 1), (q(13, 14), 1)]));
        let check = som_eigenvector_check(&m, None).unwrap();
        assert!(check.all_hold(), "{check:?}");
        assert!(check.vectors.iter().any(|(n, l, _)| n.starts_with('B') && *l == q(13, 14)));
    }

    #[test]
    fn sphere_triple_constants() {
        let m = build_som(&ids("som:sphere(3)x3")).unwrap();
        assert_eq!(m.r, 3);
        assert_eq!(numeric(&m).get("(1,2)", "(1,3)", "(2,3)"), q(27, 14));
        let check = som_eigenvector_check(&m, None).unwrap();
        assert!(check.vectors.iter().all(|(n, _, _)| n.starts_with('A')));
        assert!(check.all_hold());
        assert_eq!(check.vectors[0].1, q(9, 14));
    }

    #[test]
    fn errors() {
        assert!(matches!(build_som(&ids("som:sphere(3)")), Err(Error::InvalidParameters(_))));
        assert!(matches!(build_som(&ids("som:sphere(3)+sphere(4)")), Err(Error::NotEinstein(_))));
        assert!(matches!(
            build_som(&ids("som:grass-so(3)+sphere(3)")),
            Err(Error::IncompatibleFactors(_))
        ));
    }

    #[test]
    fn grassmannian_factors() {
        let m = build_som(&ids("som:grass-so(3)x2")).unwrap();
        assert_eq!(m.r, summand_count(2, 2, 2));
        assert!(som_eigenvector_check(&m, None).unwrap().all_hold());
        let m = build_som(&ids("som:grass-sp(2)x2")).unwrap();
        assert!(matches!(m.constants, Constants::Parametric(_)));
        assert_eq!(som_eigenvector_check(&m, None), Err(Error::ParametricConstants));
        assert!(som_eigenvector_check(&m, Some(&q(8, 1))).unwrap().all_hold());
    }
}
