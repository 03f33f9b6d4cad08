//! Positive roots of the simply-laced simple Lie algebras and the data of
//! their full flag manifolds `G/T`.
//!
//! Roots live in an ε-orthonormal ambient basis with exact rational
//! coordinates (half-integers for the spinor-type roots of E6–E8), so the
//! membership test `α ± β ∈ Δ` is a literal coordinate lookup.

use std::collections::HashSet;
use std::fmt;

use crate::algebra::SimpleAlgebra;
use crate::error::{Error, Result};
use crate::exact::{rational_spectrum, q, Rational, Spectrum, SymRationalMatrix};

/// A simply-laced root system. `A(n)` is the root system of `su(n)` (rank
/// `n − 1`), `D(n)` the one of `so(2n)` (rank `n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootSystemId {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

impl RootSystemId {
    /// Validates the rank parameter. `su(2)` is excluded because its flag
    /// manifold has a single isotropy summand and no brackets between roots.
    pub fn new(self) -> Result<Self> {
        match self {
            RootSystemId::A(n) if n < 3 => Err(Error::OutOfRange(format!(
                "su({n}): full flags need n ≥ 3"
            ))),
            RootSystemId::D(n) if n < 3 => Err(Error::OutOfRange(format!(
                "so({}): the D family needs n ≥ 3",
                2 * n
            ))),
            other => Ok(other),
        }
    }

    /// The simply-laced root system of an algebra, if it has one.
    pub fn from_algebra(g: SimpleAlgebra) -> Result<Self> {
        match g {
            SimpleAlgebra::Su(n) => RootSystemId::A(n).new(),
            SimpleAlgebra::So(n) if n % 2 == 0 && n != 4 => {
                if n == 6 {
                    // so(6) ≅ su(4) but its D3 model is the one used for SO(6)/T³
                    Ok(RootSystemId::D(3))
                } else {
                    RootSystemId::D(n / 2).new()
                }
            }
            SimpleAlgebra::E6 => Ok(RootSystemId::E6),
            SimpleAlgebra::E7 => Ok(RootSystemId::E7),
            SimpleAlgebra::E8 => Ok(RootSystemId::E8),
            other => Err(Error::UnsupportedType(format!(
                "{other} is not simply laced (or has no D-model)"
            ))),
        }
    }

    pub fn algebra(self) -> SimpleAlgebra {
        match self {
            RootSystemId::A(n) => SimpleAlgebra::Su(n),
            RootSystemId::D(n) => SimpleAlgebra::So(2 * n),
            RootSystemId::E6 => SimpleAlgebra::E6,
            RootSystemId::E7 => SimpleAlgebra::E7,
            RootSystemId::E8 => SimpleAlgebra::E8,
        }
    }

    pub fn dim(self) -> u64 {
        self.algebra().dim()
    }

    pub fn rank(self) -> u64 {
        self.algebra().rank()
    }

    /// Number of positive roots, `(dim g − rank)/2`.
    pub fn positive_root_count(self) -> usize {
        ((self.dim() - self.rank()) / 2) as usize
    }

    /// Dual Coxeter number; a root has squared Killing norm `1/h∨`.
    pub fn dual_coxeter(self) -> u64 {
        match self {
            RootSystemId::A(n) => u64::from(n),
            RootSystemId::D(n) => 2 * u64::from(n) - 2,
            RootSystemId::E6 => 12,
            RootSystemId::E7 => 18,
            RootSystemId::E8 => 30,
        }
    }

    /// `#{β ∈ Δ⁺ : α + β ∈ Δ or α − β ∈ Δ}`, independent of `α`.
    pub fn kappa_closed_form(self) -> u64 {
        match self {
            RootSystemId::A(n) => 2 * (u64::from(n) - 2),
            RootSystemId::D(n) => 4 * (u64::from(n) - 2),
            RootSystemId::E6 => 20,
            RootSystemId::E7 => 32,
            RootSystemId::E8 => 56,
        }
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.algebra())
    }
}

/// A root in the ambient ε-basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(pub Vec<Rational>);

impl RootVector {
    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    fn add(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn neg(&self) -> RootVector {
        RootVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn dot(&self, other: &RootVector) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Lexicographic positivity: the first nonzero coordinate is positive.
    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|c| !c.is_zero()).is_some_and(Rational::is_positive)
    }

    /// `e1-e2`, `e3+e5`, or `(+-+-+--+)/2` for spinor-type roots.
    pub fn label(&self) -> String {
        let half = q(1, 2);
        if self.0.iter().all(|c| c.abs() == half) {
            let signs: String = self
                .0
                .iter()
                .map(|c| if c.is_positive() { '+' } else { '-' })
                .collect();
            return format!("({signs})/2");
        }
        let mut out = String::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&format!("e{}", i + 1));
        }
        out
    }
}

fn unit(len: usize, i: usize, s: i64) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    v[i] = Rational::int(s);
    v
}

/// `±εᵢ ± εⱼ` (D-type) plus the half-integer vectors with an even number of
/// minus signs: the 240 roots of E8.
fn e8_roots() -> Vec<RootVector> {
    let mut roots = Vec::with_capacity(240);
    for i in 0..8 {
        for j in i + 1..8 {
            for si in [1, -1] {
                for sj in [1, -1] {
                    let mut v = unit(8, i, si);
                    v[j] = Rational::int(sj);
                    roots.push(RootVector(v));
                }
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let v = (0..8)
                .map(|k| if mask & (1 << k) != 0 { q(-1, 2) } else { q(1, 2) })
                .collect();
            roots.push(RootVector(v));
        }
    }
    roots
}

fn all_roots(id: RootSystemId) -> Vec<RootVector> {
    match id {
        RootSystemId::A(n) => {
            let n = n as usize;
            let mut out = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let mut v = unit(n, i, 1);
                        v[j] = Rational::int(-1);
                        out.push(RootVector(v));
                    }
                }
            }
            out
        }
        RootSystemId::D(n) => {
            let n = n as usize;
            let mut out = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for si in [1, -1] {
                        for sj in [1, -1] {
                            let mut v = unit(n, i, si);
                            v[j] = Rational::int(sj);
                            out.push(RootVector(v));
                        }
                    }
                }
            }
            out
        }
        RootSystemId::E8 => e8_roots(),
        RootSystemId::E7 => {
            // orthogonal complement of ε7 + ε8 inside E8
            let w = RootVector((0..8).map(|k| Rational::int(i64::from(k >= 6))).collect());
            e8_roots().into_iter().filter(|r| r.dot(&w).is_zero()).collect()
        }
        RootSystemId::E6 => {
            // additionally orthogonal to ε6 − ε7
            let w1 = RootVector((0..8).map(|k| Rational::int(i64::from(k >= 6))).collect());
            let mut w2 = vec![Rational::zero(); 8];
            w2[5] = Rational::one();
            w2[6] = Rational::int(-1);
            let w2 = RootVector(w2);
            e8_roots()
                .into_iter()
                .filter(|r| r.dot(&w1).is_zero() && r.dot(&w2).is_zero())
                .collect()
        }
    }
}

/// The positive roots in a fixed, sorted (descending lexicographic) order.
pub fn enumerate_positive_roots(id: RootSystemId) -> Result<Vec<RootVector>> {
    let id = id.new()?;
    let mut pos: Vec<RootVector> = all_roots(id).into_iter().filter(RootVector::is_positive).collect();
    pos.sort();
    pos.reverse();
    debug_assert_eq!(pos.len(), id.positive_root_count());
    Ok(pos)
}

struct RootTable {
    positive: Vec<RootVector>,
    all: HashSet<RootVector>,
}

impl RootTable {
    fn new(id: RootSystemId) -> Result<Self> {
        let positive = enumerate_positive_roots(id)?;
        let all = positive.iter().flat_map(|r| [r.clone(), r.neg()]).collect();
        Ok(RootTable { positive, all })
    }

    fn adjacent(&self, a: &RootVector, b: &RootVector) -> bool {
        self.all.contains(&a.add(b)) || self.all.contains(&a.sub(b))
    }
}

/// `a_{αβ} = 1` iff `α + β ∈ Δ` or `α − β ∈ Δ`, over the positive roots.
pub fn adjacency_matrix(id: RootSystemId) -> Result<SymRationalMatrix> {
    let t = RootTable::new(id)?;
    let r = t.positive.len();
    Ok(SymRationalMatrix::from_fn(r, |i, j| {
        if i != j && t.adjacent(&t.positive[i], &t.positive[j]) {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// Unordered triples `{α, β, α + β}` of positive-root indices; these are
/// exactly the nonzero structural constants of `G/T` for the splitting into
/// root planes.
pub fn bracket_triples(id: RootSystemId) -> Result<Vec<[usize; 3]>> {
    let t = RootTable::new(id)?;
    let index: std::collections::HashMap<&RootVector, usize> =
        t.positive.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut out = Vec::new();
    for i in 0..t.positive.len() {
        for j in i + 1..t.positive.len() {
            if let Some(&k) = index.get(&t.positive[i].add(&t.positive[j])) {
                out.push([i, j, k]);
            }
        }
    }
    Ok(out)
}

/// Common valency of the adjacency graph, read off the first row.
pub fn kappa(adjacency: &SymRationalMatrix) -> u64 {
    adjacency.row(0).iter().filter(|v| !v.is_zero()).count() as u64
}

/// `b_g = (2 − 4·rank/d)/κ_g` with `d = dim g − rank`: the common value of
/// the nonzero structural constants of `G/T`.
pub fn flag_b_constant(id: RootSystemId) -> Result<Rational> {
    let id = id.new()?;
    let d = id.dim() - id.rank();
    let num = Rational::int(2) - Rational::new(4 * id.rank() as i64, d as i64);
    Ok(num / Rational::int(id.kappa_closed_form() as i64))
}

/// Everything about the full flag manifold `G/T` in one place.
#[derive(Clone, Debug)]
pub struct FlagData {
    pub id: RootSystemId,
    pub positive_roots: Vec<RootVector>,
    pub kappa: u64,
    pub b: Rational,
    pub adjacency: SymRationalMatrix,
}

pub fn flag_data(id: RootSystemId) -> Result<FlagData> {
    let positive_roots = enumerate_positive_roots(id)?;
    let adjacency = adjacency_matrix(id)?;
    let k = kappa(&adjacency);
    Ok(FlagData {
        id,
        positive_roots,
        kappa: k,
        b: flag_b_constant(id)?,
        adjacency,
    })
}

/// Spectrum of `(b/2)(κ I − A)`, the rescaled Lichnerowicz matrix of `G/T`.
pub fn flag_spectrum(id: RootSystemId) -> Result<Spectrum> {
    let data = flag_data(id)?;
    let r = data.adjacency.order();
    let k = SymRationalMatrix::identity(r).scale(&Rational::int(data.kappa as i64));
    let m = k.sub(&data.adjacency).scale(&(&data.b / Rational::int(2)));
    rational_spectrum(&m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        assert_eq!(enumerate_positive_roots(RootSystemId::A(3)).unwrap().len(), 3);
        assert_eq!(enumerate_positive_roots(RootSystemId::D(6)).unwrap().len(), 30);
        assert_eq!(enumerate_positive_roots(RootSystemId::E6).unwrap().len(), 36);
        assert_eq!(enumerate_positive_roots(RootSystemId::E7).unwrap().len(), 63);
        assert_eq!(enumerate_positive_roots(RootSystemId::E8).unwrap().len(), 120);
    }

    #[test]
    fn su3_is_triangle() {
        let a = adjacency_matrix(RootSystemId::A(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(*a.get(i, j), Rational::int(i64::from(i != j)));
            }
        }
    }

    #[test]
    fn b_constants() {
        assert_eq!(flag_b_constant(RootSystemId::A(7)).unwrap(), q(1, 7));
        assert_eq!(flag_b_constant(RootSystemId::D(5)).unwrap(), q(1, 8));
        assert_eq!(flag_b_constant(RootSystemId::E8).unwrap(), q(1, 30));
    }

    #[test]
    fn labels() {
        let roots = enumerate_positive_roots(RootSystemId::D(3)).unwrap();
        let labels: Vec<String> = roots.iter().map(RootVector::label).collect();
        assert!(labels.contains(&"e1-e2".to_string()));
        assert!(labels.contains(&"e2+e3".to_string()));
        let e8 = enumerate_positive_roots(RootSystemId::E8).unwrap();
        assert!(e8.iter().any(|r| r.label() == "(++++++++)/2"));
    }

    #[test]
    fn rejects_small_or_non_simply_laced() {
        assert!(RootSystemId::A(2).new().is_err());
        assert!(matches!(
            RootSystemId::from_algebra(SimpleAlgebra::F4),
            Err(Error::UnsupportedType(_))
        ));
        assert!(matches!(
            RootSystemId::from_algebra(SimpleAlgebra::So(7)),
            Err(Error::UnsupportedType(_))
        ));
    }
}
