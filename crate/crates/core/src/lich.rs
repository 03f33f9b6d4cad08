//! The Lichnerowicz matrix of a standard metric, its Ricci eigenvalues and
//! the stability classification read off its spectrum.
//!
//! For a decomposition `p = p₁ ⊕ ⋯ ⊕ p_r` with structural constants `[ijk]`,
//! the operator on invariant symmetric endomorphisms is an `r × r` matrix.
//! In the orthonormal basis its off-diagonal entries carry `1/√(d_k d_m)`;
//! conjugating by `diag(√d_k)` gives the all-rational matrix
//!
//! ```text
//! S[k][k] =  (1/d_k) Σ_{j≠k, i} [ijk]
//! S[k][m] = −(1/d_k) Σ_i [ikm]        (k ≠ m)
//! ```
//!
//! which has the same spectrum and sends the identity direction to the
//! all-ones vector.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::sturm::{compare_root, isolate_real_roots, SturmChain};
use crate::exact::{q, Polynomial, Rational, Spectrum, SymRationalMatrix};

/// The isotropy summands of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandSet {
    labels: Vec<String>,
    dims: Vec<u64>,
    multiplicity_free: bool,
    index: HashMap<String, usize>,
}

impl SummandSet {
    pub fn new(labels: Vec<String>, dims: Vec<u64>, multiplicity_free: bool) -> Result<Self> {
        if labels.is_empty() || labels.len() != dims.len() {
            return Err(Error::Shape(format!(
                "{} labels for {} dimensions",
                labels.len(),
                dims.len()
            )));
        }
        if dims.contains(&0) {
            return Err(Error::Shape("summand of dimension 0".into()));
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Shape(format!("duplicate summand label `{l}`")));
            }
        }
        Ok(SummandSet { labels, dims, multiplicity_free, index })
    }

    /// Summands labelled `1, 2, …, r`.
    pub fn numbered(dims: Vec<u64>, multiplicity_free: bool) -> Result<Self> {
        let labels = (1..=dims.len()).map(|i| i.to_string()).collect();
        Self::new(labels, dims, multiplicity_free)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> u64 {
        self.dims[k]
    }

    /// `dim p = Σ d_k`.
    pub fn total_dim(&self) -> u64 {
        self.dims.iter().sum()
    }

    pub fn multiplicity_free(&self) -> bool {
        self.multiplicity_free
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

/// `[ijk]` keyed by the sorted triple of labels; absent triples are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructuralConstants {
    table: BTreeMap<[String; 3], Rational>,
}

fn sorted_key(a: &str, b: &str, c: &str) -> [String; 3] {
    let mut k = [a.to_string(), b.to_string(), c.to_string()];
    k.sort();
    k
}

impl StructuralConstants {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `[abc]` (in any order). Negative values are rejected since each
    /// constant is a sum of squares.
    pub fn set(&mut self, a: &str, b: &str, c: &str, v: Rational) -> Result<()> {
        if v.is_negative() {
            return Err(Error::InvalidParameters(format!("[{a} {b} {c}] = {v} is negative")));
        }
        let key = sorted_key(a, b, c);
        if v.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, v);
        }
        Ok(())
    }

    pub fn get(&self, a: &str, b: &str, c: &str) -> Rational {
        self.table.get(&sorted_key(a, b, c)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[String; 3], &Rational)> {
        self.table.iter()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Resolves labels to indices, failing on labels outside `s`.
    fn indexed(&self, s: &SummandSet) -> Result<Vec<([usize; 3], &Rational)>> {
        self.table
            .iter()
            .map(|(k, v)| {
                Ok((
                    [s.index_of(&k[0])?, s.index_of(&k[1])?, s.index_of(&k[2])?],
                    v,
                ))
            })
            .collect()
    }
}

/// The distinct orderings of a triple that may contain repeated entries.
fn distinct_permutations(t: [usize; 3]) -> Vec<[usize; 3]> {
    let [a, b, c] = t;
    let mut perms = vec![[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
    perms.sort();
    perms.dedup();
    perms
}

/// Per-summand sums needed by every formula in this module.
struct Sums {
    /// `Σ_{i,j} [ijk]` over ordered pairs.
    full: Vec<Rational>,
    /// `Σ_{j≠k, i} [ijk]`.
    diag: Vec<Rational>,
    /// `Σ_i [ikm]` for `k ≠ m`.
    off: Vec<Vec<Rational>>,
}

fn sums(s: &SummandSet, sc: &StructuralConstants) -> Result<Sums> {
    let r = s.len();
    let mut out = Sums {
        full: vec![Rational::zero(); r],
        diag: vec![Rational::zero(); r],
        off: vec![vec![Rational::zero(); r]; r],
    };
    for (t, v) in sc.indexed(s)? {
        for [_, y, z] in distinct_permutations(t) {
            out.full[z] += v;
            if y != z {
                out.diag[z] += v;
                out.off[z][y] += v;
            }
        }
    }
    Ok(out)
}

/// The rational matrix `S` similar to the Lichnerowicz matrix.
pub fn assemble_lich_matrix(s: &SummandSet, sc: &StructuralConstants) -> Result<SymRationalMatrix> {
    let sm = sums(s, sc)?;
    let r = s.len();
    Ok(SymRationalMatrix::from_fn(r, |k, m| {
        let d = Rational::int(s.dim(k) as i64);
        if k == m {
            &sm.diag[k] / &d
        } else {
            -(&sm.off[k][m] / &d)
        }
    }))
}

/// `ρ_k = 1/2 − (1/(4 d_k)) Σ_{i,j} [ijk]`.
pub fn ricci_eigenvalues(s: &SummandSet, sc: &StructuralConstants) -> Result<Vec<Rational>> {
    let sm = sums(s, sc)?;
    Ok((0..s.len())
        .map(|k| q(1, 2) - &sm.full[k] / Rational::int(4 * s.dim(k) as i64))
        .collect())
}

/// Checks `Σ_{i,j} [ijk] = d_k (1 − 2 a_k)` for every summand, where `a_k` is
/// the Casimir constant of the isotropy representation on `p_k`.
pub fn casimir_consistency(s: &SummandSet, sc: &StructuralConstants, a: &[Rational]) -> Result<bool> {
    if a.len() != s.len() {
        return Err(Error::Shape(format!("{} Casimir constants for {} summands", a.len(), s.len())));
    }
    let sm = sums(s, sc)?;
    Ok((0..s.len()).all(|k| {
        sm.full[k] == Rational::int(s.dim(k) as i64) * (Rational::one() - Rational::int(2) * &a[k])
    }))
}

/// An eigenvalue known exactly, or only through an isolating interval when
/// it is an irrational root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Eigenvalue {
    Exact(Rational),
    Interval { lo: Rational, hi: Rational },
}

impl Eigenvalue {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Eigenvalue::Exact(v) => Some(v),
            Eigenvalue::Interval { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Eigenvalue::Exact(v) => v.to_f64(),
            Eigenvalue::Interval { lo, hi } => (lo.to_f64() + hi.to_f64()) / 2.0,
        }
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Exact(v) => write!(f, "{v}"),
            Eigenvalue::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

/// G-stability types of an Einstein metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictKind {
    #[serde(rename = "G-stable")]
    Stable,
    /// `2ρ ≤ λ_p` is known but not which of `<` or `=` holds.
    #[serde(rename = "G-semistable-boundary")]
    SemistableBoundary,
    #[serde(rename = "G-neutrally-stable")]
    NeutrallyStable,
    #[serde(rename = "G-unstable-local-min")]
    UnstableLocalMin,
    #[serde(rename = "G-unstable-saddle")]
    UnstableSaddle,
}

impl VerdictKind {
    pub fn is_unstable(self) -> bool {
        matches!(self, VerdictKind::UnstableLocalMin | VerdictKind::UnstableSaddle)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Stable => "G-stable",
            VerdictKind::SemistableBoundary => "G-semistable-boundary",
            VerdictKind::NeutrallyStable => "G-neutrally-stable",
            VerdictKind::UnstableLocalMin => "G-unstable-local-min",
            VerdictKind::UnstableSaddle => "G-unstable-saddle",
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Consequences of a verdict along the implication chart of stability notions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImpliedFlag {
    /// Local maximum of the scalar curvature on unit-volume invariant metrics.
    LocalMaxOfScal,
    LocalMinOfScal,
    SaddleOfScal,
    GSemistable,
    /// Isolated among invariant Einstein metrics (no infinitesimal deformations).
    GRigid,
    GDegenerate,
    Unstable,
    NuUnstable,
    DynamicallyUnstable,
    /// `λ_p^max = 2ρ`: the second variation is only semidefinite on TT, so
    /// the local-minimum question is not settled at second order.
    SecondOrderUndetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub two_rho: Rational,
    pub lambda_p: Option<Eigenvalue>,
    pub lambda_p_max: Option<Eigenvalue>,
    pub kind: VerdictKind,
    /// `None` when only the sign of `λ_p − 2ρ` is known.
    pub coindex: Option<usize>,
    pub nullity: Option<usize>,
    pub nondegenerate: bool,
    pub conclusive: bool,
    pub implied: BTreeSet<ImpliedFlag>,
}

impl StabilityVerdict {
    /// Fills the implied flags for `kind`.
    pub(crate) fn derive_implied(kind: VerdictKind, nondegenerate: bool) -> BTreeSet<ImpliedFlag> {
        use ImpliedFlag::*;
        let mut out = BTreeSet::new();
        match kind {
            VerdictKind::Stable => {
                out.extend([LocalMaxOfScal, GSemistable]);
            }
            VerdictKind::SemistableBoundary => {
                out.insert(GSemistable);
            }
            VerdictKind::NeutrallyStable => {
                out.insert(GSemistable);
            }
            VerdictKind::UnstableLocalMin => {
                out.extend([LocalMinOfScal, Unstable, NuUnstable, DynamicallyUnstable]);
            }
            VerdictKind::UnstableSaddle => {
                out.extend([SaddleOfScal, Unstable, NuUnstable, DynamicallyUnstable]);
            }
        }
        if nondegenerate {
            out.insert(GRigid);
        } else {
            out.insert(GDegenerate);
        }
        out
    }
}

/// A TT eigenvalue candidate during classification.
#[derive(Clone, Debug)]
enum Tt {
    Exact(Rational),
    Root { lo: Rational, hi: Rational },
}

struct Ctx<'a> {
    chain: Option<&'a SturmChain>,
}

impl Ctx<'_> {
    fn cmp_rational(&self, a: &Tt, x: &Rational) -> Ordering {
        match a {
            Tt::Exact(v) => v.cmp(x),
            Tt::Root { lo, hi } => compare_root(self.chain.expect("root without chain"), lo, hi, x),
        }
    }

    fn cmp(&self, a: &Tt, b: &Tt) -> Ordering {
        match (a, b) {
            (Tt::Exact(x), Tt::Exact(y)) => x.cmp(y),
            (_, Tt::Exact(y)) => self.cmp_rational(a, y),
            (Tt::Exact(x), _) => self.cmp_rational(b, x).reverse(),
            // isolating intervals of distinct roots are disjoint
            (Tt::Root { lo: a, .. }, Tt::Root { lo: b, .. }) => a.cmp(b),
        }
    }
}

fn to_eigenvalue(t: &Tt) -> Eigenvalue {
    match t {
        Tt::Exact(v) => Eigenvalue::Exact(v.clone()),
        Tt::Root { lo, hi } => Eigenvalue::Interval { lo: lo.clone(), hi: hi.clone() },
    }
}

fn classify_values(rho: &Rational, s: &SummandSet, mut tt: Vec<(Tt, usize)>, ctx: &Ctx<'_>) -> Result<StabilityVerdict> {
    if tt.is_empty() {
        return Err(Error::InvalidCase(
            "no trace-free invariant directions (isotropy irreducible)".into(),
        ));
    }
    let two_rho = Rational::int(2) * rho;
    tt.sort_by(|a, b| ctx.cmp(&a.0, &b.0));
    let lambda_p = &tt[0].0;
    let lambda_max = &tt[tt.len() - 1].0;
    let mut coindex = 0;
    let mut nullity = 0;
    for (v, m) in &tt {
        match ctx.cmp_rational(v, &two_rho) {
            Ordering::Less => coindex += m,
            Ordering::Equal => nullity += m,
            Ordering::Greater => {}
        }
    }
    let kind = match ctx.cmp_rational(lambda_p, &two_rho) {
        Ordering::Greater => VerdictKind::Stable,
        Ordering::Equal => VerdictKind::NeutrallyStable,
        Ordering::Less => match ctx.cmp_rational(lambda_max, &two_rho) {
            Ordering::Less => VerdictKind::UnstableLocalMin,
            _ => VerdictKind::UnstableSaddle,
        },
    };
    let nondegenerate = nullity == 0;
    let mut implied = StabilityVerdict::derive_implied(kind, nondegenerate);
    if kind == VerdictKind::UnstableSaddle && ctx.cmp_rational(lambda_max, &two_rho) == Ordering::Equal {
        implied.remove(&ImpliedFlag::SaddleOfScal);
        implied.insert(ImpliedFlag::SecondOrderUndetermined);
    }
    Ok(StabilityVerdict {
        two_rho,
        lambda_p: Some(to_eigenvalue(lambda_p)),
        lambda_p_max: Some(to_eigenvalue(lambda_max)),
        kind,
        coindex: Some(coindex),
        nullity: Some(nullity),
        nondegenerate,
        conclusive: s.multiplicity_free() || kind.is_unstable(),
        implied,
    })
}

/// Removes the identity direction (one copy of 0) and classifies the rest.
pub fn classify(rho: &Rational, s: &SummandSet, spec: &Spectrum) -> Result<StabilityVerdict> {
    let tt = spec.without_one(&Rational::zero()).ok_or(Error::MissingKernel)?;
    let values = tt
        .pairs()
        .iter()
        .map(|p| (Tt::Exact(p.value.clone()), p.mult))
        .collect();
    classify_values(rho, s, values, &Ctx { chain: None })
}

/// Classification when part of the spectrum is only known as the real roots
/// of `residual` (a factor without rational roots). Comparisons against `2ρ`
/// stay exact through Sturm counts.
pub fn classify_mixed(
    rho: &Rational,
    s: &SummandSet,
    rational_part: &Spectrum,
    residual: &Polynomial,
) -> Result<StabilityVerdict> {
    let tt = rational_part.without_one(&Rational::zero()).ok_or(Error::MissingKernel)?;
    let mut values: Vec<(Tt, usize)> = tt
        .pairs()
        .iter()
        .map(|p| (Tt::Exact(p.value.clone()), p.mult))
        .collect();
    let parts = residual.squarefree_decomposition();
    let radical = parts
        .iter()
        .fold(Polynomial::constant(Rational::one()), |acc, (f, _)| &acc * f);
    let chain = SturmChain::new(&radical);
    let part_chains: Vec<(SturmChain, usize)> =
        parts.iter().map(|(f, e)| (SturmChain::new(f), *e)).collect();
    for (lo, hi) in isolate_real_roots(&radical, &q(1, 1 << 20)) {
        let mult = part_chains
            .iter()
            .find(|(c, _)| c.count(&lo, &hi) > 0 || (lo == hi && c.poly().eval(&lo).is_zero()))
            .map_or(1, |(_, e)| *e);
        let t = if lo == hi { Tt::Exact(lo) } else { Tt::Root { lo, hi } };
        values.push((t, mult));
    }
    classify_values(rho, s, values, &Ctx { chain: Some(&chain) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_spectrum;

    fn e7_like() -> (SummandSet, StructuralConstants) {
        let labels = ["1234", "1357", "1256", "2457", "3456", "1467", "2367"];
        let s = SummandSet::new(labels.iter().map(|l| l.to_string()).collect(), vec![16; 7], true).unwrap();
        let sets: Vec<BTreeSet<char>> = labels.iter().map(|l| l.chars().collect()).collect();
        let mut sc = StructuralConstants::new();
        for i in 0..7 {
            for j in i + 1..7 {
                let sym: BTreeSet<char> = sets[i].symmetric_difference(&sets[j]).copied().collect();
                let k = sets.iter().position(|x| *x == sym).unwrap();
                sc.set(labels[i], labels[j], labels[k], q(16, 9)).unwrap();
            }
        }
        (s, sc)
    }

    #[test]
    fn e7_su2_matrix() {
        let (s, sc) = e7_like();
        let m = assemble_lich_matrix(&s, &sc).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                let want = if i == j { q(7, 9) - q(1, 9) } else { q(-1, 9) };
                assert_eq!(*m.get(i, j), want);
            }
        }
        assert!(ricci_eigenvalues(&s, &sc).unwrap().iter().all(|r| *r == q(1, 3)));
        let spec = rational_spectrum(&m).unwrap();
        let v = classify(&q(1, 3), &s, &spec).unwrap();
        assert_eq!(v.kind, VerdictKind::Stable);
        assert_eq!(v.lambda_p, Some(Eigenvalue::Exact(q(7, 9))));
        assert!(v.implied.contains(&ImpliedFlag::LocalMaxOfScal));
    }

    #[test]
    fn single_summand() {
        let s = SummandSet::numbered(vec![5], true).unwrap();
        let mut sc = StructuralConstants::new();
        sc.set("1", "1", "1", q(3, 2)).unwrap();
        let m = assemble_lich_matrix(&s, &sc).unwrap();
        assert_eq!(m.order(), 1);
        assert!(m.get(0, 0).is_zero());
    }

    #[test]
    fn symmetric_space_rho() {
        let s = SummandSet::numbered(vec![4, 6], true).unwrap();
        let sc = StructuralConstants::new();
        assert!(ricci_eigenvalues(&s, &sc).unwrap().iter().all(|r| *r == q(1, 2)));
        assert!(casimir_consistency(&s, &sc, &[q(1, 2), q(1, 2)]).unwrap());
    }

    #[test]
    fn unknown_label() {
        let s = SummandSet::numbered(vec![4, 6], true).unwrap();
        let mut sc = StructuralConstants::new();
        sc.set("1", "2", "9", q(1, 1)).unwrap();
        assert!(matches!(assemble_lich_matrix(&s, &sc), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn su4_flag_classification() {
        let s = SummandSet::numbered(vec![2; 6], true).unwrap();
        let spec = Spectrum::from_unsorted([(q(0, 1), 1), (q(1, 2), 3), (q(3, 4), 2)]);
        let v = classify(&q(3, 8), &s, &spec).unwrap();
        assert!(v.kind.is_unstable());
        assert_eq!(v.coindex, Some(3));
        assert_eq!(v.nullity, Some(2));
        assert!(!v.nondegenerate);
        assert_eq!(v.kind, VerdictKind::UnstableSaddle);
        assert!(v.implied.contains(&ImpliedFlag::SecondOrderUndetermined));
    }

    #[test]
    fn missing_kernel() {
        let s = SummandSet::numbered(vec![2, 2], true).unwrap();
        let spec = Spectrum::from_unsorted([(q(1, 1), 2)]);
        assert_eq!(classify(&q(1, 3), &s, &spec), Err(Error::MissingKernel));
    }

    #[test]
    fn mixed_spectrum_against_threshold() {
        // TT eigenvalues are the roots of x² − x − 1 ≈ −0.618, 1.618
        let s = SummandSet::numbered(vec![1, 1, 1], true).unwrap();
        let rational = Spectrum::from_unsorted([(q(0, 1), 1)]);
        let residual = Polynomial::new(vec![q(-1, 1), q(-1, 1), q(1, 1)]);
        let v = classify_mixed(&q(1, 2), &s, &rational, &residual).unwrap();
        assert_eq!(v.kind, VerdictKind::UnstableSaddle);
        assert_eq!(v.coindex, Some(1));
        assert!(v.lambda_p.unwrap().to_f64() < -0.6);
    }
}
