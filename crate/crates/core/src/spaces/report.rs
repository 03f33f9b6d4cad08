//! End-to-end analysis of one space.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::expected::{all_expected_rows, compare_row, RowComparison};
use super::families::build;
use super::model::{Constants, RhoRoutes, SpaceModel};
use super::som::som_eigenvector_check;
use super::spec::SpaceSpec;
use super::two_summand::{two_summand_analysis, Dichotomy, TwoSummandOutcome};
use crate::criteria::{
    casimir_row, criterion_einstein, criterion_structural, group_killing_verdict, render_flag, verdict_from_criterion,
    CFlag, Conclusion, CriterionPart, CriterionResult,
};
use crate::error::{Error, Result};
use crate::exact::{isolate_real_eigenvalues, q, rational_spectrum, Rational, Spectrum};
use crate::lich::{
    assemble_lich_matrix, classify, classify_mixed, Eigenvalue, ImpliedFlag, StabilityVerdict, StructuralConstants,
    SummandSet, VerdictKind,
};

pub const SCHEMA_VERSION: u32 = 1;

/// How a verdict was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictSource {
    /// Exact spectrum of the full invariant operator.
    Spectrum,
    /// Spectrum of the summand matrix, which only bounds the operator when
    /// summands repeat.
    SpectrumBound,
    /// A dimension or Einstein-constant criterion.
    Criterion,
    /// The general result on `SO(m)/K₁×⋯×K_l`.
    Theorem,
    /// Casimir eigenvalues on `sym₀(g)` (the group itself).
    GroupCasimir,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub kind: VerdictKind,
    pub coindex: Option<usize>,
    pub nullity: Option<usize>,
    pub conclusive: bool,
    pub nondegenerate: Option<bool>,
    pub implied: BTreeSet<ImpliedFlag>,
    pub source: VerdictSource,
}

impl VerdictReport {
    fn from_verdict(v: &StabilityVerdict, source: VerdictSource) -> Self {
        VerdictReport {
            kind: v.kind,
            coindex: v.coindex,
            nullity: v.nullity,
            conclusive: v.conclusive,
            nondegenerate: Some(v.nondegenerate),
            implied: v.implied.clone(),
            source,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub part: CriterionPart,
    pub flag: CFlag,
    pub conclusion: Conclusion,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound_interval: Option<(Rational, Rational)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub thresholds: Option<(Rational, Rational)>,
    /// Set when this criterion was not evaluated but follows from the other.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub implied_by: Option<CriterionPart>,
}

impl CriterionReport {
    fn new(c: &CriterionResult, known: Option<VerdictKind>) -> Self {
        CriterionReport {
            part: c.applied,
            flag: render_flag(c.applied, known),
            conclusion: c.conclusion,
            bound_interval: c.bound_interval.clone(),
            thresholds: c.thresholds.clone(),
            implied_by: None,
        }
    }
}

/// C1 is the Einstein-constant criterion, C2 the dimension-only one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub c1: Option<CriterionReport>,
    pub c2: CriterionReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub value: Eigenvalue,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SomSummary {
    pub m: u64,
    pub l: usize,
    pub l1: usize,
    pub l2: usize,
    pub kappa: Rational,
    pub factors: Vec<String>,
    /// Lower bound `l₁ + (l − l₂) − 1` on the coindex.
    pub coindex_bound: usize,
    /// Exact eigenvector identities; `None` when the constants are parametric.
    pub eigenvectors_verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub spec: String,
    pub title: String,
    pub algebra: String,
    pub dim_g: u64,
    pub dim_k: u64,
    pub r: usize,
    pub multiplicity_free: bool,
    pub rho: Option<Rational>,
    pub rho_routes: RhoRoutes,
    pub lambda_p: Option<Eigenvalue>,
    /// Middle value when the trace-free spectrum has exactly three values.
    pub lambda_p_mid: Option<Eigenvalue>,
    pub lambda_p_max: Option<Eigenvalue>,
    /// Full spectrum of the summand matrix, including the kernel.
    pub spectrum: Option<Vec<SpectrumEntry>>,
    pub verdict: Option<VerdictReport>,
    pub criteria: Option<CriteriaReport>,
    pub two_summand: Option<TwoSummandOutcome>,
    pub dichotomy: Option<Dichotomy>,
    pub som: Option<SomSummary>,
    pub notes: Vec<String>,
    pub errata: Vec<String>,
    /// Comparisons with every published row for this space.
    pub table_rows: Vec<RowComparison>,
}

impl Report {
    /// The spectrum minus one copy of `0`, when every value is rational.
    pub fn trace_free_pairs(&self) -> Option<Vec<(Rational, usize)>> {
        let entries = self.spectrum.as_ref()?;
        let mut out = Vec::new();
        let mut removed = false;
        for e in entries {
            let v = e.value.exact()?.clone();
            let mut mult = e.mult;
            if !removed && v.is_zero() {
                removed = true;
                mult -= 1;
            }
            if mult > 0 {
                out.push((v, mult));
            }
        }
        Some(out)
    }

    /// JSON text; deterministic for identical inputs.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// What the summand matrix yields.
enum Computed {
    Rational(Spectrum),
    Mixed { rational_part: Spectrum, residual: crate::exact::Polynomial },
}

fn summand_spectrum(s: &SummandSet, sc: &StructuralConstants) -> Result<Computed> {
    let m = assemble_lich_matrix(s, sc)?;
    match rational_spectrum(&m) {
        Ok(spec) => Ok(Computed::Rational(spec)),
        Err(Error::NonRationalSpectrum { residual, rational_part }) => Ok(Computed::Mixed { rational_part, residual }),
        Err(e) => Err(e),
    }
}

fn spectrum_entries(c: &Computed) -> Vec<SpectrumEntry> {
    match c {
        Computed::Rational(s) => s
            .pairs()
            .iter()
            .map(|p| SpectrumEntry { value: Eigenvalue::Exact(p.value.clone()), mult: p.mult })
            .collect(),
        Computed::Mixed { rational_part, residual } => {
            let mut out: Vec<SpectrumEntry> = rational_part
                .pairs()
                .iter()
                .map(|p| SpectrumEntry { value: Eigenvalue::Exact(p.value.clone()), mult: p.mult })
                .collect();
            for (f, e) in residual.squarefree_decomposition() {
                for (lo, hi) in isolate_real_eigenvalues(&f, &q(1, 1 << 20)) {
                    let value = if lo == hi { Eigenvalue::Exact(lo) } else { Eigenvalue::Interval { lo, hi } };
                    out.push(SpectrumEntry { value, mult: e });
                }
            }
            out.sort_by(|a, b| a.value.to_f64().total_cmp(&b.value.to_f64()));
            out
        }
    }
}

/// Two summands of equal dimension with `[111] = [222]`, `[112] = [122]`.
fn symmetric_two_summand(model: &SpaceModel, sc: &StructuralConstants) -> Option<TwoSummandOutcome> {
    let s = model.summands.as_ref()?;
    if s.len() != 2 || s.dim(0) != s.dim(1) {
        return None;
    }
    let (a, b) = (&s.labels()[0], &s.labels()[1]);
    let (c111, c222) = (sc.get(a, a, a), sc.get(b, b, b));
    let (c112, c122) = (sc.get(a, a, b), sc.get(a, b, b));
    if c111 != c222 || c112 != c122 {
        return None;
    }
    two_summand_analysis(s.dim(0), &c111, &c112).ok()
}

/// `sc2-x` → `sc1-x`: the dimension criterion is the Einstein-constant one
/// with `ρ` replaced by a bound, so it implies it part by part.
fn sc1_from_sc2(p: CriterionPart) -> CriterionPart {
    match p {
        CriterionPart::Sc2I => CriterionPart::Sc1I,
        CriterionPart::Sc2Ii => CriterionPart::Sc1Ii,
        CriterionPart::Sc2Iii => CriterionPart::Sc1Iii,
        CriterionPart::Sc2Iv => CriterionPart::Sc1Iv,
        other => other,
    }
}

struct Criteria {
    c1: Option<CriterionResult>,
    c2: CriterionResult,
}

fn evaluate_criteria(model: &SpaceModel) -> Result<Criteria> {
    let row = casimir_row(model.algebra)?;
    let c2 = criterion_structural(model.dim_g(), model.dim_k, &row)?;
    let c1 = model.rho.as_ref().map(|rho| criterion_einstein(rho, &row));
    Ok(Criteria { c1, c2 })
}

fn render_criteria(c: &Criteria, known: Option<VerdictKind>) -> CriteriaReport {
    let c2 = CriterionReport::new(&c.c2, known);
    let c1 = match &c.c1 {
        Some(r) => Some(CriterionReport::new(r, known)),
        None if c.c2.applied != CriterionPart::None => {
            let part = sc1_from_sc2(c.c2.applied);
            Some(CriterionReport {
                part,
                flag: render_flag(part, known),
                conclusion: c.c2.conclusion,
                bound_interval: None,
                thresholds: None,
                implied_by: Some(c.c2.applied),
            })
        }
        None => None,
    };
    CriteriaReport { c1, c2 }
}

fn criterion_verdict(c: &Criteria) -> Option<VerdictReport> {
    let kind = verdict_from_criterion(&c.c2).or_else(|| c.c1.as_ref().and_then(verdict_from_criterion))?;
    Some(VerdictReport {
        kind,
        coindex: None,
        nullity: None,
        conclusive: true,
        nondegenerate: None,
        implied: StabilityVerdict::derive_implied(kind, true)
            .into_iter()
            .filter(|f| !matches!(f, ImpliedFlag::GRigid | ImpliedFlag::GDegenerate))
            .collect(),
        source: VerdictSource::Criterion,
    })
}

fn distinct_tt(report: &Report) -> Vec<Eigenvalue> {
    let Some(entries) = &report.spectrum else { return Vec::new() };
    let mut out: Vec<Eigenvalue> = Vec::new();
    let mut removed = false;
    for e in entries {
        if !removed && e.value.exact().is_some_and(Rational::is_zero) {
            removed = true;
            if e.mult == 1 {
                continue;
            }
        }
        out.push(e.value.clone());
    }
    out
}

/// Analyses a space without attaching table comparisons.
pub fn analyze_bare(spec: &SpaceSpec) -> Result<Report> {
    let model = build(spec)?;
    analyze_model(&model)
}

/// Analyses a space and compares it with every published row for it.
pub fn analyze(spec: &SpaceSpec) -> Result<Report> {
    let mut report = analyze_bare(spec)?;
    report.table_rows = all_expected_rows()
        .iter()
        .filter(|r| r.spec.as_ref() == Some(spec))
        .map(|r| compare_row(r, &report))
        .collect();
    Ok(report)
}

pub fn analyze_model(model: &SpaceModel) -> Result<Report> {
    let routes = model.rho_routes()?;
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        spec: model.spec.to_string(),
        title: model.spec.title(),
        algebra: model.algebra.to_string(),
        dim_g: model.dim_g(),
        dim_k: model.dim_k,
        r: model.r,
        multiplicity_free: model.multiplicity_free,
        rho: model.rho.clone(),
        rho_routes: routes,
        lambda_p: None,
        lambda_p_mid: None,
        lambda_p_max: None,
        spectrum: None,
        verdict: None,
        criteria: None,
        two_summand: None,
        dichotomy: None,
        som: None,
        notes: model.notes.clone(),
        errata: model.errata.clone(),
        table_rows: Vec::new(),
    };

    if let SpaceSpec::Group(g) = &model.spec {
        let row = casimir_row(*g)?;
        let v = group_killing_verdict(&row);
        report.lambda_p = v.lambda_p.clone();
        report.lambda_p_max = v.lambda_p_max.clone();
        report.lambda_p_mid = row.lambda_tau_mid.as_ref().map(|m| Eigenvalue::Exact(m * q(1, 2)));
        report.verdict = Some(VerdictReport::from_verdict(&v, VerdictSource::GroupCasimir));
        return Ok(report);
    }

    let criteria = evaluate_criteria(model)?;

    match (&model.constants, &model.summands) {
        (Constants::Numeric(sc), Some(s)) => {
            let rho = model.rho.as_ref().ok_or_else(|| Error::InvalidCase("numeric model without ρ".into()))?;
            let computed = summand_spectrum(s, sc)?;
            let verdict = match &computed {
                Computed::Rational(spec) => classify(rho, s, spec)?,
                Computed::Mixed { rational_part, residual } => classify_mixed(rho, s, rational_part, residual)?,
            };
            report.spectrum = Some(spectrum_entries(&computed));
            report.lambda_p = verdict.lambda_p.clone();
            report.lambda_p_max = verdict.lambda_p_max.clone();
            let distinct = distinct_tt(&report);
            if distinct.len() == 3 {
                report.lambda_p_mid = Some(distinct[1].clone());
            }
            let source = if s.multiplicity_free() { VerdictSource::Spectrum } else { VerdictSource::SpectrumBound };
            report.verdict = Some(VerdictReport::from_verdict(&verdict, source));
            report.two_summand = symmetric_two_summand(model, sc);
        }
        (Constants::Parametric(pc), Some(_)) => {
            if let SpaceSpec::GrassmannSquareSp { .. } = model.spec {
                let (d1, rho) = (model.summands.as_ref().map_or(0, |s| s.dim(0)), model.rho.clone());
                let rho = rho.ok_or_else(|| Error::InvalidCase("parametric model without ρ".into()))?;
                report.dichotomy = Some(Dichotomy::new(&pc.parameter, d1, &rho, pc.upper.clone()));
            }
            if let Some(info) = &model.som {
                if info.l1 + (info.l - info.l2) >= 2 {
                    report.verdict = Some(VerdictReport {
                        kind: VerdictKind::UnstableSaddle,
                        coindex: None,
                        nullity: None,
                        conclusive: true,
                        nondegenerate: None,
                        implied: StabilityVerdict::derive_implied(VerdictKind::UnstableSaddle, true)
                            .into_iter()
                            .filter(|f| !matches!(f, ImpliedFlag::GRigid | ImpliedFlag::GDegenerate))
                            .collect(),
                        source: VerdictSource::Theorem,
                    });
                }
            }
        }
        _ => {
            report.verdict = criterion_verdict(&criteria);
        }
    }

    let known = report.verdict.as_ref().map(|v| v.kind);
    report.criteria = Some(render_criteria(&criteria, known));

    if let Some(info) = &model.som {
        let eigenvectors_verified = match &model.constants {
            Constants::Numeric(_) => Some(som_eigenvector_check(model, None)?.all_hold()),
            _ => None,
        };
        report.som = Some(SomSummary {
            m: info.m,
            l: info.l,
            l1: info.l1,
            l2: info.l2,
            kappa: info.kappa.clone(),
            factors: info.factors.iter().map(|f| f.to_string()).collect(),
            coindex_bound: (info.l1 + info.l - info.l2).saturating_sub(1),
            eigenvectors_verified,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::NamedSpace;

    fn run(s: &str) -> Report {
        analyze(&s.parse().unwrap()).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn e7_su2x7() {
        let r = analyze(&SpaceSpec::Named(NamedSpace::E7Su2x7)).unwrap();
        assert_eq!(r.rho, Some(q(1, 3)));
        assert_eq!(r.trace_free_pairs(), Some(vec![(q(7, 9), 6)]));
        assert_eq!(r.verdict.as_ref().unwrap().kind, VerdictKind::Stable);
        assert!(r.table_rows.iter().all(|c| c.passes()), "{:?}", r.table_rows);
    }

    #[test]
    fn so26_local_min() {
        let r = run("so26");
        assert_eq!(r.lambda_p, Some(Eigenvalue::Exact(q(21, 40))));
        assert_eq!(r.verdict.unwrap().kind, VerdictKind::UnstableLocalMin);
    }

    #[test]
    fn so8_g2_bound_is_conclusive() {
        let r = run("so8-g2");
        let v = r.verdict.unwrap();
        assert_eq!(r.lambda_p, Some(Eigenvalue::Exact(q(1, 3))));
        assert!(v.kind.is_unstable() && v.conclusive);
        assert_eq!(v.source, VerdictSource::SpectrumBound);
    }

    #[test]
    fn grassmann_sp_is_open() {
        let r = run("grassmann-square-sp:n=2");
        assert!(r.verdict.is_none());
        let d = r.dichotomy.unwrap();
        assert_eq!(d.threshold, q(475, 56));
        assert_eq!(d.upper, q(75, 7));
    }

    #[test]
    fn killing_only_uses_criteria() {
        let r = run("e8-so5");
        assert_eq!(r.rho, None);
        assert_eq!(r.verdict.as_ref().unwrap().source, VerdictSource::Criterion);
        let c1 = r.criteria.unwrap().c1.unwrap();
        assert_eq!(c1.implied_by, Some(CriterionPart::Sc2I));
    }

    #[test]
    fn json_round_trip() {
        for s in ["flag:su(4)", "e8-su2x8", "grassmann-square-sp:n=2", "e6-so3x3", "group:g2", "som:adj(su(3))x2"] {
            let r = run(s);
            let back: Report = serde_json::from_str(&r.to_json()).unwrap();
            assert_eq!(back, r, "{s}");
        }
    }
}
