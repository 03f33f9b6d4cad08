//! Stability criteria that only use `dim g`, `dim k`, the Einstein constant
//! and the extremal Casimir eigenvalues of `g` on trace-free symmetric
//! 2-tensors.
//!
//! Writing `λ_τ ≤ ⋯ ≤ λ_τ^max` for those eigenvalues, the Lichnerowicz
//! spectrum of a standard Einstein metric is squeezed into
//!
//! ```text
//! ½(λ_τ − (8ρ−1)) + 2ρ  ≤  λ_p ≤ λ_p^max  ≤  ½(λ_τ^max − (8ρ−1)) + 2ρ
//! ```
//!
//! and `8ρ − 1` is in turn bracketed by `1 + 2 dim k/dim g · λ_τ^{(max)}`, which
//! yields criteria from dimensions alone.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::SimpleAlgebra;
use crate::error::{Error, Result};
use crate::exact::{q, Rational};
use crate::lich::{Eigenvalue, ImpliedFlag, StabilityVerdict, VerdictKind};

/// Casimir eigenvalues of `g` on `sym₀(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasimirRow {
    pub algebra: SimpleAlgebra,
    pub dim_g: u64,
    pub lambda_tau: Rational,
    pub lambda_tau_mid: Option<Rational>,
    pub lambda_tau_max: Option<Rational>,
}

impl CasimirRow {
    /// The largest eigenvalue; `su(2)` has a single eigenvalue, which is then
    /// both the smallest and the largest.
    pub fn max(&self) -> &Rational {
        self.lambda_tau_max.as_ref().unwrap_or(&self.lambda_tau)
    }
}

/// Table of Casimir eigenvalues, with the classical families as formulas.
pub fn casimir_row(algebra: SimpleAlgebra) -> Result<CasimirRow> {
    use SimpleAlgebra::*;
    let g = algebra.canonical()?;
    let r = |n: u32| Rational::int(i64::from(n));
    let (lt, mid, max) = match g {
        Su(2) => (q(3, 1), None, None),
        Su(n) => (
            Rational::one(),
            Some(Rational::int(2) * (r(n) - 1) / r(n)),
            Some(Rational::int(2) * (r(n) + 1) / r(n)),
        ),
        So(7) => (q(6, 5), Some(q(7, 5)), Some(q(12, 5))),
        So(n) if n >= 8 => (
            r(n) / (r(n) - 2),
            Some(Rational::int(2) * (r(n) - 4) / (r(n) - 2)),
            Some(Rational::int(2) * (r(n) - 1) / (r(n) - 2)),
        ),
        Sp(n) if n >= 2 => (
            r(n) / (r(n) + 1),
            Some((Rational::int(2) * r(n) + 1) / (r(n) + 1)),
            Some((Rational::int(2) * r(n) + 4) / (r(n) + 1)),
        ),
        E6 => (q(3, 2), None, Some(q(13, 6))),
        E7 => (q(14, 9), None, Some(q(19, 9))),
        E8 => (q(8, 5), None, Some(q(31, 15))),
        F4 => (q(13, 9), None, Some(q(20, 9))),
        G2 => (q(7, 6), None, Some(q(5, 2))),
        other => return Err(Error::OutOfRange(format!("no Casimir data for {other}"))),
    };
    Ok(CasimirRow { algebra: g, dim_g: g.dim(), lambda_tau: lt, lambda_tau_mid: mid, lambda_tau_max: max })
}

/// Which part of which criterion fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CriterionPart {
    #[serde(rename = "sc2-i")]
    Sc2I,
    #[serde(rename = "sc2-ii")]
    Sc2Ii,
    #[serde(rename = "sc2-iii")]
    Sc2Iii,
    #[serde(rename = "sc2-iv")]
    Sc2Iv,
    #[serde(rename = "sc1-i")]
    Sc1I,
    #[serde(rename = "sc1-ii")]
    Sc1Ii,
    #[serde(rename = "sc1-iii")]
    Sc1Iii,
    #[serde(rename = "sc1-iv")]
    Sc1Iv,
    #[serde(rename = "none")]
    None,
}

impl CriterionPart {
    pub fn as_str(self) -> &'static str {
        match self {
            CriterionPart::Sc2I => "sc2-i",
            CriterionPart::Sc2Ii => "sc2-ii",
            CriterionPart::Sc2Iii => "sc2-iii",
            CriterionPart::Sc2Iv => "sc2-iv",
            CriterionPart::Sc1I => "sc1-i",
            CriterionPart::Sc1Ii => "sc1-ii",
            CriterionPart::Sc1Iii => "sc1-iii",
            CriterionPart::Sc1Iv => "sc1-iv",
            CriterionPart::None => "none",
        }
    }

    /// Parts (ii) and (iv) only give a non-strict inequality.
    pub fn is_boundary(self) -> bool {
        matches!(
            self,
            CriterionPart::Sc2Ii | CriterionPart::Sc2Iv | CriterionPart::Sc1Ii | CriterionPart::Sc1Iv
        )
    }
}

impl fmt::Display for CriterionPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a fired part lets one conclude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    /// `2ρ < λ_p`.
    Stable,
    /// `2ρ ≤ λ_p`.
    Semistable,
    /// `λ_p^max < 2ρ`.
    UnstableLocalMin,
    /// `λ_p^max ≤ 2ρ`.
    LambdaMaxAtMostTwoRho,
    None,
}

impl Conclusion {
    pub fn describe(self) -> &'static str {
        match self {
            Conclusion::Stable => "2ρ < λ_p → G-stable",
            Conclusion::Semistable => "2ρ ≤ λ_p → G-semistable",
            Conclusion::UnstableLocalMin => "λ_p^max < 2ρ → G-unstable, local min",
            Conclusion::LambdaMaxAtMostTwoRho => "λ_p^max ≤ 2ρ",
            Conclusion::None => "no conclusion",
        }
    }

    /// The stability consequence alone, without the inequality.
    pub fn outcome(self) -> &'static str {
        match self {
            Conclusion::Stable => "G-stable",
            Conclusion::Semistable => "G-semistable",
            Conclusion::UnstableLocalMin => "G-unstable, local min",
            Conclusion::LambdaMaxAtMostTwoRho => "λ_p^max ≤ 2ρ",
            Conclusion::None => "no conclusion",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub applied: CriterionPart,
    pub conclusion: Conclusion,
    /// Enclosure of `[λ_p, λ_p^max]` (Einstein-constant criterion only).
    pub bound_interval: Option<(Rational, Rational)>,
    /// The two dimension thresholds (structural criterion only).
    pub thresholds: Option<(Rational, Rational)>,
}

/// `(dim g (λ_τ − 1)/(2 λ_τ^max), dim g (λ_τ^max − 1)/(2 λ_τ))`.
pub fn structural_thresholds(row: &CasimirRow) -> (Rational, Rational) {
    let dg = Rational::int(row.dim_g as i64);
    let two = Rational::int(2);
    let t1 = &dg * (&row.lambda_tau - Rational::one()) / (&two * row.max());
    let t3 = &dg * (row.max() - Rational::one()) / (&two * &row.lambda_tau);
    (t1, t3)
}

/// The dimension-only criterion, evaluated part by part with first match.
pub fn criterion_structural(dim_g: u64, dim_k: u64, row: &CasimirRow) -> Result<CriterionResult> {
    if dim_g != row.dim_g {
        return Err(Error::InvalidParameters(format!(
            "dim g = {dim_g} does not match {} (dim {})",
            row.algebra, row.dim_g
        )));
    }
    let (t1, t3) = structural_thresholds(row);
    let k = Rational::int(dim_k as i64);
    let (applied, conclusion) = if k < t1 {
        (CriterionPart::Sc2I, Conclusion::Stable)
    } else if k == t1 {
        (CriterionPart::Sc2Ii, Conclusion::Semistable)
    } else if k > t3 {
        (CriterionPart::Sc2Iii, Conclusion::UnstableLocalMin)
    } else if k == t3 {
        (CriterionPart::Sc2Iv, Conclusion::LambdaMaxAtMostTwoRho)
    } else {
        (CriterionPart::None, Conclusion::None)
    };
    Ok(CriterionResult { applied, conclusion, bound_interval: None, thresholds: Some((t1, t3)) })
}

/// `[½(λ_τ − (8ρ−1)) + 2ρ, ½(λ_τ^max − (8ρ−1)) + 2ρ]`.
pub fn spectral_bounds(rho: &Rational, row: &CasimirRow) -> (Rational, Rational) {
    let x = Rational::int(8) * rho - Rational::one();
    let two_rho = Rational::int(2) * rho;
    let half = q(1, 2);
    (
        &half * (&row.lambda_tau - &x) + &two_rho,
        &half * (row.max() - &x) + &two_rho,
    )
}

/// The Einstein-constant criterion: compares `8ρ − 1` with `λ_τ` and `λ_τ^max`.
pub fn criterion_einstein(rho: &Rational, row: &CasimirRow) -> CriterionResult {
    let x = Rational::int(8) * rho - Rational::one();
    let (applied, conclusion) = if x < row.lambda_tau {
        (CriterionPart::Sc1I, Conclusion::Stable)
    } else if x == row.lambda_tau {
        (CriterionPart::Sc1Ii, Conclusion::Semistable)
    } else if *row.max() < x {
        (CriterionPart::Sc1Iii, Conclusion::UnstableLocalMin)
    } else if *row.max() == x {
        (CriterionPart::Sc1Iv, Conclusion::LambdaMaxAtMostTwoRho)
    } else {
        (CriterionPart::None, Conclusion::None)
    };
    CriterionResult {
        applied,
        conclusion,
        bound_interval: Some(spectral_bounds(rho, row)),
        thresholds: None,
    }
}

/// The bi-invariant metric on the group itself: `ρ = 1/4` and the
/// Lichnerowicz operator is half the Casimir on `sym₀(g)`.
pub fn group_killing_verdict(row: &CasimirRow) -> StabilityVerdict {
    let two_rho = q(1, 2);
    let half = q(1, 2);
    let lp = &half * &row.lambda_tau;
    let lmax = &half * row.max();
    let kind = if lp > two_rho {
        VerdictKind::Stable
    } else if lp == two_rho {
        VerdictKind::NeutrallyStable
    } else if lmax < two_rho {
        VerdictKind::UnstableLocalMin
    } else {
        VerdictKind::UnstableSaddle
    };
    let nondegenerate = lp != two_rho
        && lmax != two_rho
        && row.lambda_tau_mid.as_ref().map_or(true, |m| &half * m != two_rho);
    let mut implied: BTreeSet<ImpliedFlag> = StabilityVerdict::derive_implied(kind, nondegenerate);
    if kind == VerdictKind::UnstableSaddle && lmax == two_rho {
        implied.remove(&ImpliedFlag::SaddleOfScal);
        implied.insert(ImpliedFlag::SecondOrderUndetermined);
    }
    StabilityVerdict {
        two_rho,
        lambda_p: Some(Eigenvalue::Exact(lp)),
        lambda_p_max: Some(Eigenvalue::Exact(lmax)),
        kind,
        coindex: None,
        nullity: None,
        nondegenerate,
        conclusive: true,
        implied,
    }
}

/// A table cell in the criteria columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CFlag {
    /// The criterion does not apply.
    #[serde(rename = "No")]
    No,
    /// The criterion determines the stability type.
    #[serde(rename = "✓")]
    Check,
    /// The criterion applies but only gives a non-strict inequality weaker
    /// than the known type.
    #[serde(rename = "✓*")]
    CheckStar,
}

impl fmt::Display for CFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CFlag::No => "No",
            CFlag::Check => "✓",
            CFlag::CheckStar => "✓*",
        })
    }
}

/// Renders a fired part as a table cell, given the stability type known from
/// other means (if any). A boundary part counts as a full check only when the
/// known type is itself the boundary statement.
pub fn render_flag(part: CriterionPart, known: Option<VerdictKind>) -> CFlag {
    match part {
        CriterionPart::None => CFlag::No,
        p if !p.is_boundary() => CFlag::Check,
        CriterionPart::Sc1Ii | CriterionPart::Sc2Ii => {
            if known.is_none() || known == Some(VerdictKind::SemistableBoundary) {
                CFlag::Check
            } else {
                CFlag::CheckStar
            }
        }
        _ => CFlag::CheckStar,
    }
}

/// Verdict implied by a fired part when nothing else is known.
pub fn verdict_from_criterion(c: &CriterionResult) -> Option<VerdictKind> {
    match c.conclusion {
        Conclusion::Stable => Some(VerdictKind::Stable),
        Conclusion::Semistable => Some(VerdictKind::SemistableBoundary),
        Conclusion::UnstableLocalMin => Some(VerdictKind::UnstableLocalMin),
        Conclusion::LambdaMaxAtMostTwoRho | Conclusion::None => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let su5 = casimir_row(SimpleAlgebra::Su(5)).unwrap();
        assert_eq!(su5.dim_g, 24);
        assert_eq!(su5.lambda_tau, q(1, 1));
        assert_eq!(su5.lambda_tau_mid, Some(q(8, 5)));
        assert_eq!(su5.lambda_tau_max, Some(q(12, 5)));
        let e8 = casimir_row(SimpleAlgebra::E8).unwrap();
        assert_eq!((e8.lambda_tau.clone(), e8.lambda_tau_max.clone()), (q(8, 5), Some(q(31, 15))));
        let g2 = casimir_row(SimpleAlgebra::G2).unwrap();
        assert_eq!(g2.lambda_tau_max, Some(q(5, 2)));
        assert_eq!(casimir_row(SimpleAlgebra::So(5)).unwrap().algebra, SimpleAlgebra::Sp(2));
        assert!(casimir_row(SimpleAlgebra::So(4)).is_err());
    }

    #[test]
    fn thresholds_exceptional() {
        let t = |g| structural_thresholds(&casimir_row(g).unwrap());
        assert_eq!(t(SimpleAlgebra::E6), (q(9, 1), q(91, 3)));
        assert_eq!(t(SimpleAlgebra::E7), (q(35, 2), q(95, 2)));
        assert_eq!(t(SimpleAlgebra::E8), (q(36, 1), q(248, 3)));
        assert_eq!(t(SimpleAlgebra::So(8)), (q(2, 1), q(14, 1)));
        assert_eq!(t(SimpleAlgebra::F4), (q(26, 5), q(22, 1)));
    }

    #[test]
    fn structural_parts() {
        let e8 = casimir_row(SimpleAlgebra::E8).unwrap();
        assert_eq!(criterion_structural(248, 8, &e8).unwrap().applied, CriterionPart::Sc2I);
        assert_eq!(criterion_structural(248, 36, &e8).unwrap().applied, CriterionPart::Sc2Ii);
        let f4 = casimir_row(SimpleAlgebra::F4).unwrap();
        assert_eq!(criterion_structural(52, 28, &f4).unwrap().applied, CriterionPart::Sc2Iii);
    }

    #[test]
    fn einstein_parts() {
        let e6 = casimir_row(SimpleAlgebra::E6).unwrap();
        assert_eq!(criterion_einstein(&q(5, 12), &e6).applied, CriterionPart::Sc1Iii);
        let sp5 = casimir_row(SimpleAlgebra::Sp(5)).unwrap();
        assert_eq!(criterion_einstein(&q(5, 12), &sp5).applied, CriterionPart::Sc1Iv);
        for n in 3..10u32 {
            let row = casimir_row(SimpleAlgebra::Su(n)).unwrap();
            let rho = Rational::int(i64::from(n) + 2) / Rational::int(4 * i64::from(n));
            assert_eq!(criterion_einstein(&rho, &row).applied, CriterionPart::None);
        }
    }

    #[test]
    fn group_manifolds() {
        let su = group_killing_verdict(&casimir_row(SimpleAlgebra::Su(4)).unwrap());
        assert_eq!(su.kind, VerdictKind::NeutrallyStable);
        let sp = group_killing_verdict(&casimir_row(SimpleAlgebra::Sp(3)).unwrap());
        assert!(sp.kind.is_unstable());
        let e8 = group_killing_verdict(&casimir_row(SimpleAlgebra::E8).unwrap());
        assert_eq!(e8.kind, VerdictKind::Stable);
    }
}
