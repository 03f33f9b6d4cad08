//! Invariant Einstein metrics on spaces with two equivalent-looking summands.
//!
//! When `d₁ = d₂`, `[111] = [222]` and `[112] = [122]`, the scalar curvature
//! along the curve `g_x = x·g|p₁ + x⁻¹·g|p₂` (unit volume) is
//!
//! ```text
//! scal(x) = a(x + 1/x) − b(x³ + 1/x³),   a = d₁/2 − [111]/4 − [112]/2,   b = [112]/4
//! ```
//!
//! up to a positive factor, and `x = 1` is the standard metric. Its second
//! derivative there is `2a − 18b`, and any other critical point solves a
//! quadratic in `x + 1/x` that has admissible roots exactly when `a > 9b`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{q, Rational};

/// `(a, b)` of the scalar-curvature curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSummandCurve {
    pub a: Rational,
    pub b: Rational,
}

/// What the standard metric is on that curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KillingRole {
    GlobalMax,
    /// `a = 9b`: still the unique Einstein metric, but the second variation
    /// vanishes.
    DegenerateGlobalMax,
    /// Two further invariant Einstein metrics exist.
    LocalMin,
}

impl fmt::Display for KillingRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KillingRole::GlobalMax => "global maximum",
            KillingRole::DegenerateGlobalMax => "degenerate global maximum",
            KillingRole::LocalMin => "local minimum",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSummandOutcome {
    pub curve: TwoSummandCurve,
    /// Number of invariant Einstein metrics up to scaling.
    pub einstein_count: u32,
    pub role: KillingRole,
}

pub fn curve(d1: u64, c111: &Rational, c112: &Rational) -> TwoSummandCurve {
    let a = Rational::new(d1 as i64, 2) - c111 / Rational::int(4) - c112 / Rational::int(2);
    let b = c112 / Rational::int(4);
    TwoSummandCurve { a, b }
}

/// Counts the invariant Einstein metrics in the symmetric two-summand case.
pub fn two_summand_analysis(d1: u64, c111: &Rational, c112: &Rational) -> Result<TwoSummandOutcome> {
    let curve = curve(d1, c111, c112);
    if !(curve.b.is_positive() && curve.a > curve.b) {
        return Err(Error::InvalidCase(format!(
            "needs a > b > 0, got a = {}, b = {}",
            curve.a, curve.b
        )));
    }
    let nine_b = Rational::int(9) * &curve.b;
    let (einstein_count, role) = match curve.a.cmp(&nine_b) {
        std::cmp::Ordering::Less => (1, KillingRole::GlobalMax),
        std::cmp::Ordering::Equal => (1, KillingRole::DegenerateGlobalMax),
        std::cmp::Ordering::Greater => (3, KillingRole::LocalMin),
    };
    Ok(TwoSummandOutcome { curve, einstein_count, role })
}

/// The answer for `SO(4n²)/Sp(n)×Sp(n)`, where `x = [112]` is unknown.
///
/// With `[111] = 2d₁(1 − 2ρ) − 3x` one gets `a = d₁ρ + x/4` and `b = x/4`,
/// so `a ≤ 9b` exactly when `x ≥ d₁ρ/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dichotomy {
    pub parameter: String,
    pub d1: u64,
    pub rho: Rational,
    /// `a = a_constant + x/4`.
    pub a_constant: Rational,
    /// `x*` with `a ≤ 9b ⟺ x ≥ x*`.
    pub threshold: Rational,
    /// Largest `x` for which `[111] ≥ 0`.
    pub upper: Rational,
    pub statement: String,
}

impl Dichotomy {
    pub fn new(parameter: &str, d1: u64, rho: &Rational, upper: Rational) -> Self {
        let a_constant = Rational::int(d1 as i64) * rho;
        let threshold = &a_constant / Rational::int(2);
        let statement = format!(
            "a ≤ 9b ⟺ {parameter} ≥ {threshold}: then g_Kil is the unique invariant Einstein metric and a \
             global maximum (G-degenerate exactly at equality); otherwise g_Kil is a local minimum and \
             two further invariant Einstein metrics exist"
        );
        Dichotomy { parameter: parameter.to_string(), d1, rho: rho.clone(), a_constant, threshold, upper, statement }
    }

    /// The curve at a concrete value of the unknown.
    pub fn curve_at(&self, x: &Rational) -> TwoSummandCurve {
        TwoSummandCurve { a: &self.a_constant + x * q(1, 4), b: x * q(1, 4) }
    }

    /// Resolves the dichotomy once the unknown is supplied.
    pub fn resolve(&self, x: &Rational) -> Result<TwoSummandOutcome> {
        if !x.is_positive() || *x > self.upper {
            return Err(Error::InvalidParameters(format!(
                "{} = {x} outside (0, {}]",
                self.parameter, self.upper
            )));
        }
        let c111 = Rational::int(2 * self.d1 as i64) * (Rational::one() - Rational::int(2) * &self.rho)
            - Rational::int(3) * x;
        two_summand_analysis(self.d1, &c111, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_su5_su5_is_global_max() {
        let o = two_summand_analysis(100, &Rational::zero(), &q(20, 1)).unwrap();
        assert_eq!(o.curve.a, q(40, 1));
        assert_eq!(o.curve.b, q(5, 1));
        assert_eq!(o.einstein_count, 1);
        assert_eq!(o.role, KillingRole::GlobalMax);
    }

    #[test]
    fn boundary_and_local_min() {
        // a = 9b with b = 1: [112] = 4, d1/2 − [111]/4 − 2 = 9
        let o = two_summand_analysis(30, &q(16, 1), &q(4, 1)).unwrap();
        assert_eq!(o.curve.a, q(9, 1));
        assert_eq!(o.role, KillingRole::DegenerateGlobalMax);
        let o = two_summand_analysis(40, &q(0, 1), &q(1, 1)).unwrap();
        assert_eq!(o.role, KillingRole::LocalMin);
        assert_eq!(o.einstein_count, 3);
    }

    #[test]
    fn invalid_cases() {
        assert!(matches!(two_summand_analysis(10, &q(0, 1), &q(0, 1)), Err(Error::InvalidCase(_))));
        assert!(matches!(two_summand_analysis(2, &q(0, 1), &q(4, 1)), Err(Error::InvalidCase(_))));
    }

    #[test]
    fn dichotomy_threshold_matches_direct_count() {
        let rho = q(19, 56);
        let d = Dichotomy::new("[112]", 50, &rho, q(75, 7));
        assert_eq!(d.threshold, q(475, 56));
        for x in [q(1, 1), q(8, 1), q(475, 56), q(9, 1), q(10, 1)] {
            let o = d.resolve(&x).unwrap();
            assert_eq!(o.curve, d.curve_at(&x));
            let unique = x >= d.threshold;
            assert_eq!(o.einstein_count == 1, unique, "x = {x}");
        }
    }
}
