//! The data a generator produces for one space.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::spec::{SpaceSpec, SymSpaceId};
use crate::algebra::SimpleAlgebra;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::killing::{einstein_constant, rho_from_casimir};
use crate::lich::{ricci_eigenvalues, StructuralConstants, SummandSet};

/// Structural constants affine in one unknown `x`: `[abc] = base + slope·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricConstants {
    terms: BTreeMap<[String; 3], (Rational, Rational)>,
    /// What `x` stands for.
    pub parameter: String,
    /// All constants are nonnegative exactly for `0 < x ≤ upper`.
    pub upper: Rational,
}

impl ParametricConstants {
    pub fn new(parameter: impl Into<String>) -> Self {
        ParametricConstants { terms: BTreeMap::new(), parameter: parameter.into(), upper: Rational::zero() }
    }

    pub fn set(&mut self, a: &str, b: &str, c: &str, base: Rational, slope: Rational) {
        let mut k = [a.to_string(), b.to_string(), c.to_string()];
        k.sort();
        let e = self.terms.entry(k).or_insert((Rational::zero(), Rational::zero()));
        e.0 += &base;
        e.1 += &slope;
    }

    /// Recomputes `upper` from the terms with negative slope.
    pub(crate) fn close(&mut self) {
        self.upper = self
            .terms
            .values()
            .filter(|(_, s)| s.is_negative())
            .map(|(b, s)| -(b / s))
            .min()
            .unwrap_or_else(|| Rational::int(i64::MAX));
    }

    /// The constants when no term depends on the parameter.
    pub fn instantiate_fixed(&self) -> Result<StructuralConstants> {
        let mut sc = StructuralConstants::new();
        for (k, (b, s)) in &self.terms {
            if !s.is_zero() {
                return Err(Error::ParametricConstants);
            }
            sc.set(&k[0], &k[1], &k[2], b.clone())?;
        }
        Ok(sc)
    }

    /// Numeric constants at `x`; fails outside `(0, upper]`.
    pub fn instantiate(&self, x: &Rational) -> Result<StructuralConstants> {
        if !x.is_positive() || *x > self.upper {
            return Err(Error::InvalidParameters(format!(
                "{} = {x} outside the admissible range (0, {}]",
                self.parameter, self.upper
            )));
        }
        let mut sc = StructuralConstants::new();
        for (k, (b, s)) in &self.terms {
            sc.set(&k[0], &k[1], &k[2], b + s * x)?;
        }
        Ok(sc)
    }
}

/// What is known about the structural constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constants {
    Numeric(StructuralConstants),
    Parametric(ParametricConstants),
    /// Only the Killing ratios of `k` are known.
    Unavailable,
}

/// One simple (or abelian) ideal of `k` and its Killing ratio.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillingComponent {
    pub label: String,
    pub c: Rational,
    pub dim: u64,
}

impl KillingComponent {
    pub fn new(label: impl Into<String>, c: Rational, dim: u64) -> Self {
        KillingComponent { label: label.into(), c, dim }
    }
}

/// Shape data of an `SO(m)/K₁×⋯×K_l` model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SomInfo {
    pub m: u64,
    pub l: usize,
    /// Number of Grassmannian factors.
    pub l1: usize,
    /// `l1` plus the number of sphere factors.
    pub l2: usize,
    pub kappa: Rational,
    /// The factors in summand order.
    pub factors: Vec<SymSpaceId>,
}

/// A generated space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceModel {
    pub spec: SpaceSpec,
    pub algebra: SimpleAlgebra,
    pub dim_k: u64,
    /// `None` for the group itself and for spaces known only through `k`.
    pub summands: Option<SummandSet>,
    pub constants: Constants,
    /// Number of isotropy summands.
    pub r: usize,
    pub multiplicity_free: bool,
    /// `None` only when no route determines it.
    pub rho: Option<Rational>,
    pub killing_components: Option<Vec<KillingComponent>>,
    /// Common Casimir constant of the isotropy representation, when known
    /// independently.
    pub casimir: Option<Rational>,
    pub som: Option<SomInfo>,
    pub notes: Vec<String>,
    pub errata: Vec<String>,
}

/// The Einstein constant as obtained by each available route.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoRoutes {
    #[serde(rename = "killing-ratios", skip_serializing_if = "Option::is_none", default)]
    pub killing_ratios: Option<Rational>,
    #[serde(rename = "structural-constants", skip_serializing_if = "Option::is_none", default)]
    pub structural_constants: Option<Rational>,
    #[serde(rename = "casimir", skip_serializing_if = "Option::is_none", default)]
    pub casimir: Option<Rational>,
}

impl RhoRoutes {
    pub fn values(&self) -> Vec<&Rational> {
        [&self.killing_ratios, &self.structural_constants, &self.casimir]
            .into_iter()
            .flatten()
            .collect()
    }

    pub fn count(&self) -> usize {
        self.values().len()
    }

    /// The common value; fails if two routes disagree.
    pub fn agreed(&self) -> Result<Option<Rational>> {
        let v = self.values();
        if v.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::EinsteinViolation(format!(
                "Einstein constant routes disagree: {}",
                describe_routes(self)
            )));
        }
        Ok(v.first().map(|r| (*r).clone()))
    }
}

fn describe_routes(r: &RhoRoutes) -> String {
    let mut parts = Vec::new();
    if let Some(x) = &r.killing_ratios {
        parts.push(format!("killing-ratios {x}"));
    }
    if let Some(x) = &r.structural_constants {
        parts.push(format!("structural-constants {x}"));
    }
    if let Some(x) = &r.casimir {
        parts.push(format!("casimir {x}"));
    }
    parts.join(", ")
}

impl SpaceModel {
    pub fn dim_g(&self) -> u64 {
        self.algebra.dim()
    }

    /// `d = dim g − dim k`.
    pub fn dim_p(&self) -> u64 {
        self.dim_g() - self.dim_k
    }

    /// Computes ρ by every route the model supports. Parametric constants
    /// are checked at two parameter values, which pins down the affine
    /// dependence completely.
    pub fn rho_routes(&self) -> Result<RhoRoutes> {
        let mut routes = RhoRoutes::default();
        if let Some(comps) = &self.killing_components {
            let pairs: Vec<(Rational, u64)> = comps.iter().map(|c| (c.c.clone(), c.dim)).collect();
            routes.killing_ratios = Some(einstein_constant(self.dim_p(), &pairs)?);
        }
        if let Some(a) = &self.casimir {
            routes.casimir = Some(rho_from_casimir(a));
        }
        match (&self.constants, &self.summands) {
            (Constants::Numeric(sc), Some(s)) => {
                routes.structural_constants = Some(common_ricci(s, sc)?);
            }
            (Constants::Parametric(pc), Some(s)) => {
                let x1 = &pc.upper / Rational::int(2);
                let x2 = &pc.upper / Rational::int(3);
                let r1 = common_ricci(s, &pc.instantiate(&x1)?)?;
                let r2 = common_ricci(s, &pc.instantiate(&x2)?)?;
                if r1 != r2 {
                    return Err(Error::EinsteinViolation(format!(
                        "Einstein constant depends on {}: {r1} vs {r2}",
                        pc.parameter
                    )));
                }
                routes.structural_constants = Some(r1);
            }
            _ => {}
        }
        Ok(routes)
    }

    /// Dimension count and Einstein check; fills in `rho` if it was left open.
    pub(crate) fn validate(mut self) -> Result<Self> {
        if let Some(s) = &self.summands {
            if s.total_dim() != self.dim_p() {
                return Err(Error::InvalidParameters(format!(
                    "summand dimensions add up to {}, but dim g − dim k = {}",
                    s.total_dim(),
                    self.dim_p()
                )));
            }
            if s.len() != self.r {
                return Err(Error::Shape(format!("{} summands but r = {}", s.len(), self.r)));
            }
        }
        let routes = self.rho_routes()?;
        let agreed = routes.agreed()?;
        match (&self.rho, agreed) {
            (Some(declared), Some(found)) if *declared != found => {
                return Err(Error::EinsteinViolation(format!(
                    "declared ρ = {declared} but the model gives {found}"
                )));
            }
            (None, Some(found)) => self.rho = Some(found),
            _ => {}
        }
        Ok(self)
    }
}

/// The common Ricci eigenvalue, or `EinsteinViolation`.
pub fn common_ricci(s: &SummandSet, sc: &StructuralConstants) -> Result<Rational> {
    let ric = ricci_eigenvalues(s, sc)?;
    let first = ric[0].clone();
    if let Some((k, v)) = ric.iter().enumerate().find(|(_, v)| **v != first) {
        return Err(Error::EinsteinViolation(format!(
            "Ricci eigenvalue {v} on summand {} differs from {first} on summand {}",
            s.labels()[k],
            s.labels()[0]
        )));
    }
    Ok(first)
}
