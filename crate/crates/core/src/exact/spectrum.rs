use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;

/// One eigenvalue with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenpair {
    pub value: Rational,
    pub mult: usize,
}

/// A multiset of exact eigenvalues, sorted ascending with distinct values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Spectrum {
    pairs: Vec<Eigenpair>,
}

impl Spectrum {
    /// Sorts the input and merges repeated values.
    pub fn from_unsorted(pairs: impl IntoIterator<Item = (Rational, usize)>) -> Self {
        let mut v: Vec<(Rational, usize)> = pairs.into_iter().filter(|(_, m)| *m > 0).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<Eigenpair> = Vec::with_capacity(v.len());
        for (value, mult) in v {
            match out.last_mut() {
                Some(last) if last.value == value => last.mult += mult,
                _ => out.push(Eigenpair { value, mult }),
            }
        }
        Spectrum { pairs: out }
    }

    pub fn pairs(&self) -> &[Eigenpair] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Sum of multiplicities.
    pub fn order(&self) -> usize {
        self.pairs.iter().map(|p| p.mult).sum()
    }

    /// Σ eigenvalue · multiplicity.
    pub fn weighted_sum(&self) -> Rational {
        self.pairs
            .iter()
            .map(|p| &p.value * Rational::from(p.mult))
            .sum()
    }

    pub fn multiplicity(&self, x: &Rational) -> usize {
        self.pairs.iter().find(|p| &p.value == x).map_or(0, |p| p.mult)
    }

    pub fn min(&self) -> Option<&Rational> {
        self.pairs.first().map(|p| &p.value)
    }

    pub fn max(&self) -> Option<&Rational> {
        self.pairs.last().map(|p| &p.value)
    }

    /// The spectrum with one copy of `x` removed; `None` if `x` is absent.
    pub fn without_one(&self, x: &Rational) -> Option<Spectrum> {
        let idx = self.pairs.iter().position(|p| &p.value == x)?;
        let mut pairs = self.pairs.clone();
        pairs[idx].mult -= 1;
        if pairs[idx].mult == 0 {
            pairs.remove(idx);
        }
        Some(Spectrum { pairs })
    }

    /// Distinct nonzero eigenvalues.
    pub fn nonzero_values(&self) -> Vec<Rational> {
        self.pairs
            .iter()
            .filter(|p| !p.value.is_zero())
            .map(|p| p.value.clone())
            .collect()
    }
}

impl fmt::Display for Spectrum {
    /// `{0, 4/5×7, 14/15×6}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|p| {
                if p.mult == 1 {
                    p.value.to_string()
                } else {
                    format!("{}×{}", p.value, p.mult)
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
