use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// Dense square matrix of rationals, row-major.
///
/// Despite the name it is not required to be symmetric: the Lichnerowicz
/// matrices produced by [`crate::lich`] are similar to symmetric ones but are
/// stored in a rescaled, non-symmetric basis so every entry stays rational.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymRationalMatrix {
    order: usize,
    entries: Vec<Rational>,
}

impl SymRationalMatrix {
    pub fn new(order: usize, entries: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Shape("matrix order must be positive".into()));
        }
        if entries.len() != order * order {
            return Err(Error::Shape(format!(
                "{} entries cannot form a {order}×{order} matrix",
                entries.len()
            )));
        }
        Ok(SymRationalMatrix { order, entries })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(order > 0, "matrix order must be positive");
        let entries = (0..order * order).map(|k| f(k / order, k % order)).collect();
        SymRationalMatrix { order, entries }
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_fn(order, |_, _| Rational::zero())
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    /// Builds a matrix from rows of machine integers (tests and small inputs).
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        let n = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| Rational::int(v)))
            .collect();
        Self::new(n, entries)
    }

    /// Block-diagonal matrix with the given blocks along the diagonal.
    pub fn block_diag(blocks: &[SymRationalMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.order).sum();
        let mut out = Self::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.order {
                for j in 0..b.order {
                    out.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.order;
        }
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.order + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn trace(&self) -> Rational {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        SymRationalMatrix {
            order: self.order,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// `self − other`; panics if the orders differ.
    pub fn sub(&self, other: &SymRationalMatrix) -> Self {
        assert_eq!(self.order, other.order);
        SymRationalMatrix {
            order: self.order,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.order);
        (0..self.order)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.order)
            .map(|i| self.row(i).iter().map(Rational::to_f64).collect())
            .collect()
    }
}

impl fmt::Debug for SymRationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.order {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
