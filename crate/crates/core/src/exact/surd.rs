//! Numbers of the form `q·√s` and formal sums of them.
//!
//! Enough arithmetic to check linear eigen-equations whose vectors carry
//! square roots of integers: a sum `Σ q_i √s_i` with distinct square-free
//! radicands vanishes only if every `q_i` does, so equality can be tested by
//! grouping on the radicand.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

/// `coeff · √radicand` with `radicand` a square-free positive integer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Surd {
    coeff: Rational,
    radicand: BigInt,
}

impl Surd {
    pub fn rational(q: Rational) -> Self {
        Surd { coeff: q, radicand: BigInt::one() }
    }

    pub fn zero() -> Self {
        Surd::rational(Rational::zero())
    }

    /// `√r` for a nonnegative rational `r`, normalised.
    pub fn sqrt(r: &Rational) -> Self {
        assert!(!r.is_negative(), "square root of a negative number");
        if r.is_zero() {
            return Surd::zero();
        }
        // √(n/d) = √(n·d)/d
        let nd = r.numer() * r.denom();
        let (sq, free) = split_square(&nd);
        Surd {
            coeff: Rational::from_bigints(sq, r.denom().clone()),
            radicand: free,
        }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut s = self.clone();
        s.coeff = &s.coeff * q;
        if s.coeff.is_zero() {
            s.radicand = BigInt::one();
        }
        s
    }

    pub fn mul(&self, other: &Surd) -> Self {
        let (sq, free) = split_square(&(&self.radicand * &other.radicand));
        let coeff = &self.coeff * &other.coeff * Rational::from_bigint(sq);
        if coeff.is_zero() {
            return Surd::zero();
        }
        Surd { coeff, radicand: free }
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64() * self.radicand_f64().sqrt()
    }

    fn radicand_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.radicand).unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() || self.coeff.is_zero() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}·√{}", self.coeff, self.radicand)
        }
    }
}

/// `n = a²·b` with `b` square-free; returns `(a, b)`. Trial division is fine
/// for the small dimension products this is used on.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    assert!(*n > BigInt::zero());
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= &p;
            }
        }
        p += 1;
    }
    // `rest` is 1 or a prime (or a perfect square of one when p² == rest)
    if rest > BigInt::one() {
        let r = rest.sqrt();
        if &r * &r == rest {
            square *= r;
        } else {
            free *= rest;
        }
    }
    (square, free)
}

/// A formal sum `Σ q_i √s_i`, kept grouped by radicand.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurdSum {
    terms: BTreeMap<BigInt, Rational>,
}

impl SurdSum {
    pub fn add(&mut self, s: &Surd) {
        if s.is_zero() {
            return;
        }
        let e = self.terms.entry(s.radicand.clone()).or_default();
        *e += &s.coeff;
        if e.is_zero() {
            self.terms.remove(&s.radicand);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact equality with a single surd.
    pub fn equals(&self, s: &Surd) -> bool {
        let mut d = self.clone();
        d.add(&s.scale(&-Rational::one()));
        d.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn normalisation() {
        let s = Surd::sqrt(&q(12, 1));
        assert_eq!(s.coeff(), &q(2, 1));
        assert_eq!(s.radicand(), &BigInt::from(3));
        let t = Surd::sqrt(&q(1, 8)); // √2/4
        assert_eq!(t.coeff(), &q(1, 4));
        assert_eq!(t.radicand(), &BigInt::from(2));
        let u = Surd::sqrt(&q(49, 1));
        assert_eq!(u, Surd::rational(q(7, 1)));
    }

    #[test]
    fn sums_cancel_by_radicand() {
        let mut s = SurdSum::default();
        s.add(&Surd::sqrt(&q(8, 1)));
        s.add(&Surd::sqrt(&q(2, 1)).scale(&q(-2, 1)));
        assert!(s.is_zero());
        s.add(&Surd::sqrt(&q(3, 1)));
        assert!(s.equals(&Surd::sqrt(&q(3, 1))));
        assert!(!s.equals(&Surd::sqrt(&q(2, 1))));
    }

    #[test]
    fn product() {
        let a = Surd::sqrt(&q(6, 1));
        let b = Surd::sqrt(&q(10, 1));
        assert_eq!(a.mul(&b), Surd::sqrt(&q(60, 1)));
        assert!((a.mul(&b).to_f64() - 60f64.sqrt()).abs() < 1e-12);
    }
}
