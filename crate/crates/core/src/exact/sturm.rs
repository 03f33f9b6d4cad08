//! Real-root isolation with Sturm sequences.
//!
//! Used as the fallback comparator when a characteristic polynomial keeps an
//! irreducible factor without rational roots: classification only needs to
//! know on which side of a rational threshold each root lies, and an
//! isolating interval that excludes the threshold answers that exactly.

use std::cmp::Ordering;

use super::{Polynomial, Rational};

/// The Sturm chain `p, p', −rem(p, p'), …` of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Self {
        let mut chain = vec![p.clone()];
        let mut next = p.derivative();
        while !next.is_zero() {
            let (_, r) = chain.last().unwrap().div_rem(&next);
            chain.push(next);
            next = -&r;
        }
        SturmChain { chain }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.chain[0]
    }

    fn sign_changes(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if last.is_some_and(|l| l != pos) {
                count += 1;
            }
            last = Some(pos);
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.sign_changes(a).saturating_sub(self.sign_changes(b))
    }
}

/// Cauchy bound: every root has absolute value strictly below the result.
pub fn root_bound(p: &Polynomial) -> Rational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_default();
    m + Rational::one()
}

/// Disjoint intervals `[lo, hi]`, each of width at most `tol` and each
/// containing exactly one real root of the square-free polynomial `p`.
/// Roots hit exactly during bisection are returned as `[r, r]`.
pub fn isolate_real_roots(p: &Polynomial, tol: &Rational) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut poly = p.clone();
    let mut chain = SturmChain::new(&poly);
    let b = root_bound(&poly);
    let mut work = vec![(-&b, b)];
    while let Some((lo, hi)) = work.pop() {
        if poly.degree() == Some(1) {
            // A linear remainder pins its root exactly.
            let r = -&poly.coeffs()[0] / &poly.coeffs()[1];
            if lo < r && r <= hi {
                out.push((r.clone(), r));
            }
            continue;
        }
        let c = chain.count(&lo, &hi);
        if c == 0 {
            continue;
        }
        if c == 1 && &hi - &lo <= *tol {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / Rational::int(2);
        if poly.eval(&mid).is_zero() {
            out.push((mid.clone(), mid.clone()));
            poly = poly.div_rem(&Polynomial::linear(&mid)).0;
            chain = SturmChain::new(&poly);
        }
        work.push((lo, mid.clone()));
        work.push((mid, hi));
    }
    out.sort();
    out
}

/// Position of the unique root of `chain.poly()` in `(lo, hi]` relative to `x`.
pub fn compare_root(chain: &SturmChain, lo: &Rational, hi: &Rational, x: &Rational) -> Ordering {
    if lo == hi {
        return lo.cmp(x);
    }
    if x <= lo {
        return Ordering::Greater;
    }
    if x >= hi {
        return if chain.poly().eval(hi).is_zero() && x == hi {
            Ordering::Equal
        } else {
            Ordering::Less
        };
    }
    if chain.poly().eval(x).is_zero() {
        Ordering::Equal
    } else if chain.count(lo, x) == 1 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn sqrt_two() {
        let p = Polynomial::new(vec![q(-2, 1), q(0, 1), q(1, 1)]);
        let iv = isolate_real_roots(&p, &q(1, 100));
        assert_eq!(iv.len(), 2);
        let s = 2f64.sqrt();
        for ((lo, hi), root) in iv.iter().zip([-s, s]) {
            assert!(hi - lo <= q(1, 100));
            assert!(lo.to_f64() <= root && root <= hi.to_f64());
        }
    }

    #[test]
    fn exact_rational_root() {
        let iv = isolate_real_roots(&Polynomial::linear(&q(3, 4)), &q(1, 10));
        assert_eq!(iv, vec![(q(3, 4), q(3, 4))]);
    }

    #[test]
    fn compare_against_threshold() {
        let p = Polynomial::new(vec![q(-2, 1), q(0, 1), q(1, 1)]);
        let chain = SturmChain::new(&p);
        let iv = isolate_real_roots(&p, &q(1, 1));
        let (lo, hi) = &iv[1];
        assert_eq!(compare_root(&chain, lo, hi, &q(7, 5)), Ordering::Greater);
        assert_eq!(compare_root(&chain, lo, hi, &q(3, 2)), Ordering::Less);
    }
}
