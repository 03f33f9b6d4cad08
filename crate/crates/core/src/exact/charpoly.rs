//! Exact characteristic polynomials and rational spectra.
//!
//! The matrix is first scaled by the common denominator `L` of its entries,
//! giving an integer matrix `M' = L·m` whose characteristic polynomial is
//! monic with integer coefficients. That polynomial is computed modulo a
//! sequence of 62-bit primes (Hessenberg reduction, O(n³) word operations per
//! prime) and lifted by Chinese remaindering past a Hadamard-type coefficient
//! bound, so the result is exact. Every rational eigenvalue of `m` is then
//! `k/L` for an integer root `k` of the monic polynomial.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::sturm::isolate_real_roots;
use super::{Polynomial, Rational, Spectrum, SymRationalMatrix};
use crate::error::{Error, Result};

/// `det(xI − m)`.
pub fn char_poly(m: &SymRationalMatrix) -> Polynomial {
    let (l, scaled) = scale_to_integers(m);
    let q = integer_char_poly(m.order(), &scaled);
    unscale(&q, &l)
}

/// Full factorisation of the characteristic polynomial over the rationals.
///
/// Fails with [`Error::NonRationalSpectrum`] when an irreducible factor of
/// degree ≥ 2 remains; the error carries that residual (as a monic polynomial
/// in the original variable) and the rational eigenvalues found so far.
pub fn rational_spectrum(m: &SymRationalMatrix) -> Result<Spectrum> {
    let n = m.order();
    let (l, scaled) = scale_to_integers(m);
    let mut q = integer_char_poly(n, &scaled);
    let mut found: Vec<(BigInt, usize)> = Vec::new();

    let zeros = q.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        found.push((BigInt::zero(), zeros));
        q.drain(..zeros);
    }

    if q.len() > 1 {
        let bound = gershgorin_bound(n, &scaled);
        match bound.to_u64().filter(|&b| b <= ENUMERATION_LIMIT) {
            Some(b) => extract_roots_by_enumeration(&mut q, b, &mut found),
            None => extract_roots_by_isolation(&mut q, &mut found),
        }
    }

    let pairs: Vec<(Rational, usize)> = found
        .into_iter()
        .map(|(k, mult)| (Rational::from_bigints(k, l.clone()), mult))
        .collect();
    let rational_part = Spectrum::from_unsorted(pairs);

    if q.len() > 1 {
        return Err(Error::NonRationalSpectrum {
            residual: unscale(&q, &l),
            rational_part,
        });
    }
    Ok(rational_part)
}

/// Largest Gershgorin radius that still allows testing every integer
/// candidate directly; beyond it the Sturm-based locator is used instead.
const ENUMERATION_LIMIT: u64 = 1 << 21;

fn scale_to_integers(m: &SymRationalMatrix) -> (BigInt, Vec<BigInt>) {
    let l = Rational::common_denominator(m.entries());
    let scaled = m
        .entries()
        .iter()
        .map(|e| e.numer() * (&l / e.denom()))
        .collect();
    (l, scaled)
}

/// `p(x) = L^{-n} q(Lx)`, i.e. coefficient `k` is `q_k / L^{n-k}`.
fn unscale(q: &[BigInt], l: &BigInt) -> Polynomial {
    let n = q.len() - 1;
    let mut pow = BigInt::one();
    let mut coeffs = vec![Rational::zero(); q.len()];
    for k in (0..=n).rev() {
        coeffs[k] = Rational::from_bigints(q[k].clone(), pow.clone());
        pow *= l;
    }
    Polynomial::new(coeffs)
}

fn gershgorin_bound(n: usize, a: &[BigInt]) -> BigInt {
    (0..n)
        .map(|i| a[i * n..(i + 1) * n].iter().map(|v| v.abs()).sum::<BigInt>())
        .max()
        .unwrap_or_default()
}

/// Removes every integer root in `[-bound, bound]` from the monic integer
/// polynomial `q` (which has nonzero constant term), recording multiplicities.
fn extract_roots_by_enumeration(q: &mut Vec<BigInt>, bound: u64, found: &mut Vec<(BigInt, usize)>) {
    for r in 1..=bound {
        for sign in [1i64, -1] {
            if q.len() <= 1 {
                return;
            }
            // Rational-root theorem: an integer root divides the constant term.
            if !(&q[0] % BigInt::from(r)).is_zero() {
                continue;
            }
            let root = BigInt::from(r) * sign;
            let mult = deflate_all(q, &root);
            if mult > 0 {
                found.push((root, mult));
            }
        }
    }
}

/// Fallback for matrices with very large entries: isolate the real roots of
/// the square-free part and test the integers inside each isolating interval.
fn extract_roots_by_isolation(q: &mut Vec<BigInt>, found: &mut Vec<(BigInt, usize)>) {
    let poly = Polynomial::new(q.iter().cloned().map(Rational::from_bigint).collect());
    let squarefree = poly
        .squarefree_decomposition()
        .into_iter()
        .fold(Polynomial::constant(Rational::one()), |acc, (f, _)| &acc * &f);
    for (lo, hi) in isolate_real_roots(&squarefree, &Rational::new(1, 2)) {
        let mut k = lo.floor();
        while Rational::from_bigint(k.clone()) <= hi {
            if !k.is_zero() {
                let mult = deflate_all(q, &k);
                if mult > 0 {
                    found.push((k.clone(), mult));
                }
            }
            k += 1;
        }
    }
}

/// Divides `q` by `(x − r)` as often as it goes exactly; returns the count.
fn deflate_all(q: &mut Vec<BigInt>, r: &BigInt) -> usize {
    let mut mult = 0;
    while q.len() > 1 {
        // Horner evaluation, which doubles as synthetic division.
        let deg = q.len() - 1;
        let mut quot = vec![BigInt::zero(); deg];
        let mut acc = BigInt::zero();
        for k in (0..=deg).rev() {
            acc = acc * r + &q[k];
            if k > 0 {
                quot[k - 1] = acc.clone();
            }
        }
        if !acc.is_zero() {
            break;
        }
        *q = quot;
        mult += 1;
    }
    mult
}

// ---------------------------------------------------------------------------
// Multi-modular characteristic polynomial of an integer matrix.

/// Monic characteristic polynomial of the integer matrix `a` (row-major,
/// order `n`), lowest coefficient first.
fn integer_char_poly(n: usize, a: &[BigInt]) -> Vec<BigInt> {
    let bits = coefficient_bound_bits(n, a);
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let target = BigInt::one() << (bits + 1);
    for &p in primes() {
        if modulus > target {
            break;
        }
        let residues = char_poly_mod(n, a, p);
        crt_accumulate(&mut acc, &mut modulus, &residues, p);
    }
    assert!(modulus > target, "prime table exhausted");
    let half = &modulus >> 1;
    for c in acc.iter_mut() {
        if *c > half {
            *c -= &modulus;
        }
    }
    acc
}

/// Upper bound on log₂ of any coefficient: each coefficient is a sum of at
/// most 2ⁿ principal minors, each bounded by the product of its row norms.
fn coefficient_bound_bits(n: usize, a: &[BigInt]) -> u64 {
    let log_n = (usize::BITS - n.leading_zeros()) as u64;
    let rows: u64 = (0..n)
        .map(|i| {
            let b = a[i * n..(i + 1) * n].iter().map(|v| v.bits()).max().unwrap_or(0);
            if b == 0 {
                0
            } else {
                b + log_n
            }
        })
        .sum();
    rows + n as u64 + 2
}

fn crt_accumulate(acc: &mut [BigInt], modulus: &mut BigInt, residues: &[u64], p: u64) {
    let pb = BigInt::from(p);
    let m_mod_p = (&*modulus % &pb).to_u64().unwrap();
    let inv = pow_mod(m_mod_p, p - 2, p);
    for (x, &r) in acc.iter_mut().zip(residues) {
        let x_mod_p = x.mod_floor(&pb).to_u64().unwrap();
        let diff = sub_mod(r, x_mod_p, p);
        let k = mul_mod(diff, inv, p);
        if k != 0 {
            *x += &*modulus * BigInt::from(k);
        }
    }
    *modulus *= pb;
}

fn char_poly_mod(n: usize, a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut h: Vec<u64> = a
        .iter()
        .map(|v| match v.sign() {
            Sign::NoSign => 0,
            _ => v.mod_floor(&pb).to_u64().unwrap(),
        })
        .collect();
    hessenberg_mod(n, &mut h, p);
    hessenberg_char_poly_mod(n, &h, p)
}

/// In-place reduction to upper Hessenberg form by elementary similarities.
fn hessenberg_mod(n: usize, h: &mut [u64], p: u64) {
    let at = |i: usize, j: usize| i * n + j;
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[at(i, j)] != 0) else {
            continue;
        };
        if piv != j + 1 {
            for c in 0..n {
                h.swap(at(piv, c), at(j + 1, c));
            }
            for r in 0..n {
                h.swap(at(r, piv), at(r, j + 1));
            }
        }
        let inv = pow_mod(h[at(j + 1, j)], p - 2, p);
        for k in j + 2..n {
            let u = mul_mod(h[at(k, j)], inv, p);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let t = mul_mod(u, h[at(j + 1, c)], p);
                h[at(k, c)] = sub_mod(h[at(k, c)], t, p);
            }
            for r in 0..n {
                let t = mul_mod(u, h[at(r, k)], p);
                h[at(r, j + 1)] = add_mod(h[at(r, j + 1)], t, p);
            }
        }
    }
}

/// Characteristic polynomial of an upper Hessenberg matrix via the standard
/// leading-principal-minor recurrence.
fn hessenberg_char_poly_mod(n: usize, h: &[u64], p: u64) -> Vec<u64> {
    let at = |i: usize, j: usize| h[i * n + j];
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for m in 1..=n {
        let prev = &polys[m - 1];
        // (x − h[m−1][m−1]) · p_{m−1}
        let mut cur = vec![0u64; m + 1];
        let diag = at(m - 1, m - 1);
        for (k, &c) in prev.iter().enumerate() {
            cur[k + 1] = add_mod(cur[k + 1], c, p);
            cur[k] = sub_mod(cur[k], mul_mod(diag, c, p), p);
        }
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = mul_mod(t, at(i, i - 1), p);
            if t == 0 {
                break;
            }
            let coef = mul_mod(at(i - 1, m - 1), t, p);
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[i - 1].iter().enumerate() {
                cur[k] = sub_mod(cur[k], mul_mod(coef, c, p), p);
            }
        }
        polys.push(cur);
    }
    polys.pop().unwrap()
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Descending 62-bit primes, enough for coefficient bounds of ~16k bits.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(256);
        let mut c = (1u64 << 62) - 1;
        while out.len() < 256 {
            if is_prime_u64(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn small_primes_recognised() {
        let ps: Vec<u64> = (0..50).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn identity_and_diagonal() {
        let m = SymRationalMatrix::from_fn(3, |i, j| if i == j { q(i as i64 + 1, 2) } else { q(0, 1) });
        let p = char_poly(&m);
        let expect = Polynomial::from_roots([(&q(1, 2), 1), (&q(1, 1), 1), (&q(3, 2), 1)]);
        assert_eq!(p, expect);
    }

    #[test]
    fn negative_and_fractional_entries() {
        let m = SymRationalMatrix::new(2, vec![q(-1, 3), q(5, 7), q(2, 1), q(-9, 4)]).unwrap();
        // x² − tr·x + det
        let tr = q(-1, 3) + q(-9, 4);
        let det = q(-1, 3) * q(-9, 4) - q(5, 7) * q(2, 1);
        assert_eq!(char_poly(&m), Polynomial::new(vec![det, -tr, q(1, 1)]));
    }
}
