//! Exact arithmetic: rationals, polynomials, dense rational matrices and
//! their spectra.

mod charpoly;
mod matrix;
mod poly;
mod rational;
mod spectrum;
pub mod sturm;
pub mod surd;

pub use charpoly::{char_poly, rational_spectrum};
pub use matrix::SymRationalMatrix;
pub use poly::Polynomial;
pub use rational::{q, Rational};
pub use spectrum::{Eigenpair, Spectrum};

/// Isolating intervals for the real roots of a square-free residual factor.
pub fn isolate_real_eigenvalues(residual: &Polynomial, tol: &Rational) -> Vec<(Rational, Rational)> {
    sturm::isolate_real_roots(residual, tol)
}
