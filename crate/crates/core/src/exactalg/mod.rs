//! Exact arithmetic: rationals, dense polynomials over Q, quotient rings with
//! trace and inverse, Gaussian-integer polynomials and sparse bivariate Laurent
//! polynomials.

mod gaussian;
mod gcd;
pub(crate) mod intpoly;
pub mod json;
mod laurent;
mod quotient;
mod unipoly;

pub use gaussian::{GaussInt, GaussianPoly};
pub use gcd::{coprime, is_squarefree, poly_gcd};
pub use laurent::{convex_hull, laurent_mul, LaurentBiPoly};
pub use quotient::{QuotientElem, QuotientRing};
pub use unipoly::UniPoly;

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `a/b` as a [`Rational`].
pub fn rat(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

/// Inverse of `e` in its ring.
pub fn quotient_invert(e: &QuotientElem) -> crate::Result<QuotientElem> {
    e.invert()
}

/// Trace of multiplication by `e`.
pub fn quotient_trace(e: &QuotientElem) -> Rational {
    e.trace()
}
