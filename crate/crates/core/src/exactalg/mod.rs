//! Exact integer and rational linear algebra.
//!
//! Everything in this module is computed over arbitrary-precision integers
//! ([`num_bigint::BigInt`]) or rationals ([`num_rational::BigRational`]);
//! there is no floating point and no fixed-width arithmetic on matrix data.
//! The matrices that show up in surgery presentations are tiny, so all
//! algorithms favour exactness and clarity over speed.

mod matrix;
mod signature;
mod snf;
mod solve;

pub use matrix::{IntMatrix, MatrixError};
pub use signature::signature;
pub use snf::{smith_normal_form, SmithDecomposition};
pub use solve::solve_rational;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = num_bigint::BigInt;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an `Int` from an `i64`.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Shorthand for an exact rational `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(Int::from(p), Int::from(q))
}
