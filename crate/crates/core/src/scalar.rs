//! Exact rational scalars.

use num::BigInt;

/// The scalar type for all linear and polynomial algebra: arbitrary-precision
/// rationals, always stored in lowest terms.
pub type Scalar = num::BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Rational scalar `p/q`. Panics if `q == 0`.
pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}
