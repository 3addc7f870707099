//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational; always in lowest terms with positive
/// denominator.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}
