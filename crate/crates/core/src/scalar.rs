//! Numeric field abstraction shared by the model, the LP solver and the
//! enumeration engine.
//!
//! Everything in this crate is written against [`Scalar`], so the same code
//! runs in floating point (`f64`, `f32`) and in exact rational arithmetic
//! ([`Rational`]). The exact instantiation uses zero tolerances and is used as
//! an independent cross-check of the floating-point results on small inputs.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational numbers.
pub type Rational = BigRational;

pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Smallest pivot magnitude the simplex accepts.
    fn default_pivot_tol() -> Self;
    /// Residual allowed on equality rows and bounds.
    fn default_feasibility_tol() -> Self;
    /// Threshold for a reduced cost to count as improving.
    fn default_optimality_tol() -> Self;
    /// Default edge-presence threshold, relative to a unit upper bound.
    fn default_support_tol() -> Self;

    fn is_finite_value(&self) -> bool;

    /// Lossy conversion from `f64`. Exact for rationals (binary expansion).
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("finite value")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_usize_exact(v: usize) -> Self {
        Self::from_usize(v).expect("usize fits scalar")
    }
}

impl Scalar for f64 {
    fn default_pivot_tol() -> Self {
        1e-9
    }
    fn default_feasibility_tol() -> Self {
        1e-7
    }
    fn default_optimality_tol() -> Self {
        1e-9
    }
    fn default_support_tol() -> Self {
        1e-6
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    fn default_pivot_tol() -> Self {
        1e-6
    }
    fn default_feasibility_tol() -> Self {
        1e-4
    }
    fn default_optimality_tol() -> Self {
        1e-6
    }
    fn default_support_tol() -> Self {
        1e-3
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for Rational {
    fn default_pivot_tol() -> Self {
        Self::zero()
    }
    fn default_feasibility_tol() -> Self {
        Self::zero()
    }
    fn default_optimality_tol() -> Self {
        Self::zero()
    }
    fn default_support_tol() -> Self {
        Self::zero()
    }
    fn is_finite_value(&self) -> bool {
        true
    }
}

/// `numer / denom` as an exact rational.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub(crate) fn max_abs<'a, S: Scalar>(values: impl IntoIterator<Item = &'a S>) -> S {
    values
        .into_iter()
        .fold(S::zero(), |acc, v| if v.abs() > acc { v.abs() } else { acc })
}

/// Integer power by repeated squaring; `0^0 = 1`.
pub(crate) fn powu<S: Scalar>(base: &S, exp: u32) -> S {
    let mut result = S::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b.clone();
        }
        e >>= 1;
        if e > 0 {
            b = b.clone() * b;
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powu_matches_repeated_multiplication() {
        assert_eq!(powu(&2.0f64, 0), 1.0);
        assert_eq!(powu(&0.0f64, 0), 1.0);
        assert_eq!(powu(&0.0f64, 3), 0.0);
        assert_eq!(powu(&3.0f64, 5), 243.0);
        assert_eq!(powu(&ratio(1, 2), 3), ratio(1, 8));
    }

    #[test]
    fn rational_from_f64_is_exact() {
        assert_eq!(Rational::from_f64_lossy(0.5), ratio(1, 2));
        assert_eq!(Rational::from_f64_lossy(-3.0), ratio(-3, 1));
    }
}
