//! Coefficient domains for tensors: exact rationals for certification,
//! floats for experiment-scale work.

use crate::error::Error;
use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, ToPrimitive, Zero};
use std::fmt::Debug;
use std::str::FromStr;

/// Arbitrary-precision rational number.
pub type Rational = Ratio<BigInt>;

/// Shorthand for small rational constants in code and tests.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// A coefficient ring for truncated tensors.
///
/// Implemented by [`Rational`] (exact), `f64` (fast), and the sparse
/// polynomials used by the symbolic oracle. Every operation is pure;
/// implementations must be exact about `is_zero` only in the sense that
/// a value reported zero contributes nothing to sums and products.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact division by a positive integer (the `1/k!` factors of exponentials).
    fn div_whole(&self, n: u64) -> Self;
    /// Injects an exact rational coefficient into this domain.
    fn from_ratio(r: &Rational) -> Self;

    fn from_int(value: i64) -> Self {
        Self::from_ratio(&int(value))
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_whole(&self, n: u64) -> Self {
        self / Rational::from_integer(BigInt::from(n))
    }
    fn from_ratio(r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_whole(&self, n: u64) -> Self {
        self / n as f64
    }
    fn from_ratio(r: &Rational) -> Self {
        r.to_f64()
            .unwrap_or_else(|| r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN))
    }
}

/// Scalars with a JSON wire format: floats as numbers, rationals as `"p/q"`.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> serde_json::Value;
    fn from_json(value: &serde_json::Value) -> Result<Self, Error>;
}

impl JsonScalar for f64 {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null)
    }

    fn from_json(value: &serde_json::Value) -> Result<Self, Error> {
        value
            .as_f64()
            .ok_or_else(|| Error::TensorJson(format!("expected a number, got {value}")))
    }
}

impl JsonScalar for Rational {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }

    fn from_json(value: &serde_json::Value) -> Result<Self, Error> {
        match value {
            serde_json::Value::String(s) => Rational::from_str(s)
                .map_err(|e| Error::TensorJson(format!("bad rational {s:?}: {e}"))),
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(int(i))
                } else {
                    Err(Error::TensorJson(format!(
                        "non-integer number {n} cannot be read exactly"
                    )))
                }
            }
            other => Err(Error::TensorJson(format!(
                "expected \"p/q\" or an integer, got {other}"
            ))),
        }
    }
}

/// Relative closeness for float comparisons in tests and accuracy checks.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        return true;
    }
    (a - b).abs() <= tol * scale
}

/// |a - b| / max(|a|, |b|), zero when both vanish.
pub fn rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_reduces() {
        assert_eq!(ratio(2, 4), ratio(1, 2));
        assert_eq!(ratio(-3, -6), ratio(1, 2));
    }

    #[test]
    fn div_whole_is_exact_for_rationals() {
        let x = ratio(1, 3).div_whole(4);
        assert_eq!(x, ratio(1, 12));
    }

    #[test]
    fn from_ratio_to_f64() {
        assert_eq!(f64::from_ratio(&ratio(1, 2)), 0.5);
        assert_eq!(f64::from_ratio(&int(-7)), -7.0);
    }

    #[test]
    fn json_round_trip() {
        let r = ratio(22, 7);
        assert_eq!(Rational::from_json(&r.to_json()).unwrap(), r);
        let x = 1.25f64;
        assert_eq!(f64::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn json_rational_accepts_integers() {
        let v = serde_json::json!(5);
        assert_eq!(Rational::from_json(&v).unwrap(), int(5));
    }

    #[test]
    fn rel_close_handles_zero() {
        assert!(rel_close(0.0, 0.0, 1e-12));
        assert!(!rel_close(0.0, 1.0, 1e-12));
    }
}
