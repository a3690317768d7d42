//! Scalar fields used by every algebraic construction in the crate.
//!
//! Two backends implement [`Field`]:
//!
//! * [`Cyclotomic`]: exact values in `Q(ζ_N)`, stored as rational polynomials in
//!   the primitive root `ζ_N` reduced modulo the `N`-th cyclotomic polynomial.
//!   Order `1` is the field of rationals.
//! * [`ComplexFloat`]: complex doubles with a relative zero test.
//!
//! All algorithms are generic over `F: Field`, so the same verification code runs
//! exactly or numerically.

mod complex;
mod cyclotomic;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;

pub use complex::ComplexFloat;
pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};

/// Default relative tolerance of the float backend.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Smallest tolerance accepted by the float backend.
pub const TOLERANCE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Field description carried in document headers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSpec {
    Cyclotomic { order: u32 },
    Float { tol: f64 },
}

impl FieldSpec {
    pub fn rational() -> Self {
        FieldSpec::Cyclotomic { order: 1 }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Cyclotomic { order } => write!(f, "cyclotomic:{order}"),
            FieldSpec::Float { tol } => write!(f, "float:{tol:e}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "rational" | "q" => Ok(FieldSpec::rational()),
            "cyclotomic" => {
                let order = if arg.is_empty() { 1 } else { arg.parse().map_err(|_| format!("bad order {arg:?}"))? };
                if order == 0 {
                    return Err("cyclotomic order must be positive".into());
                }
                Ok(FieldSpec::Cyclotomic { order })
            }
            "float" => {
                let tol = if arg.is_empty() { DEFAULT_TOLERANCE } else { arg.parse().map_err(|_| format!("bad tolerance {arg:?}"))? };
                Ok(FieldSpec::Float { tol })
            }
            _ => Err(format!("unknown field kind {kind:?}")),
        }
    }
}

/// A field of characteristic zero containing the roots of unity the caller asks for.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self, ScalarError>;
    fn from_rational(r: &BigRational) -> Self;
    /// A primitive `n`-th root of unity.
    fn root_of_unity(n: u32) -> Self;
    /// Absolute value of the canonical complex embedding.
    fn magnitude(&self) -> f64;
    /// Value in the canonical complex embedding (`ζ_N = exp(2πi/N)`).
    fn to_complex(&self) -> (f64, f64);
    /// Smallest field description able to hold `self` together with `acc`.
    fn join_spec(&self, acc: FieldSpec) -> FieldSpec;
    fn format_in(&self, spec: &FieldSpec) -> String;
    fn parse_in(s: &str, spec: &FieldSpec) -> Result<Self, ScalarError>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * other.inv()?)
    }

    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }

    /// Integer power; negative exponents invert.
    fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        Ok(acc)
    }
}

/// `ζ_n^e` with the exponent reduced modulo `n`.
pub fn root_power<F: Field>(n: u32, e: i64) -> F {
    let n = n.max(1);
    let e = e.rem_euclid(n as i64);
    F::root_of_unity(n).pow(e).expect("non-negative power")
}

/// Field elements of a list joined into a single header description.
pub fn spec_of<'a, F: Field>(values: impl IntoIterator<Item = &'a F>, start: FieldSpec) -> FieldSpec {
    values.into_iter().fold(start, |acc, v| v.join_spec(acc))
}

pub(crate) fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

pub(crate) fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_spec_round_trip() {
        assert_eq!("cyclotomic:6".parse::<FieldSpec>().unwrap(), FieldSpec::Cyclotomic { order: 6 });
        assert_eq!("float:1e-6".parse::<FieldSpec>().unwrap(), FieldSpec::Float { tol: 1e-6 });
        assert_eq!("rational".parse::<FieldSpec>().unwrap(), FieldSpec::rational());
        assert!("cyclotomic:0".parse::<FieldSpec>().is_err());
        assert!("padic:3".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn root_power_wraps() {
        let z: Cyclotomic = root_power(5, -1);
        assert_eq!(z, root_power(5, 4));
    }
}
