use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::atomic::{AtomicU64, Ordering};

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{Field, FieldSpec, ScalarError, DEFAULT_TOLERANCE, TOLERANCE_FLOOR};

static DEFAULT_TOL_BITS: AtomicU64 = AtomicU64::new(0);

/// Complex double with a relative zero test.
///
/// Every value carries the magnitude scale of the inputs it was computed from;
/// `is_zero` compares against `tol * max(1, scale)`.
#[derive(Clone, Copy, Debug)]
pub struct ComplexFloat {
    pub re: f64,
    pub im: f64,
    tol: f64,
    scale: f64,
}

impl ComplexFloat {
    pub fn new(re: f64, im: f64) -> Self {
        let tol = Self::default_tolerance();
        ComplexFloat { re, im, tol, scale: re.hypot(im) }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol.max(TOLERANCE_FLOOR);
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Tolerance attached to freshly created values.
    pub fn default_tolerance() -> f64 {
        match DEFAULT_TOL_BITS.load(Ordering::Relaxed) {
            0 => DEFAULT_TOLERANCE,
            bits => f64::from_bits(bits),
        }
    }

    /// Sets the process-wide tolerance for new values; clamped to the floor.
    pub fn set_default_tolerance(tol: f64) {
        DEFAULT_TOL_BITS.store(tol.max(TOLERANCE_FLOOR).to_bits(), Ordering::Relaxed);
    }

    fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    fn combine(re: f64, im: f64, a: &Self, b: &Self, scale: f64) -> Self {
        ComplexFloat { re, im, tol: a.tol.max(b.tol), scale: scale.max(re.hypot(im)) }
    }
}

pub(crate) fn format_complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        return format!("{re:?}");
    }
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{re:?}{sign}{:?}*i", im.abs())
}

fn parse_complex(s: &str) -> Result<(f64, f64), String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty scalar".into());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| (re, 0.0)).map_err(|e| e.to_string());
    };
    let body = body.strip_suffix('*').unwrap_or(body);
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_s, im_s) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im_s {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().map_err(|e| e.to_string())?,
    };
    let re = re_s.parse::<f64>().map_err(|e| e.to_string())?;
    Ok((re, im))
}

impl PartialEq for ComplexFloat {
    fn eq(&self, other: &Self) -> bool {
        (*self - *other).is_zero()
    }
}

impl fmt::Display for ComplexFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_complex(self.re, self.im))
    }
}

impl Add for ComplexFloat {
    type Output = ComplexFloat;
    fn add(self, b: ComplexFloat) -> ComplexFloat {
        ComplexFloat::combine(self.re + b.re, self.im + b.im, &self, &b, self.scale.max(b.scale))
    }
}

impl Sub for ComplexFloat {
    type Output = ComplexFloat;
    fn sub(self, b: ComplexFloat) -> ComplexFloat {
        ComplexFloat::combine(self.re - b.re, self.im - b.im, &self, &b, self.scale.max(b.scale))
    }
}

impl Mul for ComplexFloat {
    type Output = ComplexFloat;
    fn mul(self, b: ComplexFloat) -> ComplexFloat {
        let re = self.re * b.re - self.im * b.im;
        let im = self.re * b.im + self.im * b.re;
        ComplexFloat::combine(re, im, &self, &b, self.scale * b.scale)
    }
}

impl Neg for ComplexFloat {
    type Output = ComplexFloat;
    fn neg(self) -> ComplexFloat {
        ComplexFloat { re: -self.re, im: -self.im, ..self }
    }
}

impl AddAssign for ComplexFloat {
    fn add_assign(&mut self, b: ComplexFloat) {
        *self = *self + b;
    }
}

impl SubAssign for ComplexFloat {
    fn sub_assign(&mut self, b: ComplexFloat) {
        *self = *self - b;
    }
}

impl MulAssign for ComplexFloat {
    fn mul_assign(&mut self, b: ComplexFloat) {
        *self = *self * b;
    }
}

impl Field for ComplexFloat {
    fn zero() -> Self {
        ComplexFloat::new(0.0, 0.0)
    }

    fn one() -> Self {
        ComplexFloat::new(1.0, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.abs() <= self.tol * self.scale.max(1.0)
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let d = self.re * self.re + self.im * self.im;
        let re = self.re / d;
        let im = -self.im / d;
        Ok(ComplexFloat { re, im, tol: self.tol, scale: re.hypot(im) })
    }

    fn from_rational(r: &BigRational) -> Self {
        ComplexFloat::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn root_of_unity(n: u32) -> Self {
        let ang = 2.0 * std::f64::consts::PI / n.max(1) as f64;
        ComplexFloat::new(ang.cos(), ang.sin())
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn to_complex(&self) -> (f64, f64) {
        (self.re, self.im)
    }

    fn join_spec(&self, acc: FieldSpec) -> FieldSpec {
        match acc {
            FieldSpec::Float { tol } => FieldSpec::Float { tol: tol.max(self.tol) },
            FieldSpec::Cyclotomic { .. } => FieldSpec::Float { tol: self.tol },
        }
    }

    fn format_in(&self, _spec: &FieldSpec) -> String {
        format_complex(self.re, self.im)
    }

    fn parse_in(s: &str, spec: &FieldSpec) -> Result<Self, ScalarError> {
        let tol = match spec {
            FieldSpec::Float { tol } => *tol,
            FieldSpec::Cyclotomic { .. } => ComplexFloat::default_tolerance(),
        };
        let (re, im) = match spec {
            FieldSpec::Float { .. } => parse_complex(s),
            // Exact documents are evaluated in the canonical embedding.
            FieldSpec::Cyclotomic { .. } => super::Cyclotomic::parse_in(s, spec)
                .map(|c| c.to_complex())
                .map_err(|e| e.to_string()),
        }
        .map_err(|reason| ScalarError::Parse { input: s.into(), reason })?;
        Ok(ComplexFloat::new(re, im).with_tolerance(tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn relative_zero_test() {
        let big = ComplexFloat::new(1e6, 0.0);
        let almost = big + ComplexFloat::new(1e-5, 0.0);
        assert!((almost - big).is_zero());
        assert!(!ComplexFloat::new(1e-6, 0.0).is_zero());
        assert!(ComplexFloat::new(1e-10, 0.0).is_zero());
    }

    #[test]
    fn tolerance_floor() {
        let x = ComplexFloat::new(1.0, 0.0).with_tolerance(0.0);
        assert_eq!(x.tolerance(), TOLERANCE_FLOOR);
    }

    #[test]
    fn parse_forms() {
        let spec = FieldSpec::Float { tol: 1e-9 };
        let p = |s| ComplexFloat::parse_in(s, &spec).unwrap().to_complex();
        assert_eq!(p("1.5-2*i"), (1.5, -2.0));
        assert_eq!(p("-i"), (0.0, -1.0));
        assert_eq!(p("2e-3+1e+2*i"), (2e-3, 100.0));
        assert_eq!(p("-4"), (-4.0, 0.0));
        assert!(ComplexFloat::parse_in("abc", &spec).is_err());
        let z = ComplexFloat::parse_in("z", &FieldSpec::Cyclotomic { order: 4 }).unwrap();
        assert_eq!(z, ComplexFloat::new(0.0, 1.0));
    }

    #[test]
    fn primitive_roots() {
        for n in 1..10u32 {
            assert!(ComplexFloat::root_of_unity(n).pow(n as i64).unwrap().is_one());
        }
    }

    proptest! {
        #[test]
        fn format_round_trips(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            let spec = FieldSpec::Float { tol: 1e-12 };
            let x = ComplexFloat::new(re, im);
            let y = ComplexFloat::parse_in(&x.format_in(&spec), &spec).unwrap();
            prop_assert_eq!(y.to_complex(), (re, im));
        }

        #[test]
        fn inverse(re in -100f64..100.0, im in -100f64..100.0) {
            let x = ComplexFloat::new(re, im);
            prop_assume!(x.magnitude() > 1e-3);
            prop_assert!((x * x.inv().unwrap()).is_one());
        }
    }
}
