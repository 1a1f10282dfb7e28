//! Scalar fields.
//!
//! Everything above this module is generic over [`Scalar`]. Two fields are
//! provided: [`Rational`] (exact, arbitrary size) and [`Real`] (MPFR floats at a
//! configurable precision). Exact mode compares with `==`; numeric mode
//! compares with the relative tolerance of the active [`NumericContext`].

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rug::float::Constant;
use rug::Float;

pub type Rational = BigRational;

/// Field operations shared by exact and high-precision numeric coefficients.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// True when equality is decided exactly.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    fn to_real(&self) -> Real;
    /// `None` for exact fields.
    fn from_real(r: &Real) -> Option<Self>;
    fn abs_value(&self) -> Self;

    /// The integer this value equals (exactly, or to working precision).
    fn as_integer(&self) -> Option<i64>;

    /// Non-negative square root, when it exists in the field.
    fn sqrt_nonneg(&self) -> Option<Self>;

    /// Replace a value that is pure cancellation noise relative to `scale`
    /// by an exact zero. Identity for exact fields.
    fn flush(self, scale: &Self) -> Self;

    /// Relative discrepancy `|a-b| / max(|a|, |b|, 1)`.
    fn residual(&self, other: &Self) -> f64;

    /// Equality in the sense of the field: exact, or within tolerance.
    fn agrees(&self, other: &Self) -> bool;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn is_negative_value(&self) -> bool {
        *self < Self::zero()
    }

    fn is_positive_value(&self) -> bool {
        *self > Self::zero()
    }

    fn powi(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc *= self;
        }
        acc
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_real(&self) -> Real {
        Real::from_rational_value(self)
    }

    fn from_real(_r: &Real) -> Option<Self> {
        None
    }

    fn abs_value(&self) -> Self {
        self.abs()
    }

    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn sqrt_nonneg(&self) -> Option<Self> {
        rational_sqrt(self)
    }

    fn flush(self, _scale: &Self) -> Self {
        self
    }

    fn residual(&self, other: &Self) -> f64 {
        if self == other {
            return 0.0;
        }
        let diff = (self - other).abs();
        let scale = self.abs().max(other.abs()).max(Rational::one());
        Scalar::to_f64(&(diff / scale))
    }

    fn agrees(&self, other: &Self) -> bool {
        self == other
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

/// Parse `"p/q"` or `"p"` into an exact rational. Zero denominators are rejected.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Settings for numeric (collocation) mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericContext {
    pub precision_bits: u32,
    pub tolerance: f64,
    pub samples: usize,
}

impl Default for NumericContext {
    fn default() -> Self {
        Self {
            precision_bits: 256,
            tolerance: 1e-30,
            samples: 64,
        }
    }
}

thread_local! {
    static CONTEXT: Cell<NumericContext> = Cell::new(NumericContext::default());
}

/// Restores the previous numeric context on drop.
pub struct ContextGuard {
    previous: NumericContext,
}

impl Drop for ContextGuard {
    fn drop(&mut self) {
        CONTEXT.with(|c| c.set(self.previous));
    }
}

impl NumericContext {
    pub fn current() -> Self {
        CONTEXT.with(|c| c.get())
    }

    /// Make this context active on the current thread until the guard drops.
    pub fn enter(self) -> ContextGuard {
        let previous = CONTEXT.with(|c| c.replace(self));
        ContextGuard { previous }
    }
}

fn precision() -> u32 {
    NumericContext::current().precision_bits
}

/// High-precision real number backed by MPFR.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Real(pub Float);

impl Real {
    pub fn new(v: f64) -> Self {
        Real(Float::with_val(precision(), v))
    }

    pub fn from_rational_value(q: &Rational) -> Self {
        let prec = precision();
        let num = Float::with_val(prec, Float::parse(q.numer().to_string()).expect("integer text"));
        let den = Float::with_val(prec, Float::parse(q.denom().to_string()).expect("integer text"));
        Real(num / den)
    }

    /// Parse a decimal literal at the active precision.
    pub fn parse_decimal(text: &str) -> Option<Self> {
        let parsed = Float::parse(text.trim()).ok()?;
        Some(Real(Float::with_val(precision(), parsed)))
    }

    pub fn pi() -> Self {
        Real(Float::with_val(precision(), Constant::Pi))
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.clone().sqrt())
    }

    pub fn sin(&self) -> Self {
        Real(self.0.clone().sin())
    }

    pub fn cos(&self) -> Self {
        Real(self.0.clone().cos())
    }

    /// `self^e` for a positive base.
    pub fn pow(&self, e: &Real) -> Self {
        Real(Float::with_val(precision(), rug::ops::Pow::pow(&self.0, &e.0)))
    }

    pub fn pow_i(&self, e: i32) -> Self {
        Real(Float::with_val(precision(), rug::ops::Pow::pow(&self.0, e)))
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    fn cancellation_threshold() -> i32 {
        // Values smaller than scale * 2^-(prec - 24) are treated as rounding noise.
        precision() as i32 - 24
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.0.to_string_radix(10, Some(40)))
    }
}

macro_rules! real_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                Real(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                Real(self.0 $op &rhs.0)
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);
real_binop!(Div, div, /);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl<'a> AddAssign<&'a Real> for Real {
    fn add_assign(&mut self, rhs: &'a Real) {
        self.0 += &rhs.0;
    }
}

impl<'a> SubAssign<&'a Real> for Real {
    fn sub_assign(&mut self, rhs: &'a Real) {
        self.0 -= &rhs.0;
    }
}

impl<'a> MulAssign<&'a Real> for Real {
    fn mul_assign(&mut self, rhs: &'a Real) {
        self.0 *= &rhs.0;
    }
}

impl Zero for Real {
    fn zero() -> Self {
        Real(Float::with_val(precision(), 0))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Real {
    fn one() -> Self {
        Real(Float::with_val(precision(), 1))
    }
}

impl Scalar for Real {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        Real(Float::with_val(precision(), v))
    }

    fn from_rational(q: &Rational) -> Self {
        Real::from_rational_value(q)
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    fn to_real(&self) -> Real {
        self.clone()
    }

    fn from_real(r: &Real) -> Option<Self> {
        Some(r.clone())
    }

    fn abs_value(&self) -> Self {
        Real(self.0.clone().abs())
    }

    fn as_integer(&self) -> Option<i64> {
        let rounded = self.0.clone().round();
        let diff = Float::with_val(precision(), &self.0 - &rounded).abs();
        let scale = Float::with_val(precision(), self.0.clone().abs()).max(&Float::with_val(precision(), 1));
        let limit = scale >> (precision() / 2);
        if diff <= limit {
            Some(rounded.to_f64() as i64)
        } else {
            None
        }
    }

    fn sqrt_nonneg(&self) -> Option<Self> {
        if self.0.cmp0() == Some(Ordering::Less) {
            None
        } else {
            Some(self.sqrt())
        }
    }

    fn flush(self, scale: &Self) -> Self {
        if self.0.is_zero() {
            return self;
        }
        let limit = Float::with_val(precision(), scale.0.clone().abs()) >> Real::cancellation_threshold();
        if Float::with_val(precision(), self.0.clone().abs()) <= limit {
            Real::zero()
        } else {
            self
        }
    }

    fn residual(&self, other: &Self) -> f64 {
        let diff = (self.clone() - other).abs_value();
        let scale = self
            .abs_value()
            .0
            .max(&other.abs_value().0)
            .max(&Float::with_val(precision(), 1));
        (diff.0 / scale).to_f64()
    }

    fn agrees(&self, other: &Self) -> bool {
        self.residual(other) <= NumericContext::current().tolerance
    }
}

/// `x (x+1) ... (x+n-1)`.
pub fn pochhammer<S: Scalar>(x: &S, n: u32) -> S {
    let mut acc = S::one();
    for i in 0..n {
        acc *= &(x.clone() + S::from_i64(i as i64));
    }
    acc
}

/// `x (x-1) ... (x-n+1)`.
pub fn falling<S: Scalar>(x: &S, n: u32) -> S {
    let mut acc = S::one();
    for i in 0..n {
        acc *= &(x.clone() - S::from_i64(i as i64));
    }
    acc
}

/// Generalized binomial coefficient `z choose k` for arbitrary `z`.
pub fn binomial<S: Scalar>(z: &S, k: u32) -> S {
    let mut fact = S::one();
    for i in 1..=k {
        fact *= &S::from_i64(i as i64);
    }
    falling(z, k) / fact
}

pub fn factorial<S: Scalar>(n: u32) -> S {
    pochhammer(&S::one(), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn rational_sqrt_detects_perfect_squares() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
        assert_eq!(rational_sqrt(&q(-1, 1)), None);
    }

    #[test]
    fn parse_rational_rejects_zero_denominator() {
        assert_eq!(parse_rational("3/2"), Some(q(3, 2)));
        assert_eq!(parse_rational(" -4 "), Some(q(-4, 1)));
        assert_eq!(parse_rational("3/0"), None);
        assert_eq!(parse_rational("1.5"), None);
    }

    #[test]
    fn pochhammer_and_falling() {
        assert_eq!(pochhammer(&q(1, 2), 3), q(15, 8));
        assert_eq!(falling(&q(3, 1), 4), q(0, 1));
        assert_eq!(binomial(&q(-3, 1), 2), q(6, 1));
    }

    #[test]
    fn real_flush_removes_noise_only() {
        let _g = NumericContext::default().enter();
        let big = Real::from_i64(1000);
        let tiny = Real::new(1e-75);
        assert!(tiny.clone().flush(&big).0.is_zero());
        let small = Real::new(1e-20);
        assert!(!small.flush(&big).0.is_zero());
    }

    #[test]
    fn real_integer_detection_tolerates_rounding() {
        let _g = NumericContext::default().enter();
        let two = Real::from_i64(2).sqrt();
        let k = two.clone() + Real::from_i64(5);
        let diff = k - &two;
        assert_eq!(diff.as_integer(), Some(5));
        assert_eq!(two.as_integer(), None);
    }
}
