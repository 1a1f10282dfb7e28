use std::fmt;

use crate::scalar::{rational_sqrt, Rational, Scalar};

/// `sign * sqrt(radicand)`, the form of every normalized action coefficient.
#[derive(Clone, Debug)]
pub struct RadicalScalar<S> {
    pub sign: i8,
    pub radicand: S,
}

impl<S: Scalar> RadicalScalar<S> {
    pub fn zero() -> Self {
        Self {
            sign: 0,
            radicand: S::zero(),
        }
    }

    /// `sign * sqrt(radicand)`; a zero radicand forces sign 0.
    pub fn new(sign: i8, radicand: S) -> Self {
        if radicand.is_zero() || sign == 0 {
            Self::zero()
        } else {
            Self {
                sign: sign.signum(),
                radicand,
            }
        }
    }

    /// `c * sqrt(ratio)` for a plain scalar `c` and positive `ratio`.
    pub fn from_coefficient(c: &S, ratio: &S) -> Self {
        let sign = if c.is_zero() {
            0
        } else if c.is_negative_value() {
            -1
        } else {
            1
        };
        Self::new(sign, c.clone() * c * ratio)
    }

    /// Value squared.
    pub fn square(&self) -> S {
        self.radicand.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn neg(&self) -> Self {
        Self {
            sign: -self.sign,
            radicand: self.radicand.clone(),
        }
    }

    pub fn scale_sign(&self, s: i64) -> Self {
        if s < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Multiply by a plain scalar.
    pub fn scale(&self, k: &S) -> Self {
        let sign = if k.is_zero() {
            0
        } else if k.is_negative_value() {
            -1
        } else {
            1
        };
        Self::new(self.sign * sign, self.radicand.clone() * k * k)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.sign * other.sign, self.radicand.clone() * &other.radicand)
    }

    /// Equality of values; over an inexact field the radicands are compared within tolerance.
    pub fn agrees(&self, other: &Self) -> bool {
        if !self.radicand.agrees(&other.radicand) {
            return false;
        }
        let negligible = self.radicand.agrees(&S::zero());
        negligible || self.sign == other.sign
    }

    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * self.radicand.to_f64().sqrt()
    }
}

impl RadicalScalar<Rational> {
    /// Sum, defined when the radicands differ by a rational square factor.
    pub fn add(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        let q = rational_sqrt(&(other.radicand.clone() / &self.radicand))?;
        let coeff = Rational::from_i64(self.sign as i64) + q * Rational::from_i64(other.sign as i64);
        Some(Self::from_coefficient(&coeff, &self.radicand))
    }
}

impl<S: Scalar> PartialEq for RadicalScalar<S> {
    fn eq(&self, other: &Self) -> bool {
        self.agrees(other)
    }
}

impl<S: Scalar> fmt::Display for RadicalScalar<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            1 => write!(f, "sqrt({})", self.radicand),
            _ => write!(f, "-sqrt({})", self.radicand),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn products_and_sums() {
        let a = RadicalScalar::new(1, q(2, 1));
        let b = RadicalScalar::new(-1, q(8, 1));
        assert_eq!(a.mul(&b), RadicalScalar::new(-1, q(16, 1)));
        // sqrt2 - sqrt8 = -sqrt2
        assert_eq!(a.add(&b).unwrap(), RadicalScalar::new(-1, q(2, 1)));
        assert!(a.add(&RadicalScalar::new(1, q(3, 1))).is_none());
        assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn from_coefficient_keeps_sign() {
        let r = RadicalScalar::from_coefficient(&q(-3, 2), &q(1, 3));
        assert_eq!(r.sign, -1);
        assert_eq!(r.radicand, q(3, 4));
        assert_eq!(r.to_string(), "-sqrt(3/4)");
    }
}
