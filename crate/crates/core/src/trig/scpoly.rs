//! Polynomials in `(s, c) = (sin x, cos x)` reduced modulo `s^2 + c^2 - 1`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::poly::UPoly;
use crate::scalar::Scalar;

/// `p0(c) + s * p1(c)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SCPoly<S> {
    pub p0: UPoly<S>,
    pub p1: UPoly<S>,
}

impl<S: Scalar> SCPoly<S> {
    pub fn new(p0: UPoly<S>, p1: UPoly<S>) -> Self {
        Self { p0, p1 }
    }

    pub fn zero() -> Self {
        Self::new(UPoly::zero(), UPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_c(UPoly::one())
    }

    pub fn from_c(p: UPoly<S>) -> Self {
        Self::new(p, UPoly::zero())
    }

    /// The polynomial `s`.
    pub fn s() -> Self {
        Self::new(UPoly::zero(), UPoly::one())
    }

    /// The polynomial `c`.
    pub fn c() -> Self {
        Self::from_c(UPoly::x())
    }

    /// Rewrite a polynomial in `s` alone.
    pub fn from_s(p: &UPoly<S>) -> Self {
        let mut acc = Self::zero();
        let mut power = Self::one();
        for coeff in p.coeffs() {
            acc = &acc + &power.scale(coeff);
            power = power.mul_s();
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.p0.is_zero() && self.p1.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.p1.is_zero() && self.p0.degree().unwrap_or(0) == 0
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(self.p0.scale(k), self.p1.scale(k))
    }

    pub fn mul_c_poly(&self, p: &UPoly<S>) -> Self {
        Self::new(&self.p0 * p, &self.p1 * p)
    }

    /// Multiply by `s`: `s (p0 + s p1) = (1 - c^2) p1 + s p0`.
    pub fn mul_s(&self) -> Self {
        Self::new(&self.p1 * &UPoly::one_minus_square(), self.p0.clone())
    }

    /// `p0 - s p1`.
    pub fn conj(&self) -> Self {
        Self::new(self.p0.clone(), -&self.p1)
    }

    /// `(p0 + s p1)(p0 - s p1)`, free of `s`.
    pub fn norm(&self) -> UPoly<S> {
        &(&self.p0 * &self.p0) - &(&(&self.p1 * &self.p1) * &UPoly::one_minus_square())
    }

    /// Derivative with respect to `x`, using `s' = c` and `c' = -s`.
    pub fn deriv(&self) -> Self {
        let c_p1 = self.p1.shift_up(1);
        let p0 = &c_p1 - &(&UPoly::one_minus_square() * &self.p1.deriv());
        let p1 = -&self.p0.deriv();
        Self::new(p0, p1)
    }

    pub fn eval(&self, s: &S, c: &S) -> S {
        self.p0.eval(c) + s.clone() * self.p1.eval(c)
    }

    /// Largest power `c^k` dividing both components.
    pub fn c_order(&self) -> usize {
        match (self.p0.is_zero(), self.p1.is_zero()) {
            (true, true) => 0,
            (true, false) => self.p1.low_order(),
            (false, true) => self.p0.low_order(),
            (false, false) => self.p0.low_order().min(self.p1.low_order()),
        }
    }

    pub fn shift_down_c(&self, k: usize) -> Self {
        Self::new(self.p0.shift_down(k), self.p1.shift_down(k))
    }

    /// `self / s`, when `s` divides `self`.
    pub fn div_s(&self) -> Option<Self> {
        let q = self.p0.div_exact(&UPoly::one_minus_square())?;
        Some(Self::new(self.p1.clone(), q))
    }

    pub fn max_abs_coeff(&self) -> S {
        let a = self.p0.max_abs_coeff();
        let b = self.p1.max_abs_coeff();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn render(&self) -> String {
        match (self.p0.is_zero(), self.p1.is_zero()) {
            (true, true) => "0".into(),
            (false, true) => self.p0.render("c"),
            (true, false) => format!("s*({})", self.p1.render("c")),
            (false, false) => format!("{} + s*({})", self.p0.render("c"), self.p1.render("c")),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SCPoly<T> {
        SCPoly::new(self.p0.map(&f), self.p1.map(&f))
    }
}

impl<'a, S: Scalar> Add for &'a SCPoly<S> {
    type Output = SCPoly<S>;
    fn add(self, rhs: Self) -> SCPoly<S> {
        SCPoly::new(&self.p0 + &rhs.p0, &self.p1 + &rhs.p1)
    }
}

impl<'a, S: Scalar> Sub for &'a SCPoly<S> {
    type Output = SCPoly<S>;
    fn sub(self, rhs: Self) -> SCPoly<S> {
        SCPoly::new(&self.p0 - &rhs.p0, &self.p1 - &rhs.p1)
    }
}

impl<'a, S: Scalar> Neg for &'a SCPoly<S> {
    type Output = SCPoly<S>;
    fn neg(self) -> SCPoly<S> {
        SCPoly::new(-&self.p0, -&self.p1)
    }
}

impl<'a, S: Scalar> Mul for &'a SCPoly<S> {
    type Output = SCPoly<S>;
    fn mul(self, rhs: Self) -> SCPoly<S> {
        let a1b1 = &self.p1 * &rhs.p1;
        let p0 = &(&self.p0 * &rhs.p0) + &(&a1b1 * &UPoly::one_minus_square());
        let p1 = &(&self.p0 * &rhs.p1) + &(&self.p1 * &rhs.p0);
        SCPoly::new(p0, p1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn s_squared_reduces() {
        let s = SCPoly::<Rational>::s();
        let s2 = &s * &s;
        assert_eq!(s2, SCPoly::from_c(UPoly::one_minus_square()));
    }

    #[test]
    fn derivative_of_s_is_c() {
        assert_eq!(SCPoly::<Rational>::s().deriv(), SCPoly::c());
        assert_eq!(SCPoly::<Rational>::c().deriv(), -&SCPoly::s());
    }

    #[test]
    fn norm_times_inverse_is_consistent() {
        let f = SCPoly::new(UPoly::linear(q(1), q(2)), UPoly::constant(q(3)));
        let prod = &f * &f.conj();
        assert_eq!(prod, SCPoly::from_c(f.norm()));
    }

    #[test]
    fn div_s_inverts_mul_s() {
        let f = SCPoly::new(UPoly::linear(q(1), q(2)), UPoly::constant(q(3)));
        assert_eq!(f.mul_s().div_s(), Some(f.clone()));
        assert_eq!(SCPoly::<Rational>::one().div_s(), None);
    }
}
