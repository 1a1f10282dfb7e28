//! Dense univariate polynomials over a [`Scalar`] field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Rational, Scalar};

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> UPoly<S> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(S::one(), 1)
    }

    pub fn monomial(c: S, degree: usize) -> Self {
        let mut coeffs = vec![S::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    /// `a + b x`.
    pub fn linear(a: S, b: S) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        Self::from_coeffs(coeffs.iter().map(S::from_rational).collect())
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn max_abs_coeff(&self) -> S {
        let mut best = S::zero();
        for c in &self.coeffs {
            let a = c.abs_value();
            if a > best {
                best = a;
            }
        }
        best
    }

    pub fn scale(&self, k: &S) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|c| c.clone() * k).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Number of leading zero coefficients, i.e. the power of `x` dividing `self`.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide by `x^k`; the caller guarantees divisibility.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn deriv(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * S::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![S::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let t = r[i + dd].clone() / &lc;
            if t.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let scale = r[i + j].abs_value();
                let v = r[i + j].clone() - t.clone() * dc;
                r[i + j] = v.flush(&scale);
            }
            r[i + dd] = S::zero();
            q[i] = t;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Exact quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = S::one() / self.lc();
        self.scale(&inv)
    }

    /// Monic greatest common divisor. Only meaningful over an exact field.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.divrem(&y);
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    /// `1 - x^2`.
    pub fn one_minus_square() -> Self {
        Self::from_coeffs(vec![S::one(), S::zero(), -S::one()])
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> UPoly<T> {
        UPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<'a, S: Scalar> Add for &'a UPoly<S> {
    type Output = UPoly<S>;
    fn add(self, rhs: Self) -> UPoly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeff(i);
            let b = rhs.coeff(i);
            let scale = if S::EXACT {
                S::zero()
            } else if a.abs_value() > b.abs_value() {
                a.abs_value()
            } else {
                b.abs_value()
            };
            out.push((a + b).flush(&scale));
        }
        UPoly::from_coeffs(out)
    }
}

impl<'a, S: Scalar> Sub for &'a UPoly<S> {
    type Output = UPoly<S>;
    fn sub(self, rhs: Self) -> UPoly<S> {
        self + &(-rhs)
    }
}

impl<'a, S: Scalar> Neg for &'a UPoly<S> {
    type Output = UPoly<S>;
    fn neg(self) -> UPoly<S> {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<'a, S: Scalar> Mul for &'a UPoly<S> {
    type Output = UPoly<S>;
    fn mul(self, rhs: Self) -> UPoly<S> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = vec![S::zero(); n];
        let mut scale = vec![S::zero(); if S::EXACT { 0 } else { n }];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a.clone() * b;
                if !S::EXACT {
                    let at = t.abs_value();
                    if at > scale[i + j] {
                        scale[i + j] = at;
                    }
                }
                out[i + j] += &t;
            }
        }
        if !S::EXACT {
            out = out.into_iter().zip(scale.iter()).map(|(c, s)| c.flush(s)).collect();
        }
        UPoly::from_coeffs(out)
    }
}

impl<S: Scalar> fmt::Display for UPoly<S> {
    /// Terms in increasing degree, e.g. `1 - 3/2*c^2`; the variable is printed as `x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl<S: Scalar> UPoly<S> {
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative_value();
            let mag = c.abs_value();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly<Rational> {
        UPoly::from_coeffs(c.iter().map(|&v| Rational::from_i64(v)).collect())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[3, -2, 0, 5, 1]);
        let d = p(&[1, 0, -1]);
        let (q, r) = a.divrem(&d);
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_finds_common_factor() {
        let common = p(&[1, 1]);
        let a = &common * &p(&[-2, 1]);
        let b = &common * &p(&[3, 0, 1]);
        assert_eq!(UPoly::gcd(&a, &b), common);
    }

    #[test]
    fn compose_and_eval_agree() {
        let a = p(&[1, -1, 2]);
        let inner = p(&[0, 3, 1]);
        let x = Rational::from_ratio(2, 3);
        assert_eq!(a.compose(&inner).eval(&x), a.eval(&inner.eval(&x)));
    }

    #[test]
    fn render_is_readable() {
        assert_eq!(p(&[1, 0, -3]).render("c"), "1 - 3*c^2");
        assert_eq!(UPoly::<Rational>::zero().render("c"), "0");
    }
}
