//! Closed class of functions `sin^a x cos^b x * N(s, c) / D(c)`.
//!
//! Every wavefunction and every operator image in the crate lives in this
//! class. `N` is reduced modulo `s^2 + c^2 - 1` to the form `p0(c) + s p1(c)`
//! and `D` is kept free of `s` by multiplying through with the conjugate
//! whenever we divide. In exact mode the representation is canonical:
//! common factors are cancelled, powers of `s` and `c` are moved into the
//! exponents and `D` is monic, so zero testing is structural.
//!
//! Over [`Real`] the same algebra runs with floating coefficients; equality is
//! then decided by collocation at deterministic sample points.

mod scpoly;

pub use scpoly::SCPoly;

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::UPoly;
use crate::scalar::{NumericContext, Rational, Real, Scalar};

/// Which angle a function depends on. Functions of different angles never mix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    Theta,
    Phi,
}

#[derive(Clone, Debug)]
pub struct QuasiTrig<S> {
    var: Variable,
    sin_exp: S,
    cos_exp: S,
    num: SCPoly<S>,
    den: UPoly<S>,
}

pub type QuasiTrigFunction = QuasiTrig<Rational>;

impl<S: Scalar> QuasiTrig<S> {
    pub fn zero(var: Variable) -> Self {
        Self {
            var,
            sin_exp: S::zero(),
            cos_exp: S::zero(),
            num: SCPoly::zero(),
            den: UPoly::one(),
        }
    }

    pub fn constant(var: Variable, value: S) -> Self {
        Self::from_parts(var, S::zero(), S::zero(), SCPoly::from_c(UPoly::constant(value)), UPoly::one())
            .expect("unit denominator")
    }

    pub fn one(var: Variable) -> Self {
        Self::constant(var, S::one())
    }

    /// `sin^a x cos^b x`.
    pub fn sin_cos(var: Variable, a: S, b: S) -> Self {
        Self::from_parts(var, a, b, SCPoly::one(), UPoly::one()).expect("unit denominator")
    }

    /// A polynomial in `cos x`.
    pub fn cos_poly(var: Variable, p: UPoly<S>) -> Self {
        Self::from_parts(var, S::zero(), S::zero(), SCPoly::from_c(p), UPoly::one()).expect("unit denominator")
    }

    /// A polynomial in `sin x`.
    pub fn sin_poly(var: Variable, p: &UPoly<S>) -> Self {
        Self::from_parts(var, S::zero(), S::zero(), SCPoly::from_s(p), UPoly::one()).expect("unit denominator")
    }

    pub fn from_parts(var: Variable, sin_exp: S, cos_exp: S, num: SCPoly<S>, den: UPoly<S>) -> Result<Self> {
        Self {
            var,
            sin_exp,
            cos_exp,
            num,
            den,
        }
        .canonicalize()
    }

    pub fn variable(&self) -> Variable {
        self.var
    }

    pub fn sin_exp(&self) -> &S {
        &self.sin_exp
    }

    pub fn cos_exp(&self) -> &S {
        &self.cos_exp
    }

    pub fn numerator(&self) -> &SCPoly<S> {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly<S> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Restore the canonical form. Idempotent.
    pub fn canonicalize(mut self) -> Result<Self> {
        if self.den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if self.num.is_zero() {
            return Ok(Self::zero(self.var));
        }
        if S::EXACT {
            let g = UPoly::gcd(&UPoly::gcd(&self.num.p0, &self.num.p1), &self.den);
            if g.degree().unwrap_or(0) > 0 {
                self.num = SCPoly::new(
                    self.num.p0.div_exact(&g).expect("gcd divides"),
                    self.num.p1.div_exact(&g).expect("gcd divides"),
                );
                self.den = self.den.div_exact(&g).expect("gcd divides");
            }
        }
        let k = self.den.low_order();
        if k > 0 {
            self.den = self.den.shift_down(k);
            self.cos_exp -= &S::from_i64(k as i64);
        }
        let k = self.num.c_order();
        if k > 0 {
            self.num = self.num.shift_down_c(k);
            self.cos_exp += &S::from_i64(k as i64);
        }
        if S::EXACT {
            let one_minus = UPoly::one_minus_square();
            while let Some(q) = self.den.div_exact(&one_minus) {
                self.den = q;
                self.sin_exp -= &S::from_i64(2);
            }
            while let Some(q) = self.num.div_s() {
                self.num = q;
                self.sin_exp += &S::one();
            }
        }
        let lc = self.den.lc();
        if !lc.is_one() {
            let inv = S::one() / lc;
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
        Ok(self)
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.var, other.var))
        }
    }

    /// `s^a c^b` as a numerator multiplier, for non-negative integer `a`, `b`.
    fn monomial_num(a: i64, b: i64) -> SCPoly<S> {
        let mut out = SCPoly::from_c(UPoly::monomial(S::one(), b as usize));
        for _ in 0..a {
            out = out.mul_s();
        }
        out
    }

    fn exponent_gap(&self, other: &Self) -> Result<(i64, i64)> {
        let da = (self.sin_exp.clone() - &other.sin_exp).as_integer();
        let db = (self.cos_exp.clone() - &other.cos_exp).as_integer();
        match (da, db) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::IncompatibleExponents(
                self.sin_exp.to_string(),
                self.cos_exp.to_string(),
                other.sin_exp.to_string(),
                other.cos_exp.to_string(),
            )),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let (da, db) = self.exponent_gap(other)?;
        // Common quasi-factor uses the smaller exponent of each kind.
        let (sin_exp, fa, ga) = if da >= 0 {
            (other.sin_exp.clone(), da, 0)
        } else {
            (self.sin_exp.clone(), 0, -da)
        };
        let (cos_exp, fb, gb) = if db >= 0 {
            (other.cos_exp.clone(), db, 0)
        } else {
            (self.cos_exp.clone(), 0, -db)
        };
        let fnum = &self.num * &Self::monomial_num(fa, fb);
        let gnum = &other.num * &Self::monomial_num(ga, gb);
        if self.den == other.den {
            return Self::from_parts(self.var, sin_exp, cos_exp, &fnum + &gnum, self.den.clone());
        }
        let num = &fnum.mul_c_poly(&other.den) + &gnum.mul_c_poly(&self.den);
        Self::from_parts(self.var, sin_exp, cos_exp, num, &self.den * &other.den)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &S) -> Self {
        if k.is_zero() || self.is_zero() {
            return Self::zero(self.var);
        }
        Self {
            num: self.num.scale(k),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.var));
        }
        Self::from_parts(
            self.var,
            self.sin_exp.clone() + &other.sin_exp,
            self.cos_exp.clone() + &other.cos_exp,
            &self.num * &other.num,
            &self.den * &other.den,
        )
    }

    /// Multiply by `sin^a cos^b`; only the exponents change.
    pub fn mul_sin_cos(&self, a: &S, b: &S) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self {
            sin_exp: self.sin_exp.clone() + a,
            cos_exp: self.cos_exp.clone() + b,
            ..self.clone()
        }
    }

    /// Multiply by `cot x`.
    pub fn mul_cot(&self) -> Self {
        self.mul_sin_cos(&-S::one(), &S::one())
    }

    /// Multiply by `tan x`.
    pub fn mul_tan(&self) -> Self {
        self.mul_sin_cos(&S::one(), &-S::one())
    }

    pub fn mul_sin(&self) -> Self {
        self.mul_sin_cos(&S::one(), &S::zero())
    }

    pub fn mul_cos(&self) -> Self {
        self.mul_sin_cos(&S::zero(), &S::one())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let conj = other.num.conj();
        let num = &(&self.num * &conj) * &SCPoly::from_c(other.den.clone());
        let den = &self.den * &other.num.norm();
        Self::from_parts(
            self.var,
            self.sin_exp.clone() - &other.sin_exp,
            self.cos_exp.clone() - &other.cos_exp,
            num,
            den,
        )
    }

    /// Derivative with respect to the angle.
    pub fn differentiate(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let a = &self.sin_exp;
        let b = &self.cos_exp;
        // (a c^2 - b s^2) = (a + b) c^2 - b
        let weight = UPoly::from_coeffs(vec![-b.clone(), S::zero(), a.clone() + b]);
        let sc = SCPoly::new(UPoly::zero(), UPoly::x());
        let num = if self.den.degree() == Some(0) {
            &self.num.mul_c_poly(&weight) + &(&sc * &self.num.deriv())
        } else {
            let nd = self.num.mul_c_poly(&self.den);
            // d/dx D(c) = -s D'(c)
            let dprime = SCPoly::new(UPoly::zero(), -&self.den.deriv());
            let inner = &self.num.deriv().mul_c_poly(&self.den) - &(&self.num * &dprime);
            &nd.mul_c_poly(&weight) + &(&sc * &inner)
        };
        let den = &self.den * &self.den;
        Self::from_parts(
            self.var,
            a.clone() - S::one(),
            b.clone() - S::one(),
            num,
            den,
        )
    }

    /// `f' / f`.
    pub fn log_derivative(&self) -> Result<Self> {
        self.differentiate()?.div(self)
    }

    /// The constant `r` with `self = r * other`.
    pub fn proportionality(&self, other: &Self) -> Result<S> {
        self.check_var(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(S::zero());
        }
        if S::EXACT {
            let q = self.div(other)?;
            if q.sin_exp.is_zero() && q.cos_exp.is_zero() && q.den.is_one() && q.num.is_constant() {
                Ok(q.num.p0.coeff(0))
            } else {
                Err(Error::NotProportional)
            }
        } else {
            let points = sample_points();
            let fv = self.evaluate_all(&points)?;
            let gv = other.evaluate_all(&points)?;
            let mut best = 0;
            for i in 1..gv.len() {
                if gv[i].abs_value() > gv[best].abs_value() {
                    best = i;
                }
            }
            let r = S::from_real(&(fv[best].clone() / &gv[best])).ok_or(Error::Unsupported("an inexact field".into()))?;
            let scaled: Vec<Real> = gv.iter().map(|g| g.clone() * &r.to_real()).collect();
            if collocation_agrees(&fv, &scaled) {
                Ok(r)
            } else {
                Err(Error::NotProportional)
            }
        }
    }

    /// Exact equality, or collocation agreement in numeric mode.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_var(other)?;
        if S::EXACT {
            return Ok(self.sub(other).map(|d| d.is_zero()).unwrap_or(false));
        }
        let points = sample_points();
        Ok(collocation_agrees(&self.evaluate_all(&points)?, &other.evaluate_all(&points)?))
    }

    pub fn evaluate(&self, x: &Real) -> Result<Real> {
        let s = x.sin();
        let c = x.cos();
        let den = self.den.map(|v| v.to_real()).eval(&c);
        let den_scale = self.den.map(|v| v.to_real()).max_abs_coeff();
        let tol = Real::new(NumericContext::current().tolerance);
        if den.abs_value() <= den_scale * &tol {
            return Err(Error::PoleAtPoint(x.to_string()));
        }
        let num = self.num.map(|v| v.to_real()).eval(&s, &c);
        let sa = signed_power(&s, &self.sin_exp.to_real(), x)?;
        let cb = signed_power(&c, &self.cos_exp.to_real(), x)?;
        Ok(sa * &cb * &num / &den)
    }

    /// Evaluate at `precision_bits` of working precision.
    pub fn evaluate_numeric(&self, x: f64, precision_bits: u32) -> Result<Real> {
        let ctx = NumericContext {
            precision_bits,
            ..NumericContext::current()
        };
        let _guard = ctx.enter();
        self.evaluate(&Real::new(x))
    }

    pub fn evaluate_all(&self, points: &[Real]) -> Result<Vec<Real>> {
        points.iter().map(|x| self.evaluate(x)).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> QuasiTrig<T> {
        QuasiTrig {
            var: self.var,
            sin_exp: f(&self.sin_exp),
            cos_exp: f(&self.cos_exp),
            num: self.num.map(&f),
            den: self.den.map(&f),
        }
    }
}

fn signed_power(base: &Real, e: &Real, x: &Real) -> Result<Real> {
    if e.is_zero() {
        return Ok(Real::one());
    }
    if base.is_positive_value() {
        return Ok(base.pow(e));
    }
    match e.as_integer() {
        Some(k) => Ok(base.pow_i(k as i32)),
        None => Err(Error::OutsideDomain(x.to_string())),
    }
}

/// Deterministic collocation nodes `(pi/2) (2i+1) / (2N)` in `(0, pi/2)`.
pub fn sample_points() -> Vec<Real> {
    let n = NumericContext::current().samples;
    let half_pi = Real::pi() / Real::from_i64(2);
    (0..n)
        .map(|i| half_pi.clone() * Real::from_i64(2 * i as i64 + 1) / Real::from_i64(2 * n as i64))
        .collect()
}

/// Largest pointwise discrepancy relative to the largest value on the grid.
pub fn collocation_residual(a: &[Real], b: &[Real]) -> f64 {
    let mut scale = Real::zero();
    let mut worst = Real::zero();
    for (x, y) in a.iter().zip(b) {
        for v in [x.abs_value(), y.abs_value()] {
            if v > scale {
                scale = v;
            }
        }
        let d = (x.clone() - y).abs_value();
        if d > worst {
            worst = d;
        }
    }
    if worst.is_zero() {
        return 0.0;
    }
    if scale.is_zero() {
        return f64::INFINITY;
    }
    (worst / scale).to_f64()
}

pub fn collocation_agrees(a: &[Real], b: &[Real]) -> bool {
    collocation_residual(a, b) <= NumericContext::current().tolerance
}

impl<S: Scalar> PartialEq for QuasiTrig<S> {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl<S: Scalar> fmt::Display for QuasiTrig<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sin^{{{}}} cos^{{{}}} * ({})/({})",
            self.sin_exp,
            self.cos_exp,
            self.num.render(),
            self.den.render("c")
        )
    }
}
