//! Ladder, shift and supercharge operators.

use std::fmt;

use crate::error::Result;
use crate::orthomodels::{Lissajous, Variant};
use crate::poly::UPoly;
use crate::scalar::Scalar;
use crate::trig::{QuasiTrig, Variable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Raise,
    Lower,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Raise => 1,
            Direction::Lower => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Direction::Raise => "+",
            Direction::Lower => "-",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `A+_K = -d + (K-1) cot`, `A-_K = d + K cot`.
pub fn apply_shift<S: Scalar>(dir: Direction, big_k: &S, f: &QuasiTrig<S>) -> Result<QuasiTrig<S>> {
    let d = f.differentiate()?;
    match dir {
        Direction::Raise => d.neg().add(&f.mul_cot().scale(&(big_k.clone() - S::one()))),
        Direction::Lower => d.add(&f.mul_cot().scale(big_k)),
    }
}

/// Ladder operator `B+-_nu` of the model's `H_phi`.
pub fn apply_ladder<S: Scalar>(sys: &Lissajous<S>, dir: Direction, nu: u32, f: &QuasiTrig<S>) -> Result<QuasiTrig<S>> {
    let m = sys.model();
    match m.variant {
        Variant::OneParam => {
            let d = f.differentiate()?.mul_cos();
            let shift = m.lambda() + S::from_i64(nu as i64);
            match dir {
                Direction::Raise => d.neg().add(&f.mul_sin().scale(&shift)),
                Direction::Lower => d.add(&f.mul_sin().scale(&(shift + S::one()))),
            }
        }
        Variant::TwoParam => tpt_ladder(&m.alpha, &m.beta, dir, nu, f),
        Variant::ExtTwoParam => {
            let a = m.alpha.clone() + S::one();
            let b = m.beta.clone() - S::one();
            let inner = sys.apply_supercharge(true, f)?;
            let moved = tpt_ladder(&a, &b, dir, nu, &inner)?;
            sys.apply_supercharge(false, &moved)
        }
    }
}

/// The ladder operator that lowers `Phi_nu` to `Phi_{nu-1}`.
///
/// With one parameter this is `B-_{nu-1} = c d + (lambda + nu) s`, which also
/// makes sense at `nu = 0`, where it annihilates the ground state.
pub fn apply_lowering<S: Scalar>(sys: &Lissajous<S>, nu: u32, f: &QuasiTrig<S>) -> Result<QuasiTrig<S>> {
    let m = sys.model();
    match m.variant {
        Variant::OneParam => {
            let d = f.differentiate()?.mul_cos();
            d.add(&f.mul_sin().scale(&(m.lambda() + S::from_i64(nu as i64))))
        }
        _ => apply_ladder(sys, Direction::Lower, nu, f),
    }
}

/// Two-parameter ladder with `sin 2x = 2sc` and `cos 2x = 2c^2 - 1`.
fn tpt_ladder<S: Scalar>(a: &S, b: &S, dir: Direction, nu: u32, f: &QuasiTrig<S>) -> Result<QuasiTrig<S>> {
    let two = S::from_i64(2);
    let base = a.clone() + b + S::from_i64(2 * nu as i64);
    let (deriv_coeff, cos_coeff) = match dir {
        Direction::Raise => {
            let t = base.clone() + &two;
            (t.clone(), (base.clone() + S::one()) * t)
        }
        Direction::Lower => (-base.clone(), (base.clone() + S::one()) * &base),
    };
    let constant = b.clone() * b - a.clone() * a;
    let d = f
        .differentiate()?
        .mul_sin_cos(&S::one(), &S::one())
        .scale(&(deriv_coeff * &two));
    let mult = UPoly::from_coeffs(vec![constant - &cos_coeff, S::zero(), cos_coeff * &two]);
    d.add(&f.mul(&QuasiTrig::cos_poly(Variable::Phi, mult))?)
}

/// Supercharge `A` (or `A^dagger`) of the extended model.
pub fn apply_supercharge<S: Scalar>(sys: &Lissajous<S>, dagger: bool, f: &QuasiTrig<S>) -> Result<QuasiTrig<S>> {
    sys.apply_supercharge(dagger, f)
}
