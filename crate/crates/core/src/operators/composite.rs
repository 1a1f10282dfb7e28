use std::fmt;

use super::ladder::{apply_ladder, apply_lowering, apply_shift, Direction};
use super::radical::RadicalScalar;
use crate::error::{Error, Result};
use crate::orthomodels::{Lissajous, StateIndex};
use crate::scalar::Scalar;
use crate::trig::QuasiTrig;

/// Result of applying `X+` or `X-` to an eigenstate.
#[derive(Clone, Debug)]
pub struct OperatorAction<S> {
    pub direction: Direction,
    pub source: StateIndex,
    /// `None` on annihilation.
    pub target: Option<StateIndex>,
    /// Coefficient between unnormalized eigenfunctions.
    pub unnormalized: S,
    /// Coefficient between normalized eigenfunctions.
    pub normalized: RadicalScalar<S>,
    /// Name of the first factor that produced the zero function.
    pub annihilated_by: Option<String>,
}

impl<S: Scalar> OperatorAction<S> {
    pub fn is_annihilation(&self) -> bool {
        self.target.is_none()
    }

    pub fn normalized_squared(&self) -> S {
        self.normalized.square()
    }

    fn annihilation(direction: Direction, source: StateIndex, factor: String) -> Self {
        Self {
            direction,
            source,
            target: None,
            unnormalized: S::zero(),
            normalized: RadicalScalar::zero(),
            annihilated_by: Some(factor),
        }
    }
}

impl<S: Scalar> fmt::Display for OperatorAction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.target, &self.annihilated_by) {
            (Some(t), _) => write!(f, "X{} {} -> {} * {}", self.direction, self.source, self.normalized, t),
            (None, Some(by)) => write!(f, "X{} {} -> 0 (by {})", self.direction, self.source, by),
            (None, None) => write!(f, "X{} {} -> 0", self.direction, self.source),
        }
    }
}

/// Image of a product `theta(theta) phi(phi)` under `X+-`, where `nu` fixes the
/// ladder indices and `K = k eps_nu`. Returns the two factors, or the name of
/// the factor that annihilated.
pub fn apply_x_product<S: Scalar>(
    sys: &Lissajous<S>,
    dir: Direction,
    nu: u32,
    theta: &QuasiTrig<S>,
    phi: &QuasiTrig<S>,
) -> Result<std::result::Result<(QuasiTrig<S>, QuasiTrig<S>), String>> {
    let m = sys.model();
    let big_k = m.big_k(nu);
    let mut phi = phi.clone();
    let mut theta = theta.clone();
    match dir {
        Direction::Raise => {
            for j in 0..m.n {
                phi = apply_ladder(sys, Direction::Raise, nu + j, &phi)?;
                if phi.is_zero() {
                    return Ok(Err(format!("B+_{}", nu + j)));
                }
            }
            for j in 1..=m.theta_step() {
                let kj = big_k.clone() + S::from_i64(j as i64);
                theta = apply_shift(Direction::Raise, &kj, &theta)?;
                if theta.is_zero() {
                    return Ok(Err(format!("A+_{kj}")));
                }
            }
        }
        Direction::Lower => {
            for j in 0..m.n {
                let Some(from) = nu.checked_sub(j) else {
                    return Err(Error::OutOfLadder(format!("nu={nu} below the ladder")));
                };
                phi = apply_lowering(sys, from, &phi)?;
                if phi.is_zero() {
                    return Ok(Err(format!("B-({from})")));
                }
            }
            for j in 0..m.theta_step() {
                let kj = big_k.clone() - S::from_i64(j as i64);
                theta = apply_shift(Direction::Lower, &kj, &theta)?;
                if theta.is_zero() {
                    return Ok(Err(format!("A-_{kj}")));
                }
            }
        }
    }
    Ok(Ok((theta, phi)))
}

/// Apply `X+-` to the eigenstate `idx` by literal composition of its factors.
pub fn apply_x<S: Scalar>(sys: &Lissajous<S>, dir: Direction, idx: StateIndex) -> Result<OperatorAction<S>> {
    let m = sys.model();
    let psi = sys.eigenfunction(idx)?;
    let (theta, phi) = match apply_x_product(sys, dir, idx.nu, &psi.theta, &psi.phi)? {
        Ok(pair) => pair,
        Err(factor) => return Ok(OperatorAction::annihilation(dir, idx, factor)),
    };
    let mp = m.theta_step() as i64;
    let n = m.n as i64;
    let target = match dir {
        Direction::Raise => idx.offset(-mp, n),
        Direction::Lower => idx.offset(mp, -n),
    }
    .ok_or_else(|| Error::OutOfLadder(format!("X{dir} on {idx}")))?;
    let t = sys.eigenfunction(target)?;
    let r_theta = theta.proportionality(&t.theta)?;
    let r_phi = phi.proportionality(&t.phi)?;
    let unnormalized = r_theta * r_phi;
    let ratio = sys.norm_ratio(idx, target)?;
    Ok(OperatorAction {
        direction: dir,
        source: idx,
        target: Some(target),
        normalized: RadicalScalar::from_coefficient(&unnormalized, &ratio),
        unnormalized,
        annihilated_by: None,
    })
}
