//! Model parameters, eigenfunctions, Hamiltonians and the physical spectrum.

mod eigen;
mod hamiltonian;
mod levels;
mod polys;

pub use eigen::{gamma_ratio, phi_norm_squared, theta_norm_ratio, Eigenfunction, Lissajous, Separable};
pub use hamiltonian::{apply_full_h, apply_htheta, verify_eigen_equations};
pub use levels::{physical_spectrum, EnergyLevel};
pub use polys::{gegenbauer, jacobi};

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Real, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    OneParam,
    TwoParam,
    ExtTwoParam,
}

impl Variant {
    pub fn tag(self) -> &'static str {
        match self {
            Variant::OneParam => "1P",
            Variant::TwoParam => "2P",
            Variant::ExtTwoParam => "E2",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "1P" | "one" | "OneParam" => Some(Variant::OneParam),
            "2P" | "two" | "TwoParam" => Some(Variant::TwoParam),
            "E2" | "ext" | "ExtTwoParam" => Some(Variant::ExtTwoParam),
            _ => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `(mu, nu)`: theta and phi quantum numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateIndex {
    pub mu: u32,
    pub nu: u32,
}

impl StateIndex {
    pub fn new(mu: u32, nu: u32) -> Self {
        Self { mu, nu }
    }

    /// `(mu + dmu, nu + dnu)` if both stay non-negative.
    pub fn offset(self, dmu: i64, dnu: i64) -> Option<Self> {
        let mu = self.mu as i64 + dmu;
        let nu = self.nu as i64 + dnu;
        (mu >= 0 && nu >= 0).then(|| Self::new(mu as u32, nu as u32))
    }
}

impl fmt::Display for StateIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.mu, self.nu)
    }
}

/// A Lissajous model on the sphere with `k = m/n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Model<S> {
    pub variant: Variant,
    pub m: u32,
    pub n: u32,
    pub alpha: S,
    pub beta: S,
    pub m1: u32,
}

pub type ModelParams = Model<Rational>;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl<S: Scalar> Model<S> {
    pub fn one_param(m: u32, n: u32, alpha: S) -> Result<Self> {
        Self {
            variant: Variant::OneParam,
            m,
            n,
            alpha,
            beta: S::one() / S::from_i64(2),
            m1: 0,
        }
        .validated()
    }

    pub fn two_param(m: u32, n: u32, alpha: S, beta: S) -> Result<Self> {
        Self {
            variant: Variant::TwoParam,
            m,
            n,
            alpha,
            beta,
            m1: 0,
        }
        .validated()
    }

    pub fn ext_two_param(m: u32, n: u32, alpha: S, beta: S, m1: u32) -> Result<Self> {
        Self {
            variant: Variant::ExtTwoParam,
            m,
            n,
            alpha,
            beta,
            m1,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        if self.m == 0 || self.n == 0 {
            return bad("m and n must be positive".into());
        }
        if gcd(self.m, self.n) != 1 {
            return bad(format!("m={} and n={} are not coprime", self.m, self.n));
        }
        if self.alpha < S::one() {
            return bad(format!("alpha={} must be at least 1", self.alpha));
        }
        match self.variant {
            Variant::OneParam => {
                if self.beta != S::one() / S::from_i64(2) {
                    return bad("beta is fixed to 1/2 in the one-parameter model".into());
                }
            }
            Variant::TwoParam => {
                if self.beta < S::one() {
                    return bad(format!("beta={} must be at least 1", self.beta));
                }
            }
            Variant::ExtTwoParam => {
                if self.beta < S::from_i64(2) {
                    return bad(format!("beta={} must be at least 2", self.beta));
                }
                if self.m1 == 0 {
                    return bad("m1 must be positive".into());
                }
                if self.alpha <= S::from_i64(self.m1 as i64 - 1) {
                    return bad(format!("alpha={} must exceed m1-1={}", self.alpha, self.m1 - 1));
                }
            }
        }
        Ok(())
    }

    pub fn k(&self) -> S {
        S::from_i64(self.m as i64) / S::from_i64(self.n as i64)
    }

    /// `(1 + 2 alpha) / 2`, the one-parameter Gegenbauer index.
    pub fn lambda(&self) -> S {
        self.alpha.clone() + S::one() / S::from_i64(2)
    }

    /// Square root of the `H_phi` eigenvalue.
    pub fn epsilon(&self, nu: u32) -> S {
        let nu = S::from_i64(nu as i64);
        match self.variant {
            Variant::OneParam => self.lambda() + nu,
            _ => self.alpha.clone() + &self.beta + S::one() + nu.clone() + nu,
        }
    }

    /// `K = k eps_nu`.
    pub fn big_k(&self, nu: u32) -> S {
        self.k() * self.epsilon(nu)
    }

    /// `E = (K + mu)(K + mu + 1)`.
    pub fn energy(&self, idx: StateIndex) -> S {
        let t = self.big_k(idx.nu) + S::from_i64(idx.mu as i64);
        t.clone() * (t + S::one())
    }

    /// Shift of `sqrt(H_phi)` under `X+`: `n`, or `2n` with two parameters.
    pub fn step(&self) -> u32 {
        match self.variant {
            Variant::OneParam => self.n,
            _ => 2 * self.n,
        }
    }

    /// Number of theta shift factors in `X+`: `m`, or `2m` with two parameters.
    pub fn theta_step(&self) -> u32 {
        match self.variant {
            Variant::OneParam => self.m,
            _ => 2 * self.m,
        }
    }

    /// `(-1)^(n+m)` for one parameter, `+1` otherwise.
    pub fn sign(&self) -> i64 {
        match self.variant {
            Variant::OneParam if (self.n + self.m) % 2 == 1 => -1,
            _ => 1,
        }
    }

    /// The two-parameter model with `(alpha+1, beta-1)` that the extension is built from.
    pub fn partner(&self) -> Self {
        Self {
            variant: Variant::TwoParam,
            m: self.m,
            n: self.n,
            alpha: self.alpha.clone() + S::one(),
            beta: self.beta.clone() - S::one(),
            m1: 0,
        }
    }

    /// `(alpha - beta - 2 m1 + 1)^2`, the factorization energy of the seed.
    pub fn seed_energy(&self) -> S {
        let t = self.alpha.clone() - &self.beta - S::from_i64(2 * self.m1 as i64) + S::one();
        t.clone() * t
    }

    pub fn label(&self) -> String {
        match self.variant {
            Variant::OneParam => format!("1P(m={},n={},alpha={})", self.m, self.n, self.alpha),
            Variant::TwoParam => format!("2P(m={},n={},alpha={},beta={})", self.m, self.n, self.alpha, self.beta),
            Variant::ExtTwoParam => format!(
                "E2(m={},n={},alpha={},beta={},m1={})",
                self.m, self.n, self.alpha, self.beta, self.m1
            ),
        }
    }

    pub fn to_real(&self) -> Model<Real> {
        Model {
            variant: self.variant,
            m: self.m,
            n: self.n,
            alpha: self.alpha.to_real(),
            beta: self.beta.to_real(),
            m1: self.m1,
        }
    }
}

impl<S: Scalar> fmt::Display for Model<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}
