use std::collections::HashMap;
use std::sync::Mutex;

use super::polys::{gegenbauer, jacobi};
use super::{Model, StateIndex, Variant};
use crate::error::{Error, Result};
use crate::poly::UPoly;
use crate::scalar::{factorial, pochhammer, Scalar};
use crate::trig::{QuasiTrig, Variable};

/// Extension data: seed `chi`, its log-derivative and the extra potential term.
#[derive(Debug)]
struct Extension<S> {
    seed: QuasiTrig<S>,
    seed_log_derivative: QuasiTrig<S>,
    seed_polynomial: QuasiTrig<S>,
    extra_potential: QuasiTrig<S>,
}

/// A model together with the symbolic objects needed to act on its states.
#[derive(Debug)]
pub struct Lissajous<S> {
    model: Model<S>,
    ext: Option<Extension<S>>,
    phi_cache: Mutex<HashMap<u32, QuasiTrig<S>>>,
}

/// Unnormalized product state `Theta^K_mu(theta) Phi_nu(phi)`.
#[derive(Clone, Debug)]
pub struct Eigenfunction<S> {
    pub index: StateIndex,
    pub big_k: S,
    pub theta: QuasiTrig<S>,
    pub phi: QuasiTrig<S>,
    /// Squared norm relative to the state `(0, nu mod n)`.
    pub norm_squared: S,
}

/// `P(-cos 2x)` for a polynomial `P`, written in `c = cos x`.
fn in_minus_cos_double<S: Scalar>(p: &UPoly<S>) -> UPoly<S> {
    p.compose(&UPoly::from_coeffs(vec![S::one(), S::zero(), -S::from_i64(2)]))
}

fn half<S: Scalar>() -> S {
    S::one() / S::from_i64(2)
}

impl<S: Scalar> Lissajous<S> {
    pub fn new(model: Model<S>) -> Result<Self> {
        model.validate()?;
        let ext = if model.variant == Variant::ExtTwoParam {
            let a = -(model.alpha.clone() + S::one());
            let b = model.beta.clone() - S::one();
            let p = in_minus_cos_double(&jacobi(model.m1, &a, &b));
            let seed_polynomial = QuasiTrig::cos_poly(Variable::Phi, p);
            let seed = QuasiTrig::sin_cos(
                Variable::Phi,
                model.beta.clone() - half::<S>(),
                -(model.alpha.clone() + half::<S>()),
            )
            .mul(&seed_polynomial)?;
            let seed_log_derivative = seed.log_derivative()?;
            let extra_potential = seed_polynomial
                .log_derivative()?
                .differentiate()?
                .scale(&-S::from_i64(2));
            Some(Extension {
                seed,
                seed_log_derivative,
                seed_polynomial,
                extra_potential,
            })
        } else {
            None
        };
        Ok(Self {
            model,
            ext,
            phi_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn model(&self) -> &Model<S> {
        &self.model
    }

    fn ext(&self) -> Result<&Extension<S>> {
        self.ext
            .as_ref()
            .ok_or_else(|| Error::Unsupported("the extended two-parameter model".into()))
    }

    /// The seed function `chi_{m1}`.
    pub fn seed(&self) -> Result<&QuasiTrig<S>> {
        Ok(&self.ext()?.seed)
    }

    pub fn seed_log_derivative(&self) -> Result<&QuasiTrig<S>> {
        Ok(&self.ext()?.seed_log_derivative)
    }

    /// `P_{m1}^{(-alpha-1, beta-1)}(-cos 2 phi)`.
    pub fn seed_polynomial(&self) -> Result<&QuasiTrig<S>> {
        Ok(&self.ext()?.seed_polynomial)
    }

    /// `sin^K theta C_mu^{(K+1/2)}(-cos theta)`.
    pub fn theta_function(big_k: &S, mu: u32) -> QuasiTrig<S> {
        let c = gegenbauer(mu, &(big_k.clone() + half::<S>())).compose(&UPoly::linear(S::zero(), -S::one()));
        QuasiTrig::cos_poly(Variable::Theta, c).mul_sin_cos(big_k, &S::zero())
    }

    /// Unnormalized `Phi_nu`.
    pub fn phi_function(&self, nu: u32) -> Result<QuasiTrig<S>> {
        if let Some(f) = self.phi_cache.lock().expect("cache lock").get(&nu) {
            return Ok(f.clone());
        }
        let m = &self.model;
        let f = match m.variant {
            Variant::OneParam => {
                let lambda = m.lambda();
                QuasiTrig::sin_poly(Variable::Phi, &gegenbauer(nu, &lambda)).mul_sin_cos(&S::zero(), &lambda)
            }
            Variant::TwoParam => two_param_phi(&m.alpha, &m.beta, nu),
            Variant::ExtTwoParam => self.apply_supercharge(false, &self.partner_phi(nu))?,
        };
        self.phi_cache.lock().expect("cache lock").insert(nu, f.clone());
        Ok(f)
    }

    /// Eigenfunction of the `(alpha+1, beta-1)` partner that the supercharge maps to `Phi_nu`.
    pub fn partner_phi(&self, nu: u32) -> QuasiTrig<S> {
        two_param_phi(&(self.model.alpha.clone() + S::one()), &(self.model.beta.clone() - S::one()), nu)
    }

    /// `A f = f' - (chi'/chi) f`, or `A^dagger f = -f' - (chi'/chi) f`.
    pub fn apply_supercharge(&self, dagger: bool, f: &QuasiTrig<S>) -> Result<QuasiTrig<S>> {
        let w = &self.ext()?.seed_log_derivative;
        let df = f.differentiate()?;
        let wf = w.mul(f)?;
        if dagger {
            df.neg().sub(&wf)
        } else {
            df.sub(&wf)
        }
    }

    /// The variant's `H_phi`.
    pub fn apply_hphi(&self, f: &QuasiTrig<S>) -> Result<QuasiTrig<S>> {
        let m = &self.model;
        let mut out = pt_hamiltonian(&m.alpha, m.variant != Variant::OneParam, &m.beta, f)?;
        if let Some(ext) = &self.ext {
            out = out.add(&ext.extra_potential.mul(f)?)?;
        }
        Ok(out)
    }

    /// `H_phi` of the `(alpha+1, beta-1)` partner.
    pub fn apply_partner_hphi(&self, f: &QuasiTrig<S>) -> Result<QuasiTrig<S>> {
        let a = self.model.alpha.clone() + S::one();
        let b = self.model.beta.clone() - S::one();
        pt_hamiltonian(&a, true, &b, f)
    }

    pub fn eigenfunction(&self, idx: StateIndex) -> Result<Eigenfunction<S>> {
        let big_k = self.model.big_k(idx.nu);
        Ok(Eigenfunction {
            index: idx,
            theta: Self::theta_function(&big_k, idx.mu),
            phi: self.phi_function(idx.nu)?,
            norm_squared: self.norm_squared(idx)?,
            big_k,
        })
    }

    pub fn reference_state(&self, idx: StateIndex) -> StateIndex {
        StateIndex::new(0, idx.nu % self.model.n)
    }

    /// `||psi_idx||^2 / ||psi_ref||^2` with `ref = (0, nu mod n)`.
    pub fn norm_squared(&self, idx: StateIndex) -> Result<S> {
        self.norm_ratio(self.reference_state(idx), idx)
    }

    /// `||psi_to||^2 / ||psi_from||^2` for unnormalized states.
    pub fn norm_ratio(&self, from: StateIndex, to: StateIndex) -> Result<S> {
        let m = &self.model;
        let theta = theta_norm_ratio(&m.big_k(from.nu), from.mu, &m.big_k(to.nu), to.mu)
            .map_err(|_| Error::IncommensurateStates(from.to_string(), to.to_string()))?;
        Ok(theta * phi_norm_squared(m, to.nu)? / phi_norm_squared(m, from.nu)?)
    }
}

fn two_param_phi<S: Scalar>(a: &S, b: &S, nu: u32) -> QuasiTrig<S> {
    let p = in_minus_cos_double(&jacobi(nu, a, b));
    QuasiTrig::cos_poly(Variable::Phi, p).mul_sin_cos(&(b.clone() + half::<S>()), &(a.clone() + half::<S>()))
}

/// `-f'' + (a^2 - 1/4) f / cos^2 [+ (b^2 - 1/4) f / sin^2]`.
fn pt_hamiltonian<S: Scalar>(a: &S, with_b: bool, b: &S, f: &QuasiTrig<S>) -> Result<QuasiTrig<S>> {
    let quarter = S::one() / S::from_i64(4);
    let mut out = f.differentiate()?.differentiate()?.neg();
    let ca = a.clone() * a - &quarter;
    out = out.add(&f.mul_sin_cos(&S::zero(), &-S::from_i64(2)).scale(&ca))?;
    if with_b {
        let cb = b.clone() * b - &quarter;
        out = out.add(&f.mul_sin_cos(&-S::from_i64(2), &S::zero()).scale(&cb))?;
    }
    Ok(out)
}

/// `Gamma(x + j) / Gamma(x)` for integer `j`.
pub fn gamma_ratio<S: Scalar>(x: &S, j: i64) -> Result<S> {
    if j >= 0 {
        Ok(pochhammer(x, j as u32))
    } else {
        let d = pochhammer(&(x.clone() + S::from_i64(j)), (-j) as u32);
        if d.is_zero() {
            Err(Error::InvalidParameters(format!("Gamma pole at {x}{j:+}")))
        } else {
            Ok(S::one() / d)
        }
    }
}

/// Ratio of squared theta norms, `||Theta^{K2}_{mu2}||^2 / ||Theta^{K1}_{mu1}||^2`,
/// from `||Theta^K_mu||^2 = pi 4^-K Gamma(mu+2K+1) / (mu! (mu+K+1/2) Gamma(K+1/2)^2)`.
/// Only defined when `K2 - K1` is an integer.
pub fn theta_norm_ratio<S: Scalar>(k1: &S, mu1: u32, k2: &S, mu2: u32) -> Result<S> {
    let j = (k2.clone() - k1)
        .as_integer()
        .ok_or_else(|| Error::IncommensurateStates(k1.to_string(), k2.to_string()))?;
    let h = half::<S>();
    let four_pow = if j >= 0 {
        S::one() / S::from_i64(4).powi(j as u32)
    } else {
        S::from_i64(4).powi((-j) as u32)
    };
    let g1 = gamma_ratio(
        &(S::from_i64(mu1 as i64) + k1.clone() + k1 + S::one()),
        mu2 as i64 - mu1 as i64 + 2 * j,
    )?;
    let facts = factorial::<S>(mu1) / factorial::<S>(mu2);
    let lin = (S::from_i64(mu1 as i64) + k1 + &h) / (S::from_i64(mu2 as i64) + k2 + &h);
    let g2 = gamma_ratio(&(k1.clone() + &h), j)?;
    Ok(four_pow * g1 * facts * lin / (g2.clone() * g2))
}

/// Squared norm of unnormalized `Phi_nu` relative to `Phi_0`.
pub fn phi_norm_squared<S: Scalar>(m: &Model<S>, nu: u32) -> Result<S> {
    let nu_s = S::from_i64(nu as i64);
    let fact = factorial::<S>(nu);
    Ok(match m.variant {
        Variant::OneParam => {
            let l = m.lambda();
            pochhammer(&(l.clone() + &l), nu) * &l / ((nu_s + &l) * fact)
        }
        Variant::TwoParam => {
            let s = m.alpha.clone() + &m.beta + S::one();
            let top = pochhammer(&(m.alpha.clone() + S::one()), nu) * pochhammer(&(m.beta.clone() + S::one()), nu) * &s;
            top / ((s.clone() + nu_s.clone() + nu_s) * fact * pochhammer(&s, nu))
        }
        Variant::ExtTwoParam => {
            let s = m.alpha.clone() + &m.beta + S::one();
            let m1 = S::from_i64(m.m1 as i64);
            let a0 = m.alpha.clone() - &m1 + S::one();
            let b0 = m.beta.clone() + &m1;
            let shift = (a0.clone() + &nu_s) * (b0.clone() + &nu_s) / (a0 * b0);
            let top = pochhammer(&(m.alpha.clone() + S::from_i64(2)), nu) * pochhammer(&m.beta, nu) * &s;
            shift * top / ((s.clone() + nu_s.clone() + nu_s) * fact * pochhammer(&s, nu))
        }
    })
}

/// Finite sum of products `theta_i(theta) phi_i(phi)`.
#[derive(Clone, Debug)]
pub struct Separable<S> {
    pub terms: Vec<(QuasiTrig<S>, QuasiTrig<S>)>,
}

impl<S: Scalar> Separable<S> {
    pub fn single(theta: QuasiTrig<S>, phi: QuasiTrig<S>) -> Self {
        Self {
            terms: vec![(theta, phi)],
        }
    }

    pub fn push(&mut self, theta: QuasiTrig<S>, phi: QuasiTrig<S>) {
        self.terms.push((theta, phi));
    }

    /// Merge terms whose phi factors are proportional.
    pub fn collect(&self) -> Result<Self> {
        let mut out: Vec<(QuasiTrig<S>, QuasiTrig<S>)> = Vec::new();
        'terms: for (t, p) in &self.terms {
            if t.is_zero() || p.is_zero() {
                continue;
            }
            for (ot, op) in out.iter_mut() {
                if let Ok(r) = p.proportionality(op) {
                    *ot = ot.add(&t.scale(&r))?;
                    continue 'terms;
                }
            }
            out.push((t.clone(), p.clone()));
        }
        out.retain(|(t, _)| !t.is_zero());
        Ok(Self { terms: out })
    }

    /// The constant `r` with `self = r * theta(theta) phi(phi)`.
    pub fn proportionality(&self, theta: &QuasiTrig<S>, phi: &QuasiTrig<S>) -> Result<S> {
        let mut merged = QuasiTrig::zero(Variable::Theta);
        for (t, p) in &self.terms {
            if t.is_zero() || p.is_zero() {
                continue;
            }
            let r = p.proportionality(phi)?;
            merged = merged.add(&t.scale(&r))?;
        }
        merged.proportionality(theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthomodels::ModelParams;
    use crate::scalar::Rational;
    use crate::trig::SCPoly;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn one_param_ground_state() {
        let sys = Lissajous::new(ModelParams::one_param(1, 1, q(1, 1)).unwrap()).unwrap();
        let e = sys.eigenfunction(StateIndex::new(0, 0)).unwrap();
        assert!(e.phi == QuasiTrig::sin_cos(Variable::Phi, q(0, 1), q(3, 2)));
        assert!(e.theta == QuasiTrig::sin_cos(Variable::Theta, q(3, 2), q(0, 1)));
        assert_eq!(e.norm_squared, q(1, 1));
    }

    #[test]
    fn two_param_ground_state() {
        let sys = Lissajous::new(ModelParams::two_param(1, 2, q(3, 2), q(5, 2)).unwrap()).unwrap();
        let phi = sys.phi_function(0).unwrap();
        assert!(phi == QuasiTrig::sin_cos(Variable::Phi, q(3, 1), q(2, 1)));
    }

    #[test]
    fn extended_ground_state_is_a_wronskian() {
        let sys = Lissajous::new(ModelParams::ext_two_param(1, 1, q(2, 1), q(2, 1), 1).unwrap()).unwrap();
        let chi = sys.seed().unwrap().clone();
        let g = sys.partner_phi(0);
        // W(chi, g) / chi = g' - chi' g / chi
        let w = chi.mul(&g.differentiate().unwrap()).unwrap().sub(&chi.differentiate().unwrap().mul(&g).unwrap()).unwrap();
        let expected = w.div(&chi).unwrap();
        assert!(sys.phi_function(0).unwrap() == expected);
        // P_1^{(-3,1)} is the constant -2, so the canonical seed polynomial is a constant.
        let p = sys.seed_polynomial().unwrap();
        assert_eq!(p.numerator(), &SCPoly::from_c(UPoly::constant(q(-2, 1))));
    }

    #[test]
    fn supercharge_annihilates_seed() {
        let sys = Lissajous::new(ModelParams::ext_two_param(1, 2, q(3, 1), q(5, 2), 1).unwrap()).unwrap();
        let chi = sys.seed().unwrap().clone();
        assert!(sys.apply_supercharge(false, &chi).unwrap().is_zero());
    }

    #[test]
    fn theta_norm_ratio_consecutive() {
        // ||Theta^K_{mu+1}||^2 / ||Theta^K_mu||^2 = (mu+2K+1)(mu+K+1/2) / ((mu+1)(mu+K+3/2))
        let k = q(3, 2);
        let r = theta_norm_ratio(&k, 2, &k, 3).unwrap();
        assert_eq!(r, q(2 + 3 + 1, 1) * q(2 * 2 + 4, 2) / (q(3, 1) * q(3 * 2 + 4, 2)));
        assert!(theta_norm_ratio(&k, 0, &q(2, 1), 0).is_err());
    }

    #[test]
    fn norm_ratios_are_positive() {
        for m in [
            ModelParams::one_param(1, 2, q(3, 2)).unwrap(),
            ModelParams::two_param(2, 1, q(2, 1), q(1, 1)).unwrap(),
            ModelParams::ext_two_param(1, 2, q(3, 1), q(5, 2), 1).unwrap(),
        ] {
            for nu in 0..6 {
                assert!(phi_norm_squared(&m, nu).unwrap() > q(0, 1));
            }
        }
    }
}
