use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::Zero;

use super::bivar::BivarPoly;
use super::products::{compute_p1p2, AlgebraSpec};
use crate::error::Result;
use crate::operators::{apply_x, Direction, OperatorAction, RadicalScalar};
use crate::orthomodels::{Lissajous, StateIndex};
use crate::scalar::{NumericContext, Real, Scalar};

/// Finite linear combination of unnormalized eigenstates.
#[derive(Clone, Debug)]
pub struct StateVector<S> {
    coeffs: BTreeMap<StateIndex, S>,
}

impl<S: Scalar> StateVector<S> {
    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    pub fn basis(idx: StateIndex) -> Self {
        Self::term(idx, S::one())
    }

    pub fn term(idx: StateIndex, c: S) -> Self {
        let mut v = Self::zero();
        v.add_term(idx, c);
        v
    }

    pub fn add_term(&mut self, idx: StateIndex, c: S) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&idx) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(idx, sum);
        }
    }

    pub fn get(&self, idx: StateIndex) -> S {
        self.coeffs.get(&idx).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StateIndex, &S)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zero();
        for (idx, c) in &self.coeffs {
            out.add_term(*idx, c.clone() * k);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    /// Largest coefficient difference over the largest coefficient (at least 1).
    pub fn residual(&self, other: &Self) -> f64 {
        let mut scale = Real::from_i64(1);
        let mut diff = Real::zero();
        for (idx, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            let a = c.to_real().abs_value();
            if a > scale {
                scale = a;
            }
            let d = (self.get(*idx) - other.get(*idx)).to_real().abs_value();
            if d > diff {
                diff = d;
            }
        }
        (diff / scale).to_f64()
    }

    /// Exact equality, or agreement within the numeric tolerance.
    pub fn agrees(&self, other: &Self) -> bool {
        if S::EXACT {
            self.coeffs.len() == other.coeffs.len()
                && self.coeffs.iter().all(|(k, c)| other.coeffs.get(k) == Some(c))
        } else {
            self.residual(other) <= NumericContext::current().tolerance
        }
    }
}

impl<S: Scalar> fmt::Display for StateVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(k, c)| format!("{c}{k}")).collect();
        f.write_str(&parts.join("+"))
    }
}

/// Operators available in relation words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    H,
    Hphi,
    SqrtHphi,
    XPlus,
    XMinus,
    O,
    E,
    EPrime,
    P1,
    P2,
}

/// Evaluates operator words on eigenstate expansions. `X+-` coefficients come
/// from symbolic application and are cached per state.
pub struct StateEngine<'a, S> {
    sys: &'a Lissajous<S>,
    pub spec: AlgebraSpec<S>,
    pub p1: BivarPoly<S>,
    pub p2: BivarPoly<S>,
    cache: Mutex<HashMap<(Direction, StateIndex), OperatorAction<S>>>,
}

/// Images of one eigenstate under `O`, `E` and `E'`.
#[derive(Clone, Debug)]
pub struct OEPrime<S> {
    pub o: StateVector<S>,
    pub e: StateVector<S>,
    pub e_prime: StateVector<S>,
}

impl<'a, S: Scalar> StateEngine<'a, S> {
    pub fn new(sys: &'a Lissajous<S>) -> Self {
        let (p1, p2) = compute_p1p2(sys.model());
        Self {
            sys,
            spec: AlgebraSpec::new(sys.model()),
            p1,
            p2,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &Lissajous<S> {
        self.sys
    }

    /// Cached `X+-` action on an eigenstate.
    pub fn action(&self, dir: Direction, idx: StateIndex) -> Result<OperatorAction<S>> {
        if let Some(a) = self.cache.lock().expect("cache lock").get(&(dir, idx)) {
            return Ok(a.clone());
        }
        let a = apply_x(self.sys, dir, idx)?;
        self.cache.lock().expect("cache lock").insert((dir, idx), a.clone());
        Ok(a)
    }

    fn x_on(&self, dir: Direction, idx: StateIndex) -> Result<StateVector<S>> {
        let a = self.action(dir, idx)?;
        Ok(match a.target {
            Some(t) => StateVector::term(t, a.unnormalized),
            None => StateVector::zero(),
        })
    }

    fn eps(&self) -> S {
        S::from_i64(self.spec.epsilon)
    }

    fn half_step(&self) -> S {
        S::from_i64(self.spec.step as i64) / S::from_i64(2)
    }

    /// `O`, `E` and `E'` on the eigenstate `idx`.
    pub fn build_oeprime(&self, idx: StateIndex) -> Result<OEPrime<S>> {
        let plus = self.x_on(Direction::Raise, idx)?;
        let minus = self.x_on(Direction::Lower, idx)?.scale(&self.eps());
        let half = S::one() / S::from_i64(2);
        let root = self.sys.model().epsilon(idx.nu);
        let o = plus.sub(&minus).scale(&(half.clone() / root));
        let e = plus.add(&minus).scale(&half);
        let e_prime = e.add(&o.scale(&self.half_step()));
        Ok(OEPrime { o, e, e_prime })
    }

    fn on_basis(&self, op: Op, idx: StateIndex) -> Result<StateVector<S>> {
        let m = self.sys.model();
        let diag = |c: S| Ok(StateVector::term(idx, c));
        match op {
            Op::H => diag(m.energy(idx)),
            Op::Hphi => {
                let e = m.epsilon(idx.nu);
                diag(e.clone() * e)
            }
            Op::SqrtHphi => diag(m.epsilon(idx.nu)),
            Op::P1 | Op::P2 => {
                let e = m.epsilon(idx.nu);
                let p = if op == Op::P1 { &self.p1 } else { &self.p2 };
                diag(p.eval(&m.energy(idx), &(e.clone() * e)))
            }
            Op::XPlus => self.x_on(Direction::Raise, idx),
            Op::XMinus => self.x_on(Direction::Lower, idx),
            Op::O => Ok(self.build_oeprime(idx)?.o),
            Op::E => Ok(self.build_oeprime(idx)?.e),
            Op::EPrime => Ok(self.build_oeprime(idx)?.e_prime),
        }
    }

    pub fn apply(&self, op: Op, v: &StateVector<S>) -> Result<StateVector<S>> {
        let mut out = StateVector::zero();
        for (idx, c) in v.iter() {
            out = out.add(&self.on_basis(op, *idx)?.scale(c));
        }
        Ok(out)
    }

    /// Apply the product `word[0] word[1] ... word[k-1]`, rightmost first.
    pub fn word(&self, word: &[Op], v: &StateVector<S>) -> Result<StateVector<S>> {
        let mut out = v.clone();
        for op in word.iter().rev() {
            out = self.apply(*op, &out)?;
        }
        Ok(out)
    }

    /// `sum c_i word_i` applied to `v`.
    pub fn combination(&self, terms: &[(S, &[Op])], v: &StateVector<S>) -> Result<StateVector<S>> {
        let mut out = StateVector::zero();
        for (c, w) in terms {
            out = out.add(&self.word(w, v)?.scale(c));
        }
        Ok(out)
    }

    /// Matrix element `<t|op|s>` of `O` or `E'` between normalized eigenstates.
    pub fn normalized_element(&self, op: Op, s: StateIndex, t: StateIndex) -> Result<RadicalScalar<S>> {
        let root = self.sys.model().epsilon(s.nu);
        let half = S::one() / S::from_i64(2);
        let step_term = self.half_step() * &half / &root;
        let up = self.action(Direction::Raise, s)?;
        let down = self.action(Direction::Lower, s)?;
        let (coeff, factor) = if up.target == Some(t) {
            let f = match op {
                Op::O => half / &root,
                _ => half + &step_term,
            };
            (up.normalized, f)
        } else if down.target == Some(t) {
            let f = match op {
                Op::O => -(half / &root),
                _ => half - &step_term,
            };
            (down.normalized.scale_sign(self.spec.epsilon), f)
        } else {
            return Ok(RadicalScalar::zero());
        };
        Ok(coeff.scale(&factor))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthomodels::ModelParams;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn ground_state_oe() {
        let sys = Lissajous::new(ModelParams::one_param(1, 1, q(1, 1)).unwrap()).unwrap();
        let eng = StateEngine::new(&sys);
        let g = StateIndex::new(0, 0);
        let oe = eng.build_oeprime(g).unwrap();
        // X- annihilates the ground state, so O = X+/(2 eps_0) and E = X+/2
        let x = eng.word(&[Op::XPlus], &StateVector::basis(g)).unwrap();
        assert!(x.is_empty());
        assert!(oe.o.is_empty() && oe.e.is_empty());
        let s = StateIndex::new(1, 0);
        let oe = eng.build_oeprime(s).unwrap();
        let x = eng.word(&[Op::XPlus], &StateVector::basis(s)).unwrap();
        assert!(oe.o.agrees(&x.scale(&(q(1, 1) / (q(2, 1) * sys.model().epsilon(0))))));
        assert!(oe.e.agrees(&x.scale(&q(1, 2))));
    }

    #[test]
    fn o_maps_into_two_neighbours() {
        let sys = Lissajous::new(ModelParams::one_param(1, 1, q(1, 1)).unwrap()).unwrap();
        let eng = StateEngine::new(&sys);
        let oe = eng.build_oeprime(StateIndex::new(2, 2)).unwrap();
        let keys: Vec<_> = oe.o.iter().map(|(k, _)| *k).collect();
        assert_eq!(keys, vec![StateIndex::new(1, 3), StateIndex::new(3, 1)]);
    }
}
