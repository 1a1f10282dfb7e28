//! Closed-form squared action coefficients in the normalized basis.
//!
//! Each formula is kept as a list of numerator and denominator factors so that
//! annihilation is decided by a vanishing numerator factor before any
//! denominator is inspected.

use crate::error::{Error, Result};
use crate::orthomodels::{Model, StateIndex, Variant};
use crate::scalar::Scalar;

struct Factors<S> {
    num: Vec<S>,
    den: Vec<S>,
}

impl<S: Scalar> Factors<S> {
    fn new() -> Self {
        Self {
            num: Vec::new(),
            den: Vec::new(),
        }
    }

    fn times(mut self, x: S) -> Self {
        self.num.push(x);
        self
    }

    fn over(mut self, x: S) -> Self {
        self.den.push(x);
        self
    }

    /// `(x)_n`.
    fn rising(mut self, x: S, n: u32) -> Self {
        for i in 0..n {
            self.num.push(x.clone() + S::from_i64(i as i64));
        }
        self
    }

    fn rising_squared(self, x: S, n: u32) -> Self {
        self.rising(x.clone(), n).rising(x, n)
    }

    /// `x (x-1) ... (x-n+1)`.
    fn falling(mut self, x: S, n: u32) -> Self {
        for i in 0..n {
            self.num.push(x.clone() - S::from_i64(i as i64));
        }
        self
    }

    fn pow2(self, e: u32) -> Self {
        let v = S::from_i64(2).powi(e);
        self.times(v)
    }

    fn eval(self, what: &str) -> Result<S> {
        if self.num.iter().any(|x| x.is_zero()) {
            return Ok(S::zero());
        }
        if self.den.iter().any(|x| x.is_zero()) {
            return Err(Error::OutOfLadder(what.to_string()));
        }
        let mut acc = S::one();
        for x in &self.num {
            acc *= x;
        }
        for x in &self.den {
            acc = acc / x.clone();
        }
        Ok(acc)
    }
}

fn int<S: Scalar>(v: u32) -> S {
    S::from_i64(v as i64)
}

/// `A+_K Theta^{K-1}_mu`: `mu (mu + 2K - 1)`.
pub fn shift_raise<S: Scalar>(big_k: &S, mu: u32) -> S {
    let mu = int::<S>(mu);
    mu.clone() * (mu + big_k.clone() + big_k - S::one())
}

/// `A-_K Theta^K_mu`: `(mu + 1)(mu + 2K)`.
pub fn shift_lower<S: Scalar>(big_k: &S, mu: u32) -> S {
    let mu = int::<S>(mu);
    (mu.clone() + S::one()) * (mu + big_k.clone() + big_k)
}

/// `B+_nu Phi_nu -> Phi_{nu+1}`.
pub fn ladder_raise<S: Scalar>(m: &Model<S>, nu: u32) -> Result<S> {
    let v = int::<S>(nu);
    let s = m.alpha.clone() + &m.beta + S::one();
    let f = Factors::new();
    let f = match m.variant {
        Variant::OneParam => {
            let l = m.lambda();
            f.times(v.clone() + S::one())
                .times(v.clone() + &l)
                .times(v.clone() + &l + &l)
                .over(v + &l + S::one())
        }
        Variant::TwoParam => f
            .times(S::from_i64(16))
            .times(s.clone() + &v + &v)
            .times(v.clone() + S::one())
            .times(s.clone() + &v)
            .times(m.alpha.clone() + S::one() + &v)
            .times(m.beta.clone() + S::one() + &v)
            .over(s + S::from_i64(2) + &v + &v),
        Variant::ExtTwoParam => {
            let a = m.alpha.clone() + &v - int::<S>(m.m1);
            let b = m.beta.clone() + &v + int::<S>(m.m1);
            f.times(S::from_i64(256))
                .times(a.clone() + S::one())
                .times(a + S::from_i64(2))
                .times(b.clone())
                .times(b + S::one())
                .times(s.clone() + &v + &v)
                .times(v.clone() + S::one())
                .times(s.clone() + &v)
                .times(m.alpha.clone() + S::from_i64(2) + &v)
                .times(m.beta.clone() + &v)
                .over(s + S::from_i64(2) + &v + &v)
        }
    };
    f.eval("B+")
}

/// Index of the ladder operator that lowers `Phi_nu`: `B-_{nu-1}` with one
/// parameter, `B-_nu` otherwise. `None` when that index would be negative.
pub fn lowering_index<S: Scalar>(m: &Model<S>, nu: u32) -> Option<u32> {
    match m.variant {
        Variant::OneParam => nu.checked_sub(1),
        _ => Some(nu),
    }
}

/// Lowering action `Phi_nu -> Phi_{nu-1}`.
pub fn ladder_lower<S: Scalar>(m: &Model<S>, nu: u32) -> Result<S> {
    let v = int::<S>(nu);
    let s = m.alpha.clone() + &m.beta + S::one();
    let f = Factors::new();
    let f = match m.variant {
        Variant::OneParam => {
            let l = m.lambda();
            f.times(v.clone())
                .times(v.clone() + &l)
                .times(v.clone() - S::one() + &l + &l)
                .over(v - S::one() + &l)
        }
        Variant::TwoParam => f
            .times(S::from_i64(16))
            .times(v.clone())
            .times(s.clone() + &v + &v)
            .times(s.clone() - S::one() + &v)
            .times(m.alpha.clone() + &v)
            .times(m.beta.clone() + &v)
            .over(s - S::from_i64(2) + &v + &v),
        Variant::ExtTwoParam => {
            let a = m.alpha.clone() + &v - int::<S>(m.m1);
            let b = m.beta.clone() + &v + int::<S>(m.m1);
            f.times(v.clone())
                .times(S::from_i64(256))
                .times(a.clone() + S::one())
                .times(a)
                .times(b.clone())
                .times(b - S::one())
                .times(s.clone() + &v + &v)
                .times(s.clone() - S::one() + &v)
                .times(m.alpha.clone() + S::one() + &v)
                .times(m.beta.clone() - S::one() + &v)
                .over(s - S::from_i64(2) + &v + &v)
        }
    };
    f.eval("B-")
}

/// `X+` on `(mu, nu)`, target `(mu - m', nu + n)`.
pub fn x_raise<S: Scalar>(m: &Model<S>, idx: StateIndex) -> Result<S> {
    let v = int::<S>(idx.nu);
    let mu = int::<S>(idx.mu);
    let n = m.n;
    let nn = int::<S>(n);
    let k2 = m.big_k(idx.nu) * S::from_i64(2);
    let mp = m.theta_step();
    let theta = |f: Factors<S>| f.falling(mu.clone(), mp).rising(mu.clone() + &k2 + S::one(), mp);
    let s = m.alpha.clone() + &m.beta + S::one();
    let f = Factors::new();
    let f = match m.variant {
        Variant::OneParam => {
            let l = m.lambda();
            theta(
                f.times(l.clone() + &v)
                    .over(l.clone() + &v + &nn)
                    .rising(v.clone() + S::one(), n)
                    .rising(l.clone() + &l + &v, n),
            )
        }
        Variant::TwoParam => theta(
            f.pow2(4 * n)
                .times(s.clone() + &v + &v)
                .over(s.clone() + &v + &v + &nn + &nn)
                .rising(v.clone() + S::one(), n)
                .rising(s.clone() + &v, n)
                .rising(m.alpha.clone() + &v + S::one(), n)
                .rising(m.beta.clone() + &v + S::one(), n),
        ),
        Variant::ExtTwoParam => {
            let a = m.alpha.clone() + &v - int::<S>(m.m1);
            let b = m.beta.clone() + &v + int::<S>(m.m1);
            theta(
                f.pow2(8 * n)
                    .rising_squared(a.clone() + S::from_i64(2), n - 1)
                    .rising_squared(b.clone() + S::one(), n - 1)
                    .times(a.clone() + S::one())
                    .times(a + S::one() + &nn)
                    .times(b.clone())
                    .times(b + &nn)
                    .times(s.clone() + &v + &v)
                    .over(s.clone() + &v + &v + &nn + &nn)
                    .rising(v.clone() + S::one(), n)
                    .rising(s.clone() + &v, n)
                    .rising(m.alpha.clone() + &v + S::from_i64(2), n)
                    .rising(m.beta.clone() + &v, n),
            )
        }
    };
    f.eval("X+")
}

/// `X-` on `(mu, nu)`, target `(mu + m', nu - n)`.
pub fn x_lower<S: Scalar>(m: &Model<S>, idx: StateIndex) -> Result<S> {
    let v = int::<S>(idx.nu);
    let mu = int::<S>(idx.mu);
    let n = m.n;
    let nn = int::<S>(n);
    let k2 = m.big_k(idx.nu) * S::from_i64(2);
    let mp = m.theta_step();
    let mpp = int::<S>(mp);
    let theta = |f: Factors<S>| {
        f.rising(mu.clone() + S::one(), mp)
            .rising(mu.clone() + &k2 + S::one() - &mpp, mp)
    };
    let s = m.alpha.clone() + &m.beta + S::one();
    // nu!/(nu-n)! first: it decides annihilation below the ladder bottom.
    let f = Factors::new().falling(v.clone(), n);
    let f = match m.variant {
        Variant::OneParam => {
            let l = m.lambda();
            theta(
                f.times(l.clone() + &v)
                    .over(l.clone() + &v - &nn)
                    .rising(l.clone() + &l + &v - &nn, n),
            )
        }
        Variant::TwoParam => theta(
            f.pow2(4 * n)
                .times(s.clone() + &v + &v)
                .over(s.clone() + &v + &v - &nn - &nn)
                .rising(s.clone() + &v - &nn, n)
                .rising(m.alpha.clone() + &v + S::one() - &nn, n)
                .rising(m.beta.clone() + &v + S::one() - &nn, n),
        ),
        Variant::ExtTwoParam => {
            let a = m.alpha.clone() + &v - int::<S>(m.m1);
            let b = m.beta.clone() + &v + int::<S>(m.m1);
            theta(
                f.pow2(8 * n)
                    .rising_squared(a.clone() - &nn + S::from_i64(2), n - 1)
                    .rising_squared(b.clone() - &nn + S::one(), n - 1)
                    .times(a.clone() + S::one())
                    .times(a - &nn + S::one())
                    .times(b.clone())
                    .times(b - &nn)
                    .times(s.clone() + &v + &v)
                    .over(s.clone() + &v + &v - &nn - &nn)
                    .rising(s.clone() + &v - &nn, n)
                    .rising(m.alpha.clone() + &v + S::from_i64(2) - &nn, n)
                    .rising(m.beta.clone() + &v - &nn, n),
            )
        }
    };
    f.eval("X-")
}

/// `X+_{mu+m', nu-n} X-_{mu,nu}` eigenvalue on `(mu, nu)`.
pub fn product_raise_lower<S: Scalar>(m: &Model<S>, idx: StateIndex) -> Result<S> {
    let v = int::<S>(idx.nu);
    let mu = int::<S>(idx.mu);
    let n = m.n;
    let nn = int::<S>(n);
    let k2 = m.big_k(idx.nu) * S::from_i64(2);
    let mp = m.theta_step();
    let mpp = int::<S>(mp);
    let s = m.alpha.clone() + &m.beta + S::one();
    let f = Factors::new()
        .falling(v.clone(), n)
        .rising(mu.clone() + S::one(), mp)
        .rising(mu + &k2 + S::one() - &mpp, mp);
    let f = match m.variant {
        Variant::OneParam => {
            let l = m.lambda();
            f.rising(l.clone() + &l + &v - &nn, n)
        }
        Variant::TwoParam => f
            .pow2(4 * n)
            .rising(s.clone() + &v - &nn, n)
            .rising(m.alpha.clone() + &v + S::one() - &nn, n)
            .rising(m.beta.clone() + &v + S::one() - &nn, n),
        Variant::ExtTwoParam => {
            let a = m.alpha.clone() + &v - int::<S>(m.m1);
            let b = m.beta.clone() + &v + int::<S>(m.m1);
            f.pow2(8 * n)
                .rising(a.clone() - &nn + S::one(), n)
                .rising(a - &nn + S::from_i64(2), n)
                .rising(b.clone() - &nn, n)
                .rising(b - &nn + S::one(), n)
                .rising(s.clone() + &v - &nn, n)
                .rising(m.alpha.clone() + &v + S::from_i64(2) - &nn, n)
                .rising(m.beta.clone() + &v - &nn, n)
        }
    };
    f.eval("X+X-")
}

/// `X-_{mu-m', nu+n} X+_{mu,nu}` eigenvalue on `(mu, nu)`.
pub fn product_lower_raise<S: Scalar>(m: &Model<S>, idx: StateIndex) -> Result<S> {
    let v = int::<S>(idx.nu);
    let mu = int::<S>(idx.mu);
    let n = m.n;
    let k2 = m.big_k(idx.nu) * S::from_i64(2);
    let mp = m.theta_step();
    let s = m.alpha.clone() + &m.beta + S::one();
    let f = Factors::new()
        .falling(mu.clone(), mp)
        .rising(mu + &k2 + S::one(), mp)
        .rising(v.clone() + S::one(), n);
    let f = match m.variant {
        Variant::OneParam => {
            let l = m.lambda();
            f.rising(l.clone() + &l + &v, n)
        }
        Variant::TwoParam => f
            .pow2(4 * n)
            .rising(s.clone() + &v, n)
            .rising(m.alpha.clone() + &v + S::one(), n)
            .rising(m.beta.clone() + &v + S::one(), n),
        Variant::ExtTwoParam => {
            let a = m.alpha.clone() + &v - int::<S>(m.m1);
            let b = m.beta.clone() + &v + int::<S>(m.m1);
            f.pow2(8 * n)
                .rising(a.clone() + S::one(), n)
                .rising(a + S::from_i64(2), n)
                .rising(b.clone(), n)
                .rising(b + S::one(), n)
                .rising(s.clone() + &v, n)
                .rising(m.alpha.clone() + &v + S::from_i64(2), n)
                .rising(m.beta.clone() + &v, n)
        }
    };
    f.eval("X-X+")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthomodels::ModelParams;
    use crate::scalar::{pochhammer, Rational};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn one_param_x_raise_matches_gamma_ratio() {
        // (lambda+nu)(nu+n)! Gamma(2l+nu+n) mu! Gamma(mu+2K+m+1)
        //   / ((lambda+nu+n) nu! Gamma(2l+nu) (mu-m)! Gamma(mu+2K+1)), l = K = 3/2, mu = 1, nu = 0
        let m = ModelParams::one_param(1, 1, q(1, 1)).unwrap();
        let l = q(3, 2);
        let k = q(3, 2);
        let expected = &l / (&l + q(1, 1)) * pochhammer(&(&l * q(2, 1)), 1) * pochhammer(&(q(2, 1) + &k * q(2, 1)), 1);
        assert_eq!(x_raise(&m, StateIndex::new(1, 0)).unwrap(), expected);
        assert_eq!(expected, q(3, 5) * q(3, 1) * q(5, 1));
    }

    #[test]
    fn annihilation_below_ladder() {
        let m = ModelParams::one_param(1, 1, q(1, 1)).unwrap();
        assert_eq!(x_lower(&m, StateIndex::new(0, 0)).unwrap(), q(0, 1));
        assert_eq!(x_raise(&m, StateIndex::new(0, 3)).unwrap(), q(0, 1));
        let e = ModelParams::ext_two_param(1, 1, q(2, 1), q(2, 1), 1).unwrap();
        assert_eq!(ladder_lower(&e, 0).unwrap(), q(0, 1));
    }

    #[test]
    fn products_factor_into_actions() {
        // (X+X-)^2 on (mu,nu) = X-(mu,nu)^2 X+(target of X-)^2 in the normalized basis.
        for m in [
            ModelParams::one_param(2, 1, q(3, 2)).unwrap(),
            ModelParams::two_param(1, 2, q(2, 1), q(1, 1)).unwrap(),
            ModelParams::ext_two_param(1, 2, q(3, 1), q(5, 2), 1).unwrap(),
        ] {
            let mp = m.theta_step();
            for mu in 0..4 {
                for nu in 0..5 {
                    let idx = StateIndex::new(mu, nu);
                    let down = x_lower(&m, idx).unwrap();
                    let prod = product_raise_lower(&m, idx).unwrap();
                    if nu >= m.n {
                        let t = StateIndex::new(mu + mp, nu - m.n);
                        assert_eq!(&prod * &prod, down * x_raise(&m, t).unwrap(), "{} {idx}", m.label());
                    } else {
                        assert_eq!(prod, q(0, 1));
                    }
                    let up = x_raise(&m, idx).unwrap();
                    let prod = product_lower_raise(&m, idx).unwrap();
                    if mu >= mp {
                        let t = StateIndex::new(mu - mp, nu + m.n);
                        assert_eq!(&prod * &prod, up * x_lower(&m, t).unwrap(), "{} {idx}", m.label());
                    } else {
                        assert_eq!(prod, q(0, 1));
                    }
                }
            }
        }
    }
}
