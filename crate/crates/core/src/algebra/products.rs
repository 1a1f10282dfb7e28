use super::bivar::BivarPoly;
use crate::orthomodels::{Model, Variant};
use crate::scalar::Scalar;

/// Sign, step and imaginary prefactor of the polynomial algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec<S> {
    /// Shift of `sqrt(H_phi)` under `X+`: `n` or `2n`.
    pub step: u32,
    pub epsilon: i64,
    /// `eta = i^eta_power`.
    pub eta_power: u32,
    /// Coefficient of `{A, B}` in `[A, C]`.
    pub ab_anticommutator: S,
    /// Coefficient of `B` in `[A, C]`.
    pub b_linear: S,
    /// Coefficient of `B^2` in `[B, C]`.
    pub b_squared: S,
    /// `[B, C]` contains `source_scale * P2(H, A)`.
    pub source_scale: S,
}

impl<S: Scalar> AlgebraSpec<S> {
    pub fn new(model: &Model<S>) -> Self {
        let d = S::from_i64(model.step() as i64);
        let d2 = d.clone() * &d;
        let eta_power = match model.variant {
            Variant::OneParam => (model.m + model.n - 1) % 4,
            _ => 1,
        };
        Self {
            step: model.step(),
            epsilon: model.sign(),
            eta_power,
            ab_anticommutator: d2.clone() * S::from_i64(2),
            b_linear: -(d2.clone() * &d2),
            b_squared: -(d2 * S::from_i64(2)),
            source_scale: d * S::from_i64(2),
        }
    }

    /// `eta^2`, always real: `(-1)^eta_power`.
    pub fn eta_squared(&self) -> i64 {
        if self.eta_power % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// `(t - a)(t - a + w) - c` in `(H, t)`.
fn quadratic<S: Scalar>(shift: S, width: S, c: S) -> BivarPoly<S> {
    let t = BivarPoly::linear_y(-shift.clone(), S::one());
    let t2 = BivarPoly::linear_y(width - shift, S::one());
    t.mul(&t2).sub(&BivarPoly::constant(c))
}

/// `H - (k t - p)(k t - p + 1)`.
fn energy_factor<S: Scalar>(k: &S, p: i64) -> BivarPoly<S> {
    let a = BivarPoly::linear_y(-S::from_i64(p), k.clone());
    let b = BivarPoly::linear_y(S::from_i64(1 - p), k.clone());
    BivarPoly::x().sub(&a.mul(&b))
}

/// `X+ X-` as a polynomial in `(H, t = sqrt(H_phi))`. `X- X+` is its reflection `t -> -t`.
pub fn product_polynomial<S: Scalar>(model: &Model<S>) -> BivarPoly<S> {
    let k = model.k();
    let a = model.alpha.clone();
    let b = model.beta.clone();
    let one = S::one();
    let mut out = BivarPoly::one();
    for p in 1..=model.theta_step() as i64 {
        out = out.mul(&energy_factor(&k, p));
    }
    let quarter = one.clone() / S::from_i64(4);
    match model.variant {
        Variant::OneParam => {
            for r in 1..=model.n as i64 {
                let c = a.clone() * &a - &quarter;
                out = out.mul(&quadratic(S::from_i64(r), one.clone(), c));
            }
        }
        Variant::TwoParam | Variant::ExtTwoParam => {
            let plus = (a.clone() + &b + &one) * (a.clone() + &b - &one);
            let minus = if model.variant == Variant::TwoParam {
                (a.clone() - &b + &one) * (a.clone() - &b - &one)
            } else {
                (a.clone() - &b + S::from_i64(3)) * (a.clone() - &b + &one)
            };
            let two = S::from_i64(2);
            for r in 1..=model.n as i64 {
                let shift = S::from_i64(2 * r);
                out = out.mul(&quadratic(shift.clone(), two.clone(), plus.clone()));
                out = out.mul(&quadratic(shift, two.clone(), minus.clone()));
            }
            if model.variant == Variant::ExtTwoParam {
                let d = a.clone() - &b - S::from_i64(2 * model.m1 as i64);
                let c = d.clone() * (d + &two);
                for q in 1..=model.n as i64 {
                    out = out.mul(&quadratic(S::from_i64(2 * q + 1), two.clone(), c.clone()));
                    out = out.mul(&quadratic(S::from_i64(2 * q - 1), two.clone(), c.clone()));
                }
            }
        }
    }
    out
}

/// `(P1, P2)` in `(H, H_phi)` with `X+X- = P1 - P2 sqrt(H_phi)` and `X-X+ = P1 + P2 sqrt(H_phi)`.
pub fn compute_p1p2<S: Scalar>(model: &Model<S>) -> (BivarPoly<S>, BivarPoly<S>) {
    let (even, odd) = product_polynomial(model).parity_split();
    (even, odd.neg())
}

/// Deformed-oscillator realization obtained through the algebraic constraint,
/// in the variables `(H, w = N + u)`.
#[derive(Clone, Debug)]
pub struct CasimirRealization<S> {
    pub step: u32,
    /// `A(N) = d^2 w^2`.
    pub a: BivarPoly<S>,
    /// `B0(N)`, identically zero.
    pub b0: BivarPoly<S>,
    /// `Phi(N) = P1(H, A(N)) - d w P2(H, A(N))`.
    pub phi: BivarPoly<S>,
}

impl<S: Scalar> CasimirRealization<S> {
    /// `rho^2(N) = [4 d^2 w (w + 1)]^-1`; `None` at its poles.
    pub fn rho_squared(&self, w: &S) -> Option<S> {
        let d = S::from_i64(self.step as i64);
        let den = S::from_i64(4) * &d * &d * w * &(w.clone() + S::one());
        (!den.is_zero()).then(|| S::one() / den)
    }
}

pub fn casimir_realization<S: Scalar>(model: &Model<S>) -> CasimirRealization<S> {
    let d = S::from_i64(model.step() as i64);
    let d2 = d.clone() * &d;
    let (p1, p2) = compute_p1p2(model);
    let p1w = p1.substitute_y(&d2, 2);
    let p2w = p2.substitute_y(&d2, 2);
    let phi = p1w.sub(&BivarPoly::monomial(d, 0, 1).mul(&p2w));
    CasimirRealization {
        step: model.step(),
        a: BivarPoly::monomial(d2, 0, 2),
        b0: BivarPoly::zero(),
        phi,
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
    fn one_param_hand_expansion() {
        // [t(t-1) - 3/4][H - (t-1)t]
        let m = ModelParams::one_param(1, 1, q(1, 1)).unwrap();
        let p = product_polynomial(&m);
        let t = BivarPoly::y();
        let tt = t.mul(&BivarPoly::linear_y(q(-1, 1), q(1, 1)));
        let expected = tt
            .sub(&BivarPoly::constant(q(3, 4)))
            .mul(&BivarPoly::x().sub(&tt));
        assert_eq!(p, expected);
        let (p1, p2) = compute_p1p2(&m);
        // X+X- at (H, t) = (3, 2)
        assert_eq!(p1.eval(&q(3, 1), &q(4, 1)) - p2.eval(&q(3, 1), &q(4, 1)) * q(2, 1), q(5, 4));
    }

    #[test]
    fn degrees_follow_the_variant() {
        for (m, d1) in [
            (ModelParams::one_param(1, 2, q(1, 1)).unwrap(), 3),
            (ModelParams::two_param(1, 1, q(2, 1), q(1, 1)).unwrap(), 4),
            (ModelParams::ext_two_param(1, 1, q(2, 1), q(2, 1), 1).unwrap(), 6),
        ] {
            let (p1, p2) = compute_p1p2(&m);
            assert_eq!(p1.total_degree(), Some(d1), "{}", m.label());
            assert!(p2.total_degree().unwrap() <= d1 - 1);
        }
    }

    #[test]
    fn reflection_swaps_products() {
        let m = ModelParams::two_param(1, 2, q(3, 2), q(5, 2)).unwrap();
        let (p1, p2) = compute_p1p2(&m);
        let p = product_polynomial(&m);
        let h = q(7, 3);
        let t = q(5, 2);
        let t2 = &t * &t;
        assert_eq!(p.reflect_y().eval(&h, &t), p1.eval(&h, &t2) + p2.eval(&h, &t2) * &t);
    }

    #[test]
    fn spec_signs() {
        let s = AlgebraSpec::new(&ModelParams::one_param(1, 2, q(1, 1)).unwrap());
        assert_eq!(s.epsilon, -1);
        assert_eq!(s.eta_squared(), -s.epsilon);
        let s = AlgebraSpec::new(&ModelParams::two_param(1, 1, q(2, 1), q(1, 1)).unwrap());
        assert_eq!(s.eta_squared(), -s.epsilon);
        assert_eq!(s.b_linear, q(-16, 1));
    }

    #[test]
    fn casimir_b0_vanishes() {
        let m = ModelParams::one_param(1, 1, q(1, 1)).unwrap();
        let c = casimir_realization(&m);
        assert!(c.b0.is_zero());
        assert_eq!(c.rho_squared(&q(1, 1)), Some(q(1, 8)));
        assert_eq!(c.rho_squared(&q(0, 1)), None);
    }
}
