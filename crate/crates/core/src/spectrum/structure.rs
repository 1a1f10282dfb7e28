use crate::error::{Error, Result};
use crate::orthomodels::{Model, Variant};
use crate::scalar::Scalar;

fn int<S: Scalar>(v: i64) -> S {
    S::from_i64(v)
}

/// `Phi(x, E, u)` as the product of quadratic factors in `w = x + u`.
pub fn structure_function<S: Scalar>(model: &Model<S>, x: &S, u: &S, energy: &S) -> S {
    let w = x.clone() + u;
    let a = &model.alpha;
    let b = &model.beta;
    let mm = model.theta_step() as i64;
    let mut out = S::one();
    for p in 1..=mm {
        let t = int::<S>(mm) * &w - int::<S>(p);
        out *= &(energy.clone() - t.clone() * (t + S::one()));
    }
    // t(t + 2) - c with t = 2n w - shift
    let pair = |shift: i64, c: &S| {
        let t = int::<S>(2 * model.n as i64) * &w - int::<S>(shift);
        t.clone() * (t + int::<S>(2)) - c
    };
    match model.variant {
        Variant::OneParam => {
            let c = a.clone() * a - S::one() / int::<S>(4);
            for r in 1..=model.n as i64 {
                let t = int::<S>(model.n as i64) * &w - int::<S>(r);
                out *= &(t.clone() * (t + S::one()) - &c);
            }
        }
        Variant::TwoParam | Variant::ExtTwoParam => {
            let one = S::one();
            let plus = (a.clone() + b + &one) * (a.clone() + b - &one);
            let minus = if model.variant == Variant::TwoParam {
                (a.clone() - b + &one) * (a.clone() - b - &one)
            } else {
                (a.clone() - b + int::<S>(3)) * (a.clone() - b + &one)
            };
            for r in 1..=model.n as i64 {
                out *= &pair(2 * r, &plus);
                out *= &pair(2 * r, &minus);
            }
            if model.variant == Variant::ExtTwoParam {
                let d = a.clone() - b - int::<S>(2 * model.m1 as i64);
                let c = d.clone() * (d + int::<S>(2));
                for q in 1..=model.n as i64 {
                    out *= &pair(2 * q + 1, &c);
                    out *= &pair(2 * q - 1, &c);
                }
            }
        }
    }
    out
}

/// Linear factorization of the structure function in `w = x + u`:
/// `Phi = prefactor * prod (w - root) * prod_p (w - (o_p + R)/D)(w - (o_p - R)/D)`
/// with `R = sqrt(1 + 4E)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureFunctionSpec<S> {
    pub variant: Variant,
    pub prefactor: S,
    /// Roots independent of the energy, in pairs.
    pub alpha_roots: Vec<(S, S)>,
    /// Offsets `o_p = 2p - 1`.
    pub energy_offsets: Vec<i64>,
    /// `D = 2m` or `4m`.
    pub energy_denominator: i64,
}

impl<S: Scalar> StructureFunctionSpec<S> {
    pub fn new(model: &Model<S>) -> Self {
        let n = model.n as i64;
        let m = model.m as i64;
        let mm = model.theta_step() as i64;
        let a = model.alpha.clone();
        let b = model.beta.clone();
        let over = |v: S| v / int::<S>(2 * n);
        let mut roots = Vec::new();
        let prefactor = match model.variant {
            Variant::OneParam => {
                let two_a = a.clone() + &a;
                for r in 1..=n {
                    let o = int::<S>(2 * r - 1);
                    roots.push((over(o.clone() - &two_a), over(o + &two_a)));
                }
                let sign = if m % 2 == 0 { 1 } else { -1 };
                int::<S>(sign) * int::<S>(m).powi(2 * m as u32) * int::<S>(n).powi(2 * n as u32)
            }
            Variant::TwoParam | Variant::ExtTwoParam => {
                let s = a.clone() + &b;
                let d = a.clone() - &b;
                for r in 1..=n {
                    let o = int::<S>(2 * r - 1);
                    roots.push((over(o.clone() - &s), over(o.clone() + &s)));
                    if model.variant == Variant::TwoParam {
                        roots.push((over(o.clone() + &d), over(o - &d)));
                    } else {
                        roots.push((over(o.clone() + int::<S>(2) + &d), over(o - int::<S>(2) - &d)));
                    }
                }
                let two_n = int::<S>(2 * n);
                let two_m = int::<S>(2 * m);
                if model.variant == Variant::ExtTwoParam {
                    let e = d - int::<S>(2 * model.m1 as i64);
                    for q in 1..=n {
                        let o = int::<S>(2 * q);
                        roots.push((over(o.clone() + S::one() + &e), over(o.clone() - S::one() - &e)));
                        roots.push((over(o.clone() - S::one() + &e), over(o - int::<S>(3) - &e)));
                    }
                    two_n.powi(8 * n as u32) * two_m.powi(4 * m as u32)
                } else {
                    two_n.powi(4 * n as u32) * two_m.powi(4 * m as u32)
                }
            }
        };
        Self {
            variant: model.variant,
            prefactor,
            alpha_roots: roots,
            energy_offsets: (1..=mm).map(|p| 2 * p - 1).collect(),
            energy_denominator: 2 * mm,
        }
    }

    /// Number of `(alpha pairs, energy pairs)`.
    pub fn factor_counts(&self) -> (usize, usize) {
        (self.alpha_roots.len(), self.energy_offsets.len())
    }

    /// Evaluate with `root = sqrt(1 + 4E)` supplied by the caller.
    pub fn eval_with_root(&self, x: &S, u: &S, root: &S) -> S {
        let w = x.clone() + u;
        let mut out = self.prefactor.clone();
        for (r1, r2) in &self.alpha_roots {
            out *= &((w.clone() - r1) * (w.clone() - r2));
        }
        let den = int::<S>(self.energy_denominator);
        for o in &self.energy_offsets {
            let o = int::<S>(*o);
            let plus = (o.clone() + root) / &den;
            let minus = (o - root) / &den;
            out *= &((w.clone() - plus) * (w.clone() - minus));
        }
        out
    }

    /// Evaluate at energy `E`; fails when `1 + 4E` has no square root in the field.
    pub fn eval(&self, x: &S, u: &S, energy: &S) -> Result<S> {
        let root = energy_root(energy)?;
        Ok(self.eval_with_root(x, u, &root))
    }
}

/// `sqrt(1 + 4E)`, the positive root.
pub fn energy_root<S: Scalar>(energy: &S) -> Result<S> {
    let d = S::one() + int::<S>(4) * energy;
    d.sqrt_nonneg()
        .ok_or_else(|| Error::Unsupported(format!("a square root of 1+4E = {d}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthomodels::ModelParams;
    use crate::scalar::Rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn one_param_values() {
        let m = ModelParams::one_param(1, 1, q(1, 1)).unwrap();
        let vals: Vec<_> = (0..3)
            .map(|x| structure_function(&m, &q(x, 1), &q(3, 2), &q(35, 4)))
            .collect();
        assert_eq!(vals, vec![q(0, 1), q(15, 1), q(0, 1)]);
    }

    #[test]
    fn factor_counts() {
        let m = ModelParams::one_param(3, 2, q(2, 1)).unwrap();
        assert_eq!(StructureFunctionSpec::new(&m).factor_counts(), (2, 3));
        let m = ModelParams::two_param(3, 2, q(2, 1), q(1, 1)).unwrap();
        assert_eq!(StructureFunctionSpec::new(&m).factor_counts(), (4, 6));
        let m = ModelParams::ext_two_param(1, 2, q(3, 1), q(5, 2), 1).unwrap();
        assert_eq!(StructureFunctionSpec::new(&m).factor_counts(), (8, 2));
    }

    #[test]
    fn factorized_equals_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let models = [
            ModelParams::one_param(3, 2, q(3, 2)).unwrap(),
            ModelParams::two_param(1, 2, q(2, 1), q(1, 1)).unwrap(),
            ModelParams::two_param(3, 2, q(3, 2), q(5, 2)).unwrap(),
            ModelParams::ext_two_param(1, 2, q(3, 1), q(5, 2), 1).unwrap(),
        ];
        for m in &models {
            let spec = StructureFunctionSpec::new(m);
            for _ in 0..20 {
                let x = q(rng.gen_range(-20..20), rng.gen_range(1..7));
                let u = q(rng.gen_range(-20..20), rng.gen_range(1..7));
                // E = (R^2 - 1)/4 with rational R
                let r = q(rng.gen_range(1..40), rng.gen_range(1..5));
                let e = (&r * &r - q(1, 1)) / q(4, 1);
                assert_eq!(spec.eval(&x, &u, &e).unwrap(), structure_function(m, &x, &u, &e), "{m}");
            }
        }
    }

    #[test]
    fn irrational_root_is_reported() {
        let m = ModelParams::one_param(1, 1, q(1, 1)).unwrap();
        let spec = StructureFunctionSpec::new(&m);
        assert!(spec.eval(&q(0, 1), &q(0, 1), &q(1, 4)).is_err());
    }
}
