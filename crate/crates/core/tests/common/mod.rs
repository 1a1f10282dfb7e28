#![allow(dead_code)]

use lissajous_core::orthomodels::ModelParams;
use lissajous_core::poly::UPoly;
use lissajous_core::trig::{QuasiTrig, SCPoly, Variable};
use lissajous_core::{Rational, Real, Scalar};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

/// The acceptance grids for the eigen, action and algebra suites.
pub fn parameter_sets() -> Vec<ModelParams> {
    let ratios = [(1, 1), (1, 2), (2, 1), (3, 2)];
    let mut out = Vec::new();
    for &(m, n) in &ratios {
        for a in [q(1, 1), q(3, 2), q(2, 1)] {
            out.push(ModelParams::one_param(m, n, a).unwrap());
        }
    }
    for &(m, n) in &ratios {
        for (a, b) in [(q(1, 1), q(1, 1)), (q(2, 1), q(1, 1)), (q(3, 2), q(5, 2))] {
            out.push(ModelParams::two_param(m, n, a, b).unwrap());
        }
    }
    for (m, n) in [(1, 1), (1, 2)] {
        for (a, b) in [(q(2, 1), q(2, 1)), (q(3, 1), q(5, 2))] {
            out.push(ModelParams::ext_two_param(m, n, a, b, 1).unwrap());
        }
    }
    out
}

fn small_poly(max_degree: usize) -> impl Strategy<Value = UPoly<Rational>> {
    prop::collection::vec((-4i64..=4, 1i64..=3), 0..=max_degree + 1)
        .prop_map(|c| UPoly::from_coeffs(c.into_iter().map(|(n, d)| q(n, d)).collect()))
}

/// Denominators with roots outside `[-1, 1]`, so sample points never hit a pole.
fn denominator() -> impl Strategy<Value = UPoly<Rational>> {
    prop::collection::vec(prop::sample::select(vec![q(2, 1), q(-3, 1), q(5, 2), q(-3, 2)]), 0..=2).prop_map(|roots| {
        let mut d = UPoly::one();
        for r in roots {
            d = &d * &UPoly::linear(-r, q(1, 1));
        }
        d
    })
}

/// Exponents share the fractional part `half / 2` so sums stay inside the class.
pub fn quasi_trig(half: bool) -> impl Strategy<Value = QuasiTrig<Rational>> {
    let offset = if half { q(1, 2) } else { q(0, 1) };
    (0i64..=3, 0i64..=3, small_poly(2), small_poly(2), denominator()).prop_map(move |(a, b, p0, p1, d)| {
        QuasiTrig::from_parts(
            Variable::Theta,
            q(a, 1) + &offset,
            q(b, 1) + &offset,
            SCPoly::new(p0, p1),
            d,
        )
        .expect("nonzero denominator")
    })
}

pub fn triple() -> impl Strategy<Value = (QuasiTrig<Rational>, QuasiTrig<Rational>, QuasiTrig<Rational>)> {
    any::<bool>().prop_flat_map(|h| (quasi_trig(h), quasi_trig(h), quasi_trig(h)))
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

fn err(e: lissajous_core::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

pub fn product_rule(f: &QuasiTrig<Rational>, g: &QuasiTrig<Rational>) -> Result<(), TestCaseError> {
    let lhs = f.mul(g).and_then(|p| p.differentiate()).map_err(err)?;
    let rhs = f
        .differentiate()
        .and_then(|df| df.mul(g))
        .and_then(|a| f.mul(&g.differentiate()?).and_then(|b| a.add(&b)))
        .map_err(err)?;
    check(lhs.sub(&rhs).map_err(err)?.is_zero(), "(fg)' = f'g + fg'")
}

pub fn ring_axioms(
    f: &QuasiTrig<Rational>,
    g: &QuasiTrig<Rational>,
    h: &QuasiTrig<Rational>,
) -> Result<(), TestCaseError> {
    let e = |r: lissajous_core::Result<QuasiTrig<Rational>>| r.map_err(err);
    let zero = |a: &QuasiTrig<Rational>, b: &QuasiTrig<Rational>| -> Result<bool, TestCaseError> {
        Ok(e(a.sub(b))?.is_zero())
    };
    check(zero(&e(f.add(g))?, &e(g.add(f))?)?, "f+g = g+f")?;
    check(zero(&e(f.mul(g))?, &e(g.mul(f))?)?, "fg = gf")?;
    check(zero(&e(e(f.add(g))?.add(h))?, &e(f.add(&e(g.add(h))?))?)?, "(f+g)+h = f+(g+h)")?;
    check(zero(&e(e(f.mul(g))?.mul(h))?, &e(f.mul(&e(g.mul(h))?))?)?, "(fg)h = f(gh)")?;
    check(
        zero(&e(f.mul(&e(g.add(h))?))?, &e(e(f.mul(g))?.add(&e(f.mul(h))?))?)?,
        "f(g+h) = fg+fh",
    )?;
    check(e(f.sub(f))?.is_zero(), "f-f = 0")?;
    check(zero(&e(f.mul(&QuasiTrig::one(Variable::Theta)))?, f)?, "f*1 = f")?;
    if !g.is_zero() {
        check(zero(&e(e(f.div(g))?.mul(g))?, f)?, "(f/g)g = f")?;
    }
    Ok(())
}

pub fn canonical_idempotent(f: &QuasiTrig<Rational>) -> Result<(), TestCaseError> {
    let again = f.clone().canonicalize().map_err(err)?;
    check(format!("{again:?}") == format!("{f:?}"), "canonicalize(canonicalize(f)) = canonicalize(f)")?;
    // the denominator is monic and free of common factors with the numerator
    let lc = f.denominator().lc();
    check(lc == Rational::from_i64(1), "monic denominator")
}

/// The reduced form evaluates to the same value as the unreduced expression.
pub fn reduction_correct(a: i64, b: i64, sin_coeffs: &[i64], cos_coeffs: &[i64]) -> Result<(), TestCaseError> {
    let ps = UPoly::from_coeffs(sin_coeffs.iter().map(|&c| q(c, 1)).collect());
    let pc = UPoly::from_coeffs(cos_coeffs.iter().map(|&c| q(c, 1)).collect());
    let f = QuasiTrig::sin_poly(Variable::Theta, &ps)
        .mul(&QuasiTrig::cos_poly(Variable::Theta, pc.clone()))
        .map(|g| g.mul_sin_cos(&q(a, 1), &q(b, 1)))
        .map_err(err)?;
    for x in [0.3, 0.7, 1.1] {
        let xr = Real::new(x);
        let s = xr.sin();
        let c = xr.cos();
        let direct = ps.map(|v| v.to_real()).eval(&s) * pc.map(|v| v.to_real()).eval(&c) * s.pow_i(a as i32) * c.pow_i(b as i32);
        let reduced = f.evaluate(&xr).map_err(err)?;
        check(direct.residual(&reduced) < 1e-60, "reduced value")?;
    }
    Ok(())
}

pub fn reduction_inputs() -> impl Strategy<Value = (i64, i64, Vec<i64>, Vec<i64>)> {
    (
        0i64..=3,
        0i64..=3,
        prop::collection::vec(-5i64..=5, 0..=6),
        prop::collection::vec(-5i64..=5, 0..=3),
    )
}
