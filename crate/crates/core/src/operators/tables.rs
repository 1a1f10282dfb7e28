use super::closed;
use super::composite::apply_x;
use super::ladder::{apply_ladder, apply_lowering, apply_shift, Direction};
use crate::error::Result;
use crate::orthomodels::{phi_norm_squared, Model, theta_norm_ratio, Lissajous, StateIndex};
use crate::report::{Ctx, VerificationReport};
use crate::scalar::Scalar;
use crate::trig::QuasiTrig;

/// Squared normalized coefficient of `image = r * target` given the norm ratio
/// `||target||^2 / ||source||^2`. Zero when the image vanishes.
fn squared_coefficient<S: Scalar>(image: &QuasiTrig<S>, target: &QuasiTrig<S>, ratio: Result<S>) -> Result<S> {
    if image.is_zero() {
        return Ok(S::zero());
    }
    let r = image.proportionality(target)?;
    Ok(r.clone() * r * ratio?)
}

fn phi_ratio<S: Scalar>(m: &Model<S>, from: u32, to: u32) -> Result<S> {
    Ok(phi_norm_squared(m, to)? / phi_norm_squared(m, from)?)
}

fn record<S: Scalar>(report: &mut VerificationReport, ctx: &Ctx<'_>, source: StateIndex, expected: Result<S>, computed: Result<S>) {
    match (expected, computed) {
        (Ok(e), Ok(c)) => {
            report.compare(ctx, source, &e, &c);
        }
        (Ok(e), Err(err)) => {
            report.check(ctx, source, e, err, false);
        }
        (Err(err), Ok(c)) => {
            report.check(ctx, source, err, c, false);
        }
        (Err(a), Err(b)) => {
            report.check(ctx, source, a, b, false);
        }
    }
}

/// Check every action coefficient on `0..=mu_max x 0..=nu_max` against its closed form:
/// shift and ladder actions, the supercharge, `X+-`, both products and energy preservation.
pub fn verify_action_tables<S: Scalar>(sys: &Lissajous<S>, mu_max: u32, nu_max: u32) -> VerificationReport {
    let m = sys.model();
    let label = m.label();
    let base = Ctx::new("actions", &label, "");
    let mut report = VerificationReport::new();

    for nu in 0..=nu_max {
        let src = StateIndex::new(0, nu);
        let phi = match sys.phi_function(nu) {
            Ok(p) => p,
            Err(e) => {
                report.check(&base.op("Phi"), src, "eigenfunction", e, false);
                continue;
            }
        };
        let computed = (|| {
            let up = apply_ladder(sys, Direction::Raise, nu, &phi)?;
            let ratio = phi_ratio(m, nu, nu + 1);
            squared_coefficient(&up, &sys.phi_function(nu + 1)?, ratio)
        })();
        record(&mut report, &base.op("B+"), src, closed::ladder_raise(m, nu), computed);

        let computed = (|| {
            let down = apply_lowering(sys, nu, &phi)?;
            if nu == 0 {
                return Ok(if down.is_zero() { S::zero() } else { S::one() });
            }
            let ratio = phi_ratio(m, nu, nu - 1);
            squared_coefficient(&down, &sys.phi_function(nu - 1)?, ratio)
        })();
        record(&mut report, &base.op("B-"), src, closed::ladder_lower(m, nu), computed);

        if sys.seed().is_ok() {
            let intertwined = (|| {
                let g = sys.partner_phi(nu);
                let ag = sys.apply_supercharge(false, &g)?;
                sys.apply_hphi(&ag)?.proportionality(&ag)
            })();
            let eps = m.epsilon(nu);
            record(&mut report, &base.op("Hphi.A"), src, Ok(eps.clone() * eps), intertwined);
        }
    }
    if let Ok(chi) = sys.seed() {
        let ctx = base.op("A.chi");
        match sys.apply_supercharge(false, chi) {
            Ok(f) => report.check(&ctx, "seed", 0, &f, f.is_zero()),
            Err(e) => report.check(&ctx, "seed", 0, e, false),
        };
    }

    for nu in 0..=nu_max {
        let big_k = m.big_k(nu);
        for mu in 0..=mu_max {
            let idx = StateIndex::new(mu, nu);
            let theta = Lissajous::<S>::theta_function(&big_k, mu);

            let computed = (|| {
                let k_up = big_k.clone() + S::one();
                let img = apply_shift(Direction::Raise, &k_up, &theta)?;
                if mu == 0 {
                    return Ok(if img.is_zero() { S::zero() } else { S::one() });
                }
                let target = Lissajous::<S>::theta_function(&k_up, mu - 1);
                squared_coefficient(&img, &target, theta_norm_ratio(&big_k, mu, &k_up, mu - 1))
            })();
            let expected = closed::shift_raise(&(big_k.clone() + S::one()), mu);
            record(&mut report, &base.op("A+"), idx, Ok(expected), computed);

            let computed = (|| {
                let k_down = big_k.clone() - S::one();
                let img = apply_shift(Direction::Lower, &big_k, &theta)?;
                let target = Lissajous::<S>::theta_function(&k_down, mu + 1);
                squared_coefficient(&img, &target, theta_norm_ratio(&big_k, mu, &k_down, mu + 1))
            })();
            record(&mut report, &base.op("A-"), idx, Ok(closed::shift_lower(&big_k, mu)), computed);

            verify_x(sys, &base, &mut report, idx);
        }
    }
    report
}

fn verify_x<S: Scalar>(sys: &Lissajous<S>, base: &Ctx<'_>, report: &mut VerificationReport, idx: StateIndex) {
    let m = sys.model();
    for (dir, name, expected) in [
        (Direction::Raise, "X+", closed::x_raise(m, idx)),
        (Direction::Lower, "X-", closed::x_lower(m, idx)),
    ] {
        let ctx = base.op(name);
        let action = apply_x(sys, dir, idx);
        record(report, &ctx, idx, expected, action.as_ref().map(|a| a.normalized_squared()).map_err(|e| e.clone()));
        let Ok(action) = action else { continue };
        let Some(target) = action.target else { continue };

        let e_src = m.energy(idx);
        let e_tgt = m.energy(target);
        report.compare(&base.op(&format!("{name}.energy")), idx, &e_src, &e_tgt);

        let (back_dir, product_name, product) = match dir {
            Direction::Raise => (Direction::Lower, "X-X+", closed::product_lower_raise(m, idx)),
            Direction::Lower => (Direction::Raise, "X+X-", closed::product_raise_lower(m, idx)),
        };
        let ctx = base.op(product_name);
        match apply_x(sys, back_dir, target) {
            Ok(back) => {
                let returned = back.target == Some(idx);
                report.check(&base.op(&format!("{product_name}.index")), idx, idx, fmt_target(back.target), returned);
                let computed = back.unnormalized.clone() * &action.unnormalized;
                record(report, &ctx, idx, product, Ok(computed));
                // normalized coefficients multiply to the same eigenvalue
                let normalized = back.normalized.mul(&action.normalized);
                let closed = closed_product(m, dir, idx);
                record(report, &base.op(&format!("{product_name}.normalized")), idx, closed, Ok(normalized.square()));
            }
            Err(e) => {
                report.check(&ctx, idx, "action", e, false);
            }
        }
    }
}

fn closed_product<S: Scalar>(m: &Model<S>, dir: Direction, idx: StateIndex) -> Result<S> {
    let p = match dir {
        Direction::Raise => closed::product_lower_raise(m, idx),
        Direction::Lower => closed::product_raise_lower(m, idx),
    }?;
    Ok(p.clone() * p)
}

fn fmt_target(t: Option<StateIndex>) -> String {
    t.map(|t| t.to_string()).unwrap_or_else(|| "0".into())
}
