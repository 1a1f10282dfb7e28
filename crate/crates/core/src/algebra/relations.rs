use super::bivar::BivarPoly;
use super::products::{casimir_realization, product_polynomial};
use super::states::{Op, StateEngine, StateVector};
use crate::orthomodels::StateIndex;
use crate::report::{Ctx, VerificationReport};
use crate::scalar::Scalar;

use Op::*;

type Terms<'t, S> = Vec<(S, &'t [Op])>;

fn int<S: Scalar>(v: i64) -> S {
    S::from_i64(v)
}

impl<S: Scalar> StateEngine<'_, S> {
    /// Record `lhs psi = rhs psi` on the eigenstate `idx`.
    fn relation(&self, report: &mut VerificationReport, ctx: &Ctx<'_>, idx: StateIndex, lhs: &Terms<'_, S>, rhs: &Terms<'_, S>) {
        let psi = StateVector::basis(idx);
        let both = self
            .combination(lhs, &psi)
            .and_then(|l| Ok((l, self.combination(rhs, &psi)?)));
        match both {
            Ok((l, r)) => {
                let residual = (!S::EXACT).then(|| l.residual(&r));
                report.check_residual(ctx, idx, &r, &l, residual, l.agrees(&r));
            }
            Err(e) => {
                report.check(ctx, idx, "relation", e, false);
            }
        }
    }

    fn d(&self) -> S {
        int(self.spec.step as i64)
    }

    fn eps_s(&self) -> S {
        int(self.spec.epsilon)
    }
}

fn states(mu_max: u32, nu_max: u32) -> impl Iterator<Item = StateIndex> {
    (0..=nu_max).flat_map(move |nu| (0..=mu_max).map(move |mu| StateIndex::new(mu, nu)))
}

/// `X+X-` and `X-X+` against `P1 -+ P2 sqrt(H_phi)` on each state of the box.
pub fn verify_products_on_states<S: Scalar>(eng: &StateEngine<'_, S>, mu_max: u32, nu_max: u32) -> VerificationReport {
    let label = eng.system().model().label();
    let base = Ctx::new("products", &label, "");
    let mut report = VerificationReport::new();
    let one = S::one();
    for idx in states(mu_max, nu_max) {
        eng.relation(
            &mut report,
            &base.op("X+X-=P1-P2*sqrtHphi"),
            idx,
            &vec![(one.clone(), &[XPlus, XMinus][..])],
            &vec![(one.clone(), &[P1][..]), (-one.clone(), &[P2, SqrtHphi][..])],
        );
        eng.relation(
            &mut report,
            &base.op("X-X+=P1+P2*sqrtHphi"),
            idx,
            &vec![(one.clone(), &[XMinus, XPlus][..])],
            &vec![(one.clone(), &[P1][..]), (one.clone(), &[P2, SqrtHphi][..])],
        );
    }
    report
}

/// Generalized Heisenberg algebra relations of `(H_phi, X+, X-)`.
pub fn verify_gha<S: Scalar>(eng: &StateEngine<'_, S>, mu_max: u32, nu_max: u32) -> VerificationReport {
    let label = eng.system().model().label();
    let base = Ctx::new("gha", &label, "");
    let mut report = VerificationReport::new();
    let one = S::one();
    let d = eng.d();
    let d2 = d.clone() * &d;
    let two_d = d.clone() * int::<S>(2);
    for idx in states(mu_max, nu_max) {
        for (x, sign, name) in [(XPlus, 1, "+"), (XMinus, -1, "-")] {
            let s = int::<S>(sign);
            eng.relation(
                &mut report,
                &base.op(&format!("[sqrtHphi,X{name}]")),
                idx,
                &vec![(one.clone(), &[SqrtHphi, x][..]), (-one.clone(), &[x, SqrtHphi][..])],
                &vec![(s.clone() * &d, &[x][..])],
            );
            let x_sqrt: &[Op] = if sign > 0 { &[XPlus, SqrtHphi] } else { &[XMinus, SqrtHphi] };
            eng.relation(
                &mut report,
                &base.op(&format!("[Hphi,X{name}]")),
                idx,
                &vec![(one.clone(), &[Hphi, x][..]), (-one.clone(), &[x, Hphi][..])],
                &vec![(s * &two_d, x_sqrt), (d2.clone(), &[x][..])],
            );
        }
        eng.relation(
            &mut report,
            &base.op("[X+,X-]"),
            idx,
            &vec![(one.clone(), &[XPlus, XMinus][..]), (-one.clone(), &[XMinus, XPlus][..])],
            &vec![(int(-2), &[P2, SqrtHphi][..])],
        );
        eng.relation(
            &mut report,
            &base.op("{X+,X-}"),
            idx,
            &vec![(one.clone(), &[XPlus, XMinus][..]), (one.clone(), &[XMinus, XPlus][..])],
            &vec![(int(2), &[P1][..])],
        );
    }
    report
}

/// Relations of the polynomial integrals `O`, `E`, `E'`, the standard form
/// with `A = H_phi`, `B = eta O`, `C = 2 d eta E'`, the algebraic constraint,
/// and the twisted Hermiticity of `O` and `E'`.
pub fn verify_poly_algebra<S: Scalar>(eng: &StateEngine<'_, S>, mu_max: u32, nu_max: u32) -> VerificationReport {
    let label = eng.system().model().label();
    let base = Ctx::new("poly", &label, "");
    let mut report = VerificationReport::new();
    let one = S::one();
    let d = eng.d();
    let d2 = d.clone() * &d;
    let d3 = d2.clone() * &d;
    let d4 = d2.clone() * &d2;
    let eps = eng.eps_s();
    let half = one.clone() / int::<S>(2);
    let spec = &eng.spec;
    let eta2 = int::<S>(spec.eta_squared());
    for idx in states(mu_max, nu_max) {
        let rel = |report: &mut VerificationReport, name: &str, lhs: Terms<'_, S>, rhs: Terms<'_, S>| {
            eng.relation(report, &base.op(name), idx, &lhs, &rhs);
        };
        rel(
            &mut report,
            "X+=O*sqrtHphi+E",
            vec![(one.clone(), &[XPlus])],
            vec![(one.clone(), &[O, SqrtHphi]), (one.clone(), &[E])],
        );
        rel(
            &mut report,
            "X-=eps(-O*sqrtHphi+E)",
            vec![(one.clone(), &[XMinus])],
            vec![(-eps.clone(), &[O, SqrtHphi]), (eps.clone(), &[E])],
        );
        rel(
            &mut report,
            "[Hphi,O]=d^2O+2dE",
            vec![(one.clone(), &[Hphi, O]), (-one.clone(), &[O, Hphi])],
            vec![(d2.clone(), &[O]), (d.clone() * int::<S>(2), &[E])],
        );
        rel(
            &mut report,
            "[Hphi,E]=2dO*Hphi+d^2E",
            vec![(one.clone(), &[Hphi, E]), (-one.clone(), &[E, Hphi])],
            vec![(d.clone() * int::<S>(2), &[O, Hphi]), (d2.clone(), &[E])],
        );
        rel(
            &mut report,
            "[O,E]=-dO^2-eps*P2",
            vec![(one.clone(), &[O, E]), (-one.clone(), &[E, O])],
            vec![(-d.clone(), &[O, O]), (-eps.clone(), &[P2])],
        );
        rel(
            &mut report,
            "-O^2Hphi+E^2-dOE=eps*P1",
            vec![(-one.clone(), &[O, O, Hphi]), (one.clone(), &[E, E]), (-d.clone(), &[O, E])],
            vec![(eps.clone(), &[P1])],
        );
        rel(
            &mut report,
            "E'=E+(d/2)O",
            vec![(one.clone(), &[EPrime])],
            vec![(one.clone(), &[E]), (d.clone() * &half, &[O])],
        );
        rel(
            &mut report,
            "[Hphi,O]=2dE'",
            vec![(one.clone(), &[Hphi, O]), (-one.clone(), &[O, Hphi])],
            vec![(d.clone() * int::<S>(2), &[EPrime])],
        );
        rel(
            &mut report,
            "[Hphi,E']=d{Hphi,O}-d^3O/2",
            vec![(one.clone(), &[Hphi, EPrime]), (-one.clone(), &[EPrime, Hphi])],
            vec![(d.clone(), &[Hphi, O]), (d.clone(), &[O, Hphi]), (-(d3.clone() * &half), &[O])],
        );
        rel(
            &mut report,
            "[O,E']=-dO^2-eps*P2",
            vec![(one.clone(), &[O, EPrime]), (-one.clone(), &[EPrime, O])],
            vec![(-d.clone(), &[O, O]), (-eps.clone(), &[P2])],
        );
        rel(
            &mut report,
            "-O*Hphi*O+E'^2+d^2O^2/4=eps(P1+dP2/2)",
            vec![
                (-one.clone(), &[O, Hphi, O]),
                (one.clone(), &[EPrime, EPrime]),
                (d2.clone() / int::<S>(4), &[O, O]),
            ],
            vec![(eps.clone(), &[P1]), (eps.clone() * &d * &half, &[P2])],
        );

        // Standard form on the real combinations B/eta = O and C/eta = 2d E'.
        let c = d.clone() * int::<S>(2);
        rel(
            &mut report,
            "[A,B]=C",
            vec![(one.clone(), &[Hphi, O]), (-one.clone(), &[O, Hphi])],
            vec![(c.clone(), &[EPrime])],
        );
        rel(
            &mut report,
            "[A,C]=2d^2{A,B}-d^4B",
            vec![(c.clone(), &[Hphi, EPrime]), (-c.clone(), &[EPrime, Hphi])],
            vec![
                (spec.ab_anticommutator.clone(), &[Hphi, O]),
                (spec.ab_anticommutator.clone(), &[O, Hphi]),
                (spec.b_linear.clone(), &[O]),
            ],
        );
        // eta^2 [O, C/eta] = b_squared eta^2 O^2 + source_scale P2
        rel(
            &mut report,
            "[B,C]=-2d^2B^2+2dP2",
            vec![(eta2.clone() * &c, &[O, EPrime]), (-(eta2.clone() * &c), &[EPrime, O])],
            vec![(spec.b_squared.clone() * &eta2, &[O, O]), (spec.source_scale.clone(), &[P2])],
        );
        // C^2, {A, B^2} and B^2 each carry eta^2
        let c2 = c.clone() * &c;
        rel(
            &mut report,
            "C^2-2d^2{A,B^2}+5d^4B^2=-4d^2(P1-dP2/2)",
            vec![
                (eta2.clone() * &c2, &[EPrime, EPrime]),
                (-(eta2.clone() * &d2 * int::<S>(2)), &[Hphi, O, O]),
                (-(eta2.clone() * &d2 * int::<S>(2)), &[O, O, Hphi]),
                (eta2.clone() * &d4 * int::<S>(5), &[O, O]),
            ],
            vec![(-(d2.clone() * int::<S>(4)), &[P1]), (d3.clone() * int::<S>(2), &[P2])],
        );
    }
    verify_hermiticity(eng, &base, &mut report, mu_max, nu_max);
    report
}

/// `<s|O|t> = -eps <t|O|s>` and `<s|E'|t> = eps <t|E'|s>` between normalized states.
fn verify_hermiticity<S: Scalar>(
    eng: &StateEngine<'_, S>,
    base: &Ctx<'_>,
    report: &mut VerificationReport,
    mu_max: u32,
    nu_max: u32,
) {
    let eps = eng.spec.epsilon;
    for s in states(mu_max, nu_max) {
        let target = match eng.action(crate::operators::Direction::Raise, s) {
            Ok(a) => a.target,
            Err(e) => {
                report.check(&base.op("hermiticity"), s, "action", e, false);
                continue;
            }
        };
        let Some(t) = target else { continue };
        for (op, sign, name) in [(O, -eps, "O^dag=-eps*O"), (EPrime, eps, "E'^dag=eps*E'")] {
            let ctx = base.op(name);
            let pair = format!("{s}->{t}");
            match (eng.normalized_element(op, s, t), eng.normalized_element(op, t, s)) {
                (Ok(forward), Ok(back)) => {
                    let expected = back.scale_sign(sign);
                    let ok = forward.agrees(&expected);
                    report.check(&ctx, pair, expected, forward, ok);
                }
                (Err(e), _) | (_, Err(e)) => {
                    report.check(&ctx, pair, "element", e, false);
                }
            }
        }
    }
}

/// Casimir-route `Phi(N)` against `X+X-` with `sqrt(H_phi) = d (N + u)`, as
/// polynomials in `(H, N+u)` and on each state of the box.
pub fn verify_realization<S: Scalar>(eng: &StateEngine<'_, S>, mu_max: u32, nu_max: u32) -> VerificationReport {
    let model = eng.system().model();
    let label = model.label();
    let base = Ctx::new("realization", &label, "");
    let mut report = VerificationReport::new();
    let cas = casimir_realization(model);
    let d = eng.d();
    let gha = product_polynomial(model).substitute_y(&d, 1);
    report.check(
        &base.op("Phi_casimir=X+X-"),
        "polynomial",
        gha.render("H", "w"),
        cas.phi.render("H", "w"),
        cas.phi.agrees(&gha),
    );
    report.check(&base.op("B0=0"), "polynomial", 0, cas.b0.render("H", "w"), cas.b0.is_zero());
    for idx in states(mu_max, nu_max) {
        let w = model.epsilon(idx.nu) / &d;
        let energy = model.energy(idx);
        let a = cas.a.eval(&energy, &w);
        let eps = model.epsilon(idx.nu);
        report.compare(&base.op("A(N)=Hphi"), idx, &(eps.clone() * eps), &a);
        let phi = cas.phi.eval(&energy, &w);
        let computed = eng
            .word(&[XPlus, XMinus], &StateVector::basis(idx))
            .map(|v| v.get(idx));
        match computed {
            Ok(c) => {
                report.compare(&base.op("Phi(N)=X+X-"), idx, &phi, &c);
            }
            Err(e) => {
                report.check(&base.op("Phi(N)=X+X-"), idx, phi, e, false);
            }
        }
    }
    report
}

/// P1 and P2 as coefficient tables.
pub fn export_p1p2<S: Scalar>(p1: &BivarPoly<S>, p2: &BivarPoly<S>) -> String {
    let mut out = String::from("# P1: i j coefficient of H^i Hphi^j\n");
    out.push_str(&p1.coefficient_table());
    out.push_str("# P2: i j coefficient of H^i Hphi^j\n");
    out.push_str(&p2.coefficient_table());
    out
}

/// Everything above on one box.
pub fn verify_algebra<S: Scalar>(eng: &StateEngine<'_, S>, mu_max: u32, nu_max: u32) -> VerificationReport {
    let mut report = verify_products_on_states(eng, mu_max, nu_max);
    report.extend(verify_gha(eng, mu_max, nu_max));
    report.extend(verify_poly_algebra(eng, mu_max, nu_max));
    report.extend(verify_realization(eng, mu_max, nu_max));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthomodels::{Lissajous, ModelParams};
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn run(m: ModelParams, mu: u32, nu: u32) {
        let sys = Lissajous::new(m).unwrap();
        let eng = StateEngine::new(&sys);
        let r = verify_algebra(&eng, mu, nu);
        let failures: Vec<String> = r.failures().map(|f| f.to_string()).collect();
        assert!(r.all_passed(), "{}\n{}", failures.join("\n"), r.summary());
    }

    #[test]
    fn one_param_algebra() {
        run(ModelParams::one_param(1, 1, q(1, 1)).unwrap(), 3, 3);
    }

    #[test]
    fn one_param_odd_sign() {
        run(ModelParams::one_param(1, 2, q(3, 2)).unwrap(), 2, 3);
    }

    #[test]
    fn two_param_algebra() {
        run(ModelParams::two_param(1, 2, q(2, 1), q(1, 1)).unwrap(), 2, 2);
    }

    #[test]
    fn extended_algebra() {
        run(ModelParams::ext_two_param(1, 1, q(2, 1), q(2, 1), 1).unwrap(), 2, 2);
    }
}
