use super::{Eigenfunction, Lissajous, Separable, StateIndex};
use crate::error::Result;
use crate::report::{Ctx, VerificationReport};
use crate::scalar::Scalar;
use crate::trig::QuasiTrig;

/// `H^K_theta f = -f'' - cot f' + K^2 f / sin^2`.
pub fn apply_htheta<S: Scalar>(big_k: &S, f: &QuasiTrig<S>) -> Result<QuasiTrig<S>> {
    let d = f.differentiate()?;
    let dd = d.differentiate()?;
    let k2 = big_k.clone() * big_k;
    dd.neg()
        .sub(&d.mul_cot())?
        .add(&f.mul_sin_cos(&-S::from_i64(2), &S::zero()).scale(&k2))
}

/// Full Hamiltonian on a product state:
/// `H (Theta Phi) = (-Theta'' - cot Theta') Phi + k^2 (Theta / sin^2) (H_phi Phi)`.
pub fn apply_full_h<S: Scalar>(sys: &Lissajous<S>, theta: &QuasiTrig<S>, phi: &QuasiTrig<S>) -> Result<Separable<S>> {
    let d = theta.differentiate()?;
    let kinetic = d.differentiate()?.neg().sub(&d.mul_cot())?;
    let k = sys.model().k();
    let centrifugal = theta.mul_sin_cos(&-S::from_i64(2), &S::zero()).scale(&(k.clone() * &k));
    let mut out = Separable::single(kinetic, phi.clone());
    out.push(centrifugal, sys.apply_hphi(phi)?);
    Ok(out)
}

fn eigenvalue_check<S: Scalar>(
    report: &mut VerificationReport,
    ctx: &Ctx<'_>,
    source: StateIndex,
    expected: &S,
    computed: Result<S>,
) {
    match computed {
        Ok(v) => {
            report.compare(ctx, source, expected, &v);
        }
        Err(e) => {
            report.check(ctx, source, expected, e, false);
        }
    }
}

/// Check `H_phi`, `H^K_theta` and the full `H` eigen-equations on `0..=mu_max x 0..=nu_max`.
/// For the extension, also checks the partner eigen-equation and the factorization
/// `A^dagger A = H^(1)_phi - E_seed`.
pub fn verify_eigen_equations<S: Scalar>(sys: &Lissajous<S>, mu_max: u32, nu_max: u32) -> VerificationReport {
    let model = sys.model();
    let label = model.label();
    let base = Ctx::new("eigen", &label, "");
    let mut report = VerificationReport::new();
    for nu in 0..=nu_max {
        let eps = model.epsilon(nu);
        let eps2 = eps.clone() * &eps;
        let idx0 = StateIndex::new(0, nu);
        let phi = match sys.phi_function(nu) {
            Ok(p) => p,
            Err(e) => {
                report.check(&base.op("Hphi"), idx0, &eps2, e, false);
                continue;
            }
        };
        let hphi = sys.apply_hphi(&phi).and_then(|h| h.proportionality(&phi));
        eigenvalue_check(&mut report, &base.op("Hphi"), idx0, &eps2, hphi);
        if sys.seed().is_ok() {
            let g = sys.partner_phi(nu);
            let partner = sys.apply_partner_hphi(&g).and_then(|h| h.proportionality(&g));
            eigenvalue_check(&mut report, &base.op("Hphi_partner"), idx0, &eps2, partner);
            let susy = sys
                .apply_supercharge(false, &g)
                .and_then(|ag| sys.apply_supercharge(true, &ag))
                .and_then(|h| h.proportionality(&g));
            let expected = eps2.clone() - model.seed_energy();
            eigenvalue_check(&mut report, &base.op("AdagA"), idx0, &expected, susy);
        }
        for mu in 0..=mu_max {
            let idx = StateIndex::new(mu, nu);
            let e = match sys.eigenfunction(idx) {
                Ok(e) => e,
                Err(err) => {
                    report.check(&base.op("H"), idx, model.energy(idx), err, false);
                    continue;
                }
            };
            let energy = model.energy(idx);
            let ht = apply_htheta(&e.big_k, &e.theta).and_then(|h| h.proportionality(&e.theta));
            eigenvalue_check(&mut report, &base.op("Htheta"), idx, &energy, ht);
            let full = full_h_eigenvalue(sys, &e);
            eigenvalue_check(&mut report, &base.op("H"), idx, &energy, full);
        }
    }
    report
}

fn full_h_eigenvalue<S: Scalar>(sys: &Lissajous<S>, e: &Eigenfunction<S>) -> Result<S> {
    apply_full_h(sys, &e.theta, &e.phi)?.proportionality(&e.theta, &e.phi)
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
    fn theta_ground_state_energy() {
        let k = q(7, 3);
        let th = Lissajous::<Rational>::theta_function(&k, 0);
        let r = apply_htheta(&k, &th).unwrap().proportionality(&th).unwrap();
        assert_eq!(r, &k * (&k + q(1, 1)));
    }

    #[test]
    fn full_energy_of_excited_state() {
        let sys = Lissajous::new(ModelParams::one_param(1, 1, q(1, 1)).unwrap()).unwrap();
        let e = sys.eigenfunction(StateIndex::new(2, 1)).unwrap();
        assert_eq!(full_h_eigenvalue(&sys, &e).unwrap(), q(99, 4));
    }

    #[test]
    fn small_boxes_pass() {
        for m in [
            ModelParams::one_param(1, 2, q(3, 2)).unwrap(),
            ModelParams::two_param(1, 1, q(2, 1), q(1, 1)).unwrap(),
            ModelParams::ext_two_param(1, 1, q(3, 1), q(5, 2), 1).unwrap(),
        ] {
            let sys = Lissajous::new(m).unwrap();
            let r = verify_eigen_equations(&sys, 2, 2);
            assert!(r.all_passed(), "{}", r.render());
        }
    }
}
