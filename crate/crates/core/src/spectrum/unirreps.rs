use std::cmp::Ordering;
use std::fmt;

use super::structure::{energy_root, structure_function};
use crate::error::{Error, Result};
use crate::orthomodels::{Model, Variant};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    U1,
    U2,
}

impl Branch {
    pub fn tag(self) -> &'static str {
        match self {
            Branch::U1 => "u1",
            Branch::U2 => "u2",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One finite-dimensional unirrep: the energy, the constant `u` and the
/// structure function on `x = 0..=pbar+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnirrepSolution<S> {
    pub branch: Branch,
    pub rtilde: u32,
    pub ptilde: u32,
    pub pbar: u32,
    pub u: S,
    pub energy: S,
    pub phi_values: Vec<S>,
}

impl<S: Scalar> UnirrepSolution<S> {
    pub fn dim(&self) -> u32 {
        self.pbar + 1
    }
}

/// A candidate dropped by the constraints, with the reason.
#[derive(Clone, Debug, PartialEq)]
pub struct Rejected {
    pub branch: Branch,
    pub rtilde: u32,
    pub ptilde: u32,
    pub pbar: u32,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnirrepSet<S> {
    pub solutions: Vec<UnirrepSolution<S>>,
    pub rejected: Vec<Rejected>,
}

impl<S: Scalar> UnirrepSet<S> {
    pub fn branch(&self, b: Branch) -> impl Iterator<Item = &UnirrepSolution<S>> {
        self.solutions.iter().filter(move |s| s.branch == b)
    }
}

/// `2 alpha` for one parameter, `alpha + beta` otherwise.
fn sigma<S: Scalar>(model: &Model<S>) -> S {
    match model.variant {
        Variant::OneParam => model.alpha.clone() + &model.alpha,
        _ => model.alpha.clone() + &model.beta,
    }
}

/// Largest `p~`: `m`, or `2m` with two parameters.
pub fn ptilde_max<S: Scalar>(model: &Model<S>) -> u32 {
    model.theta_step()
}

fn frac<S: Scalar>(num: S, den: i64) -> S {
    num / S::from_i64(den)
}

/// `E1` or `E2` for the given labels.
pub fn branch_energy<S: Scalar>(model: &Model<S>, branch: Branch, rtilde: u32, ptilde: u32, pbar: u32) -> S {
    let mm = model.theta_step() as i64;
    let n2 = 2 * model.n as i64;
    let r = rtilde as i64;
    let p = ptilde as i64;
    let s = sigma(model);
    let base = S::from_i64(pbar as i64 + 1);
    let inner = match branch {
        Branch::U1 => base + frac(S::from_i64(2 * r - 1) + &s, n2) + S::from_ratio(1 - 2 * p, 2 * mm),
        Branch::U2 => base + frac(S::from_i64(1 - 2 * r) + &s, n2) + S::from_ratio(2 * p - 1, 2 * mm),
    };
    let mmf = S::from_i64(mm);
    mmf.clone() * &mmf * &inner * &inner - S::from_ratio(1, 4)
}

/// `u1 = (2r~ - 1 + sigma)/(2n)`; `u2 = (2p~ - 1 - sqrt(1+4E))/(2m')`.
pub fn branch_u<S: Scalar>(model: &Model<S>, branch: Branch, rtilde: u32, ptilde: u32, energy: &S) -> Result<S> {
    match branch {
        Branch::U1 => Ok(frac(S::from_i64(2 * rtilde as i64 - 1) + &sigma(model), 2 * model.n as i64)),
        Branch::U2 => {
            let root = energy_root(energy)?;
            let mm = model.theta_step() as i64;
            Ok(frac(S::from_i64(2 * ptilde as i64 - 1) - &root, 2 * mm))
        }
    }
}

fn check_constraints<S: Scalar>(phi: &[S]) -> std::result::Result<(), String> {
    let last = phi.len() - 1;
    if !phi[0].is_zero() {
        return Err(format!("Phi(0) = {} is not zero", phi[0]));
    }
    if !phi[last].is_zero() {
        return Err(format!("Phi({last}) = {} is not zero", phi[last]));
    }
    for (x, v) in phi.iter().enumerate().take(last).skip(1) {
        if !v.is_positive_value() {
            return Err(format!("Phi({x}) = {v} is not positive"));
        }
    }
    Ok(())
}

fn order<S: Scalar>(a: &UnirrepSolution<S>, b: &UnirrepSolution<S>) -> Ordering {
    a.energy
        .partial_cmp(&b.energy)
        .unwrap_or(Ordering::Equal)
        .then(a.branch.cmp(&b.branch))
        .then(a.rtilde.cmp(&b.rtilde))
        .then(a.ptilde.cmp(&b.ptilde))
        .then(a.pbar.cmp(&b.pbar))
}

/// Enumerate both branches for `pbar <= pbar_max` and keep the candidates that
/// satisfy `Phi(0) = Phi(pbar+1) = 0` and `Phi(x) > 0` in between.
/// Solutions are sorted by `(E, branch, r~, p~, pbar)`.
pub fn solve_unirreps<S: Scalar>(model: &Model<S>, pbar_max: u32) -> Result<UnirrepSet<S>> {
    let mut solutions = Vec::new();
    let mut rejected = Vec::new();
    for branch in [Branch::U1, Branch::U2] {
        for rtilde in 1..=model.n {
            for ptilde in 1..=ptilde_max(model) {
                for pbar in 0..=pbar_max {
                    let energy = branch_energy(model, branch, rtilde, ptilde, pbar);
                    let u = branch_u(model, branch, rtilde, ptilde, &energy)?;
                    let phi_values: Vec<S> = (0..=pbar as i64 + 1)
                        .map(|x| structure_function(model, &S::from_i64(x), &u, &energy))
                        .collect();
                    match check_constraints(&phi_values) {
                        Ok(()) => solutions.push(UnirrepSolution {
                            branch,
                            rtilde,
                            ptilde,
                            pbar,
                            u,
                            energy,
                            phi_values,
                        }),
                        Err(reason) => rejected.push(Rejected {
                            branch,
                            rtilde,
                            ptilde,
                            pbar,
                            reason,
                        }),
                    }
                }
            }
        }
    }
    solutions.sort_by(order);
    Ok(UnirrepSet { solutions, rejected })
}

/// The structure function of one unirrep written in closed product form.
pub fn final_structure_function<S: Scalar>(
    model: &Model<S>,
    branch: Branch,
    rtilde: u32,
    ptilde: u32,
    pbar: u32,
    x: &S,
) -> Result<S> {
    if rtilde == 0 || rtilde > model.n || ptilde == 0 || ptilde > ptilde_max(model) {
        return Err(Error::InvalidParameters(format!(
            "labels r~={rtilde}, p~={ptilde} out of range for {}",
            model.label()
        )));
    }
    let n = model.n as i64;
    let m = model.m as i64;
    let mm = model.theta_step() as i64;
    let rt = rtilde as i64;
    let pt = ptilde as i64;
    let a = model.alpha.clone();
    let b = model.beta.clone();
    let m1 = model.m1 as i64;
    let c = |v: i64| S::from_i64(v);
    let over_n = |v: S| v / c(n);
    let over_mm = |v: i64| S::from_ratio(v, mm);
    let top = c(pbar as i64 + 1);
    let y = top.clone() - x;
    let s = sigma(model);

    let mut out = match model.variant {
        Variant::OneParam => c(n).powi(2 * n as u32) * c(m).powi(2 * m as u32),
        Variant::TwoParam => c(2 * n).powi(4 * n as u32) * c(2 * m).powi(4 * m as u32),
        Variant::ExtTwoParam => c(2 * n).powi(8 * n as u32) * c(2 * m).powi(4 * m as u32),
    };
    let mut mul = |f: S| out *= &f;

    match branch {
        Branch::U1 => {
            for r in 1..=n {
                let d = c(rt - r);
                mul(x.clone() + over_n(d.clone()));
                mul(x.clone() + over_n(d.clone() + &s));
                match model.variant {
                    Variant::OneParam => {}
                    Variant::TwoParam => {
                        mul(x.clone() + over_n(d.clone() + &b));
                        mul(x.clone() + over_n(d + &a));
                    }
                    Variant::ExtTwoParam => {
                        mul(x.clone() + over_n(d.clone() + &b - c(1)));
                        mul(x.clone() + over_n(d + &a + c(1)));
                    }
                }
            }
            if model.variant == Variant::ExtTwoParam {
                for q in 1..=n {
                    let d = c(rt - q);
                    mul(x.clone() + over_n(d.clone() + &b + c(m1 - 1)));
                    mul(x.clone() + over_n(d.clone() + &a - c(m1)));
                    mul(x.clone() + over_n(d.clone() + &b + c(m1)));
                    mul(x.clone() + over_n(d + &a - c(m1 - 1)));
                }
            }
            let lead = over_n(c(2 * rt - 1) + &s);
            for p in 1..=mm {
                mul(y.clone() - over_mm(pt - p));
                mul(top.clone() + x + &lead + over_mm(1 - pt - p));
            }
        }
        Branch::U2 => {
            for r in 1..=n {
                let d = c(r - rt);
                mul(y.clone() + over_n(d.clone()));
                mul(y.clone() + over_n(d.clone() + &s));
                match model.variant {
                    Variant::OneParam => {}
                    Variant::TwoParam => {
                        mul(y.clone() + over_n(d.clone() + &a));
                        mul(y.clone() + over_n(d + &b));
                    }
                    Variant::ExtTwoParam => {
                        mul(y.clone() + over_n(d.clone() + &a + c(1)));
                        mul(y.clone() + over_n(d + &b - c(1)));
                    }
                }
            }
            if model.variant == Variant::ExtTwoParam {
                for q in 1..=n {
                    let d = c(q - rt);
                    mul(y.clone() + over_n(d.clone() + &a - c(m1 - 1)));
                    mul(y.clone() + over_n(d.clone() + &b + c(m1)));
                    mul(y.clone() + over_n(d.clone() + &a - c(m1)));
                    mul(y.clone() + over_n(d + &b + c(m1 - 1)));
                }
            }
            let lead = over_n(c(1 - 2 * rt) + &s);
            for p in 1..=mm {
                mul(x.clone() + over_mm(pt - p));
                mul(top.clone() + &y + &lead + over_mm(pt + p - 1));
            }
        }
    }
    Ok(out)
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
    fn one_param_first_excited_multiplet() {
        let m = ModelParams::one_param(1, 1, q(1, 1)).unwrap();
        let set = solve_unirreps(&m, 1).unwrap();
        assert!(set.rejected.is_empty());
        let s = set
            .branch(Branch::U1)
            .find(|s| s.rtilde == 1 && s.ptilde == 1 && s.pbar == 1)
            .unwrap();
        assert_eq!(s.energy, q(35, 4));
        assert_eq!(s.u, q(3, 2));
        assert_eq!(s.phi_values, vec![q(0, 1), q(15, 1), q(0, 1)]);
    }

    #[test]
    fn branches_agree_for_unit_ratio() {
        let m = ModelParams::one_param(1, 1, q(1, 1)).unwrap();
        for pbar in 0..4 {
            let e1 = branch_energy(&m, Branch::U1, 1, 1, pbar);
            let e2 = branch_energy(&m, Branch::U2, 1, 1, pbar);
            let t = q(pbar as i64 + 2, 1);
            assert_eq!(e1, &t * &t - q(1, 4));
            assert_eq!(e1, e2);
        }
    }

    #[test]
    fn singlets_have_two_zeros() {
        let m = ModelParams::two_param(1, 2, q(2, 1), q(1, 1)).unwrap();
        let set = solve_unirreps(&m, 0).unwrap();
        assert_eq!(set.solutions.len(), 2 * 2 * 2);
        for s in &set.solutions {
            assert_eq!(s.phi_values, vec![q(0, 1), q(0, 1)]);
        }
    }

    #[test]
    fn final_form_two_param() {
        let m = ModelParams::two_param(1, 1, q(2, 1), q(1, 1)).unwrap();
        let e = branch_energy(&m, Branch::U1, 1, 1, 1);
        let u = branch_u(&m, Branch::U1, 1, 1, &e).unwrap();
        let general = structure_function(&m, &q(1, 1), &u, &e);
        assert!(general > q(0, 1));
        assert_eq!(final_structure_function(&m, Branch::U1, 1, 1, 1, &q(1, 1)).unwrap(), general);
    }

    #[test]
    fn final_forms_match_general_everywhere() {
        let models = [
            ModelParams::one_param(3, 2, q(3, 2)).unwrap(),
            ModelParams::two_param(3, 2, q(3, 2), q(5, 2)).unwrap(),
            ModelParams::ext_two_param(1, 2, q(3, 1), q(5, 2), 1).unwrap(),
        ];
        for m in &models {
            let set = solve_unirreps(m, 2).unwrap();
            assert!(set.rejected.is_empty(), "{m}");
            for s in &set.solutions {
                for (x, v) in s.phi_values.iter().enumerate() {
                    let f = final_structure_function(m, s.branch, s.rtilde, s.ptilde, s.pbar, &q(x as i64, 1)).unwrap();
                    assert_eq!(&f, v, "{m} {s:?} x={x}");
                }
            }
        }
    }

    #[test]
    fn labels_out_of_range() {
        let m = ModelParams::one_param(1, 1, q(1, 1)).unwrap();
        assert!(final_structure_function(&m, Branch::U1, 2, 1, 0, &q(0, 1)).is_err());
    }
}
