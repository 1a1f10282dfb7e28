use std::collections::BTreeMap;

use super::structure::structure_function;
use super::unirreps::{branch_energy, branch_u, solve_unirreps, Branch, UnirrepSet};
use crate::operators::{apply_x, closed, Direction};
use crate::orthomodels::{physical_spectrum, Lissajous, Model, StateIndex};
use crate::report::{Ctx, VerificationReport};
use crate::scalar::Scalar;

/// Position of a physical state in its multiplet:
/// `nu = n nu' + a1`, `mu = m' mu' + a2`, `pbar = nu' + mu'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultipletCoords {
    pub a1: u32,
    pub a2: u32,
    pub nu_prime: u32,
    pub mu_prime: u32,
}

impl MultipletCoords {
    pub fn of<S: Scalar>(model: &Model<S>, idx: StateIndex) -> Self {
        let mm = model.theta_step();
        Self {
            a1: idx.nu % model.n,
            a2: idx.mu % mm,
            nu_prime: idx.nu / model.n,
            mu_prime: idx.mu / mm,
        }
    }

    pub fn pbar(&self) -> u32 {
        self.nu_prime + self.mu_prime
    }

    /// `(r~, p~)` labelling the multiplet in the given branch.
    pub fn labels<S: Scalar>(&self, model: &Model<S>, branch: Branch) -> (u32, u32) {
        match branch {
            Branch::U1 => (self.a1 + 1, model.theta_step() - self.a2),
            Branch::U2 => (model.n - self.a1, self.a2 + 1),
        }
    }

    /// The state at position `nu'` of the same multiplet.
    pub fn state_at<S: Scalar>(&self, model: &Model<S>, nu_prime: u32) -> StateIndex {
        let mu_prime = self.pbar() - nu_prime;
        StateIndex::new(model.theta_step() * mu_prime + self.a2, model.n * nu_prime + self.a1)
    }
}

/// One energy level: physical degeneracy against the algebraic dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelCount<S> {
    pub energy: S,
    pub physical: usize,
    pub branch1: usize,
    pub branch2: usize,
}

#[derive(Clone, Debug)]
pub struct ComparisonReport<S> {
    pub cutoff: S,
    pub levels: Vec<LevelCount<S>>,
    pub report: VerificationReport,
}

/// How far to check multiplet links by symbolic application of `X+-`.
/// Links outside the box use the closed-form coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AuditOptions {
    pub symbolic_box: Option<(u32, u32)>,
}

impl Default for AuditOptions {
    fn default() -> Self {
        Self {
            symbolic_box: Some((8, 8)),
        }
    }
}

/// Smallest `E1` over all labels at `pbar`; every multiplet with a larger
/// `pbar` lies strictly above it.
pub fn audit_cutoff<S: Scalar>(model: &Model<S>, pbar: u32) -> S {
    let mut best: Option<S> = None;
    for r in 1..=model.n {
        for p in 1..=model.theta_step() {
            let e = branch_energy(model, Branch::U1, r, p, pbar);
            if best.as_ref().is_none_or(|b| e < *b) {
                best = Some(e);
            }
        }
    }
    best.expect("at least one label")
}

/// Compare the algebraic multiplets with the separated spectrum up to `cutoff`
/// (default: [`audit_cutoff`] at `pbar_max`).
pub fn physical_comparison<S: Scalar>(
    sys: &Lissajous<S>,
    pbar_max: u32,
    cutoff: Option<S>,
    options: AuditOptions,
) -> crate::Result<ComparisonReport<S>> {
    let model = sys.model();
    let label = model.label();
    let base = Ctx::new("audit", &label, "");
    let mut report = VerificationReport::new();
    let cutoff = cutoff.unwrap_or_else(|| audit_cutoff(model, pbar_max));
    let set = solve_unirreps(model, pbar_max)?;
    let levels = physical_spectrum(model, &cutoff);

    let mut multiplets: BTreeMap<(u32, u32, u32), Vec<StateIndex>> = BTreeMap::new();
    for level in &levels {
        for &idx in &level.states {
            let c = MultipletCoords::of(model, idx);
            multiplets.entry((c.a1, c.a2, c.pbar())).or_default().push(idx);
            check_state(sys, &set, &base, &mut report, idx, &level.energy, pbar_max);
        }
    }

    for (&(a1, a2, pbar), states) in &multiplets {
        let ctx = base.op("multiplet");
        let key = format!("a1={a1},a2={a2},pbar={pbar}");
        report.check(&ctx, &key, pbar + 1, states.len(), states.len() == pbar as usize + 1);
        let coords = MultipletCoords::of(model, states[0]);
        check_links(sys, &base, &mut report, &coords, options);
    }

    let mut counts = Vec::new();
    for level in &levels {
        let dims = |b: Branch| -> usize {
            set.branch(b)
                .filter(|s| s.energy.agrees(&level.energy))
                .map(|s| s.dim() as usize)
                .sum()
        };
        let row = LevelCount {
            energy: level.energy.clone(),
            physical: level.states.len(),
            branch1: dims(Branch::U1),
            branch2: dims(Branch::U2),
        };
        let ok = row.branch1 == row.physical && row.branch2 == row.physical;
        report.check(
            &base.op("level.count"),
            &row.energy,
            row.physical,
            format!("{}/{}", row.branch1, row.branch2),
            ok,
        );
        counts.push(row);
    }
    // algebraic levels below the cutoff with no physical counterpart
    for s in &set.solutions {
        if s.energy <= cutoff && !levels.iter().any(|l| l.energy.agrees(&s.energy)) {
            let src = format!("{}(r~={},p~={},pbar={})", s.branch, s.rtilde, s.ptilde, s.pbar);
            report.check(&base.op("level.orphan"), src, "physical level", &s.energy, false);
        }
    }
    if levels.is_empty() {
        report.check(&base.op("level.count"), "-", "no levels", "no levels", true);
    }
    Ok(ComparisonReport {
        cutoff,
        levels: counts,
        report,
    })
}

fn check_state<S: Scalar>(
    sys: &Lissajous<S>,
    set: &UnirrepSet<S>,
    base: &Ctx<'_>,
    report: &mut VerificationReport,
    idx: StateIndex,
    energy: &S,
    pbar_max: u32,
) {
    let model = sys.model();
    let c = MultipletCoords::of(model, idx);
    for (branch, name) in [(Branch::U1, "E1"), (Branch::U2, "E2")] {
        let (r, p) = c.labels(model, branch);
        let e = branch_energy(model, branch, r, p, c.pbar());
        report.compare(&base.op(name), idx, energy, &e);
        let found = c.pbar() <= pbar_max
            && set
                .branch(branch)
                .any(|s| s.rtilde == r && s.ptilde == p && s.pbar == c.pbar());
        report.check(&base.op(&format!("{name}.unirrep")), idx, format!("r~={r},p~={p},pbar={}", c.pbar()), found, found);
    }
    // the Fock-space structure function is X+X- on the physical state, N = nu'
    let (r, p) = c.labels(model, Branch::U1);
    let phi = branch_u(model, Branch::U1, r, p, energy)
        .map(|u| structure_function(model, &S::from_i64(c.nu_prime as i64), &u, energy));
    let product = closed::product_raise_lower(model, idx);
    match (phi, product) {
        (Ok(a), Ok(b)) => {
            report.compare(&base.op("Phi=X+X-"), idx, &b, &a);
        }
        (a, b) => {
            report.check(&base.op("Phi=X+X-"), idx, format!("{b:?}"), format!("{a:?}"), false);
        }
    }
}

fn inside(idx: StateIndex, bx: Option<(u32, u32)>) -> bool {
    bx.is_some_and(|(mu, nu)| idx.mu <= mu && idx.nu <= nu)
}

/// Squared normalized `X+-` coefficient and its target.
fn link<S: Scalar>(
    sys: &Lissajous<S>,
    dir: Direction,
    idx: StateIndex,
    options: AuditOptions,
) -> crate::Result<(S, Option<StateIndex>)> {
    let model = sys.model();
    if inside(idx, options.symbolic_box) {
        let a = apply_x(sys, dir, idx)?;
        return Ok((a.normalized_squared(), a.target));
    }
    let mm = model.theta_step() as i64;
    let n = model.n as i64;
    let (coeff, target) = match dir {
        Direction::Raise => (closed::x_raise(model, idx)?, idx.offset(-mm, n)),
        Direction::Lower => (closed::x_lower(model, idx)?, idx.offset(mm, -n)),
    };
    Ok((coeff.clone(), if coeff.is_zero() { None } else { target }))
}

/// `X+` walks the multiplet from `nu' = 0` to `nu' = pbar` with nonvanishing
/// coefficients and annihilates the top; `X-` walks back and annihilates the bottom.
fn check_links<S: Scalar>(
    sys: &Lissajous<S>,
    base: &Ctx<'_>,
    report: &mut VerificationReport,
    coords: &MultipletCoords,
    options: AuditOptions,
) {
    let model = sys.model();
    let pbar = coords.pbar();
    for x in 0..=pbar {
        let idx = coords.state_at(model, x);
        for (dir, name, next) in [
            (Direction::Raise, "link.X+", (x < pbar).then(|| x + 1)),
            (Direction::Lower, "link.X-", x.checked_sub(1)),
        ] {
            let ctx = base.op(name);
            match link(sys, dir, idx, options) {
                Ok((coeff, target)) => {
                    let expected = next.map(|y| coords.state_at(model, y));
                    let ok = match expected {
                        Some(t) => target == Some(t) && coeff.is_positive_value(),
                        None => coeff.is_zero(),
                    };
                    let show = |t: Option<StateIndex>| t.map(|t| t.to_string()).unwrap_or_else(|| "0".into());
                    report.check(&ctx, idx, show(expected), format!("{}:{coeff}", show(target)), ok);
                }
                Err(e) => {
                    report.check(&ctx, idx, "coefficient", e, false);
                }
            }
        }
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
    fn coordinates() {
        let m = ModelParams::two_param(1, 2, q(2, 1), q(1, 1)).unwrap();
        let c = MultipletCoords::of(&m, StateIndex::new(5, 3));
        assert_eq!((c.a1, c.a2, c.nu_prime, c.mu_prime), (1, 1, 1, 2));
        assert_eq!(c.state_at(&m, 1), StateIndex::new(5, 3));
        assert_eq!(c.labels(&m, Branch::U1), (2, 1));
        assert_eq!(c.labels(&m, Branch::U2), (1, 2));
    }

    #[test]
    fn first_excited_state() {
        let m = ModelParams::one_param(1, 1, q(1, 1)).unwrap();
        let c = MultipletCoords::of(&m, StateIndex::new(1, 0));
        assert_eq!(c.pbar(), 1);
        let (r, p) = c.labels(&m, Branch::U1);
        assert_eq!(branch_energy(&m, Branch::U1, r, p, 1), q(35, 4));
        assert_eq!(m.energy(StateIndex::new(1, 0)), q(35, 4));
    }

    #[test]
    fn two_param_audit_to_three() {
        let sys = Lissajous::new(ModelParams::two_param(1, 2, q(2, 1), q(1, 1)).unwrap()).unwrap();
        let c = physical_comparison(&sys, 3, None, AuditOptions::default()).unwrap();
        assert!(c.report.all_passed(), "{}", c.report.render());
        assert!(c.levels.iter().all(|l| l.physical == l.branch1));
    }

    #[test]
    fn zero_cutoff_is_empty() {
        let sys = Lissajous::new(ModelParams::one_param(1, 1, q(1, 1)).unwrap()).unwrap();
        let c = physical_comparison(&sys, 6, Some(q(0, 1)), AuditOptions::default()).unwrap();
        assert!(c.levels.is_empty());
        assert!(c.report.all_passed());
    }
}
