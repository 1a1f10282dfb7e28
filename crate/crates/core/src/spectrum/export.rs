use super::structure::StructureFunctionSpec;
use super::unirreps::{final_structure_function, Branch, UnirrepSet};
use crate::orthomodels::Model;
use crate::report::{Ctx, VerificationReport};
use crate::scalar::Scalar;

pub const CSV_HEADER: &str = "variant,branch,rtilde,ptilde,pbar,u,E,dim";

pub fn render_csv<S: Scalar>(model: &Model<S>, set: &UnirrepSet<S>) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for s in &set.solutions {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            model.variant,
            s.branch,
            s.rtilde,
            s.ptilde,
            s.pbar,
            s.u,
            s.energy,
            s.dim()
        ));
    }
    out
}

/// One block per solution, with the structure function values.
pub fn render_text<S: Scalar>(model: &Model<S>, set: &UnirrepSet<S>) -> String {
    let mut out = format!("model {}\n", model.label());
    for s in &set.solutions {
        let phi: Vec<String> = s.phi_values.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!(
            "unirrep branch={} rtilde={} ptilde={} pbar={} u={} E={} dim={} phi=[{}]\n",
            s.branch,
            s.rtilde,
            s.ptilde,
            s.pbar,
            s.u,
            s.energy,
            s.dim(),
            phi.join(",")
        ));
    }
    out.push_str(&format!("solutions={} rejected={}\n", set.solutions.len(), set.rejected.len()));
    for r in &set.rejected {
        out.push_str(&format!(
            "rejected branch={} rtilde={} ptilde={} pbar={} reason={}\n",
            r.branch, r.rtilde, r.ptilde, r.pbar, r.reason
        ));
    }
    out
}

/// Constraints, branch equivalence, final against general structure functions
/// and the factorized form, for every solution in `set`.
pub fn verify_spectrum<S: Scalar>(model: &Model<S>, set: &UnirrepSet<S>) -> VerificationReport {
    let label = model.label();
    let base = Ctx::new("spectrum", &label, "");
    let mut report = VerificationReport::new();
    let spec = StructureFunctionSpec::new(model);

    for r in &set.rejected {
        let src = format!("{}(r~={},p~={},pbar={})", r.branch, r.rtilde, r.ptilde, r.pbar);
        report.skip(&base.op("rejected"), src, &r.reason);
    }

    for s in &set.solutions {
        let src = format!("{}(r~={},p~={},pbar={})", s.branch, s.rtilde, s.ptilde, s.pbar);
        let last = s.phi_values.len() - 1;
        let zero = S::zero();
        report.compare(&base.op("Phi(0)"), &src, &zero, &s.phi_values[0]);
        report.compare(&base.op("Phi(pbar+1)"), &src, &zero, &s.phi_values[last]);
        for (x, v) in s.phi_values.iter().enumerate().take(last).skip(1) {
            report.check(&base.op("Phi>0"), format!("{src}x={x}"), "> 0", v, v.is_positive_value());
        }
        for (x, v) in s.phi_values.iter().enumerate() {
            let xs = S::from_i64(x as i64);
            let at = format!("{src}x={x}");
            match final_structure_function(model, s.branch, s.rtilde, s.ptilde, s.pbar, &xs) {
                Ok(f) => {
                    report.compare(&base.op("final"), &at, v, &f);
                }
                Err(e) => {
                    report.check(&base.op("final"), &at, v, e, false);
                }
            }
            match spec.eval(&xs, &s.u, &s.energy) {
                Ok(f) => {
                    report.compare(&base.op("factorized"), &at, v, &f);
                }
                Err(e) => {
                    report.check(&base.op("factorized"), &at, v, e, false);
                }
            }
        }
    }

    let multiset = |b: Branch| {
        let mut v: Vec<(S, u32)> = set.branch(b).map(|s| (s.energy.clone(), s.pbar)).collect();
        v.sort_by(|a, b| a.partial_cmp(b).expect("ordered energies"));
        v
    };
    let e1 = multiset(Branch::U1);
    let e2 = multiset(Branch::U2);
    let same = e1.len() == e2.len() && e1.iter().zip(&e2).all(|(a, b)| a.1 == b.1 && a.0.agrees(&b.0));
    report.check(&base.op("E1=E2 multiset"), "all", e1.len(), e2.len(), same);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthomodels::ModelParams;
    use crate::scalar::Rational;
    use crate::spectrum::solve_unirreps;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn csv_for_unit_ratio() {
        let m = ModelParams::one_param(1, 1, q(1, 1)).unwrap();
        let set = solve_unirreps(&m, 2).unwrap();
        let csv = render_csv(&m, &set);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "1P,u1,1,1,0,3/2,15/4,1");
        assert_eq!(lines[2], "1P,u2,1,1,0,-3/2,15/4,1");
        assert_eq!(lines.len(), 7);
    }

    #[test]
    fn spectrum_report_passes() {
        let m = ModelParams::two_param(3, 2, q(3, 2), q(5, 2)).unwrap();
        let set = solve_unirreps(&m, 3).unwrap();
        let r = verify_spectrum(&m, &set);
        assert!(r.all_passed(), "{}", r.render());
        assert_eq!(r.skipped(), 0);
    }

    #[test]
    fn text_lists_phi() {
        let m = ModelParams::one_param(1, 1, q(1, 1)).unwrap();
        let set = solve_unirreps(&m, 1).unwrap();
        let t = render_text(&m, &set);
        assert!(t.contains("pbar=1 u=3/2 E=35/4 dim=2 phi=[0,15,0]"));
    }
}
