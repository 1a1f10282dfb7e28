use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use lissajous_core::algebra::{
    export_p1p2, verify_gha, verify_poly_algebra, verify_products_on_states, verify_realization, StateEngine,
};
use lissajous_core::operators::{apply_x, verify_action_tables, Direction};
use lissajous_core::orthomodels::{verify_eigen_equations, Lissajous, Model, StateIndex};
use lissajous_core::report::{Ctx, VerificationReport};
use lissajous_core::scalar::parse_rational;
use lissajous_core::spectrum::{physical_comparison, render_csv, render_text, solve_unirreps, verify_spectrum, AuditOptions};
use lissajous_core::{Rational, Scalar};

use crate::config::{exact_value, ConfigError, Mode, RunConfig, Suite};

pub const ACTIONS_HEADER: &str = "op,mu,nu,target,coefficient";

/// Outcome of a subcommand: whether every check passed, and the files written.
pub struct Outcome {
    pub passed: bool,
    pub summary: String,
    pub failures: Vec<String>,
    pub written: Vec<PathBuf>,
}

fn output_path(cfg: &RunConfig, suffix: &str) -> PathBuf {
    cfg.out_dir.join(format!("{}.{suffix}", cfg.prefix))
}

fn write(cfg: &RunConfig, suffix: &str, text: &str, written: &mut Vec<PathBuf>) -> Result<()> {
    fs::create_dir_all(&cfg.out_dir).with_context(|| format!("creating {}", cfg.out_dir.display()))?;
    let path = output_path(cfg, suffix);
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    written.push(path);
    Ok(())
}

fn outcome(report: &VerificationReport, written: Vec<PathBuf>) -> Outcome {
    Outcome {
        passed: report.all_passed(),
        summary: report.summary(),
        failures: report.failures().map(|r| r.to_string()).collect(),
        written,
    }
}

fn system<S: Scalar>(model: Model<S>) -> Result<Lissajous<S>> {
    Lissajous::new(model).map_err(|e| ConfigError(e.to_string()).into())
}

/// Run `f` over the exact or numeric field chosen by the configuration.
macro_rules! with_field {
    ($cfg:expr, $f:ident ( $($arg:expr),* )) => {
        match $cfg.mode {
            Mode::Exact => $f(system($cfg.exact_model()?)?, $($arg),*),
            Mode::Numeric => {
                let _guard = $cfg.numeric_context().enter();
                $f(system($cfg.numeric_model()?)?, $($arg),*)
            }
        }
    };
}

pub fn verify(cfg: &RunConfig) -> Result<Outcome> {
    let reference = match &cfg.reference_actions {
        Some(p) => Some(read_reference(p)?),
        None => None,
    };
    let report = with_field!(cfg, verify_suites(cfg, reference.as_deref()));
    let mut written = Vec::new();
    write(cfg, "report.txt", &report.render(), &mut written)?;
    Ok(outcome(&report, written))
}

fn verify_suites<S: Scalar>(sys: Lissajous<S>, cfg: &RunConfig, reference: Option<&[ReferenceRow]>) -> VerificationReport {
    let (mu, nu) = (cfg.mu_max, cfg.nu_max);
    let mut report = VerificationReport::new();
    for suite in &cfg.suites {
        match suite {
            Suite::Eigen => report.extend(verify_eigen_equations(&sys, mu, nu)),
            Suite::Actions => report.extend(verify_action_tables(&sys, mu, nu)),
            Suite::Algebra => {
                let eng = StateEngine::new(&sys);
                report.extend(verify_products_on_states(&eng, mu, nu));
                report.extend(verify_gha(&eng, mu, nu));
                report.extend(verify_poly_algebra(&eng, mu, nu));
            }
            Suite::Realization => report.extend(verify_realization(&StateEngine::new(&sys), mu, nu)),
        }
    }
    if let Some(rows) = reference {
        report.extend(check_reference(&sys, rows));
    }
    report
}

/// One row of an exported action table.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceRow {
    pub line: usize,
    pub direction: Direction,
    pub source: StateIndex,
    pub target: Option<StateIndex>,
    pub coefficient: Rational,
}

fn parse_index(text: &str) -> Option<StateIndex> {
    let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(';').or_else(|| inner.split_once(' '))?;
    Some(StateIndex::new(a.trim().parse().ok()?, b.trim().parse().ok()?))
}

fn format_index(t: Option<StateIndex>) -> String {
    t.map(|t| format!("({};{})", t.mu, t.nu)).unwrap_or_else(|| "-".into())
}

pub fn read_reference(path: &Path) -> Result<Vec<ReferenceRow>> {
    let text = fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let bad = || ConfigError(format!("{}:{}: malformed row '{line}'", path.display(), i + 1));
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 5 {
            return Err(bad().into());
        }
        let direction = match f[0].trim() {
            "X+" => Direction::Raise,
            "X-" => Direction::Lower,
            _ => return Err(bad().into()),
        };
        let mu = f[1].trim().parse().map_err(|_| bad())?;
        let nu = f[2].trim().parse().map_err(|_| bad())?;
        let target = match f[3].trim() {
            "-" => None,
            t => Some(parse_index(t).ok_or_else(bad)?),
        };
        let coefficient = parse_rational(f[4]).ok_or_else(bad)?;
        rows.push(ReferenceRow {
            line: i + 1,
            direction,
            source: StateIndex::new(mu, nu),
            target,
            coefficient,
        });
    }
    Ok(rows)
}

fn check_reference<S: Scalar>(sys: &Lissajous<S>, rows: &[ReferenceRow]) -> VerificationReport {
    let label = sys.model().label();
    let mut report = VerificationReport::new();
    for row in rows {
        let name = format!("X{}", row.direction);
        let ctx = Ctx::new("reference", &label, &name);
        let source = format!("{}@line{}", row.source, row.line);
        let expected = format!("{}:{}", format_index(row.target), row.coefficient);
        match apply_x(sys, row.direction, row.source) {
            Ok(a) => {
                let c = a.normalized_squared();
                let ok = a.target == row.target && c.agrees(&S::from_rational(&row.coefficient));
                report.check(&ctx, source, expected, format!("{}:{c}", format_index(a.target)), ok);
            }
            Err(e) => {
                report.check(&ctx, source, expected, e, false);
            }
        }
    }
    report
}

pub fn spectrum(cfg: &RunConfig) -> Result<Outcome> {
    with_field!(cfg, spectrum_in(cfg))
}

fn spectrum_in<S: Scalar>(sys: Lissajous<S>, cfg: &RunConfig) -> Result<Outcome> {
    let model = sys.model();
    let set = solve_unirreps(model, cfg.pbar_max)?;
    let report = verify_spectrum(model, &set);
    let mut written = Vec::new();
    write(cfg, "spectrum.csv", &render_csv(model, &set), &mut written)?;
    let text = format!("{}{}", render_text(model, &set), report.render());
    write(cfg, "report.txt", &text, &mut written)?;
    Ok(outcome(&report, written))
}

pub fn compare(cfg: &RunConfig) -> Result<Outcome> {
    if cfg.mode != Mode::Exact {
        return Err(ConfigError("compare runs in exact mode only".into()).into());
    }
    let sys = system(cfg.exact_model()?)?;
    let model = sys.model();
    let cutoff = match &cfg.energy_cutoff {
        Some(c) => Some(exact_value("energy_cutoff", c)?),
        None => None,
    };
    let comparison = physical_comparison(&sys, cfg.pbar_max, cutoff, AuditOptions::default())?;
    let mut report = comparison.report;
    let mut text = format!("model {}\ncutoff {}\n", model.label(), comparison.cutoff);
    for l in &comparison.levels {
        text.push_str(&format!(
            "level E={} physical={} u1={} u2={}\n",
            l.energy, l.physical, l.branch1, l.branch2
        ));
    }
    let mut diff = String::new();
    if let Some(path) = &cfg.expected_spectrum {
        let expected = fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        let set = solve_unirreps(model, cfg.pbar_max)?;
        let computed = render_csv(model, &set);
        diff = table_diff(&expected, &computed);
        let label = model.label();
        let ctx = Ctx::new("compare", &label, "table");
        report.check(&ctx, path.display(), "identical", if diff.is_empty() { "identical" } else { "differs" }, diff.is_empty());
    }
    text.push_str(&diff);
    text.push_str(&report.render());
    let mut written = Vec::new();
    write(cfg, "report.txt", &text, &mut written)?;
    let mut out = outcome(&report, written);
    out.failures.extend(diff.lines().map(str::to_string));
    Ok(out)
}

/// Line-by-line differences as `-expected` / `+computed` pairs.
pub fn table_diff(expected: &str, computed: &str) -> String {
    let e: Vec<&str> = expected.lines().collect();
    let c: Vec<&str> = computed.lines().collect();
    let mut out = String::new();
    for i in 0..e.len().max(c.len()) {
        let a = e.get(i).copied();
        let b = c.get(i).copied();
        if a.map(str::trim) != b.map(str::trim) {
            out.push_str(&format!("@@ line {}\n", i + 1));
            if let Some(a) = a {
                out.push_str(&format!("-{a}\n"));
            }
            if let Some(b) = b {
                out.push_str(&format!("+{b}\n"));
            }
        }
    }
    out
}

pub fn export(cfg: &RunConfig) -> Result<Outcome> {
    with_field!(cfg, export_in(cfg))
}

fn export_in<S: Scalar>(sys: Lissajous<S>, cfg: &RunConfig) -> Result<Outcome> {
    let model = sys.model();
    let mut written = Vec::new();
    let set = solve_unirreps(model, cfg.pbar_max)?;
    write(cfg, "spectrum.csv", &render_csv(model, &set), &mut written)?;
    let eng = StateEngine::new(&sys);
    write(cfg, "p1p2.txt", &export_p1p2(&eng.p1, &eng.p2), &mut written)?;

    let mut table = format!("{ACTIONS_HEADER}\n");
    for nu in 0..=cfg.nu_max {
        for mu in 0..=cfg.mu_max {
            for dir in [Direction::Raise, Direction::Lower] {
                let a = eng.action(dir, StateIndex::new(mu, nu))?;
                table.push_str(&format!(
                    "X{dir},{mu},{nu},{},{}\n",
                    format_index(a.target),
                    a.normalized_squared()
                ));
            }
        }
    }
    write(cfg, "actions.csv", &table, &mut written)?;
    let mut report = VerificationReport::new();
    let label = model.label();
    report.check(&Ctx::new("export", &label, "files"), "-", "written", written.len(), true);
    Ok(outcome(&report, written))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diff_marks_changed_lines() {
        let d = table_diff("a\nb\nc\n", "a\nx\nc\nd\n");
        assert_eq!(d, "@@ line 2\n-b\n+x\n@@ line 4\n+d\n");
        assert!(table_diff("a\n", "a\n").is_empty());
    }

    #[test]
    fn index_round_trip() {
        let t = Some(StateIndex::new(3, 14));
        assert_eq!(parse_index(&format_index(t)), t);
        assert_eq!(format_index(None), "-");
    }
}
