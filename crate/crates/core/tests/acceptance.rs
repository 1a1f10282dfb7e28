//! One pass/fail line per acceptance criterion.

mod common;

use std::io::Write;
use std::thread;
use std::time::{Duration, Instant};

use common::*;
use lissajous_core::algebra::{verify_gha, verify_poly_algebra, verify_products_on_states, verify_realization, StateEngine};
use lissajous_core::operators::verify_action_tables;
use lissajous_core::orthomodels::{verify_eigen_equations, Lissajous, Model, ModelParams};
use lissajous_core::report::VerificationReport;
use lissajous_core::spectrum::{physical_comparison, solve_unirreps, verify_spectrum, AuditOptions};
use lissajous_core::{NumericContext, Real, Scalar};
use proptest::test_runner::{Config, TestRunner};

const BOX: u32 = 5;
const PBAR_MAX: u32 = 6;

struct Outcome {
    id: u32,
    title: &'static str,
    report: VerificationReport,
    extra: String,
    elapsed: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.report.all_passed()
    }

    fn line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        format!(
            "criterion {} [{verdict}] {}: checked={} failed={} skipped={}{} ({:.1}s)",
            self.id,
            self.title,
            self.report.checked(),
            self.report.failed(),
            self.report.skipped(),
            self.extra,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Run `f` on every parameter set in parallel and merge the reports in order.
fn per_set(f: fn(&Lissajous<lissajous_core::Rational>) -> VerificationReport) -> VerificationReport {
    let sets = parameter_sets();
    let reports: Vec<VerificationReport> = thread::scope(|s| {
        let handles: Vec<_> = sets
            .iter()
            .map(|m| {
                s.spawn(move || match Lissajous::new(m.clone()) {
                    Ok(sys) => f(&sys),
                    Err(e) => failure(&m.label(), e),
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).collect()
    });
    let mut out = VerificationReport::new();
    for r in reports {
        out.extend(r);
    }
    out
}

fn failure(label: &str, e: impl std::fmt::Display) -> VerificationReport {
    let mut r = VerificationReport::new();
    let ctx = lissajous_core::report::Ctx::new("setup", label, "construct");
    r.check(&ctx, "-", "ok", e, false);
    r
}

fn algebra_suite<S: Scalar>(sys: &Lissajous<S>) -> VerificationReport {
    let eng = StateEngine::new(sys);
    let mut r = verify_products_on_states(&eng, BOX, BOX);
    r.extend(verify_gha(&eng, BOX, BOX));
    r.extend(verify_poly_algebra(&eng, BOX, BOX));
    r
}

fn realization_suite(sys: &Lissajous<lissajous_core::Rational>) -> VerificationReport {
    verify_realization(&StateEngine::new(sys), BOX, BOX)
}

fn spectrum_suite(sys: &Lissajous<lissajous_core::Rational>) -> VerificationReport {
    let m = sys.model();
    match solve_unirreps(m, PBAR_MAX) {
        Ok(set) => verify_spectrum(m, &set),
        Err(e) => failure(&m.label(), e),
    }
}

fn audit_suite(sys: &Lissajous<lissajous_core::Rational>) -> VerificationReport {
    match physical_comparison(sys, PBAR_MAX, None, AuditOptions::default()) {
        Ok(c) => c.report,
        Err(e) => failure(&sys.model().label(), e),
    }
}

fn numeric_suite() -> (VerificationReport, String) {
    let ctx = NumericContext {
        precision_bits: 256,
        tolerance: 1e-30,
        samples: 64,
    };
    let _guard = ctx.enter();
    let alpha = Real::from_i64(2).sqrt();
    let model = match Model::<Real>::two_param(1, 1, alpha, Real::from_i64(1)) {
        Ok(m) => m,
        Err(e) => return (failure("2P(alpha=sqrt2)", e), String::new()),
    };
    let sys = match Lissajous::new(model) {
        Ok(s) => s,
        Err(e) => return (failure("2P(alpha=sqrt2)", e), String::new()),
    };
    let mut r = verify_eigen_equations(&sys, BOX, BOX);
    r.extend(verify_action_tables(&sys, BOX, BOX));
    r.extend(algebra_suite(&sys));
    let worst = r.max_residual().unwrap_or(0.0);
    let mut ctx_r = VerificationReport::new();
    let c = lissajous_core::report::Ctx::new("numeric", "2P(alpha=sqrt2)", "max residual");
    ctx_r.check(&c, "all", "< 1e-30", format!("{worst:.3e}"), worst < 1e-30);
    r.extend(ctx_r);
    (r, format!(" max_residual={worst:.3e}"))
}

fn kernel_suite() -> VerificationReport {
    let mut r = VerificationReport::new();
    let ctx = lissajous_core::report::Ctx::new("kernel", "QuasiTrig", "");
    let cases = 1000;
    let mut run = |name: &'static str, outcome: Result<(), String>| {
        let ok = outcome.is_ok();
        r.check(&ctx.op(name), format!("{cases} cases"), "no counterexample", outcome.err().unwrap_or_else(|| "none".into()), ok);
    };
    let runner = || {
        TestRunner::new(Config {
            failure_persistence: None,
            ..Config::with_cases(cases)
        })
    };
    run(
        "product rule",
        runner().run(&triple(), |(f, g, _)| product_rule(&f, &g)).map_err(|e| e.to_string()),
    );
    run(
        "ring axioms",
        runner().run(&triple(), |(f, g, h)| ring_axioms(&f, &g, &h)).map_err(|e| e.to_string()),
    );
    run(
        "canonical idempotence",
        runner()
            .run(&triple(), |(f, _, _)| canonical_idempotent(&f))
            .map_err(|e| e.to_string()),
    );
    run(
        "reduction",
        runner()
            .run(&reduction_inputs(), |(a, b, ps, pc)| reduction_correct(a, b, &ps, &pc))
            .map_err(|e| e.to_string()),
    );
    r
}

fn timed(id: u32, title: &'static str, f: impl FnOnce() -> (VerificationReport, String)) -> Outcome {
    let start = Instant::now();
    let (report, extra) = f();
    Outcome {
        id,
        title,
        report,
        extra,
        elapsed: start.elapsed(),
    }
}

#[test]
fn acceptance() {
    let plain = |r: VerificationReport| (r, String::new());
    let outcomes: Vec<Outcome> = thread::scope(|s| {
        let jobs = vec![
            s.spawn(move || timed(1, "eigen equations", || plain(per_set(|sys| verify_eigen_equations(sys, BOX, BOX))))),
            s.spawn(move || timed(2, "action tables", || plain(per_set(|sys| verify_action_tables(sys, BOX, BOX))))),
            s.spawn(move || timed(3, "algebra relations", || plain(per_set(algebra_suite)))),
            s.spawn(move || timed(4, "Casimir and GHA realizations", || plain(per_set(realization_suite)))),
            s.spawn(move || timed(5, "unirrep spectrum", || plain(per_set(spectrum_suite)))),
            s.spawn(move || timed(6, "physical audit", || plain(per_set(audit_suite)))),
            s.spawn(move || timed(7, "numeric cross-check", numeric_suite)),
            s.spawn(move || timed(8, "kernel properties", || plain(kernel_suite()))),
        ];
        jobs.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });

    // Written to the raw handle so the lines show up without --nocapture.
    let mut err = std::io::stderr().lock();
    let mut failed = Vec::new();
    for o in &outcomes {
        writeln!(err, "{}", o.line()).unwrap();
        if !o.passed() {
            for rec in o.report.failures().take(10) {
                writeln!(err, "    {rec}").unwrap();
            }
            failed.push(o.id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

#[test]
fn grids_have_expected_size() {
    let sets = parameter_sets();
    assert_eq!(sets.len(), 12 + 12 + 4);
    assert!(sets.iter().all(|m: &ModelParams| m.validate().is_ok()));
}
