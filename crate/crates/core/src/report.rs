//! Verification records and their text serialization.

use std::fmt;

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

/// One check. Serialized as a single line of `key=value` fields.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub suite: String,
    pub model: String,
    pub op: String,
    pub source: String,
    pub expected: String,
    pub computed: String,
    pub residual: Option<f64>,
    pub status: Status,
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "suite={} model={} op={} source={} expected={} computed={}",
            self.suite,
            self.model,
            self.op,
            self.source,
            field(&self.expected),
            field(&self.computed)
        )?;
        if let Some(r) = self.residual {
            write!(f, " residual={r:.3e}")?;
        }
        write!(f, " status={}", self.status)
    }
}

fn field(s: &str) -> String {
    s.replace(' ', "")
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }

    /// Record a scalar comparison; exact fields use equality, numeric ones the tolerance.
    pub fn compare<S: Scalar>(&mut self, ctx: &Ctx<'_>, source: impl fmt::Display, expected: &S, computed: &S) -> bool {
        let ok = expected.agrees(computed);
        self.records.push(CheckRecord {
            suite: ctx.suite.to_string(),
            model: ctx.model.to_string(),
            op: ctx.op.to_string(),
            source: source.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            residual: if S::EXACT { None } else { Some(expected.residual(computed)) },
            status: if ok { Status::Pass } else { Status::Fail },
        });
        ok
    }

    /// Record a yes/no check with free-form expected and computed descriptions.
    pub fn check(
        &mut self,
        ctx: &Ctx<'_>,
        source: impl fmt::Display,
        expected: impl fmt::Display,
        computed: impl fmt::Display,
        ok: bool,
    ) -> bool {
        self.records.push(CheckRecord {
            suite: ctx.suite.to_string(),
            model: ctx.model.to_string(),
            op: ctx.op.to_string(),
            source: source.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            residual: None,
            status: if ok { Status::Pass } else { Status::Fail },
        });
        ok
    }

    /// Like [`check`](Self::check), with a numeric residual attached.
    pub fn check_residual(
        &mut self,
        ctx: &Ctx<'_>,
        source: impl fmt::Display,
        expected: impl fmt::Display,
        computed: impl fmt::Display,
        residual: Option<f64>,
        ok: bool,
    ) -> bool {
        self.check(ctx, source, expected, computed, ok);
        if let Some(last) = self.records.last_mut() {
            last.residual = residual;
        }
        ok
    }

    pub fn skip(&mut self, ctx: &Ctx<'_>, source: impl fmt::Display, reason: impl fmt::Display) {
        self.records.push(CheckRecord {
            suite: ctx.suite.to_string(),
            model: ctx.model.to_string(),
            op: ctx.op.to_string(),
            source: source.to_string(),
            expected: "-".into(),
            computed: reason.to_string(),
            residual: None,
            status: Status::Skip,
        });
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn checked(&self) -> usize {
        self.records.len() - self.count(Status::Skip)
    }

    pub fn passed(&self) -> usize {
        self.count(Status::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(Status::Fail)
    }

    pub fn skipped(&self) -> usize {
        self.count(Status::Skip)
    }

    /// True when nothing failed and at least one check ran.
    pub fn all_passed(&self) -> bool {
        self.failed() == 0 && self.checked() > 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn max_residual(&self) -> Option<f64> {
        self.records.iter().filter_map(|r| r.residual).fold(None, |acc, r| {
            Some(match acc {
                Some(a) if a >= r => a,
                _ => r,
            })
        })
    }

    pub fn summary(&self) -> String {
        format!(
            "summary: checked={} passed={} failed={} skipped={}",
            self.checked(),
            self.passed(),
            self.failed(),
            self.skipped()
        )
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }
}

/// Labels shared by a run of checks.
#[derive(Clone, Copy, Debug)]
pub struct Ctx<'a> {
    pub suite: &'a str,
    pub model: &'a str,
    pub op: &'a str,
}

impl<'a> Ctx<'a> {
    pub fn new(suite: &'a str, model: &'a str, op: &'a str) -> Self {
        Self { suite, model, op }
    }

    pub fn op(self, op: &'a str) -> Self {
        Self { op, ..self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn summary_counts() {
        let mut r = VerificationReport::new();
        let ctx = Ctx::new("t", "m", "op");
        r.compare(&ctx, "(0,0)", &Rational::from_i64(1), &Rational::from_i64(1));
        r.compare(&ctx, "(0,1)", &Rational::from_i64(1), &Rational::from_i64(2));
        r.skip(&ctx, "(0,2)", "boundary");
        assert_eq!(r.summary(), "summary: checked=2 passed=1 failed=1 skipped=1");
        assert!(!r.all_passed());
        let text = r.render();
        assert!(text.contains("source=(0,1) expected=1 computed=2 status=fail"));
    }
}
