//! Pass/fail records for inequality and property checks.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "not-applicable",
        };
        f.write_str(s)
    }
}

/// One verified inequality or property, with both sides as witness values
/// (exact integers/rationals where the check is exact, estimates where it
/// is Monte Carlo).
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub params: String,
    pub status: CheckStatus,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn new(
        id: impl Into<String>,
        params: impl Into<String>,
        status: CheckStatus,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> CheckResult {
        CheckResult {
            id: id.into(),
            params: params.into(),
            status,
            lhs: lhs.into(),
            rhs: rhs.into(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> CheckResult {
        self.note = Some(note.into());
        self
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "{} {} {} lhs={} rhs={}",
            self.id, self.params, self.status, self.lhs, self.rhs
        );
        if let Some(note) = &self.note {
            s.push_str(" # ");
            s.push_str(note);
        }
        s
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new() -> VerificationReport {
        VerificationReport::default()
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> usize {
        self.count(CheckStatus::Fail)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.line());
            out.push('\n');
        }
        out.push_str(&format!(
            "total={} pass={} fail={} not-applicable={}\n",
            self.checks.len(),
            self.count(CheckStatus::Pass),
            self.count(CheckStatus::Fail),
            self.count(CheckStatus::NotApplicable),
        ));
        out
    }
}
