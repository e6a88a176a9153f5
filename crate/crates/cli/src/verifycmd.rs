//! The `verify` subcommand: run the requested check suites and print one
//! line per check. Exit status 0 means no check failed (not-applicable is
//! not failure).

use std::path::Path;

use serde::Serialize;

use simjoin_core::report::VerificationReport;
use simjoin_core::verify::{run_scope, SuiteLimits, SCOPES};

use crate::runcmd::VERSION_STRING;

#[derive(Serialize)]
struct VerifySummary<'a> {
    version: &'static str,
    scopes: &'a [String],
    seed: u64,
    samples: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_d: Option<u32>,
    report: &'a VerificationReport,
}

pub fn execute(
    scopes: &[String],
    max_d: Option<u32>,
    seed: u64,
    samples: u64,
    json: Option<&Path>,
) -> anyhow::Result<i32> {
    let limits = SuiteLimits {
        max_d,
        seed,
        samples,
    };
    let selected: Vec<String> = if scopes.is_empty() {
        SCOPES.iter().map(|s| s.to_string()).collect()
    } else {
        scopes.to_vec()
    };
    let mut report = VerificationReport::new();
    for scope in &selected {
        let part = run_scope(scope, &limits)?;
        report.extend(part);
    }
    print!("{}", report.render_text());
    if let Some(path) = json {
        let summary = VerifySummary {
            version: VERSION_STRING,
            scopes: &selected,
            seed,
            samples,
            max_d,
            report: &report,
        };
        let mut text = serde_json::to_string_pretty(&summary)?;
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(if report.failures() == 0 { 0 } else { 1 })
}
