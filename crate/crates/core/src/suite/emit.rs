use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::SuiteReport;
use crate::report::{CheckReport, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub passed_within_budget: usize,
    pub fail: usize,
    pub skipped: usize,
    pub error: usize,
}

impl Summary {
    pub fn of(reports: &[SuiteReport]) -> Self {
        let mut s = Summary {
            total: reports.len(),
            ..Summary::default()
        };
        for r in reports {
            match r.report.status {
                Status::Pass => s.pass += 1,
                Status::PassedWithinBudget => s.passed_within_budget += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }
}

/// The machine-readable report. Timings are left out so that two runs with
/// the same seed serialize identically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredReport {
    pub format: String,
    pub summary: Summary,
    pub reports: Vec<SuiteReport>,
}

pub const FORMAT_TAG: &str = "relalg-report/1";

fn structured(reports: &[SuiteReport]) -> String {
    let doc = StructuredReport {
        format: FORMAT_TAG.into(),
        summary: Summary::of(reports),
        reports: reports
            .iter()
            .map(|r| SuiteReport {
                report: r.report.without_timing(),
                ..r.clone()
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
    s.push('\n');
    s
}

fn failing_items(r: &CheckReport, depth: usize, out: &mut String) {
    for item in &r.items {
        if item.is_ok() {
            continue;
        }
        let pad = "  ".repeat(depth + 2);
        let _ = writeln!(out, "{pad}{} {}", item.status, item.id);
        if let Some(w) = &item.witness {
            let _ = writeln!(out, "{pad}  witness: {}", w.summary);
            for (k, v) in &w.fields {
                let _ = writeln!(out, "{pad}    {k}: {v}");
            }
        }
        failing_items(item, depth + 1, out);
    }
}

fn human(reports: &[SuiteReport]) -> String {
    let s = Summary::of(reports);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} checks: {} pass, {} within budget, {} fail, {} skipped, {} error",
        s.total, s.pass, s.passed_within_budget, s.fail, s.skipped, s.error
    );
    for r in reports {
        let c = &r.report;
        let timing = c
            .timing_us
            .map(|t| format!(" {:.1}ms", t as f64 / 1000.0))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{:<20} {}  [{}; {}] n={}{}",
            c.status.as_str(),
            c.id,
            r.op,
            r.concept,
            c.instances,
            timing
        );
        for n in &c.notes {
            let _ = writeln!(out, "    note: {n}");
        }
        if let Some(b) = &c.budget {
            if c.status == Status::PassedWithinBudget {
                let _ = writeln!(out, "    budget: {b}");
            }
        }
        if !c.is_ok() {
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "    witness: {}", w.summary);
                for (k, v) in &w.fields {
                    let _ = writeln!(out, "      {k}: {v}");
                }
            }
            failing_items(c, 0, &mut out);
        }
    }
    out
}

pub fn emit_report(reports: &[SuiteReport], format: Format) -> String {
    match format {
        Format::Human => human(reports),
        Format::Structured => structured(reports),
    }
}
