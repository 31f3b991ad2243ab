//! Declarative check suites: a JSON document names monoids, actions,
//! modules, covers and gluings, then lists checks to run against them.

mod doc;
mod emit;
mod ops;
mod registry;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use doc::*;
pub use emit::{emit_report, Format, StructuredReport, Summary};
pub use ops::{check_references, concept, run_op};
pub use registry::{Gluing, Registry};

use crate::error::{Error, Result};
use crate::report::{CheckReport, ProbeBudget, Status, Witness};

/// Environment variable holding a partial budget, as JSON, applied beneath
/// the document's own budget.
pub const BUDGET_ENV: &str = "RELALG_BUDGET";

pub fn parse_document(text: &str) -> Result<SuiteDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

#[derive(Clone, Debug)]
pub struct ResolvedCheck {
    pub id: String,
    pub op: OpDoc,
    pub budget: Option<BudgetDoc>,
}

/// A parsed document with every name resolved.
pub struct Suite {
    pub document: SuiteDocument,
    pub registry: Registry,
    pub checks: Vec<ResolvedCheck>,
}

pub fn parse_suite(text: &str) -> Result<Suite> {
    build_suite(parse_document(text)?)
}

pub fn build_suite(document: SuiteDocument) -> Result<Suite> {
    let registry = Registry::build(&document)?;
    let mut seen = std::collections::HashSet::new();
    let mut checks = Vec::with_capacity(document.checks.len());
    for (k, c) in document.checks.iter().enumerate() {
        let id =
            c.id.clone()
                .unwrap_or_else(|| format!("{}[{k}]", c.op.name()));
        if !seen.insert(id.clone()) {
            return Err(Error::Validation {
                name: id,
                reason: "duplicate check id".into(),
            });
        }
        check_references(&registry, &c.op, &id)?;
        checks.push(ResolvedCheck {
            id,
            op: c.op.clone(),
            budget: c.budget.clone(),
        });
    }
    Ok(Suite {
        document,
        registry,
        checks,
    })
}

/// Overrides applied on top of the document when running a suite.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub base: ProbeBudget,
    pub seed: Option<u64>,
    pub max_size: Option<usize>,
}

impl RunOptions {
    /// Defaults, adjusted by a partial budget in `RELALG_BUDGET` if set.
    pub fn from_env() -> Result<Self> {
        let mut base = ProbeBudget::default();
        if let Ok(text) = std::env::var(BUDGET_ENV) {
            let doc: BudgetDoc = serde_json::from_str(&text).map_err(|e| Error::Parse {
                line: e.line(),
                column: e.column(),
                message: format!("{BUDGET_ENV}: {e}"),
            })?;
            doc.apply(&mut base);
        }
        Ok(Self {
            base,
            ..Self::default()
        })
    }

    /// Budget for one check: defaults, then the document, then the check,
    /// then command-line overrides.
    pub fn budget_for(&self, document: &SuiteDocument, check: &ResolvedCheck) -> ProbeBudget {
        let mut b = self.base.clone();
        if let Some(d) = &document.budget {
            d.apply(&mut b);
        }
        if let Some(s) = document.seed {
            b.seed = s;
        }
        if let Some(d) = &check.budget {
            d.apply(&mut b);
        }
        if let Some(s) = self.seed {
            b.seed = s;
        }
        if let Some(n) = self.max_size {
            b.max_module_size = n;
        }
        b
    }
}

/// One row of a suite run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub op: String,
    pub concept: String,
    #[serde(flatten)]
    pub report: CheckReport,
}

fn panic_message(p: &(dyn std::any::Any + Send)) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "panic".into())
}

fn run_check(suite: &Suite, opts: &RunOptions, check: &ResolvedCheck) -> SuiteReport {
    let start = Instant::now();
    let budget = opts.budget_for(&suite.document, check);
    let outcome = budget.validate().and_then(|()| {
        catch_unwind(AssertUnwindSafe(|| {
            run_op(&suite.registry, &check.op, &budget, &check.id)
        }))
        .unwrap_or_else(|p| {
            Err(Error::Invariant(format!(
                "check panicked: {}",
                panic_message(&*p)
            )))
        })
    });
    let mut report = match outcome {
        Ok(mut r) => {
            r.id.clone_from(&check.id);
            if r.status == Status::Fail && r.witness.is_none() {
                let inner = r.first_failure().and_then(|f| {
                    f.witness
                        .clone()
                        .map(|w| w.field("check", &f.id))
                        .or_else(|| Some(Witness::new(format!("{} failed", f.id))))
                });
                r.witness = inner;
            }
            r
        }
        Err(e) => CheckReport::errored(&check.id, &e),
    };
    report.timing_us = Some(start.elapsed().as_micros() as u64);
    SuiteReport {
        op: check.op.name().to_string(),
        concept: concept(&check.op).to_string(),
        report,
    }
}

/// Runs every check, in parallel, and returns the rows in document order.
pub fn run_suite(suite: &Suite, opts: &RunOptions) -> Vec<SuiteReport> {
    suite
        .checks
        .par_iter()
        .map(|c| run_check(suite, opts, c))
        .collect()
}

/// True when no row failed or errored.
pub fn all_ok(reports: &[SuiteReport]) -> bool {
    reports.iter().all(|r| r.report.is_ok())
}
