//! Structured check results shared by every law check, probe and audit.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincore::LimitShape;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    PassedWithinBudget,
    Skipped,
    Error,
}

impl Status {
    fn severity(self) -> u8 {
        match self {
            Status::Skipped => 0,
            Status::Pass => 1,
            Status::PassedWithinBudget => 2,
            Status::Fail => 3,
            Status::Error => 4,
        }
    }

    /// The more severe of two statuses. `Skipped` never dominates.
    pub fn worst(self, other: Status) -> Status {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }

    pub fn is_ok(self) -> bool {
        !matches!(self, Status::Fail | Status::Error)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::PassedWithinBudget => "PASSED_WITHIN_BUDGET",
            Status::Skipped => "SKIPPED",
            Status::Error => "ERROR",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a verdict comes from: exhaustive computation, a bounded probe, or a
/// declared policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    Exact,
    Budget,
    Policy,
}

/// Bounds for the probes whose defining conditions quantify over all finite
/// diagrams or all morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeBudget {
    pub max_module_size: usize,
    pub diagram_shapes: Vec<LimitShape>,
    pub max_test_morphisms: usize,
    pub seed: u64,
}

impl Default for ProbeBudget {
    fn default() -> Self {
        Self {
            max_module_size: 2,
            diagram_shapes: LimitShape::ALL.to_vec(),
            max_test_morphisms: 400,
            seed: 0,
        }
    }
}

impl ProbeBudget {
    pub fn validate(&self) -> Result<()> {
        if self.max_module_size == 0 || self.max_test_morphisms == 0 {
            return Err(Error::Invalid("probe bounds must be at least 1".into()));
        }
        if self.diagram_shapes.is_empty() {
            return Err(Error::Invalid(
                "probe needs at least one diagram shape".into(),
            ));
        }
        Ok(())
    }

    pub fn with_max_module_size(mut self, n: usize) -> Self {
        self.max_module_size = n;
        self
    }

    pub fn with_shapes(mut self, shapes: &[LimitShape]) -> Self {
        self.diagram_shapes = shapes.to_vec();
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_test_morphisms(mut self, n: usize) -> Self {
        self.max_test_morphisms = n;
        self
    }
}

impl fmt::Display for ProbeBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shapes: Vec<&str> = self.diagram_shapes.iter().map(|s| s.name()).collect();
        write!(
            f,
            "modules<={}, shapes=[{}], morphisms<={}, seed={}",
            self.max_module_size,
            shapes.join(","),
            self.max_test_morphisms,
            self.seed
        )
    }
}

/// A concrete counterexample, rendered with element labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub summary: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fields: Vec<(String, String)>,
}

impl Witness {
    pub fn new(summary: impl Into<String>) -> Self {
        Self {
            summary: summary.into(),
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, name: impl Into<String>, value: impl fmt::Display) -> Self {
        self.fields.push((name.into(), value.to_string()));
        self
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary)?;
        for (k, v) in &self.fields {
            write!(f, "; {k} = {v}")?;
        }
        Ok(())
    }
}

/// One check result. Nested `items` break a check into its individual laws
/// or conditions; the parent status is the worst of its own and its items'.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub status: Status,
    pub provenance: Vec<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<ProbeBudget>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<CheckReport>,
    #[serde(default)]
    pub instances: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<u64>,
}

impl CheckReport {
    pub fn new(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            status: Status::Pass,
            provenance: vec![Provenance::Exact],
            budget: None,
            witness: None,
            notes: Vec::new(),
            items: Vec::new(),
            instances: 0,
            timing_us: None,
        }
    }

    pub fn failed(id: impl Into<String>, witness: Witness) -> Self {
        let mut r = Self::new(id);
        r.status = Status::Fail;
        r.witness = Some(witness);
        r
    }

    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> Self {
        let mut r = Self::new(id);
        r.status = Status::Skipped;
        r.notes.push(reason.into());
        r
    }

    pub fn errored(id: impl Into<String>, error: &Error) -> Self {
        let mut r = Self::new(id);
        r.status = Status::Error;
        r.witness = Some(Witness::new(error.to_string()));
        r
    }

    pub fn is_ok(&self) -> bool {
        self.status.is_ok()
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::PassedWithinBudget)
    }

    /// Counts one instance of a law; the first violation sets the witness.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.instances += 1;
        if !ok && self.witness.is_none() {
            self.status = self.status.worst(Status::Fail);
            self.witness = Some(witness());
        }
    }

    pub fn fail(&mut self, witness: Witness) {
        self.status = self.status.worst(Status::Fail);
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn tag(&mut self, provenance: Provenance) {
        if !self.provenance.contains(&provenance) {
            self.provenance.push(provenance);
            self.provenance.sort();
        }
    }

    /// Marks a pass as budget-relative and stamps the budget on it.
    pub fn within_budget(&mut self, budget: &ProbeBudget) {
        self.tag(Provenance::Budget);
        self.budget = Some(budget.clone());
        if self.status == Status::Pass {
            self.status = Status::PassedWithinBudget;
        }
    }

    pub fn push(&mut self, item: CheckReport) {
        self.status = self.status.worst(item.status);
        for &p in &item.provenance {
            self.tag(p);
        }
        if self.budget.is_none() {
            self.budget.clone_from(&item.budget);
        }
        self.instances += item.instances;
        self.items.push(item);
    }

    pub fn item(&self, id: &str) -> Option<&CheckReport> {
        self.items.iter().find(|i| i.id == id)
    }

    /// Depth-first search for the first failing leaf.
    pub fn first_failure(&self) -> Option<&CheckReport> {
        if !self.is_ok() {
            if let Some(inner) = self.items.iter().find_map(|i| i.first_failure()) {
                return Some(inner);
            }
            return Some(self);
        }
        None
    }

    /// A copy without timing, for byte-stable serialization.
    pub fn without_timing(&self) -> CheckReport {
        let mut r = self.clone();
        r.timing_us = None;
        r.items = r.items.iter().map(CheckReport::without_timing).collect();
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_status_ignores_skips() {
        assert_eq!(Status::Pass.worst(Status::Skipped), Status::Pass);
        assert_eq!(Status::Skipped.worst(Status::Pass), Status::Pass);
        assert_eq!(Status::PassedWithinBudget.worst(Status::Fail), Status::Fail);
        assert_eq!(Status::Fail.worst(Status::Error), Status::Error);
    }

    #[test]
    fn first_violation_is_kept() {
        let mut r = CheckReport::new("law");
        r.record(true, || Witness::new("unused"));
        r.record(false, || Witness::new("first"));
        r.record(false, || Witness::new("second"));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witness.unwrap().summary, "first");
        assert_eq!(r.instances, 3);
    }

    #[test]
    fn aggregation_is_order_independent() {
        let a = CheckReport::failed("a", Witness::new("x"));
        let b = CheckReport::skipped("b", "n/a");
        let mut c = CheckReport::new("c");
        c.within_budget(&ProbeBudget::default());
        let mut p = CheckReport::new("p");
        let mut q = CheckReport::new("q");
        for r in [a.clone(), b.clone(), c.clone()] {
            p.push(r);
        }
        for r in [c, b, a] {
            q.push(r);
        }
        assert_eq!(p.status, q.status);
        assert_eq!(p.provenance, q.provenance);
    }

    #[test]
    fn structured_round_trip() {
        let mut r = CheckReport::new("x");
        r.fail(Witness::new("bad").field("pair", "(a,b)"));
        let json = serde_json::to_string(&r).unwrap();
        let back: CheckReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
