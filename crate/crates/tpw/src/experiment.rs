//! Experiment sweeps: a plan lists instance descriptors, all of them are
//! validated up front, then each is generated and audited in plan order and
//! the rows land in one CSV. Budgets are deterministic node counts derived
//! from the requested milliseconds at a fixed rate, so a rerun of the same
//! plan is byte-identical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::{audit, AuditBudget, BoundReport, CSV_HEADER};
use crate::error::{Error, Result};
use crate::generators::gen_by_name;

/// Deterministic conversion rate from the millisecond budget knob to search
/// nodes.
pub const NODES_PER_MS: u64 = 10_000;

fn default_budget_ms() -> u64 {
    20
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, i64>,
    #[serde(default)]
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(family: &str, params: &[(&str, i64)], seed: u64) -> Self {
        InstanceSpec {
            family: family.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            seed,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub instances: Vec<InstanceSpec>,
    #[serde(default = "default_budget_ms")]
    pub budget_ms: u64,
    #[serde(default)]
    pub max_n: Option<usize>,
}

impl ExperimentPlan {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("bad plan JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes")
    }

    fn budget(&self) -> AuditBudget {
        AuditBudget {
            exact_nodes: self.budget_ms.saturating_mul(NODES_PER_MS),
            exact_max_n: self.max_n.unwrap_or(12),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentOutcome {
    pub csv: String,
    pub reports: Vec<BoundReport>,
    /// Every failed asserted inequality across all rows.
    pub violations: Vec<String>,
}

/// Validates every descriptor, then generates and audits each instance in
/// plan order. Fails up front with the full list of bad descriptors if any
/// precondition is violated; nothing runs in that case.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentOutcome> {
    let mut preflight_errors = Vec::new();
    let mut instances = Vec::with_capacity(plan.instances.len());
    for (i, spec) in plan.instances.iter().enumerate() {
        match gen_by_name(&spec.family, &spec.params, spec.seed) {
            Ok(pair) => instances.push(pair),
            Err(e) => preflight_errors.push(format!("instance {i} ({}): {e}", spec.family)),
        }
    }
    if !preflight_errors.is_empty() {
        return Err(Error::input(format!(
            "plan preflight failed:\n{}",
            preflight_errors.join("\n")
        )));
    }

    let budget = plan.budget();
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    let mut reports = Vec::with_capacity(instances.len());
    let mut violations = Vec::new();
    for (g, meta) in &instances {
        let report = audit(g, meta, &budget);
        csv.push_str(&report.csv_row());
        csv.push('\n');
        violations.extend(report.violations.iter().cloned());
        reports.push(report);
    }
    Ok(ExperimentOutcome {
        csv,
        reports,
        violations,
    })
}

/// The fixed construction-guarantee suite: paths and cycles, fifty seeded
/// random k-trees with `k <= 3` and up to sixty vertices, and the four named
/// lower-bound instances.
pub fn builtin_suite() -> ExperimentPlan {
    let mut instances = Vec::new();
    for n in [10, 25, 50] {
        instances.push(InstanceSpec::new("path", &[("n", n)], 0));
    }
    for n in [8, 17, 30] {
        instances.push(InstanceSpec::new("cycle", &[("n", n)], 0));
    }
    for i in 0..50u64 {
        let k = 1 + (i % 3) as i64;
        let n = 12 + ((i * 7) % 49) as i64; // 12..=60
        instances.push(InstanceSpec::new(
            "random_ktree",
            &[("n", n.max(k + 1)), ("k", k)],
            i + 1,
        ));
    }
    instances.push(InstanceSpec::new(
        "lower_general",
        &[("k", 2), ("delta", 7), ("n", 3)],
        0,
    ));
    instances.push(InstanceSpec::new(
        "lower_general",
        &[("k", 4), ("delta", 15), ("n", 9)],
        0,
    ));
    instances.push(InstanceSpec::new("lower_tw2", &[("delta", 11)], 0));
    instances.push(InstanceSpec::new("lower_tw2", &[("delta", 13)], 0));
    ExperimentPlan {
        instances,
        budget_ms: default_budget_ms(),
        max_n: None,
    }
}

pub fn suite_by_name(name: &str) -> Result<ExperimentPlan> {
    match name {
        "lemma3" => Ok(builtin_suite()),
        other => Err(Error::input(format!(
            "unknown suite `{other}` (available: lemma3)"
        ))),
    }
}
