//! Machine-readable run reports. Field order is fixed by declaration, so a
//! report serializes identically for identical inputs; the timestamp is the
//! only field that varies between repeated runs.

use polyarea::polygon::{StarKind, StarSpec};
use polyarea::solver::{SolveOutcome, SolverConfig};
use serde::Serialize;
use std::time::{SystemTime, UNIX_EPOCH};

/// Bumped whenever the report layout changes incompatibly.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub n_range: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<SolverConfig>,
    pub unix_time_s: u64,
    pub body: ReportBody,
}

impl RunReport {
    pub fn new(command: String, n_range: [usize; 2], config: Option<SolverConfig>, body: ReportBody) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            n_range,
            config,
            unix_time_s: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportBody {
    Stars {
        n: usize,
        label: String,
        winding: Option<i32>,
        perimeter: f64,
        area: f64,
        vertices: Vec<[f64; 2]>,
    },
    Verify {
        suites: Vec<SuiteReport>,
        all_passed: bool,
    },
    Solve {
        outcome: SolveOutcome,
    },
    Flow {
        direction: String,
        count: usize,
        converged: usize,
        failed: usize,
        monotone: usize,
        /// Terminal class label -> number of trajectories, sorted by label.
        histogram: Vec<(String, usize)>,
    },
    Extensions {
        rows: Vec<ExtensionRow>,
    },
}

/// One line of a verification suite: what was predicted, what came out.
#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub predicted: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: String, predicted: impl ToString, computed: impl ToString, pass: bool) -> Self {
        Check { name, predicted: predicted.to_string(), computed: computed.to_string(), pass }
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.pass);
        SuiteReport { suite: suite.to_string(), checks, passed }
    }
}

/// First-order residuals of the constrained formulations at one catalogue
/// configuration.
#[derive(Debug, Serialize)]
pub struct ExtensionRow {
    pub label: String,
    /// `(p, residual)` for the power-sum constraints.
    pub power_sum_residuals: Vec<(f64, f64)>,
    pub primal_residual: Option<f64>,
    pub dual_residual: Option<f64>,
    /// Expected-rejection note for configurations outside a check's domain.
    pub note: Option<String>,
    pub pass: bool,
}

/// Short display name of a catalogue entry: `S(n,w)` or `F(n)`.
pub fn spec_label(spec: &StarSpec) -> String {
    match spec.kind {
        StarKind::Star { w } => format!("S({},{})", spec.n, w),
        StarKind::Fold => format!("F({})", spec.n),
    }
}
