//! Verification reports and their JSON / markdown serializations.
//!
//! Field order is fixed by the struct definitions and named residuals live
//! in `BTreeMap`s, so a report serializes to the same bytes for the same
//! inputs. Wall time is recorded only on request.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flagged => "flagged",
            Status::Error => "error",
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(self, Status::Fail | Status::Error)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Anchor {
    pub id: String,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// One of `<=`, `>`, `==`.
    pub relation: String,
    pub observed: Value,
    pub expected: Value,
    pub passed: bool,
}

/// Verdicts of one closed algebra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub dim: usize,
    pub derived_series: Vec<usize>,
    pub lower_central_series: Vec<usize>,
    pub solvable: bool,
    pub nilpotent: bool,
    pub killing_rank: usize,
    pub contains_identity: bool,
    pub jacobi_residual: f64,
}

/// Realized and formal closures of one generator set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionRow {
    pub algebra: String,
    pub generators: Vec<String>,
    pub realized: AlgebraSummary,
    pub formal: Option<AlgebraSummary>,
    /// Dimension stated for this algebra, when there is one.
    pub stated_dim: Option<usize>,
    /// Which closure the stated dimension agrees with.
    pub stated_matches: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub status: Status,
    pub anchors: Vec<Anchor>,
    pub checks: Vec<Check>,
    pub residuals: BTreeMap<String, f64>,
    pub dimensions: Vec<DimensionRow>,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl SuiteResult {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn dimension(&self, algebra: &str) -> Option<&DimensionRow> {
        self.dimensions.iter().find(|r| r.algebra == algebra)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
    pub error: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tool: String,
    pub version: String,
    pub seed: Option<u64>,
    pub d: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub guard: usize,
    pub tolerance: f64,
    pub suites: Vec<SuiteResult>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn any_failure(&self) -> bool {
        self.suites.iter().any(|s| s.status.is_failure())
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.any_failure())
    }

    pub fn summarize(suites: &[SuiteResult]) -> Summary {
        let mut s = Summary::default();
        for r in suites {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Flagged => s.flagged += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_markdown(&self) -> String {
        render_markdown(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

pub fn emit_report(report: &VerificationReport, path: &Path, format: Format) -> std::io::Result<()> {
    let text = match format {
        Format::Json => report.to_json(),
        Format::Markdown => report.to_markdown(),
    };
    std::fs::write(path, text)
}

fn series(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" → ")
}

fn cell(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x:.3e}"),
            _ => n.to_string(),
        },
        Value::Null => "NaN".into(),
        other => other.to_string(),
    }
}

fn escape(s: &str) -> String {
    s.replace('|', "\\|")
}

fn render_markdown(r: &VerificationReport) -> String {
    let mut out = String::new();
    let seed = r.seed.map_or("none".to_string(), |s| s.to_string());
    let _ = writeln!(out, "# Verification report\n");
    let _ = writeln!(
        out,
        "d = {}, M = {}, guard = {}, tolerance = {:e}, seed = {}\n",
        r.d, r.m, r.guard, r.tolerance, seed
    );
    let s = r.summary;
    let _ = writeln!(
        out,
        "pass {}, fail {}, flagged {}, error {}\n",
        s.pass, s.fail, s.flagged, s.error
    );

    let _ = writeln!(out, "## Suites\n");
    let _ = writeln!(out, "| Suite | Status | Checks passed |");
    let _ = writeln!(out, "|---|---|---|");
    for suite in &r.suites {
        let passed = suite.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "| {} | {} | {}/{} |", suite.name, suite.status.as_str(), passed, suite.checks.len());
    }

    let _ = writeln!(out, "\n## Anchors\n");
    let _ = writeln!(out, "| Anchor | Statement | Suite | Status |");
    let _ = writeln!(out, "|---|---|---|---|");
    for suite in &r.suites {
        for a in &suite.anchors {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} |",
                a.id,
                escape(&a.statement),
                suite.name,
                suite.status.as_str()
            );
        }
    }

    let rows: Vec<(&str, &DimensionRow)> = r
        .suites
        .iter()
        .flat_map(|s| s.dimensions.iter().map(move |d| (s.name.as_str(), d)))
        .collect();
    if !rows.is_empty() {
        let _ = writeln!(out, "\n## Formal vs realized dimensions\n");
        let _ = writeln!(
            out,
            "| Suite | Algebra | Realized dim | Realized derived | Formal dim | Formal derived | Stated | Matches |"
        );
        let _ = writeln!(out, "|---|---|---|---|---|---|---|---|");
        for (suite, d) in rows {
            let (fd, fs) = match &d.formal {
                Some(f) => (f.dim.to_string(), series(&f.derived_series)),
                None => ("-".into(), "-".into()),
            };
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} | {} |",
                suite,
                escape(&d.algebra),
                d.realized.dim,
                series(&d.realized.derived_series),
                fd,
                fs,
                d.stated_dim.map_or("-".into(), |x| x.to_string()),
                d.stated_matches.as_deref().unwrap_or("-"),
            );
        }
    }

    for suite in &r.suites {
        let _ = writeln!(out, "\n## {} ({})\n", suite.name, suite.status.as_str());
        if !suite.checks.is_empty() {
            let _ = writeln!(out, "| Check | Observed | Relation | Expected | Result |");
            let _ = writeln!(out, "|---|---|---|---|---|");
            for c in &suite.checks {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} |",
                    escape(&c.name),
                    cell(&c.observed),
                    c.relation,
                    cell(&c.expected),
                    if c.passed { "ok" } else { "FAILED" }
                );
            }
        }
        if !suite.residuals.is_empty() {
            let _ = writeln!(out, "\nReported values:\n");
            for (k, v) in &suite.residuals {
                let _ = writeln!(out, "- {}: {:.3e}", k, v);
            }
        }
        if !suite.notes.is_empty() {
            let _ = writeln!(out, "\nNotes:\n");
            for n in &suite.notes {
                let _ = writeln!(out, "- {n}");
            }
        }
    }
    out
}
