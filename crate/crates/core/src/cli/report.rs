use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "hopf-critical/report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub measured: Value,
    pub tolerance: Value,
    pub detail: String,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        ok: bool,
        measured: impl Serialize,
        tolerance: impl Serialize,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            status: Status::from_bool(ok),
            measured: serde_json::to_value(measured).unwrap_or(Value::Null),
            tolerance: serde_json::to_value(tolerance).unwrap_or(Value::Null),
            detail: detail.into(),
        }
    }
}

/// One self-describing document per run.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub schema_version: u32,
    pub command: &'static str,
    pub config: Value,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    pub data: Value,
    pub verdict: Status,
    /// Only filled with `--timing`, so default output is byte-reproducible.
    pub wall_time_seconds: Option<f64>,
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, config: Value) -> Self {
        Self {
            schema: SCHEMA,
            schema_version: SCHEMA_VERSION,
            command,
            config,
            checks: Vec::new(),
            warnings: Vec::new(),
            data: Value::Null,
            verdict: Status::Pass,
            wall_time_seconds: None,
            summary: Vec::new(),
        }
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.summary.push(text.into());
    }

    pub fn finish(&mut self) {
        self.verdict = Status::from_bool(self.checks.iter().all(|c| c.status == Status::Pass));
    }

    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.command);
        for l in &self.summary {
            let _ = writeln!(s, "  {l}");
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        for c in &self.checks {
            let _ = writeln!(
                s,
                "[{}] {}: measured {} (tolerance {}){}",
                c.status.label(),
                c.name,
                compact(&c.measured),
                compact(&c.tolerance),
                if c.detail.is_empty() {
                    String::new()
                } else {
                    format!(" {}", c.detail)
                }
            );
        }
        let _ = writeln!(s, "verdict: {}", self.verdict.label());
        if let Some(t) = self.wall_time_seconds {
            let _ = writeln!(s, "wall time: {t:.3} s");
        }
        s
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
