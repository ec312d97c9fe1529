//! Check reports with a stable text and JSON rendering.

use serde::Serialize;
use serde_json::{json, Value};

use crate::witness::Witness;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckRecord {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            passed: true,
            detail: None,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            passed: false,
            detail: Some(detail.into()),
            witness: None,
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, detail)
        }
    }

    pub fn from_verdict(name: impl Into<String>, v: Result<(), Witness>) -> Self {
        match v {
            Ok(()) => Self::pass(name),
            Err(w) => CheckRecord {
                name: name.into(),
                passed: false,
                detail: Some(w.to_string()),
                witness: Some(w),
            },
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub checks: Vec<CheckRecord>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, c: CheckRecord) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.sections.extend(other.sections);
    }

    pub fn section(&mut self, title: impl Into<String>, lines: Vec<String>) {
        self.sections.push(Section {
            title: title.into(),
            lines,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for c in &self.checks {
            out.push_str(if c.passed { "PASS " } else { "FAIL " });
            out.push_str(&c.name);
            if let Some(d) = &c.detail {
                out.push_str(" -- ");
                out.push_str(d);
            }
            out.push('\n');
        }
        for s in &self.sections {
            out.push_str(&format!("[{}]\n", s.title));
            for l in &s.lines {
                out.push_str("  ");
                out.push_str(l);
                out.push('\n');
            }
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "summary: {} checks, {} passed, {} failed\n",
            self.checks.len(),
            self.checks.len() - failed,
            failed
        ));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "passed": self.all_passed(),
            "checks": self.checks,
            "sections": self.sections,
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }
}
