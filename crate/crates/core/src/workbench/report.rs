//! Check records, reports and their markdown/json renderings.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::algebra::AlgebraSpec;
use crate::workbench::file::{AlgebraFile, Source};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub suite: String,
    pub anchor: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Check {
    pub fn new(suite: &str, name: &str, anchor: &str, status: Status) -> Check {
        Check {
            id: format!("{suite}.{name}"),
            suite: suite.to_string(),
            anchor: anchor.to_string(),
            status,
            detail: None,
            witness: None,
            value: None,
            timing_ms: None,
        }
    }

    pub fn pass_if(suite: &str, name: &str, anchor: &str, ok: bool) -> Check {
        Check::new(
            suite,
            name,
            anchor,
            if ok { Status::Pass } else { Status::Fail },
        )
    }

    pub fn detail(mut self, d: impl Into<String>) -> Check {
        self.detail = Some(d.into());
        self
    }

    pub fn witness(mut self, w: Value) -> Check {
        self.witness = Some(w);
        self
    }

    pub fn maybe_witness(mut self, w: Option<Value>) -> Check {
        self.witness = w;
        self
    }

    pub fn value(mut self, v: Value) -> Check {
        self.value = Some(v);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub name: String,
    pub field: String,
    pub dimension: usize,
    pub source: Source,
    pub associative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub algebra: AlgebraSummary,
    pub input_digest: String,
    pub options: Value,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

/// `sha256:` digest of the canonical algebra file.
pub fn input_digest(spec: &AlgebraSpec) -> String {
    let json = AlgebraFile::from_spec(spec).to_json();
    format!("sha256:{}", hex::encode(Sha256::digest(json.as_bytes())))
}

impl Report {
    pub fn new(
        command: &str,
        algebra: AlgebraSummary,
        digest: String,
        options: Value,
        mut checks: Vec<Check>,
    ) -> Report {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report {
            schema: SCHEMA,
            tool: "algeo".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            algebra,
            input_digest: digest,
            options,
            checks,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serialisable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let a = &self.algebra;
        out += &format!("# algeo {} report: {}\n\n", self.command, a.name);
        out += &format!(
            "- field: {}\n- dimension: {}\n- source: {}\n- associative: {}\n- input: {}\n- tool: {} {} (schema {})\n- options: `{}`\n\n",
            a.field,
            a.dimension,
            match a.source {
                Source::Builtin => "builtin",
                Source::File => "file",
            },
            a.associative,
            self.input_digest,
            self.tool,
            self.version,
            self.schema,
            self.options
        );
        out += &format!(
            "**{} passed, {} failed, {} skipped**\n",
            self.summary.passed, self.summary.failed, self.summary.skipped
        );
        let mut suite = "";
        for c in &self.checks {
            if c.suite != suite {
                suite = &c.suite;
                out += &format!(
                    "\n## {suite}\n\n| check | status | anchor | detail |\n|---|---|---|---|\n"
                );
            }
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "**FAIL**",
                Status::Skipped => "skipped",
            };
            let mut parts: Vec<String> = c.detail.iter().cloned().collect();
            if let Some(v) = &c.value {
                parts.push(format!("value `{}`", compact(v)));
            }
            if let Some(w) = &c.witness {
                parts.push(format!("witness `{}`", compact(w)));
            }
            if let Some(t) = c.timing_ms {
                parts.push(format!("{t} ms"));
            }
            let detail = parts.join("; ");
            out += &format!(
                "| {} | {} | {} | {} |\n",
                c.id,
                status,
                c.anchor,
                detail.replace('|', "\\|")
            );
        }
        out
    }
}

fn compact(v: &Value) -> String {
    let s = v.to_string();
    if s.chars().count() > 160 {
        let head: String = s.chars().take(157).collect();
        format!("{head}...")
    } else {
        s
    }
}
