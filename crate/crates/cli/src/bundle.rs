//! Reports produced by CLI commands: ordered sections of verdicts, each
//! section named after the library operation that produced it.

use std::fmt::Write as _;

use moddata::check::Status;
use moddata::Report;
use serde_json::{json, Map, Value};

pub const BUNDLE_SCHEMA: &str = "moddata.bundle.v1";

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Pass(Option<String>),
    Fail(Option<String>),
    Skipped(String),
    /// Reported, not asserted. `text` is the human rendering of `json`.
    Value { json: Value, text: String },
}

impl Verdict {
    pub fn value(json: Value, text: impl Into<String>) -> Self {
        Verdict::Value { json, text: text.into() }
    }

    /// A value whose text form is its compact JSON.
    pub fn plain(json: Value) -> Self {
        let text = match &json {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        Verdict::Value { json, text }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        match self {
            Verdict::Pass(w) | Verdict::Fail(w) => {
                let status = if matches!(self, Verdict::Pass(_)) { "pass" } else { "fail" };
                m.insert("status".into(), status.into());
                if let Some(w) = w {
                    m.insert("witness".into(), w.as_str().into());
                }
            }
            Verdict::Skipped(reason) => {
                m.insert("status".into(), "skipped".into());
                m.insert("reason".into(), reason.as_str().into());
            }
            Verdict::Value { json, .. } => {
                m.insert("status".into(), "value".into());
                m.insert("value".into(), json.clone());
            }
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    /// Library operation, e.g. `validate_axioms`.
    pub operation: String,
    pub entries: Vec<(String, Verdict)>,
}

impl Section {
    pub fn new(operation: &str) -> Self {
        Section {
            operation: operation.to_owned(),
            entries: Vec::new(),
        }
    }

    /// Checks become pass/fail/skipped verdicts and notes become values.
    pub fn from_report(operation: &str, r: &Report) -> Self {
        let mut s = Section::new(operation);
        s.add_report(r);
        s
    }

    pub fn add_report(&mut self, r: &Report) {
        for c in &r.checks {
            let v = match c.status {
                Status::Pass => Verdict::Pass(c.witness.clone()),
                Status::Fail => Verdict::Fail(c.witness.clone()),
                Status::Skipped => Verdict::Skipped(c.witness.clone().unwrap_or_default()),
            };
            self.push(&c.name, v);
        }
        for (k, v) in &r.notes {
            self.push(k, Verdict::plain(note_json(v)));
        }
    }

    /// Every check of `r` reported as a value instead of asserted.
    pub fn add_report_unasserted(&mut self, r: &Report) {
        for c in &r.checks {
            let v = json!({ "holds": c.passed(), "witness": c.witness });
            let text = match &c.witness {
                Some(w) if !c.passed() => format!("{} ({})", c.passed(), w),
                _ => c.passed().to_string(),
            };
            self.push(&c.name, Verdict::value(v, text));
        }
        for (k, v) in &r.notes {
            self.push(k, Verdict::plain(note_json(v)));
        }
    }

    pub fn push(&mut self, name: &str, v: Verdict) {
        self.entries.push((name.to_owned(), v));
    }

    pub fn passed(&self) -> bool {
        !self.entries.iter().any(|(_, v)| matches!(v, Verdict::Fail(_)))
    }
}

/// Notes are strings in the library; booleans and integers are restored.
fn note_json(v: &str) -> Value {
    match v {
        "true" => Value::Bool(true),
        "false" => Value::Bool(false),
        _ => v
            .parse::<i64>()
            .map(Value::from)
            .unwrap_or_else(|_| Value::String(v.to_owned())),
    }
}

/// Result of any command. `analyze` fills `datum` and `report`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisBundle {
    pub command: String,
    pub datum: Option<Value>,
    pub report: Option<Value>,
    pub sections: Vec<Section>,
}

impl AnalysisBundle {
    pub fn new(command: &str) -> Self {
        AnalysisBundle {
            command: command.to_owned(),
            datum: None,
            report: None,
            sections: Vec::new(),
        }
    }

    pub fn push(&mut self, s: Section) {
        self.sections.push(s);
    }

    /// True iff no asserted check failed.
    pub fn ok(&self) -> bool {
        self.sections.iter().all(Section::passed)
    }

    pub fn verdict(&self, key: &str) -> Option<&Verdict> {
        let (op, name) = key.split_once('/')?;
        self.sections
            .iter()
            .filter(|s| s.operation == op)
            .flat_map(|s| &s.entries)
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Value {
        let mut verdicts = Map::new();
        for s in &self.sections {
            for (name, v) in &s.entries {
                verdicts.insert(format!("{}/{}", s.operation, name), v.to_json());
            }
        }
        let mut m = Map::new();
        m.insert("schema".into(), BUNDLE_SCHEMA.into());
        m.insert("command".into(), self.command.as_str().into());
        if let Some(d) = &self.datum {
            m.insert("datum".into(), d.clone());
        }
        if let Some(r) = &self.report {
            m.insert("report".into(), r.clone());
        }
        m.insert("verdicts".into(), Value::Object(verdicts));
        m.insert("ok".into(), self.ok().into());
        Value::Object(m)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            let _ = writeln!(out, "== {} ==", s.operation);
            for (name, v) in &s.entries {
                let _ = match v {
                    Verdict::Pass(None) => writeln!(out, "  pass     {}", name),
                    Verdict::Pass(Some(w)) => writeln!(out, "  pass     {}: {}", name, w),
                    Verdict::Fail(None) => writeln!(out, "  FAIL     {}", name),
                    Verdict::Fail(Some(w)) => writeln!(out, "  FAIL     {}: {}", name, w),
                    Verdict::Skipped(r) => writeln!(out, "  skipped  {}: {}", name, r),
                    Verdict::Value { text, .. } if text.contains('\n') => {
                        let _ = writeln!(out, "  value    {}:", name);
                        text.lines().try_for_each(|l| writeln!(out, "             {}", l))
                    }
                    Verdict::Value { text, .. } => writeln!(out, "  value    {} = {}", name, text),
                };
            }
        }
        let _ = writeln!(out, "{}", if self.ok() { "ok" } else { "FAILED" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_maps_to_verdicts() {
        let mut r = Report::new();
        r.pass("a");
        r.fail("b", "at 1".into());
        r.skip("c", "prerequisite");
        r.note("d", true);
        r.note("e", 12);
        let mut b = AnalysisBundle::new("x");
        b.push(Section::from_report("op", &r));
        assert!(!b.ok());
        let j = b.to_json();
        let v = &j["verdicts"];
        assert_eq!(v["op/a"]["status"], "pass");
        assert_eq!(v["op/b"]["witness"], "at 1");
        assert_eq!(v["op/c"]["status"], "skipped");
        assert_eq!(v["op/d"]["value"], true);
        assert_eq!(v["op/e"]["value"], 12);
        assert_eq!(j["ok"], false);
        assert_eq!(b.verdict("op/b"), Some(&Verdict::Fail(Some("at 1".into()))));
    }

    #[test]
    fn unasserted_checks_do_not_fail() {
        let mut r = Report::new();
        r.fail("b", "w".into());
        let mut s = Section::new("op");
        s.add_report_unasserted(&r);
        assert!(s.passed());
    }

    #[test]
    fn text_has_sections() {
        let mut b = AnalysisBundle::new("x");
        let mut s = Section::new("op");
        s.push("k", Verdict::plain(json!(3)));
        b.push(s);
        let t = b.to_text();
        assert!(t.contains("== op =="));
        assert!(t.contains("value    k = 3"));
        assert!(t.ends_with("ok\n"));
    }
}
