use std::fmt::Write as _;

use qdilog::qtorus::Mismatch;
use serde_json::{json, Map, Value};

/// First differing monomial with both coefficients.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub monomial: Vec<i64>,
    pub left: String,
    pub right: String,
}

impl From<&Mismatch> for Counterexample {
    fn from(m: &Mismatch) -> Self {
        Self { monomial: m.monomial().0, left: m.left.to_string(), right: m.right.to_string() }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
    /// Command line reproducing a failure in isolation.
    pub reproduce: Option<String>,
    pub detail: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Self { name: name.into(), pass, counterexample: None, reproduce: None, detail: None }
    }

    pub fn failing(name: impl Into<String>, cx: Counterexample, reproduce: impl Into<String>) -> Self {
        Self { name: name.into(), pass: false, counterexample: Some(cx), reproduce: Some(reproduce.into()), detail: None }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub output: Map<String, Value>,
    pub wall_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, inputs: Value) -> Self {
        Self { command: command.into(), inputs, checks: Vec::new(), output: Map::new(), wall_ms: None }
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn put(&mut self, key: &str, v: Value) {
        self.output.insert(key.to_string(), v);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("name".into(), json!(c.name));
                m.insert("pass".into(), json!(c.pass));
                if let Some(cx) = &c.counterexample {
                    m.insert("counterexample".into(), json!({"monomial": cx.monomial, "left": cx.left, "right": cx.right}));
                }
                if let Some(r) = &c.reproduce {
                    m.insert("reproduce".into(), json!(r));
                }
                if let Some(d) = &c.detail {
                    m.insert("detail".into(), d.clone());
                }
                Value::Object(m)
            })
            .collect();
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("inputs".into(), self.inputs.clone());
        m.insert("pass".into(), json!(self.passed()));
        m.insert("checks".into(), Value::Array(checks));
        if !self.output.is_empty() {
            m.insert("output".into(), Value::Object(self.output.clone()));
        }
        if let Some(ms) = self.wall_ms {
            m.insert("wall_ms".into(), json!(ms));
        }
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.command);
        for (k, v) in &self.output {
            let _ = writeln!(s, "  {k}: {}", text_value(v));
        }
        for c in &self.checks {
            let _ = writeln!(s, "  [{}] {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
            if let Some(cx) = &c.counterexample {
                let _ = writeln!(s, "      at y^{:?}: left {} right {}", cx.monomial, cx.left, cx.right);
            }
            if let Some(r) = &c.reproduce {
                let _ = writeln!(s, "      reproduce: {r}");
            }
        }
        if let Some(ms) = self.wall_ms {
            let _ = writeln!(s, "  time: {ms} ms");
        }
        s
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
