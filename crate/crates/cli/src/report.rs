use serde_json::{json, Map, Value};

use riccati_galois::applications::Step;

pub const SCHEMA: &str = "riccati-galois/1";

/// Report under construction; every artifact is verified before it is added.
pub struct Report {
    command: String,
    input: Map<String, Value>,
    trace: Vec<Value>,
    verdict: Map<String, Value>,
    artifacts: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            input: Map::new(),
            trace: Vec::new(),
            verdict: Map::new(),
            artifacts: Map::new(),
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) {
        self.input.insert(key.to_string(), v.into());
    }

    pub fn step(&mut self, stage: &str, detail: impl Into<String>) {
        self.trace.push(json!({ "stage": stage, "detail": detail.into() }));
    }

    pub fn steps(&mut self, steps: &[Step]) {
        for s in steps {
            self.step(&s.stage, s.detail.clone());
        }
    }

    pub fn verdict(&mut self, key: &str, v: impl Into<Value>) {
        self.verdict.insert(key.to_string(), v.into());
    }

    pub fn artifact(&mut self, key: &str, v: impl Into<Value>) {
        self.artifacts.insert(key.to_string(), v.into());
    }

    pub fn finish(self, elapsed_ms: Option<u128>) -> Value {
        let mut out = Map::new();
        out.insert("schema".into(), SCHEMA.into());
        out.insert("command".into(), self.command.into());
        out.insert("input".into(), Value::Object(self.input));
        out.insert("trace".into(), Value::Array(self.trace));
        out.insert("verdict".into(), Value::Object(self.verdict));
        out.insert("artifacts".into(), Value::Object(self.artifacts));
        if let Some(ms) = elapsed_ms {
            out.insert("timing".into(), json!({ "elapsed_ms": ms as u64 }));
        }
        Value::Object(out)
    }
}

/// Plain-text rendering of a JSON report.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = v else {
        return scalar_text(v);
    };
    let order = ["schema", "command", "input", "verdict", "artifacts", "trace", "timing"];
    for key in order {
        let Some(val) = map.get(key) else { continue };
        match (key, val) {
            ("trace", Value::Array(items)) => {
                out.push_str("trace:\n");
                for (i, it) in items.iter().enumerate() {
                    let stage = it.get("stage").map(scalar_text).unwrap_or_default();
                    let detail = it.get("detail").map(scalar_text).unwrap_or_default();
                    out.push_str(&format!("  {}. {stage}: {detail}\n", i + 1));
                }
            }
            (_, Value::Object(_)) | (_, Value::Array(_)) => {
                out.push_str(&format!("{key}:\n"));
                write_nested(&mut out, val, 1);
            }
            _ => out.push_str(&format!("{key}: {}\n", scalar_text(val))),
        }
    }
    out
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn write_nested(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, val) in m {
                match val {
                    Value::Object(_) | Value::Array(_) if !is_flat(val) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_nested(out, val, depth + 1);
                    }
                    Value::Array(items) => {
                        let parts: Vec<String> = items.iter().map(scalar_text).collect();
                        out.push_str(&format!("{pad}{k}: [{}]\n", parts.join(", ")));
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(val))),
                }
            }
        }
        Value::Array(items) => {
            for it in items {
                match it {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        write_nested(out, it, depth + 1);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar_text(it))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !matches!(i, Value::Object(_) | Value::Array(_))),
        _ => false,
    }
}
