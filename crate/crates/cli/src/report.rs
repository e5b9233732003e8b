//! Report envelope and its two renderings.

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "powtool.report/1";

/// Effective knobs after merging flags, file directives and defaults.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Settings {
    pub height: u32,
    pub torsion: u64,
    pub seed: Option<u64>,
    pub precision: usize,
    pub radius: f64,
    pub budget: usize,
    pub groebner: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub file: String,
    pub inputs_digest: Option<String>,
    pub settings: Option<Settings>,
    pub result: Value,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

/// SHA-256 of the canonical problem text, the command and the settings.
pub fn inputs_digest(canonical: &str, command: &str, settings: &Settings) -> String {
    let mut h = Sha256::new();
    h.update(canonical.as_bytes());
    h.update(b"\0");
    h.update(command.as_bytes());
    h.update(b"\0");
    h.update(serde_json::to_string(settings).expect("settings serialize").as_bytes());
    hex::encode(h.finalize())
}

/// Keys left out of the text rendering; JSON keeps them.
const TEXT_OMITTED: &[&str] = &["attempts"];

impl Report {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Indented key-value text. Lists of strings and of records become
    /// `- item` lines; lists of numbers stay inline.
    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        let Value::Object(map) = self.to_json() else { unreachable!("report is an object") };
        render_object(&map, 0, &mut out);
        out.join("\n") + "\n"
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.is_empty() => Some("[]".into()),
        Value::Array(items) if items.iter().all(|i| !matches!(i, Value::Object(_) | Value::String(_))) => {
            Some(serde_json::to_string(v).expect("value serializes"))
        }
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn render_object(map: &Map<String, Value>, indent: usize, out: &mut Vec<String>) {
    let pad = " ".repeat(indent);
    for (k, v) in map {
        if TEXT_OMITTED.contains(&k.as_str()) {
            continue;
        }
        match scalar(v) {
            Some(s) => out.push(format!("{pad}{k}: {s}")),
            None => {
                out.push(format!("{pad}{k}:"));
                render_value(v, indent + 2, out);
            }
        }
    }
}

fn render_value(v: &Value, indent: usize, out: &mut Vec<String>) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => render_object(m, indent, out),
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push(format!("{pad}- {s}")),
                    None => {
                        let start = out.len();
                        render_value(item, indent + 2, out);
                        if let Some(first) = out.get_mut(start) {
                            first.replace_range(indent..indent + 2, "- ");
                        }
                    }
                }
            }
        }
        other => out.push(format!("{pad}{}", scalar(other).unwrap_or_default())),
    }
}
