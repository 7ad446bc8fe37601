use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// The payload every subcommand emits. Maps are ordered, so serialisation is
/// byte-for-byte deterministic.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: Value,
    /// What each result field is, in words.
    pub notes: BTreeMap<String, String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            result: Value::Object(Default::default()),
            notes: BTreeMap::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn field(mut self, key: &str, value: impl Serialize, note: &str) -> Self {
        let v = serde_json::to_value(value).expect("report fields serialise");
        if let Value::Object(map) = &mut self.result {
            map.insert(key.to_string(), v);
        }
        self.notes.insert(key.to_string(), note.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    /// One `path = value` line per leaf of the JSON form, values JSON-encoded.
    pub fn to_text(&self) -> String {
        let v = serde_json::to_value(self).expect("report serialises");
        let mut out = String::new();
        flatten("", &v, &mut out);
        out
    }
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(&p, child, out);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), child, out);
            }
        }
        leaf => {
            let _ = writeln!(out, "{path} = {leaf}");
        }
    }
}

/// Recovers the leaves of a text report, for parity checks.
#[cfg(test)]
pub fn parse_text(text: &str) -> BTreeMap<String, Value> {
    text.lines()
        .filter_map(|line| line.split_once(" = "))
        .map(|(k, v)| (k.to_string(), serde_json::from_str(v).unwrap_or(Value::Null)))
        .collect()
}

#[cfg(test)]
pub fn leaves(v: &Value) -> BTreeMap<String, Value> {
    let mut text = String::new();
    flatten("", v, &mut text);
    parse_text(&text)
}
