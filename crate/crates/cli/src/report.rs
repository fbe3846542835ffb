//! One report type for both output modes, so text and JSON carry the same
//! values.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

pub struct Report {
    summary: String,
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new(summary: impl Into<String>) -> Report {
        Report { summary: summary.into(), fields: Vec::new() }
    }

    /// Every top-level field of `value` becomes a report field.
    pub fn from_serialize<T: Serialize>(summary: impl Into<String>, value: &T) -> Report {
        let mut rep = Report::new(summary);
        match serde_json::to_value(value).expect("serializable") {
            Value::Object(map) => rep.fields.extend(map),
            other => rep.fields.push(("value".into(), other)),
        }
        rep
    }

    pub fn set_summary(&mut self, s: impl Into<String>) {
        self.summary = s.into();
    }

    pub fn field<T: Serialize>(&mut self, key: &str, value: T) {
        let v = serde_json::to_value(value).expect("serializable");
        match self.fields.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = v,
            None => self.fields.push((key.to_string(), v)),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("summary".into(), Value::String(self.summary.clone()));
        for (k, v) in &self.fields {
            map.insert(k.clone(), v.clone());
        }
        Value::Object(map)
    }

    pub fn to_text(&self) -> String {
        let mut out = self.summary.clone();
        for (k, v) in &self.fields {
            let rendered = match v {
                Value::String(s) => s.clone(),
                Value::Null => "none".to_string(),
                other => other.to_string(),
            };
            out.push_str(&format!("\n{k}: {rendered}"));
        }
        out
    }

    /// Writes to stdout; a closed pipe is not an error.
    pub fn print(&self, json: bool) {
        let body = if json {
            serde_json::to_string_pretty(&self.to_json()).expect("valid JSON")
        } else {
            self.to_text()
        };
        let _ = writeln!(std::io::stdout().lock(), "{body}");
    }
}
