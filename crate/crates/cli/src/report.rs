//! Deterministic report assembly: an ordered list of key/value findings
//! plus optional counterexample records, rendered as text or as one flat
//! JSON object with keys in report order.

use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub enum Value {
    Str(String),
    Int(u64),
    Bool(bool),
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Str(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Str(v)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as u64)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    command: &'static str,
    entries: Vec<(String, Value)>,
    witnesses: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str) -> Report {
        Report {
            command,
            entries: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.entries.push((key.into(), value.into()));
    }

    pub fn witness(&mut self, record: impl Into<String>) {
        self.witnesses.push(record.into());
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for (key, value) in &self.entries {
            let shown = match value {
                Value::Str(s) => s.clone(),
                Value::Int(i) => i.to_string(),
                Value::Bool(true) => "yes".to_string(),
                Value::Bool(false) => "no".to_string(),
            };
            writeln!(out, "{key}: {shown}").unwrap();
        }
        for record in &self.witnesses {
            writeln!(out, "witness: {record}").unwrap();
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut object = serde_json::Map::new();
        object.insert("command".into(), self.command.into());
        for (key, value) in &self.entries {
            let json = match value {
                Value::Str(s) => serde_json::Value::from(s.as_str()),
                Value::Int(i) => serde_json::Value::from(*i),
                Value::Bool(b) => serde_json::Value::from(*b),
            };
            object.insert(key.clone(), json);
        }
        if !self.witnesses.is_empty() {
            object.insert(
                "witnesses".into(),
                serde_json::Value::from(self.witnesses.clone()),
            );
        }
        let mut out = serde_json::Value::Object(object).to_string();
        out.push('\n');
        out
    }
}
