//! Command reports and their text and JSON renderings.

use std::fmt::Write as _;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Indeterminate,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "OK",
            Status::Indeterminate => "INDETERMINATE",
            Status::Error => "ERROR",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Indeterminate => 2,
            Status::Error => 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), inputs: Map::new(), results: Map::new(), status: Status::Ok }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) {
        self.inputs.insert(key.to_string(), v.into());
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.to_string(), v.into());
    }

    /// Lowers the status; ERROR beats INDETERMINATE beats OK.
    pub fn degrade(&mut self, s: Status) {
        let rank = |s: Status| match s {
            Status::Ok => 0,
            Status::Indeterminate => 1,
            Status::Error => 2,
        };
        if rank(s) > rank(self.status) {
            self.status = s;
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("inputs".into(), Value::Object(self.inputs.clone()));
        m.insert("results".into(), Value::Object(self.results.clone()));
        m.insert("status".into(), Value::String(self.status.as_str().into()));
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        writeln!(out, "status: {}", self.status.as_str()).unwrap();
        out.push_str("inputs:\n");
        write_map(&mut out, &self.inputs, 1);
        out.push_str("results:\n");
        write_map(&mut out, &self.results, 1);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("null".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => write_map(out, m, depth),
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        write_value(out, x, depth + 1);
                    }
                }
            }
        }
        _ => writeln!(out, "{pad}{}", scalar(v).unwrap()).unwrap(),
    }
}

fn write_map(out: &mut String, m: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in m {
        match scalar(v) {
            Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
            None => {
                writeln!(out, "{pad}{k}:").unwrap();
                write_value(out, v, depth + 1);
            }
        }
    }
}
