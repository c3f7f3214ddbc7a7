use std::fmt::Write as _;

use respgames_core::{Coalition, Rational};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad files, flags or caps; exit code 1.
    #[error("{0}")]
    Input(String),
    /// A broken invariant; exit code 2.
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": self.to_string(), "internal": matches!(self, CliError::Internal(_)) })
    }
}

impl From<respgames_core::Error> for CliError {
    fn from(e: respgames_core::Error) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

/// A finished command: the report and the exit code to use. Some reports
/// are a domain verdict of invalid input (code 1) rather than an error.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

impl Outcome {
    pub fn ok(report: Value) -> Self {
        Outcome { report, code: 0 }
    }

    pub fn invalid(report: Value) -> Self {
        Outcome { report, code: 1 }
    }
}

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn coalitions(v: &[Coalition]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

/// `key  value` lines, one per field. Scalar lists are joined on one line;
/// objects and lists of objects are nested below their key, indented.
pub fn table(v: &Value) -> String {
    let mut out = String::new();
    write_table(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(items.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", "))
        }
        Value::Array(_) | Value::Object(_) => None,
        other => Some(other.to_string()),
    }
}

fn write_table(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, x) in map {
                match scalar(x) {
                    Some(shown) => {
                        let _ = writeln!(out, "{pad}{k:width$}  {shown}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}");
                        write_table(out, x, indent + 2);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                if i > 0 && x.is_object() {
                    let _ = writeln!(out);
                }
                match scalar(x) {
                    Some(shown) => {
                        let _ = writeln!(out, "{pad}{shown}");
                    }
                    None => write_table(out, x, indent),
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
