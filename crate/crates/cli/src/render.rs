//! Output records shared by the human and JSON renderers.

use std::fmt::Write as _;

use realize_core::syntax::{FiniteType, Name};
use realize_core::{Error, ErrorClass};
use serde_json::{json, Map, Value};

/// Ordered fields of one result, each with a JSON value and a human
/// rendering.
#[derive(Default)]
pub struct Fields(Vec<(&'static str, Value, String)>);

impl Fields {
    pub fn new() -> Fields {
        Fields::default()
    }

    pub fn put(mut self, key: &'static str, json: Value, human: impl Into<String>) -> Fields {
        self.0.push((key, json, human.into()));
        self
    }

    pub fn text(self, key: &'static str, s: impl ToString) -> Fields {
        let s = s.to_string();
        self.put(key, Value::String(s.clone()), s)
    }

    pub fn flag(self, key: &'static str, b: bool) -> Fields {
        self.put(key, Value::Bool(b), b.to_string())
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .0
            .iter()
            .map(|(k, v, _)| (k.to_string(), v.clone()))
            .collect();
        Value::Object(map)
    }

    pub fn write_human(&self, out: &mut String) {
        for (key, _, human) in &self.0 {
            if human.contains('\n') {
                let _ = writeln!(out, "  {key}:");
                for line in human.lines() {
                    let _ = writeln!(out, "    {line}");
                }
            } else {
                let _ = writeln!(out, "  {key}: {human}");
            }
        }
    }
}

pub fn tuple_json(vars: &[(Name, FiniteType)]) -> Value {
    Value::Array(
        vars.iter()
            .map(|(n, t)| json!({ "name": n, "type": t.to_string() }))
            .collect(),
    )
}

pub fn tuple_human(vars: &[(Name, FiniteType)]) -> String {
    let parts: Vec<String> = vars.iter().map(|(n, t)| format!("{n} : {t}")).collect();
    format!("[{}]", parts.join(", "))
}

pub fn types_json(types: &[FiniteType]) -> Value {
    Value::Array(types.iter().map(|t| Value::String(t.to_string())).collect())
}

pub fn types_human(types: &[FiniteType]) -> String {
    let parts: Vec<String> = types.iter().map(|t| t.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// A positioned error message.
#[derive(Clone, Debug)]
pub struct Diagnostic {
    pub origin: String,
    pub line: usize,
    pub column: usize,
    pub kind: &'static str,
    pub message: String,
    pub class: ErrorClass,
}

impl Diagnostic {
    /// Uses the error's own position when it has one, else `line:column`.
    pub fn from_error(origin: &str, line: usize, column: usize, e: &Error) -> Diagnostic {
        let (line, column, message) = match e {
            Error::Syntax {
                line,
                column,
                message,
            } => (*line, *column, message.clone()),
            Error::Located {
                line,
                column,
                inner,
            } => (*line, *column, inner.unlocated().to_string()),
            other => (line, column, other.to_string()),
        };
        Diagnostic {
            origin: origin.to_string(),
            line,
            column,
            kind: e.kind(),
            message,
            class: e.class(),
        }
    }

    pub fn usage(origin: &str, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            origin: origin.to_string(),
            line: 0,
            column: 0,
            kind: "Usage",
            message: message.into(),
            class: ErrorClass::Input,
        }
    }

    pub fn exit_code(&self) -> u8 {
        class_code(self.class)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "message": self.message,
            "origin": self.origin,
            "line": self.line,
            "column": self.column,
        })
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            write!(f, "{}: error[{}]: {}", self.origin, self.kind, self.message)
        } else {
            write!(
                f,
                "{}:{}:{}: error[{}]: {}",
                self.origin, self.line, self.column, self.kind, self.message
            )
        }
    }
}

pub fn class_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Domain => 1,
        ErrorClass::Input => 2,
        ErrorClass::Budget => 3,
    }
}
