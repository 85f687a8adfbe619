//! Report assembly and deterministic serialization. All floats are written
//! with 17 significant digits so reports are byte-identical across runs and
//! thread counts; object keys serialize in sorted order.

use std::fmt::Write as _;

use hrns_core::LatticePoint;
use num_complex::Complex64;
use serde_json::{Map, Value};

pub const EXIT_NOT_ISOMORPHIC: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_SUPPORT: i32 = 4;
pub const EXIT_DATA: i32 = 5;

/// Terminal failure of a subcommand: an exit code plus a one-line message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub diagnostics: Vec<String>,
    pub exit_code: i32,
    /// Pre-rendered human output; printed verbatim unless `--json` is set.
    pub human: String,
}

impl Report {
    pub fn failure(command: &'static str, inputs: Value, failure: Failure) -> Self {
        let mut results = Map::new();
        results.insert("error".into(), Value::String(failure.message.clone()));
        Report {
            command,
            inputs,
            results: Value::Object(results),
            diagnostics: vec![failure.message.clone()],
            exit_code: failure.code,
            human: format!("error: {}\n", failure.message),
        }
    }

    /// Prints the report and exits with its code.
    pub fn emit(self, json: bool) -> ! {
        if json {
            let mut root = Map::new();
            root.insert("command".into(), Value::String(self.command.into()));
            root.insert("inputs".into(), self.inputs);
            root.insert("results".into(), self.results);
            root.insert(
                "diagnostics".into(),
                Value::Array(self.diagnostics.into_iter().map(Value::String).collect()),
            );
            root.insert("exit_code".into(), Value::from(self.exit_code));
            let mut out = String::new();
            write_value(&Value::Object(root), &mut out);
            out.push('\n');
            print!("{out}");
        } else {
            print!("{}", self.human);
        }
        std::process::exit(self.exit_code)
    }
}

/// Serializes a JSON value with floats at 17 significant digits.
pub fn write_value(value: &Value, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        Value::Number(n) => {
            if n.is_f64() {
                let _ = write!(out, "{:.16e}", n.as_f64().unwrap());
            } else {
                let _ = write!(out, "{n}");
            }
        }
        Value::String(s) => {
            out.push_str(&serde_json::to_string(s).expect("strings always serialize"));
        }
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(key).expect("strings always serialize"));
                out.push(':');
                write_value(item, out);
            }
            out.push('}');
        }
    }
}

pub fn float_value(f: f64) -> Value {
    Value::Number(serde_json::Number::from_f64(f).expect("report floats are finite"))
}

pub fn complex_value(c: Complex64) -> Value {
    Value::Array(vec![float_value(c.re), float_value(c.im)])
}

pub fn point_value(p: &LatticePoint) -> Value {
    Value::Array(p.coords().iter().map(|&x| Value::from(x)).collect())
}

pub fn points_value<'a>(ps: impl IntoIterator<Item = &'a LatticePoint>) -> Value {
    Value::Array(ps.into_iter().map(point_value).collect())
}

/// Human-readable complex number with fixed precision: `a+bi`.
pub fn fmt_complex(c: Complex64) -> String {
    format!("{:.12}{:+.12}i", c.re, c.im)
}

/// Human-readable generator list: `(2), (3)`.
pub fn fmt_points<'a>(ps: impl IntoIterator<Item = &'a LatticePoint>) -> String {
    ps.into_iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
