use std::fmt::Write as _;
use std::io::IsTerminal;

use serde::Serialize;
use serde_json::Value;

use ocwf::soundness::Status;

/// Outcome of one invocation; the exit code is derived from it alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Ok,
    Sound,
    Unsound,
    Unknown,
    Related,
    NotRelated,
    Invalid,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok | Outcome::Sound | Outcome::Related => 0,
            Outcome::Unsound | Outcome::NotRelated | Outcome::Invalid => 1,
            Outcome::Error => 2,
            Outcome::Unknown => 3,
        }
    }

    fn word(self) -> &'static str {
        match self {
            Outcome::Ok => "ok",
            Outcome::Sound => "sound",
            Outcome::Unsound => "unsound",
            Outcome::Unknown => "unknown",
            Outcome::Related => "related",
            Outcome::NotRelated => "not related",
            Outcome::Invalid => "invalid",
            Outcome::Error => "error",
        }
    }
}

impl From<Status> for Outcome {
    fn from(s: Status) -> Self {
        match s {
            Status::Sound => Outcome::Sound,
            Status::Unsound => Outcome::Unsound,
            Status::Unknown => Outcome::Unknown,
        }
    }
}

/// The machine-readable report printed with `--json`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub args: Vec<String>,
    pub outcome: Outcome,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Value>,
    pub result: Value,
    pub elapsed_ms: f64,
}

pub fn use_color() -> bool {
    match std::env::var("OCWF_COLOR").as_deref() {
        Ok("1") => true,
        Ok(_) => false,
        Err(_) => std::io::stdout().is_terminal(),
    }
}

/// Status word for human output, in color when enabled.
pub fn badge(o: Outcome, color: bool) -> String {
    if !color {
        return o.word().to_uppercase();
    }
    let code = match o.exit_code() {
        0 => "32",
        1 | 2 => "31",
        _ => "33",
    };
    format!("\x1b[1;{code}m{}\x1b[0m", o.word().to_uppercase())
}

/// Indented `key: value` lines for the scalar and small fields of `v`.
pub fn render_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        render_value(out, x, indent + 2);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        for i in items {
                            writeln!(out, "{pad}  -").unwrap();
                            render_value(out, i, indent + 4);
                        }
                    }
                    _ => writeln!(out, "{pad}{k}: {}", scalar(x)).unwrap(),
                }
            }
        }
        _ => writeln!(out, "{pad}{}", scalar(v)).unwrap(),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.is_empty() => "-".into(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(", "),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
