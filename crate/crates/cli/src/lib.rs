//! Batch front end for `relcone-core`: every verb reads JSON documents,
//! calls into the library and writes one JSON report.
//!
//! Exit codes: `0` success, `2` a computed negative verdict (not integral,
//! nontrivial class, LES not exact, ...), `1` anything that could not be
//! computed (bad input, unreadable file, unknown verb).

pub mod input;
pub mod report;
pub mod verbs;

use std::path::PathBuf;

use clap::Parser;
use relcone_core::CoeffRing;
use serde_json::{json, Value};
use thiserror::Error;

pub use verbs::{Registry, Verb};

#[derive(Parser, Debug, Clone, Default)]
#[command(name = "relcone", version, about = "Exact relative (co)homology of maps")]
pub struct Invocation {
    /// One of the registered verbs (`relcone help` lists them).
    pub verb: String,
    /// Input documents, or verb arguments such as `list` for `fixtures`.
    pub inputs: Vec<String>,
    /// Coefficient ring: Z, Q, Zmod:n or U1.
    #[arg(long)]
    pub ring: Option<String>,
    /// Restrict the report to one degree.
    #[arg(long, allow_hyphen_values = true)]
    pub degree: Option<i64>,
    /// Write the report (or emitted fixtures) here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Inline integer matrix for `snf`, e.g. "[[2,4],[6,8]]".
    #[arg(long)]
    pub matrix: Option<String>,
    /// `cone`: also build the cochain cone of the dual map and pair it with the chain cone.
    #[arg(long)]
    pub dual: bool,
    /// `cone-space`: build the mapping cylinder instead of the cone.
    #[arg(long)]
    pub cylinder: bool,
    /// Include representative generators in homology reports.
    #[arg(long)]
    pub generators: bool,
    /// `cech`: multiply the input cochain by this ring element.
    #[arg(long, allow_hyphen_values = true)]
    pub scale: Option<String>,
}

impl Invocation {
    pub fn new(verb: &str, inputs: &[&str]) -> Self {
        Invocation { verb: verb.into(), inputs: inputs.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn ring(&self) -> Result<Option<CoeffRing>, CliError> {
        self.ring.as_deref().map(|r| r.parse().map_err(CliError::from)).transpose()
    }

    /// The requested ring, `Z` when none was given.
    pub fn ring_or_int(&self) -> Result<CoeffRing, CliError> {
        Ok(self.ring()?.unwrap_or(CoeffRing::Int))
    }
}

/// A finished computation: the report and whether its verdict was positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

impl Outcome {
    pub fn ok(report: Value) -> Self {
        Outcome { report, ok: true }
    }

    pub fn verdict(report: Value, ok: bool) -> Self {
        Outcome { report, ok }
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            2
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Input { path: String, source: relcone_core::Error },
    #[error(transparent)]
    Library(#[from] relcone_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn to_json(&self) -> Value {
        let (kind, extra) = match self {
            CliError::Parse { path, line, column, .. } => ("parse", json!({"path": path, "line": line, "column": column})),
            CliError::Usage(_) => ("usage", json!({})),
            CliError::Input { path, .. } => ("input", json!({"path": path})),
            CliError::Library(_) => ("input", json!({})),
            CliError::Io { path, .. } => ("io", json!({"path": path})),
        };
        let mut e = json!({"kind": kind, "message": self.to_string()});
        if let (Some(e), Some(extra)) = (e.as_object_mut(), extra.as_object()) {
            e.extend(extra.clone());
        }
        json!({ "error": e })
    }
}

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn run(inv: &Invocation) -> Result<Outcome, CliError> {
    let registry = Registry::standard();
    match registry.get(&inv.verb) {
        Some(verb) => verb.run(inv),
        None if inv.verb == "help" => Ok(Outcome::ok(registry.to_json())),
        None => Err(CliError::Usage(format!("unknown verb {:?}; known verbs: {}", inv.verb, registry.names().join(", ")))),
    }
}

/// Result of a full run: exit code, text for standard output and, on
/// failure to compute, the message for standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub error: Option<String>,
}

/// Runs an invocation end to end. With `--out` the report goes to that file
/// and nothing is printed.
pub fn execute(inv: &Invocation) -> Execution {
    let result = run(inv).and_then(|outcome| {
        let text = render(&outcome.report);
        match &inv.out {
            Some(path) if inv.verb != "fixtures" => {
                std::fs::write(path, &text).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
                Ok((outcome.exit_code(), String::new()))
            }
            _ => Ok((outcome.exit_code(), text)),
        }
    });
    match result {
        Ok((code, stdout)) => Execution { code, stdout, error: None },
        Err(e) => Execution { code: 1, stdout: render(&e.to_json()), error: Some(e.to_string()) },
    }
}

/// Bounds the global rayon pool by `RELCONE_THREADS` when set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("RELCONE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("RELCONE_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outcome_codes() {
        assert_eq!(Outcome::ok(json!({})).exit_code(), 0);
        assert_eq!(Outcome::verdict(json!({}), false).exit_code(), 2);
    }

    #[test]
    fn error_reports() {
        let e = CliError::Parse { path: "a.json".into(), line: 3, column: 7, message: "bad".into() };
        assert_eq!(e.to_json()["error"]["line"], json!(3));
        assert_eq!(e.to_json()["error"]["kind"], json!("parse"));
        let run = execute(&Invocation::new("nope", &[]));
        assert_eq!(run.code, 1);
        assert!(run.error.unwrap().contains("unknown verb"));
    }

    #[test]
    fn rendering_sorts_keys() {
        assert_eq!(render(&json!({"b": 1, "a": [1, 2]})), "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": 1\n}\n");
    }

    #[test]
    fn rings_parse() {
        let mut inv = Invocation::new("homology", &[]);
        assert_eq!(inv.ring_or_int().unwrap(), CoeffRing::Int);
        inv.ring = Some("Zmod:4".into());
        assert_eq!(inv.ring_or_int().unwrap(), CoeffRing::IntMod(4));
        inv.ring = Some("Zmod:x".into());
        assert!(inv.ring().is_err());
    }
}
