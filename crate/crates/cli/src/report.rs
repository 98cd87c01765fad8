use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use simal_core::{ErrorKind, Result, SimalError};

#[derive(Clone, Debug, Serialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolationRecord {
    pub property: String,
    pub witness: String,
}

/// Everything a command produced, before timing is attached.
#[derive(Debug, Default)]
pub struct Outcome {
    pub inputs: Vec<InputRecord>,
    pub results: Value,
    pub violations: Vec<ViolationRecord>,
    /// Set when a violation was caused by an exceeded budget.
    pub budget_exceeded: bool,
}

impl Outcome {
    pub fn violation(&mut self, property: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(ViolationRecord {
            property: property.into(),
            witness: witness.into(),
        });
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn hash_input(path: &Path) -> Result<InputRecord> {
    let bytes =
        std::fs::read(path).map_err(|e| SimalError::Io(format!("{}: {e}", path.display())))?;
    Ok(InputRecord {
        path: path.display().to_string(),
        sha256: sha256_hex(&bytes),
    })
}

pub fn exit_code_for(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Input => 1,
        ErrorKind::Property => 2,
        ErrorKind::Budget => 3,
    }
}

/// The report emitted by every command. `determinism_hash` covers command,
/// parameters, inputs, results and violations; the timing sidecar is
/// excluded.
pub fn assemble(command: &str, parameters: Value, outcome: &Outcome, elapsed_ms: f64) -> Value {
    let body = json!({
        "command": command,
        "parameters": parameters,
        "inputs": outcome.inputs,
        "results": outcome.results,
        "violations": outcome.violations,
    });
    let hash = sha256_hex(
        serde_json::to_string(&body)
            .expect("report serializes")
            .as_bytes(),
    );
    let mut report = body;
    report["determinism_hash"] = json!(hash);
    report["sidecar"] = json!({ "elapsed_ms": elapsed_ms });
    report
}

/// Report for a command that failed with an error before producing results.
pub fn error_outcome(inputs: Vec<InputRecord>, e: &SimalError) -> Outcome {
    let mut o = Outcome {
        inputs,
        results: json!({ "error": e.to_string() }),
        ..Outcome::default()
    };
    if e.kind() != ErrorKind::Input {
        o.violation(
            match e.kind() {
                ErrorKind::Budget => "budget",
                _ => "property",
            },
            e.to_string(),
        );
        o.budget_exceeded = e.kind() == ErrorKind::Budget;
    }
    o
}
