//! Provenance block embedded in every output, plus the output writers.
//! Field order is fixed by struct order, so identical runs serialize to
//! identical bytes.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

use crate::CliError;

#[derive(Serialize)]
pub struct NamedTolerance {
    pub name: &'static str,
    pub value: f64,
}

#[derive(Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub workers: usize,
    pub tolerances: Vec<NamedTolerance>,
    pub inputs: Vec<InputDigest>,
}

impl Meta {
    pub fn new(
        command: &'static str,
        seed: u64,
        workers: usize,
        tolerances: Vec<NamedTolerance>,
        inputs: Vec<InputDigest>,
    ) -> Self {
        Meta {
            tool: "liectl",
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed,
            workers,
            tolerances,
            inputs,
        }
    }

    /// The single `#` metadata line leading every CSV output.
    pub fn csv_line(&self) -> String {
        let tols = self
            .tolerances
            .iter()
            .map(|t| format!("{}={:e}", t.name, t.value))
            .collect::<Vec<_>>()
            .join(" ");
        let digests = self
            .inputs
            .iter()
            .map(|d| d.sha256.as_str())
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "{} {} command={} seed={} workers={} {} input_sha256={}",
            self.tool, self.version, self.command, self.seed, self.workers, tols, digests
        )
    }
}

/// File contents plus its digest, read in one pass so the digest always
/// matches what was parsed.
pub struct LoadedInput {
    pub text: String,
    pub digest: InputDigest,
}

pub fn read_input(path: &Path) -> Result<LoadedInput, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
    let sha256 = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| {
        CliError::Schema(format!("{} is not valid UTF-8", path.display()))
    })?;
    Ok(LoadedInput {
        text,
        digest: InputDigest {
            path: path.display().to_string(),
            sha256,
        },
    })
}

/// Serializes a report and writes it to the output path or stdout.
pub fn emit_json<T: Serialize>(out: Option<&PathBuf>, report: &T) -> Result<(), CliError> {
    let body = serde_json::to_string_pretty(report)
        .expect("report structs contain no non-serializable values");
    emit_text(out, &format!("{body}\n"))
}

pub fn emit_text(out: Option<&PathBuf>, body: &str) -> Result<(), CliError> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Schema(format!("cannot write {}: {e}", path.display()))),
        None => {
            // A consumer like `head` may close the pipe early; that is
            // its business, not an error.
            match std::io::stdout().lock().write_all(body.as_bytes()) {
                Ok(()) => Ok(()),
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(e) => Err(CliError::Schema(format!("cannot write to stdout: {e}"))),
            }
        }
    }
}
