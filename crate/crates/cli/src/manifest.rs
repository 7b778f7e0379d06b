use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Serialize, Debug)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Provenance embedded in every report.
#[derive(Serialize, Debug)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub config: Value,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_seconds: Option<f64>,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    manifest: &'a RunManifest,
    report: &'a T,
}

/// Collects inputs and timing for one command.
pub struct Run {
    manifest: RunManifest,
    started: Instant,
}

impl Run {
    pub fn new(command: &str) -> Self {
        Run {
            manifest: RunManifest {
                command: command.to_owned(),
                inputs: Vec::new(),
                config: Value::Null,
                version: env!("CARGO_PKG_VERSION"),
                wall_clock_seconds: None,
            },
            started: Instant::now(),
        }
    }

    /// Reads an input file and records its digest.
    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let digest = Sha256::digest(&bytes);
        self.manifest.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        });
        String::from_utf8(bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn config(&mut self, config: Value) {
        self.manifest.config = config;
    }

    /// Wraps `report` with the manifest and writes it as JSON.
    pub fn emit<T: Serialize>(mut self, report: &T, out: &crate::args::Output) -> Result<(), CliError> {
        if out.record_duration {
            self.manifest.wall_clock_seconds = Some(self.started.elapsed().as_secs_f64());
        }
        let text = heis_core::io::to_json_pretty(&Envelope { manifest: &self.manifest, report });
        write_text(&text, out.out.as_deref())
    }
}

pub fn write_text(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Input(format!("stdout: {e}")))
        }
    }
}
