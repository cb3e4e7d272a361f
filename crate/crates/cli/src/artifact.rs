//! Run artifacts: enough to re-run a command and check its results.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::Command;
use crate::commands::{compute, Output};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunArtifact {
    pub tool_version: String,
    /// The command line as invoked.
    pub command: Vec<String>,
    /// Parsed configuration, including grid, seeds and criterion.
    pub config: Command,
    pub results: Value,
    /// RFC 3339, UTC.
    pub timestamp: String,
}

impl RunArtifact {
    pub fn new(argv: Vec<String>, config: Command, results: &Output) -> CliResult<Self> {
        Ok(Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: argv,
            config,
            results: to_value(results)?,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        })
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        let text = serde_json::to_string_pretty(self).expect("artifact serializes");
        crate::commands::write_file(path, &(text + "\n"))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: not a run artifact: {e}", path.display())))
    }

    /// Re-runs the recorded configuration; true when the results match exactly.
    pub fn reproduces(&self) -> CliResult<bool> {
        let again = compute(&self.config)?;
        Ok(to_value(&again)? == self.results)
    }
}

pub fn to_value(out: &Output) -> CliResult<Value> {
    serde_json::to_value(out).map_err(|e| CliError::Usage(format!("serializing results: {e}")))
}
