use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Embedded in every output document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub seed: u64,
    pub tool_version: String,
    /// Unix seconds; `SOURCE_DATE_EPOCH` wins over the clock.
    pub timestamp: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: &str, seed: u64) -> Result<Self, CliError> {
        let timestamp = match std::env::var("SOURCE_DATE_EPOCH") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Validation(format!("SOURCE_DATE_EPOCH = {v:?} is not an integer")))?,
            Err(_) => SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        };
        Ok(Self {
            command: command.into(),
            inputs: Vec::new(),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            timestamp,
        })
    }

    /// Reads a file, records its digest and returns the text.
    pub fn read_input(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
        });
        String::from_utf8(bytes).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    pub fn csv_header(&self) -> String {
        let mut s = format!(
            "# command: {}\n# seed: {}\n# tool_version: {}\n# timestamp: {}\n",
            self.command, self.seed, self.tool_version, self.timestamp
        );
        for i in &self.inputs {
            s += &format!("# input: {} sha256={}\n", i.path, i.sha256);
        }
        s
    }
}
