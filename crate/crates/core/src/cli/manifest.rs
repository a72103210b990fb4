use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Provenance record written next to `--out` files.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub input_hash: String,
    pub config: serde_json::Value,
    pub tool_version: String,
    pub timestamp_unix: u64,
    /// SHA-256 of the exact output bytes.
    pub result_hash: String,
    pub result_summary: serde_json::Value,
}

impl RunManifest {
    pub fn new(
        command: &str,
        input_hash: String,
        config: serde_json::Value,
        output: &[u8],
        result_summary: serde_json::Value,
    ) -> Self {
        let timestamp_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        RunManifest {
            command: command.to_string(),
            input_hash,
            config,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix,
            result_hash: sha256_hex(output),
            result_summary,
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut bytes = serde_json::to_vec_pretty(self)?;
        bytes.push(b'\n');
        std::fs::write(path, bytes)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}
