use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{input_files, Result};

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// What a run read and produced. Two runs with equal `command`, `inputs`,
/// `seed` and `version` have equal `result_digest`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub seed: u64,
    pub version: String,
    pub wall_time_ms: u128,
    pub result_digest: String,
}

impl RunManifest {
    pub fn new(command: Vec<String>, inputs: &[&Path], seed: u64, report: &str, wall_time_ms: u128) -> Result<Self> {
        let mut digests = Vec::new();
        for p in inputs {
            for f in input_files(p)? {
                let bytes = std::fs::read(&f).map_err(|e| crate::CliError::Usage(format!("cannot read {}: {e}", f.display())))?;
                digests.push(InputDigest { path: f.display().to_string(), sha256: digest(&bytes) });
            }
        }
        Ok(RunManifest {
            command,
            inputs: digests,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_ms,
            result_digest: digest(report.as_bytes()),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }
}
