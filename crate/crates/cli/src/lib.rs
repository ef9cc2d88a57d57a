//! Command-line front end: one function per verb, each returning its report
//! as text so the binary and the tests share the same code.

pub mod commands;
pub mod manifest;
pub mod verify;

use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        })*
    };
}

domain_from!(
    snarklab_core::Error,
    snarklab_cutlab::Error,
    snarklab_reduce::Error,
    snarklab_discharge::Error,
    snarklab_structure::Error
);

pub type Result<T> = std::result::Result<T, CliError>;

/// A verb's output. `ok` is false when the run finished but found a failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub ok: bool,
}

impl Report {
    pub fn ok(text: String) -> Self {
        Report { text, ok: true }
    }
}

/// Reads an input file; failing to read it is a usage error.
pub fn read_input(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Files below `path`, sorted, or `path` itself when it is a file.
pub fn input_files(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let rd = std::fs::read_dir(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for entry in rd.flatten() {
        let p = entry.path();
        if p.is_dir() {
            out.extend(input_files(&p)?);
        } else {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}
