use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use oplab_core::Matrix;
use serde::Serialize;

/// Read a matrix fixture: `{rows, cols, data: [[re, im], ...]}` row-major.
/// Dimension, length and finiteness violations surface with the offending
/// field in the message.
pub fn read_matrix(path: &Path) -> Result<Matrix> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read matrix file {}", path.display()))?;
    let matrix: Matrix = serde_json::from_str(&text)
        .with_context(|| format!("malformed matrix file {}", path.display()))?;
    Ok(matrix)
}

/// Pretty JSON to stdout, or to `--out` when given.
pub fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let json = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => {
            fs::write(path, &json).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => println!("{json}"),
    }
    Ok(())
}
