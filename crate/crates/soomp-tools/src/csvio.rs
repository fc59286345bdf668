//! Plain-text sample and peak-list files: one value per line.

use std::fs;
use std::path::Path;

use crate::error::{Result, ToolError};

pub fn read_samples(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
    let mut samples = Vec::new();
    for (number, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let value: f64 = line.parse().map_err(|_| {
            ToolError::Validation(format!(
                "{}: line {}: expected one real number, got {line:?}",
                path.display(),
                number + 1
            ))
        })?;
        samples.push(value);
    }
    Ok(samples)
}

pub fn write_samples(path: &Path, samples: &[f64]) -> Result<()> {
    let mut text = String::with_capacity(samples.len() * 12);
    for v in samples {
        text.push_str(&format!("{v}\n"));
    }
    fs::write(path, text).map_err(|e| ToolError::io(path, e))
}

pub fn read_peaks(path: &Path) -> Result<Vec<usize>> {
    let text = fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
    let mut peaks = Vec::new();
    for (number, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let index: usize = line.parse().map_err(|_| {
            ToolError::Validation(format!(
                "{}: line {}: expected one sample index, got {line:?}",
                path.display(),
                number + 1
            ))
        })?;
        peaks.push(index);
    }
    Ok(peaks)
}
