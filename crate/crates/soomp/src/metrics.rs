//! Distortion and size metrics.

use alloc::vec::Vec;

use crate::error::Error;
use crate::math;
use crate::vecmath;
use crate::Result;

/// Percentage root-mean-square difference of `approx` against `original`,
/// normalized by the mean-removed reference energy:
/// `100 * ||f - f^a|| / ||f - mean(f)||`.
pub fn prdn(original: &[f64], approx: &[f64]) -> Result<f64> {
    if original.is_empty() {
        return Err(Error::EmptySignal);
    }
    if original.len() != approx.len() {
        return Err(Error::SignalLengthMismatch { expected: original.len(), got: approx.len() });
    }
    let mean = vecmath::mean(original);
    let mut num = 0.0;
    let mut den = 0.0;
    for (&f, &a) in original.iter().zip(approx) {
        num += (f - a) * (f - a);
        den += (f - mean) * (f - mean);
    }
    let den = math::sqrt(den);
    if den <= 1e-12 * (1.0 + vecmath::norm(original)) {
        return Err(Error::DegenerateReference);
    }
    Ok(100.0 * math::sqrt(num) / den)
}

/// Per-row distortion of an approximated beat matrix, each row normalized by
/// its own mean-removed energy.
pub fn prdn_per_beat(original: &[Vec<f64>], approx: &[Vec<f64>]) -> Result<Vec<f64>> {
    if original.len() != approx.len() {
        return Err(Error::SignalLengthMismatch { expected: original.len(), got: approx.len() });
    }
    original
        .iter()
        .zip(approx)
        .map(|(f, a)| prdn(f, a))
        .collect()
}

/// Compression ratio against a 2-bytes-per-sample raw size.
pub fn compression_ratio(sample_count: usize, compressed_bytes: usize) -> f64 {
    (2 * sample_count) as f64 / compressed_bytes as f64
}

/// `10 * log10(reference_energy / error_energy)` in decibels.
pub fn snr_db(reference_energy: f64, error_energy: f64) -> f64 {
    10.0 * math::log10(reference_energy / error_energy)
}
