//! MIT-BIH "format 212" record reader.
//!
//! A record is a `.dat` file of packed 12-bit samples plus a `.hea` text
//! header next to it. Format 212 packs two samples into three bytes: the
//! first sample's low byte, then a shared byte whose low nibble holds the
//! first sample's high bits and whose high nibble holds the second
//! sample's, then the second sample's low byte. Both are two's complement.
//! With two signals the pair is one frame (channel 0, channel 1); with one
//! signal both samples continue the same channel.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Result, ToolError};

#[derive(Debug, Clone)]
pub struct MitBihRecord {
    pub samples: Vec<f64>,
    pub sample_rate: f64,
    /// ADC units per physical unit for the selected channel.
    pub gain: f64,
    pub channels: usize,
}

/// Reads one channel of a format-212 record in raw ADC units.
pub fn read_record(dat_path: &Path, channel: usize) -> Result<MitBihRecord> {
    let header = read_header(&dat_path.with_extension("hea"))?;
    if channel >= header.signals.len() {
        return Err(ToolError::Validation(format!(
            "{}: channel {channel} requested but the header declares {} signal(s)",
            dat_path.display(),
            header.signals.len()
        )));
    }
    let signal = &header.signals[channel];
    if signal.format != 212 {
        return Err(ToolError::Validation(format!(
            "{}: signal {channel} is stored in format {}, only format 212 is supported",
            dat_path.display(),
            signal.format
        )));
    }

    let bytes = fs::read(dat_path).map_err(|e| ToolError::io(dat_path, e))?;
    let decoded = unpack_212(&bytes);
    let stride = header.signals.len();
    let mut samples: Vec<f64> = decoded
        .iter()
        .skip(channel)
        .step_by(stride)
        .map(|&v| v as f64)
        .collect();
    if header.samples_per_signal > 0 && samples.len() > header.samples_per_signal {
        samples.truncate(header.samples_per_signal);
    }
    if samples.is_empty() {
        return Err(ToolError::Validation(format!(
            "{}: no samples decoded",
            dat_path.display()
        )));
    }
    Ok(MitBihRecord {
        samples,
        sample_rate: header.sample_rate,
        gain: signal.gain,
        channels: stride,
    })
}

/// Record ids like `100` resolve to `<dir>/100.dat`.
pub fn record_path(dir: &Path, id: &str) -> PathBuf {
    dir.join(format!("{id}.dat"))
}

fn unpack_212(bytes: &[u8]) -> Vec<i32> {
    let mut out = Vec::with_capacity(bytes.len() / 3 * 2);
    for triple in bytes.chunks_exact(3) {
        let first = ((triple[1] as i32 & 0x0F) << 8) | triple[0] as i32;
        let second = ((triple[1] as i32 & 0xF0) << 4) | triple[2] as i32;
        out.push(sign_extend_12(first));
        out.push(sign_extend_12(second));
    }
    out
}

fn sign_extend_12(v: i32) -> i32 {
    if v >= 0x800 {
        v - 0x1000
    } else {
        v
    }
}

struct HeaderSignal {
    format: u32,
    gain: f64,
}

struct Header {
    sample_rate: f64,
    samples_per_signal: usize,
    signals: Vec<HeaderSignal>,
}

fn read_header(path: &Path) -> Result<Header> {
    let text = fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let first = lines
        .next()
        .ok_or_else(|| bad_header(path, "empty header"))?;
    let fields: Vec<&str> = first.split_whitespace().collect();
    if fields.len() < 2 {
        return Err(bad_header(path, "record line needs a name and a signal count"));
    }
    let signal_count: usize = fields[1]
        .parse()
        .map_err(|_| bad_header(path, "unreadable signal count"))?;
    let sample_rate = match fields.get(2) {
        Some(token) => leading_number(token)
            .ok_or_else(|| bad_header(path, "unreadable sampling frequency"))?,
        None => 250.0,
    };
    let samples_per_signal = fields
        .get(3)
        .and_then(|t| t.parse().ok())
        .unwrap_or(0usize);

    let mut signals = Vec::with_capacity(signal_count);
    for line in lines.take(signal_count) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 2 {
            return Err(bad_header(path, "signal line needs a file name and a format"));
        }
        let format = leading_number(fields[1])
            .ok_or_else(|| bad_header(path, "unreadable signal format"))? as u32;
        let gain = fields
            .get(2)
            .and_then(|t| leading_number(t))
            .filter(|&g| g > 0.0)
            .unwrap_or(200.0);
        signals.push(HeaderSignal { format, gain });
    }
    if signals.len() != signal_count {
        return Err(bad_header(path, "fewer signal lines than declared"));
    }
    Ok(Header { sample_rate, samples_per_signal, signals })
}

/// Parses the numeric prefix of tokens like `360`, `200(1024)/mV`, `212x4`.
fn leading_number(token: &str) -> Option<f64> {
    let end = token
        .find(|c: char| !c.is_ascii_digit() && c != '.' && c != '-' && c != '+')
        .unwrap_or(token.len());
    token[..end].parse().ok()
}

fn bad_header(path: &Path, what: &str) -> ToolError {
    ToolError::Validation(format!("{}: {what}", path.display()))
}
