//! Minimal PCM16 stereo WAV reading and writing.
//!
//! Integer samples are scaled to [-1, 1) on read; the scaling cancels out
//! of every relative metric the benchmark reports.

use std::fs;
use std::path::Path;

use crate::error::{Result, ToolError};

pub struct StereoWav {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    pub sample_rate: u32,
}

pub fn read_stereo(path: &Path) -> Result<StereoWav> {
    let bytes = fs::read(path).map_err(|e| ToolError::io(path, e))?;
    let bad = |what: &str| ToolError::Validation(format!("{}: {what}", path.display()));

    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(bad("not a RIFF/WAVE file"));
    }

    let mut format: Option<(u16, u16, u32, u16)> = None;
    let mut data: Option<&[u8]> = None;
    let mut at = 12;
    while at + 8 <= bytes.len() {
        let id = &bytes[at..at + 4];
        let size = u32::from_le_bytes(bytes[at + 4..at + 8].try_into().unwrap()) as usize;
        let body_end = at + 8 + size;
        if body_end > bytes.len() {
            return Err(bad("chunk runs past the end of the file"));
        }
        let body = &bytes[at + 8..body_end];
        match id {
            b"fmt " => {
                if body.len() < 16 {
                    return Err(bad("fmt chunk too short"));
                }
                format = Some((
                    u16::from_le_bytes(body[0..2].try_into().unwrap()),
                    u16::from_le_bytes(body[2..4].try_into().unwrap()),
                    u32::from_le_bytes(body[4..8].try_into().unwrap()),
                    u16::from_le_bytes(body[14..16].try_into().unwrap()),
                ));
            }
            b"data" => data = Some(body),
            _ => {}
        }
        at = body_end + body_end % 2;
    }

    let (audio_format, channels, sample_rate, bits) =
        format.ok_or_else(|| bad("missing fmt chunk"))?;
    let data = data.ok_or_else(|| bad("missing data chunk"))?;
    if audio_format != 1 || bits != 16 {
        return Err(bad("only 16-bit PCM is supported"));
    }
    if channels == 1 {
        return Err(bad("mono input; the benchmark needs a stereo pair"));
    }
    if channels != 2 {
        return Err(bad("expected exactly two channels"));
    }

    let frames = data.len() / 4;
    let mut left = Vec::with_capacity(frames);
    let mut right = Vec::with_capacity(frames);
    for frame in data.chunks_exact(4) {
        let l = i16::from_le_bytes(frame[0..2].try_into().unwrap());
        let r = i16::from_le_bytes(frame[2..4].try_into().unwrap());
        left.push(l as f64 / 32768.0);
        right.push(r as f64 / 32768.0);
    }
    if left.is_empty() {
        return Err(bad("no audio frames"));
    }
    Ok(StereoWav { left, right, sample_rate })
}

/// Writes a PCM16 file; values are clamped to [-1, 1).
pub fn write_stereo(path: &Path, sample_rate: u32, left: &[f64], right: &[f64]) -> Result<()> {
    assert_eq!(left.len(), right.len());
    let data_len = (left.len() * 4) as u32;
    let mut out = Vec::with_capacity(44 + data_len as usize);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes());
    out.extend_from_slice(&sample_rate.to_le_bytes());
    out.extend_from_slice(&(sample_rate * 4).to_le_bytes());
    out.extend_from_slice(&4u16.to_le_bytes());
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_len.to_le_bytes());
    for (&l, &r) in left.iter().zip(right) {
        out.extend_from_slice(&pcm16(l).to_le_bytes());
        out.extend_from_slice(&pcm16(r).to_le_bytes());
    }
    fs::write(path, out).map_err(|e| ToolError::io(path, e))
}

fn pcm16(v: f64) -> i16 {
    let scaled = (v * 32768.0).round();
    scaled.clamp(i16::MIN as f64, i16::MAX as f64) as i16
}
