//! Mid-tread scalar quantization and sparse stream coding.
//!
//! Quantization maps a value to `floor(v / delta + 0.5)`, so the zero bin is
//! centered on the origin and reconstruction error never exceeds `delta / 2`.
//! Quantized vectors are mostly zeros in this codebase, so they travel as
//! three streams: magnitudes of the nonzero codes, their signs, and the gaps
//! between their one-based positions (the first gap is the first position
//! itself). All three are `u32` streams ready for the entropy coder.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::math;
use crate::Result;

/// Nonzero codes of a quantized vector, split for entropy coding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseStreams {
    pub magnitudes: Vec<u32>,
    /// One per nonzero code: 1 for positive, 0 for negative.
    pub signs: Vec<u32>,
    /// Gaps between consecutive one-based positions of nonzero codes.
    pub position_deltas: Vec<u32>,
}

pub fn quantize(values: &[f64], delta: f64) -> Result<Vec<i64>> {
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::NonPositiveDelta { delta });
    }
    let mut out = Vec::with_capacity(values.len());
    for &v in values {
        if !v.is_finite() {
            return Err(Error::NonFinite("quantizer input"));
        }
        let code = math::floor(v / delta + 0.5);
        if math::abs(code) > u32::MAX as f64 {
            return Err(Error::DeltaTooSmall { delta });
        }
        out.push(code as i64);
    }
    Ok(out)
}

pub fn dequantize(codes: &[i64], delta: f64) -> Result<Vec<f64>> {
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::NonPositiveDelta { delta });
    }
    Ok(codes.iter().map(|&c| c as f64 * delta).collect())
}

pub fn split_streams(codes: &[i64]) -> Result<SparseStreams> {
    if codes.len() > u32::MAX as usize {
        return Err(Error::MalformedStreams("vector too long for position coding"));
    }
    let mut streams = SparseStreams {
        magnitudes: Vec::new(),
        signs: Vec::new(),
        position_deltas: Vec::new(),
    };
    let mut last_pos = 0u32;
    for (i, &c) in codes.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        if mag > u32::MAX as u64 {
            return Err(Error::MalformedStreams("code magnitude exceeds 32 bits"));
        }
        let pos = (i + 1) as u32;
        streams.magnitudes.push(mag as u32);
        streams.signs.push(u32::from(c > 0));
        streams.position_deltas.push(pos - last_pos);
        last_pos = pos;
    }
    Ok(streams)
}

pub fn merge_streams(streams: &SparseStreams, len: usize) -> Result<Vec<i64>> {
    let count = streams.magnitudes.len();
    if streams.signs.len() != count || streams.position_deltas.len() != count {
        return Err(Error::MalformedStreams("stream lengths disagree"));
    }
    let mut out = vec![0i64; len];
    let mut pos = 0u64;
    for i in 0..count {
        let gap = streams.position_deltas[i];
        if gap == 0 {
            return Err(Error::MalformedStreams("zero position gap"));
        }
        pos += u64::from(gap);
        if pos > len as u64 {
            return Err(Error::MalformedStreams("position beyond vector end"));
        }
        let mag = streams.magnitudes[i];
        if mag == 0 {
            return Err(Error::MalformedStreams("zero magnitude"));
        }
        let sign = match streams.signs[i] {
            1 => 1i64,
            0 => -1i64,
            _ => return Err(Error::MalformedStreams("sign is not a bit")),
        };
        out[(pos - 1) as usize] = sign * i64::from(mag);
    }
    Ok(out)
}
