//! The compression codec: record in, container bytes out, and back.
//!
//! Encoding runs the full pipeline: remove the record mean, detect R peaks,
//! cut the record at inter-peak midpoints and stack the beats into an
//! aligned matrix, approximate all beats jointly over one dictionary built
//! for the padded beat length, decorrelate the coefficient matrix along the
//! beat axis with an orthonormal cosine transform, quantize, and entropy
//! code. The quantizer step is not a free parameter: the encoder searches
//! for the step whose end-to-end distortion matches the requested target,
//! evaluating each candidate through the exact reconstruction path the
//! decoder runs, so the distortion written into the report is the distortion
//! a decoder will see.
//!
//! The pursuit stops once the mean residual norm falls under a fixed
//! fraction of the target budget, leaving the rest to quantization; the
//! step search then closes the loop on the true target.

use alloc::vec;
use alloc::vec::Vec;

use crate::beats;
use crate::container::{Container, EncodedStream};
use crate::dictionary::{Dictionary, DictionaryKind};
use crate::error::Error;
use crate::huffman::{entropy_decode, entropy_encode};
use crate::math;
use crate::metrics;
use crate::pursuit::{run_soomp, SignalSet, StopRule};
use crate::qrs;
use crate::quant::{self, SparseStreams};
use crate::transform::Dct;
use crate::vecmath;
use crate::Result;

/// The encoder succeeds once the achieved distortion is within this of the
/// target (percent PRDN).
pub const TARGET_TOLERANCE: f64 = 1e-2;

/// Tighter window at which the step search stops probing early.
const SEARCH_TOLERANCE: f64 = 5e-3;

/// Fraction of the target distortion the pursuit itself is allowed to
/// spend; the remainder is headroom for quantization.
const PURSUIT_FRACTION: f64 = 0.8;

const MAX_BISECTIONS: usize = 60;
const GRID_POINTS: usize = 128;
const GRID_SPAN: f64 = 1.05;
const MAX_BRACKETS: usize = 8;
const BRACKET_BISECTIONS: usize = 40;

/// Which dictionary family the encoder builds for the padded beat length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DictionarySpec {
    pub family: DictionaryKind,
    /// Decomposition depth, used by the wavelet family only.
    pub level: u8,
}

impl Default for DictionarySpec {
    fn default() -> Self {
        Self { family: DictionaryKind::Cdf97, level: 4 }
    }
}

impl DictionarySpec {
    /// Builds the dictionary for beat rows of `len` samples. Trigonometric
    /// families get twofold redundancy.
    pub fn build(&self, len: usize) -> Result<Dictionary> {
        match self.family {
            DictionaryKind::Cdf97 => Dictionary::cdf97(len, self.level),
            DictionaryKind::Rdct => Dictionary::rdct(len, 2 * len),
            DictionaryKind::Rdst => Dictionary::rdst(len, 2 * len),
            DictionaryKind::TrigUnion => Dictionary::trig_union(len, len),
            DictionaryKind::Custom => Err(Error::UnserializableDictionary),
        }
    }

    fn level_byte(&self) -> u8 {
        match self.family {
            DictionaryKind::Cdf97 => self.level,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct EncodeOptions {
    pub dictionary: DictionarySpec,
    /// Hard cap on selected atoms; targets that need more fail as
    /// unreachable.
    pub max_atoms: Option<usize>,
    /// R-peak positions to use instead of running the detector.
    pub peaks: Option<Vec<usize>>,
}

/// A compressed record plus the numbers a caller reports about it.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedRecord {
    pub container: Container,
    /// Serialized container, ready to write out.
    pub bytes: Vec<u8>,
    /// End-to-end distortion at the chosen quantizer step.
    pub achieved_prdn: f64,
    pub compression_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodedRecord {
    pub samples: Vec<f64>,
    pub sample_rate: f64,
    /// Meaningful sample count of each beat, in record order.
    pub beat_lengths: Vec<usize>,
    pub beat_count: usize,
    pub selected_atoms: usize,
}

/// Beat bookkeeping shared by the encoder's evaluation loop and the decoder.
struct Geometry {
    lengths: Vec<usize>,
    offsets: Vec<usize>,
    align_col: usize,
    record_len: usize,
}

pub fn encode_record(
    samples: &[f64],
    sample_rate: f64,
    target_prdn: f64,
    opts: &EncodeOptions,
) -> Result<EncodedRecord> {
    if !target_prdn.is_finite() || target_prdn <= 0.0 || target_prdn >= 100.0 {
        return Err(Error::BadTarget { target: target_prdn });
    }
    if samples.is_empty() {
        return Err(Error::EmptyRecord);
    }
    if samples.len() > u32::MAX as usize {
        return Err(Error::RecordTooLong { len: samples.len() });
    }
    if !vecmath::all_finite(samples) {
        return Err(Error::NonFinite("record"));
    }
    if !sample_rate.is_finite() || sample_rate <= 0.0 {
        return Err(Error::BadSampleRate);
    }

    let mean = vecmath::mean(samples);
    let centered: Vec<f64> = samples.iter().map(|v| v - mean).collect();
    if vecmath::norm(&centered) <= 1e-12 * (1.0 + vecmath::norm(samples)) {
        return Err(Error::DegenerateReference);
    }

    let peaks = match &opts.peaks {
        Some(p) => p.clone(),
        None => qrs::detect_r_peaks(&centered, sample_rate)?,
    };
    let matrix = beats::segment_and_align(&centered, &peaks)?;
    let q_count = matrix.beat_count();
    let dict = opts.dictionary.build(matrix.row_len())?;

    // Mean centered row norm sets the scale the target percentage applies to.
    let mut scale = 0.0;
    for row in &matrix.rows {
        let row_mean = vecmath::mean(row);
        let mut sq = 0.0;
        for &v in row {
            sq += (v - row_mean) * (v - row_mean);
        }
        scale += math::sqrt(sq);
    }
    scale /= q_count as f64;
    let rho = PURSUIT_FRACTION * target_prdn / 100.0 * scale;

    let signals = SignalSet::new(matrix.rows.clone(), None)?;
    let approx = match run_soomp(&dict, &signals, StopRule::norm(rho), opts.max_atoms) {
        Ok(a) => a,
        Err(Error::DictionaryExhausted { partial: Some(partial) }) => *partial,
        Err(e) => return Err(e),
    };

    // Decorrelate each atom's coefficients across beats; the matrix travels
    // column-major, one transformed column per selected atom.
    let plan = Dct::new(q_count)?;
    let k = approx.indices.len();
    let mut flat = Vec::with_capacity(k * q_count);
    for i in 0..k {
        let column: Vec<f64> = (0..q_count).map(|q| approx.coefficients[q][i]).collect();
        flat.extend(plan.forward(&column)?);
    }

    let geometry = Geometry {
        lengths: matrix.lengths.clone(),
        offsets: matrix.peak_offsets.clone(),
        align_col: matrix.align_col,
        record_len: samples.len(),
    };
    let state = EncodeState {
        samples,
        mean,
        dict: &dict,
        indices: &approx.indices,
        flat: &flat,
        q_count,
        geometry: &geometry,
    };
    let (delta, achieved) = search_delta(&state, target_prdn)?;

    let codes = quant::quantize(&flat, delta)?;
    let streams = quant::split_streams(&codes)?;
    let container = Container {
        family: opts.dictionary.family,
        level: opts.dictionary.level_byte(),
        ambient: matrix.row_len() as u32,
        atom_count: dict.atom_count() as u32,
        record_len: samples.len() as u32,
        beat_count: q_count as u32,
        align_col: matrix.align_col as u32,
        sample_rate,
        mean,
        delta,
        atom_indices: approx.indices.iter().map(|&n| n as u32).collect(),
        magnitudes: encoded(&streams.magnitudes),
        signs: encoded(&streams.signs),
        position_deltas: encoded(&streams.position_deltas),
        beat_lengths: encoded(&as_u32(&matrix.lengths)),
        peak_offsets: encoded(&as_u32(&matrix.peak_offsets)),
    };
    let bytes = container.to_bytes();
    let compression_ratio = metrics::compression_ratio(samples.len(), bytes.len());
    Ok(EncodedRecord { container, bytes, achieved_prdn: achieved, compression_ratio })
}

pub fn decode_record(bytes: &[u8]) -> Result<DecodedRecord> {
    let c = Container::from_bytes(bytes)?;
    if u64::from(c.ambient) > 2 * u64::from(c.record_len) {
        return Err(Error::CorruptContainer { offset: 8, what: "ambient length implausible" });
    }
    if u64::from(c.beat_count) > u64::from(c.record_len) {
        return Err(Error::CorruptContainer { offset: 20, what: "beat count exceeds record" });
    }
    if c.beat_lengths.count != c.beat_count || c.peak_offsets.count != c.beat_count {
        return Err(Error::MalformedStreams("beat stream counts disagree with header"));
    }
    if c.magnitudes.count != c.signs.count || c.magnitudes.count != c.position_deltas.count {
        return Err(Error::MalformedStreams("coefficient stream counts disagree"));
    }

    let dict = dictionary_from_header(&c)?;
    let mut indices = Vec::with_capacity(c.atom_indices.len());
    for &n in &c.atom_indices {
        let n = n as usize;
        if n >= dict.atom_count() {
            return Err(Error::AtomOutOfRange { index: n, atoms: dict.atom_count() });
        }
        indices.push(n);
    }

    let q_count = c.beat_count as usize;
    let lengths: Vec<usize> = entropy_decode(&c.beat_lengths.bytes, q_count)?
        .into_iter()
        .map(|v| v as usize)
        .collect();
    let offsets: Vec<usize> = entropy_decode(&c.peak_offsets.bytes, q_count)?
        .into_iter()
        .map(|v| v as usize)
        .collect();
    let streams = SparseStreams {
        magnitudes: entropy_decode(&c.magnitudes.bytes, c.magnitudes.count as usize)?,
        signs: entropy_decode(&c.signs.bytes, c.signs.count as usize)?,
        position_deltas: entropy_decode(&c.position_deltas.bytes, c.position_deltas.count as usize)?,
    };
    let total = indices
        .len()
        .checked_mul(q_count)
        .ok_or(Error::MalformedStreams("coefficient matrix too large"))?;
    let codes = quant::merge_streams(&streams, total)?;

    let geometry = Geometry {
        lengths: lengths.clone(),
        offsets,
        align_col: c.align_col as usize,
        record_len: c.record_len as usize,
    };
    let samples =
        reconstruct_record(&dict, &indices, &codes, c.delta, q_count, &geometry, c.mean)?;
    Ok(DecodedRecord {
        samples,
        sample_rate: c.sample_rate,
        beat_lengths: lengths,
        beat_count: q_count,
        selected_atoms: indices.len(),
    })
}

/// Distortion of each beat on its own, measured over the beat's meaningful
/// extent with the beat's own mean as reference baseline.
pub fn per_beat_prdn(
    original: &[f64],
    decoded: &[f64],
    beat_lengths: &[usize],
) -> Result<Vec<f64>> {
    if original.len() != decoded.len() {
        return Err(Error::SignalLengthMismatch {
            expected: original.len(),
            got: decoded.len(),
        });
    }
    let covered: usize = beat_lengths.iter().sum();
    if covered != original.len() {
        return Err(Error::SignalLengthMismatch { expected: original.len(), got: covered });
    }
    let mut out = Vec::with_capacity(beat_lengths.len());
    let mut at = 0;
    for &len in beat_lengths {
        out.push(metrics::prdn(&original[at..at + len], &decoded[at..at + len])?);
        at += len;
    }
    Ok(out)
}

fn encoded(values: &[u32]) -> EncodedStream {
    EncodedStream { count: values.len() as u32, bytes: entropy_encode(values) }
}

fn as_u32(values: &[usize]) -> Vec<u32> {
    values.iter().map(|&v| v as u32).collect()
}

fn dictionary_from_header(c: &Container) -> Result<Dictionary> {
    let param = match c.family {
        DictionaryKind::Cdf97 => u32::from(c.level),
        DictionaryKind::Rdct | DictionaryKind::Rdst => c.atom_count,
        DictionaryKind::TrigUnion => c.atom_count / 2,
        DictionaryKind::Custom => return Err(Error::UnserializableDictionary),
    };
    let dict = Dictionary::regenerate(c.family, c.ambient as usize, param)?;
    if dict.atom_count() != c.atom_count as usize {
        return Err(Error::CorruptContainer { offset: 12, what: "atom count mismatch on rebuild" });
    }
    Ok(dict)
}

/// Rebuilds the beat rows from quantized transform codes: dequantize, invert
/// the across-beat transform column by column, then expand each beat's
/// coefficients over the selected atoms.
fn rebuild_rows(
    dict: &Dictionary,
    indices: &[usize],
    codes: &[i64],
    delta: f64,
    q_count: usize,
) -> Result<Vec<Vec<f64>>> {
    let k = indices.len();
    let values = quant::dequantize(codes, delta)?;
    let plan = Dct::new(q_count)?;
    let mut coefficients = vec![vec![0.0; k]; q_count];
    for i in 0..k {
        let column = plan.inverse(&values[i * q_count..(i + 1) * q_count])?;
        for q in 0..q_count {
            coefficients[q][i] = column[q];
        }
    }
    let mut rows = vec![vec![0.0; dict.len()]; q_count];
    for q in 0..q_count {
        for i in 0..k {
            vecmath::axpy(&mut rows[q], coefficients[q][i], dict.atom(indices[i]));
        }
    }
    Ok(rows)
}

fn reconstruct_record(
    dict: &Dictionary,
    indices: &[usize],
    codes: &[i64],
    delta: f64,
    q_count: usize,
    geometry: &Geometry,
    mean: f64,
) -> Result<Vec<f64>> {
    let rows = rebuild_rows(dict, indices, codes, delta, q_count)?;
    let mut record = beats::reassemble(
        &rows,
        &geometry.lengths,
        &geometry.offsets,
        geometry.align_col,
        geometry.record_len,
    )?;
    for v in &mut record {
        *v += mean;
    }
    Ok(record)
}

/// Everything the quantizer step search needs to evaluate one candidate.
struct EncodeState<'a> {
    samples: &'a [f64],
    mean: f64,
    dict: &'a Dictionary,
    indices: &'a [usize],
    /// Transformed coefficient matrix, column-major.
    flat: &'a [f64],
    q_count: usize,
    geometry: &'a Geometry,
}

impl EncodeState<'_> {
    fn evaluate(&self, delta: f64) -> Result<f64> {
        let codes = quant::quantize(self.flat, delta)?;
        let record = reconstruct_record(
            self.dict,
            self.indices,
            &codes,
            delta,
            self.q_count,
            self.geometry,
            self.mean,
        )?;
        metrics::prdn(self.samples, &record)
    }
}

/// Finds the quantizer step whose end-to-end distortion matches the target.
///
/// Distortion grows with the step, so a geometric bisection between a
/// near-lossless step and one that zeroes every coefficient homes in fast.
/// Requantization of correlated atoms makes the curve jump in places; when
/// bisection collapses its bracket onto a jump that straddles the target,
/// a geometric grid around the collapsed bracket locates every nearby
/// interval where the curve changes sides, each such interval is bisected
/// in turn, and the overall closest probe decides between success and an
/// honest unreachable-target report.
fn search_delta(state: &EncodeState<'_>, target: f64) -> Result<(f64, f64)> {
    let snapped = |p: f64| math::abs(p - target) <= SEARCH_TOLERANCE;
    let close = |p: f64| math::abs(p - target) <= TARGET_TOLERANCE;
    let max_abs = state.flat.iter().fold(0.0f64, |m, &v| m.max(math::abs(v)));
    if max_abs == 0.0 {
        let p = state.evaluate(1.0)?;
        if close(p) {
            return Ok((1.0, p));
        }
        return Err(Error::UnreachableTarget { achieved: p });
    }

    let floor_delta = 1e-6 * max_abs;
    let ceiling_delta = 2.0 * max_abs;
    let mut lo = floor_delta;
    let mut hi = max_abs;
    let mut best = (0.0, f64::INFINITY);
    let consider = |d: f64, p: f64, best: &mut (f64, f64)| {
        if math::abs(p - target) < math::abs(best.1 - target) {
            *best = (d, p);
        }
    };

    let p_lo = state.evaluate(lo)?;
    consider(lo, p_lo, &mut best);
    if snapped(p_lo) {
        return Ok((lo, p_lo));
    }
    if p_lo > target {
        if close(p_lo) {
            return Ok((lo, p_lo));
        }
        return Err(Error::UnreachableTarget { achieved: p_lo });
    }
    let mut p_hi = state.evaluate(hi)?;
    consider(hi, p_hi, &mut best);
    if snapped(p_hi) {
        return Ok((hi, p_hi));
    }
    if p_hi < target {
        hi = ceiling_delta;
        p_hi = state.evaluate(hi)?;
        consider(hi, p_hi, &mut best);
        if snapped(p_hi) {
            return Ok((hi, p_hi));
        }
        if p_hi < target {
            if close(p_hi) {
                return Ok((hi, p_hi));
            }
            return Err(Error::UnreachableTarget { achieved: p_hi });
        }
    }

    for _ in 0..MAX_BISECTIONS {
        let mid = math::sqrt(lo * hi);
        let p = state.evaluate(mid)?;
        consider(mid, p, &mut best);
        if snapped(p) {
            return Ok((mid, p));
        }
        if p > target {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let grid_lo = (lo / GRID_SPAN).max(floor_delta);
    let grid_hi = (hi * GRID_SPAN).min(ceiling_delta);
    let ratio = grid_hi / grid_lo;
    let mut probes = Vec::with_capacity(GRID_POINTS);
    for j in 0..GRID_POINTS {
        let d = grid_lo * math::powf(ratio, j as f64 / (GRID_POINTS - 1) as f64);
        let p = state.evaluate(d)?;
        consider(d, p, &mut best);
        if snapped(p) {
            return Ok((d, p));
        }
        probes.push((d, p));
    }

    let mut brackets = Vec::new();
    for pair in probes.windows(2) {
        let (da, pa) = pair[0];
        let (db, pb) = pair[1];
        if (pa < target) != (pb < target) {
            let (below, above) = if pa < target { (da, db) } else { (db, da) };
            brackets.push((math::abs(pb - pa), below, above));
        }
    }
    brackets.sort_by(|x, y| x.0.total_cmp(&y.0));
    for &(_, mut below, mut above) in brackets.iter().take(MAX_BRACKETS) {
        for _ in 0..BRACKET_BISECTIONS {
            if math::abs(above - below) <= 1e-15 * below.max(above) {
                break;
            }
            let mid = math::sqrt(below * above);
            let p = state.evaluate(mid)?;
            consider(mid, p, &mut best);
            if snapped(p) {
                return Ok((mid, p));
            }
            if p > target {
                above = mid;
            } else {
                below = mid;
            }
        }
    }

    if close(best.1) {
        Ok(best)
    } else {
        Err(Error::UnreachableTarget { achieved: best.1 })
    }
}
