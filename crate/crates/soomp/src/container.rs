//! Compressed-record container format.
//!
//! A record serializes to one self-describing byte string: a fixed 56-byte
//! header, the selected atom indices, then five entropy-coded streams
//! (coefficient magnitudes, signs, position gaps, beat lengths, per-beat
//! peak offsets), each prefixed with its symbol count and byte length. All
//! integers and floats are little-endian. The dictionary itself never
//! travels: the header carries its family, level and dimensions, and the
//! decoder rebuilds it bit-for-bit from those.
//!
//! Parsing is strict: unknown magic or version, impossible field values,
//! truncation anywhere, or trailing bytes all fail with the byte offset and
//! a short description of what went wrong.

use alloc::vec::Vec;

use crate::dictionary::DictionaryKind;
use crate::error::Error;
use crate::Result;

const MAGIC: [u8; 4] = *b"SECG";
const VERSION: u8 = 1;
const HEADER_LEN: usize = 56;

/// One entropy-coded stream plus the symbol count needed to decode it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EncodedStream {
    pub count: u32,
    pub bytes: Vec<u8>,
}

/// In-memory form of a compressed record.
#[derive(Debug, Clone, PartialEq)]
pub struct Container {
    pub family: DictionaryKind,
    /// Wavelet decomposition depth; zero for trigonometric families.
    pub level: u8,
    /// Beat row length the dictionary was built on.
    pub ambient: u32,
    /// Atom count the rebuilt dictionary must come out at.
    pub atom_count: u32,
    /// Original record length in samples.
    pub record_len: u32,
    pub beat_count: u32,
    pub align_col: u32,
    pub sample_rate: f64,
    /// Record mean removed before analysis.
    pub mean: f64,
    /// Quantizer step.
    pub delta: f64,
    /// Selected atoms in selection order.
    pub atom_indices: Vec<u32>,
    pub magnitudes: EncodedStream,
    pub signs: EncodedStream,
    pub position_deltas: EncodedStream,
    pub beat_lengths: EncodedStream,
    pub peak_offsets: EncodedStream,
}

impl Container {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(
            HEADER_LEN
                + 4 * self.atom_indices.len()
                + 8 * 5
                + self.magnitudes.bytes.len()
                + self.signs.bytes.len()
                + self.position_deltas.bytes.len()
                + self.beat_lengths.bytes.len()
                + self.peak_offsets.bytes.len(),
        );
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.push(self.family.code());
        out.push(self.level);
        out.push(0);
        out.extend_from_slice(&self.ambient.to_le_bytes());
        out.extend_from_slice(&self.atom_count.to_le_bytes());
        out.extend_from_slice(&self.record_len.to_le_bytes());
        out.extend_from_slice(&self.beat_count.to_le_bytes());
        out.extend_from_slice(&(self.atom_indices.len() as u32).to_le_bytes());
        out.extend_from_slice(&self.align_col.to_le_bytes());
        out.extend_from_slice(&self.sample_rate.to_le_bytes());
        out.extend_from_slice(&self.mean.to_le_bytes());
        out.extend_from_slice(&self.delta.to_le_bytes());
        for &n in &self.atom_indices {
            out.extend_from_slice(&n.to_le_bytes());
        }
        for s in [
            &self.magnitudes,
            &self.signs,
            &self.position_deltas,
            &self.beat_lengths,
            &self.peak_offsets,
        ] {
            out.extend_from_slice(&s.count.to_le_bytes());
            out.extend_from_slice(&(s.bytes.len() as u32).to_le_bytes());
            out.extend_from_slice(&s.bytes);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut cur = Cursor { bytes, offset: 0 };
        let magic = cur.take(4, "magic")?;
        if magic != MAGIC {
            return Err(corrupt(0, "bad magic"));
        }
        let version = cur.take_u8("version")?;
        if version != VERSION {
            return Err(Error::UnsupportedVersion { version });
        }
        let family_at = cur.offset;
        let family_code = cur.take_u8("dictionary family")?;
        let family = DictionaryKind::from_code(family_code)
            .ok_or_else(|| corrupt(family_at, "unknown dictionary family"))?;
        let level = cur.take_u8("level")?;
        cur.take_u8("reserved byte")?;
        let ambient = cur.take_u32("ambient length")?;
        let atom_count = cur.take_u32("atom count")?;
        let record_len = cur.take_u32("record length")?;
        let beat_count = cur.take_u32("beat count")?;
        let k = cur.take_u32("selected atom count")?;
        let align_col = cur.take_u32("alignment column")?;
        let fs_at = cur.offset;
        let sample_rate = cur.take_f64("sample rate")?;
        if !sample_rate.is_finite() || sample_rate <= 0.0 {
            return Err(corrupt(fs_at, "sample rate not positive"));
        }
        let mean_at = cur.offset;
        let mean = cur.take_f64("mean")?;
        if !mean.is_finite() {
            return Err(corrupt(mean_at, "mean not finite"));
        }
        let delta_at = cur.offset;
        let delta = cur.take_f64("quantizer step")?;
        if !delta.is_finite() || delta <= 0.0 {
            return Err(corrupt(delta_at, "quantizer step not positive"));
        }
        let mut atom_indices = Vec::with_capacity(cur.reserve(k, 4, "atom index table")?);
        for _ in 0..k {
            atom_indices.push(cur.take_u32("atom index")?);
        }
        let magnitudes = cur.take_stream("magnitude stream")?;
        let signs = cur.take_stream("sign stream")?;
        let position_deltas = cur.take_stream("position stream")?;
        let beat_lengths = cur.take_stream("beat length stream")?;
        let peak_offsets = cur.take_stream("peak offset stream")?;
        if cur.offset != bytes.len() {
            return Err(corrupt(cur.offset, "trailing bytes"));
        }
        Ok(Self {
            family,
            level,
            ambient,
            atom_count,
            record_len,
            beat_count,
            align_col,
            sample_rate,
            mean,
            delta,
            atom_indices,
            magnitudes,
            signs,
            position_deltas,
            beat_lengths,
            peak_offsets,
        })
    }
}

fn corrupt(offset: usize, what: &'static str) -> Error {
    Error::CorruptContainer { offset, what }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize, what: &'static str) -> Result<&'a [u8]> {
        if self.bytes.len() - self.offset < n {
            return Err(corrupt(self.offset, what));
        }
        let out = &self.bytes[self.offset..self.offset + n];
        self.offset += n;
        Ok(out)
    }

    fn take_u8(&mut self, what: &'static str) -> Result<u8> {
        Ok(self.take(1, what)?[0])
    }

    fn take_u32(&mut self, what: &'static str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn take_f64(&mut self, what: &'static str) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }

    /// Checks that `count` items of `size` bytes fit in the remaining input
    /// before anything is allocated for them.
    fn reserve(&self, count: u32, size: usize, what: &'static str) -> Result<usize> {
        let need = u64::from(count) * size as u64;
        if ((self.bytes.len() - self.offset) as u64) < need {
            return Err(corrupt(self.offset, what));
        }
        Ok(count as usize)
    }

    fn take_stream(&mut self, what: &'static str) -> Result<EncodedStream> {
        let count = self.take_u32(what)?;
        let len = self.take_u32(what)? as usize;
        let bytes = self.take(len, what)?.to_vec();
        Ok(EncodedStream { count, bytes })
    }
}
