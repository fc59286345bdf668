//! Redundant dictionaries: atom storage plus the builders for the three
//! families the codec and the stereo benchmark use.
//!
//! Atoms are stored flat (atom-major) and unit-normalized numerically at
//! build time. Builders are pure functions of their parameters, so a
//! dictionary can be regenerated bit-for-bit from the `(kind, len, param)`
//! triple a container header stores.

mod trig;
mod wavelet;

use alloc::vec::Vec;

use crate::error::Error;
use crate::vecmath;
use crate::Result;

/// Which builder produced a dictionary.
///
/// `param` meaning per kind: atom count for [`Rdct`]/[`Rdst`], atom count
/// per half for [`TrigUnion`], decomposition level for [`Cdf97`], unused
/// for [`Custom`].
///
/// [`Rdct`]: DictionaryKind::Rdct
/// [`Rdst`]: DictionaryKind::Rdst
/// [`TrigUnion`]: DictionaryKind::TrigUnion
/// [`Cdf97`]: DictionaryKind::Cdf97
/// [`Custom`]: DictionaryKind::Custom
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DictionaryKind {
    /// Redundant discrete cosine family.
    Rdct,
    /// Redundant discrete sine family.
    Rdst,
    /// Cosine and sine families side by side.
    TrigUnion,
    /// CDF 9/7 spline wavelet family (scaling functions plus wavelets up to
    /// a level).
    Cdf97,
    /// Caller-supplied atoms; not regenerable from parameters.
    Custom,
}

impl DictionaryKind {
    pub fn code(self) -> u8 {
        match self {
            DictionaryKind::Rdct => 0,
            DictionaryKind::Rdst => 1,
            DictionaryKind::TrigUnion => 2,
            DictionaryKind::Cdf97 => 3,
            DictionaryKind::Custom => 255,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(DictionaryKind::Rdct),
            1 => Some(DictionaryKind::Rdst),
            2 => Some(DictionaryKind::TrigUnion),
            3 => Some(DictionaryKind::Cdf97),
            255 => Some(DictionaryKind::Custom),
            _ => None,
        }
    }
}

/// A set of unit-norm atoms sharing one length.
#[derive(Debug, Clone, PartialEq)]
pub struct Dictionary {
    data: Vec<f64>,
    len: usize,
    atoms: usize,
    kind: DictionaryKind,
    param: u32,
}

/// Atoms whose norm falls below `DISCARD_RATIO` times the largest raw norm
/// of their group are dropped before normalization, so no atom is ever
/// normalized from (numerically) nothing.
pub const DISCARD_RATIO: f64 = 1e-6;

impl Dictionary {
    /// Redundant cosine dictionary: `atoms` atoms of length `len`, atom `n`
    /// (1-based) sampling `cos(pi (2i-1)(n-1) / (2 atoms))` for `i = 1..=len`,
    /// each normalized numerically. With `atoms == len` this is the
    /// orthonormal cosine basis.
    pub fn rdct(len: usize, atoms: usize) -> Result<Self> {
        let data = trig::build_rdct(len, atoms)?;
        Ok(Self { data, len, atoms, kind: DictionaryKind::Rdct, param: atoms as u32 })
    }

    /// Redundant sine dictionary: atom `n` (1-based) samples
    /// `sin(pi (2i-1) n / (2 atoms))`. With `atoms == len` this is the
    /// orthonormal sine basis.
    pub fn rdst(len: usize, atoms: usize) -> Result<Self> {
        let data = trig::build_rdst(len, atoms)?;
        Ok(Self { data, len, atoms, kind: DictionaryKind::Rdst, param: atoms as u32 })
    }

    /// Cosine and sine dictionaries with `atoms_each` atoms apiece,
    /// concatenated (cosines first).
    pub fn trig_union(len: usize, atoms_each: usize) -> Result<Self> {
        let mut union = Self::union(&Self::rdct(len, atoms_each)?, &Self::rdst(len, atoms_each)?)?;
        union.kind = DictionaryKind::TrigUnion;
        union.param = atoms_each as u32;
        Ok(union)
    }

    /// CDF 9/7 wavelet dictionary on `len` grid points: boundary-truncated
    /// half-step translates of the scaling function plus wavelets at scales
    /// `0..=max_level`, giving roughly `2 * len` atoms.
    pub fn cdf97(len: usize, max_level: u8) -> Result<Self> {
        let data = wavelet::build_cdf97(len, max_level)?;
        let atoms = data.len() / len;
        Ok(Self { data, len, atoms, kind: DictionaryKind::Cdf97, param: u32::from(max_level) })
    }

    /// Concatenate two dictionaries over the same ambient length. The result
    /// is [`DictionaryKind::Custom`] regardless of the inputs.
    pub fn union(a: &Self, b: &Self) -> Result<Self> {
        if a.len != b.len {
            return Err(Error::AtomLengthMismatch { left: a.len, right: b.len });
        }
        let mut data = Vec::with_capacity(a.data.len() + b.data.len());
        data.extend_from_slice(&a.data);
        data.extend_from_slice(&b.data);
        Ok(Self {
            data,
            len: a.len,
            atoms: a.atoms + b.atoms,
            kind: DictionaryKind::Custom,
            param: 0,
        })
    }

    /// Wrap caller-supplied atoms. Each must be finite, share one length,
    /// and already be unit norm (within 1e-8).
    pub fn from_atoms(atoms: Vec<Vec<f64>>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyDictionary);
        }
        let len = atoms[0].len();
        if len == 0 {
            return Err(Error::InvalidDictionarySize { atoms: atoms.len(), len });
        }
        let mut data = Vec::with_capacity(atoms.len() * len);
        for (i, atom) in atoms.iter().enumerate() {
            if atom.len() != len {
                return Err(Error::AtomLengthMismatch { left: len, right: atom.len() });
            }
            if !vecmath::all_finite(atom) {
                return Err(Error::NonFinite("atom"));
            }
            if (vecmath::norm(atom) - 1.0).abs() > 1e-8 {
                return Err(Error::NonUnitAtom { index: i });
            }
            data.extend_from_slice(atom);
        }
        Ok(Self { data, len, atoms: atoms.len(), kind: DictionaryKind::Custom, param: 0 })
    }

    /// Rebuild a dictionary from the triple a container header stores.
    pub fn regenerate(kind: DictionaryKind, len: usize, param: u32) -> Result<Self> {
        match kind {
            DictionaryKind::Rdct => Self::rdct(len, param as usize),
            DictionaryKind::Rdst => Self::rdst(len, param as usize),
            DictionaryKind::TrigUnion => Self::trig_union(len, param as usize),
            DictionaryKind::Cdf97 => {
                let level = u8::try_from(param)
                    .map_err(|_| Error::UnsupportedLevel { level: u8::MAX })?;
                Self::cdf97(len, level)
            }
            DictionaryKind::Custom => Err(Error::UnserializableDictionary),
        }
    }

    pub fn atom(&self, n: usize) -> &[f64] {
        &self.data[n * self.len..(n + 1) * self.len]
    }

    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    /// Ambient dimension (length of every atom).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.atoms == 0
    }

    pub fn kind(&self) -> DictionaryKind {
        self.kind
    }

    pub fn param(&self) -> u32 {
        self.param
    }

    /// Serialize for offline inspection: magic `SDIC`, version, family code,
    /// atom length, atom count (little-endian u32s), then all atoms as
    /// little-endian f64, atom-major. Nothing in the codec reads this back.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(14 + self.data.len() * 8);
        out.extend_from_slice(b"SDIC");
        out.push(1);
        out.push(self.kind.code());
        out.extend_from_slice(&(self.len as u32).to_le_bytes());
        out.extend_from_slice(&(self.atoms as u32).to_le_bytes());
        for v in &self.data {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }
}

pub(crate) fn normalize_or_discard(raw_atoms: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let max_norm = raw_atoms.iter().map(|a| vecmath::norm(a)).fold(0.0, f64::max);
    let cutoff = DISCARD_RATIO * max_norm;
    let mut kept = Vec::with_capacity(raw_atoms.len());
    for mut atom in raw_atoms {
        let n = vecmath::norm(&atom);
        if n <= cutoff || n == 0.0 {
            continue;
        }
        vecmath::scale(&mut atom, 1.0 / n);
        kept.push(atom);
    }
    kept
}
