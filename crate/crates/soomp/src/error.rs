use alloc::boxed::Box;
use core::fmt;

use crate::pursuit::Approximation;

/// Crate-wide error type.
///
/// Validation failures, numerical degeneracies, and malformed inputs all
/// surface here; nothing in the crate panics on bad caller data.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Dictionary has no atoms.
    EmptyDictionary,
    /// Requested dictionary dimensions are unusable (zero atoms or length).
    InvalidDictionarySize { atoms: usize, len: usize },
    /// Two dictionaries with different atom lengths cannot be merged.
    AtomLengthMismatch { left: usize, right: usize },
    /// A caller-supplied atom is not unit norm (or is zero).
    NonUnitAtom { index: usize },
    /// Wavelet dictionary level outside the supported 0..=4 range.
    UnsupportedLevel { level: u8 },
    /// Wavelet dictionary grid too short to carry the prototype family.
    GridTooShort { len: usize },
    /// Input contains NaN or infinity.
    NonFinite(&'static str),

    /// Signal set has no signals.
    EmptySignalSet,
    /// Signals in one set must share a length.
    SignalLengthMismatch { expected: usize, got: usize },
    /// One weight per signal.
    WeightCountMismatch { signals: usize, weights: usize },
    /// Weights must sum to one.
    BadWeightSum { sum: f64 },
    /// Weights must be nonnegative.
    NegativeWeight { index: usize },
    /// Signal length differs from the dictionary's atom length.
    SignalDictionaryMismatch { signal_len: usize, atom_len: usize },

    /// Atom index outside the dictionary.
    AtomOutOfRange { index: usize, atoms: usize },
    /// Atom was already selected in this pursuit.
    AlreadySelected { index: usize },
    /// Atom is numerically inside the span of the selected set.
    DegenerateAtom { index: usize },
    /// Every remaining atom is numerically dependent on the selected set.
    /// Carries the partial result when a full run (rather than a single
    /// selection) hit the wall, so callers can still inspect what was built.
    DictionaryExhausted {
        partial: Option<Box<Approximation>>,
    },
    /// Stop tolerance is negative or not a number.
    BadTolerance { value: f64 },

    /// Fewer than two heartbeats detected.
    TooFewPeaks { found: usize },
    /// Peak list must be strictly increasing.
    PeaksNotIncreasing { index: usize },
    /// Peak index beyond the record.
    PeakOutOfRange { peak: usize, len: usize },
    /// Record has no samples.
    EmptyRecord,
    /// Record shorter than the minimum the detector can work with.
    RecordTooShort { len: usize, min: usize },
    /// Record too long for the container's 32-bit bookkeeping.
    RecordTooLong { len: usize },
    /// Sampling rate must be positive and finite.
    BadSampleRate,

    /// Operation needs a nonempty signal.
    EmptySignal,
    /// Quantizer step must be positive and finite.
    NonPositiveDelta { delta: f64 },
    /// Quantizer step so small that magnitudes overflow the stream type.
    DeltaTooSmall { delta: f64 },
    /// Quantized stream triplet is internally inconsistent.
    MalformedStreams(&'static str),

    /// Container bytes cannot be parsed; `offset` is where parsing stopped.
    CorruptContainer { offset: usize, what: &'static str },
    /// Container written by an unknown format revision.
    UnsupportedVersion { version: u8 },
    /// Only the built-in dictionary families can be regenerated from a
    /// container header; ad-hoc atom sets cannot be serialized.
    UnserializableDictionary,

    /// Even a vanishing quantizer step cannot reach the requested quality.
    UnreachableTarget { achieved: f64 },
    /// Target distortion outside (0, 100).
    BadTarget { target: f64 },
    /// Reference signal is constant, so relative distortion is undefined.
    DegenerateReference,
    /// Dictionary atom length is smaller than the padded beat length.
    DictionaryTooShort { ambient: usize, needed: usize },

    /// Stereo channels differ in length.
    ChannelLengthMismatch { left: usize, right: usize },
    /// Frame length is zero or exceeds the signal.
    BadFrameLength { frame_len: usize, samples: usize },
    /// Signal carries no energy at all.
    SilentSignal,
    /// The safety cap fired before the requested tolerance was met.
    CapBeforeTolerance { selected: usize },
    /// A per-frame approximation failed; `index` is the frame.
    FrameFailed { index: usize, source: Box<Error> },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            EmptyDictionary => write!(f, "dictionary has no atoms"),
            InvalidDictionarySize { atoms, len } => {
                write!(f, "invalid dictionary size: {atoms} atoms of length {len}")
            }
            AtomLengthMismatch { left, right } => {
                write!(f, "atom length mismatch between dictionaries: {left} vs {right}")
            }
            NonUnitAtom { index } => write!(f, "atom {index} is not unit norm"),
            UnsupportedLevel { level } => {
                write!(f, "wavelet level {level} unsupported (max 4)")
            }
            GridTooShort { len } => write!(f, "grid of {len} points too short (min 16)"),
            NonFinite(what) => write!(f, "{what} contains NaN or infinity"),
            EmptySignalSet => write!(f, "signal set is empty"),
            SignalLengthMismatch { expected, got } => {
                write!(f, "signal length {got} differs from {expected}")
            }
            WeightCountMismatch { signals, weights } => {
                write!(f, "{weights} weights for {signals} signals")
            }
            BadWeightSum { sum } => write!(f, "weights sum to {sum}, expected 1"),
            NegativeWeight { index } => write!(f, "weight {index} is negative"),
            SignalDictionaryMismatch { signal_len, atom_len } => {
                write!(f, "signal length {signal_len} vs atom length {atom_len}")
            }
            AtomOutOfRange { index, atoms } => {
                write!(f, "atom index {index} out of range ({atoms} atoms)")
            }
            AlreadySelected { index } => write!(f, "atom {index} already selected"),
            DegenerateAtom { index } => {
                write!(f, "atom {index} is numerically dependent on the selected set")
            }
            DictionaryExhausted { .. } => {
                write!(f, "no selectable atom remains outside the selected span")
            }
            BadTolerance { value } => write!(f, "invalid stop tolerance {value}"),
            TooFewPeaks { found } => write!(f, "found {found} R peaks, need at least 2"),
            PeaksNotIncreasing { index } => {
                write!(f, "peak list not strictly increasing at entry {index}")
            }
            PeakOutOfRange { peak, len } => {
                write!(f, "peak {peak} beyond record of {len} samples")
            }
            EmptyRecord => write!(f, "record has no samples"),
            RecordTooShort { len, min } => {
                write!(f, "record of {len} samples too short (min {min})")
            }
            RecordTooLong { len } => {
                write!(f, "record of {len} samples exceeds the container limit")
            }
            BadSampleRate => write!(f, "sampling rate must be positive and finite"),
            EmptySignal => write!(f, "signal is empty"),
            NonPositiveDelta { delta } => write!(f, "quantizer step {delta} must be positive"),
            DeltaTooSmall { delta } => {
                write!(f, "quantizer step {delta} overflows the magnitude range")
            }
            MalformedStreams(what) => write!(f, "malformed quantized streams: {what}"),
            CorruptContainer { offset, what } => {
                write!(f, "corrupt container at byte {offset}: {what}")
            }
            UnsupportedVersion { version } => write!(f, "unsupported container version {version}"),
            UnserializableDictionary => {
                write!(f, "ad-hoc dictionaries cannot be stored in a container header")
            }
            UnreachableTarget { achieved } => {
                write!(f, "target distortion unreachable; best achievable {achieved:.4}")
            }
            BadTarget { target } => write!(f, "target distortion {target} outside (0, 100)"),
            DegenerateReference => write!(f, "reference signal is constant"),
            DictionaryTooShort { ambient, needed } => {
                write!(f, "dictionary atom length {ambient} < padded beat length {needed}")
            }
            ChannelLengthMismatch { left, right } => {
                write!(f, "channel lengths differ: {left} vs {right}")
            }
            BadFrameLength { frame_len, samples } => {
                write!(f, "frame length {frame_len} invalid for {samples} samples")
            }
            SilentSignal => write!(f, "signal carries no energy"),
            CapBeforeTolerance { selected } => {
                write!(f, "safety cap hit after {selected} atoms before tolerance")
            }
            FrameFailed { index, source } => write!(f, "frame {index} failed: {source}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_informative() {
        let e = Error::CorruptContainer { offset: 4, what: "bad magic" };
        assert_eq!(e.to_string(), "corrupt container at byte 4: bad magic");
        let e = Error::UnreachableTarget { achieved: 12.3456 };
        assert!(e.to_string().contains("12.3456"));
    }
}
