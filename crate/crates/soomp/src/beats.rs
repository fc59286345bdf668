//! Heartbeat segmentation and alignment.
//!
//! A record is cut at the midpoints between consecutive R peaks (record
//! boundaries close the first and last beat), which keeps each QRS complex
//! centered in its own beat and makes the beats a partition of the samples.
//! The beats are then stacked as rows of one matrix, zero-padded on both
//! sides so every R peak lands in the same column; the per-beat lengths and
//! peak offsets are kept alongside, and [`reassemble`] inverts the whole
//! construction exactly. The same function also rebuilds a record from
//! approximated rows, which no longer carry zeros in the padding, because it
//! only ever reads each row's meaningful extent.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::Result;

/// Aligned, zero-padded heartbeats plus everything needed to invert the
/// segmentation.
#[derive(Debug, Clone, PartialEq)]
pub struct BeatMatrix {
    /// One padded beat per row, all rows the same length.
    pub rows: Vec<Vec<f64>>,
    /// Meaningful sample count of each beat.
    pub lengths: Vec<usize>,
    /// R-peak position inside each beat's meaningful extent.
    pub peak_offsets: Vec<usize>,
    /// Column every R peak occupies after alignment.
    pub align_col: usize,
    /// Original record length.
    pub record_len: usize,
}

impl BeatMatrix {
    pub fn beat_count(&self) -> usize {
        self.rows.len()
    }

    /// Padded row length shared by all beats.
    pub fn row_len(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn to_samples(&self) -> Result<Vec<f64>> {
        reassemble(
            &self.rows,
            &self.lengths,
            &self.peak_offsets,
            self.align_col,
            self.record_len,
        )
    }
}

fn check_peaks(len: usize, peaks: &[usize]) -> Result<()> {
    if len == 0 {
        return Err(Error::EmptyRecord);
    }
    if peaks.len() < 2 {
        return Err(Error::TooFewPeaks { found: peaks.len() });
    }
    for (i, &p) in peaks.iter().enumerate() {
        if p >= len {
            return Err(Error::PeakOutOfRange { peak: p, len });
        }
        if i > 0 && p <= peaks[i - 1] {
            return Err(Error::PeaksNotIncreasing { index: i });
        }
    }
    Ok(())
}

pub fn segment_and_align(samples: &[f64], peaks: &[usize]) -> Result<BeatMatrix> {
    check_peaks(samples.len(), peaks)?;
    let q_count = peaks.len();

    let mut starts = Vec::with_capacity(q_count + 1);
    starts.push(0);
    for w in peaks.windows(2) {
        starts.push((w[0] + w[1]) / 2);
    }
    starts.push(samples.len());

    let lengths: Vec<usize> = starts.windows(2).map(|w| w[1] - w[0]).collect();
    let peak_offsets: Vec<usize> = peaks.iter().zip(&starts).map(|(&p, &s)| p - s).collect();
    let align_col = peak_offsets.iter().copied().max().unwrap();
    let row_len = (0..q_count)
        .map(|q| align_col - peak_offsets[q] + lengths[q])
        .max()
        .unwrap();

    let mut rows = Vec::with_capacity(q_count);
    for q in 0..q_count {
        let mut row = vec![0.0; row_len];
        let at = align_col - peak_offsets[q];
        row[at..at + lengths[q]].copy_from_slice(&samples[starts[q]..starts[q] + lengths[q]]);
        rows.push(row);
    }

    Ok(BeatMatrix { rows, lengths, peak_offsets, align_col, record_len: samples.len() })
}

/// Concatenates each row's meaningful extent back into one record. Works on
/// any rows of the matrix's shape, including lossy reconstructions.
pub fn reassemble(
    rows: &[Vec<f64>],
    lengths: &[usize],
    peak_offsets: &[usize],
    align_col: usize,
    record_len: usize,
) -> Result<Vec<f64>> {
    let q_count = rows.len();
    if lengths.len() != q_count || peak_offsets.len() != q_count {
        return Err(Error::MalformedStreams("beat bookkeeping lengths disagree"));
    }
    if lengths.iter().sum::<usize>() != record_len {
        return Err(Error::SignalLengthMismatch {
            expected: record_len,
            got: lengths.iter().sum(),
        });
    }
    let mut out = Vec::with_capacity(record_len);
    for q in 0..q_count {
        if peak_offsets[q] > align_col {
            return Err(Error::MalformedStreams("peak offset beyond alignment column"));
        }
        let at = align_col - peak_offsets[q];
        if at + lengths[q] > rows[q].len() {
            return Err(Error::MalformedStreams("beat extent beyond row end"));
        }
        out.extend_from_slice(&rows[q][at..at + lengths[q]]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn midpoint_cuts_on_the_worked_example() {
        let samples = vec![0.0; 1500];
        let m = segment_and_align(&samples, &[300, 700, 1200]).unwrap();
        assert_eq!(m.lengths, vec![500, 450, 550]);
        assert_eq!(m.peak_offsets, vec![300, 200, 250]);
        assert_eq!(m.align_col, 300);
        assert_eq!(m.beat_count(), 3);
    }

    #[test]
    fn peaks_share_the_alignment_column() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let samples: Vec<f64> = (0..2000).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let peaks = [40usize, 350, 720, 1100, 1480, 1900];
        let m = segment_and_align(&samples, &peaks).unwrap();
        for (q, &p) in peaks.iter().enumerate() {
            assert_eq!(m.rows[q][m.align_col], samples[p], "beat {q}");
        }
    }

    #[test]
    fn periodic_peaks_give_uniform_lengths() {
        let samples = vec![1.0; 1000];
        let peaks: Vec<usize> = (0..10).map(|i| 50 + 100 * i).collect();
        let m = segment_and_align(&samples, &peaks).unwrap();
        for &l in &m.lengths[1..9] {
            assert_eq!(l, 100);
        }
    }

    #[test]
    fn round_trips_random_records_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..20 {
            let len = rng.gen_range(50..3000);
            let samples: Vec<f64> = (0..len).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let count = rng.gen_range(2..12.min(len));
            let mut peaks: Vec<usize> = (0..count).map(|_| rng.gen_range(0..len)).collect();
            peaks.sort_unstable();
            peaks.dedup();
            if peaks.len() < 2 {
                continue;
            }
            let m = segment_and_align(&samples, &peaks).unwrap();
            assert_eq!(m.to_samples().unwrap(), samples);
        }
    }

    #[test]
    fn reassembles_a_single_row() {
        let rows = vec![vec![0.0, 1.0, 2.0, 3.0]];
        let out = reassemble(&rows, &[3], &[1], 1, 3).unwrap();
        assert_eq!(out, vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn rejects_bad_peak_lists() {
        let samples = vec![0.0; 100];
        assert!(matches!(
            segment_and_align(&samples, &[5]),
            Err(Error::TooFewPeaks { found: 1 })
        ));
        assert!(matches!(
            segment_and_align(&samples, &[5, 5]),
            Err(Error::PeaksNotIncreasing { index: 1 })
        ));
        assert!(matches!(
            segment_and_align(&samples, &[5, 200]),
            Err(Error::PeakOutOfRange { peak: 200, len: 100 })
        ));
        assert!(matches!(
            segment_and_align(&[], &[0, 1]),
            Err(Error::EmptyRecord)
        ));
    }

    #[test]
    fn reassemble_validates_bookkeeping() {
        let rows = vec![vec![1.0, 2.0], vec![3.0, 4.0]];
        assert!(matches!(
            reassemble(&rows, &[2, 2], &[0], 0, 4),
            Err(Error::MalformedStreams(_))
        ));
        assert!(matches!(
            reassemble(&rows, &[2, 2], &[0, 0], 0, 5),
            Err(Error::SignalLengthMismatch { expected: 5, got: 4 })
        ));
        assert!(matches!(
            reassemble(&rows, &[2, 2], &[0, 3], 2, 4),
            Err(Error::MalformedStreams(_))
        ));
        assert!(matches!(
            reassemble(&rows, &[2, 3], &[0, 0], 0, 5),
            Err(Error::MalformedStreams(_))
        ));
    }
}
