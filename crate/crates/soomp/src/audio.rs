//! Stereo sparsity benchmark.
//!
//! Both channels are cut into equal frames (trailing samples that do not
//! fill a frame are left out), and each frame pair is approximated jointly
//! over a cosine-plus-sine dictionary with fourfold redundancy, equal
//! channel weights, and a per-frame energy tolerance derived from a target
//! signal-to-noise ratio. The figure of merit is the sparsity ratio:
//! samples represented per atom spent, with both channels counted and each
//! selected atom counted once because the approximation is shared.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::dictionary::Dictionary;
use crate::error::Error;
use crate::math;
use crate::metrics;
use crate::pursuit::{run_somp, run_soomp, SignalSet, StopRule, Termination};
use crate::vecmath;
use crate::Result;

/// Which selection rule the benchmark runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Soomp,
    Somp,
}

/// Outcome of one frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameReport {
    pub index: usize,
    /// Atoms selected for this frame; zero for silent frames.
    pub atoms: usize,
    /// Energy tolerance the frame had to reach.
    pub tolerance: f64,
    pub silent: bool,
}

/// A full benchmark pass over one stereo signal.
#[derive(Debug, Clone, PartialEq)]
pub struct StereoApproximation {
    pub frame_len: usize,
    pub frames: Vec<FrameReport>,
    /// Concatenated per-frame approximations, one entry per framed sample.
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    pub total_atoms: usize,
    /// Framed samples of both channels per selected atom.
    pub sparsity_ratio: f64,
    /// Achieved ratio of framed signal energy to approximation error energy.
    pub snr_db: f64,
}

/// Relative sparsity improvement of `candidate` over `baseline`, in percent.
pub fn sparsity_gain(candidate_sr: f64, baseline_sr: f64) -> f64 {
    100.0 * (candidate_sr - baseline_sr) / baseline_sr
}

/// Approximates a stereo pair frame by frame until each frame's residual
/// energy drops `snr0_db` decibels under its signal energy.
pub fn approximate_stereo(
    left: &[f64],
    right: &[f64],
    frame_len: usize,
    snr0_db: f64,
    method: Method,
) -> Result<StereoApproximation> {
    if left.len() != right.len() {
        return Err(Error::ChannelLengthMismatch { left: left.len(), right: right.len() });
    }
    if frame_len == 0 || frame_len > left.len() {
        return Err(Error::BadFrameLength { frame_len, samples: left.len() });
    }
    if !vecmath::all_finite(left) || !vecmath::all_finite(right) {
        return Err(Error::NonFinite("channel"));
    }
    if !snr0_db.is_finite() || snr0_db <= 0.0 {
        return Err(Error::BadTolerance { value: snr0_db });
    }

    let frame_count = left.len() / frame_len;
    let dict = Dictionary::trig_union(frame_len, 2 * frame_len)?;
    let slack = math::powf(10.0, -snr0_db / 10.0);

    let mut frames = Vec::with_capacity(frame_count);
    let mut out_left = Vec::with_capacity(frame_count * frame_len);
    let mut out_right = Vec::with_capacity(frame_count * frame_len);
    let mut total_atoms = 0usize;
    let mut signal_energy = 0.0;
    let mut error_energy = 0.0;

    for i in 0..frame_count {
        let fl = &left[i * frame_len..(i + 1) * frame_len];
        let fr = &right[i * frame_len..(i + 1) * frame_len];
        let weighted_energy = 0.5 * vecmath::norm_sq(fl) + 0.5 * vecmath::norm_sq(fr);
        signal_energy += vecmath::norm_sq(fl) + vecmath::norm_sq(fr);

        if weighted_energy == 0.0 {
            frames.push(FrameReport { index: i, atoms: 0, tolerance: 0.0, silent: true });
            out_left.extend(core::iter::repeat(0.0).take(frame_len));
            out_right.extend(core::iter::repeat(0.0).take(frame_len));
            continue;
        }

        let tolerance = slack * weighted_energy;
        let signals = SignalSet::new(vec![fl.to_vec(), fr.to_vec()], None)
            .map_err(|e| Error::FrameFailed { index: i, source: Box::new(e) })?;
        let run = match method {
            Method::Soomp => run_soomp(&dict, &signals, StopRule::squared_energy(tolerance), None),
            Method::Somp => run_somp(&dict, &signals, StopRule::squared_energy(tolerance), None),
        };
        let approx = match run {
            Ok(a) => match a.termination {
                Termination::Tolerance => a,
                _ => {
                    return Err(Error::FrameFailed {
                        index: i,
                        source: Box::new(Error::CapBeforeTolerance { selected: a.atom_count() }),
                    })
                }
            },
            Err(e) => return Err(Error::FrameFailed { index: i, source: Box::new(e) }),
        };

        let rec = approx.reconstruct(&dict)?;
        for j in 0..frame_len {
            let el = fl[j] - rec[0][j];
            let er = fr[j] - rec[1][j];
            error_energy += el * el + er * er;
        }
        out_left.extend_from_slice(&rec[0]);
        out_right.extend_from_slice(&rec[1]);
        total_atoms += approx.atom_count();
        frames.push(FrameReport { index: i, atoms: approx.atom_count(), tolerance, silent: false });
    }

    if total_atoms == 0 {
        return Err(Error::SilentSignal);
    }
    let sparsity_ratio = 2.0 * (frame_count * frame_len) as f64 / total_atoms as f64;
    let snr_db = metrics::snr_db(signal_energy, error_energy);
    Ok(StereoApproximation {
        frame_len,
        frames,
        left: out_left,
        right: out_right,
        total_atoms,
        sparsity_ratio,
        snr_db,
    })
}
