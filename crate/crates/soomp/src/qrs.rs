//! R-peak detection.
//!
//! The classic energy-based detector: a 5-15 Hz bandpass (recursive
//! low-pass and moving-average high-pass difference equations, window
//! lengths scaled from the 200 Hz originals by the actual sampling rate), a
//! five-point derivative, squaring, and a 150 ms moving-window integral.
//! Peaks of the integrated energy are classified signal or noise by a pair
//! of running threshold estimates; a search-back pass revisits skipped
//! candidates with the lower threshold when an expected beat fails to
//! arrive within 1.66 mean RR intervals. Accepted energy peaks are mapped
//! back to the raw record by taking the sample argmax in a 150 ms window
//! around the delay-compensated position, so the reported indices sit on
//! the R wave itself, not on a filtered copy.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::math;
use crate::Result;

fn round_at_least_one(x: f64) -> usize {
    let r = math::floor(x + 0.5);
    if r < 1.0 {
        1
    } else {
        r as usize
    }
}

fn lowpass(x: &[f64], t1: usize) -> Vec<f64> {
    let mut y = vec![0.0; x.len()];
    for n in 0..x.len() {
        let mut v = x[n];
        if n >= t1 {
            v -= 2.0 * x[n - t1];
        }
        if n >= 2 * t1 {
            v += x[n - 2 * t1];
        }
        if n >= 1 {
            v += 2.0 * y[n - 1];
        }
        if n >= 2 {
            v -= y[n - 2];
        }
        y[n] = v;
    }
    let gain = (t1 * t1) as f64;
    for v in &mut y {
        *v /= gain;
    }
    y
}

fn highpass(x: &[f64], t2: usize) -> Vec<f64> {
    let win = 2 * t2;
    let mut y = vec![0.0; x.len()];
    let mut sum = 0.0;
    for n in 0..x.len() {
        sum += x[n];
        if n >= win {
            sum -= x[n - win];
        }
        let delayed = if n >= t2 { x[n - t2] } else { 0.0 };
        y[n] = delayed - sum / win as f64;
    }
    y
}

fn derivative_squared(x: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; x.len()];
    for n in 0..x.len() {
        let mut v = 2.0 * x[n];
        if n >= 1 {
            v += x[n - 1];
        }
        if n >= 3 {
            v -= x[n - 3];
        }
        if n >= 4 {
            v -= 2.0 * x[n - 4];
        }
        let v = v / 8.0;
        y[n] = v * v;
    }
    y
}

fn moving_window_integral(x: &[f64], w: usize) -> Vec<f64> {
    let mut y = vec![0.0; x.len()];
    let mut sum = 0.0;
    for n in 0..x.len() {
        sum += x[n];
        if n >= w {
            sum -= x[n - w];
        }
        y[n] = sum / w as f64;
    }
    y
}

fn local_maxima(x: &[f64]) -> Vec<(usize, f64)> {
    let mut out = Vec::new();
    for i in 1..x.len().saturating_sub(1) {
        if x[i] > x[i - 1] && x[i] >= x[i + 1] {
            out.push((i, x[i]));
        }
    }
    out
}

/// Detects R peaks and returns their strictly increasing sample indices.
pub fn detect_r_peaks(samples: &[f64], fs: f64) -> Result<Vec<usize>> {
    if samples.is_empty() {
        return Err(Error::EmptyRecord);
    }
    if !fs.is_finite() || fs < 40.0 {
        return Err(Error::BadSampleRate);
    }
    let min_len = (2.0 * fs) as usize;
    if samples.len() < min_len {
        return Err(Error::RecordTooShort { len: samples.len(), min: min_len });
    }

    let t1 = round_at_least_one(0.03 * fs);
    let t2 = round_at_least_one(0.08 * fs);
    let w = round_at_least_one(0.15 * fs);
    let refractory = round_at_least_one(0.2 * fs);

    let mwi = moving_window_integral(
        &derivative_squared(&highpass(&lowpass(samples, t1), t2)),
        w,
    );
    let candidates = local_maxima(&mwi);

    // Threshold seeds from a two-second learning stretch.
    let learn = min_len.min(mwi.len());
    let mut peak0 = 0.0f64;
    let mut mean0 = 0.0f64;
    for &v in &mwi[..learn] {
        if v > peak0 {
            peak0 = v;
        }
        mean0 += v;
    }
    mean0 /= learn as f64;
    let mut spk = peak0 / 3.0;
    let mut npk = mean0 / 2.0;
    let mut th1 = npk + 0.25 * (spk - npk);

    fn push_accept(accepted: &mut Vec<usize>, intervals: &mut Vec<usize>, i: usize) {
        if let Some(&last) = accepted.last() {
            intervals.push(i - last);
            if intervals.len() > 8 {
                intervals.remove(0);
            }
        }
        accepted.push(i);
    }

    let mut accepted: Vec<usize> = Vec::new();
    let mut intervals: Vec<usize> = Vec::new();

    let mut j = 0;
    while j < candidates.len() {
        let (i, v) = candidates[j];
        if let Some(&last) = accepted.last() {
            if i < last + refractory {
                j += 1;
                continue;
            }
            if !intervals.is_empty() {
                let avg = intervals.iter().sum::<usize>() as f64 / intervals.len() as f64;
                if (i - last) as f64 > 1.66 * avg {
                    // A beat went missing: search the gap with the lower
                    // threshold and take the strongest skipped candidate.
                    let th2 = th1 / 2.0;
                    let found = candidates[..j]
                        .iter()
                        .filter(|&&(ci, cv)| ci >= last + refractory && ci < i && cv > th2)
                        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
                    if let Some(&(ci, cv)) = found {
                        push_accept(&mut accepted, &mut intervals, ci);
                        spk = 0.25 * cv + 0.75 * spk;
                        th1 = npk + 0.25 * (spk - npk);
                        continue;
                    }
                }
            }
        }
        if v > th1 {
            push_accept(&mut accepted, &mut intervals, i);
            spk = 0.125 * v + 0.875 * spk;
        } else {
            npk = 0.125 * v + 0.875 * npk;
        }
        th1 = npk + 0.25 * (spk - npk);
        j += 1;
    }

    // Map energy peaks back onto the raw record around the filter delay.
    let delay = t1 + t2 + 2 + w / 2;
    let mut peaks: Vec<usize> = Vec::with_capacity(accepted.len());
    for &i in &accepted {
        let center = i.saturating_sub(delay);
        let lo = center.saturating_sub(w);
        let hi = (center + w).min(samples.len() - 1);
        let mut best = lo;
        for s in lo..=hi {
            if samples[s] > samples[best] {
                best = s;
            }
        }
        match peaks.last() {
            Some(&prev) if best < prev + refractory => {}
            _ => peaks.push(best),
        }
    }

    if peaks.len() < 2 {
        return Err(Error::TooFewPeaks { found: peaks.len() });
    }
    Ok(peaks)
}
