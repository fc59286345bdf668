//! Helpers shared by the integration suites: a synthetic ECG generator and
//! small dense linear-algebra oracles the acceptance checks compare against.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// ECG-like record: Gaussian QRS spikes with T and P side bumps over slow
/// baseline wander, plus a little noise and a DC offset. Returns the
/// samples and the spike apex positions.
pub fn ecg_with_peaks(seconds: f64, fs: f64, seed: u64) -> (Vec<f64>, Vec<usize>) {
    let n = (seconds * fs) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut clean = vec![0.0f64; n];
    let mut peaks = Vec::new();

    let bump = |sig: &mut Vec<f64>, center: f64, sigma: f64, amp: f64| {
        let lo = ((center - 5.0 * sigma).max(0.0)) as usize;
        let hi = ((center + 5.0 * sigma) as usize).min(sig.len().saturating_sub(1));
        for i in lo..=hi {
            let d = i as f64 - center;
            sig[i] += amp * (-d * d / (2.0 * sigma * sigma)).exp();
        }
    };

    let mut t = 0.5;
    while t < seconds - 0.6 {
        let center = t * fs;
        let amp = 0.8 + 0.4 * rng.gen::<f64>();
        bump(&mut clean, center, (0.011 + 0.003 * rng.gen::<f64>()) * fs, amp);
        bump(
            &mut clean,
            center + (0.22 + 0.05 * rng.gen::<f64>()) * fs,
            (0.045 + 0.01 * rng.gen::<f64>()) * fs,
            0.22 * amp,
        );
        bump(
            &mut clean,
            center - (0.10 + 0.04 * rng.gen::<f64>()) * fs,
            (0.025 + 0.01 * rng.gen::<f64>()) * fs,
            0.12 * amp,
        );
        peaks.push(center.round() as usize);
        t += 0.72 + 0.2 * rng.gen::<f64>();
    }

    let samples = clean
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let tt = i as f64 / fs;
            v + 0.08 * (2.0 * core::f64::consts::PI * 0.31 * tt).sin()
                + 0.03 * (2.0 * core::f64::consts::PI * 0.113 * tt).sin()
                + 0.008 * rng.gen_range(-1.0..1.0)
                + 0.9
        })
        .collect();
    (samples, peaks)
}

pub fn write_csv(path: &std::path::Path, samples: &[f64]) {
    let mut text = String::with_capacity(samples.len() * 12);
    for v in samples {
        text.push_str(&format!("{v:.9}\n"));
    }
    std::fs::write(path, text).unwrap();
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn random_unit_atoms(ambient: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| {
            let mut atom: Vec<f64> = (0..ambient).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let scale = 1.0 / norm(&atom);
            for v in &mut atom {
                *v *= scale;
            }
            atom
        })
        .collect()
}

pub fn random_signals(ambient: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| (0..ambient).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect()
}

/// Gram-Schmidt with a re-orthogonalization pass; panics if the input is
/// rank-deficient, which random test bases never are.
pub fn orthonormal_atoms(ambient: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    assert!(count <= ambient);
    let raw = random_unit_atoms(ambient, count, rng);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(count);
    for atom in raw {
        let mut v = atom;
        for _ in 0..2 {
            for w in &basis {
                let c = dot(&v, w);
                for (vi, wi) in v.iter_mut().zip(w) {
                    *vi -= c * wi;
                }
            }
        }
        let len = norm(&v);
        assert!(len > 1e-8, "random basis degenerated");
        for vi in &mut v {
            *vi /= len;
        }
        basis.push(v);
    }
    basis
}

/// Solves the dense system `a x = b` by Gaussian elimination with partial
/// pivoting. Returns None when a pivot collapses.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in col + 1..n {
            acc -= a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Some(x)
}

/// Least-squares coefficients of `signal` on the span of `basis`, via the
/// normal equations. None when the basis is numerically dependent.
pub fn lstsq(basis: &[&[f64]], signal: &[f64]) -> Option<Vec<f64>> {
    let k = basis.len();
    let gram: Vec<Vec<f64>> = (0..k)
        .map(|i| (0..k).map(|j| dot(basis[i], basis[j])).collect())
        .collect();
    let rhs: Vec<f64> = basis.iter().map(|atom| dot(atom, signal)).collect();
    solve(gram, rhs)
}

/// Orthogonal projection of `signal` onto the span of `basis`.
pub fn project(basis: &[&[f64]], signal: &[f64]) -> Option<Vec<f64>> {
    let coeffs = lstsq(basis, signal)?;
    let mut out = vec![0.0; signal.len()];
    for (c, atom) in coeffs.iter().zip(basis) {
        for (o, a) in out.iter_mut().zip(*atom) {
            *o += c * a;
        }
    }
    Some(out)
}

/// `sum_q w_q * ||f_q - P f_q||^2` for the projection onto `basis`.
pub fn weighted_projection_error(
    basis: &[&[f64]],
    signals: &[Vec<f64>],
    weights: &[f64],
) -> Option<f64> {
    let mut total = 0.0;
    for (signal, w) in signals.iter().zip(weights) {
        let p = project(basis, signal)?;
        let err: f64 = signal.iter().zip(&p).map(|(f, a)| (f - a) * (f - a)).sum();
        total += w * err;
    }
    Some(total)
}

/// Textbook optimized orthogonal matching pursuit on a single signal,
/// written independently of the library: normalized correlation criterion,
/// Gram-Schmidt duals, lowest index on ties.
pub fn oracle_oomp(atoms: &[Vec<f64>], signal: &[f64], steps: usize) -> Vec<usize> {
    let m = atoms.len();
    let mut residual = signal.to_vec();
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    let mut selected = Vec::new();
    let mut used = vec![false; m];

    for _ in 0..steps {
        let mut best: Option<(usize, f64)> = None;
        for (n, atom) in atoms.iter().enumerate() {
            if used[n] {
                continue;
            }
            let projected: f64 = ortho.iter().map(|w| dot(atom, w).powi(2)).sum();
            let denom = 1.0 - projected;
            if denom < 1e-10 {
                continue;
            }
            let score = dot(atom, &residual).powi(2) / denom;
            let better = match best {
                None => true,
                Some((_, s)) => score > s,
            };
            if better {
                best = Some((n, score));
            }
        }
        let Some((pick, _)) = best else { break };
        used[pick] = true;
        selected.push(pick);

        let mut w = atoms[pick].clone();
        for _ in 0..2 {
            for existing in &ortho {
                let c = dot(&w, existing);
                for (wi, ei) in w.iter_mut().zip(existing) {
                    *wi -= c * ei;
                }
            }
        }
        let len = norm(&w);
        if len < 1e-12 {
            selected.pop();
            used[pick] = false;
            break;
        }
        for wi in &mut w {
            *wi /= len;
        }
        let c = dot(&w, &residual);
        for (r, wi) in residual.iter_mut().zip(&w) {
            *r -= c * wi;
        }
        ortho.push(w);
    }
    selected
}
