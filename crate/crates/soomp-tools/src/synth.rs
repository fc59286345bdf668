//! Seeded signal generators for benchmarks and demos.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A stereo pair sharing one harmonic structure: the right channel is the
/// left under a small gain mismatch plus independent low-level noise, so a
/// joint approximation can reuse almost every atom across channels.
pub fn stereo_similar(samples: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let voices = 6;
    let params: Vec<(f64, f64, f64)> = (0..voices)
        .map(|_| {
            (
                rng.gen_range(0.002..0.2),
                rng.gen_range(0.0..core::f64::consts::TAU),
                rng.gen_range(0.1..0.5),
            )
        })
        .collect();
    let gain = 1.0 + rng.gen_range(-0.05..0.05);
    let mut left = Vec::with_capacity(samples);
    let mut right = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = i as f64;
        let mut v = 0.0;
        for &(freq, phase, amp) in &params {
            v += amp * (core::f64::consts::TAU * freq * t + phase).sin();
        }
        let l = v + 0.01 * rng.gen_range(-1.0..1.0);
        let r = gain * v + 0.01 * rng.gen_range(-1.0..1.0);
        left.push(l);
        right.push(r);
    }
    (left, right)
}

/// A random dictionary of unit-norm atoms and a matching set of dense
/// random signals, for the pursuit demo.
pub fn random_instance(
    ambient: usize,
    atoms: usize,
    signals: usize,
    seed: u64,
) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dict = Vec::with_capacity(atoms);
    for _ in 0..atoms {
        let mut atom: Vec<f64> = (0..ambient).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = atom.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut atom {
            *v /= norm;
        }
        dict.push(atom);
    }
    let sigs = (0..signals)
        .map(|_| (0..ambient).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    (dict, sigs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn channels_share_their_structure() {
        let (left, right) = stereo_similar(2048, 5);
        assert_eq!(left.len(), 2048);
        let dot: f64 = left.iter().zip(&right).map(|(a, b)| a * b).sum();
        let el: f64 = left.iter().map(|v| v * v).sum();
        let er: f64 = right.iter().map(|v| v * v).sum();
        let correlation = dot / (el * er).sqrt();
        assert!(correlation > 0.99, "correlation {correlation}");
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(stereo_similar(256, 9), stereo_similar(256, 9));
        let (d1, s1) = random_instance(8, 16, 2, 3);
        let (d2, s2) = random_instance(8, 16, 2, 3);
        assert_eq!(d1, d2);
        assert_eq!(s1, s2);
    }
}
