//! CDF 9/7 spline wavelet dictionary.
//!
//! Prototype curves for the analysis scaling function and wavelet come from
//! the cascade refinement of the 9/7 analysis filter pair, run for
//! [`CASCADE_ITERS`] rounds, which leaves both curves tabulated on a dyadic
//! grid of step `2^-CASCADE_ITERS`. Atoms are half-step translates of the
//! scaling function plus dyadically scaled wavelet translates up to
//! `max_level`, restricted to a grid of `len` points whose spacing is
//! `2^-(max_level + 1)` in prototype units. With that spacing the finest
//! wavelet scale contributes about one atom per grid point and each coarser
//! scale half as many, so the family carries roughly `2 * len` atoms, and
//! every sample of every atom falls exactly on the tabulated dyadic grid
//! (pure integer index arithmetic, no interpolation).
//!
//! Translates are kept when their support midpoint lies inside the grid
//! interval; boundary atoms are therefore truncated and renormalized rather
//! than wrapped. Near-empty truncations are dropped by the norm threshold in
//! [`normalize_or_discard`](super::normalize_or_discard).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::math;
use crate::Result;

/// Cascade refinement rounds; also the table resolution exponent.
pub(super) const CASCADE_ITERS: u32 = 8;

const STEP: f64 = 1.0 / (1 << CASCADE_ITERS) as f64;

/// Analysis lowpass taps (9/7 pair, DC gain one), offsets -4..=4.
const LOWPASS: [(i64, f64); 9] = [
    (-4, 0.026_748_757_410_810),
    (-3, -0.016_864_118_442_875),
    (-2, -0.078_223_266_528_990),
    (-1, 0.266_864_118_442_875),
    (0, 0.602_949_018_236_360),
    (1, 0.266_864_118_442_875),
    (2, -0.078_223_266_528_990),
    (3, -0.016_864_118_442_875),
    (4, 0.026_748_757_410_810),
];

/// Synthesis lowpass taps, offsets -3..=3; the analysis highpass below is
/// its alternating-sign mirror.
const LOWPASS_DUAL: [(i64, f64); 7] = [
    (-3, -0.045_635_881_557_125),
    (-2, -0.028_771_763_114_250),
    (-1, 0.295_635_881_557_125),
    (0, 0.557_543_526_228_500),
    (1, 0.295_635_881_557_125),
    (2, -0.028_771_763_114_250),
    (3, -0.045_635_881_557_125),
];

/// A curve tabulated on the dyadic grid: entry `j` holds the value at
/// `(min_index + j) * 2^-CASCADE_ITERS`.
pub(super) struct Curve {
    pub(super) min_index: i64,
    pub(super) values: Vec<f64>,
}

impl Curve {
    fn at(&self, index: i64) -> f64 {
        let j = index - self.min_index;
        if j < 0 || j as usize >= self.values.len() {
            0.0
        } else {
            self.values[j as usize]
        }
    }

    fn max_index(&self) -> i64 {
        self.min_index + self.values.len() as i64 - 1
    }

    /// Support midpoint in table index units.
    fn center(&self) -> f64 {
        (self.min_index + self.max_index()) as f64 / 2.0
    }
}

/// One two-scale refinement: given samples of a curve on a grid of step
/// `2^-m` (tap offsets scaled by `tap_stride = 2^m`), produce the curve the
/// filter maps it to on the grid of step `2^-(m+1)`.
fn refine(old: &Curve, taps: &[(i64, f64)], tap_stride: i64) -> Curve {
    let n_min = taps.iter().map(|t| t.0).min().unwrap();
    let n_max = taps.iter().map(|t| t.0).max().unwrap();
    let new_min = old.min_index + n_min * tap_stride;
    let new_max = old.max_index() + n_max * tap_stride;
    let mut values = Vec::with_capacity((new_max - new_min + 1) as usize);
    for j in new_min..=new_max {
        let mut acc = 0.0;
        for &(n, h) in taps {
            acc += h * old.at(j - n * tap_stride);
        }
        values.push(2.0 * acc);
    }
    Curve { min_index: new_min, values }
}

/// Tabulated analysis scaling function and wavelet.
pub(super) fn prototypes() -> (Curve, Curve) {
    let mut phi = Curve { min_index: 0, values: vec![1.0] };
    for m in 0..CASCADE_ITERS {
        phi = refine(&phi, &LOWPASS, 1 << m);
    }

    let highpass: Vec<(i64, f64)> = LOWPASS_DUAL
        .iter()
        .map(|&(n, h)| {
            let m = 1 - n;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            (m, sign * h)
        })
        .collect();

    let res = 1i64 << CASCADE_ITERS;
    let n_min = highpass.iter().map(|t| t.0).min().unwrap();
    let n_max = highpass.iter().map(|t| t.0).max().unwrap();
    let psi_min = (phi.min_index + n_min * res).div_euclid(2);
    let psi_max = (phi.max_index() + n_max * res).div_euclid(2);
    let mut values = Vec::with_capacity((psi_max - psi_min + 1) as usize);
    for j in psi_min..=psi_max {
        let mut acc = 0.0;
        for &(n, g) in &highpass {
            acc += g * phi.at(2 * j - n * res);
        }
        values.push(2.0 * acc);
    }
    (phi, Curve { min_index: psi_min, values })
}

pub(super) fn build_cdf97(len: usize, max_level: u8) -> Result<Vec<f64>> {
    if max_level > 4 {
        return Err(Error::UnsupportedLevel { level: max_level });
    }
    if len < 16 {
        return Err(Error::GridTooShort { len });
    }

    let (phi, psi) = prototypes();
    let level = u32::from(max_level);
    // Grid spacing 2^-(level+1) in prototype units; interval end in the same
    // units, then in half-translate units for the range computations below.
    let interval_end = (len - 1) as f64 / (1u64 << (level + 1)) as f64;

    let mut atoms: Vec<Vec<f64>> = Vec::new();

    // Scaling-function translates: phi(x_i - k/2).
    let stride = 1i64 << (CASCADE_ITERS - (level + 1));
    let half = 1i64 << (CASCADE_ITERS - 1);
    let center = phi.center() * STEP;
    let k_min = ceil_i64(-2.0 * center);
    let k_max = floor_i64(2.0 * (interval_end - center));
    let mut group: Vec<Vec<f64>> = Vec::new();
    for k in k_min..=k_max {
        let mut atom = Vec::with_capacity(len);
        for i in 0..len as i64 {
            atom.push(phi.at(i * stride - k * half));
        }
        group.push(atom);
    }
    atoms.extend(super::normalize_or_discard(group));

    // Wavelet translates per scale: 2^(j/2) psi(2^j x_i - k/2).
    for j in 0..=level {
        let stride = 1i64 << (CASCADE_ITERS + j - (level + 1));
        let amp = math::sqrt((1u64 << j) as f64);
        let center = psi.center() * STEP;
        let k_min = ceil_i64(-2.0 * center);
        let k_max = floor_i64(2.0 * ((1u64 << j) as f64 * interval_end - center));
        let mut group: Vec<Vec<f64>> = Vec::new();
        for k in k_min..=k_max {
            let mut atom = Vec::with_capacity(len);
            for i in 0..len as i64 {
                atom.push(amp * psi.at(i * stride - k * half));
            }
            group.push(atom);
        }
        atoms.extend(super::normalize_or_discard(group));
    }

    if atoms.is_empty() {
        return Err(Error::EmptyDictionary);
    }
    let mut data = Vec::with_capacity(atoms.len() * len);
    for atom in atoms {
        data.extend_from_slice(&atom);
    }
    Ok(data)
}

fn ceil_i64(x: f64) -> i64 {
    -floor_i64(-x)
}

fn floor_i64(x: f64) -> i64 {
    math::floor(x) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::Dictionary;

    #[test]
    fn cascade_preserves_mass() {
        let (phi, psi) = prototypes();
        let phi_mass: f64 = phi.values.iter().sum::<f64>() * STEP;
        let psi_mass: f64 = psi.values.iter().sum::<f64>() * STEP;
        assert!((phi_mass - 1.0).abs() < 1e-12, "phi mass {phi_mass}");
        assert!(psi_mass.abs() < 1e-12, "psi mass {psi_mass}");
    }

    #[test]
    fn prototype_supports_match_the_filter_pair() {
        let (phi, psi) = prototypes();
        let lo = phi.min_index as f64 * STEP;
        let hi = phi.max_index() as f64 * STEP;
        assert!(lo > -4.01 && lo < -3.9, "phi starts at {lo}");
        assert!(hi < 4.01 && hi > 3.9, "phi ends at {hi}");
        let lo = psi.min_index as f64 * STEP;
        let hi = psi.max_index() as f64 * STEP;
        assert!(lo > -3.01 && lo < -2.9, "psi starts at {lo}");
        assert!(hi < 4.01 && hi > 3.9, "psi ends at {hi}");
    }

    #[test]
    fn atom_count_is_about_twice_the_grid() {
        for len in [64usize, 128] {
            let d = Dictionary::cdf97(len, 4).unwrap();
            let count = d.atom_count();
            assert!(
                count * 2 >= 3 * len && count <= 3 * len,
                "{count} atoms for {len} grid points"
            );
        }
    }

    #[test]
    fn atom_count_snapshot() {
        assert_eq!(Dictionary::cdf97(64, 4).unwrap().atom_count(), 128);
    }

    #[test]
    fn atoms_are_unit_norm_and_nonzero() {
        let d = Dictionary::cdf97(64, 4).unwrap();
        for n in 0..d.atom_count() {
            let norm = crate::vecmath::norm(d.atom(n));
            assert!((norm - 1.0).abs() < 1e-12, "atom {n} norm {norm}");
        }
    }

    #[test]
    fn build_is_deterministic() {
        assert_eq!(Dictionary::cdf97(96, 3).unwrap(), Dictionary::cdf97(96, 3).unwrap());
    }

    #[test]
    fn rejects_unsupported_parameters() {
        assert_eq!(Dictionary::cdf97(64, 5), Err(Error::UnsupportedLevel { level: 5 }));
        assert_eq!(Dictionary::cdf97(8, 2), Err(Error::GridTooShort { len: 8 }));
    }

    #[test]
    fn spans_the_whole_space() {
        let len = 32;
        let d = Dictionary::cdf97(len, 4).unwrap();
        let mut rows: Vec<Vec<f64>> = (0..d.atom_count()).map(|n| d.atom(n).to_vec()).collect();
        // Gaussian elimination rank over the atom rows.
        let mut rank = 0;
        for col in 0..len {
            let pivot = (rank..rows.len())
                .max_by(|&a, &b| rows[a][col].abs().partial_cmp(&rows[b][col].abs()).unwrap());
            let Some(p) = pivot else { break };
            if rows[p][col].abs() < 1e-9 {
                continue;
            }
            rows.swap(rank, p);
            for r in rank + 1..rows.len() {
                let f = rows[r][col] / rows[rank][col];
                for c in col..len {
                    let v = rows[rank][c];
                    rows[r][c] -= f * v;
                }
            }
            rank += 1;
        }
        assert_eq!(rank, len);
    }
}
