//! Redundant cosine and sine atom builders.
//!
//! Atom `n` of the cosine family samples a cosine whose discrete frequency
//! is tied to the atom count `M` rather than the atom length `L`, so taking
//! `M > L` oversamples the frequency axis; `M == L` recovers the orthonormal
//! cosine (respectively sine) basis.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::Error;
use crate::math;
use crate::vecmath;
use crate::Result;

fn check_size(len: usize, atoms: usize) -> Result<()> {
    if len == 0 || atoms == 0 {
        return Err(Error::InvalidDictionarySize { atoms, len });
    }
    Ok(())
}

fn build_family(len: usize, atoms: usize, entry: impl Fn(usize, usize) -> f64) -> Vec<f64> {
    let mut data = Vec::with_capacity(len * atoms);
    for n in 1..=atoms {
        let start = data.len();
        for i in 1..=len {
            data.push(entry(i, n));
        }
        let atom = &mut data[start..];
        let norm = vecmath::norm(atom);
        vecmath::scale(atom, 1.0 / norm);
    }
    data
}

pub(super) fn build_rdct(len: usize, atoms: usize) -> Result<Vec<f64>> {
    check_size(len, atoms)?;
    let denom = 2.0 * atoms as f64;
    Ok(build_family(len, atoms, |i, n| {
        math::cos(PI * ((2 * i - 1) * (n - 1)) as f64 / denom)
    }))
}

pub(super) fn build_rdst(len: usize, atoms: usize) -> Result<Vec<f64>> {
    check_size(len, atoms)?;
    let denom = 2.0 * atoms as f64;
    Ok(build_family(len, atoms, |i, n| {
        math::sin(PI * ((2 * i - 1) * n) as f64 / denom)
    }))
}

#[cfg(test)]
mod tests {
    use crate::dictionary::Dictionary;
    use crate::error::Error;
    use crate::vecmath;

    #[test]
    fn first_cosine_atom_is_constant() {
        let d = Dictionary::rdct(8, 8).unwrap();
        let expected = 1.0 / 8f64.sqrt();
        for &v in d.atom(0) {
            assert!((v - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn all_atoms_unit_norm() {
        for d in [Dictionary::rdct(16, 40).unwrap(), Dictionary::rdst(16, 40).unwrap()] {
            for n in 0..d.atom_count() {
                assert!((vecmath::norm(d.atom(n)) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn square_families_are_orthonormal_bases() {
        for d in [Dictionary::rdct(8, 8).unwrap(), Dictionary::rdst(8, 8).unwrap()] {
            for a in 0..8 {
                for b in 0..8 {
                    let g = vecmath::dot(d.atom(a), d.atom(b));
                    let expected = if a == b { 1.0 } else { 0.0 };
                    assert!(
                        (g - expected).abs() < 1e-10,
                        "gram[{a}][{b}] = {g} for {:?}",
                        d.kind()
                    );
                }
            }
        }
    }

    #[test]
    fn highest_sine_atom_alternates() {
        let d = Dictionary::rdst(4, 8).unwrap();
        let top = d.atom(7);
        for (i, &v) in top.iter().enumerate() {
            let expected = if i % 2 == 0 { 0.5 } else { -0.5 };
            assert!((v - expected).abs() < 1e-12, "entry {i} = {v}");
        }
    }

    #[test]
    fn audio_sized_family_has_requested_shape() {
        let d = Dictionary::rdct(1024, 2048).unwrap();
        assert_eq!(d.atom_count(), 2048);
        assert_eq!(d.len(), 1024);
    }

    #[test]
    fn builds_are_deterministic() {
        assert_eq!(Dictionary::rdst(33, 71).unwrap(), Dictionary::rdst(33, 71).unwrap());
    }

    #[test]
    fn zero_dimensions_rejected() {
        assert_eq!(
            Dictionary::rdct(0, 4),
            Err(Error::InvalidDictionarySize { atoms: 4, len: 0 })
        );
        assert_eq!(
            Dictionary::rdst(4, 0),
            Err(Error::InvalidDictionarySize { atoms: 0, len: 4 })
        );
    }
}
