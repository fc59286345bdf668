//! Orthonormal type-II discrete cosine transform.
//!
//! The forward direction maps `x` to
//! `X[m] = a(m) * sum_i x[i] * cos(pi * (2i+1) * m / (2n))` with
//! `a(0) = sqrt(1/n)` and `a(m) = sqrt(2/n)` otherwise, which makes the
//! transform matrix orthonormal, so the inverse is its transpose. A plan
//! caches `cos(pi * j / (2n))` for `j < 4n`; every angle the transform needs
//! reduces to one of those because `(2i+1) * m` advances by `2m` as `i`
//! steps, all modulo the cosine's `4n` period. That keeps repeated
//! applications (the codec applies one plan to every column of a
//! coefficient matrix, many times during its tolerance search) free of any
//! trigonometric calls.

use alloc::vec::Vec;

use crate::error::Error;
use crate::math;
use crate::Result;

/// Reusable transform plan for signals of one fixed length.
#[derive(Debug, Clone)]
pub struct Dct {
    n: usize,
    table: Vec<f64>,
    scale_first: f64,
    scale_rest: f64,
}

impl Dct {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySignal);
        }
        let mut table = Vec::with_capacity(4 * n);
        for j in 0..4 * n {
            table.push(math::cos(core::f64::consts::PI * j as f64 / (2.0 * n as f64)));
        }
        Ok(Self {
            n,
            table,
            scale_first: math::sqrt(1.0 / n as f64),
            scale_rest: math::sqrt(2.0 / n as f64),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::SignalLengthMismatch { expected: self.n, got: x.len() });
        }
        Ok(())
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check(x)?;
        let period = 4 * self.n;
        let mut out = Vec::with_capacity(self.n);
        for m in 0..self.n {
            let step = (2 * m) % period;
            let mut idx = m;
            let mut acc = 0.0;
            for &v in x {
                acc += v * self.table[idx];
                idx += step;
                if idx >= period {
                    idx -= period;
                }
            }
            let scale = if m == 0 { self.scale_first } else { self.scale_rest };
            out.push(scale * acc);
        }
        Ok(out)
    }

    pub fn inverse(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check(x)?;
        let period = 4 * self.n;
        let mut out = alloc::vec![0.0; self.n];
        for m in 0..self.n {
            let scale = if m == 0 { self.scale_first } else { self.scale_rest };
            let v = scale * x[m];
            let step = (2 * m) % period;
            let mut idx = m;
            for o in out.iter_mut() {
                *o += v * self.table[idx];
                idx += step;
                if idx >= period {
                    idx -= period;
                }
            }
        }
        Ok(out)
    }
}
