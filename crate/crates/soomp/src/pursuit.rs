//! Simultaneous greedy pursuit over a shared dictionary.
//!
//! A [`SignalSet`] holds one or more equal-length signals with probability
//! weights. Each round of the pursuit scores every unused atom by the
//! weighted correlation energy it carries across the whole set and selects
//! the best one; the orthogonal variant ([`run_soomp`]) additionally divides
//! each score by the energy the atom keeps after projection away from the
//! span already selected, which favors atoms that bring genuinely new
//! directions. The plain variant ([`run_somp`]) scores by raw correlation
//! energy alone. Both share the same update machinery: an explicit
//! orthonormal basis grown by Gram-Schmidt with a single re-orthogonalization
//! pass, the matching biorthogonal dual vectors (which make the final
//! coefficients least-squares optimal on the selected support at every
//! step), and a correlation table maintained incrementally so one round
//! costs `O(MQ + NM + NQ)` instead of a fresh `O(NMQ)` correlation sweep.
//!
//! [`Pursuit`] exposes the stepping machinery directly for callers that want
//! to examine the state between rounds; the `run_*` drivers wrap it with a
//! stopping rule and an optional atom budget.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::dictionary::Dictionary;
use crate::error::Error;
use crate::vecmath;
use crate::Result;

/// An atom whose energy outside the selected span falls below this is
/// treated as dependent and never selected.
pub const EPS_DEPENDENCE: f64 = 1e-10;

/// Weighted signals sharing one ambient dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalSet {
    signals: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl SignalSet {
    /// Builds a set from equal-length signals. `weights` must be
    /// nonnegative and sum to one; `None` means uniform.
    pub fn new(signals: Vec<Vec<f64>>, weights: Option<Vec<f64>>) -> Result<Self> {
        if signals.is_empty() {
            return Err(Error::EmptySignalSet);
        }
        let len = signals[0].len();
        if len == 0 {
            return Err(Error::EmptySignal);
        }
        for s in &signals {
            if s.len() != len {
                return Err(Error::SignalLengthMismatch { expected: len, got: s.len() });
            }
            if !vecmath::all_finite(s) {
                return Err(Error::NonFinite("signal"));
            }
        }
        let weights = match weights {
            Some(w) => {
                if w.len() != signals.len() {
                    return Err(Error::WeightCountMismatch { signals: signals.len(), weights: w.len() });
                }
                let mut sum = 0.0;
                for (i, &p) in w.iter().enumerate() {
                    if !p.is_finite() {
                        return Err(Error::NonFinite("weight"));
                    }
                    if p < 0.0 {
                        return Err(Error::NegativeWeight { index: i });
                    }
                    sum += p;
                }
                if crate::math::abs(sum - 1.0) > 1e-9 {
                    return Err(Error::BadWeightSum { sum });
                }
                w
            }
            None => vec![1.0 / signals.len() as f64; signals.len()],
        };
        Ok(Self { signals, weights })
    }

    /// Single signal with weight one.
    pub fn single(signal: Vec<f64>) -> Result<Self> {
        Self::new(vec![signal], None)
    }

    pub fn count(&self) -> usize {
        self.signals.len()
    }

    /// Ambient dimension shared by every signal.
    pub fn len(&self) -> usize {
        self.signals[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn signal(&self, q: usize) -> &[f64] {
        &self.signals[q]
    }

    pub fn weight(&self, q: usize) -> f64 {
        self.weights[q]
    }
}

/// How the stopping tolerance is compared against the weighted residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopMode {
    /// Stop once `sum_q p_q ||r_q||^2 < tolerance`.
    SquaredEnergy,
    /// Stop once `sum_q p_q ||r_q|| < tolerance`.
    Norm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StopRule {
    pub mode: StopMode,
    pub tolerance: f64,
}

impl StopRule {
    pub fn squared_energy(tolerance: f64) -> Self {
        Self { mode: StopMode::SquaredEnergy, tolerance }
    }

    pub fn norm(tolerance: f64) -> Self {
        Self { mode: StopMode::Norm, tolerance }
    }

    fn validate(&self) -> Result<()> {
        if !self.tolerance.is_finite() || self.tolerance < 0.0 {
            return Err(Error::BadTolerance { value: self.tolerance });
        }
        Ok(())
    }

    fn met(&self, pursuit: &Pursuit<'_>) -> bool {
        match self.mode {
            StopMode::SquaredEnergy => pursuit.weighted_residual_sq() < self.tolerance,
            StopMode::Norm => pursuit.weighted_residual_norm() < self.tolerance,
        }
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The stopping rule was satisfied.
    Tolerance,
    /// The caller's atom budget was used up first.
    AtomBudget,
    /// Selection hit `min(ambient dimension, atom count)` first.
    SafetyCap,
    /// Every unused atom was dependent on the selected span; only appears on
    /// the partial result inside [`Error::DictionaryExhausted`].
    Exhausted,
}

/// Result of a pursuit run.
#[derive(Debug, Clone, PartialEq)]
pub struct Approximation {
    /// Selected atom indices in selection order.
    pub indices: Vec<usize>,
    /// Per-signal coefficient rows aligned with `indices`.
    pub coefficients: Vec<Vec<f64>>,
    /// Final residual norm of each signal.
    pub residual_norms: Vec<f64>,
    /// `sum_q p_q ||r_q||^2` at termination.
    pub weighted_residual_sq: f64,
    /// `sum_q p_q ||r_q||` at termination.
    pub weighted_residual_norm: f64,
    pub termination: Termination,
}

impl Approximation {
    pub fn atom_count(&self) -> usize {
        self.indices.len()
    }

    /// Rebuilds each signal's approximation as `sum_i c_q[i] * atom(indices[i])`.
    pub fn reconstruct(&self, dict: &Dictionary) -> Result<Vec<Vec<f64>>> {
        for &n in &self.indices {
            if n >= dict.atom_count() {
                return Err(Error::AtomOutOfRange { index: n, atoms: dict.atom_count() });
            }
        }
        let mut rows = Vec::with_capacity(self.coefficients.len());
        for coeffs in &self.coefficients {
            let mut row = vec![0.0; dict.len()];
            for (i, &n) in self.indices.iter().enumerate() {
                vecmath::axpy(&mut row, coeffs[i], dict.atom(n));
            }
            rows.push(row);
        }
        Ok(rows)
    }
}

/// Selection rule shared by the two entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scoring {
    Normalized,
    Plain,
}

/// Incremental pursuit state over a borrowed dictionary and signal set.
pub struct Pursuit<'a> {
    dict: &'a Dictionary,
    signals: &'a SignalSet,
    scoring: Scoring,
    selected: Vec<usize>,
    used: Vec<bool>,
    /// Orthonormal basis of the selected span, in selection order.
    basis: Vec<Vec<f64>>,
    /// Biorthogonal duals of the selected atoms, in selection order.
    duals: Vec<Vec<f64>>,
    residuals: Vec<Vec<f64>>,
    /// `corr[n * Q + q] = <atom n, residual q>`, updated in place each round.
    corr: Vec<f64>,
    /// `dep[n] = sum_i <atom n, basis i>^2`.
    dep: Vec<f64>,
}

impl<'a> Pursuit<'a> {
    fn with_scoring(dict: &'a Dictionary, signals: &'a SignalSet, scoring: Scoring) -> Result<Self> {
        if dict.is_empty() {
            return Err(Error::EmptyDictionary);
        }
        if dict.len() != signals.len() {
            return Err(Error::SignalDictionaryMismatch { atom_len: dict.len(), signal_len: signals.len() });
        }
        let n_atoms = dict.atom_count();
        let q_count = signals.count();
        let mut corr = Vec::with_capacity(n_atoms * q_count);
        for n in 0..n_atoms {
            let atom = dict.atom(n);
            for q in 0..q_count {
                corr.push(vecmath::dot(atom, signals.signal(q)));
            }
        }
        let residuals = (0..q_count).map(|q| signals.signal(q).to_vec()).collect();
        Ok(Self {
            dict,
            signals,
            scoring,
            selected: Vec::new(),
            used: vec![false; n_atoms],
            basis: Vec::new(),
            duals: Vec::new(),
            residuals,
            corr,
            dep: vec![0.0; n_atoms],
        })
    }

    /// State for the span-normalized selection rule.
    pub fn new(dict: &'a Dictionary, signals: &'a SignalSet) -> Result<Self> {
        Self::with_scoring(dict, signals, Scoring::Normalized)
    }

    /// State for the raw correlation-energy selection rule.
    pub fn new_plain(dict: &'a Dictionary, signals: &'a SignalSet) -> Result<Self> {
        Self::with_scoring(dict, signals, Scoring::Plain)
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn residual(&self, q: usize) -> &[f64] {
        &self.residuals[q]
    }

    /// Largest number of atoms a run may select.
    pub fn safety_cap(&self) -> usize {
        self.dict.len().min(self.dict.atom_count())
    }

    pub fn weighted_residual_sq(&self) -> f64 {
        let mut acc = 0.0;
        for q in 0..self.signals.count() {
            acc += self.signals.weight(q) * vecmath::norm_sq(&self.residuals[q]);
        }
        acc
    }

    pub fn weighted_residual_norm(&self) -> f64 {
        let mut acc = 0.0;
        for q in 0..self.signals.count() {
            acc += self.signals.weight(q) * vecmath::norm(&self.residuals[q]);
        }
        acc
    }

    fn pick(&self) -> Result<(usize, f64)> {
        let q_count = self.signals.count();
        let mut best: Option<(usize, f64)> = None;
        for n in 0..self.dict.atom_count() {
            if self.used[n] {
                continue;
            }
            let outside = 1.0 - self.dep[n];
            if outside <= EPS_DEPENDENCE {
                continue;
            }
            let mut num = 0.0;
            for q in 0..q_count {
                let c = self.corr[n * q_count + q];
                num += self.signals.weight(q) * c * c;
            }
            let score = match self.scoring {
                Scoring::Normalized => num / outside,
                Scoring::Plain => num,
            };
            match best {
                Some((_, s)) if score <= s => {}
                _ => best = Some((n, score)),
            }
        }
        best.ok_or(Error::DictionaryExhausted { partial: None })
    }

    /// The atom the next [`step`](Self::step) would take, with its selection
    /// score, leaving the state untouched.
    pub fn peek(&self) -> Result<(usize, f64)> {
        self.pick()
    }

    /// Duals built so far, one per selected atom, in selection order.
    pub fn dual(&self, i: usize) -> &[f64] {
        &self.duals[i]
    }

    /// Runs one selection round and returns the chosen atom index.
    pub fn step(&mut self) -> Result<usize> {
        let (chosen, _) = self.pick()?;
        let atom = self.dict.atom(chosen);

        // Gram-Schmidt against the current basis, then one
        // re-orthogonalization pass to keep the basis numerically tight.
        let mut w = atom.to_vec();
        for _ in 0..2 {
            for b in &self.basis {
                let c = vecmath::dot(b, &w);
                vecmath::axpy(&mut w, -c, b);
            }
        }
        let norm_sq = vecmath::norm_sq(&w);
        if norm_sq <= EPS_DEPENDENCE {
            return Err(Error::DegenerateAtom { index: chosen });
        }
        let norm = crate::math::sqrt(norm_sq);
        vecmath::scale(&mut w, 1.0 / norm);

        // New dual is w / ||w before normalization||; existing duals shed
        // their component along the new atom.
        let mut new_dual = w.clone();
        vecmath::scale(&mut new_dual, 1.0 / norm);
        for dual in &mut self.duals {
            let c = vecmath::dot(atom, dual);
            vecmath::axpy(dual, -c, &new_dual);
        }
        self.duals.push(new_dual);

        // Project the residuals onto the new direction and fold the same
        // rank-one update into the correlation table.
        let q_count = self.signals.count();
        let mut v = Vec::with_capacity(q_count);
        for q in 0..q_count {
            let c = vecmath::dot(&w, &self.residuals[q]);
            vecmath::axpy(&mut self.residuals[q], -c, &w);
            v.push(c);
        }
        for n in 0..self.dict.atom_count() {
            let u = vecmath::dot(self.dict.atom(n), &w);
            self.dep[n] += u * u;
            for q in 0..q_count {
                self.corr[n * q_count + q] -= u * v[q];
            }
        }

        self.basis.push(w);
        self.used[chosen] = true;
        self.selected.push(chosen);
        Ok(chosen)
    }

    /// Snapshot of the run so far. Coefficients come from the duals, so each
    /// signal's row solves the least-squares problem on the selected support.
    pub fn finish(&self, termination: Termination) -> Approximation {
        let q_count = self.signals.count();
        let mut coefficients = Vec::with_capacity(q_count);
        let mut residual_norms = Vec::with_capacity(q_count);
        for q in 0..q_count {
            let f = self.signals.signal(q);
            coefficients.push(self.duals.iter().map(|d| vecmath::dot(d, f)).collect());
            residual_norms.push(vecmath::norm(&self.residuals[q]));
        }
        Approximation {
            indices: self.selected.clone(),
            coefficients,
            residual_norms,
            weighted_residual_sq: self.weighted_residual_sq(),
            weighted_residual_norm: self.weighted_residual_norm(),
            termination,
        }
    }
}

fn drive(
    dict: &Dictionary,
    signals: &SignalSet,
    stop: StopRule,
    max_atoms: Option<usize>,
    scoring: Scoring,
) -> Result<Approximation> {
    stop.validate()?;
    let mut pursuit = Pursuit::with_scoring(dict, signals, scoring)?;
    let cap = pursuit.safety_cap();
    let budget = max_atoms.map_or(cap, |b| b.min(cap));
    loop {
        if stop.met(&pursuit) {
            return Ok(pursuit.finish(Termination::Tolerance));
        }
        if pursuit.selected().len() >= budget {
            let termination = match max_atoms {
                Some(b) if b <= cap => Termination::AtomBudget,
                _ => Termination::SafetyCap,
            };
            return Ok(pursuit.finish(termination));
        }
        match pursuit.step() {
            Ok(_) => {}
            Err(Error::DictionaryExhausted { .. }) => {
                return Err(Error::DictionaryExhausted {
                    partial: Some(Box::new(pursuit.finish(Termination::Exhausted))),
                });
            }
            Err(e) => return Err(e),
        }
    }
}

/// Simultaneous pursuit with span-normalized selection.
pub fn run_soomp(
    dict: &Dictionary,
    signals: &SignalSet,
    stop: StopRule,
    max_atoms: Option<usize>,
) -> Result<Approximation> {
    drive(dict, signals, stop, max_atoms, Scoring::Normalized)
}

/// Simultaneous pursuit scoring atoms by raw correlation energy.
pub fn run_somp(
    dict: &Dictionary,
    signals: &SignalSet,
    stop: StopRule,
    max_atoms: Option<usize>,
) -> Result<Approximation> {
    drive(dict, signals, stop, max_atoms, Scoring::Plain)
}
