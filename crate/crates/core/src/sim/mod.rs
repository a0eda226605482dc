//! Dense statevector simulation.
//!
//! Basis convention used throughout the crate: bit `i` of a basis index is
//! the value of qubit `i`, so qubit 0 is the least-significant bit. When a
//! two-qubit door register `(hi, lo)` is read as a ket `|hi lo⟩`, the first
//! listed qubit is the high bit.

mod dist;
mod op;

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use rand::Rng;

pub use dist::{format_bits, Distribution};
pub use op::{Amplitude, ControlSpec, GateKind, GateOp, Matrix2, Polarity};

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 16;

/// Probabilities (and squared amplitudes) at or below this are treated as zero.
pub const NOISE_FLOOR: f64 = 1e-12;

/// Default threshold for [`StateVector::support`].
pub const SUPPORT_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Amplitude>,
}

impl StateVector {
    /// All-zero register `|0…0⟩`.
    pub fn new(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    /// Computational basis state with the given index.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::Size(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::validation(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Wraps an explicit amplitude vector. It must have length `2^n` and unit norm.
    pub fn from_amplitudes(amps: Vec<Amplitude>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::validation(format!(
                "amplitude vector length {dim} is not a power of two >= 2"
            )));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(Error::Size(n_qubits));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::validation("non-finite amplitude"));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::validation(format!("state norm {norm} is not 1")));
        }
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Amplitude {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest elementwise amplitude difference. Panics on size mismatch.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        assert_eq!(self.n_qubits, other.n_qubits, "register size mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Applies `g` in place.
    pub fn apply(&mut self, g: &GateOp) -> Result<()> {
        g.validate_for(self.n_qubits)?;
        let (pos_mask, neg_mask) = g
            .controls()
            .iter()
            .fold((0usize, 0usize), |(p, n), c| match c.polarity {
                Polarity::Positive => (p | 1 << c.qubit, n),
                Polarity::Negative => (p, n | 1 << c.qubit),
            });
        let tbit = 1usize << g.target();
        let [[u00, u01], [u10, u11]] = *g.matrix();
        for i in 0..self.amps.len() {
            if i & tbit != 0 || i & pos_mask != pos_mask || i & neg_mask != 0 {
                continue;
            }
            let j = i | tbit;
            let (a, b) = (self.amps[i], self.amps[j]);
            self.amps[i] = u00 * a + u01 * b;
            self.amps[j] = u10 * a + u11 * b;
        }
        Ok(())
    }

    /// Returns a new state with `g` applied.
    pub fn apply_gate(&self, g: &GateOp) -> Result<Self> {
        let mut next = self.clone();
        next.apply(g)?;
        Ok(next)
    }

    /// Applies every gate of `ops` in order.
    pub fn apply_all<'a>(&mut self, ops: impl IntoIterator<Item = &'a GateOp>) -> Result<()> {
        ops.into_iter().try_for_each(|g| self.apply(g))
    }

    /// Born-rule distribution over the full register.
    pub fn probabilities(&self) -> Distribution {
        let entries = self
            .amps
            .iter()
            .enumerate()
            .filter_map(|(i, a)| {
                let p = a.norm_sqr();
                (p > NOISE_FLOOR).then_some((i as u64, p))
            })
            .collect();
        Distribution::from_entries(self.n_qubits, entries)
    }

    fn check_subset(&self, qubits: &[usize]) -> Result<()> {
        if qubits.is_empty() {
            return Err(Error::validation("empty qubit list"));
        }
        for (i, &q) in qubits.iter().enumerate() {
            if q >= self.n_qubits {
                return Err(Error::validation(format!(
                    "qubit {q} out of range for {} qubits",
                    self.n_qubits
                )));
            }
            if qubits[..i].contains(&q) {
                return Err(Error::validation(format!("qubit {q} listed twice")));
            }
        }
        Ok(())
    }

    /// Value of `qubits` (first listed = most significant) within basis index `i`.
    #[inline]
    fn extract(qubits: &[usize], i: usize) -> u64 {
        qubits
            .iter()
            .fold(0u64, |acc, &q| (acc << 1) | ((i >> q) & 1) as u64)
    }

    fn marginal_raw(&self, qubits: &[usize]) -> BTreeMap<u64, f64> {
        let mut acc = BTreeMap::new();
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            *acc.entry(Self::extract(qubits, i)).or_insert(0.0) += p;
        }
        acc
    }

    /// Distribution over the joint value of `qubits`, tracing out the rest.
    /// The first listed qubit is the most significant bit of each outcome.
    pub fn marginal(&self, qubits: &[usize]) -> Result<Distribution> {
        self.check_subset(qubits)?;
        let entries = self
            .marginal_raw(qubits)
            .into_iter()
            .filter(|&(_, p)| p > NOISE_FLOOR)
            .collect();
        Ok(Distribution::from_entries(qubits.len(), entries))
    }

    /// Measures `qubits` in place and returns the outcome (first listed qubit
    /// most significant). The state collapses onto the sampled branch.
    pub fn measure<R: Rng + ?Sized>(&mut self, qubits: &[usize], rng: &mut R) -> Result<u64> {
        self.check_subset(qubits)?;
        let marginal = self.marginal_raw(qubits);
        let r: f64 = rng.random();
        let mut cumulative = 0.0;
        let mut outcome = None;
        for (&value, &p) in &marginal {
            if p <= NOISE_FLOOR {
                continue;
            }
            cumulative += p;
            outcome = Some((value, p));
            if r < cumulative {
                break;
            }
        }
        let (value, p) = outcome.ok_or_else(|| Error::internal("measured a zero-norm state"))?;
        if p < NOISE_FLOOR {
            return Err(Error::internal(format!(
                "sampled branch has probability {p}"
            )));
        }
        let scale = 1.0 / p.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if Self::extract(qubits, i) == value {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        Ok(value)
    }

    /// Non-mutating variant of [`StateVector::measure`].
    pub fn measure_subset<R: Rng + ?Sized>(
        &self,
        qubits: &[usize],
        rng: &mut R,
    ) -> Result<(u64, StateVector)> {
        let mut collapsed = self.clone();
        let outcome = collapsed.measure(qubits, rng)?;
        Ok((outcome, collapsed))
    }

    /// Basis indices whose probability exceeds `threshold`.
    pub fn support(&self, threshold: f64) -> BTreeSet<u64> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > threshold)
            .map(|(i, _)| i as u64)
            .collect()
    }

    /// Support of the marginal over `qubits` at `threshold`.
    pub fn marginal_support(&self, qubits: &[usize], threshold: f64) -> Result<BTreeSet<u64>> {
        self.check_subset(qubits)?;
        Ok(self
            .marginal_raw(qubits)
            .into_iter()
            .filter(|&(_, p)| p > threshold)
            .map(|(v, _)| v)
            .collect())
    }
}
