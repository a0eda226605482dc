use crate::error::{Error, Result};
use crate::sim::{GateOp, StateVector, MAX_QUBITS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measurement {
    pub qubits: Vec<usize>,
    pub tag: String,
}

/// Ordered gate list over a labeled register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    labels: Vec<String>,
    ops: Vec<GateOp>,
    measurements: Vec<Measurement>,
}

impl Circuit {
    /// Register with default labels `q0, q1, …`.
    pub fn new(n_qubits: usize) -> Result<Self> {
        Self::with_labels((0..n_qubits).map(|i| format!("q{i}")).collect())
    }

    /// One qubit per label; label `i` names qubit `i`.
    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let n_qubits = labels.len();
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::Size(n_qubits));
        }
        for (i, l) in labels.iter().enumerate() {
            if !is_label(l) {
                return Err(Error::validation(format!("invalid qubit label `{l}`")));
            }
            if labels[..i].contains(l) {
                return Err(Error::validation(format!("duplicate qubit label `{l}`")));
            }
        }
        Ok(Self {
            n_qubits,
            labels,
            ops: Vec::new(),
            measurements: Vec::new(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn measurements(&self) -> &[Measurement] {
        &self.measurements
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Index of the qubit called `label`.
    pub fn qubit(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn push(&mut self, op: GateOp) -> Result<()> {
        op.validate_for(self.n_qubits)?;
        self.ops.push(op);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = GateOp>>(&mut self, ops: I) -> Result<()> {
        ops.into_iter().try_for_each(|g| self.push(g))
    }

    /// Appends the gates and measurements of `other`, which must act on a
    /// register no larger than this one.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits > self.n_qubits {
            return Err(Error::validation(format!(
                "cannot append a {}-qubit circuit to a {}-qubit one",
                other.n_qubits, self.n_qubits
            )));
        }
        self.extend(other.ops.iter().cloned())?;
        for m in &other.measurements {
            self.measure(&m.qubits, &m.tag)?;
        }
        Ok(())
    }

    /// Records a measurement of `qubits` under classical tag `tag`.
    pub fn measure(&mut self, qubits: &[usize], tag: &str) -> Result<()> {
        if qubits.is_empty() {
            return Err(Error::validation("measurement needs at least one qubit"));
        }
        for (i, &q) in qubits.iter().enumerate() {
            if q >= self.n_qubits {
                return Err(Error::validation(format!(
                    "measured qubit {q} out of range for {} qubits",
                    self.n_qubits
                )));
            }
            if qubits[..i].contains(&q) {
                return Err(Error::validation(format!("qubit {q} measured twice")));
            }
        }
        if !is_label(tag) {
            return Err(Error::validation(format!(
                "invalid measurement tag `{tag}`"
            )));
        }
        self.measurements.push(Measurement {
            qubits: qubits.to_vec(),
            tag: tag.to_string(),
        });
        Ok(())
    }

    /// Gates in reverse order, each inverted. Measurements are dropped.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            labels: self.labels.clone(),
            ops: self.ops.iter().rev().map(GateOp::inverse).collect(),
            measurements: Vec::new(),
        }
    }

    /// Runs the gates on `state` in place.
    pub fn run_on(&self, state: &mut StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::validation(format!(
                "circuit has {} qubits, state has {}",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        state.apply_all(&self.ops)
    }

    /// Runs the gates on `|0…0⟩`.
    pub fn simulate(&self) -> Result<StateVector> {
        let mut state = StateVector::new(self.n_qubits)?;
        self.run_on(&mut state)?;
        Ok(state)
    }

    /// Largest number of controls on any gate.
    pub fn max_controls(&self) -> usize {
        self.ops
            .iter()
            .map(|g| g.controls().len())
            .max()
            .unwrap_or(0)
    }
}

/// Labels and tags: an ASCII letter or `_`, then letters, digits, `_` or `'`.
pub(crate) fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}
