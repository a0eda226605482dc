use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Single complex amplitude of a basis state.
pub type Amplitude = Complex64;

/// Row-major 2x2 complex matrix.
pub type Matrix2 = [[Amplitude; 2]; 2];

pub(crate) const UNITARITY_TOL: f64 = 1e-12;

/// Which control value activates a gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    /// Active when the control qubit is |1⟩.
    Positive,
    /// Active when the control qubit is |0⟩ (the "anti-" controls).
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ControlSpec {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl ControlSpec {
    pub const fn pos(qubit: usize) -> Self {
        Self {
            qubit,
            polarity: Polarity::Positive,
        }
    }

    pub const fn neg(qubit: usize) -> Self {
        Self {
            qubit,
            polarity: Polarity::Negative,
        }
    }

    /// Control that is active iff `qubit` holds `bit`.
    pub const fn on(qubit: usize, bit: bool) -> Self {
        if bit {
            Self::pos(qubit)
        } else {
            Self::neg(qubit)
        }
    }

    #[inline]
    pub fn active(&self, basis_index: usize) -> bool {
        let set = (basis_index >> self.qubit) & 1 == 1;
        match self.polarity {
            Polarity::Positive => set,
            Polarity::Negative => !set,
        }
    }
}

/// Named single-qubit unitaries the circuits are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    Z,
}

impl GateKind {
    pub fn matrix(self) -> Matrix2 {
        let o = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        match self {
            GateKind::H => {
                let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                [[s, s], [s, -s]]
            }
            GateKind::X => [[z, o], [o, z]],
            GateKind::Z => [[o, z], [z, -o]],
        }
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Z => "z",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

impl std::str::FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h" => Ok(GateKind::H),
            "x" => Ok(GateKind::X),
            "z" => Ok(GateKind::Z),
            other => Err(Error::validation(format!("unknown gate name `{other}`"))),
        }
    }
}

/// A single-qubit unitary applied to `target` when every control is active.
///
/// `kind` is `Some` when the matrix is one of the named gates; the text
/// exporter relies on it.
#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    target: usize,
    u: Matrix2,
    controls: Vec<ControlSpec>,
    kind: Option<GateKind>,
}

impl GateOp {
    /// Builds a gate from an arbitrary 2x2 matrix, checking unitarity and
    /// that controls are distinct and disjoint from the target.
    pub fn new(target: usize, u: Matrix2, controls: Vec<ControlSpec>) -> Result<Self> {
        let op = Self {
            target,
            u,
            controls,
            kind: None,
        };
        op.check_shape()?;
        Ok(op)
    }

    pub fn named(kind: GateKind, target: usize, controls: Vec<ControlSpec>) -> Result<Self> {
        let op = Self {
            target,
            u: kind.matrix(),
            controls,
            kind: Some(kind),
        };
        op.check_shape()?;
        Ok(op)
    }

    fn check_shape(&self) -> Result<()> {
        if !is_unitary(&self.u, UNITARITY_TOL) {
            return Err(Error::validation("matrix is not unitary"));
        }
        for (i, c) in self.controls.iter().enumerate() {
            if c.qubit == self.target {
                return Err(Error::validation(format!(
                    "control qubit {} coincides with the target",
                    c.qubit
                )));
            }
            if self.controls[..i].iter().any(|o| o.qubit == c.qubit) {
                return Err(Error::validation(format!(
                    "control qubit {} listed twice",
                    c.qubit
                )));
            }
        }
        Ok(())
    }

    /// Checks the gate fits a register of `n_qubits`.
    pub fn validate_for(&self, n_qubits: usize) -> Result<()> {
        if self.target >= n_qubits {
            return Err(Error::validation(format!(
                "target qubit {} out of range for {n_qubits} qubits",
                self.target
            )));
        }
        if let Some(c) = self.controls.iter().find(|c| c.qubit >= n_qubits) {
            return Err(Error::validation(format!(
                "control qubit {} out of range for {n_qubits} qubits",
                c.qubit
            )));
        }
        Ok(())
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.u
    }

    pub fn controls(&self) -> &[ControlSpec] {
        &self.controls
    }

    pub fn kind(&self) -> Option<GateKind> {
        self.kind
    }

    /// Highest qubit index touched by the gate.
    pub fn max_qubit(&self) -> usize {
        self.controls
            .iter()
            .map(|c| c.qubit)
            .chain(std::iter::once(self.target))
            .max()
            .unwrap_or(self.target)
    }

    /// Same gate with extra controls prepended.
    pub fn with_extra_controls(&self, extra: &[ControlSpec]) -> Result<Self> {
        let mut controls = extra.to_vec();
        controls.extend_from_slice(&self.controls);
        let op = Self {
            target: self.target,
            u: self.u,
            controls,
            kind: self.kind,
        };
        op.check_shape()?;
        Ok(op)
    }

    /// Inverse gate. H, X and Z are self-inverse, so named gates keep their name.
    pub fn inverse(&self) -> Self {
        let u = &self.u;
        Self {
            target: self.target,
            u: [
                [u[0][0].conj(), u[1][0].conj()],
                [u[0][1].conj(), u[1][1].conj()],
            ],
            controls: self.controls.clone(),
            kind: self.kind,
        }
    }

    #[inline]
    pub fn controls_active(&self, basis_index: usize) -> bool {
        self.controls.iter().all(|c| c.active(basis_index))
    }
}

pub(crate) fn is_unitary(u: &Matrix2, tol: f64) -> bool {
    // u†u == I
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for row in u {
                acc += row[i].conj() * row[j];
            }
            let expect = if i == j { 1.0 } else { 0.0 };
            if (acc - Complex64::new(expect, 0.0)).norm() > tol {
                return false;
            }
        }
    }
    u.iter()
        .flatten()
        .all(|a| a.re.is_finite() && a.im.is_finite())
}
