//! Gate constructors, circuits and the dense-matrix equivalence oracle.

mod circuit;
mod decompose;
pub mod text;
mod unitary;

pub use circuit::{Circuit, Measurement};
pub use decompose::{decompose_mcx, lower_multi_controlled};
pub use unitary::{circuit_unitary, gate_matrix, UnitaryMatrix, MAX_UNITARY_QUBITS};

use crate::error::{Error, Result};
use crate::sim::{ControlSpec, GateKind, GateOp};

/// Uncontrolled H, X or Z on `target`.
pub fn std_gate(kind: GateKind, target: usize) -> GateOp {
    GateOp::named(kind, target, Vec::new()).expect("uncontrolled named gate is well formed")
}

/// Like [`std_gate`] but parses the gate name.
pub fn std_gate_named(name: &str, target: usize) -> Result<GateOp> {
    Ok(std_gate(name.parse()?, target))
}

/// `kind` on `target`, applied iff every control's polarity condition holds.
pub fn controlled(kind: GateKind, controls: &[ControlSpec], target: usize) -> Result<GateOp> {
    GateOp::named(kind, target, controls.to_vec())
}

pub fn h(target: usize) -> GateOp {
    std_gate(GateKind::H, target)
}

pub fn x(target: usize) -> GateOp {
    std_gate(GateKind::X, target)
}

pub fn z(target: usize) -> GateOp {
    std_gate(GateKind::Z, target)
}

/// CNOT with a positive control.
pub fn cx(control: usize, target: usize) -> Result<GateOp> {
    controlled(GateKind::X, &[ControlSpec::pos(control)], target)
}

/// Controlled-H with a positive control.
pub fn ch(control: usize, target: usize) -> Result<GateOp> {
    controlled(GateKind::H, &[ControlSpec::pos(control)], target)
}

/// Anti-controlled H: acts when `control` is |0⟩.
pub fn ach(control: usize, target: usize) -> Result<GateOp> {
    controlled(GateKind::H, &[ControlSpec::neg(control)], target)
}

/// Anti-controlled Z: acts when `control` is |0⟩.
pub fn acz(control: usize, target: usize) -> Result<GateOp> {
    controlled(GateKind::Z, &[ControlSpec::neg(control)], target)
}

pub const MCX_MIN_CONTROLS: usize = 2;
pub const MCX_MAX_CONTROLS: usize = 5;

/// Multi-controlled NOT with 2..=5 controls of either polarity.
pub fn mcx(controls: &[ControlSpec], target: usize) -> Result<GateOp> {
    if controls.len() < MCX_MIN_CONTROLS {
        return Err(Error::validation(format!(
            "mcx needs at least {MCX_MIN_CONTROLS} controls, got {}; use controlled() instead",
            controls.len()
        )));
    }
    if controls.len() > MCX_MAX_CONTROLS {
        return Err(Error::validation(format!(
            "mcx supports at most {MCX_MAX_CONTROLS} controls, got {}",
            controls.len()
        )));
    }
    GateOp::named(GateKind::X, target, controls.to_vec())
}
