//! Two-qubit door-register gadgets shared by both schemes.
//!
//! A door register is a qubit pair `(hi, lo)` holding the door codes
//! D1 = |00⟩, D2 = |01⟩, D3 = |10⟩.
//!
//! [`DoorRegister::three_state`] prepares `½|00⟩ + ½|01⟩ + (1/√2)|10⟩`
//! (H, H, then CH with `hi` as control). The removal gadgets take that state
//! to an equal superposition of the two remaining doors:
//!
//! | removed | gates                       | result               |
//! |---------|-----------------------------|----------------------|
//! | D1 |00⟩ | ACZ(hi→lo), ACH(hi→lo)      | (|01⟩ + |10⟩)/√2     |
//! | D2 |01⟩ | ACH(hi→lo)                  | (|00⟩ + |10⟩)/√2     |
//! | D3 |10⟩ | CH(hi→lo), H(hi)            | (|00⟩ + |01⟩)/√2     |
//!
//! The D3 gadget first undoes the |11⟩ suppression so that the |00⟩/|10⟩
//! pair has equal weight, then folds it with H. A bare ACH(lo→hi) cannot
//! remove |10⟩ from the prepared state because that pair is unbalanced
//! (½ against 1/√2).

use crate::door::DoorId;
use crate::error::Result;
use crate::gates::{ach, acz, ch, h, x};
use crate::sim::{ControlSpec, GateOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoorRegister {
    pub hi: usize,
    pub lo: usize,
}

impl DoorRegister {
    pub const fn new(hi: usize, lo: usize) -> Self {
        Self { hi, lo }
    }

    /// Qubits in ket order (`hi` first), for marginals and measurement.
    pub fn qubits(&self) -> [usize; 2] {
        [self.hi, self.lo]
    }

    /// X gates writing `door` into a register that holds |00⟩.
    pub fn encode(&self, door: DoorId) -> Vec<GateOp> {
        let (hi, lo) = door.bits();
        let mut ops = Vec::new();
        if hi {
            ops.push(x(self.hi));
        }
        if lo {
            ops.push(x(self.lo));
        }
        ops
    }

    /// Controls active exactly when the register holds `door`.
    pub fn pattern(&self, door: DoorId) -> [ControlSpec; 2] {
        let (hi, lo) = door.bits();
        [ControlSpec::on(self.hi, hi), ControlSpec::on(self.lo, lo)]
    }

    /// H, H, CH(hi→lo): three-door superposition with |11⟩ suppressed.
    pub fn three_state(&self) -> Result<Vec<GateOp>> {
        Ok(vec![h(self.hi), h(self.lo), ch(self.hi, self.lo)?])
    }

    /// Gadget removing `door` from the three-door superposition.
    pub fn removal(&self, door: DoorId) -> Result<Vec<GateOp>> {
        Ok(match door {
            DoorId::D1 => vec![acz(self.hi, self.lo)?, ach(self.hi, self.lo)?],
            DoorId::D2 => vec![ach(self.hi, self.lo)?],
            DoorId::D3 => vec![ch(self.hi, self.lo)?, h(self.hi)],
        })
    }

    /// Removal gadget with every gate additionally conditioned on `extra`.
    pub fn controlled_removal(&self, door: DoorId, extra: &[ControlSpec]) -> Result<Vec<GateOp>> {
        self.removal(door)?
            .iter()
            .map(|g| g.with_extra_controls(extra))
            .collect()
    }
}
