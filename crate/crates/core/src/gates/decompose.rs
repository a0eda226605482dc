//! Ancilla-ladder decomposition of multi-controlled gates.
//!
//! A gate with controls `c1..ck` (k >= 3) becomes
//!
//! ```text
//! a1 ^= c1 & c2
//! a2 ^= a1 & c3
//! ...
//! a(k-2) ^= a(k-3) & c(k-1)
//! U on target controlled by a(k-2) & ck
//! (uncompute the ladder in reverse)
//! ```
//!
//! Negative controls are flipped with X before and after, so the ladder only
//! contains positively controlled Toffolis. Ancillas must be |0⟩ on entry and
//! are |0⟩ again on exit.

use super::{x, Circuit};
use crate::error::{Error, Result};
use crate::sim::{ControlSpec, GateKind, GateOp, Polarity};

/// Lowers `g` (3 or more controls) to 1- and 2-control gates using `ancilla`.
///
/// The returned circuit spans `max(qubit index) + 1` qubits.
pub fn decompose_mcx(g: &GateOp, ancilla: &[usize]) -> Result<Circuit> {
    let ops = ladder(g, ancilla)?;
    let n = ops
        .iter()
        .map(GateOp::max_qubit)
        .chain(ancilla.iter().copied())
        .max()
        .unwrap_or(0)
        + 1;
    let mut c = Circuit::new(n)?;
    c.extend(ops)?;
    Ok(c)
}

fn ladder(g: &GateOp, ancilla: &[usize]) -> Result<Vec<GateOp>> {
    let k = g.controls().len();
    if k < 3 {
        return Err(Error::validation(format!(
            "ladder decomposition needs at least 3 controls, got {k}"
        )));
    }
    if ancilla.len() < k - 2 {
        return Err(Error::Capacity(format!(
            "{k} controls need {} ancillas, got {}",
            k - 2,
            ancilla.len()
        )));
    }
    let anc = &ancilla[..k - 2];
    for (i, &a) in anc.iter().enumerate() {
        if a == g.target() || g.controls().iter().any(|c| c.qubit == a) {
            return Err(Error::validation(format!(
                "ancilla {a} overlaps the gate's qubits"
            )));
        }
        if anc[..i].contains(&a) {
            return Err(Error::validation(format!("ancilla {a} listed twice")));
        }
    }

    let ctl: Vec<usize> = g.controls().iter().map(|c| c.qubit).collect();
    let flips: Vec<GateOp> = g
        .controls()
        .iter()
        .filter(|c| c.polarity == Polarity::Negative)
        .map(|c| x(c.qubit))
        .collect();
    let toffoli = |a: usize, b: usize, t: usize| {
        GateOp::named(
            GateKind::X,
            t,
            vec![ControlSpec::pos(a), ControlSpec::pos(b)],
        )
    };

    let mut compute = Vec::with_capacity(k - 2);
    compute.push(toffoli(ctl[0], ctl[1], anc[0])?);
    for i in 1..k - 2 {
        compute.push(toffoli(anc[i - 1], ctl[i + 1], anc[i])?);
    }
    let core = GateOp::new(
        g.target(),
        *g.matrix(),
        vec![ControlSpec::pos(anc[k - 3]), ControlSpec::pos(ctl[k - 1])],
    )?;
    let core = match g.kind() {
        Some(kind) => GateOp::named(kind, g.target(), core.controls().to_vec())?,
        None => core,
    };

    let mut ops = flips.clone();
    ops.extend(compute.iter().cloned());
    ops.push(core);
    ops.extend(compute.into_iter().rev());
    ops.extend(flips);
    Ok(ops)
}

/// Rewrites every gate of `c` with 3 or more controls via the ladder, using
/// `scratch` as ancillas. Scratch qubits must be |0⟩ whenever such a gate
/// runs and must not be used by it.
pub fn lower_multi_controlled(c: &Circuit, scratch: &[usize]) -> Result<Circuit> {
    let mut out = Circuit::with_labels(c.labels().to_vec())?;
    for g in c.ops() {
        if g.controls().len() < 3 {
            out.push(g.clone())?;
        } else {
            out.extend(ladder(g, scratch)?)?;
        }
    }
    for m in c.measurements() {
        out.measure(&m.qubits, &m.tag)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{circuit_unitary, mcx};

    #[test]
    fn rejects_too_few_ancillas() {
        let g = mcx(&(1..5).map(ControlSpec::pos).collect::<Vec<_>>(), 0).unwrap();
        assert!(matches!(decompose_mcx(&g, &[5]), Err(Error::Capacity(_))));
    }

    #[test]
    fn rejects_overlapping_ancilla() {
        let g = mcx(&(1..4).map(ControlSpec::pos).collect::<Vec<_>>(), 0).unwrap();
        assert!(matches!(decompose_mcx(&g, &[2]), Err(Error::Validation(_))));
        assert!(matches!(decompose_mcx(&g, &[0]), Err(Error::Validation(_))));
    }

    #[test]
    fn rejects_two_controls() {
        let g = mcx(&[ControlSpec::pos(1), ControlSpec::pos(2)], 0).unwrap();
        assert!(decompose_mcx(&g, &[3]).is_err());
    }

    #[test]
    fn output_has_at_most_two_controls() {
        let g = mcx(
            &[
                ControlSpec::pos(0),
                ControlSpec::neg(1),
                ControlSpec::pos(2),
                ControlSpec::neg(3),
            ],
            4,
        )
        .unwrap();
        let c = decompose_mcx(&g, &[5, 6]).unwrap();
        assert!(c.max_controls() <= 2);
        assert!(c.ops().iter().all(|op| op
            .controls()
            .iter()
            .all(|c| c.polarity == Polarity::Positive)));
    }

    #[test]
    fn three_controls_one_ancilla() {
        let controls = [
            ControlSpec::pos(0),
            ControlSpec::pos(1),
            ControlSpec::pos(2),
        ];
        let g = mcx(&controls, 3).unwrap();
        let dec = decompose_mcx(&g, &[4]).unwrap();
        let mut direct = Circuit::new(5).unwrap();
        direct.push(g).unwrap();
        let ud = circuit_unitary(&dec).unwrap();
        let ug = circuit_unitary(&direct).unwrap();
        for col in 0..16 {
            // ancilla (qubit 4) = 0
            for row in 0..32 {
                assert!((ud.entry(row, col) - ug.entry(row, col)).norm() < 1e-10);
            }
        }
    }
}
