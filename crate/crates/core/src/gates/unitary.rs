//! Brute-force dense matrices for small circuits.
//!
//! Every gate is expanded to its full `2^n x 2^n` matrix entry by entry and
//! the matrices are multiplied. None of this shares code with
//! [`StateVector::apply`](crate::sim::StateVector::apply), so it can serve as
//! an independent check of the simulator.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::Circuit;
use crate::error::{Error, Result};
use crate::sim::GateOp;

pub const MAX_UNITARY_QUBITS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix(DMatrix<Complex64>);

impl UnitaryMatrix {
    pub fn identity(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        Self(DMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    /// Image of basis state `col`.
    pub fn column(&self, col: usize) -> Vec<Complex64> {
        self.0.column(col).iter().copied().collect()
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let prod = self.0.adjoint() * &self.0;
        let id = DMatrix::<Complex64>::identity(self.dim(), self.dim());
        (prod - id).iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// `self · other` (apply `other` first).
    pub fn compose(&self, other: &UnitaryMatrix) -> UnitaryMatrix {
        UnitaryMatrix(&self.0 * &other.0)
    }

    /// Left-multiplies by a dense gate matrix, skipping its zero entries.
    fn left_mul(&mut self, gate: &DMatrix<Complex64>) {
        let dim = self.dim();
        let mut out = DMatrix::<Complex64>::zeros(dim, dim);
        for r in 0..dim {
            for k in 0..dim {
                let g = gate[(r, k)];
                if g.re == 0.0 && g.im == 0.0 {
                    continue;
                }
                for c in 0..dim {
                    out[(r, c)] += g * self.0[(k, c)];
                }
            }
        }
        self.0 = out;
    }
}

fn check_size(n_qubits: usize) -> Result<()> {
    if n_qubits > MAX_UNITARY_QUBITS {
        return Err(Error::Capacity(format!(
            "dense unitary limited to {MAX_UNITARY_QUBITS} qubits, circuit has {n_qubits}"
        )));
    }
    Ok(())
}

/// Full-register matrix of a single gate.
pub fn gate_matrix(g: &GateOp, n_qubits: usize) -> Result<UnitaryMatrix> {
    check_size(n_qubits)?;
    g.validate_for(n_qubits)?;
    let dim = 1usize << n_qubits;
    let t = g.target();
    let u = g.matrix();
    let m = DMatrix::from_fn(dim, dim, |r, c| {
        let same_elsewhere = (r ^ c) & !(1 << t) == 0;
        if !same_elsewhere {
            return Complex64::new(0.0, 0.0);
        }
        let enabled = g.controls().iter().all(|ctl| {
            let bit = (c >> ctl.qubit) & 1 == 1;
            bit == (ctl.polarity == crate::sim::Polarity::Positive)
        });
        if enabled {
            u[(r >> t) & 1][(c >> t) & 1]
        } else if r == c {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(UnitaryMatrix(m))
}

/// Product of all gate matrices of `c`, first gate rightmost.
pub fn circuit_unitary(c: &Circuit) -> Result<UnitaryMatrix> {
    check_size(c.n_qubits())?;
    let mut acc = UnitaryMatrix::identity(c.n_qubits());
    for g in c.ops() {
        let gm = gate_matrix(g, c.n_qubits())?;
        acc.left_mul(&gm.0);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_1_SQRT_2;

    use super::*;
    use crate::gates::{ch, h};

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::new(3).unwrap();
        let u = circuit_unitary(&c).unwrap();
        assert_eq!(u, UnitaryMatrix::identity(3));
    }

    #[test]
    fn single_hadamard() {
        let mut c = Circuit::new(1).unwrap();
        c.push(h(0)).unwrap();
        let u = circuit_unitary(&c).unwrap();
        let s = FRAC_1_SQRT_2;
        let expect = [[s, s], [s, -s]];
        for (r, row) in expect.iter().enumerate() {
            for (col, &v) in row.iter().enumerate() {
                assert!((u.entry(r, col) - Complex64::new(v, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn three_state_column() {
        // Hand product, column |00⟩: (1/2, 1/2, 1/√2, 0).
        let mut c = Circuit::new(2).unwrap();
        c.extend([h(1), h(0), ch(1, 0).unwrap()]).unwrap();
        let col = circuit_unitary(&c).unwrap().column(0);
        let expect = [0.5, 0.5, FRAC_1_SQRT_2, 0.0];
        for (a, e) in col.iter().zip(expect) {
            assert!((a - Complex64::new(e, 0.0)).norm() < 1e-10, "{col:?}");
        }
    }

    #[test]
    fn capacity_limit() {
        let c = Circuit::new(11).unwrap();
        assert!(matches!(circuit_unitary(&c), Err(Error::Capacity(_))));
    }

    #[test]
    fn gate_matrices_unitary() {
        let g = crate::gates::mcx(
            &[
                crate::sim::ControlSpec::neg(0),
                crate::sim::ControlSpec::pos(2),
            ],
            1,
        )
        .unwrap();
        assert!(gate_matrix(&g, 3).unwrap().unitarity_error() < 1e-12);
    }
}
