#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use qmonty_core::gates::Circuit;
use qmonty_core::{ControlSpec, GateKind, GateOp, StateVector};

/// Purity `tr(ρ²)` of the reduced state on `qubits`.
pub fn reduced_purity(state: &StateVector, qubits: &[usize]) -> f64 {
    let k = qubits.len();
    let sub = |idx: usize| {
        qubits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &q)| acc | (((idx >> q) & 1) << i))
    };
    let mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
    let d = 1usize << k;
    let mut rho = vec![Complex64::new(0.0, 0.0); d * d];
    let amps = state.amplitudes();
    // group basis indices by the complement bits
    let mut groups: std::collections::BTreeMap<usize, Vec<(usize, Complex64)>> = Default::default();
    for (idx, a) in amps.iter().enumerate() {
        if a.norm_sqr() > 0.0 {
            groups.entry(idx & !mask).or_default().push((sub(idx), *a));
        }
    }
    for entries in groups.values() {
        for &(i, a) in entries {
            for &(j, b) in entries {
                rho[i * d + j] += a * b.conj();
            }
        }
    }
    let mut p = 0.0;
    for i in 0..d {
        for j in 0..d {
            p += (rho[i * d + j] * rho[j * d + i]).re;
        }
    }
    p
}

fn kind() -> impl Strategy<Value = GateKind> {
    prop_oneof![Just(GateKind::H), Just(GateKind::X), Just(GateKind::Z)]
}

/// Random single-qubit unitary from Euler angles and a global phase.
pub fn unitary2(a: f64, b: f64, c: f64, d: f64) -> [[Complex64; 2]; 2] {
    let e = |t: f64| Complex64::from_polar(1.0, t);
    let (s, co) = a.sin_cos();
    [
        [e(d) * co, -e(d + c) * s],
        [e(d + b) * s, e(d + b + c) * co],
    ]
}

/// A gate on `n` qubits with up to `max_controls` controls of random polarity.
pub fn gate(n: usize, max_controls: usize, named_only: bool) -> impl Strategy<Value = GateOp> {
    let angles = prop::array::uniform4(-3.2f64..3.2);
    (
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        0..=max_controls.min(n - 1),
        prop::collection::vec(any::<bool>(), max_controls.max(1)),
        kind(),
        angles,
        any::<bool>(),
    )
        .prop_map(move |(qs, k, pols, kind, ang, use_named)| {
            let target = qs[0];
            let controls: Vec<ControlSpec> = qs[1..=k]
                .iter()
                .zip(&pols)
                .map(|(&q, &p)| ControlSpec::on(q, p))
                .collect();
            if named_only || use_named {
                GateOp::named(kind, target, controls).unwrap()
            } else {
                GateOp::new(target, unitary2(ang[0], ang[1], ang[2], ang[3]), controls).unwrap()
            }
        })
}

pub fn circuit(
    n: usize,
    depth: usize,
    max_controls: usize,
    named_only: bool,
) -> impl Strategy<Value = Circuit> {
    prop::collection::vec(gate(n, max_controls, named_only), depth).prop_map(move |ops| {
        let mut c = Circuit::new(n).unwrap();
        c.extend(ops).unwrap();
        c
    })
}

/// Normalized random state on `n` qubits.
pub fn state(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_filter_map(
        "zero vector",
        |v| {
            let amps: Vec<Complex64> = v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect();
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-3 {
                return None;
            }
            StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).ok()
        },
    )
}
