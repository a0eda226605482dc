mod common;

use proptest::prelude::*;
use qmonty_core::gates::text::{from_text, to_text};
use qmonty_core::gates::{circuit_unitary, decompose_mcx, mcx, Circuit};
use qmonty_core::sim::StateVector;
use qmonty_core::ControlSpec;

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn norm_is_conserved(c in (1usize..=12).prop_flat_map(|n| common::circuit(n, 50, 3, false))) {
        let s = c.simulate().unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn circuit_then_inverse_is_identity(c in common::circuit(5, 30, 3, false), s in common::state(5)) {
        let mut t = s.clone();
        c.run_on(&mut t).unwrap();
        c.inverse().run_on(&mut t).unwrap();
        prop_assert!(t.max_abs_diff(&s) < 1e-10);
    }

    #[test]
    fn named_gates_are_self_inverse(g in common::gate(4, 3, true), s in common::state(4)) {
        let twice = s.apply_gate(&g).unwrap().apply_gate(&g).unwrap();
        prop_assert!(twice.max_abs_diff(&s) < 1e-12);
    }

    #[test]
    fn simulator_matches_dense_oracle(
        c in (1usize..=6).prop_flat_map(|n| (1usize..=30).prop_flat_map(move |d| common::circuit(n, d, 3, false))),
        col in any::<prop::sample::Index>(),
    ) {
        let u = circuit_unitary(&c).unwrap();
        let j = col.index(u.dim());
        let mut s = StateVector::basis(c.n_qubits(), j).unwrap();
        c.run_on(&mut s).unwrap();
        for (i, a) in s.amplitudes().iter().enumerate() {
            prop_assert!((a - u.entry(i, j)).norm() < 1e-10);
        }
        prop_assert!(u.unitarity_error() < 1e-10);
    }

    #[test]
    fn decomposition_preserves_ancilla_zero_block(
        k in 3usize..=5,
        pols in prop::collection::vec(any::<bool>(), 5),
        s in common::state(6),
    ) {
        // controls 0..k, target k; ancillas on top, starting in |0…0⟩
        let controls: Vec<ControlSpec> = (0..k).map(|q| ControlSpec::on(q, pols[q])).collect();
        let g = mcx(&controls, k).unwrap();
        let ancillas: Vec<usize> = (6..6 + k - 2).collect();
        let n = 6 + ancillas.len();
        let mut amps = s.amplitudes().to_vec();
        amps.resize(1 << n, num_complex::Complex64::new(0.0, 0.0));
        let wide = StateVector::from_amplitudes(amps).unwrap();
        let mut low = Circuit::new(n).unwrap();
        low.append(&decompose_mcx(&g, &ancillas).unwrap()).unwrap();
        let mut a = wide.clone();
        low.run_on(&mut a).unwrap();
        let b = wide.apply_gate(&g).unwrap();
        prop_assert!(a.max_abs_diff(&b) < 1e-10);
    }

    #[test]
    fn text_round_trip(c in (1usize..=10).prop_flat_map(|n| common::circuit(n, 25, 4, true))) {
        let text = to_text(&c).unwrap();
        let back = from_text(&text).unwrap();
        prop_assert_eq!(to_text(&back).unwrap(), text);
        prop_assert!(c.simulate().unwrap().max_abs_diff(&back.simulate().unwrap()) < 1e-10);
    }

    #[test]
    fn parser_never_panics(src in "(qmonty-circuit 1\nqubits [0-9]{1,2}\n)?([chxzq\\[\\]0-9, >a-z#-]{0,20}\n){0,6}") {
        let _ = from_text(&src);
    }
}
