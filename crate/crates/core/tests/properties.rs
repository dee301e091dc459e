use proptest::prelude::*;

use qrt_kit::oracle::{reference_matrix, TransformKind, TransformSpec};
use qrt_kit::qft::{build_qft, build_qft_inverse, QftOptions};
use qrt_kit::simcore::{
    circuit_unitary, export_text, parse_text, run_circuit, Circuit, Gate, Matrix, StateVector, C64,
};

const WIDTH: usize = 4;

fn gate_from(kind: u8, angle: f64, q: &[usize]) -> Gate {
    match kind % 17 {
        0 => Gate::x(q[0]),
        1 => Gate::y(q[0]),
        2 => Gate::z(q[0]),
        3 => Gate::h(q[0]),
        4 => Gate::s(q[0]),
        5 => Gate::sdg(q[0]),
        6 => Gate::phase(angle, q[0]),
        7 => Gate::rz(angle, q[0]),
        8 => Gate::cphase(angle, q[0], q[1]),
        9 => Gate::cnot(q[0], q[1]),
        10 => Gate::ch(q[0], q[1]),
        11 => Gate::cs(q[0], q[1]),
        12 => Gate::csdg(q[0], q[1]),
        13 => Gate::toffoli(q[0], q[1], q[2]),
        14 => Gate::swap(q[0], q[1]),
        15 => Gate::global_phase(angle),
        _ => Gate::mcx(vec![q[0], q[1], q[2]], q[3]),
    }
}

fn arb_gate() -> impl Strategy<Value = Gate> {
    (
        any::<u8>(),
        -10.0f64..10.0,
        Just((0..WIDTH).collect::<Vec<_>>()).prop_shuffle(),
    )
        .prop_map(|(k, a, q)| gate_from(k, a, &q))
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    (
        prop::collection::vec(arb_gate(), 0..24),
        proptest::option::of(Just((0..WIDTH).collect::<Vec<_>>()).prop_shuffle()),
    )
        .prop_map(|(g, relabel)| Circuit::new(WIDTH, g, [], relabel, "").unwrap())
}

fn arb_state() -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << WIDTH)
        .prop_filter("nonzero", |v| {
            v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3)
        })
        .prop_map(|v| {
            StateVector::normalized(v.into_iter().map(|(a, b)| C64::new(a, b)).collect()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn norm_is_preserved(c in arb_circuit(), s in arb_state()) {
        let out = run_circuit(&s, &c).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unitary_columns_match_basis_runs(c in arb_circuit(), col in 0usize..(1 << WIDTH)) {
        let u = circuit_unitary(&c).unwrap();
        let out = run_circuit(&StateVector::basis(WIDTH, col).unwrap(), &c).unwrap();
        for (r, a) in out.amplitudes().iter().enumerate() {
            prop_assert!((u[(r, col)] - a).norm() < 1e-12);
        }
    }

    #[test]
    fn adjoint_is_inverse(c in arb_circuit()) {
        let u = circuit_unitary(&c).unwrap();
        let v = circuit_unitary(&c.adjoint()).unwrap();
        prop_assert!(v.max_abs_diff(&u.adjoint()).unwrap() < 1e-12);
        let id = Matrix::identity(1 << WIDTH);
        prop_assert!(v.matmul(&u).unwrap().max_abs_diff(&id).unwrap() < 1e-12);
    }

    #[test]
    fn text_round_trip(c in arb_circuit()) {
        let back = parse_text(&export_text(&c), Some(WIDTH)).unwrap();
        prop_assert_eq!(&back, &c);
        let (a, b) = (circuit_unitary(&c).unwrap(), circuit_unitary(&back).unwrap());
        prop_assert_eq!(a.max_abs_diff(&b).unwrap(), 0.0);
    }

    #[test]
    fn linearity(c in arb_circuit(), s in arb_state(), t in arb_state(), w in 0.0f64..1.0) {
        let mix: Vec<C64> = s.amplitudes().iter().zip(t.amplitudes())
            .map(|(a, b)| a * w.sqrt() + b * (1.0 - w).sqrt())
            .collect();
        prop_assume!(mix.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-6);
        let scale = mix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let out = run_circuit(&StateVector::normalized(mix).unwrap(), &c).unwrap();
        let (os, ot) = (run_circuit(&s, &c).unwrap(), run_circuit(&t, &c).unwrap());
        for i in 0..1 << WIDTH {
            let want = (os.amplitudes()[i] * w.sqrt() + ot.amplitudes()[i] * (1.0 - w).sqrt()) / scale;
            prop_assert!((out.amplitudes()[i] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn qft_then_inverse(n in 1usize..=4, s in arb_state(), swaps in any::<bool>()) {
        let opts = QftOptions { include_final_swaps: swaps };
        let mut g = build_qft(n, opts).unwrap();
        let inv = build_qft_inverse(n, opts).unwrap();
        // pad both to the state width
        g = Circuit::new(WIDTH, g.gates().to_vec(), [], pad(g.relabeling(), n), "").unwrap();
        let inv = Circuit::new(WIDTH, inv.gates().to_vec(), [], pad(inv.relabeling(), n), "").unwrap();
        let out = run_circuit(&run_circuit(&s, &g).unwrap(), &inv).unwrap();
        prop_assert!((out.inner(&s) - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn qft_matches_dft_on_random_states(n in 1usize..=4, s in arb_state()) {
        let c = build_qft(n, QftOptions::default()).unwrap();
        let c = Circuit::new(WIDTH, c.gates().to_vec(), [], None, "").unwrap();
        let f = reference_matrix(&TransformSpec::with_qubits(TransformKind::Dft, n).unwrap());
        let out = run_circuit(&s, &c).unwrap();
        // F acts on the low n wires of each high-wire slice
        let size = 1 << n;
        for hi in 0..(1 << (WIDTH - n)) {
            let slice = &s.amplitudes()[hi * size..(hi + 1) * size];
            let want = f.apply(slice).unwrap();
            for (k, z) in want.iter().enumerate() {
                prop_assert!((out.amplitudes()[hi * size + k] - z).norm() < 1e-12);
            }
        }
    }
}

fn pad(relabel: Option<&[usize]>, n: usize) -> Option<Vec<usize>> {
    relabel.map(|p| {
        let mut v = p.to_vec();
        v.extend(n..WIDTH);
        v
    })
}
