use super::*;
use crate::oracle::{reference_matrix, TransformKind, TransformSpec};
use crate::simcore::{circuit_unitary, data_block, GateKind, Matrix, C64};
use std::f64::consts::FRAC_1_SQRT_2;

fn spec(kind: TransformKind, n: usize) -> TransformSpec {
    TransformSpec::with_qubits(kind, n).unwrap()
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn i() -> C64 {
    C64::new(0.0, 1.0)
}

/// Matrix of a map given as a list of (input label, [(output label, amp)]).
fn assemble(dim: usize, f: impl Fn(usize) -> Vec<(usize, C64)>) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for col in 0..dim {
        for (row, a) in f(col) {
            m[(row, col)] += a;
        }
    }
    m
}

#[test]
fn delta_factorizations() {
    for n in 1..=5 {
        let fam = DiagonalFamily { n };
        let size = 1usize << n;
        let w = |k: f64| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k / (4 * size) as f64);
        for (x, z) in fam.delta1().iter().enumerate() {
            assert!((z - w(x as f64)).norm() < 1e-12);
        }
        for (x, z) in fam.delta2().iter().enumerate() {
            assert!((z - w(x as f64 - size as f64 + 1.0)).norm() < 1e-12);
        }
        for j in 1..=n {
            // K_j = X L_j^* X
            let l = fam.l(j);
            let k = fam.k(j);
            assert!((k[0] - l[1].conj()).norm() < 1e-15 && (k[1] - l[0].conj()).norm() < 1e-15);
        }
    }
}

fn diagonal_of(c: &Circuit) -> Vec<C64> {
    let u = circuit_unitary(c).unwrap();
    let d = u.dim();
    let diag = Matrix::from_fn(d, d, |r, k| {
        if r == k {
            u[(r, r)]
        } else {
            C64::new(0.0, 0.0)
        }
    });
    assert!(u.max_abs_diff(&diag).unwrap() < 1e-14);
    (0..d).map(|r| u[(r, r)]).collect()
}

#[test]
fn d1_diagonal() {
    for n in 1..=4 {
        let fam = DiagonalFamily { n };
        let size = 1usize << n;
        let d = diagonal_of(&build_d1(n).unwrap());
        let c = fam.c()[1];
        for x in 0..size {
            assert!((d[x] - fam.delta1()[x]).norm() < 1e-12);
            assert!((d[size + x] - c * fam.delta2()[x]).norm() < 1e-12);
        }
        assert!((d[2 * size - 1] - c).norm() < 1e-12);
    }
}

#[test]
fn d2_diagonal_both_forms() {
    for n in 1..=4 {
        let fam = DiagonalFamily { n };
        let size = 1usize << n;
        let c = fam.c()[1];
        let good = diagonal_of(&build_d2(n, true).unwrap());
        let bad = diagonal_of(&build_d2(n, false).unwrap());
        for x in 0..size {
            assert!((good[size + x] - c * fam.delta1()[x].conj()).norm() < 1e-12);
            assert!((bad[size + x] - c * fam.delta2()[x]).norm() < 1e-12);
        }
    }
}

#[test]
fn t_gate_four_cases() {
    for n in 2..=3 {
        let size = 1usize << n;
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let want = assemble(2 * size, |col| {
            let (c, x) = (col / size, col % size);
            let xp = (size - x) % size;
            match (c, x) {
                (_, 0) => vec![(col, one())],
                (0, _) => vec![(x, h), (size + xp, h)],
                _ => vec![(x, i() * h), (size + xp, -i() * h)],
            }
        });
        let blk = data_block(&build_t_gate(n).unwrap()).unwrap();
        assert!(blk.matrix.max_abs_diff(&want).unwrap() < 1e-12);
        assert!(blk.ancilla_residual < 1e-12);
    }
}

#[test]
fn g_gate_four_cases() {
    for n in 2..=3 {
        let size = 1usize << n;
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let want = assemble(2 * size, |col| {
            let (c, x) = (col / size, col % size);
            match (c, x) {
                (0, 0) => vec![(0, one())],
                (1, 0) => vec![(size, -i())],
                (0, _) => vec![(x, h), (size + x, i() * h)],
                _ => vec![(x, h), (size + x, -i() * h)],
            }
        });
        let blk = data_block(&build_g_gate(n).unwrap()).unwrap();
        assert!(blk.matrix.max_abs_diff(&want).unwrap() < 1e-12);
        assert!(blk.ancilla_residual < 1e-12);
    }
}

fn natural(start: usize, len: usize) -> Vec<usize> {
    (start..start + len).collect()
}

fn labels(r: &BlockIdentityReport, rows: &[BasisLabel]) -> Vec<usize> {
    rows.iter().map(|l| l.index(r.cos_spec.size())).collect()
}

#[test]
fn type1_core_has_phase_i() {
    for n in 2..=3 {
        let size = 1usize << n;
        let c = build_qcst_type1_core(n).unwrap();
        let r = verify_block_identity(
            &c,
            spec(TransformKind::Dct1, n),
            spec(TransformKind::Dst1, n),
            i(),
        )
        .unwrap();
        assert!(r.passed(1e-10), "n={} {:?}", n, r);
        assert_eq!(labels(&r, &r.cos_rows), natural(0, size + 1));
        assert_eq!(labels(&r, &r.sin_rows), natural(size + 1, size - 1));
    }
}

#[test]
fn type1_blocks() {
    for n in 2..=4 {
        let c = build_qcst_type1(n).unwrap();
        let r = verify_block_identity(
            &c,
            spec(TransformKind::Dct1, n),
            spec(TransformKind::Dst1, n),
            one(),
        )
        .unwrap();
        assert!(r.passed(1e-10), "n={} {:?}", n, r);
    }
}

#[test]
fn type1_sine_column() {
    let n = 3;
    let size = 8;
    let blk = data_block(&build_qcst_type1(n).unwrap()).unwrap();
    let s = reference_matrix(&spec(TransformKind::Dst1, n));
    for a in 1..size {
        for y in 1..size {
            assert!((blk.matrix[(size + y, size + a)] - s[(y - 1, a - 1)]).norm() < 1e-10);
        }
    }
}

#[test]
fn qst1_optimized_subspace() {
    for n in 2..=4 {
        let c = build_qst1_optimized(n).unwrap();
        let r = verify_qst1_subspace(&c, n).unwrap();
        assert!(
            r.max_error < 1e-10 && r.ancilla_residual < 1e-10,
            "n={} {:?}",
            n,
            r
        );
        assert!(c.gates().iter().all(|g| g.controls().len() <= 2));
        assert!(!c
            .gates()
            .iter()
            .any(|g| matches!(g.kind(), GateKind::Mcx(_))));
    }
}

#[test]
fn qst1_optimized_middle_input() {
    // a = N/2: sqrt(2/N) sin(pi y / 2), nonzero on odd y only
    let n = 3;
    let size = 8usize;
    let blk = data_block(&build_qst1_optimized(n).unwrap()).unwrap();
    let amp = (2.0 / size as f64).sqrt();
    for y in 0..2 * size {
        let want = if y < size && y % 2 == 1 {
            if y % 4 == 1 {
                amp
            } else {
                -amp
            }
        } else {
            0.0
        };
        assert!((blk.matrix[(y, size / 2)] - C64::new(want, 0.0)).norm() < 1e-10);
    }
}

#[test]
fn qst1_optimized_intermediate_state() {
    // after X, A_N, QFT_2N: (i / sqrt N) sum_y sin(pi a y / N) |y>
    let n = 3;
    let size = 8usize;
    let a_n = build_a_n(n).unwrap();
    let mut gates = vec![Gate::x(n)];
    gates.extend(a_n.gates().iter().cloned());
    let doubled: Vec<usize> = (0..=n).collect();
    gates.extend(qft_gates(&doubled));
    let c = Circuit::new(a_n.width(), gates, a_n.ancillas().iter().copied(), None, "").unwrap();
    let blk = data_block(&c).unwrap();
    for a in 1..size {
        for y in 0..2 * size {
            let s = (std::f64::consts::PI * (a * y) as f64 / size as f64).sin();
            let want = i() * s / (size as f64).sqrt();
            assert!(
                (blk.matrix[(y, a)] - want).norm() < 1e-10,
                "a={} y={}",
                a,
                y
            );
        }
    }
}

#[test]
fn type2_blocks() {
    for n in 2..=4 {
        let size = 1usize << n;
        let c = build_qcst_type2(n).unwrap();
        let r = verify_block_identity(
            &c,
            spec(TransformKind::Dct2, n),
            spec(TransformKind::Dst2, n),
            one(),
        )
        .unwrap();
        assert!(r.passed(1e-10), "n={} {:?}", n, r);
        assert_eq!(labels(&r, &r.cos_rows), natural(0, size));
        assert_eq!(labels(&r, &r.sin_rows), natural(size, size));
        assert_eq!(labels(&r, &r.sin_cols), natural(size, size));
    }
}

#[test]
fn type3_blocks_and_inverse() {
    for n in 2..=3 {
        let c = build_qcst_type3(n).unwrap();
        let r = verify_block_identity(
            &c,
            spec(TransformKind::Dct3, n),
            spec(TransformKind::Dst3, n),
            one(),
        )
        .unwrap();
        assert!(r.passed(1e-10), "n={} {:?}", n, r);
        let two = data_block(&build_qcst_type2(n).unwrap()).unwrap().matrix;
        let three = data_block(&c).unwrap().matrix;
        let id = Matrix::identity(two.rows());
        assert!(three.matmul(&two).unwrap().max_abs_diff(&id).unwrap() < 1e-10);
    }
}

#[test]
fn type4_corrected_blocks() {
    for n in 1..=4 {
        let c = build_qcst_type4(n, true).unwrap();
        let r = verify_block_identity(
            &c,
            spec(TransformKind::Dct4, n),
            spec(TransformKind::Dst4, n),
            one(),
        )
        .unwrap();
        assert!(r.passed(1e-10), "n={} {:?}", n, r);
    }
}

#[test]
fn type4_incorrect_fails() {
    for n in 2..=3 {
        let c = build_qcst_type4(n, false).unwrap();
        let r = verify_block_identity(
            &c,
            spec(TransformKind::Dct4, n),
            spec(TransformKind::Dst4, n),
            one(),
        )
        .unwrap();
        assert!(!r.passed(1e-10));
        assert!(r.max_error() > 0.1, "n={} {}", n, r.max_error());
    }
}

#[test]
fn identity_is_a_negative_control() {
    let n = 2;
    let c = Circuit::empty(n + 1);
    let r = verify_block_identity(
        &c,
        spec(TransformKind::Dct1, n),
        spec(TransformKind::Dst1, n),
        one(),
    )
    .unwrap();
    assert!(!r.embedding_exact);
    assert!(r.max_error() > 0.1);
}

#[test]
fn all_circuits_unitary() {
    for n in 2..=3 {
        for c in [
            build_qcst_type1(n).unwrap(),
            build_qcst_type2(n).unwrap(),
            build_qcst_type3(n).unwrap(),
            build_qcst_type4(n, true).unwrap(),
        ] {
            assert!(circuit_unitary(&c).is_ok());
            assert!(data_block(&c).unwrap().ancilla_residual < 1e-12);
        }
    }
}

#[test]
fn type1_cosine_symmetry_is_reported() {
    let c = build_qcst_type1(3).unwrap();
    let r = verify_block_identity(
        &c,
        spec(TransformKind::Dct1, 3),
        spec(TransformKind::Dst1, 3),
        one(),
    )
    .unwrap();
    assert!(r.fits_cos > 1);
    assert_eq!(labels(&r, &r.cos_rows), natural(0, 9));
}
