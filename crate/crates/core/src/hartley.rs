//! Quantum Hartley transform,
//! `|a> -> N^{-1/2} sum_y cas(2 pi a y / N) |y>`, built two ways:
//! a recursion on the register size and a linear combination of the
//! identity and the two's complement followed by a QFT.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{QrtError, Result};
use crate::gadgets::{cond_twos_complement_gates, OrTree};
use crate::qft::qft_gates;
use crate::simcore::{run_circuit, Circuit, CircuitBuilder, Gate, Matrix, StateVector, C64};

fn check_n(what: &'static str, n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(QrtError::InvalidSize { what, n, min });
    }
    Ok(())
}

/// The real rotation applied to `c` for register value `y` and bit `b`:
/// `[[cos t, sin t], [-sin t, cos t]]` with `t = 2 pi b y / N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RotationR {
    pub y: usize,
    pub b: bool,
    /// The transform size `N`.
    pub size: usize,
}

impl RotationR {
    pub fn angle(&self) -> f64 {
        if self.b {
            2.0 * PI * self.y as f64 / self.size as f64
        } else {
            0.0
        }
    }

    pub fn matrix(&self) -> Matrix {
        let (s, c) = self.angle().sin_cos();
        Matrix::from_real_fn(2, 2, |r, k| match (r, k) {
            (0, 0) | (1, 1) => c,
            (0, 1) => s,
            _ => -s,
        })
    }
}

/// Gates of `U_R` on explicit wires: rotates `c` by `R(y, b)` where `y` is
/// the value of `y_wires` (LSB first) and the size is `2^(y_wires.len()+1)`.
///
/// `R(t) = S H diag(e^{it}, e^{-it}) H S^dag`; the diagonal is applied by
/// sandwiching a `y`-controlled phase ladder between two CNOTs from `b`.
pub fn unitary_ur_gates(c: usize, y_wires: &[usize], b: usize) -> Vec<Gate> {
    let size = 1u64 << (y_wires.len() + 1);
    let alpha = |j: usize| 2.0 * PI * (1u64 << j) as f64 / size as f64;
    let mut g = vec![Gate::sdg(c), Gate::h(c), Gate::cnot(b, c)];
    g.extend(
        y_wires
            .iter()
            .enumerate()
            .map(|(j, &y)| Gate::cphase(alpha(j), y, c)),
    );
    g.push(Gate::cnot(b, c));
    g.extend(
        y_wires
            .iter()
            .enumerate()
            .map(|(j, &y)| Gate::cphase(-alpha(j), y, c)),
    );
    g.push(Gate::h(c));
    g.push(Gate::s(c));
    g
}

/// `U_R` with `b` on wire 0, `y` on wires `1..=n`, `c` on wire `n+1`;
/// the rotation size is `N = 2^(n+1)`. Costs `2n + 6` gates.
pub fn build_unitary_ur(n: usize) -> Result<Circuit> {
    check_n("U_R", n, 1)?;
    let y: Vec<usize> = (1..=n).collect();
    Circuit::new(n + 2, unitary_ur_gates(n + 1, &y, 0), [], None, "ur")
}

/// Gates flipping `b` iff `c = 1` and the `y` register is zero. `tree`
/// supplies `y_wires.len() - 1` clean ancillas when `naive` is false.
pub fn cx_zero_detect_gates(
    c: usize,
    y_wires: &[usize],
    b: usize,
    tree: &[usize],
    naive: bool,
) -> Result<Vec<Gate>> {
    let flip_y = || y_wires.iter().map(|&y| Gate::x(y));
    let mut g: Vec<Gate> = Vec::new();
    if naive || y_wires.len() == 1 {
        let mut controls = vec![c];
        controls.extend_from_slice(y_wires);
        g.extend(flip_y());
        g.push(if controls.len() == 2 {
            Gate::toffoli(controls[0], controls[1], b)
        } else {
            Gate::mcx(controls, b)
        });
        g.extend(flip_y());
        return Ok(g);
    }
    let t = OrTree::new(y_wires, tree)?;
    let r = t.root();
    Ok(t.evaluate_around([Gate::x(r), Gate::toffoli(c, r, b), Gate::x(r)]))
}

/// `C_X` with `b` on wire 0, `y` on `1..=n`, `c` on `n+1` and, for the
/// or-tree form, tree ancillas on `n+2 ..= 2n`.
pub fn build_cx_zero_detect(n: usize, naive: bool) -> Result<Circuit> {
    check_n("C_X", n, 1)?;
    let y: Vec<usize> = (1..=n).collect();
    let uses_tree = !naive && n >= 2;
    let tree: Vec<usize> = if uses_tree {
        (n + 2..=2 * n).collect()
    } else {
        vec![]
    };
    let width = n + 2 + tree.len();
    let gates = cx_zero_detect_gates(n + 1, &y, 0, &tree, naive)?;
    Circuit::new(
        width,
        gates,
        tree,
        None,
        if naive { "cx-naive" } else { "cx" },
    )
}

/// Recursive transform on data wires `0..n` with one fresh ancilla per level
/// on wires `n ..= 2n-2`.
///
/// Level `n` splits the input as `a = b + 2y` with `b` the low bit, runs the
/// size-`N/2` transform on `y`, combines with the level ancilla `c`, and
/// finally relabels `b` to the top of the register. Lower levels' ancillas
/// double as carry and or-tree scratch for this level's gadgets.
pub fn build_qht_recursive(n: usize) -> Result<Circuit> {
    check_n("recursive QHT", n, 1)?;
    if n == 1 {
        return Circuit::new(1, vec![Gate::h(0)], [], None, "qht-rec");
    }
    let width = 2 * n - 1;
    let sub = build_qht_recursive(n - 1)?;
    let mut bld = CircuitBuilder::new(width, "qht-rec");
    bld.mark_ancillas(n..width);

    // sub data j -> 1+j and sub ancillas -> n..2n-3: a shift by one
    let map: Vec<usize> = (1..=sub.width()).collect();
    bld.append(&sub, &map);

    let b = 0;
    let c = width - 1;
    let y: Vec<usize> = (1..n).collect();
    let scratch: Vec<usize> = (n..width - 1).collect();

    let p2c = if y.len() >= 2 {
        cond_twos_complement_gates(c, &y, &scratch)
    } else {
        // (2 - y) mod 2 = y on a single bit
        vec![]
    };

    bld.push(Gate::h(c));
    bld.extend(p2c.iter().cloned());
    bld.extend(unitary_ur_gates(c, &y, b));
    bld.extend(p2c);
    bld.push(Gate::h(b));
    bld.extend(cx_zero_detect_gates(c, &y, b, &scratch, false)?);
    bld.push(Gate::h(b));
    bld.push(Gate::h(c));
    bld.push(Gate::cnot(b, c));
    bld.push(Gate::h(b));

    let mut perm: Vec<usize> = (0..width).collect();
    perm[0] = n - 1;
    for j in 0..n - 1 {
        perm[1 + j] = j;
    }
    bld.relabel(&perm);
    bld.build()
}

/// Coefficients and angles of the linear combination
/// `V = (e^{-i pi/4} I + e^{i pi/4} T) / sqrt(2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcuParams {
    pub theta: f64,
    pub theta_prime: f64,
    pub k: usize,
    pub a0: f64,
    pub a1: f64,
}

impl Default for LcuParams {
    fn default() -> Self {
        LcuParams {
            theta: FRAC_PI_4,
            theta_prime: FRAC_PI_6,
            k: 1,
            a0: FRAC_1_SQRT_2,
            a1: FRAC_1_SQRT_2,
        }
    }
}

/// Gates of `W` with select wire `s` controlling the two's complement of
/// `data`. `Rz(pi/2)` puts `e^{-i pi/4}` on the identity branch and
/// `e^{i pi/4}` on the complement branch, so no further phase is needed.
fn w_gates(s: usize, data: &[usize], carries: &[usize]) -> Vec<Gate> {
    let mut g = vec![Gate::h(s)];
    g.extend(cond_twos_complement_gates(s, data, carries));
    g.push(Gate::rz(FRAC_PI_2, s));
    g.push(Gate::h(s));
    g
}

/// `W` on data `0..n`, select `n`, carries `n+1 ..= 2n-2`. The select
/// wire is part of the data of this circuit; only the carries are ancillas.
pub fn build_unitary_w(n: usize) -> Result<Circuit> {
    check_n("W", n, 2)?;
    let data: Vec<usize> = (0..n).collect();
    let carries: Vec<usize> = (n + 1..2 * n - 1).collect();
    Circuit::new(2 * n - 1, w_gates(n, &data, &carries), carries, None, "w")
}

struct LcuLayout {
    data: Vec<usize>,
    s: usize,
    p: usize,
    carries: Vec<usize>,
    width: usize,
}

fn lcu_layout(n: usize) -> LcuLayout {
    LcuLayout {
        data: (0..n).collect(),
        s: n,
        p: n + 1,
        carries: (n + 2..2 * n).collect(),
        width: 2 * n,
    }
}

fn w_prime(l: &LcuLayout) -> Vec<Gate> {
    let mut g = vec![Gate::h(l.p)];
    g.extend(w_gates(l.s, &l.data, &l.carries));
    g
}

fn reflect_zero(l: &LcuLayout) -> [Gate; 3] {
    [Gate::z(l.s), Gate::z(l.p), Gate::cphase(PI, l.s, l.p)]
}

fn amplification_round(l: &LcuLayout) -> Vec<Gate> {
    let wp = w_prime(l);
    let mut g = reflect_zero(l).to_vec();
    g.extend(wp.iter().rev().map(Gate::inverse));
    g.extend(reflect_zero(l));
    g.push(Gate::global_phase(PI));
    g.extend(wp);
    g
}

/// `W'` followed by `k` rounds of `-W' R' W'^dag R'` on data `0..n`,
/// select `n`, rotation qubit `n+1`, carries `n+2 ..= 2n-1`.
pub fn build_lcu_amplified(n: usize, k: usize) -> Result<Circuit> {
    check_n("LCU", n, 2)?;
    let l = lcu_layout(n);
    let mut g = w_prime(&l);
    for _ in 0..k {
        g.extend(amplification_round(&l));
    }
    Circuit::new(l.width, g, l.carries.clone(), None, "lcu")
}

/// One amplification round then `QFT_N` on the data. Select, rotation
/// and carry wires all return to `|0>`.
pub fn build_qht_lcu(n: usize) -> Result<Circuit> {
    check_n("LCU QHT", n, 2)?;
    let l = lcu_layout(n);
    let mut g = w_prime(&l);
    g.extend(amplification_round(&l));
    g.extend(qft_gates(&l.data));
    let ancillas: Vec<usize> = (n..l.width).collect();
    Circuit::new(l.width, g, ancillas, None, "qht-lcu")
}

/// `V = (e^{-i pi/4} I + e^{i pi/4} T) / sqrt(2)` with `T|x> = |-x mod N>`.
pub fn lcu_target_matrix(n: usize) -> Matrix {
    let dim = 1usize << n;
    let a = C64::from_polar(FRAC_1_SQRT_2, -FRAC_PI_4);
    let b = C64::from_polar(FRAC_1_SQRT_2, FRAC_PI_4);
    Matrix::from_fn(dim, dim, |r, c| {
        let mut z = C64::new(0.0, 0.0);
        if r == c {
            z += a;
        }
        if r == (dim - c) % dim {
            z += b;
        }
        z
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplificationReport {
    pub n: usize,
    pub k: usize,
    /// `<00| <V psi| S'^k W' |00>|psi>`.
    pub overlap: C64,
    /// `sin((2k+1) theta')`.
    pub expected: f64,
    pub error: f64,
}

pub fn check_oblivious_amplification(n: usize, k: usize) -> Result<AmplificationReport> {
    check_oblivious_amplification_seeded(n, k, 0x5eed)
}

/// Runs `S'^k W'` on `|00>|psi>` for a random `psi` drawn from `seed`.
pub fn check_oblivious_amplification_seeded(
    n: usize,
    k: usize,
    seed: u64,
) -> Result<AmplificationReport> {
    let circuit = build_lcu_amplified(n, k)?;
    let dim = 1usize << n;
    let mut rng = StdRng::seed_from_u64(seed);
    let psi: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let psi = StateVector::normalized(psi)?;
    let v_psi = lcu_target_matrix(n).apply(psi.amplitudes())?;

    let mut input = vec![C64::new(0.0, 0.0); 1 << circuit.width()];
    input[..dim].copy_from_slice(psi.amplitudes());
    let out = run_circuit(&StateVector::from_amplitudes(input)?, &circuit)?;
    // ancillas are the high wires, so the |00>|0..0> block is the first `dim` entries
    let overlap: C64 = v_psi
        .iter()
        .zip(&out.amplitudes()[..dim])
        .map(|(a, b)| a.conj() * b)
        .sum();
    let expected = ((2 * k + 1) as f64 * LcuParams::default().theta_prime).sin();
    Ok(AmplificationReport {
        n,
        k,
        overlap,
        expected,
        error: (overlap - C64::new(expected, 0.0)).norm(),
    })
}
