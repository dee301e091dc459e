//! Cosine and sine transforms of Types I to IV.
//!
//! Every circuit here acts on `n` data wires `0..n` and a control wire `n`
//! (the most significant bit of the doubled register), so the basis label
//! of `|c>|x>` is `c*N + x`. Or-tree and carry scratch sits on wires
//! `n+1 ..`, always returned to `|0>`.

mod block;

pub use block::{
    verify_block_identity, verify_block_identity_with, verify_qst1_subspace, BasisLabel,
    BlockIdentityReport, EmbeddingRecord, SubspaceReport,
};

use std::f64::consts::PI;

use crate::error::{QrtError, Result};
use crate::gadgets::{
    cond_increment_gates, cond_ones_complement_gates, cond_twos_complement_gates, OrTree,
};
use crate::qft::qft_gates;
use crate::simcore::{Circuit, Gate, C64};

fn check_n(what: &'static str, n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(QrtError::InvalidSize { what, n, min });
    }
    Ok(())
}

/// Wire roles shared by the Type-I/II/III builders.
#[derive(Debug, Clone)]
struct Layout {
    data: Vec<usize>,
    control: usize,
    scratch: Vec<usize>,
}

impl Layout {
    /// `n - 1` scratch wires: enough for the or-tree and, reused, the
    /// `n - 2` carries of the two's complement.
    fn with_scratch(n: usize, scratch: usize) -> Self {
        Layout {
            data: (0..n).collect(),
            control: n,
            scratch: (n + 1..n + 1 + scratch).collect(),
        }
    }

    fn width(&self) -> usize {
        self.data.len() + 1 + self.scratch.len()
    }

    /// Data plus control, LSB first; the register `QFT_{2N}` acts on.
    fn doubled(&self) -> Vec<usize> {
        let mut w = self.data.clone();
        w.push(self.control);
        w
    }

    fn circuit(&self, gates: Vec<Gate>, label: &str) -> Result<Circuit> {
        Circuit::new(self.width(), gates, self.scratch.clone(), None, label)
    }
}

/// `w_{4N}^{2^{j-1}}` exponent unit: `theta = 2 pi / 4N`.
fn theta(n: usize) -> f64 {
    2.0 * PI / (4u64 << n) as f64
}

/// The diagonal 2x2 factors used by the Type-II and Type-IV diagonals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagonalFamily {
    /// Number of data qubits; `N = 2^n`.
    pub n: usize,
}

impl DiagonalFamily {
    fn w(&self, k: f64) -> C64 {
        C64::from_polar(1.0, k * theta(self.n))
    }

    /// `L_j = diag(1, w_{4N}^{2^{j-1}})`, `j` in `1..=n`.
    pub fn l(&self, j: usize) -> [C64; 2] {
        [C64::new(1.0, 0.0), self.w((1u64 << (j - 1)) as f64)]
    }

    /// `K_j = diag(w_{4N}^{-2^{j-1}}, 1)`.
    pub fn k(&self, j: usize) -> [C64; 2] {
        [self.w(-((1u64 << (j - 1)) as f64)), C64::new(1.0, 0.0)]
    }

    /// `C = diag(1, w_{4N}^{-1})`.
    pub fn c(&self) -> [C64; 2] {
        [C64::new(1.0, 0.0), self.w(-1.0)]
    }

    /// Diagonal of `factor(n) (x) ... (x) factor(1)` indexed by register
    /// value; bit `j-1` selects the entry of factor `j`.
    pub fn tensor(&self, factor: impl Fn(usize) -> [C64; 2]) -> Vec<C64> {
        (0..1usize << self.n)
            .map(|x| (1..=self.n).map(|j| factor(j)[x >> (j - 1) & 1]).product())
            .collect()
    }

    /// `Delta_1 = diag(1, w, ..., w^{N-1})`.
    pub fn delta1(&self) -> Vec<C64> {
        self.tensor(|j| self.l(j))
    }

    /// `Delta_2 = diag(w^{-N+1}, ..., w^{-1}, 1)`.
    pub fn delta2(&self) -> Vec<C64> {
        self.tensor(|j| self.k(j))
    }
}

/// `L_j` on every data wire when the control is 0, built as
/// `X(c) CP(c, d) X(c)`.
fn l_ladder_when_zero(l: &Layout, th: f64) -> Vec<Gate> {
    let mut g = vec![Gate::x(l.control)];
    for (j, &d) in l.data.iter().enumerate() {
        g.push(Gate::cphase((1u64 << j) as f64 * th, l.control, d));
    }
    g.push(Gate::x(l.control));
    g
}

fn diagonal_gates(l: &Layout, second: Second) -> Vec<Gate> {
    let th = theta(l.data.len());
    let mut g = l_ladder_when_zero(l, th);
    for (j, &d) in l.data.iter().enumerate() {
        let a = -((1u64 << j) as f64) * th;
        match second {
            // K_j = X L_j^* X on the data wire
            Second::Delta2 => {
                g.push(Gate::x(d));
                g.push(Gate::cphase(a, l.control, d));
                g.push(Gate::x(d));
            }
            Second::Delta1Conj => g.push(Gate::cphase(a, l.control, d)),
        }
    }
    g.push(Gate::phase(-th, l.control));
    g
}

#[derive(Clone, Copy)]
enum Second {
    Delta2,
    Delta1Conj,
}

/// `D_1 = (C (x) I)(Delta_1 (+) Delta_2)` on data `0..n`, control `n`.
pub fn build_d1(n: usize) -> Result<Circuit> {
    check_n("D_1", n, 1)?;
    let l = Layout::with_scratch(n, 0);
    l.circuit(diagonal_gates(&l, Second::Delta2), "d1")
}

/// `D_2 = (C (x) I)(Delta_1 (+) Delta_1^*)`; with `corrected = false` the
/// second block is `Delta_2` instead, which is the same circuit as `D_1`.
pub fn build_d2(n: usize, corrected: bool) -> Result<Circuit> {
    check_n("D_2", n, 1)?;
    let l = Layout::with_scratch(n, 0);
    let second = if corrected {
        Second::Delta1Conj
    } else {
        Second::Delta2
    };
    l.circuit(diagonal_gates(&l, second), "d2")
}

/// `D`: `S` then `H` on the control when the data register is nonzero.
fn d_gates(l: &Layout, tree: &OrTree) -> Vec<Gate> {
    let r = tree.root();
    tree.evaluate_around([Gate::cs(r, l.control), Gate::ch(r, l.control)])
}

fn t_gates(l: &Layout, tree: &OrTree) -> Vec<Gate> {
    let mut g = d_gates(l, tree);
    g.extend(cond_twos_complement_gates(l.control, &l.data, &l.scratch));
    g
}

fn type1_layout(n: usize) -> Result<(Layout, OrTree)> {
    check_n("Type-I transform", n, 2)?;
    let l = Layout::with_scratch(n, n - 1);
    let tree = OrTree::new(&l.data, &l.scratch)?;
    Ok((l, tree))
}

/// `T_N = P_2C D`.
pub fn build_t_gate(n: usize) -> Result<Circuit> {
    let (l, tree) = type1_layout(n)?;
    l.circuit(t_gates(&l, &tree), "t")
}

/// `T_N^dag QFT_{2N} T_N`, which equals `C^I (+) i S^I`.
pub fn build_qcst_type1_core(n: usize) -> Result<Circuit> {
    let (l, tree) = type1_layout(n)?;
    let t = t_gates(&l, &tree);
    let mut g = t.clone();
    g.extend(qft_gates(&l.doubled()));
    g.extend(t.iter().rev().map(Gate::inverse));
    l.circuit(g, "qcst1-core")
}

/// Type-I cosine and sine transforms in one circuit: `C^I` on the
/// control-0 labels together with `|1,0>`, `S^I` on `|1,x>` for `x != 0`.
///
/// After `P_2C` the nonzero branch needs `D^dag = H S^dag`, and the sine
/// block's phase `i` is removed by one more `S^dag`. Both act only when the
/// data is nonzero (an unconditional `S^dag` would put `-i` on `|1,0>`,
/// which belongs to the cosine block), so all three gates share a single
/// or-tree evaluation.
pub fn build_qcst_type1(n: usize) -> Result<Circuit> {
    let (l, tree) = type1_layout(n)?;
    let c = l.control;
    let r = tree.root();
    let mut g = t_gates(&l, &tree);
    g.extend(qft_gates(&l.doubled()));
    g.extend(cond_twos_complement_gates(c, &l.data, &l.scratch));
    g.extend(tree.evaluate_around([Gate::ch(r, c), Gate::csdg(r, c), Gate::csdg(r, c)]));
    l.circuit(g, "qcst1")
}

/// `A_N = P_2C (H (x) I)`.
pub fn build_a_n(n: usize) -> Result<Circuit> {
    check_n("A_N", n, 2)?;
    let l = Layout::with_scratch(n, n - 2);
    let mut g = vec![Gate::h(l.control)];
    g.extend(cond_twos_complement_gates(l.control, &l.data, &l.scratch));
    l.circuit(g, "a")
}

/// Sine-only Type-I transform without zero detection. Correct on inputs
/// supported on `1..N`; the control wire returns to `|0>` there. On `|0>`
/// the output leaves the control-0 subspace.
pub fn build_qst1_optimized(n: usize) -> Result<Circuit> {
    check_n("optimized Type-I sine transform", n, 2)?;
    let l = Layout::with_scratch(n, n - 2);
    let c = l.control;
    let p2c = cond_twos_complement_gates(c, &l.data, &l.scratch);
    let mut g = vec![Gate::x(c), Gate::h(c)];
    g.extend(p2c.iter().cloned());
    g.extend(qft_gates(&l.doubled()));
    g.extend(p2c);
    g.extend([Gate::h(c), Gate::sdg(c), Gate::x(c)]);
    l.circuit(g, "qst1-opt")
}

fn g_gates(l: &Layout, tree: &OrTree) -> Vec<Gate> {
    let c = l.control;
    let r = tree.root();
    let mut g = vec![Gate::h(c), Gate::s(c)];
    g.extend(tree.evaluate_around([
        Gate::x(r),
        Gate::csdg(r, c),
        Gate::ch(r, c),
        Gate::csdg(r, c),
        Gate::x(r),
    ]));
    g
}

fn type2_layout(n: usize) -> Result<(Layout, OrTree)> {
    check_n("Type-II transform", n, 2)?;
    let l = Layout::with_scratch(n, n - 1);
    let tree = OrTree::new(&l.data, &l.scratch)?;
    Ok((l, tree))
}

/// `G`: `H`, `S` on the control, then `S^dag H S^dag` when the data is zero.
pub fn build_g_gate(n: usize) -> Result<Circuit> {
    let (l, tree) = type2_layout(n)?;
    l.circuit(g_gates(&l, &tree), "g")
}

fn type2_gates(l: &Layout, tree: &OrTree) -> Vec<Gate> {
    let c = l.control;
    let mut g = vec![Gate::h(c)];
    g.extend(cond_ones_complement_gates(c, &l.data));
    g.extend(qft_gates(&l.doubled()));
    g.extend(diagonal_gates(l, Second::Delta2));
    g.extend(cond_twos_complement_gates(c, &l.data, &l.scratch));
    g.extend(g_gates(l, tree));
    let dec: Vec<Gate> = cond_increment_gates(c, &l.data, &l.scratch)
        .into_iter()
        .rev()
        .collect();
    g.extend(dec);
    g.push(Gate::z(c));
    g
}

/// Type-II: `C^II` on the control-0 labels and `S^II` on the control-1
/// labels, sine row `m` (formula index `1..=N`) on register value `m - 1`.
pub fn build_qcst_type2(n: usize) -> Result<Circuit> {
    let (l, tree) = type2_layout(n)?;
    l.circuit(type2_gates(&l, &tree), "qcst2")
}

/// Type-III as the adjoint of the Type-II circuit: both transforms are real,
/// so the adjoint blocks are the transposes `C^III` and `S^III`.
pub fn build_qcst_type3(n: usize) -> Result<Circuit> {
    check_n("Type-III transform", n, 2)?;
    Ok(build_qcst_type2(n)?.adjoint().with_label("qcst3"))
}

/// Type-IV. Applies `U^T`, not `U^dag`, after the QFT, so the diagonal
/// appears unconjugated on both sides; the global factor is `w_{8N}`.
/// With `corrected = false` the diagonal uses `Delta_2` for its control-1
/// block and the identity fails.
pub fn build_qcst_type4(n: usize, corrected: bool) -> Result<Circuit> {
    check_n("Type-IV transform", n, 1)?;
    let l = Layout::with_scratch(n, 0);
    let c = l.control;
    let second = if corrected {
        Second::Delta1Conj
    } else {
        Second::Delta2
    };
    let d2 = diagonal_gates(&l, second);
    let p1c = cond_ones_complement_gates(c, &l.data);
    let mut g = vec![Gate::sdg(c), Gate::h(c)];
    g.extend(d2.iter().cloned());
    g.extend(p1c.iter().cloned());
    g.extend(qft_gates(&l.doubled()));
    g.extend(p1c);
    g.extend(d2);
    g.extend([Gate::h(c), Gate::sdg(c)]);
    g.push(Gate::global_phase(2.0 * PI / (8u64 << n) as f64));
    g.push(Gate::s(c));
    l.circuit(
        g,
        if corrected {
            "qcst4"
        } else {
            "qcst4-incorrect"
        },
    )
}

#[cfg(test)]
mod tests;
