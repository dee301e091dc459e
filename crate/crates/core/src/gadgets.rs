//! Reversible arithmetic and logic building blocks.
//!
//! Standard layout for the conditional gadgets on `n` data qubits:
//! data `0..n`, control `n`, carry ancillas `n+1 .. 2n-1` (there are
//! `max(n-2, 0)` of them). A register value `x` on the data wires with the
//! control set is the basis index `2^n + x`.

use crate::error::{QrtError, Result};
use crate::simcore::{Circuit, Gate};

/// Wire assignment of a gadget circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetLayout {
    pub data_qubits: Vec<usize>,
    pub control_qubit: Option<usize>,
    pub carry_ancillas: Vec<usize>,
    pub tree_ancillas: Vec<usize>,
    pub root_index: Option<usize>,
}

impl GadgetLayout {
    /// Layout of the conditional increment, decrement and complements.
    pub fn conditional(n: usize) -> Self {
        GadgetLayout {
            data_qubits: (0..n).collect(),
            control_qubit: Some(n),
            carry_ancillas: (n + 1..n + 1 + n.saturating_sub(2)).collect(),
            tree_ancillas: vec![],
            root_index: None,
        }
    }

    /// Layout of the or-tree on `n >= 2` data qubits.
    pub fn or_tree(n: usize) -> Self {
        GadgetLayout {
            data_qubits: (0..n).collect(),
            control_qubit: None,
            carry_ancillas: vec![],
            tree_ancillas: (n..2 * n - 1).collect(),
            root_index: Some(2 * n - 2),
        }
    }

    pub fn width(&self) -> usize {
        self.data_qubits.len()
            + usize::from(self.control_qubit.is_some())
            + self.carry_ancillas.len()
            + self.tree_ancillas.len()
    }
}

fn check_n(what: &'static str, n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(QrtError::InvalidSize { what, n, min });
    }
    Ok(())
}

/// Gates of the conditional increment on explicit wires. `carries` must hold
/// at least `data.len() - 2` clean wires.
pub fn cond_increment_gates(control: usize, data: &[usize], carries: &[usize]) -> Vec<Gate> {
    let n = data.len();
    let mut g = Vec::with_capacity(3 * n);
    if n == 0 {
        return g;
    }
    if n >= 3 {
        // a_1 = b_0 b_1, a_{i+1} = a_i b_{i+1}
        g.push(Gate::toffoli(data[0], data[1], carries[0]));
        for i in 1..n - 2 {
            g.push(Gate::toffoli(carries[i - 1], data[i + 1], carries[i]));
        }
        for i in (1..n - 1).rev() {
            g.push(Gate::toffoli(control, carries[i - 1], data[i + 1]));
            if i >= 2 {
                g.push(Gate::toffoli(carries[i - 2], data[i], carries[i - 1]));
            } else {
                g.push(Gate::toffoli(data[0], data[1], carries[0]));
            }
        }
    }
    if n >= 2 {
        g.push(Gate::toffoli(control, data[0], data[1]));
    }
    g.push(Gate::cnot(control, data[0]));
    g
}

fn conditional_circuit(n: usize, gates: Vec<Gate>, label: &str) -> Result<Circuit> {
    let layout = GadgetLayout::conditional(n);
    Circuit::new(layout.width(), gates, layout.carry_ancillas, None, label)
}

/// `|c>|x> -> |c>|x + c mod 2^n>` with `3n - 4` gates for `n >= 2`.
pub fn build_cond_increment(n: usize) -> Result<Circuit> {
    check_n("conditional increment", n, 1)?;
    let l = GadgetLayout::conditional(n);
    let gates = cond_increment_gates(n, &l.data_qubits, &l.carry_ancillas);
    conditional_circuit(n, gates, "inc")
}

/// Adjoint of the increment: `x -> x - c mod 2^n`.
pub fn build_cond_decrement(n: usize) -> Result<Circuit> {
    check_n("conditional decrement", n, 1)?;
    Ok(build_cond_increment(n)?.adjoint().with_label("dec"))
}

pub fn cond_ones_complement_gates(control: usize, data: &[usize]) -> Vec<Gate> {
    data.iter().map(|&d| Gate::cnot(control, d)).collect()
}

/// Bitwise NOT of the data register when the control is set.
pub fn build_cond_ones_complement(n: usize) -> Result<Circuit> {
    check_n("conditional one's complement", n, 1)?;
    let l = GadgetLayout::conditional(n);
    conditional_circuit(n, cond_ones_complement_gates(n, &l.data_qubits), "p1c")
}

pub fn cond_twos_complement_gates(control: usize, data: &[usize], carries: &[usize]) -> Vec<Gate> {
    let mut g = cond_ones_complement_gates(control, data);
    g.extend(cond_increment_gates(control, data, carries));
    g
}

/// `|c>|x> -> |c>|(2^n - x) mod 2^n>` when `c = 1`; `4n - 4` gates.
pub fn build_cond_twos_complement(n: usize) -> Result<Circuit> {
    check_n("conditional two's complement", n, 2)?;
    let l = GadgetLayout::conditional(n);
    let gates = cond_twos_complement_gates(n, &l.data_qubits, &l.carry_ancillas);
    conditional_circuit(n, gates, "p2c")
}

pub fn or_gate_gates(q0: usize, q1: usize, r: usize) -> [Gate; 3] {
    [
        Gate::cnot(q0, r),
        Gate::cnot(q1, r),
        Gate::toffoli(q0, q1, r),
    ]
}

/// `r ^= q0 | q1` on wires (q0, q1, r) = (0, 1, 2).
pub fn build_or_gate() -> Circuit {
    Circuit::from_gates(3, or_gate_gates(0, 1, 2).to_vec())
        .expect("fixed layout")
        .with_label("or")
}

/// Binary or-reduction of `data` into `ancillas`, pairing left to right
/// within each layer; an odd element is carried to the next layer as is.
/// The last ancilla is the root.
#[derive(Debug, Clone)]
pub struct OrTree {
    compute: Vec<Gate>,
    root: usize,
}

impl OrTree {
    /// Needs `data.len() >= 2` and `ancillas.len() >= data.len() - 1`; only
    /// the first `data.len() - 1` ancillas are used.
    pub fn new(data: &[usize], ancillas: &[usize]) -> Result<Self> {
        let n = data.len();
        check_n("or-tree", n, 2)?;
        if ancillas.len() < n - 1 {
            return Err(QrtError::InvalidArgument(format!(
                "or-tree on {} wires needs {} ancillas, got {}",
                n,
                n - 1,
                ancillas.len()
            )));
        }
        let mut compute = Vec::with_capacity(3 * (n - 1));
        let mut layer: Vec<usize> = data.to_vec();
        let mut next = ancillas.iter().copied();
        let mut root = 0;
        while layer.len() > 1 {
            let mut up = Vec::with_capacity(layer.len() / 2 + 1);
            for pair in layer.chunks(2) {
                if let [a, b] = *pair {
                    let r = next.next().expect("enough ancillas");
                    compute.extend(or_gate_gates(a, b, r));
                    up.push(r);
                    root = r;
                } else {
                    up.push(pair[0]);
                }
            }
            layer = up;
        }
        Ok(OrTree { compute, root })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn compute(&self) -> &[Gate] {
        &self.compute
    }

    /// The compute gates in reverse; every gate in the tree is self-inverse.
    pub fn uncompute(&self) -> impl Iterator<Item = Gate> + '_ {
        self.compute.iter().rev().cloned()
    }

    /// Compute, `body`, uncompute. The root holds the OR of the data for the
    /// duration of `body`, which must leave data and tree wires unchanged.
    pub fn evaluate_around(&self, body: impl IntoIterator<Item = Gate>) -> Vec<Gate> {
        let mut g = self.compute.clone();
        g.extend(body);
        g.extend(self.uncompute());
        g
    }
}

/// Or-tree on data `0..n` with ancillas `n..2n-1`, root `2n-2`.
///
/// * `(false, false)`: compute only, `3(n-1)` gates; the root ends holding
///   the OR and the inner nodes stay dirty.
/// * `(true, false)`: compute then mirrored uncompute, `6(n-1)` gates. This
///   is one complete evaluation; the root carries the OR between the halves
///   (see [`OrTree::evaluate_around`]) and everything is clean at the end.
/// * `(true, true)`: two complete evaluations, `12(n-1)` gates, the budget
///   when the root is consulted twice and reset after each use.
/// * `(false, true)` is rejected: the root cannot be reset while the inner
///   nodes it depends on are kept.
pub fn build_or_tree(n: usize, uncompute_internal: bool, reset_root: bool) -> Result<Circuit> {
    check_n("or-tree", n, 2)?;
    let l = GadgetLayout::or_tree(n);
    let tree = OrTree::new(&l.data_qubits, &l.tree_ancillas)?;
    let (gates, clean): (Vec<Gate>, Vec<usize>) = match (uncompute_internal, reset_root) {
        (false, false) => (tree.compute().to_vec(), vec![]),
        (true, false) => (tree.evaluate_around([]), l.tree_ancillas.clone()),
        (true, true) => {
            let mut g = tree.evaluate_around([]);
            g.extend(tree.evaluate_around([]));
            (g, l.tree_ancillas.clone())
        }
        (false, true) => {
            return Err(QrtError::InvalidArgument(
                "reset_root requires uncompute_internal".into(),
            ))
        }
    };
    Circuit::new(l.width(), gates, clean, None, "or-tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simcore::{count_gates, run_classical};

    fn data_of(v: usize, n: usize) -> usize {
        v & ((1 << n) - 1)
    }

    #[test]
    fn increment_examples() {
        let c = build_cond_increment(3).unwrap();
        assert_eq!(run_classical(&c, 8 | 7).unwrap(), 8);
        for x in 0..8 {
            assert_eq!(run_classical(&c, x).unwrap(), x);
        }
        let d = build_cond_decrement(3).unwrap();
        assert_eq!(run_classical(&d, 8).unwrap(), 8 | 7);
    }

    #[test]
    fn twos_complement_examples() {
        let c = build_cond_twos_complement(3).unwrap();
        assert_eq!(run_classical(&c, 8 | 3).unwrap(), 8 | 5);
        assert_eq!(run_classical(&c, 8).unwrap(), 8);
        assert!(build_cond_twos_complement(1).is_err());
        assert_eq!(
            count_gates(&build_cond_twos_complement(2).unwrap()).total,
            4
        );
    }

    #[test]
    fn ones_complement_example() {
        let c = build_cond_ones_complement(3).unwrap();
        assert_eq!(run_classical(&c, 8 | 5).unwrap(), 8 | 2);
    }

    #[test]
    fn or_gate_truth_table() {
        let c = build_or_gate();
        for x in 0..8usize {
            let (q0, q1, r) = (x & 1, x >> 1 & 1, x >> 2 & 1);
            let y = run_classical(&c, x).unwrap();
            assert_eq!(data_of(y, 2), x & 3);
            assert_eq!(y >> 2, r ^ (q0 | q1));
        }
        assert_eq!(count_gates(&c).total, 3);
    }

    #[test]
    fn or_tree_root() {
        let c = build_or_tree(4, false, false).unwrap();
        for x in 0..16 {
            let y = run_classical(&c, x).unwrap();
            assert_eq!(y >> 6 & 1, usize::from(x != 0));
        }
        assert_eq!(
            build_or_tree(2, false, false).unwrap().gates(),
            build_or_gate().gates()
        );
        assert!(build_or_tree(3, false, true).is_err());
        assert!(build_or_tree(1, false, false).is_err());
    }

    #[test]
    fn or_tree_slot_sees_root() {
        // a probe CNOT from the root between the halves copies the OR out
        let n = 5;
        let l = GadgetLayout::or_tree(n);
        let tree = OrTree::new(&l.data_qubits, &l.tree_ancillas).unwrap();
        let probe = l.width();
        let gates = tree.evaluate_around([Gate::cnot(tree.root(), probe)]);
        let c = Circuit::from_gates(probe + 1, gates).unwrap();
        for x in 0..1 << n {
            let y = run_classical(&c, x).unwrap();
            assert_eq!(y, x | (usize::from(x != 0) << probe));
        }
    }

    #[test]
    fn odd_leftover_carried() {
        // n = 3: (0,1) -> 3, then (3,2) -> 4 with the leftover last
        let tree = OrTree::new(&[0, 1, 2], &[3, 4]).unwrap();
        assert_eq!(tree.root(), 4);
        assert_eq!(tree.compute()[3], Gate::cnot(3, 4));
        assert_eq!(tree.compute()[4], Gate::cnot(2, 4));
    }
}
