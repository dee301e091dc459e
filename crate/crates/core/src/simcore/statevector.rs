use crate::error::{QrtError, Result};
use crate::simcore::circuit::Circuit;
use crate::simcore::gate::{Gate, GateKind, C64};

/// Largest register a statevector run accepts.
pub const STATEVECTOR_CAP: usize = 20;

const NORM_TOL: f64 = 1e-12;

/// Normalized amplitude vector over `2^num_qubits` basis states.
/// Qubit `k` is bit `k` of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits > STATEVECTOR_CAP {
            return Err(QrtError::WidthAboveCap {
                width: num_qubits,
                cap: STATEVECTOR_CAP,
            });
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(QrtError::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(StateVector {
            num_qubits,
            amplitudes,
        })
    }

    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let dim = amplitudes.len();
        if !dim.is_power_of_two() {
            return Err(QrtError::NotPowerOfTwo(dim));
        }
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(QrtError::NotNormalized((norm - 1.0).abs()));
        }
        Ok(StateVector {
            num_qubits: dim.trailing_zeros() as usize,
            amplitudes,
        })
    }

    /// Scales `amplitudes` to unit norm first.
    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if n == 0.0 || !n.is_finite() {
            return Err(QrtError::NotNormalized(f64::INFINITY));
        }
        amplitudes.iter_mut().for_each(|a| *a /= n);
        StateVector::from_amplitudes(amplitudes)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }
    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }
    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }
    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn check_operands(gate: &Gate, width: usize) -> Result<()> {
    match gate.max_operand() {
        Some(q) if q >= width => Err(QrtError::QubitOutOfRange { qubit: q, width }),
        _ => Ok(()),
    }
}

/// In-place gate action on a raw amplitude vector of `width` qubits.
pub(crate) fn apply_gate_in_place(amps: &mut [C64], gate: &Gate) {
    let kind = gate.kind();
    match kind {
        GateKind::GlobalPhase(a) => {
            let ph = C64::from_polar(1.0, a);
            amps.iter_mut().for_each(|x| *x *= ph);
        }
        GateKind::Swap => {
            let (a, b) = (gate.targets()[0], gate.targets()[1]);
            let (ma, mb) = (1usize << a, 1usize << b);
            for i in 0..amps.len() {
                if i & ma != 0 && i & mb == 0 {
                    amps.swap(i, i ^ ma ^ mb);
                }
            }
        }
        _ => {
            let m = kind.target_matrix().expect("single-target gate");
            let cmask = gate
                .controls()
                .iter()
                .fold(0usize, |acc, &c| acc | (1 << c));
            let t = 1usize << gate.targets()[0];
            let diagonal = m[1] == C64::new(0.0, 0.0) && m[2] == C64::new(0.0, 0.0);
            for i in 0..amps.len() {
                if i & t != 0 || i & cmask != cmask {
                    continue;
                }
                let j = i | t;
                if diagonal {
                    amps[i] *= m[0];
                    amps[j] *= m[3];
                } else {
                    let (a0, a1) = (amps[i], amps[j]);
                    amps[i] = m[0] * a0 + m[1] * a1;
                    amps[j] = m[2] * a0 + m[3] * a1;
                }
            }
        }
    }
}

/// Moves the content of wire `i` to wire `perm[i]`.
pub(crate) fn permute_wires(amps: &[C64], perm: &[usize]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); amps.len()];
    for (idx, &a) in amps.iter().enumerate() {
        let mut dst = 0usize;
        for (i, &p) in perm.iter().enumerate() {
            if idx >> i & 1 == 1 {
                dst |= 1 << p;
            }
        }
        out[dst] = a;
    }
    out
}

pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector> {
    check_operands(gate, state.num_qubits)?;
    if let Some(a) = gate.kind().angle() {
        if !a.is_finite() {
            return Err(QrtError::NonFiniteAngle(a));
        }
    }
    let mut out = state.clone();
    apply_gate_in_place(&mut out.amplitudes, gate);
    Ok(out)
}

pub(crate) fn run_in_place(amps: &mut Vec<C64>, circuit: &Circuit) {
    for g in circuit.gates() {
        apply_gate_in_place(amps, g);
    }
    if let Some(p) = circuit.relabeling() {
        *amps = permute_wires(amps, p);
    }
}

/// Applies the gates in order, then the wire relabeling.
pub fn run_circuit(state: &StateVector, circuit: &Circuit) -> Result<StateVector> {
    if state.num_qubits != circuit.width() {
        return Err(QrtError::DimensionMismatch {
            expected: 1 << circuit.width(),
            found: state.amplitudes.len(),
        });
    }
    let mut amps = state.amplitudes.clone();
    run_in_place(&mut amps, circuit);
    Ok(StateVector {
        num_qubits: state.num_qubits,
        amplitudes: amps,
    })
}

/// Runs a circuit made only of basis-permuting gates (X, CNOT, Toffoli,
/// MCX, SWAP) on the basis state `input`. Much cheaper than a statevector
/// when the gadget is classical.
pub fn run_classical(circuit: &Circuit, input: usize) -> Result<usize> {
    let mut v = input;
    for g in circuit.gates() {
        match g.kind() {
            GateKind::X | GateKind::Cnot | GateKind::Toffoli | GateKind::Mcx(_) => {
                if g.controls().iter().all(|&c| v >> c & 1 == 1) {
                    v ^= 1 << g.targets()[0];
                }
            }
            GateKind::Swap => {
                let (a, b) = (g.targets()[0], g.targets()[1]);
                if (v >> a & 1) != (v >> b & 1) {
                    v ^= (1 << a) | (1 << b);
                }
            }
            other => {
                return Err(QrtError::InvalidArgument(format!(
                    "gate {} is not a classical permutation",
                    other.name()
                )))
            }
        }
    }
    if let Some(p) = circuit.relabeling() {
        v = p
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &j)| acc | ((v >> i & 1) << j));
    }
    Ok(v)
}
