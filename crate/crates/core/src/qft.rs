//! Quantum Fourier transform, `|a> -> N^{-1/2} sum_y w_N^{ay} |y>` with
//! `w_N = e^{2 pi i / N}`.

use std::f64::consts::PI;

use crate::error::{QrtError, Result};
use crate::simcore::{Circuit, Gate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QftOptions {
    /// With `false` the closing swap layer becomes a gate-free relabeling;
    /// the unitary is the same.
    pub include_final_swaps: bool,
}

impl Default for QftOptions {
    fn default() -> Self {
        QftOptions {
            include_final_swaps: true,
        }
    }
}

/// Ladder gates on `wires` (wire `k` carries bit `k`), without the reversal.
pub fn qft_ladder(wires: &[usize]) -> Vec<Gate> {
    let n = wires.len();
    let mut g = Vec::with_capacity(n * (n + 1) / 2);
    for j in (0..n).rev() {
        g.push(Gate::h(wires[j]));
        for k in (0..j).rev() {
            let angle = PI / (1u64 << (j - k)) as f64;
            g.push(Gate::cphase(angle, wires[k], wires[j]));
        }
    }
    g
}

/// Full QFT on `wires` including the swap layer.
pub fn qft_gates(wires: &[usize]) -> Vec<Gate> {
    let n = wires.len();
    let mut g = qft_ladder(wires);
    for i in 0..n / 2 {
        g.push(Gate::swap(wires[i], wires[n - 1 - i]));
    }
    g
}

/// `n(n+1)/2` ladder gates plus `floor(n/2)` swaps.
pub fn build_qft(n: usize, opts: QftOptions) -> Result<Circuit> {
    if n == 0 {
        return Err(QrtError::InvalidSize {
            what: "QFT",
            n,
            min: 1,
        });
    }
    let wires: Vec<usize> = (0..n).collect();
    if opts.include_final_swaps {
        Circuit::new(n, qft_gates(&wires), [], None, "qft")
    } else {
        let reversal: Vec<usize> = (0..n).rev().collect();
        Circuit::new(n, qft_ladder(&wires), [], Some(reversal), "qft")
    }
}

pub fn build_qft_inverse(n: usize, opts: QftOptions) -> Result<Circuit> {
    Ok(build_qft(n, opts)?.adjoint().with_label("iqft"))
}
