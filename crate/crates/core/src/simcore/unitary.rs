//! Dense matrices and unitary extraction from circuits.

use std::ops::Deref;

use rayon::prelude::*;

use crate::error::{QrtError, Result};
use crate::simcore::circuit::Circuit;
use crate::simcore::gate::C64;
use crate::simcore::statevector::{run_in_place, STATEVECTOR_CAP};

/// Default width cap for full unitary extraction (a 4096 x 4096 matrix).
pub const DEFAULT_UNITARY_CAP: usize = 12;

/// Default tolerance for every matrix comparison.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_real_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        Matrix::from_fn(rows, cols, |r, c| C64::new(f(r, c), 0.0))
    }

    /// Builds a matrix whose column `j` is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Self {
        Matrix::from_fn(rows, columns.len(), |r, c| columns[c][r])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(QrtError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other[(k, c)];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(QrtError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| (0..self.cols).map(|c| self[(r, c)] * v[c]).sum())
            .collect())
    }

    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Matrix {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Matrix {
        self.map(|z| z * s)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Sub-matrix on the given row and column indices, in that order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])])
    }

    /// Max-entry absolute difference.
    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// max |M^dag M - I|.
    pub fn unitarity_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let g = self.adjoint().matmul(self).expect("square");
        g.max_abs_diff(&Matrix::identity(self.rows))
            .expect("same shape")
    }

    /// True when every entry is 0 or 1 within `tol` and each column has a single 1.
    pub fn is_permutation(&self, tol: f64) -> bool {
        (0..self.cols).all(|c| {
            let mut ones = 0;
            for r in 0..self.rows {
                let z = self[(r, c)];
                if (z - C64::new(1.0, 0.0)).norm() <= tol {
                    ones += 1;
                } else if z.norm() > tol {
                    return false;
                }
            }
            ones == 1
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| {
                    let z = self[(r, c)];
                    format!("{:e},{:e}", z.re, z.im)
                })
                .collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(QrtError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

/// Square matrix with `max |U^dag U - I| < 1e-10`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary(Matrix);

impl DenseUnitary {
    pub const TOLERANCE: f64 = 1e-10;

    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(QrtError::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        let err = m.unitarity_error();
        if err.is_nan() || err >= Self::TOLERANCE {
            return Err(QrtError::NotUnitary(err));
        }
        Ok(DenseUnitary(m))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn adjoint(&self) -> DenseUnitary {
        DenseUnitary(self.0.adjoint())
    }
}

impl Deref for DenseUnitary {
    type Target = Matrix;
    fn deref(&self) -> &Matrix {
        &self.0
    }
}

/// Max-entry error between two matrices of equal shape; no phase forgiveness.
pub fn compare_unitaries(a: &Matrix, b: &Matrix) -> Result<f64> {
    a.max_abs_diff(b)
}

#[derive(Debug, Clone, Copy)]
pub struct SimOptions {
    pub unitary_cap: usize,
    pub parallel: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions {
            unitary_cap: DEFAULT_UNITARY_CAP,
            parallel: true,
        }
    }
}

fn columns_for(circuit: &Circuit, inputs: &[usize], parallel: bool) -> Vec<Vec<C64>> {
    let dim = 1usize << circuit.width();
    let run = |&idx: &usize| {
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[idx] = C64::new(1.0, 0.0);
        run_in_place(&mut amps, circuit);
        amps
    };
    if parallel {
        inputs.par_iter().map(run).collect()
    } else {
        inputs.iter().map(run).collect()
    }
}

/// Full unitary: column `j` is the circuit applied to `|j>`.
pub fn circuit_unitary(circuit: &Circuit) -> Result<DenseUnitary> {
    circuit_unitary_with(circuit, SimOptions::default())
}

pub fn circuit_unitary_with(circuit: &Circuit, opts: SimOptions) -> Result<DenseUnitary> {
    if circuit.width() > opts.unitary_cap {
        return Err(QrtError::WidthAboveCap {
            width: circuit.width(),
            cap: opts.unitary_cap,
        });
    }
    let dim = 1usize << circuit.width();
    let inputs: Vec<usize> = (0..dim).collect();
    let cols = columns_for(circuit, &inputs, opts.parallel);
    DenseUnitary::new(Matrix::from_columns(dim, &cols))
}

/// Action of a circuit on its data wires with every ancilla held at `|0>`.
#[derive(Debug, Clone)]
pub struct DataBlock {
    /// Rows and columns indexed by data-register value.
    pub matrix: Matrix,
    /// Largest norm, over all data basis inputs, of the output component
    /// with some ancilla not in `|0>`.
    pub ancilla_residual: f64,
}

fn compress(full: usize, data_wires: &[usize]) -> usize {
    data_wires
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &w)| acc | ((full >> w & 1) << k))
}

fn expand(value: usize, data_wires: &[usize]) -> usize {
    data_wires
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &w)| acc | ((value >> k & 1) << w))
}

/// Runs every data basis state (ancillas at zero) through the circuit.
/// The data register may be at most 12 qubits; the full width at most 20.
pub fn data_block(circuit: &Circuit) -> Result<DataBlock> {
    data_block_with(circuit, SimOptions::default())
}

pub fn data_block_with(circuit: &Circuit, opts: SimOptions) -> Result<DataBlock> {
    if circuit.width() > STATEVECTOR_CAP {
        return Err(QrtError::WidthAboveCap {
            width: circuit.width(),
            cap: STATEVECTOR_CAP,
        });
    }
    let data = circuit.data_wires();
    if data.len() > opts.unitary_cap {
        return Err(QrtError::WidthAboveCap {
            width: data.len(),
            cap: opts.unitary_cap,
        });
    }
    let ddim = 1usize << data.len();
    let anc_mask = circuit.ancillas().iter().fold(0usize, |m, &a| m | (1 << a));
    let inputs: Vec<usize> = (0..ddim).map(|v| expand(v, &data)).collect();
    let outs = columns_for(circuit, &inputs, opts.parallel);
    let mut residual: f64 = 0.0;
    let mut cols = Vec::with_capacity(ddim);
    for out in outs {
        let mut col = vec![C64::new(0.0, 0.0); ddim];
        let mut leak = 0.0;
        for (idx, a) in out.iter().enumerate() {
            if idx & anc_mask == 0 {
                col[compress(idx, &data)] = *a;
            } else {
                leak += a.norm_sqr();
            }
        }
        residual = residual.max(leak.sqrt());
        cols.push(col);
    }
    Ok(DataBlock {
        matrix: Matrix::from_columns(ddim, &cols),
        ancilla_residual: residual,
    })
}

/// Output of the circuit on one data basis input (ancillas at zero), as a
/// full-width amplitude vector.
pub fn run_data_basis(circuit: &Circuit, value: usize) -> Result<Vec<C64>> {
    if circuit.width() > STATEVECTOR_CAP {
        return Err(QrtError::WidthAboveCap {
            width: circuit.width(),
            cap: STATEVECTOR_CAP,
        });
    }
    let data = circuit.data_wires();
    let idx = expand(value, &data);
    Ok(columns_for(circuit, &[idx], false)
        .pop()
        .expect("one column"))
}
