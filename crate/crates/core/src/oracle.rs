//! Classical reference matrices, evaluated entry by entry.
//!
//! Nothing here looks at a circuit. Index conventions:
//!
//! | kind | rows `m` | cols `n` |
//! |------|----------|----------|
//! | DFT, DHT | `0..N` | `0..N` |
//! | DCT1 | `0..=N` | `0..=N` |
//! | DST1 | `1..N` | `1..N` |
//! | DCT2, DCT3, DCT4, DST4 | `0..N` | `0..N` |
//! | DST2 | `1..=N` | `0..N` |
//! | DST3 | `0..N` | `1..=N` |
//!
//! The boundary weight is `k_j = 1/sqrt(2)` for `j` in `{0, N}` and 1
//! otherwise. With the weight at `j = N` alone, DCT1 and DCT2 are not
//! orthogonal.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{QrtError, Result};
use crate::simcore::{DenseUnitary, Matrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    Dft,
    Dht,
    Dct1,
    Dct2,
    Dct3,
    Dct4,
    Dst1,
    Dst2,
    Dst3,
    Dst4,
}

impl TransformKind {
    pub const ALL: [TransformKind; 10] = [
        TransformKind::Dft,
        TransformKind::Dht,
        TransformKind::Dct1,
        TransformKind::Dct2,
        TransformKind::Dct3,
        TransformKind::Dct4,
        TransformKind::Dst1,
        TransformKind::Dst2,
        TransformKind::Dst3,
        TransformKind::Dst4,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TransformKind::Dft => "DFT",
            TransformKind::Dht => "DHT",
            TransformKind::Dct1 => "DCT1",
            TransformKind::Dct2 => "DCT2",
            TransformKind::Dct3 => "DCT3",
            TransformKind::Dct4 => "DCT4",
            TransformKind::Dst1 => "DST1",
            TransformKind::Dst2 => "DST2",
            TransformKind::Dst3 => "DST3",
            TransformKind::Dst4 => "DST4",
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformKind {
    type Err = QrtError;
    fn from_str(s: &str) -> Result<Self> {
        TransformKind::ALL
            .iter()
            .copied()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| QrtError::UnknownTransform(s.to_string()))
    }
}

/// A reference transform of parameter `N = 2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransformSpec {
    kind: TransformKind,
    size: usize,
}

impl TransformSpec {
    pub fn new(kind: TransformKind, size: usize) -> Result<Self> {
        if !size.is_power_of_two() || size < 2 {
            return Err(QrtError::NotPowerOfTwo(size));
        }
        Ok(TransformSpec { kind, size })
    }

    /// Size `N = 2^n` from the qubit count `n`.
    pub fn with_qubits(kind: TransformKind, n: usize) -> Result<Self> {
        if n == 0 || n >= usize::BITS as usize {
            return Err(QrtError::InvalidSize {
                what: "transform",
                n,
                min: 1,
            });
        }
        TransformSpec::new(kind, 1 << n)
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    /// The parameter `N`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            TransformKind::Dct1 => self.size + 1,
            TransformKind::Dst1 => self.size - 1,
            _ => self.size,
        }
    }

    /// First row and first column index of the formula's ranges.
    pub fn index_offsets(&self) -> (usize, usize) {
        match self.kind {
            TransformKind::Dst1 => (1, 1),
            TransformKind::Dst2 => (1, 0),
            TransformKind::Dst3 => (0, 1),
            _ => (0, 0),
        }
    }
}

pub fn cas(x: f64) -> f64 {
    x.cos() + x.sin()
}

fn k(j: usize, big_n: usize) -> f64 {
    if j == 0 || j == big_n {
        std::f64::consts::FRAC_1_SQRT_2
    } else {
        1.0
    }
}

/// Entry `(m, n)` of the transform, with `m` and `n` in the formula's own
/// index ranges (see the module table).
pub fn reference_entry(spec: &TransformSpec, m: usize, n: usize) -> C64 {
    let big_n = spec.size;
    let nf = big_n as f64;
    let (mf, cf) = (m as f64, n as f64);
    let s = (2.0 / nf).sqrt();
    let real = |x: f64| C64::new(x, 0.0);
    match spec.kind {
        TransformKind::Dft => {
            C64::from_polar(nf.sqrt().recip(), 2.0 * PI * ((m * n) % big_n) as f64 / nf)
        }
        TransformKind::Dht => real(cas(2.0 * PI * ((m * n) % big_n) as f64 / nf) / nf.sqrt()),
        TransformKind::Dct1 => real(s * k(m, big_n) * k(n, big_n) * (mf * cf * PI / nf).cos()),
        TransformKind::Dst1 => real(s * (mf * cf * PI / nf).sin()),
        TransformKind::Dct2 => real(s * k(m, big_n) * (mf * (cf + 0.5) * PI / nf).cos()),
        TransformKind::Dst2 => real(s * k(m, big_n) * (mf * (cf + 0.5) * PI / nf).sin()),
        TransformKind::Dct3 => real(s * k(n, big_n) * ((mf + 0.5) * cf * PI / nf).cos()),
        TransformKind::Dst3 => real(s * k(n, big_n) * ((mf + 0.5) * cf * PI / nf).sin()),
        TransformKind::Dct4 => real(s * ((mf + 0.5) * (cf + 0.5) * PI / nf).cos()),
        TransformKind::Dst4 => real(s * ((mf + 0.5) * (cf + 0.5) * PI / nf).sin()),
    }
}

/// Dense matrix of the transform; row/column `r` is formula index
/// `r + offset`.
pub fn reference_matrix(spec: &TransformSpec) -> Matrix {
    let (ro, co) = spec.index_offsets();
    let d = spec.dim();
    Matrix::from_fn(d, d, |r, c| reference_entry(spec, r + ro, c + co))
}

/// [`reference_matrix`] with the unitarity check applied.
pub fn build_reference_matrix(spec: &TransformSpec) -> Result<DenseUnitary> {
    DenseUnitary::new(reference_matrix(spec))
}

/// `(1 - i)/2 F + (1 + i)/2 F^*`.
pub fn build_dht_from_dft(size: usize) -> Result<DenseUnitary> {
    let f = reference_matrix(&TransformSpec::new(TransformKind::Dft, size)?);
    let a = C64::new(0.5, -0.5);
    let b = C64::new(0.5, 0.5);
    DenseUnitary::new(f.scale(a).add(&f.conj().scale(b))?)
}
