//! Block-identity checks: does a circuit act as `C (+) phase * S` on its
//! doubled register, and under which assignment of transform indices to
//! basis labels?

use serde::{Deserialize, Serialize};

use crate::error::{QrtError, Result};
use crate::oracle::{reference_matrix, TransformSpec};
use crate::simcore::{data_block, Circuit, Matrix, C64, DEFAULT_TOLERANCE};

/// Basis state `|control>|value>` of the doubled register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisLabel {
    pub control: usize,
    pub value: usize,
}

impl BasisLabel {
    fn from_index(idx: usize, size: usize) -> Self {
        BasisLabel {
            control: idx / size,
            value: idx % size,
        }
    }

    /// `control * N + value`.
    pub fn index(&self, size: usize) -> usize {
        self.control * size + self.value
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockIdentityReport {
    pub cos_spec: TransformSpec,
    pub sin_spec: TransformSpec,
    pub max_error_cos_block: f64,
    pub max_error_sin_block: f64,
    /// Largest entry coupling the two blocks.
    pub max_error_offblock: f64,
    pub ancilla_residual: f64,
    /// `cos_rows[m]` is the label carrying row `m` of the cosine matrix.
    pub cos_rows: Vec<BasisLabel>,
    pub cos_cols: Vec<BasisLabel>,
    pub sin_rows: Vec<BasisLabel>,
    pub sin_cols: Vec<BasisLabel>,
    /// Factor the sine matrix was multiplied by before comparison.
    pub phase: C64,
    /// False when no index map fit within tolerance and the embedding
    /// above is the greedy best guess.
    pub embedding_exact: bool,
    /// Number of index maps that fit each block. Above 1 the oracle has a
    /// symmetry and the lexicographically smallest map is reported.
    pub fits_cos: usize,
    pub fits_sin: usize,
}

impl BlockIdentityReport {
    pub fn max_error(&self) -> f64 {
        self.max_error_cos_block
            .max(self.max_error_sin_block)
            .max(self.max_error_offblock)
            .max(self.ancilla_residual)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.embedding_exact && self.max_error() < tol
    }

    pub fn record(&self, transform: &str, n: usize) -> EmbeddingRecord {
        let size = self.cos_spec.size();
        let idx = |v: &[BasisLabel]| v.iter().map(|l| l.index(size)).collect::<Vec<_>>();
        let (cr, cc, sr, sc) = (
            idx(&self.cos_rows),
            idx(&self.cos_cols),
            idx(&self.sin_rows),
            idx(&self.sin_cols),
        );
        EmbeddingRecord {
            transform: transform.to_string(),
            n,
            cos_cols: (cc != cr).then_some(cc),
            sin_cols: (sc != sr).then_some(sc),
            cos_block: cr,
            sin_block: sr,
            phase: phase_name(self.phase),
        }
    }
}

/// Frozen embedding, as stored in golden files. Labels are `c*N + x`;
/// the `*_cols` fields appear only when columns differ from rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingRecord {
    pub transform: String,
    pub n: usize,
    pub cos_block: Vec<usize>,
    pub sin_block: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cos_cols: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sin_cols: Option<Vec<usize>>,
    pub phase: String,
}

pub fn phase_name(p: C64) -> String {
    let named = [
        (C64::new(1.0, 0.0), "1"),
        (C64::new(0.0, 1.0), "i"),
        (C64::new(-1.0, 0.0), "-1"),
        (C64::new(0.0, -1.0), "-i"),
    ];
    for (z, s) in named {
        if (p - z).norm() < 1e-12 {
            return s.to_string();
        }
    }
    format!("{}{:+}i", p.re, p.im)
}

pub fn verify_block_identity(
    circuit: &Circuit,
    cos_spec: TransformSpec,
    sin_spec: TransformSpec,
    phase: C64,
) -> Result<BlockIdentityReport> {
    verify_block_identity_with(circuit, cos_spec, sin_spec, phase, DEFAULT_TOLERANCE)
}

/// Extracts the data-register action (ancillas at zero), splits the labels
/// into a cosine and a sine part, and searches each block for row and
/// column index maps onto the reference matrices.
///
/// The split is the set of labels connected (by entries above `tol`) to a
/// control-0 label, when that set has the cosine dimension; otherwise the
/// lowest labels. An index map is accepted when every entry matches within
/// `tol`. When several maps fit, the lexicographically smallest is kept;
/// if under it one circuit column matches two oracle columns, the block is
/// degenerate and `AmbiguousEmbedding` is returned. If none fits, the report carries the
/// greedy best match and its (large) error.
pub fn verify_block_identity_with(
    circuit: &Circuit,
    cos_spec: TransformSpec,
    sin_spec: TransformSpec,
    phase: C64,
    tol: f64,
) -> Result<BlockIdentityReport> {
    let size = cos_spec.size();
    if sin_spec.size() != size {
        return Err(QrtError::DimensionMismatch {
            expected: size,
            found: sin_spec.size(),
        });
    }
    let full = 2 * size;
    let blk = data_block(circuit)?;
    if blk.matrix.rows() != full {
        return Err(QrtError::DimensionMismatch {
            expected: full,
            found: blk.matrix.rows(),
        });
    }
    if cos_spec.dim() + sin_spec.dim() != full {
        return Err(QrtError::DimensionMismatch {
            expected: full,
            found: cos_spec.dim() + sin_spec.dim(),
        });
    }
    let u = &blk.matrix;
    let (cos_set, sin_set) = partition(u, size, cos_spec.dim(), tol);

    let cos_target = reference_matrix(&cos_spec);
    let sin_target = reference_matrix(&sin_spec).scale(phase);
    let cos = match_block(u, &cos_set, &cos_target, tol, "cosine")?;
    let sin = match_block(u, &sin_set, &sin_target, tol, "sine")?;

    let mut off: f64 = 0.0;
    for &i in &cos_set {
        for &j in &sin_set {
            off = off.max(u[(i, j)].norm()).max(u[(j, i)].norm());
        }
    }
    let labels = |v: &[usize]| v.iter().map(|&i| BasisLabel::from_index(i, size)).collect();
    Ok(BlockIdentityReport {
        cos_spec,
        sin_spec,
        max_error_cos_block: cos.error,
        max_error_sin_block: sin.error,
        max_error_offblock: off,
        ancilla_residual: blk.ancilla_residual,
        cos_rows: labels(&cos.rows),
        cos_cols: labels(&cos.cols),
        sin_rows: labels(&sin.rows),
        sin_cols: labels(&sin.cols),
        phase,
        embedding_exact: cos.exact && sin.exact,
        fits_cos: cos.symmetric_fits,
        fits_sin: sin.symmetric_fits,
    })
}

fn partition(u: &Matrix, size: usize, cos_dim: usize, tol: f64) -> (Vec<usize>, Vec<usize>) {
    let full = u.rows();
    let mut parent: Vec<usize> = (0..full).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..full {
        for j in 0..full {
            if u[(i, j)].norm() > tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let roots: Vec<usize> = (0..size).map(|i| find(&mut parent, i)).collect();
    let cos: Vec<usize> = (0..full)
        .filter(|&i| {
            let r = find(&mut parent, i);
            roots.contains(&r)
        })
        .collect();
    let cos = if cos.len() == cos_dim {
        cos
    } else {
        (0..cos_dim).collect()
    };
    let sin = (0..full).filter(|i| !cos.contains(i)).collect();
    (cos, sin)
}

struct BlockMatch {
    rows: Vec<usize>,
    cols: Vec<usize>,
    error: f64,
    exact: bool,
    symmetric_fits: usize,
}

/// Multiset distance between two columns: real parts, imaginary parts and
/// magnitudes are each sorted and compared.
fn signature(v: impl Iterator<Item = C64>) -> [Vec<f64>; 3] {
    let v: Vec<C64> = v.collect();
    let mut re: Vec<f64> = v.iter().map(|z| z.re).collect();
    let mut im: Vec<f64> = v.iter().map(|z| z.im).collect();
    let mut ab: Vec<f64> = v.iter().map(|z| z.norm()).collect();
    for s in [&mut re, &mut im, &mut ab] {
        s.sort_by(|a, b| a.total_cmp(b));
    }
    [re, im, ab]
}

fn signature_distance(a: &[Vec<f64>; 3], b: &[Vec<f64>; 3]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).abs()))
        .fold(0.0, f64::max)
}

struct Search<'a> {
    sub: &'a Matrix,
    target: &'a Matrix,
    tol: f64,
    cands: Vec<Vec<usize>>,
    order: Vec<usize>,
    col_of: Vec<Option<usize>>,
    used: Vec<bool>,
    best: Option<(Vec<usize>, Vec<usize>)>,
    found: usize,
}

/// Oracle matrices have symmetries (e.g. `j -> (N+1) j mod 2N`, folded, for
/// type I), so several joint row/column maps can fit the same unitary.
/// Enumeration stops after this many.
const MAX_SOLUTIONS: usize = 4096;

impl Search<'_> {
    fn done(&self) -> bool {
        self.found >= MAX_SOLUTIONS
    }

    fn run(&mut self, depth: usize, rows: Vec<Vec<usize>>) {
        if self.done() {
            return;
        }
        if depth == self.order.len() {
            let cols: Vec<usize> = self.col_of.iter().map(|c| c.expect("assigned")).collect();
            let mut assigned = vec![usize::MAX; rows.len()];
            let mut taken = vec![false; rows.len()];
            self.match_rows(&rows, 0, &mut assigned, &mut taken, &cols);
            return;
        }
        let n = self.order[depth];
        for ci in 0..self.cands[n].len() {
            let j = self.cands[n][ci];
            if self.used[j] {
                continue;
            }
            let next: Vec<Vec<usize>> = rows
                .iter()
                .enumerate()
                .map(|(m, rs)| {
                    rs.iter()
                        .copied()
                        .filter(|&r| (self.sub[(r, j)] - self.target[(m, n)]).norm() <= self.tol)
                        .collect()
                })
                .collect();
            if next.iter().any(|rs: &Vec<usize>| rs.is_empty()) {
                continue;
            }
            self.used[j] = true;
            self.col_of[n] = Some(j);
            self.run(depth + 1, next);
            self.col_of[n] = None;
            self.used[j] = false;
            if self.done() {
                return;
            }
        }
    }

    fn match_rows(
        &mut self,
        rows: &[Vec<usize>],
        m: usize,
        assigned: &mut Vec<usize>,
        taken: &mut Vec<bool>,
        cols: &[usize],
    ) {
        if self.done() {
            return;
        }
        if m == rows.len() {
            self.found += 1;
            let cand = (assigned.clone(), cols.to_vec());
            if self.best.as_ref().is_none_or(|b| cand < *b) {
                self.best = Some(cand);
            }
            return;
        }
        for &r in &rows[m] {
            if taken[r] {
                continue;
            }
            taken[r] = true;
            assigned[m] = r;
            self.match_rows(rows, m + 1, assigned, taken, cols);
            taken[r] = false;
        }
    }
}

fn block_error(sub: &Matrix, target: &Matrix, rows: &[usize], cols: &[usize]) -> f64 {
    let mut e: f64 = 0.0;
    for (m, &r) in rows.iter().enumerate() {
        for (n, &c) in cols.iter().enumerate() {
            e = e.max((sub[(r, c)] - target[(m, n)]).norm());
        }
    }
    e
}

fn match_block(
    u: &Matrix,
    labels: &[usize],
    target: &Matrix,
    tol: f64,
    name: &'static str,
) -> Result<BlockMatch> {
    let d = labels.len();
    let sub = u.select(labels, labels);
    let sub_sig: Vec<_> = (0..d)
        .map(|j| signature((0..d).map(|r| sub[(r, j)])))
        .collect();
    let tgt_sig: Vec<_> = (0..d)
        .map(|n| signature((0..d).map(|m| target[(m, n)])))
        .collect();
    let dist: Vec<Vec<f64>> = tgt_sig
        .iter()
        .map(|t| sub_sig.iter().map(|s| signature_distance(t, s)).collect())
        .collect();

    let cands: Vec<Vec<usize>> = dist
        .iter()
        .map(|row| {
            let mut c: Vec<usize> = (0..d).filter(|&j| row[j] <= tol).collect();
            c.sort_by(|&a, &b| row[a].total_cmp(&row[b]));
            c
        })
        .collect();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&n| cands[n].len());

    let to_labels = |v: &[usize]| v.iter().map(|&i| labels[i]).collect::<Vec<_>>();

    if cands.iter().all(|c| !c.is_empty()) {
        let mut s = Search {
            sub: &sub,
            target,
            tol,
            cands,
            order,
            col_of: vec![None; d],
            used: vec![false; d],
            best: None,
            found: 0,
        };
        s.run(0, vec![(0..d).collect(); d]);
        if let Some((rows, cols)) = s.best {
            // with rows fixed, each circuit column must match one oracle column
            for &c in &cols {
                let hits = (0..d)
                    .filter(|&n| (0..d).all(|m| (sub[(rows[m], c)] - target[(m, n)]).norm() <= tol))
                    .count();
                if hits > 1 {
                    return Err(QrtError::AmbiguousEmbedding {
                        block: name,
                        solutions: hits,
                    });
                }
            }
            return Ok(BlockMatch {
                error: block_error(&sub, target, &rows, &cols),
                rows: to_labels(&rows),
                cols: to_labels(&cols),
                exact: true,
                symmetric_fits: s.found,
            });
        }
    }

    // greedy best match, reported as inexact
    let mut used = vec![false; d];
    let mut cols = Vec::with_capacity(d);
    for row in &dist {
        let j = (0..d)
            .filter(|&j| !used[j])
            .min_by(|&a, &b| row[a].total_cmp(&row[b]))
            .expect("free column");
        used[j] = true;
        cols.push(j);
    }
    let mut used = vec![false; d];
    let mut rows = Vec::with_capacity(d);
    for m in 0..d {
        let miss = |r: usize| {
            cols.iter()
                .enumerate()
                .map(|(n, &c)| (sub[(r, c)] - target[(m, n)]).norm())
                .fold(0.0, f64::max)
        };
        let r = (0..d)
            .filter(|&r| !used[r])
            .min_by(|&a, &b| miss(a).total_cmp(&miss(b)))
            .expect("free row");
        used[r] = true;
        rows.push(r);
    }
    Ok(BlockMatch {
        error: block_error(&sub, target, &rows, &cols),
        rows: to_labels(&rows),
        cols: to_labels(&cols),
        exact: false,
        symmetric_fits: 0,
    })
}

/// Result of checking a sine-only circuit on `span{|1>, ..., |N-1>}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubspaceReport {
    /// Max entry error against `S^I` over inputs `1..N`, with the control
    /// required to return to 0.
    pub max_error: f64,
    pub ancilla_residual: f64,
}

/// Compares the circuit's columns `|0>|a>`, `a` in `1..N`, with the
/// corresponding columns of `S^I` placed on labels `1..N`.
pub fn verify_qst1_subspace(circuit: &Circuit, n: usize) -> Result<SubspaceReport> {
    let spec = TransformSpec::with_qubits(crate::oracle::TransformKind::Dst1, n)?;
    let size = spec.size();
    let blk = data_block(circuit)?;
    if blk.matrix.rows() != 2 * size {
        return Err(QrtError::DimensionMismatch {
            expected: 2 * size,
            found: blk.matrix.rows(),
        });
    }
    let s = reference_matrix(&spec);
    let mut err: f64 = 0.0;
    for a in 1..size {
        for label in 0..2 * size {
            let want = if (1..size).contains(&label) {
                s[(label - 1, a - 1)]
            } else {
                C64::new(0.0, 0.0)
            };
            err = err.max((blk.matrix[(label, a)] - want).norm());
        }
    }
    Ok(SubspaceReport {
        max_error: err,
        ancilla_residual: blk.ancilla_residual,
    })
}
