//! Command-line front end. `run` is the whole program minus process exit,
//! so tests can drive it in-process.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{QrtError, Result};
use crate::gadgets::{
    build_cond_increment, build_cond_twos_complement, build_or_tree, GadgetLayout,
};
use crate::hartley::{build_qht_lcu, build_qht_recursive};
use crate::oracle::{reference_matrix, TransformKind, TransformSpec};
use crate::qft::{build_qft, QftOptions};
use crate::simcore::{
    count_gates, data_block, export_json, export_text, run_classical, Circuit, GateCountReport,
    C64, DEFAULT_TOLERANCE, STATEVECTOR_CAP,
};
use crate::trig::{
    build_qcst_type1, build_qcst_type2, build_qcst_type3, build_qcst_type4, build_qst1_optimized,
    verify_block_identity_with, verify_qst1_subspace, EmbeddingRecord,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qrt-kit",
    version,
    about = "Build, verify and count quantum transform circuits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Export a circuit.
    Build(BuildArgs),
    /// Simulate a circuit and compare it with its classical reference.
    Verify(VerifyArgs),
    /// Gate counts for one size or a range of sizes.
    Counts(CountsArgs),
    /// Recursive vs LCU Hartley gate counts with quadratic fits.
    Table1(Table1Args),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Transform {
    QhtLcu,
    QhtRec,
    Qct1,
    Qst1,
    Qst1Opt,
    Qct2,
    Qst2,
    Qct3,
    Qst3,
    Qct4,
    Qst4,
    Qft,
    Inc,
    TwosComp,
    OrTree,
}

impl Transform {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }

    fn is_type4(self) -> bool {
        matches!(self, Transform::Qct4 | Transform::Qst4)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    TextGates,
    Json,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub transform: Transform,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "text-gates")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Type-IV only: use the uncorrected second diagonal.
    #[arg(long)]
    pub incorrect_d2: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub transform: Transform,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub incorrect_d2: bool,
}

#[derive(Debug, Args)]
pub struct CountsArgs {
    #[arg(long)]
    pub transform: Transform,
    #[arg(long, conflicts_with = "n_range", required_unless_present = "n_range")]
    pub n: Option<usize>,
    /// Inclusive, written `a..b`.
    #[arg(long, value_parser = parse_range)]
    pub n_range: Option<RangeInclusive<usize>>,
    #[arg(long, value_enum, default_value = "text-gates")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub incorrect_d2: bool,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[arg(long, value_parser = parse_range, default_value = "6..14")]
    pub n_range: RangeInclusive<usize>,
    #[arg(long, value_enum, default_value = "text-gates")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got '{}'", s))?;
    let a: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start '{}'", a))?;
    let b: usize = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end '{}'", b))?;
    if a > b {
        return Err(format!("empty range {}..{}", a, b));
    }
    Ok(a..=b)
}

pub fn build_circuit(t: Transform, n: usize, incorrect_d2: bool) -> Result<Circuit> {
    if incorrect_d2 && !t.is_type4() {
        return Err(QrtError::InvalidArgument(
            "--incorrect-d2 applies to qct4 and qst4 only".into(),
        ));
    }
    match t {
        Transform::QhtLcu => build_qht_lcu(n),
        Transform::QhtRec => build_qht_recursive(n),
        Transform::Qct1 | Transform::Qst1 => build_qcst_type1(n),
        Transform::Qst1Opt => build_qst1_optimized(n),
        Transform::Qct2 | Transform::Qst2 => build_qcst_type2(n),
        Transform::Qct3 | Transform::Qst3 => build_qcst_type3(n),
        Transform::Qct4 | Transform::Qst4 => build_qcst_type4(n, !incorrect_d2),
        Transform::Qft => {
            if n == 0 {
                return Err(QrtError::InvalidSize {
                    what: "QFT",
                    n,
                    min: 1,
                });
            }
            build_qft(n, QftOptions::default())
        }
        Transform::Inc => build_cond_increment(n),
        Transform::TwosComp => build_cond_twos_complement(n),
        Transform::OrTree => build_or_tree(n, false, false),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub transform: String,
    pub n: usize,
    /// How the circuit was checked: `dense`, `block`, `subspace` or
    /// `classical`.
    pub method: &'static str,
    pub max_error: f64,
    pub ancilla_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingRecord>,
}

fn block_pair(t: Transform) -> (TransformKind, TransformKind) {
    match t {
        Transform::Qct1 | Transform::Qst1 => (TransformKind::Dct1, TransformKind::Dst1),
        Transform::Qct2 | Transform::Qst2 => (TransformKind::Dct2, TransformKind::Dst2),
        Transform::Qct3 | Transform::Qst3 => (TransformKind::Dct3, TransformKind::Dst3),
        _ => (TransformKind::Dct4, TransformKind::Dst4),
    }
}

pub fn verify(t: Transform, n: usize, tol: f64, incorrect_d2: bool) -> Result<VerifyReport> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(QrtError::InvalidArgument(format!(
            "tolerance must be positive, got {}",
            tol
        )));
    }
    let circuit = build_circuit(t, n, incorrect_d2)?;
    let mut report = VerifyReport {
        schema: 1,
        transform: t.name(),
        n,
        method: "dense",
        max_error: 0.0,
        ancilla_residual: 0.0,
        tolerance: tol,
        passed: false,
        embedding: None,
    };
    match t {
        Transform::QhtLcu | Transform::QhtRec | Transform::Qft => {
            let kind = if t == Transform::Qft {
                TransformKind::Dft
            } else {
                TransformKind::Dht
            };
            let blk = data_block(&circuit)?;
            let want = reference_matrix(&TransformSpec::with_qubits(kind, n)?);
            report.max_error = blk.matrix.max_abs_diff(&want)?;
            report.ancilla_residual = blk.ancilla_residual;
        }
        Transform::Qst1Opt => {
            let r = verify_qst1_subspace(&circuit, n)?;
            report.method = "subspace";
            report.max_error = r.max_error;
            report.ancilla_residual = r.ancilla_residual;
        }
        Transform::Inc | Transform::TwosComp | Transform::OrTree => {
            let (err, residual) = verify_classical(t, &circuit, n)?;
            report.method = "classical";
            report.max_error = err;
            report.ancilla_residual = residual;
        }
        _ => {
            let (c, s) = block_pair(t);
            let r = verify_block_identity_with(
                &circuit,
                TransformSpec::with_qubits(c, n)?,
                TransformSpec::with_qubits(s, n)?,
                C64::new(1.0, 0.0),
                tol,
            )?;
            report.method = "block";
            report.max_error = r
                .max_error_cos_block
                .max(r.max_error_sin_block)
                .max(r.max_error_offblock);
            report.ancilla_residual = r.ancilla_residual;
            report.embedding = Some(r.record(&t.name(), n));
            if !r.embedding_exact {
                report.max_error = report.max_error.max(tol);
            }
        }
    }
    report.passed = report.max_error < tol && report.ancilla_residual < tol;
    Ok(report)
}

/// Runs every basis input. Errors are 0 or 1: a permutation is either right
/// on a column or off by a full unit.
fn verify_classical(t: Transform, circuit: &Circuit, n: usize) -> Result<(f64, f64)> {
    if n > STATEVECTOR_CAP {
        return Err(QrtError::WidthAboveCap {
            width: n,
            cap: STATEVECTOR_CAP,
        });
    }
    let size = 1usize << n;
    let mask = size - 1;
    let mut wrong = false;
    let mut dirty = false;
    if t == Transform::OrTree {
        let root = GadgetLayout::or_tree(n).root_index.expect("or-tree root");
        for x in 0..size {
            let out = run_classical(circuit, x)?;
            wrong |= out & mask != x || (out >> root & 1 == 1) != (x != 0);
        }
    } else {
        for c in 0..2 {
            for x in 0..size {
                let want = if t == Transform::Inc {
                    (x + c) & mask
                } else if c == 1 {
                    (size - x) & mask
                } else {
                    x
                };
                let out = run_classical(circuit, c << n | x)?;
                wrong |= out & mask != want || out >> n & 1 != c;
                dirty |= out >> (n + 1) != 0;
            }
        }
    }
    Ok((f64::from(u8::from(wrong)), f64::from(u8::from(dirty))))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountRow {
    pub n: usize,
    pub total: usize,
    pub width: usize,
    pub ancillas: usize,
    pub per_kind: std::collections::BTreeMap<String, usize>,
}

impl From<(usize, GateCountReport)> for CountRow {
    fn from((n, r): (usize, GateCountReport)) -> Self {
        CountRow {
            n,
            total: r.total,
            width: r.width,
            ancillas: r.ancilla_count,
            per_kind: r.per_kind,
        }
    }
}

pub fn counts(
    t: Transform,
    ns: RangeInclusive<usize>,
    incorrect_d2: bool,
) -> Result<Vec<CountRow>> {
    ns.map(|n| Ok((n, count_gates(&build_circuit(t, n, incorrect_d2)?)).into()))
        .collect()
}

/// Least-squares `a n^2 + b n + c` through the points. Needs three
/// distinct abscissae.
pub fn fit_quadratic(points: &[(f64, f64)]) -> Result<[f64; 3]> {
    if points.len() < 3 {
        return Err(QrtError::InvalidArgument(format!(
            "a quadratic fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    let a = DMatrix::from_fn(points.len(), 3, |r, k| points[r].0.powi(2 - k as i32));
    let y = DVector::from_iterator(points.len(), points.iter().map(|p| p.1));
    let svd = a.svd(true, true);
    if svd.rank(1e-9 * svd.singular_values.max()) < 3 {
        return Err(QrtError::InvalidArgument(
            "degenerate fit: fewer than 3 distinct n".into(),
        ));
    }
    let x = svd
        .solve(&y, 1e-12)
        .map_err(|e| QrtError::InvalidArgument(e.to_string()))?;
    Ok([x[0], x[1], x[2]])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Row {
    pub n: usize,
    pub qht_rec: usize,
    pub qht_lcu: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1 {
    pub schema: u32,
    pub rows: Vec<Table1Row>,
    /// `[a, b, c]` of `a n^2 + b n + c`.
    pub fit_rec: [f64; 3],
    pub fit_lcu: [f64; 3],
    /// `fit_rec[0] / fit_lcu[0]`.
    pub quadratic_ratio: f64,
}

pub fn table1(ns: RangeInclusive<usize>) -> Result<Table1> {
    if *ns.start() < 4 || *ns.end() > 20 {
        return Err(QrtError::InvalidArgument(format!(
            "n range must lie within 4..20, got {}..{}",
            ns.start(),
            ns.end()
        )));
    }
    let rows: Vec<Table1Row> = ns
        .map(|n| {
            Ok(Table1Row {
                n,
                qht_rec: count_gates(&build_qht_recursive(n)?).total,
                qht_lcu: count_gates(&build_qht_lcu(n)?).total,
            })
        })
        .collect::<Result<_>>()?;
    let pts = |f: fn(&Table1Row) -> usize| -> Vec<(f64, f64)> {
        rows.iter().map(|r| (r.n as f64, f(r) as f64)).collect()
    };
    let fit_rec = fit_quadratic(&pts(|r| r.qht_rec))?;
    let fit_lcu = fit_quadratic(&pts(|r| r.qht_lcu))?;
    Ok(Table1 {
        schema: 1,
        quadratic_ratio: fit_rec[0] / fit_lcu[0],
        rows,
        fit_rec,
        fit_lcu,
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn counts_text(t: Transform, rows: &[CountRow]) -> String {
    let mut s = format!(
        "# {}\n{:>4} {:>10} {:>6} {:>9}  per kind\n",
        t.name(),
        "n",
        "total",
        "width",
        "ancillas"
    );
    for r in rows {
        let kinds: Vec<String> = r
            .per_kind
            .iter()
            .map(|(k, v)| format!("{}={}", k, v))
            .collect();
        s.push_str(&format!(
            "{:>4} {:>10} {:>6} {:>9}  {}\n",
            r.n,
            r.total,
            r.width,
            r.ancillas,
            kinds.join(" ")
        ));
    }
    s
}

fn table1_text(t: &Table1) -> String {
    let mut s = format!(
        "{:>4} {:>10} {:>10} {:>8}\n",
        "n", "qht-rec", "qht-lcu", "rec/lcu"
    );
    for r in &t.rows {
        s.push_str(&format!(
            "{:>4} {:>10} {:>10} {:>8.3}\n",
            r.n,
            r.qht_rec,
            r.qht_lcu,
            r.qht_rec as f64 / r.qht_lcu as f64
        ));
    }
    let fit = |f: &[f64; 3]| format!("{:.4} n^2 {:+.4} n {:+.4}", f[0], f[1], f[2]);
    s.push_str(&format!("fit qht-rec: {}\n", fit(&t.fit_rec)));
    s.push_str(&format!("fit qht-lcu: {}\n", fit(&t.fit_lcu)));
    s.push_str(&format!(
        "quadratic coefficient ratio rec/lcu: {:.4}\n",
        t.quadratic_ratio
    ));
    s
}

enum Outcome {
    Pass(String),
    Fail(String),
}

fn execute(cmd: &Command) -> Result<Outcome> {
    Ok(match cmd {
        Command::Build(a) => {
            let c = build_circuit(a.transform, a.n, a.incorrect_d2)?;
            Outcome::Pass(match a.format {
                Format::TextGates => export_text(&c),
                Format::Json => export_json(&c),
            })
        }
        Command::Verify(a) => {
            let r = verify(a.transform, a.n, a.tolerance, a.incorrect_d2)?;
            let text = to_json(&r);
            if r.passed {
                Outcome::Pass(text)
            } else {
                Outcome::Fail(text)
            }
        }
        Command::Counts(a) => {
            let ns = match (&a.n_range, a.n) {
                (Some(r), _) => r.clone(),
                (None, Some(n)) => n..=n,
                (None, None) => unreachable!("clap requires one of --n, --n-range"),
            };
            let rows = counts(a.transform, ns, a.incorrect_d2)?;
            Outcome::Pass(match a.format {
                Format::TextGates => counts_text(a.transform, &rows),
                Format::Json => to_json(&rows),
            })
        }
        Command::Table1(a) => {
            let t = table1(a.n_range.clone())?;
            Outcome::Pass(match a.format {
                Format::TextGates => table1_text(&t),
                Format::Json => to_json(&t),
            })
        }
    })
}

fn output_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Build(a) => a.output.as_ref(),
        Command::Verify(a) => a.output.as_ref(),
        Command::Counts(a) => a.output.as_ref(),
        Command::Table1(a) => a.output.as_ref(),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Results go to `out` or the `--output` file; diagnostics go to
/// stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e);
                    EXIT_PASS
                }
                _ => {
                    eprint!("{}", e);
                    EXIT_USAGE
                }
            };
        }
    };
    let (text, code) = match execute(&cli.command) {
        Ok(Outcome::Pass(t)) => (t, EXIT_PASS),
        Ok(Outcome::Fail(t)) => (t, EXIT_FAIL),
        Err(e @ QrtError::AmbiguousEmbedding { .. }) => {
            eprintln!("error: {}", e);
            return EXIT_FAIL;
        }
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_USAGE;
        }
    };
    let written = match output_path(&cli.command) {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| format!("cannot write {}: {}", p.display(), e))
        }
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {}", e);
        return EXIT_USAGE;
    }
    if code == EXIT_FAIL {
        eprintln!("verification failed");
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = run(
            std::iter::once("qrt-kit").chain(args.iter().copied()),
            &mut out,
        );
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("6..14").unwrap(), 6..=14);
        assert_eq!(parse_range("3..=5").unwrap(), 3..=5);
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("7").is_err());
    }

    #[test]
    fn transform_names() {
        assert_eq!(Transform::Qst1Opt.name(), "qst1-opt");
        assert_eq!(Transform::TwosComp.name(), "twos-comp");
        assert_eq!(Transform::QhtLcu.name(), "qht-lcu");
    }

    #[test]
    fn fit_recovers_exact_quadratic() {
        let pts: Vec<(f64, f64)> = (4..12)
            .map(|n| (n as f64, 0.5 * (n * n) as f64 - 3.0 * n as f64 + 7.0))
            .collect();
        let f = fit_quadratic(&pts).unwrap();
        assert!(
            (f[0] - 0.5).abs() < 1e-9 && (f[1] + 3.0).abs() < 1e-8 && (f[2] - 7.0).abs() < 1e-7
        );
        assert!(fit_quadratic(&pts[..2]).is_err());
    }

    #[test]
    fn qft_one() {
        assert_eq!(
            call(&["build", "--transform", "qft", "--n", "1"]),
            (0, "h q[0]\n".to_string())
        );
    }

    #[test]
    fn usage_errors() {
        assert_eq!(
            call(&["build", "--transform", "nope", "--n", "2"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["build", "--transform", "qct2", "--n", "0"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["build", "--transform", "qct2", "--n", "2", "--incorrect-d2"]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["table1", "--n-range", "6..7"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["verify", "--transform", "qht-lcu", "--n", "13"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn classical_verifies() {
        for t in [Transform::Inc, Transform::TwosComp, Transform::OrTree] {
            for n in 2..=5 {
                let r = verify(t, n, DEFAULT_TOLERANCE, false).unwrap();
                assert!(r.passed, "{:?} n={}", t, n);
            }
        }
    }
}
