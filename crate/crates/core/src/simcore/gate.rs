//! Elementary gate set.
//!
//! Every gate is a list of control wires plus a list of target wires. The
//! single-target kinds act with a 2x2 matrix on the target whenever all
//! controls are set; `Swap` exchanges its two targets and `GlobalPhase`
//! multiplies the whole state by `e^{i angle}`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{QrtError, Result};

pub type C64 = Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    Phase(f64),
    Rz(f64),
    CPhase(f64),
    Cnot,
    Ch,
    Cs,
    Csdg,
    Toffoli,
    Swap,
    GlobalPhase(f64),
    /// NOT with `k` controls. Only the naive reference builders emit it.
    Mcx(usize),
}

impl GateKind {
    /// Lowercase name used by the text export.
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::Phase(_) => "phase",
            GateKind::Rz(_) => "rz",
            GateKind::CPhase(_) => "cphase",
            GateKind::Cnot => "cnot",
            GateKind::Ch => "ch",
            GateKind::Cs => "cs",
            GateKind::Csdg => "csdg",
            GateKind::Toffoli => "toffoli",
            GateKind::Swap => "swap",
            GateKind::GlobalPhase(_) => "globalphase",
            GateKind::Mcx(_) => "mcx",
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            GateKind::Phase(a)
            | GateKind::Rz(a)
            | GateKind::CPhase(a)
            | GateKind::GlobalPhase(a) => Some(a),
            _ => None,
        }
    }

    /// (controls, targets) expected by this kind.
    pub fn arity(&self) -> (usize, usize) {
        match *self {
            GateKind::X
            | GateKind::Y
            | GateKind::Z
            | GateKind::H
            | GateKind::S
            | GateKind::Sdg
            | GateKind::Phase(_)
            | GateKind::Rz(_) => (0, 1),
            GateKind::CPhase(_) | GateKind::Cnot | GateKind::Ch | GateKind::Cs | GateKind::Csdg => {
                (1, 1)
            }
            GateKind::Toffoli => (2, 1),
            GateKind::Swap => (0, 2),
            GateKind::GlobalPhase(_) => (0, 0),
            GateKind::Mcx(k) => (k, 1),
        }
    }

    pub fn inverse(&self) -> GateKind {
        match *self {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::Cs => GateKind::Csdg,
            GateKind::Csdg => GateKind::Cs,
            GateKind::Phase(a) => GateKind::Phase(-a),
            GateKind::Rz(a) => GateKind::Rz(-a),
            GateKind::CPhase(a) => GateKind::CPhase(-a),
            GateKind::GlobalPhase(a) => GateKind::GlobalPhase(-a),
            other => other,
        }
    }

    /// Elementary cost under the counting convention: one per instance,
    /// except `Mcx(k)` for `k >= 3`, which counts `2k - 3`.
    pub fn cost(&self) -> usize {
        match *self {
            GateKind::Mcx(k) if k >= 3 => 2 * k - 3,
            _ => 1,
        }
    }

    /// The 2x2 matrix applied to the single target, row-major.
    /// `None` for `Swap` and `GlobalPhase`.
    pub fn target_matrix(&self) -> Option<[C64; 4]> {
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let m = match *self {
            GateKind::X | GateKind::Cnot | GateKind::Toffoli | GateKind::Mcx(_) => {
                [zero, one, one, zero]
            }
            GateKind::Y => [zero, -i, i, zero],
            GateKind::Z => [one, zero, zero, -one],
            GateKind::H | GateKind::Ch => [h, h, h, -h],
            GateKind::S | GateKind::Cs => [one, zero, zero, i],
            GateKind::Sdg | GateKind::Csdg => [one, zero, zero, -i],
            GateKind::Phase(a) | GateKind::CPhase(a) => [one, zero, zero, C64::from_polar(1.0, a)],
            GateKind::Rz(a) => [
                C64::from_polar(1.0, -a / 2.0),
                zero,
                zero,
                C64::from_polar(1.0, a / 2.0),
            ],
            GateKind::Swap | GateKind::GlobalPhase(_) => return None,
        };
        Some(m)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    controls: Vec<usize>,
    targets: Vec<usize>,
}

impl Gate {
    /// Validated constructor. Width is checked when the gate joins a circuit.
    pub fn new(kind: GateKind, controls: Vec<usize>, targets: Vec<usize>) -> Result<Self> {
        let (nc, nt) = kind.arity();
        if controls.len() != nc || targets.len() != nt {
            return Err(QrtError::BadArity {
                kind: kind.name().to_string(),
                controls: nc,
                targets: nt,
                got_controls: controls.len(),
                got_targets: targets.len(),
            });
        }
        if let Some(a) = kind.angle() {
            if !a.is_finite() {
                return Err(QrtError::NonFiniteAngle(a));
            }
        }
        let mut all: Vec<usize> = controls.iter().chain(targets.iter()).copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(QrtError::OperandOverlap {
                kind: kind.name().to_string(),
            });
        }
        Ok(Gate {
            kind,
            controls,
            targets,
        })
    }

    fn raw(kind: GateKind, controls: Vec<usize>, targets: Vec<usize>) -> Self {
        Gate::new(kind, controls, targets).expect("well-formed gate")
    }

    pub fn x(q: usize) -> Self {
        Gate::raw(GateKind::X, vec![], vec![q])
    }
    pub fn y(q: usize) -> Self {
        Gate::raw(GateKind::Y, vec![], vec![q])
    }
    pub fn z(q: usize) -> Self {
        Gate::raw(GateKind::Z, vec![], vec![q])
    }
    pub fn h(q: usize) -> Self {
        Gate::raw(GateKind::H, vec![], vec![q])
    }
    pub fn s(q: usize) -> Self {
        Gate::raw(GateKind::S, vec![], vec![q])
    }
    pub fn sdg(q: usize) -> Self {
        Gate::raw(GateKind::Sdg, vec![], vec![q])
    }
    pub fn phase(angle: f64, q: usize) -> Self {
        Gate::raw(GateKind::Phase(angle), vec![], vec![q])
    }
    pub fn rz(angle: f64, q: usize) -> Self {
        Gate::raw(GateKind::Rz(angle), vec![], vec![q])
    }
    pub fn cphase(angle: f64, control: usize, target: usize) -> Self {
        Gate::raw(GateKind::CPhase(angle), vec![control], vec![target])
    }
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::raw(GateKind::Cnot, vec![control], vec![target])
    }
    pub fn ch(control: usize, target: usize) -> Self {
        Gate::raw(GateKind::Ch, vec![control], vec![target])
    }
    pub fn cs(control: usize, target: usize) -> Self {
        Gate::raw(GateKind::Cs, vec![control], vec![target])
    }
    pub fn csdg(control: usize, target: usize) -> Self {
        Gate::raw(GateKind::Csdg, vec![control], vec![target])
    }
    pub fn toffoli(c0: usize, c1: usize, target: usize) -> Self {
        Gate::raw(GateKind::Toffoli, vec![c0, c1], vec![target])
    }
    pub fn swap(a: usize, b: usize) -> Self {
        Gate::raw(GateKind::Swap, vec![], vec![a, b])
    }
    pub fn global_phase(angle: f64) -> Self {
        Gate::raw(GateKind::GlobalPhase(angle), vec![], vec![])
    }
    pub fn mcx(controls: Vec<usize>, target: usize) -> Self {
        Gate::raw(GateKind::Mcx(controls.len()), controls, vec![target])
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }
    pub fn controls(&self) -> &[usize] {
        &self.controls
    }
    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn operands(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls.iter().chain(self.targets.iter()).copied()
    }

    pub fn max_operand(&self) -> Option<usize> {
        self.operands().max()
    }

    pub fn inverse(&self) -> Gate {
        Gate {
            kind: self.kind.inverse(),
            controls: self.controls.clone(),
            targets: self.targets.clone(),
        }
    }

    /// Same gate with every wire sent through `map`.
    pub fn remapped(&self, map: impl Fn(usize) -> usize) -> Gate {
        Gate {
            kind: self.kind,
            controls: self.controls.iter().map(|&q| map(q)).collect(),
            targets: self.targets.iter().map(|&q| map(q)).collect(),
        }
    }
}

/// Formats an angle with 17 significant digits in positional notation.
pub fn format_angle(a: f64) -> String {
    let sci = format!("{:.16e}", a);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let point = 1 + exp;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (int, frac) = digits.split_at(point as usize);
        format!("{}.{}", int, frac)
    };
    if neg {
        format!("-{}", body)
    } else {
        body
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        if let Some(a) = self.kind.angle() {
            write!(f, "({})", format_angle(a))?;
        }
        let ops: Vec<String> = self.operands().map(|q| format!("q[{}]", q)).collect();
        if !ops.is_empty() {
            write!(f, " {}", ops.join(","))?;
        }
        Ok(())
    }
}
