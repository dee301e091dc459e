//! Line-oriented circuit export and its parser.
//!
//! ```text
//! h q[1]
//! cphase(1.5707963267948966) q[0],q[1]
//! # relabel: 0->1,1->0
//! ```
//!
//! Comment lines carry what the gate list cannot: `# ancillas: 3,4`, the
//! relabeling, and `# width: 5` when the width is not implied by the rest.

use serde::Serialize;

use crate::error::{QrtError, Result};
use crate::simcore::circuit::Circuit;
use crate::simcore::gate::{Gate, GateKind};

fn implied_width(c: &Circuit) -> usize {
    let ops = c.gates().iter().filter_map(|g| g.max_operand()).max();
    let anc = c.ancillas().iter().next_back().copied();
    let by_ops = ops.max(anc).map_or(0, |q| q + 1);
    match c.relabeling() {
        Some(p) => by_ops.max(p.len()),
        None => by_ops,
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn export_text(circuit: &Circuit) -> String {
    let mut out = String::new();
    if implied_width(circuit) != circuit.width() {
        out.push_str(&format!("# width: {}\n", circuit.width()));
    }
    for g in circuit.gates() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    if !circuit.ancillas().is_empty() {
        out.push_str(&format!("# ancillas: {}\n", join(circuit.ancillas())));
    }
    if let Some(p) = circuit.relabeling() {
        let pairs = p.iter().enumerate().map(|(i, j)| format!("{}->{}", i, j));
        out.push_str(&format!("# relabel: {}\n", join(pairs)));
    }
    out
}

fn kind_from(name: &str, angle: Option<f64>, operands: usize) -> Option<GateKind> {
    let k = match (name, angle) {
        ("x", None) => GateKind::X,
        ("y", None) => GateKind::Y,
        ("z", None) => GateKind::Z,
        ("h", None) => GateKind::H,
        ("s", None) => GateKind::S,
        ("sdg", None) => GateKind::Sdg,
        ("phase", Some(a)) => GateKind::Phase(a),
        ("rz", Some(a)) => GateKind::Rz(a),
        ("cphase", Some(a)) => GateKind::CPhase(a),
        ("cnot", None) => GateKind::Cnot,
        ("ch", None) => GateKind::Ch,
        ("cs", None) => GateKind::Cs,
        ("csdg", None) => GateKind::Csdg,
        ("toffoli", None) => GateKind::Toffoli,
        ("swap", None) => GateKind::Swap,
        ("globalphase", Some(a)) => GateKind::GlobalPhase(a),
        ("mcx", None) if operands >= 1 => GateKind::Mcx(operands - 1),
        _ => return None,
    };
    Some(k)
}

fn parse_operand(tok: &str) -> Option<usize> {
    tok.trim()
        .strip_prefix("q[")?
        .strip_suffix(']')?
        .parse()
        .ok()
}

fn parse_list(body: &str) -> std::result::Result<Vec<usize>, String> {
    body.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| format!("bad index '{}'", t.trim()))
        })
        .collect()
}

fn parse_gate(line: &str) -> std::result::Result<Gate, String> {
    let (head, ops) = match line.split_once(char::is_whitespace) {
        Some((h, o)) => (h, o.trim()),
        None => (line, ""),
    };
    let (name, angle) = match head.split_once('(') {
        Some((n, rest)) => {
            let a = rest
                .strip_suffix(')')
                .ok_or_else(|| "unclosed angle".to_string())?;
            let a: f64 = a.trim().parse().map_err(|_| format!("bad angle '{}'", a))?;
            (n, Some(a))
        }
        None => (head, None),
    };
    let operands: Vec<usize> = if ops.is_empty() {
        vec![]
    } else {
        ops.split(',')
            .map(|t| parse_operand(t).ok_or_else(|| format!("bad operand '{}'", t.trim())))
            .collect::<std::result::Result<_, _>>()?
    };
    let kind =
        kind_from(name, angle, operands.len()).ok_or_else(|| format!("unknown gate '{}'", head))?;
    let (nc, _) = kind.arity();
    if operands.len() < nc {
        return Err(format!("{} needs at least {} operands", name, nc));
    }
    let (c, t) = operands.split_at(nc);
    Gate::new(kind, c.to_vec(), t.to_vec()).map_err(|e| e.to_string())
}

/// Parses the export format. `width` overrides the width implied by the
/// operands and comments; it must not be smaller.
pub fn parse_text(text: &str, width: Option<usize>) -> Result<Circuit> {
    let mut gates = Vec::new();
    let mut ancillas = Vec::new();
    let mut relabel: Option<Vec<(usize, usize)>> = None;
    let mut declared = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |message: String| QrtError::Parse {
            line: i + 1,
            message,
        };
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            let c = c.trim();
            if let Some(v) = c.strip_prefix("width:") {
                declared = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| err(format!("bad width '{}'", v.trim())))?,
                );
            } else if let Some(v) = c.strip_prefix("ancillas:") {
                ancillas = parse_list(v).map_err(err)?;
            } else if let Some(v) = c.strip_prefix("relabel:") {
                let pairs = v
                    .split(',')
                    .map(|p| {
                        let (a, b) = p
                            .split_once("->")
                            .ok_or_else(|| format!("bad relabel pair '{}'", p.trim()))?;
                        let a = a
                            .trim()
                            .parse()
                            .map_err(|_| format!("bad wire '{}'", a.trim()))?;
                        let b = b
                            .trim()
                            .parse()
                            .map_err(|_| format!("bad wire '{}'", b.trim()))?;
                        Ok((a, b))
                    })
                    .collect::<std::result::Result<Vec<_>, String>>()
                    .map_err(err)?;
                relabel = Some(pairs);
            }
            continue;
        }
        gates.push(parse_gate(line).map_err(err)?);
    }

    let ops = gates.iter().filter_map(|g| g.max_operand()).max();
    let anc = ancillas.iter().max().copied();
    let mut w = ops.max(anc).map_or(0, |q| q + 1);
    if let Some(pairs) = &relabel {
        w = w.max(pairs.len());
    }
    if let Some(d) = declared {
        w = w.max(d);
    }
    let w = match width {
        Some(given) if given < w => {
            return Err(QrtError::InvalidArgument(format!(
                "width {} is smaller than the {} wires the text uses",
                given, w
            )))
        }
        Some(given) => given,
        None => w,
    };
    let relabeling = match relabel {
        None => None,
        Some(pairs) => {
            let mut p: Vec<usize> = (0..w).collect();
            for (a, b) in pairs {
                if a >= w {
                    return Err(QrtError::InvalidRelabeling(format!(
                        "wire {} out of range",
                        a
                    )));
                }
                p[a] = b;
            }
            Some(p)
        }
    };
    Circuit::new(w, gates, ancillas, relabeling, "")
}

#[derive(Serialize)]
struct GateJson {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    angle: Option<f64>,
    controls: Vec<usize>,
    targets: Vec<usize>,
}

#[derive(Serialize)]
struct CircuitJson<'a> {
    schema: u32,
    label: &'a str,
    width: usize,
    ancillas: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relabeling: Option<&'a [usize]>,
    gates: Vec<GateJson>,
}

/// Pretty JSON form of a circuit, newline-terminated.
pub fn export_json(circuit: &Circuit) -> String {
    let doc = CircuitJson {
        schema: 1,
        label: circuit.label(),
        width: circuit.width(),
        ancillas: circuit.ancillas().iter().copied().collect(),
        relabeling: circuit.relabeling(),
        gates: circuit
            .gates()
            .iter()
            .map(|g| GateJson {
                kind: g.kind().name(),
                angle: g.kind().angle(),
                controls: g.controls().to_vec(),
                targets: g.targets().to_vec(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}
