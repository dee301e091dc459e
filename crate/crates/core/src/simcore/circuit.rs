use std::collections::BTreeSet;

use crate::error::{QrtError, Result};
use crate::simcore::gate::Gate;

/// Ordered gate list over a fixed-width register.
///
/// `relabeling[i]` is the output position of physical wire `i` once all
/// gates have run. Ancilla wires enter and leave in `|0>` and are never
/// moved by the relabeling.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    ancillas: BTreeSet<usize>,
    relabeling: Option<Vec<usize>>,
    label: String,
}

impl Circuit {
    pub fn new(
        width: usize,
        gates: Vec<Gate>,
        ancillas: impl IntoIterator<Item = usize>,
        relabeling: Option<Vec<usize>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        for g in &gates {
            if let Some(q) = g.max_operand() {
                if q >= width {
                    return Err(QrtError::QubitOutOfRange { qubit: q, width });
                }
            }
        }
        let ancillas: BTreeSet<usize> = ancillas.into_iter().collect();
        if let Some(&q) = ancillas.iter().find(|&&q| q >= width) {
            return Err(QrtError::QubitOutOfRange { qubit: q, width });
        }
        let relabeling = match relabeling {
            Some(p) if p.iter().enumerate().all(|(i, &j)| i == j) => None,
            other => other,
        };
        if let Some(p) = &relabeling {
            check_permutation(p, width)?;
            if let Some(&a) = ancillas.iter().find(|&&a| p[a] != a) {
                return Err(QrtError::InvalidRelabeling(format!(
                    "ancilla wire {} is moved to {}",
                    a, p[a]
                )));
            }
        }
        Ok(Circuit {
            width,
            gates,
            ancillas,
            relabeling,
            label: label.into(),
        })
    }

    pub fn empty(width: usize) -> Self {
        Circuit {
            width,
            gates: Vec::new(),
            ancillas: BTreeSet::new(),
            relabeling: None,
            label: String::new(),
        }
    }

    pub fn from_gates(width: usize, gates: Vec<Gate>) -> Result<Self> {
        Circuit::new(width, gates, [], None, "")
    }

    pub fn width(&self) -> usize {
        self.width
    }
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }
    pub fn ancillas(&self) -> &BTreeSet<usize> {
        &self.ancillas
    }
    pub fn relabeling(&self) -> Option<&[usize]> {
        self.relabeling.as_deref()
    }
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_ancillas(self, ancillas: impl IntoIterator<Item = usize>) -> Result<Self> {
        Circuit::new(
            self.width,
            self.gates,
            ancillas,
            self.relabeling,
            self.label,
        )
    }

    /// Wires that are not ancillas, in increasing order. Bit `k` of a
    /// data-register value is `data_wires()[k]`.
    pub fn data_wires(&self) -> Vec<usize> {
        (0..self.width)
            .filter(|q| !self.ancillas.contains(q))
            .collect()
    }

    /// Gate order reversed, each gate inverted, relabeling inverted.
    pub fn adjoint(&self) -> Circuit {
        let perm = self.relabeling.clone();
        let gates = self
            .gates
            .iter()
            .rev()
            .map(|g| {
                let inv = g.inverse();
                match &perm {
                    Some(p) => inv.remapped(|q| p[q]),
                    None => inv,
                }
            })
            .collect();
        Circuit {
            width: self.width,
            gates,
            ancillas: self.ancillas.clone(),
            relabeling: perm.map(|p| invert_permutation(&p)),
            label: if self.label.is_empty() {
                String::new()
            } else {
                format!("{}_dg", self.label)
            },
        }
    }
}

pub(crate) fn check_permutation(p: &[usize], width: usize) -> Result<()> {
    if p.len() != width {
        return Err(QrtError::InvalidRelabeling(format!(
            "length {} does not match width {}",
            p.len(),
            width
        )));
    }
    let mut seen = vec![false; width];
    for &j in p {
        if j >= width || seen[j] {
            return Err(QrtError::InvalidRelabeling(format!(
                "{:?} is not a permutation of 0..{}",
                p, width
            )));
        }
        seen[j] = true;
    }
    Ok(())
}

pub(crate) fn invert_permutation(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Incremental construction over logical wires.
///
/// Gates are written against logical wire names; `layout[logical]` tracks
/// the physical wire currently holding that logical qubit, so appending a
/// subcircuit that relabels its wires costs no gates.
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    width: usize,
    gates: Vec<Gate>,
    layout: Vec<usize>,
    ancillas: BTreeSet<usize>,
    label: String,
}

impl CircuitBuilder {
    pub fn new(width: usize, label: impl Into<String>) -> Self {
        CircuitBuilder {
            width,
            gates: Vec::new(),
            layout: (0..width).collect(),
            ancillas: BTreeSet::new(),
            label: label.into(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn mark_ancillas(&mut self, wires: impl IntoIterator<Item = usize>) -> &mut Self {
        self.ancillas.extend(wires);
        self
    }

    /// Appends a gate written on logical wires.
    pub fn push(&mut self, gate: Gate) -> &mut Self {
        let layout = &self.layout;
        self.gates.push(gate.remapped(|q| layout[q]));
        self
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> &mut Self {
        for g in gates {
            self.push(g);
        }
        self
    }

    /// Appends `sub`, sending its wire `i` to logical wire `map[i]`.
    pub fn append(&mut self, sub: &Circuit, map: &[usize]) -> &mut Self {
        assert_eq!(
            map.len(),
            sub.width(),
            "wire map length must equal subcircuit width"
        );
        for g in sub.gates() {
            let phys = g.remapped(|q| self.layout[map[q]]);
            self.gates.push(phys);
        }
        if let Some(p) = sub.relabeling() {
            let inv = invert_permutation(p);
            let before: Vec<usize> = map.iter().map(|&m| self.layout[m]).collect();
            for (j, &m) in map.iter().enumerate() {
                self.layout[m] = before[inv[j]];
            }
        }
        self
    }

    /// Appends `sub` on logical wires `0..sub.width()`.
    pub fn append_identity(&mut self, sub: &Circuit) -> &mut Self {
        let map: Vec<usize> = (0..sub.width()).collect();
        self.append(sub, &map)
    }

    /// Gate-free renaming: logical wire `i` becomes logical wire `perm[i]`.
    pub fn relabel(&mut self, perm: &[usize]) -> &mut Self {
        assert_eq!(perm.len(), self.width);
        let before = self.layout.clone();
        for (i, &j) in perm.iter().enumerate() {
            self.layout[j] = before[i];
        }
        self
    }

    pub fn build(self) -> Result<Circuit> {
        let relabeling = invert_permutation(&self.layout);
        Circuit::new(
            self.width,
            self.gates,
            self.ancillas,
            Some(relabeling),
            self.label,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        let err = Circuit::from_gates(2, vec![Gate::cnot(0, 2)]).unwrap_err();
        assert_eq!(err, QrtError::QubitOutOfRange { qubit: 2, width: 2 });
        assert!(Circuit::new(2, vec![], [], Some(vec![0, 0]), "").is_err());
    }

    #[test]
    fn identity_relabel_is_dropped() {
        let c = Circuit::new(2, vec![], [], Some(vec![0, 1]), "").unwrap();
        assert!(c.relabeling().is_none());
    }

    #[test]
    fn adjoint_of_s_is_sdg() {
        let c = Circuit::from_gates(1, vec![Gate::s(0)]).unwrap();
        assert_eq!(c.adjoint().gates(), &[Gate::sdg(0)]);
        assert_eq!(c.adjoint().adjoint(), c);
    }

    #[test]
    fn builder_tracks_relabeling() {
        let mut b = CircuitBuilder::new(3, "t");
        b.relabel(&[1, 2, 0]);
        // logical 0 now lives on physical 2
        b.push(Gate::x(0));
        let c = b.build().unwrap();
        assert_eq!(c.gates(), &[Gate::x(2)]);
        assert_eq!(c.relabeling(), Some(&[1, 2, 0][..]));
    }
}
