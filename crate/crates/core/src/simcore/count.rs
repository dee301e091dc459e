use std::collections::BTreeMap;

use serde::Serialize;

use crate::simcore::circuit::Circuit;

/// Elementary gate tally. `per_kind` holds weighted costs, so `total` is
/// always their sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GateCountReport {
    pub per_kind: BTreeMap<String, usize>,
    pub total: usize,
    pub width: usize,
    pub ancilla_count: usize,
}

impl GateCountReport {
    pub fn get(&self, kind: &str) -> usize {
        self.per_kind.get(kind).copied().unwrap_or(0)
    }

    pub fn total_without_swaps(&self) -> usize {
        self.total - self.get("swap")
    }
}

/// Every gate instance costs 1 except `mcx` with three or more controls.
/// The relabeling costs nothing.
pub fn count_gates(circuit: &Circuit) -> GateCountReport {
    let mut per_kind = BTreeMap::new();
    let mut total = 0;
    for g in circuit.gates() {
        let c = g.kind().cost();
        *per_kind.entry(g.kind().name().to_string()).or_insert(0) += c;
        total += c;
    }
    GateCountReport {
        per_kind,
        total,
        width: circuit.width(),
        ancilla_count: circuit.ancillas().len(),
    }
}
