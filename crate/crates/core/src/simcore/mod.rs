//! Gates, circuits, and the simulator every other module is checked with.

pub mod circuit;
pub mod count;
pub mod gate;
pub mod statevector;
pub mod text;
pub mod unitary;

pub use circuit::{Circuit, CircuitBuilder};
pub use count::{count_gates, GateCountReport};
pub use gate::{Gate, GateKind, C64};
pub use statevector::{apply_gate, run_circuit, run_classical, StateVector, STATEVECTOR_CAP};
pub use text::{export_json, export_text, parse_text};
pub use unitary::{
    circuit_unitary, circuit_unitary_with, compare_unitaries, data_block, data_block_with,
    DataBlock, DenseUnitary, Matrix, SimOptions, DEFAULT_TOLERANCE, DEFAULT_UNITARY_CAP,
};
