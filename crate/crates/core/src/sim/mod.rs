//! Exact state-vector simulation over the Clifford+T gate set plus
//! parametric `Rz` and controlled-phase rotations.
//!
//! Basis index bit `k` holds qubit `k`, so qubit 0 is the least significant
//! bit. Output bitstrings list the measured qubits in the circuit's
//! `measured_qubits` order, first entry leftmost.

mod circuit;
mod gate;
mod state;

pub use circuit::Circuit;
pub use gate::{rz_matrix, GateKind, GateOp, Mat2, Mat4};
pub use state::{apply_gate, output_distribution, pst, simulate, StateVector};

pub(crate) use state::parse_bitstring;
