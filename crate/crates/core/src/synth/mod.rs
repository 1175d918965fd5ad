//! Single-qubit synthesis over Clifford+T.
//!
//! Arbitrary single-qubit unitaries reduce to three `Rz` rotations and two
//! Hadamards ([`euler_decompose`]); each `Rz` is approximated by a searched
//! word over `{X, H, S, Sdg, T, Tdg}` ([`approximate_rz`]).

mod compile;
mod euler;
mod ring;
mod search;
mod sequence;
mod table;

pub use compile::{compile_circuit, compile_with_limit};
pub use euler::{euler_decompose, EulerAngles};
pub use search::{approximate_rz, ApproxReport, MATCH_TOLERANCE, MAX_SEARCH_LENGTH};
pub use sequence::{distance, trace_distance, identity2, mat2_adjoint, mat2_mul, CliffordTSequence, Symbol};
pub use table::MAX_TABLE_DEPTH;
