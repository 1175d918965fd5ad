//! Exact Clifford+T circuit simulation, logical fault injection, and
//! surface-code time-to-solution modeling for fixed and variable code
//! distances.

pub mod error;
pub mod fault;
pub mod qecc;
pub mod pipeline;
pub mod qpe;
mod render;
pub mod sim;
pub mod synth;

pub use error::{Error, Result};
