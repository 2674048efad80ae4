//! Element conventions and reference circuits.

mod beamsplitter;
mod circuits;
mod ns_params;
pub mod ns_solver;

pub use beamsplitter::{beamsplitter_unitary, phase_unitary, BeamsplitterSpec};
pub use circuits::{cz_gate_circuit, hom_circuit, ns_gate_circuit, ns_transfer, NsTransfer};
pub use ns_params::NS_ANGLES;
