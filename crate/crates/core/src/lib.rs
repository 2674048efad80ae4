//! Exact Fock-space simulation of bosonic linear interferometers.
//!
//! The crate is split into four layers:
//!
//! - [`fock`]: sparse multi-boson states, permanent-based evolution under
//!   linear mode transforms, post-selection and coarse-grained marginals.
//! - [`circuit`]: a line-oriented interferometer description language with a
//!   parser, validator, canonical formatter and lowering to execution plans.
//! - [`timebin`]: the time-bin back-end, where every logical mode is split into
//!   `n` short wave-packets and particles that meet in the same bin at a
//!   beamsplitter scatter out of the interferometer.
//! - [`gates`]: beamsplitter conventions and ready-made circuits (HOM, NS, CZ).

pub mod circuit;
pub mod error;
pub mod fock;
pub mod gates;
pub mod timebin;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
