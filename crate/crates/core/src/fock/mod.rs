//! Multi-boson Fock states and their evolution under linear optics.
//!
//! A state is a sparse superposition of occupation vectors with a fixed total
//! particle number, plus an orthonormal set of "sink" components holding
//! amplitude that has left the interferometric modes.

mod measure;
mod permanent;
mod state;
mod unitary;

pub use measure::{marginal_distribution, postselect, postselect_grouped, MarginalKey, ModeGrouping, PostselectOutcome};
pub use permanent::permanent;
pub use state::{OccupationState, OccupationVector, SinkLabel};
pub use unitary::{apply_unitary, ModeUnitary};
pub(crate) use unitary::compositions;

use thiserror::Error;

/// Maximum number of particles a state may hold.
pub const MAX_PARTICLES: u32 = 20;

/// Maximum number of (fine) modes a state may span.
pub const MAX_MODES: usize = 256;

/// Amplitudes with magnitude below this are dropped after each element.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// Tolerance used when checking that a matrix is unitary.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("mode {mode} out of range for {mode_count} modes")]
    ModeOutOfRange { mode: usize, mode_count: usize },

    #[error("duplicate mode index {0}")]
    DuplicateMode(usize),

    #[error("unitary acts on {expected} modes but {got} were given")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not unitary (max |U^dag U - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("particle cap exceeded: {requested} > {cap}")]
    ParticleCap { requested: u32, cap: u32 },

    #[error("mode cap exceeded: {requested} > {cap}")]
    ModeCap { requested: usize, cap: usize },

    #[error("state must have at least one mode")]
    NoModes,

    #[error("occupation vector has {got} entries, state has {expected} modes")]
    VectorLength { expected: usize, got: usize },

    #[error("basis terms carry different particle numbers ({0} and {1})")]
    MixedParticleNumber(u32, u32),

    #[error("grouping covers {got} modes, state has {expected}")]
    GroupingMismatch { expected: usize, got: usize },

    #[error("state has no components")]
    EmptyState,
}

impl FockError {
    /// True for errors caused by the particle or mode caps.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, FockError::ParticleCap { .. } | FockError::ModeCap { .. })
    }
}

pub type FockResult<T> = Result<T, FockError>;
