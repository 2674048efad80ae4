use thiserror::Error;

use crate::circuit::CircuitError;
use crate::fock::FockError;

/// Errors from whole-circuit simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Circuit(#[from] CircuitError),

    #[error(transparent)]
    Fock(#[from] FockError),

    #[error("state spans {got} modes, layout expects {expected}")]
    LayoutMismatch { expected: usize, got: usize },

    #[error("time-bin count must be at least 1")]
    ZeroBins,

    #[error("bin counts must be positive and strictly ascending")]
    BadBinList,

    #[error("scattering probability {0} is outside [0, 1]")]
    BadScatterProbability(f64),

    #[error("element {0} is not a beamsplitter or phase shifter")]
    NotAnInterferometerElement(usize),

    #[error("expected {expected} particles over {modes} logical modes, found {found}")]
    WrongParticleNumber { expected: u32, modes: usize, found: u32 },

    #[error("post-selection at element {0} has zero success probability")]
    PostselectionFailed(usize),
}

impl Error {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::Fock(e) if e.is_cap_exceeded())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
