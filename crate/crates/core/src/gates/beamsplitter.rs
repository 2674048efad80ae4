use std::f64::consts::FRAC_PI_4;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::fock::ModeUnitary;

/// Two-mode beamsplitter parameters in radians. `theta` sets the
/// reflectivity, `phi` the relative phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamsplitterSpec {
    pub theta: f64,
    pub phi: f64,
}

impl BeamsplitterSpec {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// The real 50/50 splitter.
    pub fn balanced() -> Self {
        Self { theta: FRAC_PI_4, phi: 0.0 }
    }
}

/// `[[cos t, e^{i p} sin t], [e^{-i p} sin t, -cos t]]`.
///
/// Hermitian and unitary, so it is its own inverse. At `(pi/4, 0)` mode 0 goes
/// to `(b0 + b1)/sqrt 2` and mode 1 to `(b0 - b1)/sqrt 2`.
pub fn beamsplitter_unitary(spec: BeamsplitterSpec) -> ModeUnitary {
    let (s, c) = spec.theta.sin_cos();
    let phase = C64::from_polar(1.0, spec.phi);
    let m = DMatrix::from_row_slice(2, 2, &[C64::new(c, 0.0), phase * s, phase.conj() * s, C64::new(-c, 0.0)]);
    ModeUnitary::new(m).expect("beamsplitter matrix is unitary for finite angles")
}

/// Single-mode phase shift `e^{i phi}`.
pub fn phase_unitary(phi: f64) -> ModeUnitary {
    ModeUnitary::new(DMatrix::from_element(1, 1, C64::from_polar(1.0, phi))).expect("unit-modulus scalar")
}
