//! Time-bin back-end.
//!
//! Each logical mode is split into `n` orthogonal short wave-packets (bins),
//! and a particle injected into the logical mode is the equal superposition
//! `(1/sqrt n) sum_i a_{t_i}^dag`. Bins are synchronized across the whole
//! circuit. At a beamsplitter, bins in which two or more particles meet
//! scatter out of the interferometer; every other bin is transformed by the
//! element's unitary on its own.
//!
//! For the two-particle HOM input only the `n` diagonal bin pairs of the `n^2`
//! equal-weight input terms meet, so the scattered *probability* is exactly
//! `1/n` (an amplitude of norm `1/sqrt n`) in the hard model.

mod fit;
mod layout;
mod metrics;
mod run;
mod scattering;

pub use fit::{fit_power_law, FitError, PowerFit};
pub use layout::BinnedLayout;
pub use metrics::{binned_report, hom_metrics, logical_report, scaling_series, HomReport};
pub use run::{run_binned_circuit, BinnedOutcome};
pub use scattering::{
    apply_element_binned, apply_unitary_binned, expand_time_bins, inject_binned, ScatteringKind, ScatteringModel,
};
