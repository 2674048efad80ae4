use super::layout::BinnedLayout;
use super::run::run_binned_circuit;
use super::scattering::ScatteringModel;
use crate::circuit::CircuitIR;
use crate::error::{Error, Result};
use crate::fock::{marginal_distribution, MarginalKey, OccupationState};

/// Detection-level summary of a binned run against its photonic reference.
///
/// For a two-particle input the three probabilities partition the outcome
/// space: `coincidence + bunching + scattered = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HomReport {
    pub n: usize,
    /// Mass of logical patterns with at most one particle per mode.
    pub coincidence_probability: f64,
    /// Mass of logical patterns with some mode holding two or more particles.
    pub bunching_probability: f64,
    /// Mass of the sinks.
    pub scattered_probability: f64,
    /// `|<ideal|state>|^2` with the same-`n`, scattering-free run as reference.
    pub fidelity_to_ideal: f64,
}

/// Summary for any binned state of the given layout.
pub fn logical_report(state: &OccupationState, ideal: &OccupationState, layout: &BinnedLayout) -> Result<HomReport> {
    for s in [state, ideal] {
        if s.mode_count() != layout.fine_modes() {
            return Err(Error::LayoutMismatch { expected: layout.fine_modes(), got: s.mode_count() });
        }
    }
    let dist = marginal_distribution(state, &layout.grouping())?;
    let mut coincidence = 0.0;
    let mut bunching = 0.0;
    let mut scattered = 0.0;
    for (key, p) in dist {
        match key {
            MarginalKey::Pattern(v) if v.counts().iter().all(|&c| c <= 1) => coincidence += p,
            MarginalKey::Pattern(_) => bunching += p,
            MarginalKey::Scattered => scattered += p,
        }
    }
    let overlap = ideal.inner(state).norm_sqr() / (ideal.norm_sqr() * state.norm_sqr());
    Ok(HomReport {
        n: layout.bins(),
        coincidence_probability: coincidence,
        bunching_probability: bunching,
        scattered_probability: scattered,
        fidelity_to_ideal: overlap.min(1.0),
    })
}

/// [`logical_report`] restricted to two particles over two logical modes.
pub fn hom_metrics(state: &OccupationState, ideal: &OccupationState, layout: &BinnedLayout) -> Result<HomReport> {
    if layout.logical_modes() != 2 || state.particle_number() != 2 {
        return Err(Error::WrongParticleNumber { expected: 2, modes: layout.logical_modes(), found: state.particle_number() });
    }
    logical_report(state, ideal, layout)
}

/// Runs `ir` with `n` bins under `model` and under the scattering-free model,
/// and summarizes the former against the latter.
pub fn binned_report(ir: &CircuitIR, n: usize, model: &ScatteringModel) -> Result<HomReport> {
    let actual = run_binned_circuit(ir, n, model)?;
    let layout = actual.layout;
    let actual = actual.into_state()?;
    let ideal = run_binned_circuit(ir, n, &ScatteringModel::ideal())?.into_state()?;
    logical_report(&actual, &ideal, &layout)
}

/// One report per bin count; `n_values` must be positive and strictly
/// ascending.
pub fn scaling_series(ir: &CircuitIR, n_values: &[usize], model: &ScatteringModel) -> Result<Vec<HomReport>> {
    if n_values.is_empty() || n_values[0] == 0 || n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadBinList);
    }
    n_values.iter().map(|&n| binned_report(ir, n, model)).collect()
}
