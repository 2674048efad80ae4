use super::layout::BinnedLayout;
use super::scattering::{apply_unitary_binned, inject_binned, ScatteringModel};
use crate::circuit::{lower, CircuitIR, Step};
use crate::error::{Error, Result};
use crate::fock::{postselect_grouped, OccupationState, MAX_PARTICLES};

/// Final state of a binned run.
#[derive(Clone, Debug, PartialEq)]
pub struct BinnedOutcome {
    pub layout: BinnedLayout,
    /// `None` if a post-selection had nothing to keep.
    pub state: Option<OccupationState>,
    /// Product of post-selection success probabilities.
    pub success_probability: f64,
    /// Element index of the post-selection that emptied the state.
    pub failed_at: Option<usize>,
}

impl BinnedOutcome {
    /// The final state, or [`Error::PostselectionFailed`].
    pub fn into_state(self) -> Result<OccupationState> {
        match (self.state, self.failed_at) {
            (Some(s), _) => Ok(s),
            (None, at) => Err(Error::PostselectionFailed(at.unwrap_or_default())),
        }
    }
}

/// Runs a circuit on the time-bin back-end with `bins` bins per logical mode.
///
/// Injections spread over all bins of their mode, beamsplitters and phase
/// shifters act bin by bin under `model`, and post-selections test bin-summed
/// logical counts (sinks never match).
pub fn run_binned_circuit(ir: &CircuitIR, bins: usize, model: &ScatteringModel) -> Result<BinnedOutcome> {
    let plan = lower(ir)?;
    let layout = BinnedLayout::new(ir.mode_count, bins)?;
    let total = ir.total_injected();
    if total > MAX_PARTICLES {
        return Err(crate::fock::FockError::ParticleCap { requested: total, cap: MAX_PARTICLES }.into());
    }
    let grouping = layout.grouping();

    let mut state = OccupationState::vacuum(layout.fine_modes())?;
    let mut success = 1.0;
    for step in &plan.steps {
        match step {
            Step::Vacuum(_) => {}
            Step::Inject { mode, count, .. } => state = inject_binned(&state, &layout, *mode, *count)?,
            Step::Unitary { element, modes, unitary } => {
                state = apply_unitary_binned(&state, unitary, modes, *element, &layout, model)?
            }
            Step::Postselect { element, constraints } => {
                let out = postselect_grouped(&state, &grouping, constraints)?;
                success *= out.probability;
                match out.state {
                    Some(s) => state = s,
                    None => {
                        return Ok(BinnedOutcome { layout, state: None, success_probability: 0.0, failed_at: Some(*element) })
                    }
                }
            }
        }
    }
    Ok(BinnedOutcome { layout, state: Some(state), success_probability: success, failed_at: None })
}
