use std::collections::BTreeMap;

use super::ir::{CircuitIR, Element};
use super::validate::validate;
use super::CircuitError;
use crate::error::{Error, Result};
use crate::fock::{apply_unitary, postselect, FockResult, ModeUnitary, OccupationState};
use crate::gates::{beamsplitter_unitary, phase_unitary, BeamsplitterSpec};

/// One executable state operation.
#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    Vacuum(usize),
    Inject { element: usize, mode: usize, count: u32 },
    Unitary { element: usize, modes: Vec<usize>, unitary: ModeUnitary },
    Postselect { element: usize, constraints: BTreeMap<usize, u32> },
}

/// Ordered state operations. The first step is always [`Step::Vacuum`],
/// followed by exactly one step per circuit element.
#[derive(Clone, Debug, PartialEq)]
pub struct Plan {
    pub mode_count: usize,
    pub steps: Vec<Step>,
}

/// Lowers a circuit to a plan. The circuit must validate.
pub fn lower(ir: &CircuitIR) -> std::result::Result<Plan, CircuitError> {
    let diags = validate(ir);
    if !diags.is_empty() {
        return Err(CircuitError::Invalid(diags));
    }
    let mut steps = vec![Step::Vacuum(ir.mode_count)];
    for (element, e) in ir.elements.iter().enumerate() {
        steps.push(match e {
            Element::Inject { mode, count } => Step::Inject { element, mode: *mode, count: *count },
            Element::Beamsplitter { i, j, theta, phi } => Step::Unitary {
                element,
                modes: vec![*i, *j],
                unitary: beamsplitter_unitary(BeamsplitterSpec::new(*theta, *phi)),
            },
            Element::PhaseShifter { i, phi } => Step::Unitary { element, modes: vec![*i], unitary: phase_unitary(*phi) },
            Element::Postselect { constraints } => {
                Step::Postselect { element, constraints: constraints.iter().copied().collect() }
            }
        });
    }
    Ok(Plan { mode_count: ir.mode_count, steps })
}

/// Final state of an exact (unbinned) run. `state` is `None` if a
/// post-selection had no matching component.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealOutcome {
    pub state: Option<OccupationState>,
    /// Product of the success probabilities of every post-selection.
    pub success_probability: f64,
    /// Element index of the post-selection that emptied the state.
    pub failed_at: Option<usize>,
}

impl IdealOutcome {
    /// The final state, or [`Error::PostselectionFailed`].
    pub fn into_state(self) -> Result<OccupationState> {
        match (self.state, self.failed_at) {
            (Some(s), _) => Ok(s),
            (None, at) => Err(Error::PostselectionFailed(at.unwrap_or_default())),
        }
    }
}

impl Plan {
    /// Runs from the vacuum.
    pub fn execute(&self) -> FockResult<IdealOutcome> {
        self.execute_from(OccupationState::vacuum(self.mode_count)?)
    }

    /// Runs from an arbitrary initial state, skipping the vacuum step.
    pub fn execute_from(&self, initial: OccupationState) -> FockResult<IdealOutcome> {
        let mut state = initial;
        let mut success = 1.0;
        for step in &self.steps {
            match step {
                Step::Vacuum(_) => {}
                Step::Inject { mode, count, .. } => state = state.inject(*mode, *count)?,
                Step::Unitary { modes, unitary, .. } => state = apply_unitary(&state, unitary, modes)?,
                Step::Postselect { element, constraints } => {
                    let out = postselect(&state, constraints)?;
                    success *= out.probability;
                    match out.state {
                        Some(s) => state = s,
                        None => return Ok(IdealOutcome { state: None, success_probability: 0.0, failed_at: Some(*element) }),
                    }
                }
            }
        }
        Ok(IdealOutcome { state: Some(state), success_probability: success, failed_at: None })
    }
}

/// Exact photonic simulation of a circuit from the vacuum.
pub fn run_ideal(ir: &CircuitIR) -> Result<IdealOutcome> {
    Ok(lower(ir)?.execute()?)
}

/// Exact photonic simulation starting from `initial`.
pub fn run_ideal_from(ir: &CircuitIR, initial: OccupationState) -> Result<IdealOutcome> {
    if initial.mode_count() != ir.mode_count {
        return Err(Error::LayoutMismatch { expected: ir.mode_count, got: initial.mode_count() });
    }
    Ok(lower(ir)?.execute_from(initial)?)
}
