use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use super::layout::BinnedLayout;
use crate::circuit::Element;
use crate::error::{Error, Result};
use crate::fock::{
    apply_unitary, compositions, FockError, ModeUnitary, OccupationState, OccupationVector, SinkLabel, MAX_PARTICLES,
};
use crate::gates::{beamsplitter_unitary, phase_unitary, BeamsplitterSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScatteringKind {
    /// Every coincident bin scatters completely.
    Hard,
    /// A coincident bin scatters with amplitude `sqrt(p)` and continues
    /// photonically with amplitude `sqrt(1 - p)`.
    Partial,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScatteringModel {
    kind: ScatteringKind,
    p_scatter: f64,
}

impl ScatteringModel {
    pub fn hard() -> Self {
        Self { kind: ScatteringKind::Hard, p_scatter: 1.0 }
    }

    pub fn partial(p_scatter: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_scatter) {
            return Err(Error::BadScatterProbability(p_scatter));
        }
        Ok(Self { kind: ScatteringKind::Partial, p_scatter })
    }

    /// No scattering: the photonic limit.
    pub fn ideal() -> Self {
        Self { kind: ScatteringKind::Partial, p_scatter: 0.0 }
    }

    /// `Hard` for `p = 1`, `Partial` otherwise.
    pub fn from_probability(p_scatter: f64) -> Result<Self> {
        if p_scatter == 1.0 {
            Ok(Self::hard())
        } else {
            Self::partial(p_scatter)
        }
    }

    pub fn kind(&self) -> ScatteringKind {
        self.kind
    }

    pub fn p_scatter(&self) -> f64 {
        self.p_scatter
    }
}

fn check_layout(state: &OccupationState, layout: &BinnedLayout) -> Result<()> {
    if state.mode_count() != layout.fine_modes() {
        return Err(Error::LayoutMismatch { expected: layout.fine_modes(), got: state.mode_count() });
    }
    Ok(())
}

/// Adds `count` particles to the long wave-packet of `logical`, i.e. applies
/// `(A^dag)^count / sqrt(count!)` with `A^dag = (1/sqrt n) sum_i a_{logical,t_i}^dag`
/// and renormalizes. When the packet is empty in every term this is already
/// normalized and coincides with [`OccupationState::inject`] on the unbinned
/// state.
pub fn inject_binned(state: &OccupationState, layout: &BinnedLayout, logical: usize, count: u32) -> Result<OccupationState> {
    check_layout(state, layout)?;
    if logical >= layout.logical_modes() {
        return Err(FockError::ModeOutOfRange { mode: logical, mode_count: layout.logical_modes() }.into());
    }
    if count == 0 {
        return Ok(state.clone());
    }
    let particles = state.particle_number() + count;
    if particles > MAX_PARTICLES {
        return Err(FockError::ParticleCap { requested: particles, cap: MAX_PARTICLES }.into());
    }

    let n = layout.bins();
    let fine: Vec<usize> = (0..n).map(|b| layout.fine_index(logical, b)).collect();
    // (A^dag)^c / sqrt(c!) = sqrt(c!) / n^(c/2) * sum over c_b of prod (a_b^dag)^(c_b) / c_b!
    let scale = factorial(count).sqrt() / (n as f64).powf(count as f64 / 2.0);
    let spread: Vec<(Vec<u8>, f64)> = compositions(count, n)
        .into_iter()
        .map(|c| {
            let w = scale / c.iter().map(|&k| factorial(k as u32)).product::<f64>();
            (c, w)
        })
        .collect();

    let add = |occ: &OccupationVector| -> Vec<(OccupationVector, f64)> {
        spread
            .iter()
            .map(|(c, w)| {
                let mut counts = occ.counts().to_vec();
                let mut raised = 1.0;
                for (&f, &k) in fine.iter().zip(c) {
                    if k > 0 {
                        let m = counts[f] as u32;
                        raised *= factorial(m + k as u32) / factorial(m);
                        counts[f] += k;
                    }
                }
                (OccupationVector::new(counts), w * raised.sqrt())
            })
            .collect()
    };

    let mut terms: BTreeMap<OccupationVector, C64> = BTreeMap::new();
    for (occ, &amp) in state.terms() {
        for (next, f) in add(occ) {
            *terms.entry(next).or_default() += amp * f;
        }
    }
    let mut sinks: BTreeMap<SinkLabel, C64> = BTreeMap::new();
    for (label, &amp) in state.sinks() {
        for (context, f) in add(&label.context) {
            let next = SinkLabel { context, ..label.clone() };
            *sinks.entry(next).or_default() += amp * f;
        }
    }
    Ok(OccupationState::from_parts(layout.fine_modes(), particles, terms, sinks).normalized()?)
}

fn factorial(k: u32) -> f64 {
    (2..=k).map(f64::from).product()
}

/// Builds the binned input state: every source particle spread uniformly
/// over the `n` bins of its logical mode.
pub fn expand_time_bins(logical_sources: &BTreeMap<usize, u32>, layout: &BinnedLayout) -> Result<OccupationState> {
    let total: u32 = logical_sources.values().sum();
    if total > MAX_PARTICLES {
        return Err(FockError::ParticleCap { requested: total, cap: MAX_PARTICLES }.into());
    }
    let mut state = OccupationState::vacuum(layout.fine_modes())?;
    for (&mode, &count) in logical_sources {
        state = inject_binned(&state, layout, mode, count)?;
    }
    Ok(state)
}

/// Applies a beamsplitter or phase shifter to a binned state.
pub fn apply_element_binned(
    state: &OccupationState,
    element: &Element,
    element_id: usize,
    layout: &BinnedLayout,
    model: &ScatteringModel,
) -> Result<OccupationState> {
    match element {
        Element::Beamsplitter { i, j, theta, phi } => {
            let u = beamsplitter_unitary(BeamsplitterSpec::new(*theta, *phi));
            apply_unitary_binned(state, &u, &[*i, *j], element_id, layout, model)
        }
        Element::PhaseShifter { i, phi } => apply_unitary_binned(state, &phase_unitary(*phi), &[*i], element_id, layout, model),
        _ => Err(Error::NotAnInterferometerElement(element_id)),
    }
}

/// Applies `unitary` on `logical` modes bin by bin.
///
/// Terms placing two or more particles across the element's input modes in
/// the same bin are split first, from the lowest such bin up: amplitude
/// `sqrt(p)` goes to a sink labelled by this element, the bin, the bin's input
/// pattern and the whole term; `sqrt(1-p)` carries on. Single-mode elements
/// never scatter. Sinks are left untouched.
pub fn apply_unitary_binned(
    state: &OccupationState,
    unitary: &ModeUnitary,
    logical: &[usize],
    element_id: usize,
    layout: &BinnedLayout,
    model: &ScatteringModel,
) -> Result<OccupationState> {
    check_layout(state, layout)?;
    for (k, &m) in logical.iter().enumerate() {
        if m >= layout.logical_modes() {
            return Err(FockError::ModeOutOfRange { mode: m, mode_count: layout.logical_modes() }.into());
        }
        if logical[..k].contains(&m) {
            return Err(FockError::DuplicateMode(m).into());
        }
    }
    if logical.len() != unitary.dim() {
        return Err(FockError::DimensionMismatch { expected: unitary.dim(), got: logical.len() }.into());
    }

    let bins = layout.bins();
    let fine_at = |b: usize| -> Vec<usize> { logical.iter().map(|&m| layout.fine_index(m, b)).collect() };

    let mut current = if logical.len() >= 2 && model.p_scatter() > 0.0 {
        let scatter = C64::new(model.p_scatter().sqrt(), 0.0);
        let survive = (1.0 - model.p_scatter()).sqrt();
        let (terms, mut sinks) = state.clone().into_parts();
        let mut kept = BTreeMap::new();
        for (occ, amp) in terms {
            let mut remaining = amp;
            for b in 0..bins {
                let pattern: Vec<u8> = fine_at(b).iter().map(|&f| occ[f]).collect();
                if pattern.iter().map(|&c| c as u32).sum::<u32>() < 2 {
                    continue;
                }
                let label = SinkLabel::new(element_id, b, OccupationVector::new(pattern), occ.clone());
                *sinks.entry(label).or_default() += remaining * scatter;
                remaining *= survive;
                if remaining == C64::default() {
                    break;
                }
            }
            if remaining != C64::default() {
                kept.insert(occ, remaining);
            }
        }
        OccupationState::from_parts(state.mode_count(), state.particle_number(), kept, sinks)
    } else {
        state.clone()
    };

    for b in 0..bins {
        current = apply_unitary(&current, unitary, &fine_at(b))?;
    }
    Ok(current)
}
