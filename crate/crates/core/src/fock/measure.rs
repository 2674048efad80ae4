use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use super::state::{OccupationState, OccupationVector};
use super::{FockError, FockResult};

/// Many-to-one map from (fine) state modes to the logical modes a detector
/// resolves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeGrouping {
    targets: Vec<usize>,
    logical_modes: usize,
}

impl ModeGrouping {
    pub fn new(targets: Vec<usize>, logical_modes: usize) -> FockResult<Self> {
        if let Some(&bad) = targets.iter().find(|&&t| t >= logical_modes) {
            return Err(FockError::ModeOutOfRange { mode: bad, mode_count: logical_modes });
        }
        Ok(Self { targets, logical_modes })
    }

    pub fn identity(modes: usize) -> Self {
        Self { targets: (0..modes).collect(), logical_modes: modes }
    }

    pub fn fine_modes(&self) -> usize {
        self.targets.len()
    }

    pub fn logical_modes(&self) -> usize {
        self.logical_modes
    }

    pub fn target(&self, fine: usize) -> usize {
        self.targets[fine]
    }

    pub fn coarse(&self, occ: &OccupationVector) -> OccupationVector {
        let mut out = vec![0u8; self.logical_modes];
        for (fine, &c) in occ.counts().iter().enumerate() {
            out[self.targets[fine]] += c;
        }
        OccupationVector::new(out)
    }

    fn check(&self, state: &OccupationState) -> FockResult<()> {
        if self.targets.len() != state.mode_count() {
            return Err(FockError::GroupingMismatch { expected: state.mode_count(), got: self.targets.len() });
        }
        Ok(())
    }
}

/// Key of a detection-level distribution: a logical occupation pattern, or the
/// reserved bucket for everything that left the interferometer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarginalKey {
    Pattern(OccupationVector),
    Scattered,
}

impl MarginalKey {
    pub fn pattern(counts: &[u8]) -> Self {
        MarginalKey::Pattern(OccupationVector::new(counts.to_vec()))
    }
}

/// Result of conditioning on a detector pattern. `state` is `None` when nothing
/// matched; otherwise it is renormalized to one.
#[derive(Clone, Debug, PartialEq)]
pub struct PostselectOutcome {
    pub probability: f64,
    pub state: Option<OccupationState>,
}

/// Detection probabilities of logical patterns, summing `|amp|^2` over every
/// fine pattern that coarse-grains to the same logical pattern. Sink weight is
/// reported under [`MarginalKey::Scattered`].
pub fn marginal_distribution(state: &OccupationState, grouping: &ModeGrouping) -> FockResult<BTreeMap<MarginalKey, f64>> {
    grouping.check(state)?;
    let mut dist = BTreeMap::new();
    for (occ, amp) in state.terms() {
        *dist.entry(MarginalKey::Pattern(grouping.coarse(occ))).or_insert(0.0) += amp.norm_sqr();
    }
    if !state.sinks().is_empty() {
        dist.insert(MarginalKey::Scattered, state.sink_weight());
    }
    Ok(dist)
}

/// Keeps the component whose occupation of each constrained mode equals the
/// requested count, and renormalizes it.
pub fn postselect(state: &OccupationState, pattern: &BTreeMap<usize, u32>) -> FockResult<PostselectOutcome> {
    postselect_grouped(state, &ModeGrouping::identity(state.mode_count()), pattern)
}

/// Like [`postselect`], but constraints refer to logical modes of `grouping`
/// and are checked against bin-summed counts.
pub fn postselect_grouped(
    state: &OccupationState,
    grouping: &ModeGrouping,
    pattern: &BTreeMap<usize, u32>,
) -> FockResult<PostselectOutcome> {
    let projected = project(state, grouping, pattern)?;
    let Some(projected) = projected else {
        return Ok(PostselectOutcome { probability: 0.0, state: None });
    };
    let probability = projected.norm_sqr();
    let state = projected.normalized()?;
    Ok(PostselectOutcome { probability: probability.min(1.0), state: Some(state) })
}

/// Unnormalized projection onto the matching component; `None` if empty.
pub(crate) fn project(
    state: &OccupationState,
    grouping: &ModeGrouping,
    pattern: &BTreeMap<usize, u32>,
) -> FockResult<Option<OccupationState>> {
    grouping.check(state)?;
    for &mode in pattern.keys() {
        if mode >= grouping.logical_modes() {
            return Err(FockError::ModeOutOfRange { mode, mode_count: grouping.logical_modes() });
        }
    }
    let terms: BTreeMap<OccupationVector, C64> = state
        .terms()
        .iter()
        .filter(|(occ, _)| {
            let coarse = grouping.coarse(occ);
            pattern.iter().all(|(&m, &c)| coarse[m] as u32 == c)
        })
        .map(|(o, a)| (o.clone(), *a))
        .collect();
    if terms.is_empty() {
        return Ok(None);
    }
    Ok(Some(OccupationState::from_parts(state.mode_count(), state.particle_number(), terms, BTreeMap::new())))
}

impl OccupationState {
    /// Unnormalized projection onto the component matching `pattern`; `None` if
    /// no term matches. Its squared norm is the success probability.
    pub fn project(&self, pattern: &BTreeMap<usize, u32>) -> FockResult<Option<OccupationState>> {
        project(self, &ModeGrouping::identity(self.mode_count()), pattern)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn hom_out() -> OccupationState {
        OccupationState::from_terms(
            2,
            [(vec![2, 0], C64::new(FRAC_1_SQRT_2, 0.0)), (vec![0, 2], C64::new(-FRAC_1_SQRT_2, 0.0))],
        )
        .unwrap()
    }

    #[test]
    fn postselect_filters_and_renormalizes() {
        let out = postselect(&hom_out(), &BTreeMap::from([(1, 0)])).unwrap();
        assert!((out.probability - 0.5).abs() < 1e-12);
        let s = out.state.unwrap();
        assert_eq!(s.terms().len(), 1);
        assert!((s.amplitude(&[2, 0]) - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn empty_constraint_is_identity() {
        let s = hom_out();
        let out = postselect(&s, &BTreeMap::new()).unwrap();
        assert!((out.probability - 1.0).abs() < 1e-12);
        let back = out.state.unwrap();
        assert!((back.inner(&s).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn no_match_gives_empty_marker() {
        let s = OccupationState::basis(vec![1, 1]).unwrap();
        let out = postselect(&s, &BTreeMap::from([(0, 2)])).unwrap();
        assert_eq!(out.probability, 0.0);
        assert!(out.state.is_none());
    }

    #[test]
    fn postselect_range_check() {
        let s = OccupationState::basis(vec![1, 1]).unwrap();
        assert!(postselect(&s, &BTreeMap::from([(2, 0)])).is_err());
    }

    #[test]
    fn marginal_identity_grouping() {
        let d = marginal_distribution(&hom_out(), &ModeGrouping::identity(2)).unwrap();
        assert_eq!(d.len(), 2);
        assert!((d[&MarginalKey::pattern(&[2, 0])] - 0.5).abs() < 1e-12);
        assert!((d[&MarginalKey::pattern(&[0, 2])] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn marginal_coarse_grains() {
        // modes 0,1 -> logical 0 and modes 2,3 -> logical 1
        let s = OccupationState::from_terms(
            4,
            [(vec![1, 0, 1, 0], C64::new(0.5, 0.0)), (vec![0, 1, 1, 0], C64::new(0.5, 0.0)), (vec![1, 1, 0, 0], C64::new(FRAC_1_SQRT_2, 0.0))],
        )
        .unwrap();
        let g = ModeGrouping::new(vec![0, 0, 1, 1], 2).unwrap();
        let d = marginal_distribution(&s, &g).unwrap();
        assert!((d[&MarginalKey::pattern(&[1, 1])] - 0.5).abs() < 1e-12);
        assert!((d[&MarginalKey::pattern(&[2, 0])] - 0.5).abs() < 1e-12);
        assert!(marginal_distribution(&s, &ModeGrouping::identity(3)).is_err());
    }
}
