use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64 as C64;

use super::{FockError, FockResult, MAX_MODES, MAX_PARTICLES, PRUNE_THRESHOLD};

/// Particles per mode. Ordered lexicographically, which fixes the iteration
/// order of every state and therefore of every output file.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccupationVector(Vec<u8>);

impl OccupationVector {
    pub fn new(counts: Vec<u8>) -> Self {
        Self(counts)
    }

    pub fn zeros(modes: usize) -> Self {
        Self(vec![0; modes])
    }

    pub fn counts(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&c| c as u32).sum()
    }

    pub(crate) fn counts_mut(&mut self) -> &mut [u8] {
        &mut self.0
    }
}

impl From<Vec<u8>> for OccupationVector {
    fn from(v: Vec<u8>) -> Self {
        Self(v)
    }
}

impl std::ops::Index<usize> for OccupationVector {
    type Output = u8;
    fn index(&self, i: usize) -> &u8 {
        &self.0[i]
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ">")
    }
}

/// Label of an orthonormal basis element outside the interferometric modes.
///
/// A term that scatters at element `element_id` in time bin `bin_index` is
/// frozen under a label that also records the complete occupation vector it had
/// when it reached the element (`context`), so distinct scattering events never
/// interfere with each other.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SinkLabel {
    pub element_id: usize,
    pub bin_index: usize,
    /// Occupation of the element's input modes at `bin_index`.
    pub input_pattern: OccupationVector,
    /// Total occupancy of `input_pattern`.
    pub particle_count: u32,
    /// Full occupation vector of the scattered term.
    pub context: OccupationVector,
}

impl SinkLabel {
    pub fn new(element_id: usize, bin_index: usize, input_pattern: OccupationVector, context: OccupationVector) -> Self {
        let particle_count = input_pattern.total();
        Self { element_id, bin_index, input_pattern, particle_count, context }
    }
}

/// Sparse pure state over `mode_count` bosonic modes with fixed particle number.
#[derive(Clone, Debug, PartialEq)]
pub struct OccupationState {
    mode_count: usize,
    particles: u32,
    terms: BTreeMap<OccupationVector, C64>,
    sinks: BTreeMap<SinkLabel, C64>,
}

impl OccupationState {
    /// The vacuum `|0,...,0>` with amplitude 1.
    pub fn vacuum(mode_count: usize) -> FockResult<Self> {
        check_mode_count(mode_count)?;
        let mut terms = BTreeMap::new();
        terms.insert(OccupationVector::zeros(mode_count), C64::new(1.0, 0.0));
        Ok(Self { mode_count, particles: 0, terms, sinks: BTreeMap::new() })
    }

    /// A single Fock basis state with amplitude 1.
    pub fn basis(counts: Vec<u8>) -> FockResult<Self> {
        Self::from_terms(counts.len(), [(counts, C64::new(1.0, 0.0))])
    }

    /// Builds a state from explicit terms. Repeated vectors are summed and the
    /// result is pruned but not normalized.
    pub fn from_terms<I, V>(mode_count: usize, terms: I) -> FockResult<Self>
    where
        I: IntoIterator<Item = (V, C64)>,
        V: Into<OccupationVector>,
    {
        check_mode_count(mode_count)?;
        let mut map: BTreeMap<OccupationVector, C64> = BTreeMap::new();
        let mut particles: Option<u32> = None;
        for (v, amp) in terms {
            let v = v.into();
            if v.len() != mode_count {
                return Err(FockError::VectorLength { expected: mode_count, got: v.len() });
            }
            let n = v.total();
            check_particles(n)?;
            match particles {
                None => particles = Some(n),
                Some(p) if p != n => return Err(FockError::MixedParticleNumber(p, n)),
                _ => {}
            }
            *map.entry(v).or_default() += amp;
        }
        let particles = particles.ok_or(FockError::EmptyState)?;
        let mut state = Self { mode_count, particles, terms: map, sinks: BTreeMap::new() };
        state.prune();
        if state.is_empty() {
            return Err(FockError::EmptyState);
        }
        Ok(state)
    }

    pub(crate) fn from_parts(
        mode_count: usize,
        particles: u32,
        terms: BTreeMap<OccupationVector, C64>,
        sinks: BTreeMap<SinkLabel, C64>,
    ) -> Self {
        let mut s = Self { mode_count, particles, terms, sinks };
        s.prune();
        s
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn particle_number(&self) -> u32 {
        self.particles
    }

    pub fn terms(&self) -> &BTreeMap<OccupationVector, C64> {
        &self.terms
    }

    pub fn sinks(&self) -> &BTreeMap<SinkLabel, C64> {
        &self.sinks
    }

    pub(crate) fn into_parts(self) -> (BTreeMap<OccupationVector, C64>, BTreeMap<SinkLabel, C64>) {
        (self.terms, self.sinks)
    }

    /// Amplitude of a basis vector (zero if absent).
    pub fn amplitude(&self, counts: &[u8]) -> C64 {
        self.terms.get(&OccupationVector(counts.to_vec())).copied().unwrap_or_default()
    }

    /// Squared norm over interferometric terms and sinks.
    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().chain(self.sinks.values()).map(|a| a.norm_sqr()).sum()
    }

    /// Squared norm carried by the sinks alone.
    pub fn sink_weight(&self) -> f64 {
        self.sinks.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty() && self.sinks.is_empty()
    }

    /// `<self|other>` over both terms and sinks.
    pub fn inner(&self, other: &OccupationState) -> C64 {
        let terms: C64 = self
            .terms
            .iter()
            .filter_map(|(v, a)| other.terms.get(v).map(|b| a.conj() * b))
            .sum();
        let sinks: C64 = self
            .sinks
            .iter()
            .filter_map(|(l, a)| other.sinks.get(l).map(|b| a.conj() * b))
            .sum();
        terms + sinks
    }

    /// Scales every amplitude so the squared norm is one.
    pub fn normalized(mut self) -> FockResult<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(FockError::EmptyState);
        }
        for a in self.terms.values_mut().chain(self.sinks.values_mut()) {
            *a /= norm;
        }
        Ok(self)
    }

    /// Adds `count` particles to `mode` in every basis term, leaving the
    /// amplitudes unchanged. Sink contexts gain the same particles so that every
    /// component keeps the state's particle number.
    pub fn inject(&self, mode: usize, count: u32) -> FockResult<Self> {
        if mode >= self.mode_count {
            return Err(FockError::ModeOutOfRange { mode, mode_count: self.mode_count });
        }
        if count == 0 {
            return Ok(self.clone());
        }
        let particles = self.particles + count;
        check_particles(particles)?;
        let terms = self
            .terms
            .iter()
            .map(|(v, &a)| {
                let mut v = v.clone();
                v.0[mode] += count as u8;
                (v, a)
            })
            .collect();
        let sinks = self
            .sinks
            .iter()
            .map(|(l, &a)| {
                let mut l = l.clone();
                l.context.0[mode] += count as u8;
                (l, a)
            })
            .collect();
        Ok(Self { mode_count: self.mode_count, particles, terms, sinks })
    }

    pub(crate) fn prune(&mut self) {
        self.terms.retain(|_, a| a.norm() >= PRUNE_THRESHOLD);
        self.sinks.retain(|_, a| a.norm() >= PRUNE_THRESHOLD);
    }
}

impl fmt::Display for OccupationState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, a) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i){}", a.re, a.im, v)?;
        }
        for (l, a) in &self.sinks {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)|sink e{} t{}>", a.re, a.im, l.element_id, l.bin_index)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub(crate) fn check_particles(n: u32) -> FockResult<()> {
    if n > MAX_PARTICLES {
        return Err(FockError::ParticleCap { requested: n, cap: MAX_PARTICLES });
    }
    Ok(())
}

pub(crate) fn check_mode_count(m: usize) -> FockResult<()> {
    if m == 0 {
        return Err(FockError::NoModes);
    }
    if m > MAX_MODES {
        return Err(FockError::ModeCap { requested: m, cap: MAX_MODES });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inject_single() {
        let s = OccupationState::vacuum(2).unwrap().inject(0, 1).unwrap();
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.amplitude(&[1, 0]), C64::new(1.0, 0.0));
        assert_eq!(s.particle_number(), 1);
    }

    #[test]
    fn inject_two_modes_gives_hom_input() {
        let s = OccupationState::vacuum(2).unwrap().inject(0, 1).unwrap().inject(1, 1).unwrap();
        assert_eq!(s, OccupationState::basis(vec![1, 1]).unwrap());
    }

    #[test]
    fn inject_zero_is_identity() {
        let s = OccupationState::from_terms(
            2,
            [(vec![2, 0], C64::new(0.6, 0.0)), (vec![0, 2], C64::new(0.0, 0.8))],
        )
        .unwrap();
        assert_eq!(s.inject(1, 0).unwrap(), s);
    }

    #[test]
    fn inject_out_of_range() {
        let s = OccupationState::vacuum(2).unwrap();
        assert_eq!(s.inject(2, 1), Err(FockError::ModeOutOfRange { mode: 2, mode_count: 2 }));
    }

    #[test]
    fn particle_cap() {
        let s = OccupationState::vacuum(2).unwrap().inject(0, 20).unwrap();
        assert!(s.inject(1, 1).unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn mode_cap() {
        assert!(OccupationState::vacuum(MAX_MODES + 1).unwrap_err().is_cap_exceeded());
        assert_eq!(OccupationState::vacuum(0), Err(FockError::NoModes));
    }

    #[test]
    fn mixed_particle_numbers_rejected() {
        let r = OccupationState::from_terms(2, [(vec![1, 0], C64::new(1.0, 0.0)), (vec![1, 1], C64::new(1.0, 0.0))]);
        assert_eq!(r, Err(FockError::MixedParticleNumber(1, 2)));
    }

    #[test]
    fn pruning_drops_tiny_amplitudes() {
        let s = OccupationState::from_terms(
            2,
            [(vec![1, 0], C64::new(1.0, 0.0)), (vec![0, 1], C64::new(1e-15, 0.0))],
        )
        .unwrap();
        assert_eq!(s.terms().len(), 1);
    }

    #[test]
    fn lexicographic_order() {
        let s = OccupationState::from_terms(
            2,
            [(vec![2, 0], C64::new(0.5, 0.0)), (vec![1, 1], C64::new(0.5, 0.0)), (vec![0, 2], C64::new(0.5, 0.0))],
        )
        .unwrap();
        let keys: Vec<_> = s.terms().keys().map(|k| k.counts().to_vec()).collect();
        assert_eq!(keys, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }
}
