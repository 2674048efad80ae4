use crate::error::{Error, Result};
use crate::fock::{ModeGrouping, MAX_MODES};

/// Mapping between logical modes and (logical mode, bin) fine modes.
///
/// Fine modes are logical-major: all bins of logical mode 0 come first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinnedLayout {
    logical_modes: usize,
    bins: usize,
}

impl BinnedLayout {
    pub fn new(logical_modes: usize, bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::ZeroBins);
        }
        let fine = logical_modes.saturating_mul(bins);
        if fine > MAX_MODES {
            return Err(crate::fock::FockError::ModeCap { requested: fine, cap: MAX_MODES }.into());
        }
        Ok(Self { logical_modes, bins })
    }

    pub fn logical_modes(&self) -> usize {
        self.logical_modes
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    pub fn fine_modes(&self) -> usize {
        self.logical_modes * self.bins
    }

    pub fn fine_index(&self, logical: usize, bin: usize) -> usize {
        debug_assert!(logical < self.logical_modes && bin < self.bins);
        logical * self.bins + bin
    }

    /// Inverse of [`fine_index`](Self::fine_index): `(logical, bin)`.
    pub fn split(&self, fine: usize) -> (usize, usize) {
        (fine / self.bins, fine % self.bins)
    }

    /// Detector view: every fine mode maps to its logical mode.
    pub fn grouping(&self) -> ModeGrouping {
        let targets = (0..self.fine_modes()).map(|f| f / self.bins).collect();
        ModeGrouping::new(targets, self.logical_modes).expect("targets are in range by construction")
    }
}
