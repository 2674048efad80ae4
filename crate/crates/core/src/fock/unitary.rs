use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::permanent::glynn;
use super::state::OccupationState;
use super::{FockError, FockResult, UNITARITY_TOLERANCE};

/// A linear transform on creation operators: input mode `j` maps to
/// `sum_i U[(i, j)] * b_i^dag`, i.e. column `j` is the image of mode `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeUnitary {
    entries: DMatrix<C64>,
}

impl ModeUnitary {
    pub fn new(entries: DMatrix<C64>) -> FockResult<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols || rows == 0 {
            return Err(FockError::NotSquare { rows, cols });
        }
        let deviation = unitarity_deviation(&entries);
        if deviation >= UNITARITY_TOLERANCE {
            return Err(FockError::NotUnitary { deviation });
        }
        Ok(Self { entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self { entries: DMatrix::identity(dim, dim) }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    /// `self` followed by `next`, i.e. the matrix product `next * self`.
    pub fn then(&self, next: &ModeUnitary) -> FockResult<ModeUnitary> {
        if self.dim() != next.dim() {
            return Err(FockError::DimensionMismatch { expected: self.dim(), got: next.dim() });
        }
        Ok(ModeUnitary { entries: &next.entries * &self.entries })
    }

    /// Max-entry deviation of `U^dag U` from the identity.
    pub fn deviation(&self) -> f64 {
        unitarity_deviation(&self.entries)
    }
}

fn unitarity_deviation(m: &DMatrix<C64>) -> f64 {
    let prod = m.adjoint() * m;
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[(i, j)] - C64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Evolves `state` under `u` acting on the listed `modes` (in order: `modes[k]`
/// is the `k`-th row/column of `u`). Other modes and sinks are untouched.
///
/// The amplitude from input pattern `k` to output pattern `m` on the subset is
/// `perm(U[m, k]) / sqrt(prod m_i! prod k_j!)`, with rows repeated per `m` and
/// columns per `k`.
pub fn apply_unitary(state: &OccupationState, u: &ModeUnitary, modes: &[usize]) -> FockResult<OccupationState> {
    check_modes(state.mode_count(), modes)?;
    if modes.len() != u.dim() {
        return Err(FockError::DimensionMismatch { expected: u.dim(), got: modes.len() });
    }

    let mut cache: HashMap<Vec<u8>, Vec<(Vec<u8>, C64)>> = HashMap::new();
    let mut out: BTreeMap<_, C64> = BTreeMap::new();
    let (terms, sinks) = state.clone().into_parts();

    for (occ, amp) in terms {
        let sub: Vec<u8> = modes.iter().map(|&m| occ[m]).collect();
        if sub.iter().all(|&c| c == 0) {
            *out.entry(occ).or_default() += amp;
            continue;
        }
        let images = cache.entry(sub).or_insert_with_key(|sub| transition_row(u.entries(), sub));
        for (pattern, t) in images.iter() {
            let mut next = occ.clone();
            let counts = next.counts_mut();
            for (&mode, &c) in modes.iter().zip(pattern) {
                counts[mode] = c;
            }
            *out.entry(next).or_default() += amp * t;
        }
    }

    Ok(OccupationState::from_parts(state.mode_count(), state.particle_number(), out, sinks))
}

pub(crate) fn check_modes(mode_count: usize, modes: &[usize]) -> FockResult<()> {
    for (k, &m) in modes.iter().enumerate() {
        if m >= mode_count {
            return Err(FockError::ModeOutOfRange { mode: m, mode_count });
        }
        if modes[..k].contains(&m) {
            return Err(FockError::DuplicateMode(m));
        }
    }
    Ok(())
}

/// All output patterns reachable from input pattern `input` with their
/// transition amplitudes.
fn transition_row(u: &DMatrix<C64>, input: &[u8]) -> Vec<(Vec<u8>, C64)> {
    let total: u32 = input.iter().map(|&c| c as u32).sum();
    let cols = repeat_indices(input);
    let in_norm: f64 = input.iter().map(|&c| factorial(c)).product();

    compositions(total, input.len())
        .into_iter()
        .map(|out| {
            let rows = repeat_indices(&out);
            let sub = DMatrix::from_fn(rows.len(), cols.len(), |r, c| u[(rows[r], cols[c])]);
            let out_norm: f64 = out.iter().map(|&c| factorial(c)).product();
            let amp = glynn(&sub) / (in_norm * out_norm).sqrt();
            (out, amp)
        })
        .collect()
}

fn repeat_indices(pattern: &[u8]) -> Vec<usize> {
    pattern
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat(i).take(c as usize))
        .collect()
}

fn factorial(n: u8) -> f64 {
    (1..=n as u32).map(f64::from).product()
}

/// Every way to distribute `total` identical particles over `parts` modes.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u8>> {
    fn rec(left: u32, idx: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if idx + 1 == cur.len() {
            cur[idx] = left as u8;
            out.push(cur.clone());
            return;
        }
        for c in (0..=left).rev() {
            cur[idx] = c as u8;
            rec(left - c, idx + 1, cur, out);
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        return out;
    }
    rec(total, 0, &mut vec![0; parts], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn balanced() -> ModeUnitary {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        ModeUnitary::new(DMatrix::from_row_slice(2, 2, &[h, h, h, -h])).unwrap()
    }

    fn close(a: C64, b: f64) -> bool {
        (a - C64::new(b, 0.0)).norm() < 1e-12
    }

    #[test]
    fn single_particle_splits() {
        let s = OccupationState::basis(vec![1, 0]).unwrap();
        let out = apply_unitary(&s, &balanced(), &[0, 1]).unwrap();
        assert_eq!(out.terms().len(), 2);
        assert!(close(out.amplitude(&[1, 0]), FRAC_1_SQRT_2));
        assert!(close(out.amplitude(&[0, 1]), FRAC_1_SQRT_2));
    }

    #[test]
    fn two_particles_bunch() {
        let s = OccupationState::basis(vec![1, 1]).unwrap();
        let out = apply_unitary(&s, &balanced(), &[0, 1]).unwrap();
        assert_eq!(out.terms().len(), 2, "coincidence term must be pruned: {out}");
        assert!(close(out.amplitude(&[2, 0]), FRAC_1_SQRT_2));
        assert!(close(out.amplitude(&[0, 2]), -FRAC_1_SQRT_2));
    }

    #[test]
    fn doubly_occupied_input() {
        let s = OccupationState::basis(vec![2, 0]).unwrap();
        let out = apply_unitary(&s, &balanced(), &[0, 1]).unwrap();
        assert!(close(out.amplitude(&[2, 0]), 0.5));
        assert!(close(out.amplitude(&[1, 1]), FRAC_1_SQRT_2));
        assert!(close(out.amplitude(&[0, 2]), 0.5));
    }

    #[test]
    fn subset_ordering_matters() {
        // the same unitary on reversed modes acts as the transposed embedding
        let s = OccupationState::basis(vec![0, 1, 0]).unwrap();
        let out = apply_unitary(&s, &balanced(), &[2, 1]).unwrap();
        assert!(close(out.amplitude(&[0, 0, 1]), FRAC_1_SQRT_2));
        assert!(close(out.amplitude(&[0, 1, 0]), -FRAC_1_SQRT_2));
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = OccupationState::basis(vec![1, 0, 0]).unwrap();
        let u = balanced();
        assert_eq!(apply_unitary(&s, &u, &[0, 3]).unwrap_err(), FockError::ModeOutOfRange { mode: 3, mode_count: 3 });
        assert_eq!(apply_unitary(&s, &u, &[1, 1]).unwrap_err(), FockError::DuplicateMode(1));
        assert_eq!(
            apply_unitary(&s, &u, &[0, 1, 2]).unwrap_err(),
            FockError::DimensionMismatch { expected: 2, got: 3 }
        );
    }

    #[test]
    fn non_unitary_rejected() {
        let m = DMatrix::from_element(2, 2, C64::new(1.0, 0.0));
        assert!(matches!(ModeUnitary::new(m), Err(FockError::NotUnitary { .. })));
    }

    #[test]
    fn compositions_count() {
        // stars and bars: C(n + k - 1, k - 1)
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
    }
}
