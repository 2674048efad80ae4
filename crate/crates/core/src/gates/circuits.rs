use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64 as C64;

use super::ns_params::NS_ANGLES;
use super::ns_solver::NS_PAIRS;
use crate::circuit::{run_ideal_from, CircuitIR};
use crate::error::Result;
use crate::fock::OccupationState;

/// One particle into each port of a balanced beamsplitter.
pub fn hom_circuit() -> CircuitIR {
    CircuitIR::new("hom", 2).inject(0, 1).inject(1, 1).bs(0, 1, FRAC_PI_4, 0.0)
}

/// Nonlinear-sign gate on mode 0 with ancilla modes 1 and 2.
///
/// Only the ancilla particle is injected; the signal state is supplied by the
/// caller (or by prepending `inject 0 k`). On detecting one particle in mode 1
/// and none in mode 2, signal amplitudes `(a0, a1, a2)` over 0, 1, 2
/// particles become `(a0, a1, -a2)` with probability 1/4.
pub fn ns_gate_circuit() -> CircuitIR {
    let mut ir = CircuitIR::new("ns", 3).inject(1, 1);
    for (&(i, j), &theta) in NS_PAIRS.iter().zip(&NS_ANGLES) {
        ir = ir.bs(i, j, theta, 0.0);
    }
    ir.postselect(&[(1, 1), (2, 0)])
}

/// Post-selected controlled-Z on two dual-rail qubits.
///
/// Qubit A lives in modes 0 (|0>) and 1 (|1>), qubit B in modes 2 and 3. The
/// |1> rails interfere on a balanced beamsplitter, each output passes an NS
/// gate (ancillas 4, 5 and 6, 7) and the rails are recombined. Success
/// probability is 1/16.
pub fn cz_gate_circuit() -> CircuitIR {
    let mut ir = CircuitIR::new("cz", 8).inject(4, 1).inject(6, 1).bs(1, 3, FRAC_PI_4, 0.0);
    for (signal, anc) in [(1, [4, 5]), (3, [6, 7])] {
        // NS layout relabelled: 0 -> signal, 1 -> anc[0], 2 -> anc[1]
        let relabel = |m: usize| if m == 0 { signal } else { anc[m - 1] };
        for (&(i, j), &theta) in NS_PAIRS.iter().zip(&NS_ANGLES) {
            ir = ir.bs(relabel(i), relabel(j), theta, 0.0);
        }
    }
    ir.bs(1, 3, FRAC_PI_4, 0.0).postselect(&[(4, 1), (5, 0), (6, 1), (7, 0)])
}

/// Conditional amplitudes of the NS gate for signal occupations 0, 1 and 2,
/// obtained by full Fock simulation of [`ns_gate_circuit`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NsTransfer {
    pub amplitudes: [C64; 3],
}

/// Simulates the NS circuit once per signal photon number.
pub fn ns_transfer() -> Result<NsTransfer> {
    let ir = ns_gate_circuit();
    let mut amplitudes = [C64::default(); 3];
    for (k, amp) in amplitudes.iter_mut().enumerate() {
        let input = OccupationState::basis(vec![k as u8, 0, 0])?;
        let out = run_ideal_from(&ir, input)?;
        if let Some(state) = out.state {
            *amp = state.amplitude(&[k as u8, 1, 0]) * out.success_probability.sqrt();
        }
    }
    Ok(NsTransfer { amplitudes })
}

impl NsTransfer {
    /// Applies the post-selected map to signal amplitudes over |0>, |1>, |2>.
    /// Returns the success probability and the renormalized output, or `None`
    /// if the output vanishes.
    pub fn apply(&self, input: [C64; 3]) -> (f64, Option<[C64; 3]>) {
        let raw: Vec<C64> = input.iter().zip(&self.amplitudes).map(|(x, a)| x * a).collect();
        let prob: f64 = raw.iter().map(|c| c.norm_sqr()).sum();
        if prob == 0.0 {
            return (0.0, None);
        }
        let norm = prob.sqrt();
        (prob, Some([raw[0] / norm, raw[1] / norm, raw[2] / norm]))
    }
}
