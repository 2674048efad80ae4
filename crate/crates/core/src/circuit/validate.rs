use super::ir::{CircuitIR, Element};
use super::Diagnostic;
use crate::fock::MAX_MODES;

/// Checks every IR invariant. An empty list means the circuit is valid.
pub fn validate(ir: &CircuitIR) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    if ir.mode_count == 0 {
        diags.push(Diagnostic { line: None, element: None, message: "mode count must be positive".into() });
    } else if ir.mode_count > MAX_MODES {
        diags.push(Diagnostic {
            line: None,
            element: None,
            message: format!("mode count {} exceeds the limit of {MAX_MODES}", ir.mode_count),
        });
    }

    for (idx, element) in ir.elements.iter().enumerate() {
        let mut report = |message: String| diags.push(Diagnostic { line: None, element: Some(idx), message });

        let modes = element.modes();
        for &m in &modes {
            if m >= ir.mode_count {
                report(format!("mode {m} out of range"));
            }
        }
        for (k, m) in modes.iter().enumerate() {
            if modes[..k].contains(m) {
                report(format!("duplicate mode index {m}"));
            }
        }
        match element {
            Element::Beamsplitter { theta, phi, .. } => {
                if !theta.is_finite() || !phi.is_finite() {
                    report("angle is not finite".into());
                }
            }
            Element::PhaseShifter { phi, .. } => {
                if !phi.is_finite() {
                    report("angle is not finite".into());
                }
            }
            Element::Postselect { constraints } if constraints.is_empty() => {
                report("postselect without constraints".into());
            }
            _ => {}
        }
    }
    diags
}
