use std::fmt::Write;

use super::angle::format_angle;
use super::ir::{CircuitIR, Element};

/// Canonical text of a circuit, one LF-terminated line per statement.
pub fn format(ir: &CircuitIR) -> String {
    let mut out = String::new();
    if !ir.name.is_empty() {
        let _ = writeln!(out, "# name: {}", ir.name);
    }
    let _ = writeln!(out, "modes {}", ir.mode_count);
    for e in &ir.elements {
        let _ = match e {
            Element::Inject { mode, count } => writeln!(out, "inject {mode} {count}"),
            Element::Beamsplitter { i, j, theta, phi } => {
                writeln!(out, "bs {i} {j} {} {}", format_angle(*theta), format_angle(*phi))
            }
            Element::PhaseShifter { i, phi } => writeln!(out, "ps {i} {}", format_angle(*phi)),
            Element::Postselect { constraints } => {
                let body: Vec<String> = constraints.iter().map(|(m, c)| format!("{m}={c}")).collect();
                writeln!(out, "postselect {}", body.join(","))
            }
        };
    }
    out
}
