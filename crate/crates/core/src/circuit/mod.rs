//! Line-oriented interferometer description language.
//!
//! ```text
//! # name: hom
//! modes 2
//! inject 0 1
//! inject 1 1
//! bs 0 1 pi/4 0
//! ```
//!
//! Grammar, one statement per line (`#` starts a comment):
//!
//! ```text
//! line  := "modes" INT | "inject" INT INT | "bs" INT INT ANGLE ANGLE
//!        | "ps" INT ANGLE | "postselect" INT "=" INT {"," INT "=" INT}
//! ANGLE := DECIMAL | [DECIMAL] "pi" ["/" INT]
//! ```
//!
//! A leading `# name: <text>` comment, before `modes`, sets the circuit name.

mod angle;
mod format;
mod ir;
mod lower;
mod parse;
mod validate;

pub use angle::{format_angle, parse_angle};
pub use format::format;
pub use ir::{CircuitIR, Element};
pub use lower::{lower, run_ideal, run_ideal_from, IdealOutcome, Plan, Step};
pub use parse::{parse, parse_unchecked};
pub use validate::validate;

use std::fmt;

use thiserror::Error;

/// A located message. Syntax diagnostics always carry a line; validation
/// diagnostics always carry an element index, and a line when the IR came from
/// text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: Option<usize>,
    pub element: Option<usize>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.element) {
            (Some(l), Some(e)) => write!(f, "line {l} (element {e}): {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            (None, Some(e)) => write!(f, "element {e}: {}", self.message),
            (None, None) => write!(f, "{}", self.message),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("syntax error{}", render(.0))]
    Syntax(Vec<Diagnostic>),
    #[error("invalid circuit{}", render(.0))]
    Invalid(Vec<Diagnostic>),
}

impl CircuitError {
    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            CircuitError::Syntax(d) | CircuitError::Invalid(d) => d,
        }
    }
}

fn render(diags: &[Diagnostic]) -> String {
    diags.iter().map(|d| format!("\n  {d}")).collect()
}
