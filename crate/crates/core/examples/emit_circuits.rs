//! Writes the canonical text of the built-in circuits to a directory.

use std::{fs, path::PathBuf};

use bosonsim::circuit::format;
use bosonsim::gates::{cz_gate_circuit, hom_circuit, ns_gate_circuit};

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    fs::create_dir_all(&dir)?;
    for ir in [hom_circuit(), ns_gate_circuit(), cz_gate_circuit()] {
        let path = dir.join(format!("{}.circ", ir.name));
        fs::write(&path, format(&ir))?;
        println!("{}", path.display());
    }
    Ok(())
}
