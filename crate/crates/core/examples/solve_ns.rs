//! Prints the nonlinear-sign gate angles as a Rust constants file.

use bosonsim::gates::ns_solver::{conditional_amplitudes, max_residual, solve, NS_PAIRS};

fn main() {
    let angles = solve(1e-15).or_else(|| solve(1e-14)).expect("no solution found");
    let residual = max_residual(angles);
    let amps = conditional_amplitudes(angles);
    eprintln!("pairs {NS_PAIRS:?}, amplitudes {amps:?}, residual {residual:e}");

    println!("// Generated by `cargo run -p bosonsim --example solve_ns`.");
    println!("// Max constraint residual: {residual:e}");
    println!();
    println!("/// Beamsplitter angles (radians) for the pairs in [`super::ns_solver::NS_PAIRS`].");
    println!("pub const NS_ANGLES: [f64; 3] = [{:?}, {:?}, {:?}];", angles[0], angles[1], angles[2]);
}
