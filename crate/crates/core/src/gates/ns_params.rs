// Generated by `cargo run -p bosonsim --example solve_ns`.
// Max constraint residual: 1.6653345369377348e-15

/// Beamsplitter angles (radians) for the pairs in [`super::ns_solver::NS_PAIRS`].
pub const NS_ANGLES: [f64; 3] = [-2.7488935966908534, -1.9978749131873723, 0.3926991064985085];
