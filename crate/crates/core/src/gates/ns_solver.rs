//! Newton solver for the nonlinear-sign gate beamsplitter angles.
//!
//! Layout: signal in mode 0, one ancilla particle in mode 1, mode 2 empty.
//! Beamsplitters (1,2), (0,1), (1,2) with zero phase; success is detecting one
//! particle in mode 1 and none in mode 2. With `U` the combined 3x3 transform,
//! the conditional amplitudes for signal occupations 0, 1, 2 are
//!
//! ```text
//! a0 = U11
//! a1 = U00 U11 + U01 U10
//! a2 = U00 (U00 U11 + 2 U01 U10)
//! ```
//!
//! and the gate needs `a0 = a1 = -a2` with `|a0|^2 = 1/4`.
//!
//! `cargo run -p bosonsim --example solve_ns` prints the constants frozen in
//! [`super::NS_ANGLES`].

use nalgebra::{Matrix3, Vector3};

/// Mode pairs of the three beamsplitters, in application order.
pub const NS_PAIRS: [(usize, usize); 3] = [(1, 2), (0, 1), (1, 2)];

/// Target success probability.
pub const NS_SUCCESS: f64 = 0.25;

fn real_bs(theta: f64, i: usize, j: usize) -> Matrix3<f64> {
    let (s, c) = theta.sin_cos();
    let mut m = Matrix3::identity();
    m[(i, i)] = c;
    m[(i, j)] = s;
    m[(j, i)] = s;
    m[(j, j)] = -c;
    m
}

/// Combined 3x3 transform for the given angles.
pub fn ns_matrix(angles: [f64; 3]) -> Matrix3<f64> {
    NS_PAIRS
        .iter()
        .zip(angles)
        .fold(Matrix3::identity(), |acc, (&(i, j), t)| real_bs(t, i, j) * acc)
}

/// Closed-form conditional amplitudes `(a0, a1, a2)`.
pub fn conditional_amplitudes(angles: [f64; 3]) -> [f64; 3] {
    let u = ns_matrix(angles);
    let a0 = u[(1, 1)];
    let a1 = u[(0, 0)] * u[(1, 1)] + u[(0, 1)] * u[(1, 0)];
    let a2 = u[(0, 0)] * (u[(0, 0)] * u[(1, 1)] + 2.0 * u[(0, 1)] * u[(1, 0)]);
    [a0, a1, a2]
}

/// Constraint residuals; all zero at a solution.
pub fn residual(angles: [f64; 3]) -> [f64; 3] {
    let [a0, a1, a2] = conditional_amplitudes(angles);
    [a1 - a0, a2 + a0, a0 * a0 - NS_SUCCESS]
}

pub fn max_residual(angles: [f64; 3]) -> f64 {
    residual(angles).iter().fold(0.0_f64, |m, r| m.max(r.abs()))
}

/// Newton iteration with a central-difference Jacobian from a fixed grid of
/// starting points. Returns the first root with residual below `tol`, with
/// angles wrapped to `(-pi, pi]`.
pub fn solve(tol: f64) -> Option<[f64; 3]> {
    const GRID: usize = 7;
    let start = |k: usize| -std::f64::consts::PI + (k as f64 + 0.5) * std::f64::consts::TAU / GRID as f64;
    for a in 0..GRID {
        for b in 0..GRID {
            for c in 0..GRID {
                if let Some(x) = newton([start(a), start(b), start(c)], tol) {
                    return Some(x.map(wrap));
                }
            }
        }
    }
    None
}

fn newton(mut x: [f64; 3], tol: f64) -> Option<[f64; 3]> {
    const H: f64 = 1e-6;
    for _ in 0..100 {
        let r = Vector3::from(residual(x));
        if r.amax() < tol {
            return Some(x);
        }
        let mut jac = Matrix3::zeros();
        for k in 0..3 {
            let mut hi = x;
            let mut lo = x;
            hi[k] += H;
            lo[k] -= H;
            let d = (Vector3::from(residual(hi)) - Vector3::from(residual(lo))) / (2.0 * H);
            jac.set_column(k, &d);
        }
        let step = jac.lu().solve(&r)?;
        for k in 0..3 {
            x[k] -= step[k];
        }
        if !x.iter().all(|v| v.is_finite()) {
            return None;
        }
    }
    (max_residual(x) < tol).then_some(x)
}

fn wrap(t: f64) -> f64 {
    let w = t.rem_euclid(std::f64::consts::TAU);
    if w > std::f64::consts::PI {
        w - std::f64::consts::TAU
    } else {
        w
    }
}
