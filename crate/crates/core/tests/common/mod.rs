//! Reference implementations used as test oracles. None of these go through
//! the permanent kernel or the library's state machinery.
#![allow(dead_code)]

use std::collections::BTreeMap;

use bosonsim::circuit::{CircuitIR, Element};
use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::Rng;

/// Polynomial in creation operators: exponent vector -> coefficient.
pub type Poly = BTreeMap<Vec<u8>, C64>;

pub fn factorial(n: u32) -> f64 {
    (2..=n).map(f64::from).product()
}

/// Multiplies `poly` by the linear form `sum_i coeffs[i] b_i^dag`.
pub fn mul_linear(poly: &Poly, coeffs: &[C64]) -> Poly {
    let mut out = Poly::new();
    for (mono, c) in poly {
        for (i, k) in coeffs.iter().enumerate() {
            if k.norm() == 0.0 {
                continue;
            }
            let mut m = mono.clone();
            m[i] += 1;
            *out.entry(m).or_default() += c * k;
        }
    }
    out
}

/// Normalized Fock amplitudes of `poly |0>`: coefficient times sqrt(prod m_i!).
pub fn poly_to_amplitudes(poly: &Poly) -> BTreeMap<Vec<u8>, C64> {
    poly.iter()
        .map(|(m, c)| {
            let norm: f64 = m.iter().map(|&k| factorial(k as u32)).product();
            (m.clone(), c * norm.sqrt())
        })
        .filter(|(_, a)| a.norm() > 1e-14)
        .collect()
}

/// Symbolic expansion of `prod_j (sum_i U_ij b_i^dag)^{k_j} / sqrt(prod k_j!) |0>`.
pub fn expand_fock(u: &DMatrix<C64>, input: &[u8]) -> BTreeMap<Vec<u8>, C64> {
    let d = u.nrows();
    let mut poly = Poly::new();
    let norm: f64 = input.iter().map(|&k| factorial(k as u32)).product();
    poly.insert(vec![0; d], C64::new(1.0 / norm.sqrt(), 0.0));
    for (j, &k) in input.iter().enumerate() {
        let col: Vec<C64> = (0..d).map(|i| u[(i, j)]).collect();
        for _ in 0..k {
            poly = mul_linear(&poly, &col);
        }
    }
    poly_to_amplitudes(&poly)
}

/// Permanent straight from the definition: sum over all permutations.
pub fn naive_permanent(m: &DMatrix<C64>) -> C64 {
    let k = m.nrows();
    if k == 0 {
        return C64::new(1.0, 0.0);
    }
    (0..k)
        .permutations(k)
        .map(|p| p.iter().enumerate().map(|(i, &j)| m[(i, j)]).product::<C64>())
        .sum()
}

pub fn random_complex_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Unitary from the Q factor of a random complex matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, d: usize) -> DMatrix<C64> {
    random_complex_matrix(rng, d, d).qr().q()
}

pub fn random_state_amplitudes<R: Rng>(rng: &mut R, k: usize) -> Vec<C64> {
    let v: Vec<C64> = (0..k).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let n: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|c| c / n).collect()
}

/// Fine-mode amplitudes of a binned source, by enumerating every assignment of
/// every source particle to a bin. Fine mode index is `logical * n + bin`.
pub fn enumerate_binned_sources(sources: &[(usize, u32)], logical_modes: usize, n: usize) -> BTreeMap<Vec<u8>, C64> {
    let particles: Vec<usize> = sources.iter().flat_map(|&(m, c)| std::iter::repeat(m).take(c as usize)).collect();
    let total = particles.len() as u32;
    let src_norm: f64 = sources.iter().map(|&(_, c)| factorial(c)).product();
    let weight = 1.0 / ((n as f64).powi(total as i32) * src_norm).sqrt();
    let mut poly = Poly::new();
    for bins in (0..particles.len()).map(|_| 0..n).multi_cartesian_product() {
        let mut mono = vec![0u8; logical_modes * n];
        for (&m, &b) in particles.iter().zip(&bins) {
            mono[m * n + b] += 1;
        }
        *poly.entry(mono).or_default() += C64::new(weight, 0.0);
    }
    if particles.is_empty() {
        poly.insert(vec![0u8; logical_modes * n], C64::new(1.0, 0.0));
    }
    poly_to_amplitudes(&poly)
}

/// Two-particle HOM with `n` bins by explicit bin-pair bookkeeping.
///
/// Returns `(ideal, surviving)` fine-mode amplitude maps: `ideal` evolves all
/// `n^2` bin pairs through the balanced splitter, `surviving` only the pairs in
/// different bins (the coincident ones leave the mode space).
pub fn hom_bin_pair_oracle(n: usize) -> (BTreeMap<Vec<u8>, C64>, BTreeMap<Vec<u8>, C64>) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut ideal = Poly::new();
    let mut surviving = Poly::new();
    for i in 0..n {
        for j in 0..n {
            // a_{0,i}^dag -> (b_{0,i} + b_{1,i})/sqrt2, a_{1,j}^dag -> (b_{0,j} - b_{1,j})/sqrt2
            let mut first = vec![C64::default(); 2 * n];
            first[i] = C64::new(h, 0.0);
            first[n + i] = C64::new(h, 0.0);
            let mut second = vec![C64::default(); 2 * n];
            second[j] = C64::new(h, 0.0);
            second[n + j] = C64::new(-h, 0.0);
            let mut p = Poly::new();
            p.insert(vec![0; 2 * n], C64::new(1.0 / n as f64, 0.0));
            let p = mul_linear(&mul_linear(&p, &first), &second);
            for (m, c) in p {
                *ideal.entry(m.clone()).or_default() += c;
                if i != j {
                    *surviving.entry(m).or_default() += c;
                }
            }
        }
    }
    (poly_to_amplitudes(&ideal), poly_to_amplitudes(&surviving))
}

/// Random valid circuit with a couple of injections up front.
pub fn random_circuit<R: Rng>(rng: &mut R, max_modes: usize, max_particles: u32, max_elements: usize) -> CircuitIR {
    let modes = rng.gen_range(2..=max_modes);
    let mut ir = CircuitIR::new("", modes);
    let mut left = rng.gen_range(1..=max_particles);
    while left > 0 {
        let c = rng.gen_range(1..=left);
        ir = ir.inject(rng.gen_range(0..modes), c);
        left -= c;
    }
    for _ in 0..rng.gen_range(1..=max_elements) {
        if rng.gen_bool(0.7) {
            let i = rng.gen_range(0..modes);
            let mut j = rng.gen_range(0..modes - 1);
            if j >= i {
                j += 1;
            }
            ir = ir.bs(i, j, rng.gen_range(-3.2..3.2), rng.gen_range(-3.2..3.2));
        } else {
            ir = ir.ps(rng.gen_range(0..modes), rng.gen_range(-3.2..3.2));
        }
    }
    ir
}

pub fn angle_sample<R: Rng>(rng: &mut R) -> f64 {
    match rng.gen_range(0..4) {
        0 => {
            let q = rng.gen_range(1..=12) as f64;
            let p = rng.gen_range(-24..=24) as f64;
            p * std::f64::consts::PI / q
        }
        1 => (rng.gen_range(-1000..1000) as f64) / 100.0,
        2 => 0.0,
        _ => rng.gen_range(-10.0..10.0),
    }
}

/// Arbitrary syntactically valid IR, including postselections.
pub fn random_ir<R: Rng>(rng: &mut R) -> CircuitIR {
    let modes = rng.gen_range(2..=8);
    let name = if rng.gen_bool(0.5) { format!("c{}", rng.gen_range(0..1000)) } else { String::new() };
    let mut ir = CircuitIR::new(name, modes);
    for _ in 0..rng.gen_range(0..12) {
        let e = match rng.gen_range(0..4) {
            0 => Element::Inject { mode: rng.gen_range(0..modes), count: rng.gen_range(0..4) },
            1 => {
                let i = rng.gen_range(0..modes);
                let j = (i + rng.gen_range(1..modes)) % modes;
                Element::Beamsplitter { i, j, theta: angle_sample(rng), phi: angle_sample(rng) }
            }
            2 => Element::PhaseShifter { i: rng.gen_range(0..modes), phi: angle_sample(rng) },
            _ => {
                let mut ms: Vec<usize> = (0..modes).collect();
                let k = rng.gen_range(1..=modes.min(3));
                let mut constraints = Vec::new();
                for _ in 0..k {
                    let m = ms.remove(rng.gen_range(0..ms.len()));
                    constraints.push((m, rng.gen_range(0..3)));
                }
                Element::Postselect { constraints }
            }
        };
        ir.elements.push(e);
    }
    ir
}
