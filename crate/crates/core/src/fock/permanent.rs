use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::{FockError, FockResult};

/// Matrix permanent by Glynn's formula, visiting the sign vectors in Gray-code
/// order so that each step updates the row sums in O(k).
///
/// The empty matrix has permanent 1.
pub fn permanent(m: &DMatrix<C64>) -> FockResult<C64> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(FockError::NotSquare { rows, cols });
    }
    Ok(glynn(m))
}

pub(crate) fn glynn(m: &DMatrix<C64>) -> C64 {
    let k = m.nrows();
    match k {
        0 => return C64::new(1.0, 0.0),
        1 => return m[(0, 0)],
        2 => return m[(0, 0)] * m[(1, 1)] + m[(0, 1)] * m[(1, 0)],
        _ => {}
    }

    // column sums with every delta = +1
    let mut sums: Vec<C64> = (0..k).map(|j| (0..k).map(|i| m[(i, j)]).sum()).collect();
    let mut delta = vec![1.0_f64; k];
    let mut sign = 1.0;
    let mut total: C64 = sums.iter().product();

    let steps: u64 = 1 << (k - 1);
    for g in 1..steps {
        // row to flip: position of the lowest set bit of g, offset past row 0
        let row = g.trailing_zeros() as usize + 1;
        delta[row] = -delta[row];
        sign = -sign;
        let scale = 2.0 * delta[row];
        for (j, s) in sums.iter_mut().enumerate() {
            *s += m[(row, j)] * scale;
        }
        let prod: C64 = sums.iter().product();
        total += prod * sign;
    }
    total / steps as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn real(k: usize, data: &[f64]) -> DMatrix<C64> {
        DMatrix::from_row_iterator(k, k, data.iter().map(|&x| C64::new(x, 0.0)))
    }

    #[test]
    fn identity_is_one() {
        let m = DMatrix::<C64>::identity(3, 3);
        assert!((permanent(&m).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn all_ones_2x2() {
        let p = permanent(&real(2, &[1.0, 1.0, 1.0, 1.0])).unwrap();
        assert!((p - C64::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn balanced_beamsplitter_vanishes() {
        let h = FRAC_1_SQRT_2;
        let p = permanent(&real(2, &[h, h, h, -h])).unwrap();
        assert!(p.norm() < 1e-15);
    }

    #[test]
    fn empty_matrix() {
        let m = DMatrix::<C64>::zeros(0, 0);
        assert_eq!(permanent(&m).unwrap(), C64::new(1.0, 0.0));
    }

    #[test]
    fn non_square_rejected() {
        let m = DMatrix::<C64>::zeros(2, 3);
        assert_eq!(permanent(&m), Err(FockError::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn all_ones_kxk_is_factorial() {
        for k in 3..=8usize {
            let m = DMatrix::from_element(k, k, C64::new(1.0, 0.0));
            let fact: f64 = (1..=k).map(|x| x as f64).product();
            assert!((glynn(&m).re - fact).abs() < 1e-9 * fact, "k = {k}");
        }
    }
}
