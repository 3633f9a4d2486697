use num_complex::Complex64;

use super::CMatrix;
use crate::{Error, Result};

/// Default largest matrix order accepted by [`permanent`].
pub const DEFAULT_PERMANENT_CAP: usize = 25;

/// From this order on the alternating Ryser sum is accumulated with
/// compensation.
const COMPENSATE_FROM: usize = 16;

/// Exact permanent of a square complex matrix, order capped at
/// [`DEFAULT_PERMANENT_CAP`].
pub fn permanent(a: &CMatrix) -> Result<Complex64> {
    permanent_with_cap(a, DEFAULT_PERMANENT_CAP)
}

pub fn permanent_with_cap(a: &CMatrix, cap: usize) -> Result<Complex64> {
    if a.rows() != a.cols() {
        return Err(Error::domain(format!(
            "permanent needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if a.rows() > cap {
        return Err(Error::domain(format!(
            "permanent of order {} exceeds the cap {cap}",
            a.rows()
        )));
    }
    Ok(ryser(a.rows(), a.as_slice()))
}

/// Ryser's formula over a Gray-code walk of column subsets, `O(2^k k)`.
///
/// `a` is a row-major `k × k` matrix. No bounds beyond `k < 64` are checked;
/// callers go through [`permanent`] unless they own the shape.
pub fn ryser(k: usize, a: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), k * k);
    match k {
        0 => return Complex64::new(1.0, 0.0),
        1 => return a[0],
        2 => return a[0] * a[3] + a[1] * a[2],
        _ => {}
    }
    let mut row_sums = vec![Complex64::new(0.0, 0.0); k];
    let mut included = 0u64;
    let mut size = 0usize;
    let compensate = k >= COMPENSATE_FROM;
    let (mut re, mut im) = (
        crate::numeric::NeumaierSum::new(),
        crate::numeric::NeumaierSum::new(),
    );
    let mut plain = Complex64::new(0.0, 0.0);

    for step in 1u64..(1u64 << k) {
        let col = step.trailing_zeros() as usize;
        let bit = 1u64 << col;
        included ^= bit;
        if included & bit != 0 {
            size += 1;
            for (s, row) in row_sums.iter_mut().zip(a.chunks_exact(k)) {
                *s += row[col];
            }
        } else {
            size -= 1;
            for (s, row) in row_sums.iter_mut().zip(a.chunks_exact(k)) {
                *s -= row[col];
            }
        }
        let prod = row_sums
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, s| acc * s);
        let term = if (k - size).is_multiple_of(2) { prod } else { -prod };
        if compensate {
            re.add(term.re);
            im.add(term.im);
        } else {
            plain += term;
        }
    }
    if compensate {
        Complex64::new(re.value(), im.value())
    } else {
        plain
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn closed_forms() {
        let a = CMatrix::from_rows(vec![vec![c(1.0), c(2.0)], vec![c(3.0), c(4.0)]]).unwrap();
        assert_eq!(permanent(&a).unwrap(), c(10.0));
        for k in 0..8 {
            assert!((permanent(&CMatrix::identity(k)).unwrap() - c(1.0)).norm() < 1e-12);
        }
        let ones = CMatrix::from_fn(4, 4, |_, _| c(1.0));
        assert!((permanent(&ones).unwrap() - c(24.0)).norm() < 1e-12);
        let ones = CMatrix::from_fn(3, 3, |_, _| c(1.0));
        assert!((permanent(&ones).unwrap() - c(6.0)).norm() < 1e-12);
    }

    #[test]
    fn compensated_path_on_all_ones() {
        // 16! = 20922789888000, exactly representable.
        let ones = CMatrix::from_fn(16, 16, |_, _| c(1.0));
        let p = permanent(&ones).unwrap();
        let rel = (p.re / 20_922_789_888_000.0 - 1.0).abs();
        // row-sum powers reach 16^16 and are inexact in f64
        assert!(rel < 1e-8, "relative error {rel}");
    }

    #[test]
    fn shape_errors() {
        let rect = CMatrix::zeros(2, 3);
        assert!(matches!(permanent(&rect), Err(Error::Domain(_))));
        assert!(matches!(
            permanent_with_cap(&CMatrix::identity(5), 4),
            Err(Error::Domain(_))
        ));
    }
}
