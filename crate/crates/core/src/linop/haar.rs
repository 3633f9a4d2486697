//! Haar-distributed unitaries.
//!
//! Columns of an i.i.d. complex Gaussian matrix are orthonormalized with
//! Gram-Schmidt (two passes per column). This is the QR factorization whose
//! triangular factor has a positive real diagonal, which is exactly the
//! phase convention that makes the result Haar distributed. Because columns
//! are drawn and orthonormalized left to right, the first `s` columns of a
//! full sample equal [`haar_columns`] with the same generator state.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{CMatrix, UnitaryMatrix};

/// Haar-random `m × m` unitary.
pub fn haar_unitary<R: Rng + ?Sized>(m: usize, rng: &mut R) -> UnitaryMatrix {
    assert!(m >= 1, "haar_unitary needs at least one mode");
    UnitaryMatrix::from_trusted(haar_columns(m, m, rng))
}

/// First `s` columns of a Haar-random `m × m` unitary (an `m × s` isometry).
pub fn haar_columns<R: Rng + ?Sized>(m: usize, s: usize, rng: &mut R) -> CMatrix {
    assert!(s <= m, "cannot draw {s} orthonormal columns in dimension {m}");
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(s);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    for _ in 0..s {
        let mut v: Vec<Complex64> = (0..m)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re * scale, im * scale)
            })
            .collect();
        for _pass in 0..2 {
            for q in &cols {
                let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= norm;
        }
        cols.push(v);
    }
    CMatrix::from_fn(m, s, |i, j| cols[j][i])
}
