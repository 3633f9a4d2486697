//! Linear-optical interferometers and multiphoton transition amplitudes.
//!
//! Mode evolution follows `U a_i† U† = Σ_j U_ij a_j†`: a photon entering mode
//! `i` leaves in mode `j` with amplitude `U_ij`. The transition amplitude
//! between Fock states is a normalized permanent of the `n × n` matrix whose
//! rows repeat input mode `i` `in_i` times and whose columns repeat output
//! mode `j` `out_j` times.

mod haar;
mod permanent;

use std::ops::Mul;

use num_complex::Complex64;

use crate::fock::{self, ModeConfig};
use crate::{Error, Result};

pub use haar::{haar_columns, haar_unitary};
pub use permanent::{permanent, permanent_with_cap, ryser, DEFAULT_PERMANENT_CAP};

/// Largest allowed deviation `‖U†U − I‖_max` when wrapping a matrix as unitary.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(k: usize) -> Self {
        Self::from_fn(k, k, |i, j| Complex64::new(f64::from(u8::from(i == j)), 0.0))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from nested rows; ragged input is a domain error.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::domain("ragged matrix rows"));
        }
        let n_rows = rows.len();
        Ok(Self {
            rows: n_rows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Matrix with rows `row_idx` and columns `col_idx` of `self` (repeats allowed).
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        Self::from_fn(row_idx.len(), col_idx.len(), |r, c| {
            self.get(row_idx[r], col_idx[c])
        })
    }

    /// `max_ij |(A†A − I)_ij|` for a square matrix.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = &self.adjoint() * self;
        let mut worst: f64 = 0.0;
        for i in 0..prod.rows {
            for j in 0..prod.cols {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((prod.get(i, j) - target).norm());
            }
        }
        worst
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        CMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).sum()
        })
    }
}

/// An `m × m` unitary describing a passive interferometer.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    entries: CMatrix,
}

impl UnitaryMatrix {
    /// Wraps `entries`, checking squareness and `‖U†U − I‖_max ≤ 1e-12`.
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.rows() != entries.cols() || entries.rows() == 0 {
            return Err(Error::domain(format!(
                "an interferometer needs a non-empty square matrix, got {}x{}",
                entries.rows(),
                entries.cols()
            )));
        }
        let defect = entries.unitarity_defect();
        if defect > UNITARITY_TOL {
            return Err(Error::domain(format!(
                "matrix is not unitary: max |U†U - I| = {defect:e}"
            )));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_trusted(entries: CMatrix) -> Self {
        Self { entries }
    }

    pub fn identity(m: usize) -> Self {
        Self::from_trusted(CMatrix::identity(m))
    }

    /// Balanced two-mode coupler `(1/√2)[[1, 1], [1, −1]]`.
    pub fn balanced_coupler() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_trusted(CMatrix::from_fn(2, 2, |i, j| {
            Complex64::new(if i == 1 && j == 1 { -h } else { h }, 0.0)
        }))
    }

    pub fn modes(&self) -> usize {
        self.entries.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries.get(i, j)
    }

    /// Product `self · rhs` of two interferometers on the same modes.
    pub fn compose(&self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        Self::from_trusted(&self.entries * &rhs.entries)
    }
}

/// Conjugate transpose, the interferometer that undoes `u`.
pub fn dagger(u: &UnitaryMatrix) -> UnitaryMatrix {
    UnitaryMatrix::from_trusted(u.entries.adjoint())
}

/// Transition amplitude `⟨out|U|in⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Amplitude(pub Complex64);

impl Amplitude {
    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn probability(self) -> f64 {
        self.0.norm_sqr()
    }
}

fn check_pair(u: &UnitaryMatrix, input: &ModeConfig, output: &ModeConfig) -> Result<()> {
    let m = u.modes();
    if input.modes() != m || output.modes() != m {
        return Err(Error::domain(format!(
            "mode count mismatch: U is {m}x{m}, states have {} and {} modes",
            input.modes(),
            output.modes()
        )));
    }
    if input.photons() != output.photons() {
        return Err(Error::domain(format!(
            "photon number mismatch: {} in, {} out",
            input.photons(),
            output.photons()
        )));
    }
    Ok(())
}

/// `⟨out|U|in⟩ = Perm(U[in rows | out cols]) / √(∏ in_i! ∏ out_j!)`.
pub fn transition_amplitude(
    u: &UnitaryMatrix,
    input: &ModeConfig,
    output: &ModeConfig,
) -> Result<Amplitude> {
    check_pair(u, input, output)?;
    let sub = u
        .matrix()
        .select(&input.photon_modes(), &output.photon_modes());
    let perm = permanent(&sub)?;
    let norm = (input.occupation_factorial() * output.occupation_factorial()).sqrt();
    Ok(Amplitude(perm / norm))
}

/// Output probabilities over the canonical basis, capped at
/// [`fock::DEFAULT_BASIS_CAP`] states.
pub fn output_distribution(u: &UnitaryMatrix, input: &ModeConfig) -> Result<Vec<f64>> {
    output_distribution_capped(u, input, fock::DEFAULT_BASIS_CAP)
}

pub fn output_distribution_capped(
    u: &UnitaryMatrix,
    input: &ModeConfig,
    cap: u64,
) -> Result<Vec<f64>> {
    if input.modes() != u.modes() {
        return Err(Error::domain("mode count mismatch between U and input state"));
    }
    let basis = fock::enumerate_basis_capped(u.modes(), input.photons(), cap)?;
    let rows = input.photon_modes();
    let in_norm = input.occupation_factorial();
    basis
        .iter()
        .map(|out| {
            let sub = u.matrix().select(&rows, &out.photon_modes());
            let perm = permanent(&sub)?;
            Ok(perm.norm_sqr() / (in_norm * out.occupation_factorial()))
        })
        .collect()
}
