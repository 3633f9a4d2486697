//! Monte Carlo estimation of the Haar-averaged coefficients `c_q` and of the
//! concentration factors `γ_q`.
//!
//! For a code word `ψ = |1,…,1,0,…⟩` and a representative `φ_q` of pattern `q`
//! (placed on the leading modes) the estimator draws Haar interferometers and
//! accumulates `X = |⟨φ_q|U|ψ⟩|²` together with `X²`, `X³`, `X⁴`. The higher
//! moments feed the first-order error of the ratio `E[X²]/E[X]²`.
//!
//! Samples are processed in [`par::CHUNK`]-sized chunks, each with its own RNG
//! stream derived from `(seed, chunk index)`. Chunk sums are merged in index
//! order with compensated summation, so an estimate depends only on
//! `(m, n, q, samples, seed)` and never on the number of workers.

mod cache;

use num_complex::Complex64;
use rand::Rng;

use crate::fock::{self, ModeConfig, PhotonPattern};
use crate::linop::{haar_columns, haar_unitary, ryser};
use crate::numeric::NeumaierSum;
use crate::par;
use crate::rng::{self, Domain};
use crate::{Error, Result};

pub use cache::{CacheKind, CacheRecord, GammaCache, CACHE_HEADER, SHIPPED_CACHE};

/// Default sample count for `c_q` estimates.
pub const DEFAULT_C_SAMPLES: usize = 200_000;
/// Default sample count for `γ_q` estimates.
pub const DEFAULT_GAMMA_SAMPLES: usize = 1_000_000;
/// Fewest samples an estimate may be based on.
pub const MIN_SAMPLES: usize = 1_000;

const BOOTSTRAP_RESAMPLES: usize = 200;
const BOOTSTRAP_MIN_CHUNKS: usize = 20;
/// Relative standard error of `E[X²]` above which the ratio error is
/// bootstrapped instead of propagated to first order.
const BOOTSTRAP_TRIGGER: f64 = 0.05;

/// How interferometers are drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Sampler {
    /// Only the Haar columns that the output state touches.
    #[default]
    Columns,
    /// A complete `m × m` Haar unitary per sample.
    FullUnitary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McOptions {
    pub samples: usize,
    pub seed: u64,
    /// 0 = automatic, 1 = sequential.
    pub workers: usize,
    pub sampler: Sampler,
}

impl McOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            workers: 0,
            sampler: Sampler::Columns,
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn sampler(mut self, sampler: Sampler) -> Self {
        self.sampler = sampler;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatioError {
    /// First-order propagation with the sample covariance of `(X, X²)`.
    Delta,
    /// Chunk bootstrap, used when `X²` is too skewed for the delta method.
    Bootstrap,
}

/// Monte Carlo moments of `X = |⟨φ|U|ψ⟩|²`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentEstimate {
    pub mean: f64,
    pub second_moment: f64,
    pub stderr_mean: f64,
    /// Standard error of `second_moment / mean²`.
    pub stderr_ratio: f64,
    pub ratio_error: RatioError,
    pub samples: usize,
    pub seed: u64,
    pub m: usize,
    pub n: usize,
    pub q: PhotonPattern,
}

impl MomentEstimate {
    /// `E[X²] / E[X]²`, i.e. `γ_q`.
    pub fn ratio(&self) -> f64 {
        self.second_moment / (self.mean * self.mean)
    }
}

/// A `γ_q` estimate in the tables' doubled convention.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaRecord {
    pub m: usize,
    pub n: usize,
    pub q: PhotonPattern,
    pub two_gamma_q: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    /// Every pattern of `(m, n)` was supplied.
    Exhaustive,
    /// Only the fully bunched pattern (assumed maximizer) was available.
    BunchedConjecture,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaBound {
    /// `max_q 2γ_q` over the supplied records.
    pub value: f64,
    pub coverage: Coverage,
}

#[derive(Clone, Copy, Default)]
struct ChunkSums {
    count: usize,
    powers: [NeumaierSum; 4],
}

impl ChunkSums {
    #[inline]
    fn push(&mut self, x: f64) {
        let x2 = x * x;
        self.count += 1;
        self.powers[0].add(x);
        self.powers[1].add(x2);
        self.powers[2].add(x2 * x);
        self.powers[3].add(x2 * x2);
    }

    fn merge(&mut self, other: &ChunkSums) {
        self.count += other.count;
        for (a, b) in self.powers.iter_mut().zip(&other.powers) {
            a.merge(b);
        }
    }
}

/// Moments of `|⟨φ_q|U|ψ⟩|²` for the leading code word and the leading
/// representative of `q`.
pub fn estimate_moments(
    m: usize,
    n: usize,
    q: &PhotonPattern,
    opts: &McOptions,
) -> Result<MomentEstimate> {
    q.validate(m, n)?;
    let psi = ModeConfig::leading_ones(m, n)?;
    let phi = q.leading_config(m)?;
    estimate_transition_moments(&psi, &phi, opts)
}

/// Moments of `|⟨φ|U|ψ⟩|²` for arbitrary basis states `ψ`, `φ`.
pub fn estimate_transition_moments(
    psi: &ModeConfig,
    phi: &ModeConfig,
    opts: &McOptions,
) -> Result<MomentEstimate> {
    let m = psi.modes();
    let n = psi.photons();
    if phi.modes() != m || phi.photons() != n {
        return Err(Error::domain(format!(
            "states {psi} and {phi} live in different Fock spaces"
        )));
    }
    if opts.samples < MIN_SAMPLES {
        return Err(Error::domain(format!(
            "{} samples requested, at least {MIN_SAMPLES} required",
            opts.samples
        )));
    }
    if n > crate::linop::DEFAULT_PERMANENT_CAP {
        return Err(Error::domain(format!(
            "{n} photons exceed the permanent cap {}",
            crate::linop::DEFAULT_PERMANENT_CAP
        )));
    }

    let kernel = TransitionKernel::new(psi, phi);
    let n_chunks = par::chunk_count(opts.samples);
    let chunks = par::map_indexed(n_chunks, opts.workers, |c| {
        let (start, end) = par::chunk_bounds(c, opts.samples);
        let mut rng = rng::stream(opts.seed, Domain::Moments, c as u64);
        let mut sums = ChunkSums::default();
        let mut buf = vec![Complex64::new(0.0, 0.0); n * n];
        for _ in start..end {
            sums.push(kernel.sample(&mut rng, opts.sampler, &mut buf));
        }
        sums
    });

    let mut total = ChunkSums::default();
    for c in &chunks {
        total.merge(c);
    }
    let stats = RawMoments::from_sums(&total);
    let mut stderr_ratio = stats.delta_ratio_stderr();
    let mut ratio_error = RatioError::Delta;
    if stats.second_moment_rel_stderr() > BOOTSTRAP_TRIGGER && chunks.len() >= BOOTSTRAP_MIN_CHUNKS
    {
        stderr_ratio = bootstrap_ratio_stderr(&chunks, opts.seed);
        ratio_error = RatioError::Bootstrap;
    }

    Ok(MomentEstimate {
        mean: stats.mu[0],
        second_moment: stats.mu[1],
        stderr_mean: stats.mean_stderr(),
        stderr_ratio,
        ratio_error,
        samples: opts.samples,
        seed: opts.seed,
        m,
        n,
        q: fock::pattern_of(phi),
    })
}

/// Shared per-sample work: which Haar entries form the permanent.
struct TransitionKernel {
    m: usize,
    n: usize,
    rows: Vec<usize>,
    /// Output mode of each permanent column.
    out_modes: Vec<usize>,
    /// Position of each permanent column inside the drawn column block.
    out_slots: Vec<usize>,
    distinct_out: usize,
    norm: f64,
}

impl TransitionKernel {
    fn new(psi: &ModeConfig, phi: &ModeConfig) -> Self {
        let out_modes = phi.photon_modes();
        let mut support: Vec<usize> = out_modes.clone();
        support.dedup();
        let out_slots = out_modes
            .iter()
            .map(|mode| support.iter().position(|s| s == mode).unwrap_or(0))
            .collect();
        Self {
            m: psi.modes(),
            n: psi.photons(),
            rows: psi.photon_modes(),
            out_modes,
            out_slots,
            distinct_out: support.len(),
            norm: psi.occupation_factorial() * phi.occupation_factorial(),
        }
    }

    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, sampler: Sampler, buf: &mut [Complex64]) -> f64 {
        let n = self.n;
        match sampler {
            Sampler::Columns => {
                let frame = haar_columns(self.m, self.distinct_out, rng);
                for (r, &row) in self.rows.iter().enumerate() {
                    for (c, &slot) in self.out_slots.iter().enumerate() {
                        buf[r * n + c] = frame.get(row, slot);
                    }
                }
            }
            Sampler::FullUnitary => {
                let u = haar_unitary(self.m, rng);
                for (r, &row) in self.rows.iter().enumerate() {
                    for (c, &col) in self.out_modes.iter().enumerate() {
                        buf[r * n + c] = u.get(row, col);
                    }
                }
            }
        }
        ryser(n, buf).norm_sqr() / self.norm
    }
}

struct RawMoments {
    count: f64,
    /// `E[X^k]` for k = 1..4.
    mu: [f64; 4],
}

impl RawMoments {
    fn from_sums(s: &ChunkSums) -> Self {
        let count = s.count as f64;
        Self {
            count,
            mu: s.powers.map(|p| p.value() / count),
        }
    }

    fn mean_stderr(&self) -> f64 {
        let var = (self.mu[1] - self.mu[0] * self.mu[0]).max(0.0) * self.count
            / (self.count - 1.0);
        (var / self.count).sqrt()
    }

    fn second_moment_rel_stderr(&self) -> f64 {
        let var = (self.mu[3] - self.mu[1] * self.mu[1]).max(0.0);
        (var / self.count).sqrt() / self.mu[1]
    }

    fn delta_ratio_stderr(&self) -> f64 {
        let [m1, m2, m3, m4] = self.mu;
        let g1 = -2.0 * m2 / (m1 * m1 * m1);
        let g2 = 1.0 / (m1 * m1);
        let v11 = m2 - m1 * m1;
        let v22 = m4 - m2 * m2;
        let v12 = m3 - m1 * m2;
        let var = (g1 * g1 * v11 + g2 * g2 * v22 + 2.0 * g1 * g2 * v12) / self.count;
        var.max(0.0).sqrt()
    }
}

fn bootstrap_ratio_stderr(chunks: &[ChunkSums], seed: u64) -> f64 {
    let mut rng = rng::stream(seed, Domain::Bootstrap, 0);
    let k = chunks.len();
    let ratios: Vec<f64> = (0..BOOTSTRAP_RESAMPLES)
        .map(|_| {
            let mut acc = ChunkSums::default();
            for _ in 0..k {
                acc.merge(&chunks[rng.random_range(0..k)]);
            }
            let s = RawMoments::from_sums(&acc);
            s.mu[1] / (s.mu[0] * s.mu[0])
        })
        .collect();
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let var = ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (ratios.len() - 1) as f64;
    var.sqrt()
}

/// `c_q = E_U[|⟨φ_q|U|ψ⟩|²]`.
pub fn estimate_c_q(m: usize, n: usize, q: &PhotonPattern, opts: &McOptions) -> Result<f64> {
    Ok(estimate_moments(m, n, q, opts)?.mean)
}

/// `(∏ q_j!)·c_q`: the unnormalized permanent second moment.
pub fn estimate_raw_c_q(m: usize, n: usize, q: &PhotonPattern, opts: &McOptions) -> Result<f64> {
    Ok(estimate_moments(m, n, q, opts)?.mean * q.occupation_factorial())
}

/// `2γ_q = 2 E[X²]/E[X]²` with its standard error.
pub fn estimate_gamma_q(
    m: usize,
    n: usize,
    q: &PhotonPattern,
    opts: &McOptions,
) -> Result<GammaRecord> {
    Ok(gamma_record(&estimate_moments(m, n, q, opts)?))
}

/// Converts a moment estimate into the doubled-γ record.
pub fn gamma_record(est: &MomentEstimate) -> GammaRecord {
    GammaRecord {
        m: est.m,
        n: est.n,
        q: est.q.clone(),
        two_gamma_q: 2.0 * est.ratio(),
        stderr: 2.0 * est.stderr_ratio,
        samples: est.samples,
        seed: est.seed,
    }
}

/// `γ ≤ 2 max_q γ_q` from a set of records for one `(m, n)`.
///
/// The records must either cover every pattern or include the fully bunched
/// pattern, in which case the result is flagged as conjecture-based.
pub fn gamma_bound(m: usize, n: usize, records: &[GammaRecord]) -> Result<GammaBound> {
    if records.is_empty() {
        return Err(Error::domain("no γ_q records supplied"));
    }
    if let Some(r) = records.iter().find(|r| r.m != m || r.n != n) {
        return Err(Error::domain(format!(
            "record for (m, n) = ({}, {}) supplied to a bound for ({m}, {n})",
            r.m, r.n
        )));
    }
    let value = records
        .iter()
        .map(|r| r.two_gamma_q)
        .fold(f64::NEG_INFINITY, f64::max);
    let patterns = fock::enumerate_patterns(m, n)?;
    let exhaustive = patterns.iter().all(|p| records.iter().any(|r| &r.q == p));
    let coverage = if exhaustive {
        Coverage::Exhaustive
    } else if records.iter().any(|r| r.q == PhotonPattern::bunched(n as u32)) {
        Coverage::BunchedConjecture
    } else {
        return Err(Error::domain(format!(
            "records for ({m}, {n}) cover neither all {} patterns nor the bunched pattern ({n})",
            patterns.len()
        )));
    };
    Ok(GammaBound { value, coverage })
}

/// Smallest coefficient under the no-collision minimizer: `1/d`.
pub fn conjectured_c_min(m: usize, n: usize) -> Result<f64> {
    Ok((-fock::log2_dim_hilbert(m, n)?).exp2())
}

pub fn log2_conjectured_c_min(m: usize, n: usize) -> Result<f64> {
    Ok(-fock::log2_dim_hilbert(m, n)?)
}

/// `(n!/mⁿ, 2(n+1))`, the dilute-photon limits of `c_min` and `2γ`.
pub fn no_collision_values(m: usize, n: usize) -> Result<(f64, f64)> {
    Ok((log2_no_collision_c_min(m, n)?.exp2(), 2.0 * (n as f64 + 1.0)))
}

/// `log₂(n!/mⁿ)`.
pub fn log2_no_collision_c_min(m: usize, n: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("the number of modes must be at least 1"));
    }
    Ok(crate::numeric::ln_factorial(n as u64) / std::f64::consts::LN_2
        - n as f64 * (m as f64).log2())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert!((conjectured_c_min(6, 2).unwrap() - 1.0 / 21.0).abs() < 1e-15);
        let (c, g) = no_collision_values(20, 2).unwrap();
        assert!((c - 0.005).abs() < 1e-15);
        assert_eq!(g, 6.0);
        let (c, g) = no_collision_values(7, 1).unwrap();
        assert!((c - 1.0 / 7.0).abs() < 1e-15);
        assert_eq!(g, 4.0);
        assert!((conjectured_c_min(7, 1).unwrap() - 1.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn too_few_samples() {
        let q = PhotonPattern::new([1, 1]);
        assert!(estimate_moments(4, 2, &q, &McOptions::new(999, 1)).is_err());
        assert!(estimate_moments(4, 2, &PhotonPattern::new([3]), &McOptions::new(1000, 1)).is_err());
    }

    #[test]
    fn gamma_bound_coverage() {
        let rec = |q: &[u32], v: f64| GammaRecord {
            m: 6,
            n: 2,
            q: PhotonPattern::new(q.iter().copied()),
            two_gamma_q: v,
            stderr: 0.0,
            samples: 0,
            seed: 0,
        };
        let full = [rec(&[1, 1], 3.770), rec(&[2], 4.314)];
        let b = gamma_bound(6, 2, &full).unwrap();
        assert_eq!(b.value, 4.314);
        assert_eq!(b.coverage, Coverage::Exhaustive);
        let b = gamma_bound(6, 2, &full[1..]).unwrap();
        assert_eq!(b.coverage, Coverage::BunchedConjecture);
        assert!(gamma_bound(6, 2, &full[..1]).is_err());
        assert!(gamma_bound(6, 2, &[]).is_err());
        assert!(gamma_bound(6, 3, &full).is_err());
    }
}
