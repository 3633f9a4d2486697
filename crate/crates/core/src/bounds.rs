//! Closed-form security and rate bounds, evaluated in log space.
//!
//! Key sizes reach `2^127` and beyond for realistic parameters, so every
//! quantity is carried as a logarithm. Inside the bound formulas logarithms
//! are natural; reported quantities are in bits. Functions that take large
//! counts (`M`, `K`, `d`) or tiny ones (`c_min`) accept them as `log₂` values.
//!
//! The `gamma` argument throughout is the doubled convention `2 max_q γ_q`
//! used by the tables and the cache.

use std::f64::consts::{LN_2, LOG2_E};

use crate::fock::{self, PhotonPattern};
use crate::mc::{self, CacheKind, GammaCache};
use crate::numeric::{log2_binomial, log_sum_exp};
use crate::{Error, Result};

/// Which term of the key-size maximum is active.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Matrix-Chernoff condition, `∝ (ln 2d)² / (M c_min)`.
    Chernoff,
    /// Maurer tail condition, `∝ γ d/M`.
    Maurer,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Chernoff => "chernoff",
            Branch::Maurer => "maurer",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Protocol-level parameters shared by the rate commands.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SecurityParams {
    pub epsilon: f64,
    pub xi: f64,
    /// Error-correction efficiency.
    pub beta: f64,
    /// Channel transmissivity.
    pub eta: f64,
}

impl SecurityParams {
    pub fn new(epsilon: f64, xi: f64, beta: f64, eta: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        check_open_closed("ξ", xi)?;
        check_open_closed("β", beta)?;
        check_unit("η", eta)?;
        Ok(Self {
            epsilon,
            xi,
            beta,
            eta,
        })
    }
}

/// Everything a key-size evaluation depends on, echoed in its report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KeySizeInputs {
    pub m: usize,
    pub n: usize,
    /// Channel uses; 1 for the single-use bound.
    pub nu: u64,
    pub epsilon: f64,
    /// `2γ` for one channel use.
    pub gamma: f64,
    /// `log₂ c_min` for one channel use.
    pub log2_c_min: f64,
    /// `log₂ d` for one channel use.
    pub log2_d: f64,
    /// `log₂` of the total code book size (`M` or `M^(ν)`).
    pub log2_m: f64,
    /// Leading constants of the Maurer term: `(256, 32)` single use,
    /// `(512, 64)` multi use.
    pub maurer_constants: (f64, f64),
}

impl KeySizeInputs {
    /// Natural logs of the two branches.
    fn ln_branches(&self) -> (f64, f64) {
        let nu = self.nu as f64;
        let (a, b) = self.maurer_constants;
        let ln_eps = self.epsilon.ln();
        let ln_d = nu * self.log2_d * LN_2;
        let ln_m = self.log2_m * LN_2;
        let ln_c = nu * self.log2_c_min * LN_2;
        let ln_gamma = nu * self.gamma.ln();

        // ln(20/(ε c)) > 0 because ε < 1 and c ≤ 1.
        let ln_ln_20 = (20f64.ln() - ln_eps - ln_c).ln();
        let maurer = ln_gamma
            + log_sum_exp(&[
                a.ln() - 3.0 * ln_eps + ln_d - ln_m + ln_ln_20,
                b.ln() - 2.0 * ln_eps + ln_m.ln(),
            ]);
        let ln_2d = LN_2 + ln_d;
        let chernoff = 32f64.ln() - 2.0 * ln_eps + 2.0 * ln_2d.ln() - ln_m - ln_c;
        (maurer, chernoff)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KeySizeReport {
    pub log2_m: f64,
    pub log2_k_epsilon: f64,
    pub active_branch: Branch,
    pub log2_maurer: f64,
    pub log2_chernoff: f64,
    pub gamma_used: f64,
    pub log2_c_min: f64,
    pub inputs: KeySizeInputs,
}

impl KeySizeReport {
    fn from_inputs(inputs: KeySizeInputs) -> Self {
        let (maurer, chernoff) = inputs.ln_branches();
        let (log2_maurer, log2_chernoff) = (maurer * LOG2_E, chernoff * LOG2_E);
        let active_branch = if log2_maurer >= log2_chernoff {
            Branch::Maurer
        } else {
            Branch::Chernoff
        };
        Self {
            log2_m: inputs.log2_m,
            log2_k_epsilon: log2_maurer.max(log2_chernoff),
            active_branch,
            log2_maurer,
            log2_chernoff,
            gamma_used: inputs.gamma,
            log2_c_min: inputs.log2_c_min,
            inputs,
        }
    }

    /// Re-evaluates `log₂ K_ε` from the echoed inputs.
    pub fn recompute(&self) -> f64 {
        Self::from_inputs(self.inputs).log2_k_epsilon
    }

    /// `log₂ M − log₂ K_ε`: positive when the message outgrows the key.
    pub fn margin(&self) -> f64 {
        self.log2_m - self.log2_k_epsilon
    }
}

/// `log₂ M` for `M = max(1, round(ξ·C))`. Exact while `C` is representable,
/// `log₂ ξ + log₂ C` beyond.
pub fn log2_codebook_size(m: usize, n: usize, xi: f64) -> Result<f64> {
    check_open_closed("ξ", xi)?;
    let log2_c = fock::log2_num_codewords(m, n)?;
    if log2_c < 100.0 {
        return Ok((fock::codebook_size(m, n, xi)? as f64).log2());
    }
    Ok((xi.log2() + log2_c).max(0.0))
}

/// Single-use key size `K_ε` (Proposition 1).
///
/// `log2_m` is `log₂ M`; `gamma` is `2γ`; `log2_c_min` is `log₂ c_min`.
pub fn k_epsilon_single(
    m: usize,
    n: usize,
    log2_m: f64,
    epsilon: f64,
    gamma: f64,
    log2_c_min: f64,
) -> Result<KeySizeReport> {
    check_key_inputs(epsilon, gamma, log2_c_min)?;
    if !(log2_m >= 0.0) {
        return Err(Error::domain(format!("log₂ M = {log2_m} implies M < 1")));
    }
    Ok(KeySizeReport::from_inputs(KeySizeInputs {
        m,
        n,
        nu: 1,
        epsilon,
        gamma,
        log2_c_min,
        log2_d: fock::log2_dim_hilbert(m, n)?,
        log2_m,
        maurer_constants: (256.0, 32.0),
    }))
}

/// Key size over `nu` channel uses with `M^(ν) = ξ Cᵛ`.
pub fn k_epsilon_multi(
    m: usize,
    n: usize,
    nu: u64,
    xi: f64,
    epsilon: f64,
    gamma: f64,
    log2_c_min: f64,
) -> Result<KeySizeReport> {
    check_key_inputs(epsilon, gamma, log2_c_min)?;
    check_open_closed("ξ", xi)?;
    if nu == 0 {
        return Err(Error::domain("ν must be at least 1"));
    }
    let log2_m = (xi.log2() + nu as f64 * fock::log2_num_codewords(m, n)?).max(0.0);
    Ok(KeySizeReport::from_inputs(KeySizeInputs {
        m,
        n,
        nu,
        epsilon,
        gamma,
        log2_c_min,
        log2_d: fock::log2_dim_hilbert(m, n)?,
        log2_m,
        maurer_constants: (512.0, 64.0),
    }))
}

/// Asymptotic key consumption in bits per channel use:
/// `max{log₂ γ + log₂(d/C), log₂(1/(C c_min))}`.
pub fn key_consumption_rate(gamma: f64, m: usize, n: usize, log2_c_min: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::domain(format!("γ = {gamma} must be positive")));
    }
    let log2_c = fock::log2_num_codewords(m, n)?;
    let log2_d = fock::log2_dim_hilbert(m, n)?;
    Ok((gamma.log2() + log2_d - log2_c).max(-log2_c - log2_c_min))
}

/// Mutual information in bits between Alice's code word and Bob's detected
/// pattern when each photon independently survives with probability `eta`.
pub fn mutual_info_lossy(m: usize, n: usize, eta: f64) -> Result<f64> {
    check_unit("η", eta)?;
    let log2_c = fock::log2_num_codewords(m, n)?;
    let residual = |k: usize| log2_binomial((m - k) as u64, (n - k) as u64);
    if eta == 1.0 {
        return Ok(log2_c - residual(n));
    }
    if eta == 0.0 {
        return Ok(log2_c - residual(0));
    }
    let (ln_eta, ln_loss) = (eta.ln(), (-eta).ln_1p());
    let mut lost = 0.0;
    for k in 0..=n {
        let ln_w = log2_binomial(n as u64, k as u64) * LN_2
            + k as f64 * ln_eta
            + (n - k) as f64 * ln_loss;
        lost += ln_w.exp() * residual(k);
    }
    Ok(log2_c - lost)
}

/// Net key rate `β·I(η) − k` in bits per channel use. May be negative.
pub fn net_rate(
    m: usize,
    n: usize,
    eta: f64,
    beta: f64,
    gamma: f64,
    log2_c_min: f64,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::domain(format!("β = {beta} outside [0, 1]")));
    }
    Ok(beta * mutual_info_lossy(m, n, eta)? - key_consumption_rate(gamma, m, n, log2_c_min)?)
}

/// Natural logs of the two failure-probability bounds. Positive values mean
/// the bound is vacuous.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FailureBounds {
    pub ln_p1: f64,
    pub ln_p2: f64,
}

impl FailureBounds {
    /// `ln(p₁ + p₂)`.
    pub fn ln_total(&self) -> f64 {
        log_sum_exp(&[self.ln_p1, self.ln_p2])
    }
}

/// Chernoff (`p₁`) and Maurer/δ-net (`p₂`) failure bounds for a pool of `K`
/// unitaries. All counts are given as `log₂`.
pub fn failure_prob_bounds(
    log2_k: f64,
    log2_m: f64,
    log2_d: f64,
    epsilon: f64,
    log2_c_min: f64,
    gamma: f64,
) -> Result<FailureBounds> {
    check_key_inputs(epsilon, gamma, log2_c_min)?;
    let ln_k = log2_k * LN_2;
    let ln_m = log2_m * LN_2;
    let ln_d = log2_d * LN_2;
    let ln_c = log2_c_min * LN_2;

    let ln_p1 = LN_2 + ln_d - epsilon / 4.0 * (0.5 * (ln_m + ln_k + ln_c - LN_2)).exp();

    let ln_20 = 20f64.ln() - epsilon.ln() - ln_c;
    // p₂ exponent = e^pos − e^neg, compared in log space before
    // exponentiating so huge inputs resolve to ±∞ rather than NaN.
    let pos = log_sum_exp(&[
        LN_2 + ln_d + ln_20.ln(),
        (epsilon / 4.0).ln() + ln_m + ln_m.ln(),
    ]);
    let neg = ln_k + ln_m + 3.0 * epsilon.ln() - (128.0 * gamma).ln();
    let ln_p2 = if pos.max(neg) < 700.0 {
        pos.exp() - neg.exp()
    } else if pos > neg {
        f64::INFINITY
    } else if neg > pos {
        f64::NEG_INFINITY
    } else {
        0.0
    };
    Ok(FailureBounds { ln_p1, ln_p2 })
}

/// One row of the key-size sweep with `m = n³`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fig2Row {
    pub n: usize,
    pub m: usize,
    pub epsilon: f64,
    pub log2_m: f64,
    pub log2_k_epsilon: f64,
}

/// `log₂ M` and `log₂ K_ε` at `m = n³` under the no-collision values
/// `2γ = 2(n+1)`, `c_min = n!/mⁿ`, for `ε = 2^(−n^s)`.
pub fn fig2_row(n: usize, s: f64, xi: f64) -> Result<Fig2Row> {
    fig2_row_with_epsilon(n, (-(n as f64).powf(s)).exp2(), xi)
}

/// As [`fig2_row`] with a fixed `ε`.
pub fn fig2_row_with_epsilon(n: usize, epsilon: f64, xi: f64) -> Result<Fig2Row> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let m = n.checked_pow(3).ok_or_else(|| Error::domain("n³ overflows"))?;
    let log2_m = log2_codebook_size(m, n, xi)?;
    let (_, gamma) = mc::no_collision_values(m, n)?;
    let report = k_epsilon_single(
        m,
        n,
        log2_m,
        epsilon,
        gamma,
        mc::log2_no_collision_c_min(m, n)?,
    )?;
    Ok(Fig2Row {
        n,
        m,
        epsilon,
        log2_m,
        log2_k_epsilon: report.log2_k_epsilon,
    })
}

/// One point of the rate-loss curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatePoint {
    pub m: usize,
    pub eta: f64,
    pub best_n: usize,
    /// Net rate in bits per channel use.
    pub rate: f64,
    /// Net rate in bits per mode.
    pub rate_per_mode: f64,
    pub gamma: f64,
}

/// Default photon numbers searched for `m` modes.
pub fn default_candidates(m: usize) -> Vec<usize> {
    (1..=m.min(16)).collect()
}

/// For each `η`, the photon number maximizing the net rate at `m` modes,
/// using the cached bunched-pattern `2γ` and `c_min = 1/d`. Ties go to the
/// smaller `n`.
pub fn rate_loss_curve(
    m: usize,
    eta_grid: &[f64],
    beta: f64,
    cache: &GammaCache,
    candidates: &[usize],
) -> Result<Vec<RatePoint>> {
    if candidates.is_empty() {
        return Err(Error::domain("no candidate photon numbers"));
    }
    let mut missing = Vec::new();
    let mut inputs = Vec::with_capacity(candidates.len());
    for &n in candidates {
        if n == 0 || n > m {
            return Err(Error::domain(format!("candidate n = {n} outside 1..={m}")));
        }
        match cache.lookup(m, n, &PhotonPattern::bunched(n as u32), CacheKind::TwoGamma) {
            Some(r) => inputs.push((n, r.value, mc::log2_conjectured_c_min(m, n)?)),
            None => missing.push(format!("(m={m}, n={n})")),
        }
    }
    if !missing.is_empty() {
        return Err(Error::CacheMiss { missing });
    }
    eta_grid
        .iter()
        .map(|&eta| {
            let mut best: Option<RatePoint> = None;
            for &(n, gamma, log2_c_min) in &inputs {
                let rate = net_rate(m, n, eta, beta, gamma, log2_c_min)?;
                if best.is_none_or(|b| rate > b.rate) {
                    best = Some(RatePoint {
                        m,
                        eta,
                        best_n: n,
                        rate,
                        rate_per_mode: rate / m as f64,
                        gamma,
                    });
                }
            }
            Ok(best.expect("candidates are non-empty"))
        })
        .collect()
}

/// Every `(m, n)` a rate curve over `ms` would read from the cache and does
/// not find there.
pub fn missing_rate_inputs(ms: &[usize], cache: &GammaCache) -> Vec<String> {
    ms.iter()
        .flat_map(|&m| default_candidates(m).into_iter().map(move |n| (m, n)))
        .filter(|&(m, n)| {
            cache
                .lookup(m, n, &PhotonPattern::bunched(n as u32), CacheKind::TwoGamma)
                .is_none()
        })
        .map(|(m, n)| format!("(m={m}, n={n})"))
        .collect()
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain(format!("ε = {epsilon} outside (0, 1)")));
    }
    Ok(())
}

fn check_open_closed(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v <= 1.0) {
        return Err(Error::domain(format!("{name} = {v} outside (0, 1]")));
    }
    Ok(())
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::domain(format!("{name} = {v} outside [0, 1]")));
    }
    Ok(())
}

fn check_key_inputs(epsilon: f64, gamma: f64, log2_c_min: f64) -> Result<()> {
    check_epsilon(epsilon)?;
    if !(gamma >= 1.0) {
        return Err(Error::domain(format!("γ = {gamma} must be at least 1")));
    }
    if !(log2_c_min <= 0.0) || log2_c_min == f64::NEG_INFINITY {
        return Err(Error::domain(format!(
            "c_min = 2^{log2_c_min} outside (0, 1]"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_key_size() {
        let (m, n) = (8000, 20);
        let log2_m = log2_codebook_size(m, n, 0.01).unwrap();
        let r = k_epsilon_single(
            m,
            n,
            log2_m,
            1e-10,
            42.0,
            mc::log2_no_collision_c_min(m, n).unwrap(),
        )
        .unwrap();
        assert!((r.log2_m - 192.0).abs() <= 1.0, "{}", r.log2_m);
        assert!((r.log2_k_epsilon - 127.0).abs() <= 1.0, "{}", r.log2_k_epsilon);
        assert_eq!(r.active_branch, Branch::Maurer);
        assert_eq!(r.recompute(), r.log2_k_epsilon);
    }

    #[test]
    fn consumption_rate_example() {
        let k = key_consumption_rate(111.5, 30, 10, mc::log2_conjectured_c_min(30, 10).unwrap())
            .unwrap();
        assert!((k - 11.2).abs() < 0.1, "{k}");
    }

    #[test]
    fn lossy_mi_endpoints() {
        assert_eq!(mutual_info_lossy(4, 2, 1.0).unwrap(), 6f64.log2());
        assert_eq!(mutual_info_lossy(4, 2, 0.0).unwrap(), 0.0);
        let i = mutual_info_lossy(4, 2, 0.5).unwrap();
        let hand = 0.75 * 6f64.log2() - 0.5 * 3f64.log2();
        assert!((i - hand).abs() < 1e-12);
        assert!((i - 1.1462).abs() < 1e-4);
    }

    #[test]
    fn domain_errors() {
        assert!(k_epsilon_single(6, 2, 3.0, 1.0, 4.0, -2.0).is_err());
        assert!(k_epsilon_single(6, 2, 3.0, 0.1, 0.5, -2.0).is_err());
        assert!(k_epsilon_single(6, 2, 3.0, 0.1, 4.0, 0.5).is_err());
        assert!(mutual_info_lossy(4, 2, 1.5).is_err());
        assert!(k_epsilon_multi(6, 2, 0, 0.5, 0.1, 4.0, -2.0).is_err());
    }

    #[test]
    fn missing_cache_entries_are_listed() {
        let err = rate_loss_curve(12, &[1.0], 1.0, &GammaCache::new(), &[2, 3]).unwrap_err();
        match err {
            Error::CacheMiss { missing } => {
                assert_eq!(missing, ["(m=12, n=2)", "(m=12, n=3)"])
            }
            other => panic!("{other:?}"),
        }
    }
}
