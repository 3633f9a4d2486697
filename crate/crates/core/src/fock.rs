//! n-photon, m-mode Fock space: dimensions, canonical indexing, photon
//! occupancy patterns and the single-occupancy code book.
//!
//! The canonical basis order is descending lexicographic on occupation tuples,
//! so `|n,0,…,0⟩` has index 0 and `|0,…,0,n⟩` has index `d − 1`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::numeric::{binomial_u128, factorial_f64, log2_binomial};
use crate::{Error, Result};

/// Default upper bound on the number of basis states materialized at once.
pub const DEFAULT_BASIS_CAP: u64 = 10_000_000;

/// Largest code book that [`sample_codebook`] will materialize.
pub const DEFAULT_CODEBOOK_CAP: u64 = 10_000_000;

/// A Fock basis element: photon counts on each of `m` modes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeConfig {
    occupations: Vec<u32>,
}

impl ModeConfig {
    pub fn new(occupations: Vec<u32>) -> Result<Self> {
        if occupations.is_empty() {
            return Err(Error::domain("a mode configuration needs at least one mode"));
        }
        Ok(Self { occupations })
    }

    /// `|1,…,1,0,…,0⟩` with `n` photons on the leading modes.
    pub fn leading_ones(m: usize, n: usize) -> Result<Self> {
        if n > m {
            return Err(Error::domain(format!(
                "{n} single-occupied modes do not fit into {m} modes"
            )));
        }
        let mut occ = vec![0; m];
        occ[..n].fill(1);
        Self::new(occ)
    }

    pub fn occupations(&self) -> &[u32] {
        &self.occupations
    }

    pub fn modes(&self) -> usize {
        self.occupations.len()
    }

    pub fn photons(&self) -> usize {
        self.occupations.iter().map(|&o| o as usize).sum()
    }

    pub fn max_occupation(&self) -> u32 {
        self.occupations.iter().copied().max().unwrap_or(0)
    }

    pub fn is_single_occupancy(&self) -> bool {
        self.max_occupation() <= 1
    }

    /// Modes listed once per photon, in increasing mode order.
    pub fn photon_modes(&self) -> Vec<usize> {
        self.occupations
            .iter()
            .enumerate()
            .flat_map(|(i, &o)| std::iter::repeat_n(i, o as usize))
            .collect()
    }

    /// `∏ occupation!`.
    pub fn occupation_factorial(&self) -> f64 {
        self.occupations
            .iter()
            .map(|&o| factorial_f64(o as u64))
            .product()
    }

    /// Dash-joined occupations, e.g. `1-0-1-0`.
    pub fn dashed(&self) -> String {
        join_dashed(&self.occupations)
    }
}

impl fmt::Display for ModeConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, o) in self.occupations.iter().enumerate() {
            if i > 0 && self.occupations.iter().any(|&x| x > 9) {
                write!(f, ",")?;
            }
            write!(f, "{o}")?;
        }
        write!(f, "⟩")
    }
}

fn join_dashed(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join("-")
}

/// Sorted multiset of non-zero occupations labelling a subspace `H_q`.
///
/// Patterns are stored non-increasing, without the zero padding; `(1,2,0,0)`
/// and `(2,1,0,0)` both normalize to `2-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhotonPattern {
    parts: Vec<u32>,
}

impl PhotonPattern {
    /// Normalizes `parts` (drops zeros, sorts non-increasing).
    pub fn new(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut parts: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// All photons in one mode.
    pub fn bunched(n: u32) -> Self {
        Self::new([n])
    }

    /// One photon per mode.
    pub fn no_collision(n: u32) -> Self {
        Self::new(std::iter::repeat_n(1, n as usize))
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn photons(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_bunched(&self) -> bool {
        self.parts.len() == 1
    }

    /// `∏ q_j!`.
    pub fn occupation_factorial(&self) -> f64 {
        self.parts.iter().map(|&p| factorial_f64(p as u64)).product()
    }

    /// Checks that this is a pattern of `n` photons over `m` modes.
    pub fn validate(&self, m: usize, n: usize) -> Result<()> {
        if self.photons() != n || self.parts.len() > m {
            return Err(Error::domain(format!(
                "pattern {self} is not a pattern of {n} photons over {m} modes"
            )));
        }
        Ok(())
    }

    /// Representative vector: the pattern placed on the leading modes.
    pub fn leading_config(&self, m: usize) -> Result<ModeConfig> {
        if self.parts.len() > m {
            return Err(Error::domain(format!("pattern {self} needs more than {m} modes")));
        }
        let mut occ = vec![0; m];
        occ[..self.parts.len()].copy_from_slice(&self.parts);
        ModeConfig::new(occ)
    }

    /// Number of distinct mode configurations with this pattern,
    /// `m! / ∏_v (multiplicity of v)!` with zeros counted as a value.
    /// `None` when it overflows 128 bits.
    pub fn subspace_dim(&self, m: usize) -> Option<u128> {
        let k = self.parts.len() as u64;
        if k > m as u64 {
            return Some(0);
        }
        // C(m, k) ways to pick the occupied modes, times the multinomial of
        // arranging the parts over them.
        let mut acc = binomial_u128(m as u64, k)?;
        let mut left = k;
        for count in self.multiplicities().values() {
            acc = acc.checked_mul(binomial_u128(left, *count as u64)?)?;
            left -= *count as u64;
        }
        Some(acc)
    }

    /// Base-2 log of [`Self::subspace_dim`].
    pub fn log2_subspace_dim(&self, m: usize) -> f64 {
        if let Some(d) = self.subspace_dim(m) {
            return (d as f64).log2();
        }
        let mut acc = log2_binomial(m as u64, self.parts.len() as u64);
        let mut left = self.parts.len() as u64;
        for count in self.multiplicities().values() {
            acc += log2_binomial(left, *count as u64);
            left -= *count as u64;
        }
        acc
    }

    fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_insert(0) += 1;
        }
        counts
    }

    /// Dash-joined parts, e.g. `2-1`; the vacuum is `0`.
    pub fn dashed(&self) -> String {
        if self.parts.is_empty() {
            "0".to_string()
        } else {
            join_dashed(&self.parts)
        }
    }

    /// The zero-padded tuple, e.g. `(2,1,0,0)` at `m = 4`.
    pub fn padded(&self, m: usize) -> String {
        let mut v: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        v.resize(m.max(v.len()), "0".to_string());
        format!("({})", v.join(","))
    }
}

impl fmt::Display for PhotonPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dashed())
    }
}

impl FromStr for PhotonPattern {
    type Err = Error;

    /// Accepts `2-1`, `2,1`, `(1,2,0,0)` and similar spellings.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.is_empty() {
            return Err(Error::Parse(format!("empty pattern `{s}`")));
        }
        let parts = trimmed
            .split(['-', ',', ' '])
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad pattern part `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(parts))
    }
}

impl PartialOrd for PhotonPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PhotonPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

fn check_modes(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::domain("the number of modes must be at least 1"))
    } else {
        Ok(())
    }
}

/// `d = C(n + m − 1, n)`, the dimension of the n-photon space on `m` modes.
pub fn dim_hilbert(m: usize, n: usize) -> Result<u128> {
    check_modes(m)?;
    binomial_u128((n + m - 1) as u64, n as u64).ok_or_else(|| {
        Error::resource(format!(
            "dim_hilbert({m}, {n}) exceeds 128 bits; use log2_dim_hilbert"
        ))
    })
}

/// `log₂ d`, valid far beyond the exact range.
pub fn log2_dim_hilbert(m: usize, n: usize) -> Result<f64> {
    check_modes(m)?;
    Ok(log2_binomial((n + m - 1) as u64, n as u64))
}

/// `C = C(m, n)`, the number of single-occupancy configurations.
pub fn num_codewords(m: usize, n: usize) -> Result<u128> {
    check_codewords(m, n)?;
    binomial_u128(m as u64, n as u64).ok_or_else(|| {
        Error::resource(format!(
            "num_codewords({m}, {n}) exceeds 128 bits; use log2_num_codewords"
        ))
    })
}

/// `log₂ C`.
pub fn log2_num_codewords(m: usize, n: usize) -> Result<f64> {
    check_codewords(m, n)?;
    Ok(log2_binomial(m as u64, n as u64))
}

fn check_codewords(m: usize, n: usize) -> Result<()> {
    check_modes(m)?;
    if n > m {
        return Err(Error::domain(format!(
            "no single-occupancy states of {n} photons over {m} modes"
        )));
    }
    Ok(())
}

/// Number of ways to put `photons` into `modes` modes.
fn compositions(modes: usize, photons: u32) -> u128 {
    if modes == 0 {
        return u128::from(photons == 0);
    }
    binomial_u128(photons as u64 + modes as u64 - 1, photons as u64).unwrap_or(u128::MAX)
}

fn dim_checked(m: usize, n: usize, cap: u64) -> Result<u64> {
    let d = dim_hilbert(m, n)?;
    if d > cap as u128 {
        return Err(Error::resource(format!(
            "dim_hilbert({m}, {n}) = {d} exceeds the basis cap {cap}"
        )));
    }
    Ok(d as u64)
}

/// All `d` configurations in canonical order, refusing spaces above `cap`.
pub fn enumerate_basis_capped(m: usize, n: usize, cap: u64) -> Result<Vec<ModeConfig>> {
    let d = dim_checked(m, n, cap)?;
    let mut out = Vec::with_capacity(d as usize);
    let mut cur = vec![0u32; m];
    cur[0] = n as u32;
    loop {
        out.push(ModeConfig {
            occupations: cur.clone(),
        });
        // Successor in descending lex order: move one photon from the last
        // occupied non-final mode to its right neighbour and gather every
        // photon to its right there.
        let Some(j) = (0..m.saturating_sub(1)).rev().find(|&j| cur[j] > 0) else {
            break;
        };
        let tail: u32 = cur[j + 1..].iter().sum();
        cur[j] -= 1;
        cur[j + 1..].fill(0);
        cur[j + 1] = tail + 1;
    }
    debug_assert_eq!(out.len() as u64, d);
    Ok(out)
}

/// All `d` configurations in canonical order, capped at [`DEFAULT_BASIS_CAP`].
pub fn enumerate_basis(m: usize, n: usize) -> Result<Vec<ModeConfig>> {
    enumerate_basis_capped(m, n, DEFAULT_BASIS_CAP)
}

/// Canonical index of `config` among all configurations with the same `m, n`.
pub fn rank(config: &ModeConfig) -> Result<u128> {
    let occ = config.occupations();
    let m = occ.len();
    let mut remaining: u32 = occ.iter().sum();
    let mut index: u128 = 0;
    for (i, &c) in occ.iter().enumerate() {
        let modes_after = m - i - 1;
        // Configurations with a larger value here come first.
        for v in (c + 1)..=remaining {
            let add = compositions(modes_after, remaining - v);
            index = index
                .checked_add(add)
                .ok_or_else(|| Error::resource("rank exceeds 128 bits"))?;
        }
        remaining -= c;
    }
    Ok(index)
}

/// Inverse of [`rank`].
pub fn unrank(m: usize, n: usize, index: u128) -> Result<ModeConfig> {
    let d = dim_hilbert(m, n)?;
    if index >= d {
        return Err(Error::domain(format!(
            "index {index} out of range for dim_hilbert({m}, {n}) = {d}"
        )));
    }
    let mut occ = vec![0u32; m];
    let mut remaining = n as u32;
    let mut index = index;
    for (i, slot) in occ.iter_mut().enumerate() {
        let modes_after = m - i - 1;
        if modes_after == 0 {
            *slot = remaining;
            break;
        }
        let mut v = remaining;
        loop {
            let block = compositions(modes_after, remaining - v);
            if index < block {
                break;
            }
            index -= block;
            v -= 1;
        }
        *slot = v;
        remaining -= v;
    }
    ModeConfig::new(occ)
}

/// The occupancy pattern of a configuration.
pub fn pattern_of(config: &ModeConfig) -> PhotonPattern {
    PhotonPattern::new(config.occupations().iter().copied())
}

/// All partitions of `n` into at most `m` parts, in ascending lexicographic
/// order of their non-increasing part lists: `(1,1,1)`, `(2,1)`, `(3)`.
pub fn enumerate_patterns(m: usize, n: usize) -> Result<Vec<PhotonPattern>> {
    check_modes(m)?;
    let mut out = Vec::new();
    let mut parts = Vec::new();
    partitions_into(n as u32, n as u32, m, &mut parts, &mut out);
    out.reverse();
    Ok(out)
}

// Emits partitions of `left` with parts ≤ `max_part` in descending lex order.
fn partitions_into(
    left: u32,
    max_part: u32,
    slots: usize,
    parts: &mut Vec<u32>,
    out: &mut Vec<PhotonPattern>,
) {
    if left == 0 {
        out.push(PhotonPattern {
            parts: parts.clone(),
        });
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=max_part.min(left)).rev() {
        parts.push(p);
        partitions_into(left - p, p, slots - 1, parts, out);
        parts.pop();
    }
}

/// Index of a single-occupancy configuration among all `C(m, n)` codewords,
/// in the canonical (descending lex) order.
pub fn codeword_rank(config: &ModeConfig) -> Result<u128> {
    if !config.is_single_occupancy() {
        return Err(Error::domain(format!("{config} is not a single-occupancy state")));
    }
    let occ = config.occupations();
    let m = occ.len();
    let mut remaining = config.photons() as u64;
    let mut index = 0u128;
    for (i, &c) in occ.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        let modes_after = (m - i - 1) as u64;
        if c == 0 {
            // Every codeword with a photon here comes first.
            index += binomial_u128(modes_after, remaining - 1).unwrap_or(u128::MAX);
        } else {
            remaining -= 1;
        }
    }
    Ok(index)
}

/// Inverse of [`codeword_rank`].
pub fn codeword_unrank(m: usize, n: usize, index: u128) -> Result<ModeConfig> {
    let c = num_codewords(m, n)?;
    if index >= c {
        return Err(Error::domain(format!(
            "codeword index {index} out of range for C({m}, {n}) = {c}"
        )));
    }
    let mut occ = vec![0u32; m];
    let mut remaining = n as u64;
    let mut index = index;
    for (i, slot) in occ.iter_mut().enumerate() {
        if remaining == 0 {
            break;
        }
        let modes_after = (m - i - 1) as u64;
        let with_photon = binomial_u128(modes_after, remaining - 1).unwrap_or(u128::MAX);
        if index < with_photon {
            *slot = 1;
            remaining -= 1;
        } else {
            index -= with_photon;
        }
    }
    ModeConfig::new(occ)
}

/// Publicly announced subset of single-occupancy configurations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeBook {
    m: usize,
    n: usize,
    codewords: Vec<ModeConfig>,
}

impl CodeBook {
    /// Builds a code book from explicit codewords.
    pub fn from_codewords(m: usize, n: usize, codewords: Vec<ModeConfig>) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::domain("a code book needs at least one codeword"));
        }
        for w in &codewords {
            if w.modes() != m || w.photons() != n || !w.is_single_occupancy() {
                return Err(Error::domain(format!(
                    "{w} is not a single-occupancy state of {n} photons over {m} modes"
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        if !codewords.iter().all(|w| seen.insert(w)) {
            return Err(Error::domain("duplicate codewords"));
        }
        Ok(Self { m, n, codewords })
    }

    /// The complete code book of all `C(m, n)` codewords.
    pub fn full(m: usize, n: usize) -> Result<Self> {
        let c = num_codewords(m, n)?;
        if c > DEFAULT_CODEBOOK_CAP as u128 {
            return Err(Error::resource(format!(
                "C({m}, {n}) = {c} exceeds the code book cap {DEFAULT_CODEBOOK_CAP}"
            )));
        }
        let codewords = (0..c)
            .map(|i| codeword_unrank(m, n, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { m, n, codewords })
    }

    pub fn modes(&self) -> usize {
        self.m
    }

    pub fn photons(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn codewords(&self) -> &[ModeConfig] {
        &self.codewords
    }

    pub fn get(&self, x: usize) -> Option<&ModeConfig> {
        self.codewords.get(x)
    }

    /// Message index of a codeword, if it belongs to the book.
    pub fn index_of(&self, config: &ModeConfig) -> Option<usize> {
        self.codewords.iter().position(|w| w == config)
    }
}

/// `M = max(1, round(ξ·C))` under the stated rounding rule.
pub fn codebook_size(m: usize, n: usize, xi: f64) -> Result<u128> {
    check_xi(xi)?;
    let c = num_codewords(m, n)?;
    Ok(((xi * c as f64).round() as u128).clamp(1, c))
}

fn check_xi(xi: f64) -> Result<()> {
    if !(xi > 0.0 && xi <= 1.0) {
        return Err(Error::domain(format!("code space fraction ξ = {xi} outside (0, 1]")));
    }
    Ok(())
}

/// Samples `M = max(1, round(ξ·C))` distinct codewords uniformly without
/// replacement. Codewords are returned in canonical order.
pub fn sample_codebook<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    xi: f64,
    rng: &mut R,
) -> Result<CodeBook> {
    let size = codebook_size(m, n, xi)?;
    let c = num_codewords(m, n)?;
    if size > DEFAULT_CODEBOOK_CAP as u128 || c > usize::MAX as u128 {
        return Err(Error::resource(format!(
            "code book of {size} words out of C = {c} exceeds the cap {DEFAULT_CODEBOOK_CAP}"
        )));
    }
    let mut picked = rand::seq::index::sample(rng, c as usize, size as usize).into_vec();
    picked.sort_unstable();
    let codewords = picked
        .into_iter()
        .map(|i| codeword_unrank(m, n, i as u128))
        .collect::<Result<Vec<_>>>()?;
    Ok(CodeBook { m, n, codewords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn cfg(v: &[u32]) -> ModeConfig {
        ModeConfig::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_hilbert(4, 3).unwrap(), 20);
        assert_eq!(dim_hilbert(7, 0).unwrap(), 1);
        assert!(dim_hilbert(0, 3).is_err());
        assert_eq!(num_codewords(4, 2).unwrap(), 6);
        assert_eq!(num_codewords(4, 1).unwrap(), 4);
        assert_eq!(num_codewords(9, 9).unwrap(), 1);
        assert!(matches!(num_codewords(3, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(
            enumerate_basis(2, 2).unwrap(),
            vec![cfg(&[2, 0]), cfg(&[1, 1]), cfg(&[0, 2])]
        );
        assert_eq!(
            enumerate_basis(3, 1).unwrap(),
            vec![cfg(&[1, 0, 0]), cfg(&[0, 1, 0]), cfg(&[0, 0, 1])]
        );
        assert_eq!(enumerate_basis(6, 2).unwrap().len(), 21);
        assert_eq!(enumerate_basis(1, 4).unwrap(), vec![cfg(&[4])]);
        assert_eq!(enumerate_basis(3, 0).unwrap(), vec![cfg(&[0, 0, 0])]);
    }

    #[test]
    fn basis_cap_is_a_resource_error() {
        assert!(matches!(
            enumerate_basis_capped(6, 2, 20),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&cfg(&[2, 0])).unwrap(), 0);
        assert_eq!(unrank(2, 2, 2).unwrap(), cfg(&[0, 2]));
        assert!(matches!(unrank(2, 2, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn patterns() {
        assert_eq!(pattern_of(&cfg(&[0, 1, 2, 0])).parts(), &[2, 1]);
        assert_eq!(pattern_of(&cfg(&[1, 1, 1, 0])).parts(), &[1, 1, 1]);
        assert_eq!(pattern_of(&cfg(&[3, 0, 0, 0])).parts(), &[3]);
        let p = enumerate_patterns(4, 3).unwrap();
        let names: Vec<String> = p.iter().map(|q| q.dashed()).collect();
        assert_eq!(names, ["1-1-1", "2-1", "3"]);
        // at most m parts
        let p = enumerate_patterns(2, 3).unwrap();
        let names: Vec<String> = p.iter().map(|q| q.dashed()).collect();
        assert_eq!(names, ["2-1", "3"]);
        assert_eq!(PhotonPattern::new([1, 1]).subspace_dim(6), Some(15));
        assert_eq!(PhotonPattern::new([2]).subspace_dim(6), Some(6));
        assert_eq!(PhotonPattern::new([2, 1]).subspace_dim(4), Some(12));
    }

    #[test]
    fn pattern_parsing() {
        let p: PhotonPattern = "(1,2,0,0)".parse().unwrap();
        assert_eq!(p.dashed(), "2-1");
        assert_eq!("3".parse::<PhotonPattern>().unwrap(), PhotonPattern::bunched(3));
        assert_eq!(p.padded(4), "(2,1,0,0)");
        assert!("a-1".parse::<PhotonPattern>().is_err());
        assert!("".parse::<PhotonPattern>().is_err());
        assert!(p.validate(4, 3).is_ok());
        assert!(p.validate(1, 3).is_err());
        assert!(p.validate(4, 2).is_err());
    }

    #[test]
    fn codeword_order_matches_basis_order() {
        let ones: Vec<ModeConfig> = enumerate_basis(5, 3)
            .unwrap()
            .into_iter()
            .filter(ModeConfig::is_single_occupancy)
            .collect();
        assert_eq!(ones.len(), 10);
        for (i, w) in ones.iter().enumerate() {
            assert_eq!(codeword_unrank(5, 3, i as u128).unwrap(), *w);
            assert_eq!(codeword_rank(w).unwrap(), i as u128);
        }
    }

    #[test]
    fn codebook_sampling() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let full = sample_codebook(4, 2, 1.0, &mut rng).unwrap();
        assert_eq!(full, CodeBook::full(4, 2).unwrap());
        let half = sample_codebook(4, 2, 0.5, &mut rng).unwrap();
        assert_eq!(half.len(), 3);
        assert!(half.codewords().iter().all(ModeConfig::is_single_occupancy));
        let a = sample_codebook(
            6,
            3,
            0.3,
            &mut rand_chacha::ChaCha8Rng::seed_from_u64(11),
        )
        .unwrap();
        let b = sample_codebook(
            6,
            3,
            0.3,
            &mut rand_chacha::ChaCha8Rng::seed_from_u64(11),
        )
        .unwrap();
        assert_eq!(a, b);
        // tiny fractions still give one codeword
        assert_eq!(codebook_size(4, 2, 1e-9).unwrap(), 1);
        assert!(sample_codebook(3, 4, 0.5, &mut rng).is_err());
        assert!(sample_codebook(4, 2, 0.0, &mut rng).is_err());
    }
}
