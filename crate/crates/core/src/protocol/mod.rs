//! End-to-end simulation of the locking protocol: key selection, encoding,
//! scrambling, optional loss, keyed decoding and empirical mutual
//! information.
//!
//! Uniform photon loss commutes with any passive interferometer, and the
//! keyed receiver applies the exact inverse of the scrambling unitary, so
//! loss is applied directly to the code word. The keyed receiver then sees
//! the surviving sub-configuration of the code word.

mod mi;

use std::cell::OnceCell;
use std::io::Write;
use std::path::Path;
use std::sync::OnceLock;

use rand::Rng;

use crate::fock::{self, CodeBook, ModeConfig};
use crate::linop::{self, dagger, haar_unitary, UnitaryMatrix};
use crate::numeric::binomial_u128;
use crate::par;
use crate::rng::{self, Domain};
use crate::{Error, Result};

pub use mi::{empirical_mutual_info, plugin_bias, JointCounts};

/// Default cap on `trials × d` permanent evaluations for [`run_trials`].
pub const DEFAULT_TRIAL_BUDGET: u64 = 2_000_000_000;

/// Largest number of cached `(x, k)` output distributions.
const MAX_CACHED_DISTRIBUTIONS: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolConfig {
    pub m: usize,
    pub n: usize,
    /// Pool size `K`.
    pub pool_size: usize,
    pub xi: f64,
    pub eta: f64,
    pub trials: usize,
    pub seed: u64,
    /// 0 = automatic, 1 = sequential.
    pub workers: usize,
    /// Keep every [`TrialRecord`] in the summary.
    pub keep_records: bool,
    /// Cap on `trials × d`.
    pub budget: u64,
}

impl ProtocolConfig {
    pub fn new(m: usize, n: usize, pool_size: usize, trials: usize, seed: u64) -> Self {
        Self {
            m,
            n,
            pool_size,
            xi: 1.0,
            eta: 1.0,
            trials,
            seed,
            workers: 0,
            keep_records: false,
            budget: DEFAULT_TRIAL_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > self.m || self.m == 0 {
            return Err(Error::domain(format!(
                "need 1 ≤ m and n ≤ m, got m = {}, n = {}",
                self.m, self.n
            )));
        }
        if self.pool_size == 0 {
            return Err(Error::domain("the unitary pool needs at least one member"));
        }
        if self.trials == 0 {
            return Err(Error::domain("at least one trial is required"));
        }
        if !(self.xi > 0.0 && self.xi <= 1.0) {
            return Err(Error::domain(format!("ξ = {} outside (0, 1]", self.xi)));
        }
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(Error::domain(format!("η = {} outside [0, 1]", self.eta)));
        }
        Ok(())
    }
}

/// `K` Haar unitaries; member `k` depends only on `(seed, k)`.
pub fn gen_unitary_pool(m: usize, pool_size: usize, seed: u64) -> Result<Vec<UnitaryMatrix>> {
    if pool_size == 0 {
        return Err(Error::domain("the unitary pool needs at least one member"));
    }
    if m == 0 {
        return Err(Error::domain("the number of modes must be at least 1"));
    }
    Ok((0..pool_size)
        .map(|k| haar_unitary(m, &mut rng::stream(seed, Domain::UnitaryPool, k as u64)))
        .collect())
}

/// Alice's state `U_k |ψ_x⟩`. The output distribution is computed on first
/// use.
#[derive(Debug)]
pub struct EncodedState<'a> {
    pub x: usize,
    pub k: usize,
    codeword: &'a ModeConfig,
    unitary: &'a UnitaryMatrix,
    distribution: OnceCell<Vec<f64>>,
}

impl<'a> EncodedState<'a> {
    pub fn codeword(&self) -> &'a ModeConfig {
        self.codeword
    }

    pub fn unitary(&self) -> &'a UnitaryMatrix {
        self.unitary
    }

    /// Photodetection probabilities over the canonical basis.
    pub fn distribution(&self) -> Result<&[f64]> {
        if let Some(d) = self.distribution.get() {
            return Ok(d);
        }
        let d = linop::output_distribution(self.unitary, self.codeword)?;
        Ok(self.distribution.get_or_init(|| d))
    }
}

pub fn encode<'a>(
    x: usize,
    k: usize,
    codebook: &'a CodeBook,
    pool: &'a [UnitaryMatrix],
) -> Result<EncodedState<'a>> {
    let codeword = codebook.get(x).ok_or_else(|| {
        Error::domain(format!("message {x} outside a code book of {}", codebook.len()))
    })?;
    let unitary = pool
        .get(k)
        .ok_or_else(|| Error::domain(format!("key {k} outside a pool of {}", pool.len())))?;
    if unitary.modes() != codebook.modes() {
        return Err(Error::domain(format!(
            "pool acts on {} modes, code book has {}",
            unitary.modes(),
            codebook.modes()
        )));
    }
    Ok(EncodedState {
        x,
        k,
        codeword,
        unitary,
        distribution: OnceCell::new(),
    })
}

/// Drops each photon of a single-occupancy code word independently with
/// probability `1 − eta`; returns the surviving sub-configuration.
pub fn lossy_channel<R: Rng + ?Sized>(
    codeword: &ModeConfig,
    eta: f64,
    rng: &mut R,
) -> Result<ModeConfig> {
    if !codeword.is_single_occupancy() {
        return Err(Error::domain(format!("{codeword} is not a code word")));
    }
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::domain(format!("η = {eta} outside [0, 1]")));
    }
    let occ = codeword
        .occupations()
        .iter()
        .map(|&o| u32::from(o == 1 && (eta == 1.0 || rng.random::<f64>() < eta)))
        .collect();
    ModeConfig::new(occ)
}

/// What reaches Bob.
#[derive(Debug)]
pub struct Received<'a> {
    pub state: EncodedState<'a>,
    /// Surviving photons in the code-word frame; equal to the code word on a
    /// lossless channel.
    pub detected: ModeConfig,
}

impl<'a> Received<'a> {
    pub fn lossless(state: EncodedState<'a>) -> Self {
        let detected = state.codeword.clone();
        Self { state, detected }
    }

    pub fn is_lossless(&self) -> bool {
        self.detected.photons() == self.state.codeword.photons()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoded {
    Message(usize),
    /// Code-book indices compatible with the detection.
    Ambiguous(Vec<usize>),
}

impl Decoded {
    pub fn message(&self) -> Option<usize> {
        match self {
            Decoded::Message(x) => Some(*x),
            Decoded::Ambiguous(_) => None,
        }
    }

    /// Number of candidate messages.
    pub fn ambiguity(&self) -> usize {
        match self {
            Decoded::Message(_) => 1,
            Decoded::Ambiguous(set) => set.len(),
        }
    }
}

/// Bob's decoding with key `k`.
///
/// Lossless: undoes `U_k` and photodetects. With the right key `U_k† U_k = I`
/// and the code word is recovered with certainty; otherwise the most likely
/// outcome of `U_k† U_sent` is reported. Lossy: returns the code words whose
/// support contains every click (only the matching key is modeled).
pub fn decode_with_key(
    k: usize,
    pool: &[UnitaryMatrix],
    codebook: &CodeBook,
    received: &Received<'_>,
) -> Result<Decoded> {
    let key = pool
        .get(k)
        .ok_or_else(|| Error::domain(format!("key {k} outside a pool of {}", pool.len())))?;
    let sent = received.state.unitary;
    if key.modes() != sent.modes() {
        return Err(Error::domain("key and received state act on different mode counts"));
    }

    if !received.is_lossless() {
        if k != received.state.k {
            return Err(Error::domain(
                "lossy decoding is only defined for the key that was used",
            ));
        }
        return Ok(ambiguity_set(codebook, &received.detected));
    }

    let undo = dagger(key).compose(sent);
    let codeword = received.state.codeword;
    let outcome = if is_identity(&undo, linop::UNITARITY_TOL) {
        codeword.clone()
    } else {
        let dist = linop::output_distribution(&undo, codeword)?;
        let best = dist
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, &p)| if p > acc.1 { (i, p) } else { acc })
            .0;
        fock::unrank(codeword.modes(), codeword.photons(), best as u128)?
    };
    Ok(match codebook.index_of(&outcome) {
        Some(x) => Decoded::Message(x),
        None => Decoded::Ambiguous(Vec::new()),
    })
}

fn is_identity(u: &UnitaryMatrix, tol: f64) -> bool {
    let m = u.modes();
    (0..m).all(|i| {
        (0..m).all(|j| {
            let target = if i == j { 1.0 } else { 0.0 };
            (u.get(i, j) - num_complex::Complex64::new(target, 0.0)).norm() <= tol
        })
    })
}

fn ambiguity_set(codebook: &CodeBook, detected: &ModeConfig) -> Decoded {
    let clicks = detected.occupations();
    let set: Vec<usize> = codebook
        .codewords()
        .iter()
        .enumerate()
        .filter(|(_, w)| {
            w.occupations()
                .iter()
                .zip(clicks)
                .all(|(&have, &seen)| have >= seen)
        })
        .map(|(i, _)| i)
        .collect();
    if set.len() == 1 {
        Decoded::Message(set[0])
    } else {
        Decoded::Ambiguous(set)
    }
}

/// Photodetection of the scrambled state without the key: one sample of the
/// output distribution. A diagnostic lower bound on accessible information.
pub fn eavesdrop_photodetect<R: Rng + ?Sized>(
    state: &EncodedState<'_>,
    rng: &mut R,
) -> Result<ModeConfig> {
    let index = sample_index(state.distribution()?, rng);
    fock::unrank(state.codeword.modes(), state.codeword.photons(), index as u128)
}

fn sample_index<R: Rng + ?Sized>(dist: &[f64], rng: &mut R) -> usize {
    let total: f64 = dist.iter().sum();
    let mut u = rng.random::<f64>() * total;
    for (i, &p) in dist.iter().enumerate() {
        if u < p {
            return i;
        }
        u -= p;
    }
    // Rounding left u just above the last bin.
    dist.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: usize,
    pub x: usize,
    pub k: usize,
    pub clicks: usize,
    /// Keyed receiver's detection in the code-word frame.
    pub detected: ModeConfig,
    pub decoded: Decoded,
    /// Outcome of the key-blind photodetector.
    pub blind: ModeConfig,
}

pub const TRANSCRIPT_HEADER: &str = "trial,x,k,clicks,detected,decoded,ambiguity";

impl TrialRecord {
    /// One transcript row; `decoded` is empty when ambiguous.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.trial,
            self.x,
            self.k,
            self.clicks,
            self.detected.dashed(),
            self.decoded.message().map(|x| x.to_string()).unwrap_or_default(),
            self.decoded.ambiguity()
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialSummary {
    pub trials: usize,
    pub codebook_size: usize,
    /// Fraction of trials decoded uniquely to the sent message.
    pub keyed_success_rate: f64,
    /// Plug-in `I(X; detection)` for the keyed receiver, bits.
    pub keyed_mi: f64,
    pub keyed_bias: f64,
    /// Plug-in `I(X; outcome)` for the key-blind photodetector, bits.
    pub blind_mi: f64,
    pub blind_bias: f64,
    pub records: Vec<TrialRecord>,
}

impl TrialSummary {
    pub fn write_transcript(&self, path: &Path) -> Result<()> {
        let mut out = String::with_capacity(32 * (self.records.len() + 1));
        out.push_str(TRANSCRIPT_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        std::fs::File::create(path)
            .and_then(|mut f| f.write_all(out.as_bytes()))
            .map_err(|e| Error::io(path, e))
    }
}

struct Shard {
    successes: usize,
    keyed: JointCounts<Vec<u32>>,
    blind: JointCounts<u128>,
    records: Vec<TrialRecord>,
}

/// Runs `config.trials` independent protocol rounds.
///
/// Trials are sharded into fixed chunks with per-chunk RNG streams and merged
/// in chunk order, so the outcome does not depend on the worker count.
pub fn run_trials(config: &ProtocolConfig) -> Result<TrialSummary> {
    config.validate()?;
    let (m, n) = (config.m, config.n);
    let d = fock::dim_hilbert(m, n)?;
    let work = (config.trials as u128).saturating_mul(d);
    if work > config.budget as u128 {
        return Err(Error::resource(format!(
            "{} trials × d = {d} exceeds the budget of {} permanent evaluations",
            config.trials, config.budget
        )));
    }

    let codebook = if config.xi >= 1.0 {
        CodeBook::full(m, n)?
    } else {
        fock::sample_codebook(
            m,
            n,
            config.xi,
            &mut rng::stream(config.seed, Domain::Codebook, 0),
        )?
    };
    let pool = gen_unitary_pool(m, config.pool_size, config.seed)?;
    let pairs = codebook.len() as u64 * config.pool_size as u64;
    if pairs > MAX_CACHED_DISTRIBUTIONS {
        return Err(Error::resource(format!(
            "{pairs} (message, key) pairs exceed the cap of {MAX_CACHED_DISTRIBUTIONS}"
        )));
    }
    // Cumulative distributions per (x, k), filled on demand by any worker.
    let dists: Vec<OnceLock<Vec<f64>>> = (0..pairs).map(|_| OnceLock::new()).collect();

    let n_chunks = par::chunk_count(config.trials);
    let shards = par::map_indexed(n_chunks, config.workers, |c| -> Result<Shard> {
        let (start, end) = par::chunk_bounds(c, config.trials);
        let mut rng = rng::stream(config.seed, Domain::Trials, c as u64);
        let mut shard = Shard {
            successes: 0,
            keyed: JointCounts::new(),
            blind: JointCounts::new(),
            records: Vec::new(),
        };
        for trial in start..end {
            let x = rng.random_range(0..codebook.len());
            let k = rng.random_range(0..config.pool_size);
            let state = encode(x, k, &codebook, &pool)?;
            let detected = lossy_channel(state.codeword(), config.eta, &mut rng)?;

            let slot = &dists[x * config.pool_size + k];
            let dist = match slot.get() {
                Some(d) => d,
                None => {
                    let d = state.distribution()?.to_vec();
                    slot.get_or_init(|| d)
                }
            };
            let blind_index = sample_index(dist, &mut rng);

            let received = Received { state, detected };
            let decoded = decode_with_key(k, &pool, &codebook, &received)?;
            if decoded.message() == Some(x) {
                shard.successes += 1;
            }
            shard.keyed.add(x, received.detected.occupations().to_vec());
            shard.blind.add(x, blind_index as u128);
            if config.keep_records {
                shard.records.push(TrialRecord {
                    trial,
                    x,
                    k,
                    clicks: received.detected.photons(),
                    detected: received.detected,
                    decoded,
                    blind: fock::unrank(m, n, blind_index as u128)?,
                });
            }
        }
        Ok(shard)
    });

    let mut successes = 0;
    let mut keyed = JointCounts::new();
    let mut blind = JointCounts::new();
    let mut records = Vec::new();
    for shard in shards {
        let shard = shard?;
        successes += shard.successes;
        keyed.merge(&shard.keyed);
        blind.merge(&shard.blind);
        records.extend(shard.records);
    }
    Ok(TrialSummary {
        trials: config.trials,
        codebook_size: codebook.len(),
        keyed_success_rate: successes as f64 / config.trials as f64,
        keyed_mi: keyed.mutual_info()?,
        keyed_bias: keyed.plugin_bias(),
        blind_mi: blind.mutual_info()?,
        blind_bias: blind.plugin_bias(),
        records,
    })
}

/// `C(m − k′, n − k′)`: code words of the full book compatible with `k′`
/// clicks.
pub fn compatible_codewords(m: usize, n: usize, clicks: usize) -> Option<u128> {
    if clicks > n || n > m {
        return Some(0);
    }
    binomial_u128((m - clicks) as u64, (n - clicks) as u64)
}
