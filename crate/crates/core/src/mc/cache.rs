//! Append-only CSV cache of Monte Carlo results.
//!
//! ```text
//! m,n,q,kind,value,stderr,samples,seed
//! 30,10,10,two_gamma,157.9,6.1,20000,1
//! ```
//!
//! `q` is the dash-joined pattern, `kind` one of `c`, `two_gamma`, `raw_c`.
//! When several rows share `(m, n, q, kind)` the one with the most samples
//! wins; ties go to the row appended last.

use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use super::{gamma_bound, GammaBound, GammaRecord};
use crate::fock::{self, PhotonPattern};
use crate::{Error, Result};

pub const CACHE_HEADER: &str = "m,n,q,kind,value,stderr,samples,seed";

/// The cache shipped with the crate: bunched-pattern `2γ` for
/// `m ∈ {10, 20, 30, 40}`, produced by `qdl-lab estimate gamma`.
pub const SHIPPED_CACHE: &str = include_str!("../../data/gamma_cache.csv");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CacheKind {
    C,
    TwoGamma,
    RawC,
}

impl CacheKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CacheKind::C => "c",
            CacheKind::TwoGamma => "two_gamma",
            CacheKind::RawC => "raw_c",
        }
    }
}

impl fmt::Display for CacheKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CacheKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "c" => Ok(CacheKind::C),
            "two_gamma" => Ok(CacheKind::TwoGamma),
            "raw_c" => Ok(CacheKind::RawC),
            other => Err(Error::Parse(format!("unknown cache kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CacheRecord {
    pub m: usize,
    pub n: usize,
    pub q: PhotonPattern,
    pub kind: CacheKind,
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

impl CacheRecord {
    pub fn from_gamma(rec: &GammaRecord) -> Self {
        Self {
            m: rec.m,
            n: rec.n,
            q: rec.q.clone(),
            kind: CacheKind::TwoGamma,
            value: rec.two_gamma_q,
            stderr: rec.stderr,
            samples: rec.samples,
            seed: rec.seed,
        }
    }

    /// The row as CSV fields, in header order.
    pub fn fields(&self) -> [String; 8] {
        [
            self.m.to_string(),
            self.n.to_string(),
            self.q.dashed(),
            self.kind.to_string(),
            self.value.to_string(),
            self.stderr.to_string(),
            self.samples.to_string(),
            self.seed.to_string(),
        ]
    }

    fn from_fields(row: &csv::StringRecord) -> Result<Self> {
        if row.len() != 8 {
            return Err(Error::Parse(format!(
                "cache row has {} fields, expected 8",
                row.len()
            )));
        }
        fn num<T: FromStr>(s: &str, what: &str) -> Result<T> {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad {what} `{s}` in cache row")))
        }
        Ok(Self {
            m: num(&row[0], "m")?,
            n: num(&row[1], "n")?,
            q: row[2].parse()?,
            kind: row[3].parse()?,
            value: num(&row[4], "value")?,
            stderr: num(&row[5], "stderr")?,
            samples: num(&row[6], "samples")?,
            seed: num(&row[7], "seed")?,
        })
    }

    fn label(m: usize, n: usize, q: &PhotonPattern, kind: CacheKind) -> String {
        format!("(m={m}, n={n}, q={q}, kind={kind})")
    }
}

#[derive(Clone, Debug, Default)]
pub struct GammaCache {
    records: Vec<CacheRecord>,
}

impl GammaCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The built-in cache.
    pub fn shipped() -> Self {
        Self::from_reader(SHIPPED_CACHE.as_bytes()).expect("shipped cache is well formed")
    }

    /// Reads a cache file; a missing file is an empty cache.
    pub fn load(path: &Path) -> Result<Self> {
        match File::open(path) {
            Ok(f) => Self::from_reader(f),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Self::new()),
            Err(e) => Err(Error::io(path, e)),
        }
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        let expected: Vec<&str> = CACHE_HEADER.split(',').collect();
        if headers.iter().collect::<Vec<_>>() != expected {
            return Err(Error::Parse(format!(
                "cache header must be `{CACHE_HEADER}`"
            )));
        }
        let records = rdr
            .records()
            .map(|r| CacheRecord::from_fields(&r?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { records })
    }

    /// Appends `records` to the file at `path`, writing the header first if
    /// the file is new or empty.
    pub fn append_to(path: &Path, records: &[CacheRecord]) -> Result<()> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::io(path, e))?;
        let empty = file.metadata().map_err(|e| Error::io(path, e))?.len() == 0;
        let mut out = String::new();
        if empty {
            out.push_str(CACHE_HEADER);
            out.push('\n');
        }
        for r in records {
            out.push_str(&r.fields().join(","));
            out.push('\n');
        }
        file.write_all(out.as_bytes())
            .map_err(|e| Error::io(path, e))
    }

    pub fn insert(&mut self, record: CacheRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: GammaCache) {
        self.records.extend(other.records);
    }

    pub fn records(&self) -> &[CacheRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn lookup(
        &self,
        m: usize,
        n: usize,
        q: &PhotonPattern,
        kind: CacheKind,
    ) -> Option<&CacheRecord> {
        self.records
            .iter()
            .filter(|r| r.m == m && r.n == n && r.kind == kind && &r.q == q)
            .fold(None, |best: Option<&CacheRecord>, r| match best {
                Some(b) if b.samples > r.samples => Some(b),
                _ => Some(r),
            })
    }

    /// Like [`Self::lookup`] but a miss is an error naming the record.
    pub fn require(
        &self,
        m: usize,
        n: usize,
        q: &PhotonPattern,
        kind: CacheKind,
    ) -> Result<&CacheRecord> {
        self.lookup(m, n, q, kind).ok_or_else(|| Error::CacheMiss {
            missing: vec![CacheRecord::label(m, n, q, kind)],
        })
    }

    /// Every cached `2γ_q` for `(m, n)`, one per pattern.
    pub fn gamma_records(&self, m: usize, n: usize) -> Vec<GammaRecord> {
        let Ok(patterns) = fock::enumerate_patterns(m, n) else {
            return Vec::new();
        };
        patterns
            .iter()
            .filter_map(|q| self.lookup(m, n, q, CacheKind::TwoGamma))
            .map(|r| GammaRecord {
                m: r.m,
                n: r.n,
                q: r.q.clone(),
                two_gamma_q: r.value,
                stderr: r.stderr,
                samples: r.samples,
                seed: r.seed,
            })
            .collect()
    }

    /// `γ` bound for `(m, n)` from whatever the cache holds: exhaustive when
    /// every pattern is present, otherwise the bunched pattern alone.
    pub fn gamma_bound(&self, m: usize, n: usize) -> Result<GammaBound> {
        let records = self.gamma_records(m, n);
        let bunched = PhotonPattern::bunched(n as u32);
        if !records.iter().any(|r| r.q == bunched) {
            let patterns = fock::enumerate_patterns(m, n)?;
            if !patterns.iter().all(|p| records.iter().any(|r| &r.q == p)) {
                return Err(Error::CacheMiss {
                    missing: vec![CacheRecord::label(m, n, &bunched, CacheKind::TwoGamma)],
                });
            }
        }
        gamma_bound(m, n, &records)
    }

    /// Bunched-pattern `2γ` for `(m, n)`.
    pub fn bunched_two_gamma(&self, m: usize, n: usize) -> Result<f64> {
        Ok(self
            .require(m, n, &PhotonPattern::bunched(n as u32), CacheKind::TwoGamma)?
            .value)
    }
}
