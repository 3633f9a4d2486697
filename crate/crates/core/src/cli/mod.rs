//! The `qdl-lab` command-line front end.
//!
//! Every command writes CSV preceded by a `# qdl-lab v<version> cmd=<name>
//! seed=<seed>` line, to `--out` or stdout. Exit codes: 0 success, 2 usage
//! or domain error, 3 cache miss, 4 resource cap, 1 anything else.

mod config;
pub mod svg;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{self, Branch};
use crate::fock::{self, PhotonPattern};
use crate::mc::{self, CacheKind, CacheRecord, GammaCache, McOptions};
use crate::protocol::{self, ProtocolConfig};
use crate::reference::{self, TableId};
use crate::rng;
use crate::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Tables whose summed cost `samples · n · 2ⁿ` exceeds this need
/// `--accept-long`.
pub const LONG_RUN_COST: f64 = 1e11;
const PILOT_SAMPLES: usize = 1000;

#[derive(Debug, Parser)]
#[command(name = "qdl-lab", version, about = "Multiphoton quantum data locking toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// RNG seed; a fresh one is drawn and printed when absent.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (0 = all cores, 1 = sequential).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Write CSV here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cache CSV read on top of the shipped cache; `estimate` appends to it.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Monte Carlo sample count.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Allow long-running table reproductions.
    #[arg(long, global = true)]
    pub accept_long: bool,
    /// key=value file supplying defaults for any long flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo estimates of c_q or 2γ_q.
    Estimate(EstimateArgs),
    /// Key size K_ε for a single use, ν uses, or the m = n³ sweep.
    Keysize(KeysizeArgs),
    /// Rate-loss curve: best net rate per mode against transmissivity.
    Rate(RateArgs),
    /// End-to-end protocol simulation.
    Simulate(SimulateArgs),
    /// Reproduce a reference table with our estimates alongside.
    Tables(TablesArgs),
    /// Hilbert-space and code-book sizes.
    Dim(DimArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EstimateKind {
    C,
    Gamma,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(value_enum)]
    pub kind: EstimateKind,
    pub m: usize,
    pub n: usize,
    /// Occupancy pattern such as `2-1`.
    #[arg(long, conflicts_with = "all_patterns")]
    pub q: Option<String>,
    /// Every pattern of (m, n); the default when --q is absent.
    #[arg(long)]
    pub all_patterns: bool,
    /// Draw full m×m unitaries instead of only the needed columns.
    #[arg(long)]
    pub full_unitary: bool,
}

#[derive(Debug, Args)]
pub struct KeysizeArgs {
    #[arg(required_unless_present = "fig2")]
    pub m: Option<usize>,
    #[arg(required_unless_present = "fig2")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0.01)]
    pub xi: f64,
    #[arg(long = "eps", default_value_t = 1e-10)]
    pub epsilon: f64,
    /// `no-collision` (2(n+1)), `cache`, or a literal 2γ value.
    #[arg(long, default_value = "no-collision")]
    pub gamma: String,
    /// `no-collision` (n!/mⁿ), `conjectured` (1/d), or a literal value.
    /// Defaults to match --gamma.
    #[arg(long)]
    pub c_min: Option<String>,
    /// Channel uses for the multi-use bound.
    #[arg(long)]
    pub nu: Option<u64>,
    /// Sweep n with m = n³ and no-collision parameters.
    #[arg(long)]
    pub fig2: bool,
    /// ε = 2^(−n^s) in the sweep; without it the sweep uses --eps.
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long, default_value_t = 30)]
    pub n_max: usize,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    /// Mode counts, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [10usize, 20, 30, 40])]
    pub m: Vec<usize>,
    /// `start:stop:step` or a comma-separated list.
    #[arg(long, default_value = "0.5:1:0.05")]
    pub eta: String,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// SVG chart path; defaults to the --out path with an .svg extension.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub m: usize,
    pub n: usize,
    /// Pool size.
    #[arg(long = "K", alias = "k", default_value_t = 16)]
    pub pool: usize,
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub xi: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Per-trial CSV transcript.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// I, II, III, IV or V.
    pub which: String,
}

#[derive(Debug, Args)]
pub struct DimArgs {
    pub m: usize,
    pub n: usize,
}

/// Entry point used by the binary.
pub fn main() -> ExitCode {
    let mut args: Vec<OsString> = std::env::args_os().collect();
    if let Some(path) = config::config_path(&args) {
        if let Err(e) = config::merge(&mut args, Path::new(&path)) {
            eprintln!("qdl-lab: {e}");
            return ExitCode::from(2);
        }
    }
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qdl-lab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Parse(_) => 2,
        Error::CacheMiss { .. } => 3,
        Error::Resource(_) => 4,
        Error::Io { .. } | Error::Csv(_) => 1,
    }
}

struct Ctx {
    seed: u64,
    global: GlobalArgs,
}

impl Ctx {
    fn header(&self, cmd: &str) -> String {
        format!("# qdl-lab v{VERSION} cmd={cmd} seed={}\n", self.seed)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.global.out {
            Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path, e)),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| Error::io("<stdout>", e))
            }
        }
    }

    /// Shipped records plus the user cache, if any.
    fn read_cache(&self) -> Result<GammaCache> {
        let mut cache = GammaCache::shipped();
        if let Some(path) = &self.global.cache {
            cache.extend(GammaCache::load(path)?);
        }
        Ok(cache)
    }

    fn mc(&self, default_samples: usize) -> McOptions {
        McOptions::new(self.global.samples.unwrap_or(default_samples), self.seed)
            .workers(self.global.workers)
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let seed = match cli.global.seed {
        Some(s) => s,
        None => {
            let s = rng::fresh_seed();
            eprintln!("qdl-lab: no --seed given, using seed={s}");
            s
        }
    };
    let ctx = Ctx {
        seed,
        global: cli.global,
    };
    match cli.command {
        Command::Estimate(a) => cmd_estimate(&ctx, &a),
        Command::Keysize(a) => cmd_keysize(&ctx, &a),
        Command::Rate(a) => cmd_rate(&ctx, &a),
        Command::Simulate(a) => cmd_simulate(&ctx, &a),
        Command::Tables(a) => cmd_tables(&ctx, &a),
        Command::Dim(a) => cmd_dim(&ctx, &a),
    }
}

fn patterns_for(m: usize, n: usize, q: Option<&str>, all: bool) -> Result<Vec<PhotonPattern>> {
    let valid = fock::enumerate_patterns(m, n)?;
    let list = || {
        valid
            .iter()
            .map(PhotonPattern::dashed)
            .collect::<Vec<_>>()
            .join(", ")
    };
    match (q, all) {
        (None, _) | (_, true) => Ok(valid),
        (Some(s), false) => {
            let parsed: std::result::Result<PhotonPattern, _> = s.parse();
            match parsed {
                Ok(p) if valid.contains(&p) => Ok(vec![p]),
                _ => Err(Error::Domain(format!(
                    "invalid pattern `{s}` for (m, n) = ({m}, {n}); valid patterns: {}",
                    list()
                ))),
            }
        }
    }
}

fn cmd_estimate(ctx: &Ctx, a: &EstimateArgs) -> Result<()> {
    let patterns = patterns_for(a.m, a.n, a.q.as_deref(), a.all_patterns)?;
    let default = match a.kind {
        EstimateKind::C => mc::DEFAULT_C_SAMPLES,
        EstimateKind::Gamma => mc::DEFAULT_GAMMA_SAMPLES,
    };
    let mut opts = ctx.mc(default);
    if a.full_unitary {
        opts = opts.sampler(mc::Sampler::FullUnitary);
    }
    let mut records = Vec::new();
    for q in &patterns {
        let est = mc::estimate_moments(a.m, a.n, q, &opts)?;
        match a.kind {
            EstimateKind::C => {
                let base = CacheRecord {
                    m: a.m,
                    n: a.n,
                    q: q.clone(),
                    kind: CacheKind::C,
                    value: est.mean,
                    stderr: est.stderr_mean,
                    samples: est.samples,
                    seed: est.seed,
                };
                let f = q.occupation_factorial();
                let raw = CacheRecord {
                    kind: CacheKind::RawC,
                    value: est.mean * f,
                    stderr: est.stderr_mean * f,
                    ..base.clone()
                };
                records.push(base);
                records.push(raw);
            }
            EstimateKind::Gamma => {
                records.push(CacheRecord::from_gamma(&mc::gamma_record(&est)));
            }
        }
    }
    let mut out = ctx.header("estimate");
    out.push_str(mc::CACHE_HEADER);
    out.push('\n');
    for r in &records {
        out.push_str(&r.fields().join(","));
        out.push('\n');
    }
    if let Some(path) = &ctx.global.cache {
        GammaCache::append_to(path, &records)?;
    }
    ctx.emit(&out)
}

enum GammaSource {
    NoCollision,
    Cache,
    Literal(f64),
}

fn parse_gamma(s: &str) -> Result<GammaSource> {
    match s {
        "no-collision" => Ok(GammaSource::NoCollision),
        "cache" => Ok(GammaSource::Cache),
        lit => lit.parse().map(GammaSource::Literal).map_err(|_| {
            Error::Domain(format!(
                "--gamma must be no-collision, cache or a number, got `{lit}`"
            ))
        }),
    }
}

fn log2_c_min_for(m: usize, n: usize, spec: &str) -> Result<f64> {
    match spec {
        "no-collision" => mc::log2_no_collision_c_min(m, n),
        "conjectured" => mc::log2_conjectured_c_min(m, n),
        lit => {
            let v: f64 = lit.parse().map_err(|_| {
                Error::Domain(format!(
                    "--c-min must be no-collision, conjectured or a number, got `{lit}`"
                ))
            })?;
            Ok(v.log2())
        }
    }
}

fn cmd_keysize(ctx: &Ctx, a: &KeysizeArgs) -> Result<()> {
    if a.fig2 {
        return keysize_sweep(ctx, a);
    }
    let (m, n) = (a.m.unwrap_or(0), a.n.unwrap_or(0));
    let source = parse_gamma(&a.gamma)?;
    let (gamma, default_c_min) = match source {
        GammaSource::NoCollision => (mc::no_collision_values(m, n)?.1, "no-collision"),
        GammaSource::Cache => (ctx.read_cache()?.gamma_bound(m, n)?.value, "conjectured"),
        GammaSource::Literal(g) => (g, "conjectured"),
    };
    let log2_c_min = log2_c_min_for(m, n, a.c_min.as_deref().unwrap_or(default_c_min))?;
    let report = match a.nu {
        Some(nu) => bounds::k_epsilon_multi(m, n, nu, a.xi, a.epsilon, gamma, log2_c_min)?,
        None => {
            let log2_m = bounds::log2_codebook_size(m, n, a.xi)?;
            bounds::k_epsilon_single(m, n, log2_m, a.epsilon, gamma, log2_c_min)?
        }
    };
    let mut out = ctx.header("keysize");
    out.push_str(
        "m,n,nu,xi,epsilon,gamma,log2_c_min,log2_M,log2_K_eps,branch,log2_maurer,log2_chernoff,margin\n",
    );
    let _ = writeln!(
        out,
        "{m},{n},{},{},{},{},{:.6},{:.6},{:.6},{},{:.6},{:.6},{:.6}",
        report.inputs.nu,
        a.xi,
        a.epsilon,
        gamma,
        log2_c_min,
        report.log2_m,
        report.log2_k_epsilon,
        report.active_branch,
        report.log2_maurer,
        report.log2_chernoff,
        report.margin()
    );
    let verdict = if report.margin() > 0.0 {
        "message longer than key"
    } else {
        "key longer than message"
    };
    eprintln!(
        "log2 M = {:.2}, log2 K_eps = {:.2} ({} branch), margin {:.2}: {verdict}",
        report.log2_m,
        report.log2_k_epsilon,
        report.active_branch,
        report.margin()
    );
    if report.active_branch == Branch::Chernoff && a.nu.is_none() {
        eprintln!("note: the Chernoff branch dominates; γ does not affect K_eps here");
    }
    ctx.emit(&out)
}

fn keysize_sweep(ctx: &Ctx, a: &KeysizeArgs) -> Result<()> {
    let mut out = ctx.header("keysize");
    out.push_str("n,m,epsilon,log2_M,log2_K_eps,margin\n");
    for n in 1..=a.n_max {
        let row = match a.s {
            Some(s) => bounds::fig2_row(n, s, a.xi)?,
            None => bounds::fig2_row_with_epsilon(n, a.epsilon, a.xi)?,
        };
        let _ = writeln!(
            out,
            "{},{},{:e},{:.6},{:.6},{:.6}",
            row.n,
            row.m,
            row.epsilon,
            row.log2_m,
            row.log2_k_epsilon,
            row.log2_m - row.log2_k_epsilon
        );
    }
    ctx.emit(&out)
}

/// `start:stop:step` (inclusive, integer-indexed) or a comma list.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::Domain(format!("bad grid `{s}`: use start:stop:step or a,b,c"));
    let grid: Vec<f64> = if s.contains(':') {
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let [start, stop, step] = parts[..] else {
            return Err(bad());
        };
        if !(step > 0.0) || stop < start {
            return Err(bad());
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize;
        (0..=count).map(|i| (start + i as f64 * step).min(stop)).collect()
    } else {
        s.split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?
    };
    if grid.is_empty() {
        return Err(bad());
    }
    Ok(grid)
}

fn cmd_rate(ctx: &Ctx, a: &RateArgs) -> Result<()> {
    let grid = parse_grid(&a.eta)?;
    let cache = ctx.read_cache()?;
    let missing = bounds::missing_rate_inputs(&a.m, &cache);
    if !missing.is_empty() {
        eprintln!(
            "qdl-lab: run `qdl-lab estimate gamma <m> <n> --q <n> --cache <file>` for each missing entry"
        );
        return Err(Error::CacheMiss { missing });
    }
    let mut out = ctx.header("rate");
    out.push_str("m,eta,best_n,two_gamma,rate,rate_per_mode\n");
    let mut series = Vec::new();
    for &m in &a.m {
        let curve =
            bounds::rate_loss_curve(m, &grid, a.beta, &cache, &bounds::default_candidates(m))?;
        for p in &curve {
            let _ = writeln!(
                out,
                "{},{},{},{},{:.6},{:.6}",
                p.m, p.eta, p.best_n, p.gamma, p.rate, p.rate_per_mode
            );
        }
        series.push(svg::Series {
            label: format!("m = {m}"),
            points: curve.iter().map(|p| (p.eta, p.rate_per_mode)).collect(),
        });
    }
    let svg_path = a
        .svg
        .clone()
        .or_else(|| ctx.global.out.as_ref().map(|p| p.with_extension("svg")));
    if let Some(path) = svg_path {
        let chart = svg::line_chart(
            &format!("Net rate per mode, beta = {}", a.beta),
            "transmissivity eta",
            "bits per mode",
            &series,
        );
        std::fs::write(&path, chart).map_err(|e| Error::io(&path, e))?;
    }
    ctx.emit(&out)
}

fn cmd_simulate(ctx: &Ctx, a: &SimulateArgs) -> Result<()> {
    let config = ProtocolConfig {
        xi: a.xi,
        eta: a.eta,
        workers: ctx.global.workers,
        keep_records: a.transcript.is_some(),
        ..ProtocolConfig::new(a.m, a.n, a.pool, a.trials, ctx.seed)
    };
    let summary = protocol::run_trials(&config)?;
    if let Some(path) = &a.transcript {
        summary.write_transcript(path)?;
    }
    let closed = bounds::mutual_info_lossy(a.m, a.n, a.eta)?;
    let mut out = ctx.header("simulate");
    out.push_str(
        "m,n,K,eta,xi,trials,codebook,keyed_success_rate,keyed_mi,keyed_mi_bias,lossy_mi_closed_form,blind_mi_lower_bound,blind_mi_bias\n",
    );
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6}",
        a.m,
        a.n,
        a.pool,
        a.eta,
        a.xi,
        summary.trials,
        summary.codebook_size,
        summary.keyed_success_rate,
        summary.keyed_mi,
        summary.keyed_bias,
        closed,
        summary.blind_mi,
        summary.blind_bias
    );
    if a.xi >= 1.0 {
        eprintln!(
            "keyed I = {:.4} bits vs closed form {closed:.4} (plug-in bias ≈ {:.1e})",
            summary.keyed_mi, summary.keyed_bias
        );
    }
    ctx.emit(&out)
}

/// Relative cost of one estimate: samples × n × 2ⁿ permanent steps.
pub fn estimate_cost(n: usize, samples: usize) -> f64 {
    samples as f64 * n.max(1) as f64 * (n as f64).exp2()
}

fn cmd_tables(ctx: &Ctx, a: &TablesArgs) -> Result<()> {
    let table: TableId = a.which.parse()?;
    let entries = table.entries();
    let default = if table.is_coefficient_table() {
        mc::DEFAULT_C_SAMPLES
    } else {
        mc::DEFAULT_GAMMA_SAMPLES
    };
    let opts = ctx.mc(default);
    let cost: f64 = entries.iter().map(|e| estimate_cost(e.n, opts.samples)).sum();
    if cost > LONG_RUN_COST {
        let eta = pilot_eta(&entries, &opts)?;
        eprintln!(
            "table {table}: estimated run time {} at {} samples per entry",
            format_duration(eta),
            opts.samples
        );
        if !ctx.global.accept_long {
            return Err(Error::Resource(format!(
                "table {table} is a long run (about {}); pass --accept-long or lower --samples",
                format_duration(eta)
            )));
        }
    }

    let mut out = ctx.header("tables");
    if table.is_coefficient_table() {
        out.push_str("table,m,n,q,c,c_stderr,raw_c,exact_c,printed,raw_rel_diff,samples,seed\n");
        for e in &entries {
            let est = mc::estimate_moments(e.m, e.n, &e.q, &opts)?;
            let raw = est.mean * e.q.occupation_factorial();
            let exact = mc::conjectured_c_min(e.m, e.n)?;
            let _ = writeln!(
                out,
                "{table},{},{},{},{:.6e},{:.3e},{:.6e},{:.6e},{},{:.4},{},{}",
                e.m,
                e.n,
                e.q,
                est.mean,
                est.stderr_mean,
                raw,
                exact,
                e.value,
                raw / e.value - 1.0,
                est.samples,
                est.seed
            );
        }
    } else {
        out.push_str("table,m,n,q,two_gamma,stderr,printed,z,rel_diff,samples,seed\n");
        for e in &entries {
            let rec = mc::estimate_gamma_q(e.m, e.n, &e.q, &opts)?;
            let _ = writeln!(
                out,
                "{table},{},{},{},{:.4},{:.4},{},{:.2},{:.4},{},{}",
                e.m,
                e.n,
                e.q,
                rec.two_gamma_q,
                rec.stderr,
                e.value,
                (rec.two_gamma_q - e.value) / rec.stderr,
                rec.two_gamma_q / e.value - 1.0,
                rec.samples,
                rec.seed
            );
        }
    }
    ctx.emit(&out)
}

/// Wall-clock extrapolation from a short pilot run of every entry.
fn pilot_eta(entries: &[reference::ReferenceEntry], opts: &McOptions) -> Result<f64> {
    let pilot = McOptions {
        samples: PILOT_SAMPLES,
        ..opts.clone()
    };
    let mut total = 0.0;
    for e in entries {
        let t = Instant::now();
        mc::estimate_moments(e.m, e.n, &e.q, &pilot)?;
        total += t.elapsed().as_secs_f64() * opts.samples as f64 / PILOT_SAMPLES as f64;
    }
    Ok(total)
}

fn format_duration(secs: f64) -> String {
    if secs < 120.0 {
        format!("{secs:.0} s")
    } else if secs < 7200.0 {
        format!("{:.0} min", secs / 60.0)
    } else {
        format!("{:.1} h", secs / 3600.0)
    }
}

fn cmd_dim(ctx: &Ctx, a: &DimArgs) -> Result<()> {
    let (m, n) = (a.m, a.n);
    let exact = |r: Result<u128>| r.map(|v| v.to_string()).unwrap_or_default();
    let patterns = if n <= 60 {
        fock::enumerate_patterns(m, n)?.len().to_string()
    } else {
        String::new()
    };
    let mut out = ctx.header("dim");
    out.push_str("m,n,d,C,log2_d,log2_C,patterns\n");
    let log2_c = fock::log2_num_codewords(m, n)
        .map(|v| format!("{v:.6}"))
        .unwrap_or_default();
    let _ = writeln!(
        out,
        "{m},{n},{},{},{:.6},{log2_c},{patterns}",
        exact(fock::dim_hilbert(m, n)),
        exact(fock::num_codewords(m, n)),
        fock::log2_dim_hilbert(m, n)?,
    );
    ctx.emit(&out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0.5:1:0.25").unwrap(), [0.5, 0.75, 1.0]);
        assert_eq!(parse_grid("0.5:1:0.05").unwrap().len(), 11);
        assert_eq!(*parse_grid("0.5:1:0.05").unwrap().last().unwrap(), 1.0);
        assert_eq!(parse_grid("1,0.3").unwrap(), [1.0, 0.3]);
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("a").is_err());
    }

    #[test]
    fn invalid_pattern_lists_the_valid_ones() {
        let err = patterns_for(4, 2, Some("3"), false).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("1-1") && msg.contains("2"), "{msg}");
        assert_eq!(exit_code(&err), 2);
    }

    #[test]
    fn long_run_rule() {
        let cost = |t: TableId| -> f64 {
            t.entries()
                .iter()
                .map(|e| estimate_cost(e.n, mc::DEFAULT_GAMMA_SAMPLES))
                .sum()
        };
        assert!(cost(TableId::II) < LONG_RUN_COST);
        assert!(cost(TableId::V) > LONG_RUN_COST);
    }
}
