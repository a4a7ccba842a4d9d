//! Segmented sieve for `F(x) = sum_{n<=x} f(n)`, with checkpoints and
//! deviation statistics, plus a trial-division oracle.
//!
//! Each segment `[lo, hi)` is sieved by every prime `p <= sqrt(hi - 1)`:
//! first the multiples of `p^2, p^3, ...` record the exact exponent, then one
//! pass over the multiples of `p` multiplies in `eps_e` and `p^e`. Whatever
//! is left of `n` after that is 1 or a single large prime, which contributes
//! `eps_1`. Segments are independent; their running sums and statistics are
//! merged in ascending order, so the report does not depend on the number of
//! workers or on the segment size.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, isqrt, primes_up_to};
use crate::classify::classify;
use crate::error::{Error, Result};
use crate::numeric::{format_g, ApproxReal};
use crate::spec::EpsilonSpec;

pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 22;
pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;
/// `F(x) <= 0` is tracked from here on.
pub const NON_POSITIVE_FROM: u64 = 42;
/// Largest `N` accepted by [`brute_summatory`].
pub const BRUTE_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct SieveConfig {
    pub limit: u64,
    pub segment_size: usize,
    /// Ratio between consecutive geometric checkpoints.
    pub checkpoint_ratio: f64,
    pub workers: usize,
    /// Bytes of working memory the sieve may use.
    pub memory_budget: u64,
}

impl SieveConfig {
    pub fn new(limit: u64) -> Self {
        SieveConfig {
            limit,
            segment_size: DEFAULT_SEGMENT_SIZE,
            checkpoint_ratio: 0.01f64.exp(),
            workers: 1,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }

    pub fn with_segment_size(mut self, segment_size: usize) -> Self {
        self.segment_size = segment_size;
        self
    }

    pub fn with_ratio(mut self, ratio: f64) -> Self {
        self.checkpoint_ratio = ratio;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_memory_budget(mut self, bytes: u64) -> Self {
        self.memory_budget = bytes;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.limit < 2 {
            return Err(Error::Domain(format!("sieve limit must be >= 2, got {}", self.limit)));
        }
        if self.segment_size < 2 {
            return Err(Error::Domain("segment size must be >= 2".into()));
        }
        if self.checkpoint_ratio.is_nan() || self.checkpoint_ratio <= 1.0 || !self.checkpoint_ratio.is_finite() {
            return Err(Error::Domain(format!("checkpoint ratio must be > 1, got {}", self.checkpoint_ratio)));
        }
        if self.workers == 0 {
            return Err(Error::Domain("need at least one worker".into()));
        }
        Ok(())
    }

    /// Segments sieved in one parallel round.
    fn batch(&self) -> usize {
        2 * self.workers
    }

    fn segment_len(&self) -> u64 {
        (self.segment_size as u64).min(self.limit)
    }

    fn memory_needed(&self) -> u64 {
        let seg = self.segment_len();
        // i8 value + u64 smooth part + u8 exponent while sieving
        let per_segment = seg * 10;
        let primes = (isqrt(self.limit) + 1) * 8;
        let checkpoints = checkpoint_count_bound(self.limit, self.checkpoint_ratio) * 32;
        self.batch() as u64 * per_segment + primes + checkpoints
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub x: u64,
    #[serde(rename = "F")]
    pub f: i64,
    /// `(F(x) - a x) / sqrt(x)`.
    pub normalized: f64,
    /// `log x`.
    pub u: f64,
}

impl Checkpoint {
    fn new(x: u64, f: i64, a: f64) -> Self {
        Checkpoint { x, f, normalized: normalized(f, x, a), u: (x as f64).ln() }
    }
}

#[inline]
fn normalized(f: i64, x: u64, a: f64) -> f64 {
    let xf = x as f64;
    (f as f64 - a * xf) / xf.sqrt()
}

/// An extreme deviation and the smallest `x` attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub value: f64,
    pub x: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SieveReport {
    /// Identity of the sieved spec.
    pub spec: String,
    #[serde(rename = "N")]
    pub limit: u64,
    pub a: ApproxReal,
    pub b: ApproxReal,
    pub checkpoints: Vec<Checkpoint>,
    /// Sign changes of `normalized - b` over every integer `x <= N`, ignoring zeros.
    pub sign_changes: u64,
    pub min_dev: Extremum,
    pub max_dev: Extremum,
    /// Largest `X <= N` with `F(x) <= 0` for all `42 <= x <= X`; `None` when `N < 42`.
    pub non_positive_up_to: Option<u64>,
}

/// The summary record written next to the checkpoint CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportSummary {
    pub spec: serde_json::Value,
    #[serde(rename = "N")]
    pub limit: u64,
    pub a: ApproxReal,
    pub b: ApproxReal,
    pub sign_changes: u64,
    pub min_dev: Extremum,
    pub max_dev: Extremum,
    pub non_positive_up_to: Option<u64>,
}

impl SieveReport {
    pub fn summary(&self) -> ReportSummary {
        ReportSummary {
            spec: serde_json::from_str(&self.spec).unwrap_or_else(|_| serde_json::Value::String(self.spec.clone())),
            limit: self.limit,
            a: self.a,
            b: self.b,
            sign_changes: self.sign_changes,
            min_dev: self.min_dev,
            max_dev: self.max_dev,
            non_positive_up_to: self.non_positive_up_to,
        }
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary()).expect("plain data serializes")
    }

    /// The whole report, checkpoints included.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Checkpoint table with header `u,x,F,normalized`.
    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        writeln!(out, "u,x,F,normalized")?;
        for c in &self.checkpoints {
            writeln!(out, "{},{},{},{}", format_g(c.u, 10), c.x, c.f, format_g(c.normalized, 10))?;
        }
        Ok(())
    }

    pub fn csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii")
    }

    pub fn write_files(&self, csv: impl AsRef<Path>, summary: impl AsRef<Path>) -> Result<()> {
        let mut file = std::io::BufWriter::new(std::fs::File::create(csv)?);
        self.write_csv(&mut file)?;
        file.flush()?;
        std::fs::write(summary, self.summary_json() + "\n")?;
        Ok(())
    }

    pub fn final_checkpoint(&self) -> Option<&Checkpoint> {
        self.checkpoints.last()
    }

    pub fn checkpoint_at(&self, x: u64) -> Option<&Checkpoint> {
        self.checkpoints.binary_search_by_key(&x, |c| c.x).ok().map(|i| &self.checkpoints[i])
    }
}

pub fn sign_change_count(report: &SieveReport) -> u64 {
    report.sign_changes
}

/// Upper bound on the number of checkpoints, for the memory estimate.
fn checkpoint_count_bound(limit: u64, ratio: f64) -> u64 {
    ((limit as f64).ln() / ratio.ln()).ceil() as u64 + 32
}

/// Sorted distinct checkpoints: `floor(R^i)` for `0 <= i <= ceil(log N / log R)`
/// clipped to `N`, the powers of ten up to `N`, and `N` itself.
pub fn checkpoint_positions(limit: u64, ratio: f64) -> Vec<u64> {
    let step = ratio.ln();
    let count = ((limit as f64).ln() / step).ceil() as u64;
    let mut xs: Vec<u64> = (0..=count).map(|i| ((i as f64 * step).exp().floor() as u64).clamp(1, limit)).collect();
    let mut ten = 10u64;
    while ten <= limit {
        xs.push(ten);
        match ten.checked_mul(10) {
            Some(t) => ten = t,
            None => break,
        }
    }
    xs.push(limit);
    xs.sort_unstable();
    xs.dedup();
    xs
}

/// `eps_e` for every exponent that fits in a u64.
fn exponent_table(spec: &EpsilonSpec) -> [i8; 65] {
    let mut t = [0i8; 65];
    for (e, slot) in t.iter_mut().enumerate() {
        *slot = spec.epsilon_at(e as u64).get();
    }
    t
}

/// `f(n)` for `n` in `[lo, hi)`, `lo >= 1`. `primes` must cover `sqrt(hi - 1)`.
fn sieve_segment(lo: u64, hi: u64, primes: &[u64], eps: &[i8; 65]) -> Vec<i8> {
    let len = (hi - lo) as usize;
    let mut vals = vec![1i8; len];
    let mut smooth = vec![1u64; len];
    let mut exps = vec![0u8; len];
    let first_multiple = |m: u64| lo.div_ceil(m) * m;
    for &p in primes {
        if p * p >= hi {
            break;
        }
        let mut powers = [1u64; 65];
        let mut pk = p;
        let mut j = 1;
        while let Some(next) = pk.checked_mul(p).filter(|&v| v < hi) {
            pk = next;
            j += 1;
            powers[j] = pk;
            let mut m = first_multiple(pk);
            while m < hi {
                exps[(m - lo) as usize] = j as u8;
                m += pk;
            }
        }
        powers[1] = p;
        let mut m = first_multiple(p);
        while m < hi {
            let i = (m - lo) as usize;
            let e = exps[i].max(1) as usize;
            vals[i] *= eps[e];
            smooth[i] *= if e == 1 { p } else { powers[e] };
            exps[i] = 0;
            m += p;
        }
    }
    let e1 = eps[1];
    for (i, v) in vals.iter_mut().enumerate() {
        if *v != 0 && smooth[i] != lo + i as u64 {
            *v *= e1;
        }
    }
    vals
}

/// `f(1), ..., f(limit)` from the sieve.
pub fn sieve_values(spec: &EpsilonSpec, limit: u64) -> Vec<i8> {
    let primes = primes_up_to(isqrt(limit));
    sieve_segment(1, limit + 1, &primes, &exponent_table(spec))
}

#[derive(Clone, Debug)]
struct SegmentStats {
    first_sign: i8,
    last_sign: i8,
    changes: u64,
    min: Extremum,
    max: Extremum,
    first_positive: Option<u64>,
    checkpoints: Vec<Checkpoint>,
}

struct Baseline<'a> {
    a: f64,
    b: f64,
    positions: &'a [u64],
}

fn segment_stats(lo: u64, vals: &[i8], start: i64, base: &Baseline) -> SegmentStats {
    let mut stats = SegmentStats {
        first_sign: 0,
        last_sign: 0,
        changes: 0,
        min: Extremum { value: f64::INFINITY, x: 0 },
        max: Extremum { value: f64::NEG_INFINITY, x: 0 },
        first_positive: None,
        checkpoints: Vec::new(),
    };
    let hi = lo + vals.len() as u64;
    let from = base.positions.partition_point(|&x| x < lo);
    let to = base.positions.partition_point(|&x| x < hi);
    let mut marks = base.positions[from..to].iter().copied().peekable();
    let mut f = start;
    for (i, &v) in vals.iter().enumerate() {
        let x = lo + i as u64;
        f += v as i64;
        let dev = normalized(f, x, base.a) - base.b;
        if dev < stats.min.value {
            stats.min = Extremum { value: dev, x };
        }
        if dev > stats.max.value {
            stats.max = Extremum { value: dev, x };
        }
        let sign = if dev > 0.0 {
            1
        } else if dev < 0.0 {
            -1
        } else {
            0
        };
        if sign != 0 {
            if stats.last_sign == 0 {
                stats.first_sign = sign;
            } else if sign != stats.last_sign {
                stats.changes += 1;
            }
            stats.last_sign = sign;
        }
        if f > 0 && x >= NON_POSITIVE_FROM && stats.first_positive.is_none() {
            stats.first_positive = Some(x);
        }
        if marks.peek() == Some(&x) {
            marks.next();
            stats.checkpoints.push(Checkpoint::new(x, f, base.a));
        }
    }
    stats
}

#[derive(Clone, Debug)]
struct Totals {
    last_sign: i8,
    changes: u64,
    min: Extremum,
    max: Extremum,
    first_positive: Option<u64>,
    checkpoints: Vec<Checkpoint>,
}

impl Totals {
    fn absorb(&mut self, s: SegmentStats) {
        if s.first_sign != 0 {
            if self.last_sign != 0 && self.last_sign != s.first_sign {
                self.changes += 1;
            }
            self.last_sign = s.last_sign;
        }
        self.changes += s.changes;
        // strict comparisons keep the smallest x on ties
        if s.min.value < self.min.value {
            self.min = s.min;
        }
        if s.max.value > self.max.value {
            self.max = s.max;
        }
        self.first_positive = self.first_positive.or(s.first_positive);
        self.checkpoints.extend(s.checkpoints);
    }
}

trait Runner {
    fn map<T: Send, R: Send>(&self, items: Vec<T>, f: impl Fn(T) -> R + Sync + Send) -> Vec<R>;
}

struct Sequential;

impl Runner for Sequential {
    fn map<T: Send, R: Send>(&self, items: Vec<T>, f: impl Fn(T) -> R + Sync + Send) -> Vec<R> {
        items.into_iter().map(f).collect()
    }
}

#[cfg(feature = "parallel")]
struct Pool(rayon::ThreadPool);

#[cfg(feature = "parallel")]
impl Runner for Pool {
    fn map<T: Send, R: Send>(&self, items: Vec<T>, f: impl Fn(T) -> R + Sync + Send) -> Vec<R> {
        use rayon::prelude::*;
        self.0.install(|| items.into_par_iter().map(f).collect())
    }
}

/// Sieve with `a` and `b` from [`classify`].
pub fn sieve_summatory(spec: &EpsilonSpec, config: &SieveConfig) -> Result<SieveReport> {
    let c = classify(spec)?;
    sieve_summatory_with(spec, config, c.a, c.b)
}

/// Sieve against an explicit baseline: deviations are `(F(x) - a x)/sqrt(x) - b`.
pub fn sieve_summatory_with(spec: &EpsilonSpec, config: &SieveConfig, a: ApproxReal, b: ApproxReal) -> Result<SieveReport> {
    config.validate()?;
    let needed = config.memory_needed();
    if needed > config.memory_budget {
        return Err(Error::MemoryBudget { needed, budget: config.memory_budget });
    }
    #[cfg(feature = "parallel")]
    if config.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::Domain(format!("cannot start worker threads: {e}")))?;
        return run(spec, config, a, b, &Pool(pool));
    }
    run(spec, config, a, b, &Sequential)
}

fn run(spec: &EpsilonSpec, config: &SieveConfig, a: ApproxReal, b: ApproxReal, runner: &impl Runner) -> Result<SieveReport> {
    let limit = config.limit;
    let seg = config.segment_len();
    let primes = primes_up_to(isqrt(limit));
    let eps = exponent_table(spec);
    let positions = checkpoint_positions(limit, config.checkpoint_ratio);
    let base = Baseline { a: a.value, b: b.value, positions: &positions };

    let mut totals = Totals {
        last_sign: 0,
        changes: 0,
        min: Extremum { value: f64::INFINITY, x: 0 },
        max: Extremum { value: f64::NEG_INFINITY, x: 0 },
        first_positive: None,
        checkpoints: Vec::with_capacity(positions.len()),
    };
    let mut running = 0i64;
    let mut lo = 1u64;
    while lo <= limit {
        let mut ranges = Vec::with_capacity(config.batch());
        while ranges.len() < config.batch() && lo <= limit {
            let hi = lo.saturating_add(seg).min(limit + 1);
            ranges.push((lo, hi));
            lo = hi;
        }
        let sieved = runner.map(ranges, |(lo, hi)| {
            let vals = sieve_segment(lo, hi, &primes, &eps);
            let sum: i64 = vals.iter().map(|&v| v as i64).sum();
            (lo, vals, sum)
        });
        let mut jobs = Vec::with_capacity(sieved.len());
        for (lo, vals, sum) in sieved {
            jobs.push((lo, vals, running));
            running += sum;
        }
        for s in runner.map(jobs, |(lo, vals, start)| segment_stats(lo, &vals, start, &base)) {
            totals.absorb(s);
        }
    }

    let non_positive_up_to = (limit >= NON_POSITIVE_FROM).then(|| totals.first_positive.map_or(limit, |x| x - 1));
    Ok(SieveReport {
        spec: spec.identity(),
        limit,
        a,
        b,
        checkpoints: totals.checkpoints,
        sign_changes: totals.changes,
        min_dev: totals.min,
        max_dev: totals.max,
        non_positive_up_to,
    })
}

/// `F(1), ..., F(N)` from the segmented sieve, for cross-checks.
pub fn summatory_table(spec: &EpsilonSpec, config: &SieveConfig) -> Result<Vec<i64>> {
    config.validate()?;
    let needed = config.memory_needed() + config.limit * 8;
    if needed > config.memory_budget {
        return Err(Error::MemoryBudget { needed, budget: config.memory_budget });
    }
    let primes = primes_up_to(isqrt(config.limit));
    let eps = exponent_table(spec);
    let seg = config.segment_len();
    let ranges: Vec<(u64, u64)> = (0..config.limit.div_ceil(seg))
        .map(|i| (1 + i * seg, (1 + (i + 1) * seg).min(config.limit + 1)))
        .collect();
    let mut table = Vec::with_capacity(config.limit as usize);
    let mut f = 0i64;
    for vals in Sequential.map(ranges, |(lo, hi)| sieve_segment(lo, hi, &primes, &eps)) {
        for v in vals {
            f += v as i64;
            table.push(f);
        }
    }
    Ok(table)
}

/// `F(1), ..., F(limit)` by factorizing every `n`; `limit <= 10^6`.
pub fn brute_summatory(spec: &EpsilonSpec, limit: u64) -> Result<Vec<i64>> {
    if limit > BRUTE_LIMIT {
        return Err(Error::Domain(format!("brute_summatory is limited to N <= {BRUTE_LIMIT}, got {limit}")));
    }
    let mut out = Vec::with_capacity(limit as usize);
    let mut f = 0i64;
    for n in 1..=limit {
        let value: i64 = factorize(n)?.exponents().map(|e| spec.epsilon_at(e as u64).get() as i64).product();
        f += value;
        out.push(f);
    }
    Ok(out)
}
