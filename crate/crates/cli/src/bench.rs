//! Empirical scaling runs over seeded game families.

use std::time::{Duration, Instant};

use banzhaf_core::solvers::{dense_table_bytes, run};
use banzhaf_core::workload::{rng, GameFamily};
use banzhaf_core::{Algorithm, CriticalCountVector, SolverOptions, WeightedVotingGame};
use serde::Serialize;

/// Default bound on coefficient-list length for the list-based algorithms.
pub const DEFAULT_LIST_CAP_TERMS: u128 = 1 << 22;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub family: GameFamily,
    pub sizes: Vec<usize>,
    pub repetitions: usize,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub opts: SolverOptions,
    pub list_cap_terms: u128,
}

impl BenchConfig {
    pub fn new(family: GameFamily, sizes: Vec<usize>, seed: u64) -> Self {
        Self {
            family,
            sizes,
            repetitions: 3,
            seed,
            algorithms: Algorithm::ALL.to_vec(),
            opts: SolverOptions::default(),
            list_cap_terms: DEFAULT_LIST_CAP_TERMS,
        }
    }
}

/// Seed of the game drawn for size `n`. Each size gets its own stream so
/// that adding or removing sizes leaves the other games unchanged.
pub fn game_seed(seed: u64, n: usize) -> u64 {
    seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn bench_game(family: GameFamily, seed: u64, n: usize) -> WeightedVotingGame {
    family.game(n, &mut rng(game_seed(seed, n)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Ran {
        #[serde(serialize_with = "as_millis")]
        median: Duration,
        #[serde(serialize_with = "as_millis")]
        min: Duration,
        peak_terms: usize,
        half_terms: Option<(usize, usize)>,
        /// Equal to the first algorithm that ran on the same game.
        agrees: bool,
    },
    Skipped {
        reason: String,
    },
    Failed {
        reason: String,
    },
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub family: &'static str,
    pub players: usize,
    pub quota: u64,
    pub game_seed: u64,
    pub algorithm: &'static str,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub repetitions: usize,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| matches!(r.outcome, Outcome::Ran { agrees: false, .. })).count()
    }

    /// Median times of `algorithm`, by player count, for rows that ran.
    pub fn medians(&self, algorithm: Algorithm) -> Vec<(usize, Duration)> {
        self.rows
            .iter()
            .filter(|r| r.algorithm == algorithm.name())
            .filter_map(|r| match r.outcome {
                Outcome::Ran { median, .. } => Some((r.players, median)),
                _ => None,
            })
            .collect()
    }

    pub fn render_table(&self) -> String {
        let mut out = format!("# seed={} repetitions={}\n", self.seed, self.repetitions);
        out.push_str(&format!(
            "{:<14} {:>4} {:>22} {:<10} {:>12} {:>12} {:>10} {:>10} {:>10}  {}\n",
            "family", "n", "quota", "algorithm", "median_ms", "min_ms", "peak", "half_a", "half_b", "status"
        ));
        for r in &self.rows {
            let (median, min, peak, ha, hb, status) = match &r.outcome {
                Outcome::Ran { median, min, peak_terms, half_terms, agrees } => (
                    format!("{:.3}", median.as_secs_f64() * 1e3),
                    format!("{:.3}", min.as_secs_f64() * 1e3),
                    peak_terms.to_string(),
                    half_terms.map_or("-".into(), |h| h.0.to_string()),
                    half_terms.map_or("-".into(), |h| h.1.to_string()),
                    if *agrees { "ok".to_owned() } else { "MISMATCH".to_owned() },
                ),
                Outcome::Skipped { reason } => dashes(format!("skipped: {reason}")),
                Outcome::Failed { reason } => dashes(format!("failed: {reason}")),
            };
            out.push_str(&format!(
                "{:<14} {:>4} {:>22} {:<10} {:>12} {:>12} {:>10} {:>10} {:>10}  {}\n",
                r.family, r.players, r.quota, r.algorithm, median, min, peak, ha, hb, status
            ));
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("bench report serializes");
        s.push('\n');
        s
    }
}

fn dashes(status: String) -> (String, String, String, String, String, String) {
    let d = || "-".to_owned();
    (d(), d(), d(), d(), d(), status)
}

/// Why `algorithm` should not be run on `game`, if anything.
pub fn skip_reason(game: &WeightedVotingGame, algorithm: Algorithm, cfg: &BenchConfig) -> Option<String> {
    let n = game.players();
    let pow2 = |k: usize| if k >= 127 { u128::MAX } else { 1u128 << k };
    let quota_terms =
        if cfg.opts.truncate_at_quota { u128::from(game.quota()) } else { u128::from(game.total_weight()) + 1 };
    match algorithm {
        Algorithm::Naive if n > cfg.opts.oracle_cap => {
            Some(format!("{n} players exceeds oracle cap {}", cfg.opts.oracle_cap))
        }
        Algorithm::GfTable if dense_table_bytes(game) > cfg.opts.dense_table_cap_bytes => {
            Some(format!("dense table needs ~{} bytes", dense_table_bytes(game)))
        }
        Algorithm::GfList if pow2(n).min(quota_terms) > cfg.list_cap_terms => {
            Some(format!("list may reach {} terms", pow2(n).min(quota_terms)))
        }
        Algorithm::Partition if pow2(n.div_ceil(2)).min(quota_terms) > cfg.list_cap_terms => {
            Some(format!("half list may reach {} terms", pow2(n.div_ceil(2)).min(quota_terms)))
        }
        _ => None,
    }
}

pub fn run_bench(cfg: &BenchConfig) -> BenchReport {
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let seed = game_seed(cfg.seed, n);
        let game = bench_game(cfg.family, cfg.seed, n);
        let mut reference: Option<CriticalCountVector> = None;
        for &alg in &cfg.algorithms {
            let outcome = match skip_reason(&game, alg, cfg) {
                Some(reason) => Outcome::Skipped { reason },
                None => measure(&game, alg, cfg, &mut reference),
            };
            rows.push(BenchRow {
                family: cfg.family.name(),
                players: n,
                quota: game.quota(),
                game_seed: seed,
                algorithm: alg.name(),
                outcome,
            });
        }
    }
    BenchReport { seed: cfg.seed, repetitions: cfg.repetitions, rows }
}

fn measure(
    game: &WeightedVotingGame,
    alg: Algorithm,
    cfg: &BenchConfig,
    reference: &mut Option<CriticalCountVector>,
) -> Outcome {
    let mut times = Vec::with_capacity(cfg.repetitions.max(1));
    let mut last = None;
    for _ in 0..cfg.repetitions.max(1) {
        let start = Instant::now();
        let result = run(game, alg, &cfg.opts);
        times.push(start.elapsed());
        match result {
            Ok(r) => last = Some(r),
            Err(e) => return Outcome::Failed { reason: e.to_string() },
        }
    }
    let (counts, stats) = last.expect("at least one repetition");
    let agrees = match reference {
        Some(r) => *r == counts,
        None => {
            *reference = Some(counts);
            true
        }
    };
    times.sort_unstable();
    Outcome::Ran {
        median: times[times.len() / 2],
        min: times[0],
        peak_terms: stats.peak_terms,
        half_terms: stats.half_terms,
        agrees,
    }
}
