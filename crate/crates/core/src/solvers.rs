//! Exact swing-count algorithms.
//!
//! * [`eta_naive`]: enumerates all `2^n` coalitions.
//! * [`eta_all_gf_table`]: dense generating-function table, `O(nq)`.
//! * [`eta_all_gf_list`]: sparse generating function of all players.
//! * [`eta_all_partitioned`]: splits the players in two halves, builds one
//!   sparse generating function per half, and combines them per player with an
//!   interval pair sum. `O(n 2^{n/2})` in general and `O(nq)` with integer
//!   weights and quota truncation.
//!
//! A player `p` is critical in `C` iff `q - w_p <= w(C \ {p}) <= q - 1`, so
//! every algorithm other than the naive one counts coalitions *without* `p`
//! whose weight falls in that window.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::WeightedVotingGame;
use crate::gf::{build_gf, divide_gf, divide_gf_with, SparseGF, TruncationPolicy, ZeroCoefficients};
use crate::index::{normalize_indices, CriticalCountVector, PowerIndexReport};
use crate::interval_sum::{
    lower_windows, prefix_sums, solve_interval_sum, sum_over_windows, upper_windows, IntervalSumInstance,
};

/// Largest game the naive enumeration accepts by default.
pub const DEFAULT_ORACLE_CAP: usize = 30;
/// Default memory budget for the dense table, in bytes (1 GiB).
pub const DEFAULT_DENSE_TABLE_CAP_BYTES: u128 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// Drop generating-function terms of power `>= q`.
    pub truncate_at_quota: bool,
    /// Keep zero quotient coefficients so that upper windows and prefix sums
    /// are computed once per half instead of once per player.
    pub share_windows: bool,
    /// Compute one count per distinct weight and reuse it for equal weights.
    pub memoize_by_weight: bool,
    /// Maximum number of players for [`eta_naive`].
    pub oracle_cap: usize,
    /// Memory budget for [`eta_all_gf_table`].
    pub dense_table_cap_bytes: u128,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            truncate_at_quota: true,
            share_windows: true,
            memoize_by_weight: true,
            oracle_cap: DEFAULT_ORACLE_CAP,
            dense_table_cap_bytes: DEFAULT_DENSE_TABLE_CAP_BYTES,
        }
    }
}

impl SolverOptions {
    /// All eight combinations of the three boolean switches, other fields
    /// copied from `self`.
    pub fn flag_combinations(&self) -> impl Iterator<Item = SolverOptions> + '_ {
        (0..8u8).map(move |bits| SolverOptions {
            truncate_at_quota: bits & 1 != 0,
            share_windows: bits & 2 != 0,
            memoize_by_weight: bits & 4 != 0,
            ..*self
        })
    }

    fn policy(&self, game: &WeightedVotingGame) -> TruncationPolicy {
        if self.truncate_at_quota {
            TruncationPolicy::at(game.quota())
        } else {
            TruncationPolicy::NONE
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Naive,
    GfTable,
    GfList,
    Partition,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Self::Naive, Self::GfTable, Self::GfList, Self::Partition];

    pub fn name(self) -> &'static str {
        match self {
            Self::Naive => "naive",
            Self::GfTable => "gf-table",
            Self::GfList => "gf-list",
            Self::Partition => "partition",
        }
    }

    /// `gf-table` when `q < 2^{n/2}` (its `O(nq)` beats the partition bound)
    /// and the table fits in the memory budget, `partition` otherwise.
    pub fn auto(game: &WeightedVotingGame, opts: &SolverOptions) -> Self {
        let half = game.players() / 2;
        let small_quota = half >= 64 || game.quota() < (1u64 << half);
        if small_quota && dense_table_bytes(game) <= opts.dense_table_cap_bytes {
            Self::GfTable
        } else {
            Self::Partition
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// Size of the coefficient storage an algorithm worked with.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Longest coefficient list or table built (0 for the naive enumeration).
    pub peak_terms: usize,
    /// Terms of the per-half generating functions (partition only).
    pub half_terms: Option<(usize, usize)>,
}

/// Counts for `game` and the statistics of the run.
pub fn run(
    game: &WeightedVotingGame,
    algorithm: Algorithm,
    opts: &SolverOptions,
) -> Result<(CriticalCountVector, SolveStats)> {
    match algorithm {
        Algorithm::Naive => eta_naive(game, opts.oracle_cap).map(|c| (c, SolveStats::default())),
        Algorithm::GfTable => gf_table(game, opts),
        Algorithm::GfList => Ok(gf_list(game, opts)),
        Algorithm::Partition => Ok(partitioned(game, opts)),
    }
}

/// Runs `algorithm` and normalizes the counts into a report.
pub fn solve(game: &WeightedVotingGame, algorithm: Algorithm, opts: &SolverOptions) -> Result<PowerIndexReport> {
    let (counts, _) = run(game, algorithm, opts)?;
    normalize_indices(counts, game.players())
}

/// Enumerates every coalition in Gray-code order and tallies, for each winning
/// one, the members whose departure makes it lose.
pub fn eta_naive(game: &WeightedVotingGame, cap: usize) -> Result<CriticalCountVector> {
    let n = game.players();
    if n > cap || n >= 64 {
        return Err(Error::TooManyPlayersForOracle { players: n, cap });
    }
    let w = game.weights();
    let q = game.quota();
    let mut counts = vec![0u64; n];
    let mut mask = 0u64;
    let mut weight = 0u64;
    for step in 0..(1u64 << n) {
        if step > 0 {
            let bit = step.trailing_zeros() as usize;
            mask ^= 1 << bit;
            if mask >> bit & 1 == 1 {
                weight += w[bit];
            } else {
                weight -= w[bit];
            }
        }
        if weight < q {
            continue;
        }
        let mut members = mask;
        while members != 0 {
            let p = members.trailing_zeros() as usize;
            members &= members - 1;
            if weight - w[p] < q {
                counts[p] += 1;
            }
        }
    }
    Ok(counts.into_iter().map(BigUint::from).collect::<Vec<_>>().into())
}

/// Dense-table generating functions.
pub fn eta_all_gf_table(game: &WeightedVotingGame, opts: &SolverOptions) -> Result<CriticalCountVector> {
    gf_table(game, opts).map(|(c, _)| c)
}

/// Sparse generating function over all players.
pub fn eta_all_gf_list(game: &WeightedVotingGame, opts: &SolverOptions) -> CriticalCountVector {
    gf_list(game, opts).0
}

/// Generating-function partitioning.
pub fn eta_all_partitioned(game: &WeightedVotingGame, opts: &SolverOptions) -> CriticalCountVector {
    partitioned(game, opts).0
}

/// Rough bytes needed for the dense table plus one quotient buffer.
pub fn dense_table_bytes(game: &WeightedVotingGame) -> u128 {
    let limbs = (game.players() / 64 + 1) as u128;
    let per_entry = std::mem::size_of::<BigUint>() as u128 + 8 * limbs;
    2 * u128::from(game.quota()) * per_entry
}

/// `lo..=hi` as the criticality window for a player of weight `w`, with the
/// lower end clamped at zero.
fn window(quota: u64, w: u64) -> (u64, u64) {
    (quota.saturating_sub(w), quota - 1)
}

fn gf_table(game: &WeightedVotingGame, opts: &SolverOptions) -> Result<(CriticalCountVector, SolveStats)> {
    let required = dense_table_bytes(game);
    let too_large =
        || Error::QuotaTooLargeForDenseTable { quota: game.quota(), required, cap: opts.dense_table_cap_bytes };
    if required > opts.dense_table_cap_bytes {
        return Err(too_large());
    }
    let q = game.quota().to_usize().ok_or_else(too_large)?;

    // a[k] = number of coalitions of weight k, for k < q.
    let mut a = vec![BigUint::zero(); q];
    a[0] = BigUint::from(1u32);
    for &w in game.weights() {
        if w == 0 {
            a.iter_mut().for_each(|v| *v <<= 1);
            continue;
        }
        let Some(w) = w.to_usize().filter(|&w| w < q) else { continue };
        for k in (w..q).rev() {
            let (lo, hi) = a.split_at_mut(k);
            hi[0] += &lo[k - w];
        }
    }

    let count_for = |buf: &mut Vec<BigUint>, w: u64| -> BigUint {
        // c[k] = number of coalitions without the player of weight k.
        buf.clone_from(&a);
        if w == 0 {
            buf.iter_mut().for_each(|v| *v >>= 1);
        } else if let Some(w) = w.to_usize().filter(|&w| w < q) {
            for k in w..q {
                let (lo, hi) = buf.split_at_mut(k);
                hi[0] -= &lo[k - w];
            }
        }
        if w == 0 {
            return BigUint::zero();
        }
        let (lo, hi) = window(game.quota(), w);
        buf[lo as usize..=hi as usize].iter().sum()
    };

    let counts = per_player(game, opts.memoize_by_weight, |players| {
        players.par_iter().map_init(Vec::new, |buf, &p| count_for(buf, game.weights()[p])).collect()
    });
    Ok((counts, SolveStats { peak_terms: q, half_terms: None }))
}

fn gf_list(game: &WeightedVotingGame, opts: &SolverOptions) -> (CriticalCountVector, SolveStats) {
    let policy = opts.policy(game);
    let full = build_gf(game.weights(), policy);
    let counts = per_player(game, opts.memoize_by_weight, |players| {
        players
            .par_iter()
            .map(|&p| {
                let w = game.weights()[p];
                let without = divide_gf(&full, w, policy).expect("factor of its own product");
                window_sum(&without, game.quota(), w)
            })
            .collect()
    });
    (counts, SolveStats { peak_terms: full.len(), half_terms: None })
}

fn window_sum(gf: &SparseGF, quota: u64, w: u64) -> BigUint {
    if w == 0 {
        return BigUint::zero();
    }
    let (lo, hi) = window(quota, w);
    let start = gf.powers().partition_point(|&k| k < lo);
    let end = gf.powers().partition_point(|&k| k <= hi);
    gf.counts()[start..end].iter().sum()
}

/// Split of the players: the first `ceil(n/2)` in input order, then the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPlan {
    /// 0-based positions of the first half.
    pub set_a: Vec<usize>,
    /// 0-based positions of the second half.
    pub set_b: Vec<usize>,
}

impl PartitionPlan {
    pub fn new(players: usize) -> Self {
        let split = players.div_ceil(2);
        Self { set_a: (0..split).collect(), set_b: (split..players).collect() }
    }
}

/// One half of the partition, seen from the side of its own players.
struct Half<'a> {
    own: &'a SparseGF,
    other: &'a SparseGF,
    /// Upper windows of `own` against `other`, when shared.
    upper: Option<Vec<usize>>,
    /// Prefix sums of `other`'s counts, when shared.
    prefix: Option<Vec<BigUint>>,
}

impl<'a> Half<'a> {
    fn new(own: &'a SparseGF, other: &'a SparseGF, quota: u64, share_windows: bool) -> Self {
        if !share_windows {
            return Self { own, other, upper: None, prefix: None };
        }
        let mut probes = 0;
        let upper = upper_windows(own.powers(), other.powers(), i128::from(quota) - 1, &mut probes);
        Self { own, other, upper: Some(upper), prefix: Some(prefix_sums(other.counts())) }
    }

    fn count(&self, game: &WeightedVotingGame, w: u64, opts: &SolverOptions) -> BigUint {
        let policy = opts.policy(game);
        let q = i128::from(game.quota());
        let (lower, upper) = (q - i128::from(w), q - 1);
        match (&self.upper, &self.prefix) {
            (Some(up), Some(prefix)) => {
                let h = divide_gf_with(self.own, w, policy, ZeroCoefficients::Retain).expect("factor of its own half");
                debug_assert_eq!(h.powers(), self.own.powers());
                if lower > upper {
                    return BigUint::zero();
                }
                let mut probes = 0;
                let low = lower_windows(h.powers(), self.other.powers(), lower, &mut probes);
                sum_over_windows(h.counts(), &low, up, prefix)
            }
            _ => {
                let h = divide_gf(self.own, w, policy).expect("factor of its own half");
                let inst = IntervalSumInstance {
                    xs: h.powers(),
                    a: h.counts(),
                    ys: self.other.powers(),
                    b: self.other.counts(),
                    lower,
                    upper,
                };
                solve_interval_sum(&inst).expect("generating functions are sorted")
            }
        }
    }
}

fn partitioned(game: &WeightedVotingGame, opts: &SolverOptions) -> (CriticalCountVector, SolveStats) {
    let plan = PartitionPlan::new(game.players());
    let policy = opts.policy(game);
    let weights_of = |set: &[usize]| set.iter().map(|&p| game.weights()[p]).collect::<Vec<_>>();
    let (gf_a, gf_b) =
        rayon::join(|| build_gf(&weights_of(&plan.set_a), policy), || build_gf(&weights_of(&plan.set_b), policy));

    let half_a = Half::new(&gf_a, &gf_b, game.quota(), opts.share_windows);
    let half_b = Half::new(&gf_b, &gf_a, game.quota(), opts.share_windows);
    let split = plan.set_a.len();

    let counts = per_player(game, opts.memoize_by_weight, |players| {
        players
            .par_iter()
            .map(|&p| {
                let half = if p < split { &half_a } else { &half_b };
                half.count(game, game.weights()[p], opts)
            })
            .collect()
    });
    let stats = SolveStats { peak_terms: gf_a.len().max(gf_b.len()), half_terms: Some((gf_a.len(), gf_b.len())) };
    (counts, stats)
}

/// Evaluates `compute` on a set of representative players and spreads the
/// results over all players. With memoization, one representative (the first
/// occurrence) per distinct weight; otherwise every player.
fn per_player<F>(game: &WeightedVotingGame, memoize: bool, compute: F) -> CriticalCountVector
where
    F: FnOnce(&[usize]) -> Vec<BigUint>,
{
    let n = game.players();
    if !memoize {
        let all: Vec<usize> = (0..n).collect();
        return compute(&all).into();
    }
    let mut first_of: HashMap<u64, usize> = HashMap::new();
    let mut reps = Vec::new();
    let slot: Vec<usize> = game
        .weights()
        .iter()
        .enumerate()
        .map(|(p, &w)| {
            *first_of.entry(w).or_insert_with(|| {
                reps.push(p);
                reps.len() - 1
            })
        })
        .collect();
    let values = compute(&reps);
    slot.into_iter().map(|s| values[s].clone()).collect::<Vec<_>>().into()
}
