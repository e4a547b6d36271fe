//! Seeded random games for verification and benchmarking.
//!
//! All generators draw from ChaCha8 seeded with [`rand::SeedableRng::seed_from_u64`],
//! so a seed identifies the same games on every platform.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::game::WeightedVotingGame;

pub type GameRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GameRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A game with `n` players, weights uniform in `weights` and quota uniform in
/// `[1, w(P)]`. Weight vectors summing to zero are redrawn.
pub fn random_game(rng: &mut GameRng, n: usize, weights: RangeInclusive<u64>) -> WeightedVotingGame {
    assert!(n >= 1 && *weights.end() >= 1, "no valid game with these parameters");
    loop {
        let w: Vec<u64> = (0..n).map(|_| rng.gen_range(weights.clone())).collect();
        let total: u64 = w.iter().sum();
        if total == 0 {
            continue;
        }
        let q = rng.gen_range(1..=total);
        return WeightedVotingGame::new(q, w).expect("quota drawn within range");
    }
}

/// `count` games with player counts uniform in `1..=max_n`.
pub fn random_games(count: usize, max_n: usize, weights: RangeInclusive<u64>, seed: u64) -> Vec<WeightedVotingGame> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            random_game(&mut rng, n, weights.clone())
        })
        .collect()
}

/// Benchmark families. Both use the simple-majority quota `floor(w(P)/2) + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameFamily {
    /// Weights uniform in `[1, max_weight]`: few distinct sums, so coefficient
    /// lists stay near `q` long.
    DenseWeights { max_weight: u64 },
    /// Weights uniform in `[1, 2^bits)`: almost every coalition has its own
    /// sum, so each half holds close to `2^{n/2}` coefficients.
    DistinctSums { bits: u32 },
}

impl GameFamily {
    pub const DEFAULT_DENSE_MAX_WEIGHT: u64 = 500;
    pub const DEFAULT_DISTINCT_BITS: u32 = 40;

    pub fn name(&self) -> &'static str {
        match self {
            Self::DenseWeights { .. } => "dense-weights",
            Self::DistinctSums { .. } => "distinct-sums",
        }
    }

    pub fn weight_range(&self) -> RangeInclusive<u64> {
        match *self {
            Self::DenseWeights { max_weight } => 1..=max_weight.max(1),
            Self::DistinctSums { bits } => 1..=((1u64 << bits.clamp(1, 56)) - 1),
        }
    }

    pub fn game(&self, n: usize, rng: &mut GameRng) -> WeightedVotingGame {
        let range = self.weight_range();
        let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(range.clone())).collect();
        majority_game(weights)
    }
}

impl fmt::Display for GameFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GameFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dense-weights" => Ok(Self::DenseWeights { max_weight: Self::DEFAULT_DENSE_MAX_WEIGHT }),
            "distinct-sums" => Ok(Self::DistinctSums { bits: Self::DEFAULT_DISTINCT_BITS }),
            _ => Err(format!("unknown game family `{s}`")),
        }
    }
}

/// `[floor(w(P)/2) + 1; weights]`. Panics if every weight is zero.
pub fn majority_game(weights: Vec<u64>) -> WeightedVotingGame {
    let total: u64 = weights.iter().sum();
    WeightedVotingGame::new(total / 2 + 1, weights).expect("positive total weight")
}
