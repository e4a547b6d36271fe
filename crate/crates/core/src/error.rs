use thiserror::Error;

/// Errors raised by game construction, generating-function arithmetic and the
/// solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a weighted voting game needs at least one player")]
    EmptyPlayerSet,
    #[error("quota {quota} is outside [1, {total_weight}]")]
    QuotaOutOfRange { quota: i128, total_weight: u128 },
    #[error("player {player} has negative weight {weight}")]
    NegativeWeight { player: usize, weight: i128 },
    #[error("weight {weight} of player {player} does not fit in 64 bits")]
    WeightTooLarge { player: usize, weight: i128 },
    #[error("total weight of all players does not fit in 64 bits")]
    TotalWeightOverflow,
    #[error("player index {index} is outside 1..={players}")]
    IndexOutOfRange { index: usize, players: usize },
    #[error("player {player} is not a member of the coalition")]
    PlayerNotInCoalition { player: usize },
    #[error("expected {expected} counts, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("count for player {player} exceeds 2^(n-1)")]
    CountOutOfRange { player: usize },
    #[error("all critical counts are zero; normalized indices are undefined")]
    AllZeroCounts,
    #[error("sequence `{name}` is not sorted ascending")]
    NotSorted { name: &'static str },
    #[error("generating function is not divisible by (1 + x^{weight})")]
    NotDivisible { weight: u64 },
    #[error("dividing by a zero-weight factor left an odd coefficient at power {power}")]
    ZeroWeightDivisor { power: u64 },
    #[error("naive enumeration refused: {players} players exceeds the cap of {cap}")]
    TooManyPlayersForOracle { players: usize, cap: usize },
    #[error("dense table for quota {quota} needs ~{required} bytes, cap is {cap}")]
    QuotaTooLargeForDenseTable { quota: u64, required: u128, cap: u128 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
