//! Exact Banzhaf power indices for weighted voting games.
//!
//! The main entry point is [`solvers::solve`], which runs one of four exact
//! algorithms and returns a [`PowerIndexReport`] with raw swing counts and
//! both index families as exact rationals:
//!
//! ```
//! use banzhaf_core::{solve, validate_game, Algorithm, SolverOptions};
//!
//! let game = validate_game(3, &[2, 1, 1]).unwrap();
//! let report = solve(&game, Algorithm::Partition, &SolverOptions::default()).unwrap();
//! assert_eq!(report.normalized().unwrap()[0].to_string(), "3/5");
//! ```

pub mod error;
pub mod game;
pub mod gf;
pub mod index;
pub mod interval_sum;
pub mod solvers;
pub mod workload;

pub use error::{Error, Result};
pub use game::{validate_game, WeightedVotingGame};
pub use gf::{SparseGF, TruncationPolicy};
pub use index::{normalize_indices, CriticalCountVector, PowerIndexReport};
pub use solvers::{solve, Algorithm, SolveStats, SolverOptions};
