//! Argument parsing and command dispatch for the `banzhaf` binary.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use banzhaf_core::workload::{random_games, GameFamily};
use banzhaf_core::{solve, Algorithm, Error as CoreError, SolverOptions, WeightedVotingGame};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, BenchConfig, DEFAULT_LIST_CAP_TERMS};
use crate::parse::{parse_game, ParseError};
use crate::report::{render, Format};
use crate::verify::{verify, Solver};

/// Environment variable overriding the dense-table memory cap, in bytes.
pub const DENSE_CAP_ENV: &str = "BANZHAF_DENSE_TABLE_CAP_BYTES";

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const VALIDATION: i32 = 3;
    pub const MISMATCH: i32 = 4;
    pub const RESOURCE: i32 = 5;
}

#[derive(Parser, Debug)]
#[command(name = "banzhaf", version, about = "Exact Banzhaf power indices for weighted voting games")]
struct Cli {
    #[command(flatten)]
    solver: SolverArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SolverArgs {
    /// Keep generating-function terms at or above the quota.
    #[arg(long, global = true)]
    no_truncate: bool,
    /// Prune zero quotient coefficients instead of sharing window tables.
    #[arg(long, global = true)]
    no_share_windows: bool,
    /// Compute every player separately even when weights repeat.
    #[arg(long, global = true)]
    no_memoize: bool,
    /// Largest player count the naive enumeration accepts.
    #[arg(long, global = true, default_value_t = banzhaf_core::solvers::DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute power indices of one game.
    Compute {
        #[command(flatten)]
        input: GameInput,
        #[arg(long, short, value_enum, default_value_t = AlgorithmArg::Auto)]
        algorithm: AlgorithmArg,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Fractional digits of decimal renderings.
        #[arg(long, default_value_t = banzhaf_core::index::DEFAULT_DECIMAL_DIGITS)]
        digits: usize,
    },
    /// Run all algorithms on a game or on seeded random games and compare.
    Verify {
        #[command(flatten)]
        input: OptionalGameInput,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 14)]
        max_n: usize,
        /// Inclusive weight range, `lo..hi`.
        #[arg(long, default_value = "0..50", value_parser = parse_range)]
        weight_range: RangeInclusive<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the algorithms over a seeded game family.
    Bench {
        #[arg(long, default_value = "distinct-sums")]
        family: GameFamily,
        /// Player counts: `n` or the inclusive range `lo..hi`.
        #[arg(long = "n", default_value = "20..32", value_parser = parse_range)]
        sizes: RangeInclusive<u64>,
        #[arg(long, default_value_t = 2)]
        step: usize,
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest weight of the dense-weights family.
        #[arg(long, default_value_t = GameFamily::DEFAULT_DENSE_MAX_WEIGHT)]
        max_weight: u64,
        /// Weight bit width of the distinct-sums family.
        #[arg(long, default_value_t = GameFamily::DEFAULT_DISTINCT_BITS)]
        bits: u32,
        /// Comma-separated subset of naive,gf-table,gf-list,partition.
        #[arg(long, value_delimiter = ',', default_value = "naive,gf-table,gf-list,partition")]
        algorithms: Vec<Algorithm>,
        /// Longest coefficient list the list-based algorithms may build.
        #[arg(long, default_value_t = DEFAULT_LIST_CAP_TERMS)]
        list_cap: u128,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GameInput {
    /// Game file (`-` for stdin).
    path: Option<PathBuf>,
    /// Game given inline, e.g. `[3; 2, 1, 1]`.
    #[arg(long, short = 'e')]
    expr: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct OptionalGameInput {
    /// Game file (`-` for stdin); random games are generated when absent.
    path: Option<PathBuf>,
    #[arg(long, short = 'e')]
    expr: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Naive,
    GfTable,
    GfList,
    Partition,
    Auto,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let bad = |_| format!("expected `n` or `lo..hi`, got `{s}`");
    let range = match s.split_once("..") {
        Some((lo, hi)) => lo.trim().parse().map_err(bad)?..=hi.trim().trim_start_matches('=').parse().map_err(bad)?,
        None => {
            let n = s.trim().parse().map_err(bad)?;
            n..=n
        }
    };
    if range.is_empty() {
        return Err(format!("empty range `{s}`"));
    }
    Ok(range)
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Self { code: exit::VALIDATION, message: e.to_string() }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::TooManyPlayersForOracle { .. } | CoreError::QuotaTooLargeForDenseTable { .. } => exit::RESOURCE,
            _ => exit::VALIDATION,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self { code: exit::USAGE, message: e.to_string() }
    }
}

/// Runs the command line `args` (including the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::SUCCESS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn solver_options(args: &SolverArgs) -> Result<SolverOptions, Failure> {
    let mut opts = SolverOptions {
        truncate_at_quota: !args.no_truncate,
        share_windows: !args.no_share_windows,
        memoize_by_weight: !args.no_memoize,
        oracle_cap: args.oracle_cap,
        ..SolverOptions::default()
    };
    if let Ok(v) = std::env::var(DENSE_CAP_ENV) {
        opts.dense_table_cap_bytes = v.trim().parse().map_err(|_| Failure {
            code: exit::USAGE,
            message: format!("{DENSE_CAP_ENV} must be a byte count, got `{v}`"),
        })?;
    }
    Ok(opts)
}

fn read_game(path: Option<&PathBuf>, expr: Option<&String>) -> Result<WeightedVotingGame, Failure> {
    let text = match (path, expr) {
        (_, Some(e)) => e.clone(),
        (Some(p), None) if p.as_os_str() == "-" => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
        (Some(p), None) => std::fs::read_to_string(p)
            .map_err(|e| Failure { code: exit::USAGE, message: format!("{}: {e}", p.display()) })?,
        (None, None) => unreachable!("clap requires a game source"),
    };
    Ok(parse_game(&text)?)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let opts = solver_options(&cli.solver)?;
    match cli.command {
        Command::Compute { input, algorithm, format, digits } => {
            let game = read_game(input.path.as_ref(), input.expr.as_ref())?;
            let algorithm = match algorithm {
                AlgorithmArg::Naive => Algorithm::Naive,
                AlgorithmArg::GfTable => Algorithm::GfTable,
                AlgorithmArg::GfList => Algorithm::GfList,
                AlgorithmArg::Partition => Algorithm::Partition,
                AlgorithmArg::Auto => Algorithm::auto(&game, &opts),
            };
            let report = solve(&game, algorithm, &opts)?.with_decimal_digits(digits);
            out.write_all(render(&game, algorithm, &report, format).as_bytes())?;
            Ok(exit::SUCCESS)
        }
        Command::Verify { input, count, max_n, weight_range, seed } => {
            let games = match (input.path.as_ref(), input.expr.as_ref()) {
                (None, None) => {
                    if max_n == 0 || max_n > opts.oracle_cap {
                        return Err(Failure {
                            code: exit::USAGE,
                            message: format!("--max-n must be in 1..={}", opts.oracle_cap),
                        });
                    }
                    if *weight_range.end() == 0 {
                        return Err(Failure {
                            code: exit::USAGE,
                            message: "weight range must allow a positive weight".into(),
                        });
                    }
                    random_games(count, max_n, weight_range, seed)
                }
                (path, expr) => vec![read_game(path, expr)?],
            };
            let summary = verify(&games, &Solver::standard(opts));
            write!(out, "{summary}")?;
            Ok(if summary.passed() { exit::SUCCESS } else { exit::MISMATCH })
        }
        Command::Bench { family, sizes, step, repetitions, seed, max_weight, bits, algorithms, list_cap, format } => {
            let family = match family {
                GameFamily::DenseWeights { .. } => GameFamily::DenseWeights { max_weight },
                GameFamily::DistinctSums { .. } => GameFamily::DistinctSums { bits },
            };
            let sizes: Vec<usize> = sizes.step_by(step.max(1)).map(|n| n as usize).filter(|&n| n >= 1).collect();
            let mut cfg = BenchConfig::new(family, sizes, seed);
            cfg.repetitions = repetitions;
            cfg.algorithms = algorithms;
            cfg.opts = opts;
            cfg.list_cap_terms = list_cap;
            let report = run_bench(&cfg);
            let text = match format {
                Format::Table => report.render_table(),
                Format::Json => report.render_json(),
            };
            out.write_all(text.as_bytes())?;
            Ok(if report.mismatches() == 0 { exit::SUCCESS } else { exit::MISMATCH })
        }
    }
}
