//! Library side of the `banzhaf` command-line tool: game file parsing, report
//! rendering, cross-algorithm verification and the benchmark harness.

pub mod app;
pub mod bench;
pub mod parse;
pub mod report;
pub mod verify;

pub use parse::parse_game;
