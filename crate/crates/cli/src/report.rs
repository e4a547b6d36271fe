//! Rendering of power index reports.

use banzhaf_core::index::{render_decimal, render_fraction, BigRational};
use banzhaf_core::{Algorithm, PowerIndexReport, WeightedVotingGame};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    #[value(name = "json-like", alias = "json")]
    Json,
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    game: GameDoc<'a>,
    algorithm: &'static str,
    digits: usize,
    players: Vec<PlayerDoc>,
}

#[derive(Serialize)]
struct GameDoc<'a> {
    quota: u64,
    weights: &'a [u64],
    total_weight: u64,
    proper: bool,
}

#[derive(Serialize)]
struct PlayerDoc {
    player: usize,
    weight: u64,
    eta: String,
    probabilistic: Exact,
    normalized: Option<Exact>,
}

#[derive(Serialize)]
struct Exact {
    exact: String,
    decimal: String,
}

impl Exact {
    fn new(r: &BigRational, digits: usize) -> Self {
        Self { exact: render_fraction(r), decimal: render_decimal(r, digits) }
    }
}

pub fn render(game: &WeightedVotingGame, algorithm: Algorithm, report: &PowerIndexReport, format: Format) -> String {
    match format {
        Format::Table => render_table(game, algorithm, report),
        Format::Json => render_json(game, algorithm, report),
    }
}

fn render_table(game: &WeightedVotingGame, algorithm: Algorithm, report: &PowerIndexReport) -> String {
    let digits = report.decimal_digits;
    let mut out = format!(
        "game: {game}\nalgorithm: {algorithm}\nplayers: {}, quota: {}, total weight: {}, proper: {}\n",
        game.players(),
        game.quota(),
        game.total_weight(),
        if game.is_proper() { "yes" } else { "no" },
    );
    for (i, (eta, prob)) in report.raw.as_slice().iter().zip(&report.probabilistic).enumerate() {
        let normalized = match &report.normalized {
            Some(n) => format!("{}={}", render_fraction(&n[i]), render_decimal(&n[i], digits)),
            None => "undefined".to_owned(),
        };
        out.push_str(&format!(
            "player {}: η={eta}, β={normalized}, β′={}={}, weight={}\n",
            i + 1,
            render_fraction(prob),
            render_decimal(prob, digits),
            game.weights()[i],
        ));
    }
    out
}

fn render_json(game: &WeightedVotingGame, algorithm: Algorithm, report: &PowerIndexReport) -> String {
    let digits = report.decimal_digits;
    let doc = ReportDoc {
        game: GameDoc {
            quota: game.quota(),
            weights: game.weights(),
            total_weight: game.total_weight(),
            proper: game.is_proper(),
        },
        algorithm: algorithm.name(),
        digits,
        players: (0..game.players())
            .map(|i| PlayerDoc {
                player: i + 1,
                weight: game.weights()[i],
                eta: report.raw[i].to_string(),
                probabilistic: Exact::new(&report.probabilistic[i], digits),
                normalized: report.normalized.as_ref().map(|n| Exact::new(&n[i], digits)),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}
