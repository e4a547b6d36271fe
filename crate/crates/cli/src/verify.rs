//! Cross-checks the exact algorithms against each other.

use std::fmt;

use banzhaf_core::solvers::run;
use banzhaf_core::{Algorithm, CriticalCountVector, SolverOptions, WeightedVotingGame};
use rayon::prelude::*;

type Eval<'a> = dyn Fn(&WeightedVotingGame) -> banzhaf_core::Result<CriticalCountVector> + Send + Sync + 'a;

/// A named swing-count routine taking part in a cross-check.
pub struct Solver<'a> {
    pub name: String,
    pub eval: Box<Eval<'a>>,
}

impl<'a> Solver<'a> {
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(&WeightedVotingGame) -> banzhaf_core::Result<CriticalCountVector> + Send + Sync + 'a,
    ) -> Self {
        Self { name: name.into(), eval: Box::new(eval) }
    }

    /// All four exact algorithms under `opts`.
    pub fn standard(opts: SolverOptions) -> Vec<Solver<'static>> {
        Algorithm::ALL
            .into_iter()
            .map(|alg| Solver::new(alg.name(), move |g: &WeightedVotingGame| run(g, alg, &opts).map(|r| r.0)))
            .collect()
    }
}

/// Results of every solver on the first game where they disagreed.
#[derive(Debug, Clone)]
pub struct Mismatch {
    pub index: usize,
    pub game: WeightedVotingGame,
    pub results: Vec<(String, Result<CriticalCountVector, String>)>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "game #{}: {}", self.index + 1, self.game)?;
        for (name, result) in &self.results {
            match result {
                Ok(c) => {
                    let counts: Vec<String> = c.as_slice().iter().map(|v| v.to_string()).collect();
                    writeln!(f, "  {name:<10} ({})", counts.join(", "))?;
                }
                Err(e) => writeln!(f, "  {name:<10} error: {e}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct VerifySummary {
    pub total: usize,
    pub agreed: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

impl fmt::Display for VerifySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}/{} agree", self.agreed, self.total)?;
        if let Some(m) = &self.first_mismatch {
            write!(f, "first counterexample, {m}")?;
        }
        Ok(())
    }
}

/// Runs every solver on every game. A game agrees when all solvers succeed
/// with identical vectors; an error from any solver counts as disagreement.
pub fn verify(games: &[WeightedVotingGame], solvers: &[Solver<'_>]) -> VerifySummary {
    let outcomes: Vec<Option<Mismatch>> = games
        .par_iter()
        .enumerate()
        .map(|(index, game)| {
            let results: Vec<_> =
                solvers.iter().map(|s| (s.name.clone(), (s.eval)(game).map_err(|e| e.to_string()))).collect();
            let first = &results[0].1;
            let agree = first.is_ok() && results.iter().all(|(_, r)| r == first);
            (!agree).then(|| Mismatch { index, game: game.clone(), results })
        })
        .collect();
    VerifySummary {
        total: games.len(),
        agreed: outcomes.iter().filter(|o| o.is_none()).count(),
        first_mismatch: outcomes.into_iter().flatten().next(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use banzhaf_core::validate_game;
    use banzhaf_core::workload::random_games;

    #[test]
    fn fixture_passes() {
        let games = vec![validate_game(3, &[2, 1, 1]).unwrap()];
        let s = verify(&games, &Solver::standard(SolverOptions::default()));
        assert!(s.passed());
        assert_eq!(s.to_string(), "1/1 agree\n");
    }

    #[test]
    fn injected_fault_is_reported() {
        let games = random_games(30, 8, 0..=10, 5);
        let mut solvers = Solver::standard(SolverOptions::default());
        // Off by one for the last player of games with more than three players.
        solvers.push(Solver::new("faulty", |g: &WeightedVotingGame| {
            let mut c = run(g, Algorithm::Partition, &SolverOptions::default())?.0.into_inner();
            if c.len() > 3 {
                *c.last_mut().unwrap() += 1u32;
            }
            Ok(c.into())
        }));
        let s = verify(&games, &solvers);
        assert!(!s.passed());
        let m = s.first_mismatch.as_ref().unwrap();
        assert!(m.game.players() > 3);
        assert!(games[..m.index].iter().all(|g| g.players() <= 3));
        assert!(s.to_string().contains("faulty"));
    }

    #[test]
    fn solver_errors_count_as_disagreement() {
        let games = vec![validate_game(1, &[1; 12]).unwrap()];
        let opts = SolverOptions { oracle_cap: 10, ..SolverOptions::default() };
        let s = verify(&games, &Solver::standard(opts));
        assert_eq!(s.agreed, 0);
    }
}
