//! Weighted voting games `[q; w_1, ..., w_n]`.
//!
//! Players are numbered from 1 in every public signature of this module; the
//! weight vector itself is an ordinary 0-based slice.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A validated weighted voting game.
///
/// A coalition wins when the sum of its members' weights reaches the quota.
/// Construction guarantees `n >= 1` and `1 <= quota <= sum(weights)`, so the
/// empty coalition loses and the grand coalition wins.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedVotingGame {
    quota: u64,
    weights: Vec<u64>,
    total_weight: u64,
}

/// Validates raw integers into a game.
///
/// Accepts signed, wide input so that parsers can hand over whatever they
/// read and get a precise diagnostic back.
pub fn validate_game(quota: i128, weights: &[i128]) -> Result<WeightedVotingGame> {
    if weights.is_empty() {
        return Err(Error::EmptyPlayerSet);
    }
    let mut checked = Vec::with_capacity(weights.len());
    for (i, &w) in weights.iter().enumerate() {
        if w < 0 {
            return Err(Error::NegativeWeight { player: i + 1, weight: w });
        }
        let w = u64::try_from(w).map_err(|_| Error::WeightTooLarge { player: i + 1, weight: w })?;
        checked.push(w);
    }
    let total: u128 = checked.iter().map(|&w| u128::from(w)).sum();
    if quota < 1 || quota > total as i128 {
        return Err(Error::QuotaOutOfRange { quota, total_weight: total });
    }
    WeightedVotingGame::new(quota as u64, checked)
}

impl WeightedVotingGame {
    pub fn new(quota: u64, weights: Vec<u64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyPlayerSet);
        }
        let total_weight =
            weights.iter().try_fold(0u64, |acc, &w| acc.checked_add(w)).ok_or(Error::TotalWeightOverflow)?;
        if quota < 1 || quota > total_weight {
            return Err(Error::QuotaOutOfRange { quota: i128::from(quota), total_weight: u128::from(total_weight) });
        }
        Ok(Self { quota, weights, total_weight })
    }

    pub fn quota(&self) -> u64 {
        self.quota
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn players(&self) -> usize {
        self.weights.len()
    }

    /// Weight of player `p` (1-based).
    pub fn weight(&self, p: usize) -> Result<u64> {
        self.check_index(p)?;
        Ok(self.weights[p - 1])
    }

    /// `w(P)`, the weight of the grand coalition.
    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    /// A game is proper when two disjoint coalitions can never both win,
    /// i.e. `q > w(P) / 2`. Informational only; no algorithm depends on it.
    pub fn is_proper(&self) -> bool {
        u128::from(self.quota) * 2 > u128::from(self.total_weight)
    }

    /// Sum of the weights of `members` (1-based indices; repeats count once).
    pub fn coalition_weight(&self, members: &[usize]) -> Result<u64> {
        let set = self.member_set(members)?;
        // Cannot overflow: bounded by total_weight.
        Ok(set.iter().map(|&p| self.weights[p - 1]).sum())
    }

    pub fn is_winning(&self, members: &[usize]) -> Result<bool> {
        Ok(self.coalition_weight(members)? >= self.quota)
    }

    /// Whether `p` is critical (a swing) in `members`: the coalition wins and
    /// stops winning once `p` leaves it.
    pub fn is_critical(&self, members: &[usize], p: usize) -> Result<bool> {
        let set = self.member_set(members)?;
        self.check_index(p)?;
        if !set.contains(&p) {
            return Err(Error::PlayerNotInCoalition { player: p });
        }
        let w: u64 = set.iter().map(|&i| self.weights[i - 1]).sum();
        Ok(w >= self.quota && w - self.weights[p - 1] < self.quota)
    }

    /// The same game with quota and every weight multiplied by `factor`.
    /// Winning coalitions are unchanged.
    pub fn scaled(&self, factor: u64) -> Result<Self> {
        let quota = self.quota.checked_mul(factor).ok_or(Error::TotalWeightOverflow)?;
        let weights = self
            .weights
            .iter()
            .map(|&w| w.checked_mul(factor).ok_or(Error::TotalWeightOverflow))
            .collect::<Result<Vec<_>>>()?;
        Self::new(quota, weights)
    }

    /// The same game with players reordered: player `i` of the result is
    /// player `order[i] + 1` of `self` (`order` holds 0-based positions).
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.players(), "permutation length");
        Self {
            quota: self.quota,
            weights: order.iter().map(|&i| self.weights[i]).collect(),
            total_weight: self.total_weight,
        }
    }

    fn check_index(&self, p: usize) -> Result<()> {
        if p == 0 || p > self.players() {
            return Err(Error::IndexOutOfRange { index: p, players: self.players() });
        }
        Ok(())
    }

    fn member_set(&self, members: &[usize]) -> Result<BTreeSet<usize>> {
        members.iter().map(|&p| self.check_index(p).map(|()| p)).collect()
    }
}

/// Bracket notation, `[q; w1, w2, ..., wn]`.
impl fmt::Display for WeightedVotingGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.quota)?;
        for (i, w) in self.weights.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{w}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn game() -> WeightedVotingGame {
        validate_game(3, &[2, 1, 1]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(validate_game(3, &[2, 1, 1]).is_ok());
        assert!(matches!(validate_game(5, &[2, 1, 1]), Err(Error::QuotaOutOfRange { .. })));
        assert!(matches!(validate_game(0, &[1, 1]), Err(Error::QuotaOutOfRange { .. })));
        assert_eq!(validate_game(1, &[]), Err(Error::EmptyPlayerSet));
        assert!(matches!(validate_game(1, &[1, -2]), Err(Error::NegativeWeight { player: 2, .. })));
        assert!(matches!(
            validate_game(1, &[1, i128::from(u64::MAX) + 1]),
            Err(Error::WeightTooLarge { player: 2, .. })
        ));
        assert_eq!(WeightedVotingGame::new(1, vec![u64::MAX, 1]), Err(Error::TotalWeightOverflow));
    }

    #[test]
    fn coalition_weights() {
        let g = game();
        assert_eq!(g.coalition_weight(&[1, 3]).unwrap(), 3);
        assert_eq!(g.coalition_weight(&[]).unwrap(), 0);
        assert_eq!(g.coalition_weight(&[1, 2, 3]).unwrap(), 4);
        assert!(matches!(g.coalition_weight(&[4]), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(g.coalition_weight(&[0]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn criticality() {
        let g = game();
        assert!(g.is_critical(&[1, 2], 1).unwrap());
        assert!(!g.is_critical(&[1, 2, 3], 2).unwrap());
        assert!(!g.is_critical(&[2, 3], 2).unwrap());
        assert_eq!(g.is_critical(&[2, 3], 1), Err(Error::PlayerNotInCoalition { player: 1 }));
    }

    #[test]
    fn properness_is_informational() {
        assert!(game().is_proper());
        let improper = validate_game(1, &[1, 1]).unwrap();
        assert!(!improper.is_proper());
    }

    #[test]
    fn display_uses_bracket_notation() {
        assert_eq!(game().to_string(), "[3; 2, 1, 1]");
    }
}
