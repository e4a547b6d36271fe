//! Sparse generating functions of coalition weights.
//!
//! The coefficient of `x^k` in `prod_i (1 + x^{w_i})` is the number of
//! coalitions whose weights sum to `k`. Only non-zero coefficients are stored,
//! as parallel `powers`/`counts` vectors with strictly ascending powers.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Where to cut a generating function. With `cap = Some(q)`, every term of
/// power `>= q` is dropped; those sums can never fall in a criticality window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TruncationPolicy {
    pub cap: Option<u64>,
}

impl TruncationPolicy {
    pub const NONE: Self = Self { cap: None };

    pub fn at(cap: u64) -> Self {
        Self { cap: Some(cap) }
    }

    #[inline]
    pub fn keeps(&self, power: u64) -> bool {
        self.cap.is_none_or(|cap| power < cap)
    }
}

/// Whether division keeps coefficients that become zero.
///
/// Retaining them makes the quotient share its power sequence with the
/// dividend, which lets callers reuse window tables across divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZeroCoefficients {
    #[default]
    Prune,
    Retain,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseGF {
    powers: Vec<u64>,
    counts: Vec<BigUint>,
}

impl SparseGF {
    /// The zero polynomial.
    pub fn new() -> Self {
        Self::default()
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self { powers: vec![0], counts: vec![BigUint::one()] }
    }

    /// Single factor `1 + x^w`; `2` when `w == 0`.
    pub fn factor(w: u64) -> Self {
        if w == 0 {
            Self { powers: vec![0], counts: vec![BigUint::from(2u32)] }
        } else {
            Self { powers: vec![0, w], counts: vec![BigUint::one(), BigUint::one()] }
        }
    }

    /// Builds from `(power, count)` pairs, which must have strictly ascending
    /// powers. Zero counts are kept as given.
    pub fn from_terms<C: Into<BigUint>>(terms: impl IntoIterator<Item = (u64, C)>) -> Result<Self> {
        let mut gf = Self::new();
        for (p, c) in terms {
            if gf.powers.last().is_some_and(|&last| last >= p) {
                return Err(Error::NotSorted { name: "powers" });
            }
            gf.powers.push(p);
            gf.counts.push(c.into());
        }
        Ok(gf)
    }

    pub fn powers(&self) -> &[u64] {
        &self.powers
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigUint)> + '_ {
        self.powers.iter().copied().zip(self.counts.iter())
    }

    /// Coefficient of `x^power` (zero when absent).
    pub fn coefficient(&self, power: u64) -> BigUint {
        match self.powers.binary_search(&power) {
            Ok(i) => self.counts[i].clone(),
            Err(_) => BigUint::zero(),
        }
    }

    /// Sum of all coefficients, i.e. the value at `x = 1`.
    pub fn total_count(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Drops explicit zero coefficients.
    pub fn pruned(mut self) -> Self {
        let mut kept = 0;
        for i in 0..self.len() {
            if !self.counts[i].is_zero() {
                self.powers.swap(kept, i);
                self.counts.swap(kept, i);
                kept += 1;
            }
        }
        self.powers.truncate(kept);
        self.counts.truncate(kept);
        self
    }

    pub fn truncated(mut self, policy: TruncationPolicy) -> Self {
        let keep = self.powers.partition_point(|&p| policy.keeps(p));
        self.powers.truncate(keep);
        self.counts.truncate(keep);
        self
    }

    fn with_capacity(n: usize) -> Self {
        Self { powers: Vec::with_capacity(n), counts: Vec::with_capacity(n) }
    }

    fn push(&mut self, power: u64, count: BigUint) {
        debug_assert!(self.powers.last().is_none_or(|&last| last < power));
        self.powers.push(power);
        self.counts.push(count);
    }

    /// `self * (1 + x^w)`, merging `self` with a copy of itself shifted by `w`.
    fn times_factor(&self, w: u64, policy: TruncationPolicy) -> Self {
        let n = self.len();
        let mut out = Self::with_capacity(2 * n);
        let (mut i, mut j) = (0, 0);
        while i < n || j < n {
            let shifted = match (j < n).then(|| self.powers[j].checked_add(w)) {
                Some(Some(p)) => Some(p).filter(|&p| policy.keeps(p)),
                Some(None) if policy.cap.is_some() => None,
                Some(None) => panic!("coalition weight overflows u64"),
                None => None,
            };
            if shifted.is_none() {
                // Every remaining shifted term lies at or beyond the cap.
                j = n;
            }
            match (i < n, shifted) {
                (true, Some(s)) if self.powers[i] == s => {
                    out.push(s, &self.counts[i] + &self.counts[j]);
                    i += 1;
                    j += 1;
                }
                (true, Some(s)) if self.powers[i] > s => {
                    out.push(s, self.counts[j].clone());
                    j += 1;
                }
                (true, _) => {
                    out.push(self.powers[i], self.counts[i].clone());
                    i += 1;
                }
                (false, Some(s)) => {
                    out.push(s, self.counts[j].clone());
                    j += 1;
                }
                (false, None) => break,
            }
        }
        out
    }
}

/// Generating function `prod_i (1 + x^{w_i})`, built one factor at a time.
///
/// Starts from the single term `(0, 1)` (the empty coalition) and multiplies
/// in each factor by merging the current list with a copy shifted by `w_i`.
/// Under a cap, terms at or above the cap are never produced; since each
/// factor only moves mass upwards, the remaining terms are exact.
///
/// The sum of all weights must fit in a `u64` when no cap is set.
pub fn build_gf(weights: &[u64], policy: TruncationPolicy) -> SparseGF {
    let mut gf = SparseGF::one().truncated(policy);
    for &w in weights {
        gf = gf.times_factor(w, policy);
    }
    gf
}

/// Polynomial sum by a two-way merge; coefficients of equal powers are added.
pub fn merge_sorted(a: SparseGF, b: SparseGF) -> SparseGF {
    let mut out = SparseGF::with_capacity(a.len() + b.len());
    let mut a = a.powers.into_iter().zip(a.counts).peekable();
    let mut b = b.powers.into_iter().zip(b.counts).peekable();
    loop {
        let next = match (a.peek(), b.peek()) {
            (Some(&(pa, _)), Some(&(pb, _))) if pa == pb => {
                let (p, ca) = a.next().unwrap();
                let (_, cb) = b.next().unwrap();
                (p, ca + cb)
            }
            (Some(&(pa, _)), Some(&(pb, _))) if pa < pb => a.next().unwrap(),
            (_, Some(_)) => b.next().unwrap(),
            (Some(_), None) => a.next().unwrap(),
            (None, None) => break,
        };
        out.push(next.0, next.1);
    }
    out
}

/// Polynomial product, dropping powers at or above the cap.
pub fn multiply_gf(a: &SparseGF, b: &SparseGF, policy: TruncationPolicy) -> SparseGF {
    let mut acc = SparseGF::new();
    for (pb, cb) in b.terms() {
        if cb.is_zero() {
            continue;
        }
        let mut partial = SparseGF::with_capacity(a.len());
        for (pa, ca) in a.terms() {
            let p = pa.checked_add(pb).expect("product power overflows u64");
            if !policy.keeps(p) {
                break;
            }
            if !ca.is_zero() {
                partial.push(p, ca * cb);
            }
        }
        acc = merge_sorted(acc, partial);
    }
    acc
}

/// Quotient `gf / (1 + x^w)`, pruning zero coefficients.
pub fn divide_gf(gf: &SparseGF, w: u64, policy: TruncationPolicy) -> Result<SparseGF> {
    divide_gf_with(gf, w, policy, ZeroCoefficients::Prune)
}

/// Quotient `gf / (1 + x^w)`.
///
/// Coefficients are recovered from the smallest power upwards with
/// `c_k = a_k - c_{k-w}`. Each computed `c_k` is queued as a pending
/// subtraction for power `k + w`; the queue is consumed in step with the input
/// list so the whole pass is linear in `gf.len()`.
///
/// Under a cap only powers below it are produced, and they agree with the
/// untruncated quotient: `c_k` depends only on `a_j` with `j <= k`.
///
/// `w == 0` divides by the constant 2. A pending subtraction larger than its
/// coefficient, or a non-zero one whose power never appears in `gf`, means
/// `gf` was not a multiple of `1 + x^w`.
pub fn divide_gf_with(gf: &SparseGF, w: u64, policy: TruncationPolicy, zeros: ZeroCoefficients) -> Result<SparseGF> {
    if w == 0 {
        return halve(gf, policy);
    }
    let mut out = SparseGF::with_capacity(gf.len());
    // (power, index into `out`) of quotient terms still to be subtracted.
    let mut pending: VecDeque<(u64, usize)> = VecDeque::new();
    for (k, a) in gf.terms() {
        if !policy.keeps(k) {
            break;
        }
        while let Some(&(p, idx)) = pending.front() {
            if p >= k {
                break;
            }
            // a_p = 0 here, so c_p would have to be negative.
            if !out.counts[idx].is_zero() {
                return Err(Error::NotDivisible { weight: w });
            }
            pending.pop_front();
        }
        let c = match pending.front() {
            Some(&(p, idx)) if p == k => {
                pending.pop_front();
                let sub = &out.counts[idx];
                if sub > a {
                    return Err(Error::NotDivisible { weight: w });
                }
                a - sub
            }
            _ => a.clone(),
        };
        if c.is_zero() && zeros == ZeroCoefficients::Prune {
            continue;
        }
        let shifted = k.checked_add(w).filter(|&p| policy.keeps(p));
        if let (Some(p), false) = (shifted, c.is_zero()) {
            pending.push_back((p, out.len()));
        }
        out.push(k, c);
    }
    // Any survivor below the cap (and beyond the last input power) would need
    // a matching a_p > 0 that does not exist.
    if pending.iter().any(|&(_, idx)| !out.counts[idx].is_zero()) {
        return Err(Error::NotDivisible { weight: w });
    }
    Ok(out)
}

fn halve(gf: &SparseGF, policy: TruncationPolicy) -> Result<SparseGF> {
    let mut out = SparseGF::with_capacity(gf.len());
    for (k, a) in gf.terms().take_while(|&(k, _)| policy.keeps(k)) {
        let (half, rem) = a.div_rem(&BigUint::from(2u32));
        if !rem.is_zero() {
            return Err(Error::ZeroWeightDivisor { power: k });
        }
        out.push(k, half);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn gf(terms: &[(u64, u64)]) -> SparseGF {
        SparseGF::from_terms(terms.iter().copied()).unwrap()
    }

    /// Enumerates every subset of `weights` and tallies its sum.
    fn brute_force(weights: &[u64], cap: Option<u64>) -> SparseGF {
        let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
        for mask in 0u32..(1 << weights.len()) {
            let s: u64 = (0..weights.len()).filter(|i| mask >> i & 1 == 1).map(|i| weights[i]).sum();
            if cap.is_none_or(|c| s < c) {
                *tally.entry(s).or_default() += 1;
            }
        }
        SparseGF::from_terms(tally).unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(build_gf(&[], TruncationPolicy::NONE), gf(&[(0, 1)]));
        assert_eq!(build_gf(&[1, 1, 1], TruncationPolicy::NONE), gf(&[(0, 1), (1, 3), (2, 3), (3, 1)]));
        let expected = gf(&[(0, 1), (1, 2), (2, 2), (3, 2), (4, 1)]);
        assert_eq!(brute_force(&[2, 1, 1], None), expected);
        assert_eq!(build_gf(&[2, 1, 1], TruncationPolicy::NONE), expected);
        let capped = gf(&[(0, 1), (1, 2), (2, 2)]);
        assert_eq!(brute_force(&[2, 1, 1], Some(3)), capped);
        assert_eq!(build_gf(&[2, 1, 1], TruncationPolicy::at(3)), capped);
    }

    #[test]
    fn build_with_zero_weights_doubles() {
        assert_eq!(build_gf(&[0], TruncationPolicy::NONE), gf(&[(0, 2)]));
        assert_eq!(build_gf(&[0, 3, 0], TruncationPolicy::NONE), gf(&[(0, 4), (3, 4)]));
        assert_eq!(build_gf(&[5], TruncationPolicy::at(5)), gf(&[(0, 1)]));
    }

    #[test]
    fn merge_examples() {
        assert_eq!(merge_sorted(gf(&[(0, 1)]), gf(&[(2, 1)])), gf(&[(0, 1), (2, 1)]));
        assert_eq!(merge_sorted(gf(&[(0, 1), (1, 1)]), gf(&[(1, 1), (2, 1)])), gf(&[(0, 1), (1, 2), (2, 1)]));
        assert_eq!(merge_sorted(SparseGF::new(), gf(&[(5, 3)])), gf(&[(5, 3)]));
        assert_eq!(merge_sorted(gf(&[(5, 3)]), SparseGF::new()), gf(&[(5, 3)]));
    }

    #[test]
    fn multiply_examples() {
        let p = multiply_gf(&gf(&[(0, 1), (2, 1)]), &gf(&[(0, 1), (1, 2), (2, 1)]), TruncationPolicy::NONE);
        assert_eq!(p, gf(&[(0, 1), (1, 2), (2, 2), (3, 2), (4, 1)]));
        let a = gf(&[(0, 3), (7, 2)]);
        assert_eq!(multiply_gf(&a, &SparseGF::one(), TruncationPolicy::NONE), a);
        assert_eq!(multiply_gf(&gf(&[(1, 1)]), &gf(&[(1, 1)]), TruncationPolicy::NONE), gf(&[(2, 1)]));
        let p = multiply_gf(&gf(&[(0, 1), (2, 1)]), &gf(&[(0, 1), (1, 2), (2, 1)]), TruncationPolicy::at(3));
        assert_eq!(p, gf(&[(0, 1), (1, 2), (2, 2)]));
    }

    #[test]
    fn divide_examples() {
        let g = gf(&[(0, 1), (1, 2), (2, 2), (3, 2), (4, 1)]);
        let h = divide_gf(&g, 2, TruncationPolicy::NONE).unwrap();
        assert_eq!(h, gf(&[(0, 1), (1, 2), (2, 1)]));
        assert_eq!(multiply_gf(&h, &SparseGF::factor(2), TruncationPolicy::NONE), g);

        assert_eq!(divide_gf(&gf(&[(0, 1), (1, 1)]), 1, TruncationPolicy::NONE).unwrap(), gf(&[(0, 1)]));
        assert_eq!(
            divide_gf(&gf(&[(0, 1), (1, 3), (2, 3), (3, 1)]), 1, TruncationPolicy::NONE).unwrap(),
            gf(&[(0, 1), (1, 2), (2, 1)])
        );
    }

    #[test]
    fn divide_retains_zeros_on_request() {
        // (1 + x)(1 + x^2) = 1 + x + x^2 + x^3; dividing by (1 + x) zeroes x^1 and x^3.
        let g = build_gf(&[1, 2], TruncationPolicy::NONE);
        let kept = divide_gf_with(&g, 1, TruncationPolicy::NONE, ZeroCoefficients::Retain).unwrap();
        assert_eq!(kept, gf(&[(0, 1), (1, 0), (2, 1), (3, 0)]));
        assert_eq!(kept.powers(), g.powers());
        assert_eq!(kept.pruned(), gf(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn divide_by_zero_weight_halves() {
        let g = build_gf(&[0, 2], TruncationPolicy::NONE);
        assert_eq!(divide_gf(&g, 0, TruncationPolicy::NONE).unwrap(), gf(&[(0, 1), (2, 1)]));
        assert_eq!(divide_gf(&gf(&[(0, 1)]), 0, TruncationPolicy::NONE), Err(Error::ZeroWeightDivisor { power: 0 }));
    }

    #[test]
    fn divide_detects_non_multiples() {
        // 1 + x^2 is not a multiple of 1 + x.
        assert_eq!(
            divide_gf(&gf(&[(0, 1), (2, 1)]), 1, TruncationPolicy::NONE),
            Err(Error::NotDivisible { weight: 1 })
        );
        // 1 + 2x + x^2 minus one x^2: remainder survives past the end.
        assert_eq!(
            divide_gf(&gf(&[(0, 1), (1, 2)]), 1, TruncationPolicy::NONE),
            Err(Error::NotDivisible { weight: 1 })
        );
        // Pending subtraction larger than the coefficient.
        assert_eq!(
            divide_gf(&gf(&[(0, 2), (1, 1), (2, 2)]), 1, TruncationPolicy::NONE),
            Err(Error::NotDivisible { weight: 1 })
        );
    }

    #[test]
    fn single_factor() {
        for w in [1, 2, 17, u64::MAX] {
            assert_eq!(build_gf(&[w], TruncationPolicy::NONE), gf(&[(0, 1), (w, 1)]));
        }
    }

    #[test]
    fn from_terms_rejects_unsorted() {
        assert!(SparseGF::from_terms([(1u64, 1u32), (1, 1)]).is_err());
        assert!(SparseGF::from_terms([(2u64, 1u32), (1, 1)]).is_err());
    }

    fn weights() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..40, 0..10)
    }

    proptest! {
        #[test]
        fn build_matches_enumeration(ws in weights(), cap in prop::option::of(1u64..200)) {
            let policy = TruncationPolicy { cap };
            prop_assert_eq!(build_gf(&ws, policy), brute_force(&ws, cap));
        }

        #[test]
        fn untruncated_counts_sum_to_power_of_two(ws in weights()) {
            let g = build_gf(&ws, TruncationPolicy::NONE);
            prop_assert_eq!(g.total_count(), BigUint::one() << ws.len());
            if !ws.is_empty() {
                prop_assert_eq!(g.terms().next(), Some((0, &BigUint::from(1u32 << ws.iter().filter(|&&w| w == 0).count()))));
            }
        }

        #[test]
        fn divide_round_trips(ws in prop::collection::vec(0u64..40, 1..10), pick in any::<prop::sample::Index>()) {
            let w = ws[pick.index(ws.len())];
            let g = build_gf(&ws, TruncationPolicy::NONE);
            let h = divide_gf(&g, w, TruncationPolicy::NONE).unwrap();
            let mut rest = ws.clone();
            rest.remove(pick.index(ws.len()));
            prop_assert_eq!(&h, &build_gf(&rest, TruncationPolicy::NONE));
            prop_assert_eq!(multiply_gf(&h, &SparseGF::factor(w), TruncationPolicy::NONE), g);
        }

        #[test]
        fn truncated_division_is_prefix_stable(ws in prop::collection::vec(0u64..40, 1..10), pick in any::<prop::sample::Index>(), cap in 1u64..150) {
            let w = ws[pick.index(ws.len())];
            let policy = TruncationPolicy::at(cap);
            let full = divide_gf(&build_gf(&ws, TruncationPolicy::NONE), w, TruncationPolicy::NONE).unwrap();
            let capped = divide_gf(&build_gf(&ws, policy), w, policy).unwrap();
            prop_assert_eq!(capped, full.truncated(policy));
        }

        #[test]
        fn merge_is_sorted_sum(a in weights(), b in weights()) {
            let ga = build_gf(&a, TruncationPolicy::NONE);
            let gb = build_gf(&b, TruncationPolicy::at(30));
            let (la, lb) = (ga.len(), gb.len());
            let m = merge_sorted(ga.clone(), gb.clone());
            prop_assert!(m.len() <= la + lb);
            prop_assert!(m.powers().windows(2).all(|p| p[0] < p[1]));
            for (p, c) in m.terms() {
                prop_assert_eq!(c, &(ga.coefficient(p) + gb.coefficient(p)));
            }
        }
    }
}
