//! Two-list interval pair sums.
//!
//! Given ascending `xs` and `ys` with non-negative multiplicities `a` and `b`,
//! computes `sum a_i * b_j` over all pairs with `lower <= x_i + y_j <= upper`
//! in `O(M + N)`: two monotone sweeps find each row's window of `j`, and a
//! prefix-sum table over `b` turns each window into one subtraction.
//!
//! Windows use 1-based `j`: row `i` covers `lower[i]..=upper[i]`, with
//! `lower[i] == N + 1` or `upper[i] == 0` (or `upper < lower`) meaning empty.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct IntervalSumInstance<'a> {
    pub xs: &'a [u64],
    pub a: &'a [BigUint],
    pub ys: &'a [u64],
    pub b: &'a [BigUint],
    pub lower: i128,
    pub upper: i128,
}

impl<'a> IntervalSumInstance<'a> {
    pub fn new(
        xs: &'a [u64],
        a: &'a [BigUint],
        ys: &'a [u64],
        b: &'a [BigUint],
        lower: i128,
        upper: i128,
    ) -> Result<Self> {
        let inst = Self { xs, a, ys, b, lower, upper };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.xs.len() != self.a.len() {
            return Err(Error::LengthMismatch { expected: self.xs.len(), actual: self.a.len() });
        }
        if self.ys.len() != self.b.len() {
            return Err(Error::LengthMismatch { expected: self.ys.len(), actual: self.b.len() });
        }
        if !self.xs.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::NotSorted { name: "xs" });
        }
        if !self.ys.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::NotSorted { name: "ys" });
        }
        Ok(())
    }
}

/// Per-row windows over `ys` plus the prefix sums of `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowTables {
    /// Smallest 1-based `j` with `x_i + y_j >= lower`, or `N + 1`.
    pub lower: Vec<usize>,
    /// Largest 1-based `j` with `x_i + y_j <= upper`, or `0`.
    pub upper: Vec<usize>,
    /// `prefix[m] = b_1 + ... + b_m`, `prefix[0] = 0`.
    pub prefix: Vec<BigUint>,
}

/// Number of `y` values inspected by each sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProbeStats {
    pub lower: usize,
    pub upper: usize,
}

#[inline]
fn pair_sum(x: u64, y: u64) -> i128 {
    i128::from(x) + i128::from(y)
}

/// Lower window bounds. The pointer starts at the `+inf` sentinel `N + 1` and
/// only moves down, since `l(i+1) <= l(i)` for ascending `xs`.
pub fn lower_windows(xs: &[u64], ys: &[u64], bound: i128, probes: &mut usize) -> Vec<usize> {
    let mut l = ys.len() + 1;
    xs.iter()
        .map(|&x| {
            while l > 1 {
                *probes += 1;
                if pair_sum(x, ys[l - 2]) < bound {
                    break;
                }
                l -= 1;
            }
            l
        })
        .collect()
}

/// Upper window bounds, the mirror image of [`lower_windows`].
pub fn upper_windows(xs: &[u64], ys: &[u64], bound: i128, probes: &mut usize) -> Vec<usize> {
    let mut u = ys.len();
    xs.iter()
        .map(|&x| {
            while u > 0 {
                *probes += 1;
                if pair_sum(x, ys[u - 1]) <= bound {
                    break;
                }
                u -= 1;
            }
            u
        })
        .collect()
}

pub fn prefix_sums(b: &[BigUint]) -> Vec<BigUint> {
    let mut prefix = Vec::with_capacity(b.len() + 1);
    let mut acc = BigUint::zero();
    prefix.push(acc.clone());
    for v in b {
        acc += v;
        prefix.push(acc.clone());
    }
    prefix
}

pub fn compute_windows(inst: &IntervalSumInstance<'_>) -> WindowTables {
    compute_windows_counted(inst).0
}

/// [`compute_windows`] that also reports how many `y` values each sweep read.
pub fn compute_windows_counted(inst: &IntervalSumInstance<'_>) -> (WindowTables, ProbeStats) {
    let mut stats = ProbeStats::default();
    let tables = WindowTables {
        lower: lower_windows(inst.xs, inst.ys, inst.lower, &mut stats.lower),
        upper: upper_windows(inst.xs, inst.ys, inst.upper, &mut stats.upper),
        prefix: prefix_sums(inst.b),
    };
    (tables, stats)
}

/// `sum_i a_i * (F(u(i)) - F(l(i) - 1))` over rows with a non-empty window.
///
/// Takes the tables apart so callers can pair shared upper windows and prefix
/// sums with per-call lower windows and coefficients.
pub fn sum_over_windows(a: &[BigUint], lower: &[usize], upper: &[usize], prefix: &[BigUint]) -> BigUint {
    debug_assert_eq!(a.len(), lower.len());
    debug_assert_eq!(a.len(), upper.len());
    let mut total = BigUint::zero();
    for ((ai, &l), &u) in a.iter().zip(lower).zip(upper) {
        if u < l || ai.is_zero() {
            continue;
        }
        let window = &prefix[u] - &prefix[l - 1];
        if !window.is_zero() {
            total += ai * window;
        }
    }
    total
}

/// Sum of `a_i * b_j` over all pairs with `lower <= x_i + y_j <= upper`.
/// An empty interval (`lower > upper`) yields zero.
pub fn solve_interval_sum(inst: &IntervalSumInstance<'_>) -> Result<BigUint> {
    inst.validate()?;
    if inst.lower > inst.upper {
        return Ok(BigUint::zero());
    }
    let t = compute_windows(inst);
    Ok(sum_over_windows(inst.a, &t.lower, &t.upper, &t.prefix))
}
