//! Raw swing counts and the exact Banzhaf indices derived from them.

use num_bigint::BigUint;
use num_integer::Integer;
pub use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default number of fractional digits when rendering indices as decimals.
pub const DEFAULT_DECIMAL_DIGITS: usize = 10;

/// Number of coalitions in which each player is critical, in player order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CriticalCountVector(Vec<BigUint>);

impl CriticalCountVector {
    pub fn new(counts: Vec<BigUint>) -> Self {
        Self(counts)
    }

    pub fn as_slice(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }

    pub fn into_inner(self) -> Vec<BigUint> {
        self.0
    }
}

impl From<Vec<BigUint>> for CriticalCountVector {
    fn from(v: Vec<BigUint>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[u64; N]> for CriticalCountVector {
    fn from(v: [u64; N]) -> Self {
        Self(v.into_iter().map(BigUint::from).collect())
    }
}

impl std::ops::Index<usize> for CriticalCountVector {
    type Output = BigUint;

    fn index(&self, i: usize) -> &BigUint {
        &self.0[i]
    }
}

/// Raw counts together with both index families as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerIndexReport {
    pub raw: CriticalCountVector,
    /// `eta_p / 2^(n-1)`.
    pub probabilistic: Vec<BigRational>,
    /// `eta_p / sum(eta)`; `None` when every count is zero.
    pub normalized: Option<Vec<BigRational>>,
    pub decimal_digits: usize,
}

impl PowerIndexReport {
    /// Normalized indices, or [`Error::AllZeroCounts`] when they are undefined.
    pub fn normalized(&self) -> Result<&[BigRational]> {
        self.normalized.as_deref().ok_or(Error::AllZeroCounts)
    }

    pub fn with_decimal_digits(mut self, digits: usize) -> Self {
        self.decimal_digits = digits;
        self
    }

    pub fn render_decimal(&self, r: &BigRational) -> String {
        render_decimal(r, self.decimal_digits)
    }
}

/// Turns raw counts of an `n`-player game into a [`PowerIndexReport`].
///
/// All-zero counts are not an error here: the report is produced with
/// `normalized == None` and [`PowerIndexReport::normalized`] surfaces
/// [`Error::AllZeroCounts`].
pub fn normalize_indices(counts: CriticalCountVector, n: usize) -> Result<PowerIndexReport> {
    if counts.len() != n || n == 0 {
        return Err(Error::LengthMismatch { expected: n, actual: counts.len() });
    }
    let swings_denominator = BigUint::one() << (n - 1);
    if let Some(p) = counts.as_slice().iter().position(|c| *c > swings_denominator) {
        return Err(Error::CountOutOfRange { player: p + 1 });
    }
    let probabilistic = counts.as_slice().iter().map(|c| ratio(c, &swings_denominator)).collect();
    let total = counts.total();
    let normalized =
        if total.is_zero() { None } else { Some(counts.as_slice().iter().map(|c| ratio(c, &total)).collect()) };
    Ok(PowerIndexReport { raw: counts, probabilistic, normalized, decimal_digits: DEFAULT_DECIMAL_DIGITS })
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    // BigRational::new reduces to lowest terms.
    BigRational::new(num.clone().into(), den.clone().into())
}

/// Renders `r` with at most `digits` fractional digits, rounding half away
/// from zero and trimming trailing zeros: `3/5 -> "0.6"`, `2/3 -> "0.6666666667"`.
pub fn render_decimal(r: &BigRational, digits: usize) -> String {
    let negative = r.is_negative();
    let r = r.abs();
    let scale = num_bigint::BigInt::from(10u32).pow(digits as u32);
    let scaled = r.numer() * &scale;
    let (q, rem) = scaled.div_rem(r.denom());
    let q = if rem * 2u32 >= *r.denom() { q + 1u32 } else { q };
    let (int_part, frac_part) = q.div_rem(&scale);
    let mut out = String::new();
    if negative && !q.is_zero() {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 && !frac_part.is_zero() {
        let frac = format!("{:0>width$}", frac_part.to_string(), width = digits);
        out.push('.');
        out.push_str(frac.trim_end_matches('0'));
    }
    out
}

/// `p/q` in lowest terms, or just `p` when the denominator is one.
pub fn render_fraction(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
