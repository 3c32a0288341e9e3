//! Exact-integer checks of log-concavity, the degree-3 Turán inequality,
//! quartic binary form invariants, and threshold scans over partition tables.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::rat;
use crate::error::{Error, Result};
use crate::nu::q_ratio;
use crate::partitions::{pk_table, PartitionTable};

/// Sequence predicates a [`threshold_scan`] can sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    LogConcave,
    HigherTuran,
    InvariantA,
    InvariantB,
    InvariantI,
}

impl Predicate {
    pub const ALL: [Predicate; 5] = [
        Predicate::LogConcave,
        Predicate::HigherTuran,
        Predicate::InvariantA,
        Predicate::InvariantB,
        Predicate::InvariantI,
    ];

    /// How far past `n` the predicate reads.
    pub fn margin(self) -> usize {
        match self {
            Predicate::LogConcave => 1,
            Predicate::HigherTuran => 2,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Predicate::LogConcave => "logconcave",
            Predicate::HigherTuran => "higher_turan",
            Predicate::InvariantA => "A_pos",
            Predicate::InvariantB => "B_pos",
            Predicate::InvariantI => "I_pos",
        }
    }

    pub fn eval(self, table: &PartitionTable, n: usize) -> Result<bool> {
        match self {
            Predicate::LogConcave => log_concave_at(table, n),
            Predicate::HigherTuran => higher_turan_at(table, n),
            Predicate::InvariantA => Ok(invariants_at(table, n)?.a.is_positive()),
            Predicate::InvariantB => Ok(invariants_at(table, n)?.b.is_positive()),
            Predicate::InvariantI => Ok(invariants_at(table, n)?.i.is_positive()),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `table[n-1..=n+margin]`, checking `n >= 1`.
fn window(table: &PartitionTable, n: usize, margin: usize) -> Result<&[BigInt]> {
    if n == 0 {
        return Err(Error::Index { index: 0, limit: table.limit() });
    }
    table.get(n + margin)?;
    Ok(&table.values()[n - 1..=n + margin])
}

/// `α_n² - α_{n-1}α_{n+1}`.
fn turan_gap(w: &[BigInt]) -> BigInt {
    &w[1] * &w[1] - &w[0] * &w[2]
}

pub fn log_concave_at(table: &PartitionTable, n: usize) -> Result<bool> {
    Ok(!turan_gap(window(table, n, 1)?).is_negative())
}

pub fn log_concave_strict_at(table: &PartitionTable, n: usize) -> Result<bool> {
    Ok(turan_gap(window(table, n, 1)?).is_positive())
}

/// `4(α_n² - α_{n-1}α_{n+1})(α_{n+1}² - α_nα_{n+2}) - (α_nα_{n+1} - α_{n-1}α_{n+2})²`.
fn higher_turan_value(w: &[BigInt]) -> BigInt {
    let cross = &w[1] * &w[2] - &w[0] * &w[3];
    BigInt::from(4) * turan_gap(&w[0..3]) * turan_gap(&w[1..4]) - &cross * &cross
}

pub fn higher_turan_at(table: &PartitionTable, n: usize) -> Result<bool> {
    Ok(!higher_turan_value(window(table, n, 2)?).is_negative())
}

pub fn higher_turan_strict_at(table: &PartitionTable, n: usize) -> Result<bool> {
    Ok(higher_turan_value(window(table, n, 2)?).is_positive())
}

/// Discriminant of `a + bx + cx² + dx³`.
pub fn cubic_discriminant(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    BigInt::from(18) * a * b * c * d - BigInt::from(4) * c * c * c * a + b * b * c * c
        - BigInt::from(4) * d * b * b * b
        - BigInt::from(27) * d * d * a * a
}

/// Discriminant of `α_{n-1} + 3α_n x + 3α_{n+1}x² + α_{n+2}x³`.
pub fn jensen_cubic_discriminant(table: &PartitionTable, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Index { index: 0, limit: table.limit() });
    }
    let c = jensen_coeffs(table, 3, n - 1)?;
    Ok(cubic_discriminant(&c[0], &c[1], &c[2], &c[3]))
}

/// All zeros of the shifted cubic Jensen polynomial are real (multiple zeros allowed).
pub fn cubic_hyperbolic_at(table: &PartitionTable, n: usize) -> Result<bool> {
    Ok(!jensen_cubic_discriminant(table, n)?.is_negative())
}

/// The shifted cubic Jensen polynomial has three distinct real zeros.
pub fn cubic_strictly_hyperbolic_at(table: &PartitionTable, n: usize) -> Result<bool> {
    Ok(jensen_cubic_discriminant(table, n)?.is_positive())
}

/// `C(d, i)·α_{n+i}` for `i = 0..=d`.
pub fn jensen_coeffs(table: &PartitionTable, d: usize, n: usize) -> Result<Vec<BigInt>> {
    table.get(n + d)?;
    Ok((0..=d).map(|i| BigInt::from(binomial(d as u64, i as u64)) * &table.values()[n + i]).collect())
}

/// `v - u < √((1-u)³)`, decided by squaring; needs `u <= 1`.
pub fn below_sqrt_step(u: &BigRational, v: &BigRational) -> Result<bool> {
    let one_minus = BigRational::one() - u;
    if one_minus.is_negative() {
        return Err(Error::Argument(format!("√((1-u)³) undefined for u = {u}")));
    }
    let gap = v - u;
    if gap.is_negative() {
        return Ok(true);
    }
    if gap.is_zero() {
        return Ok(one_minus.is_positive());
    }
    Ok(&gap * &gap < &one_minus * &one_minus * &one_minus)
}

/// Hypothesis `u + √((1-u)³) > v` and conclusion `4(1-u)(1-v) - (1-uv)² > 0`
/// of the two-ratio lemma, for `15/16 <= u < v < 1`.
pub fn two_ratio_predicate(u: &BigRational, v: &BigRational) -> Result<(bool, bool)> {
    let one = BigRational::one();
    if !(*u >= rat(15, 16) && u < v && *v < one) {
        return Err(Error::Argument(format!("need 15/16 <= u < v < 1, got u = {u}, v = {v}")));
    }
    let hypothesis = below_sqrt_step(u, v)?;
    let t = &one - u * v;
    let conclusion = (BigRational::from_integer(4.into()) * (&one - u) * (&one - v) - &t * &t).is_positive();
    Ok((hypothesis, conclusion))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticInvariants {
    pub a: BigInt,
    pub b: BigInt,
    pub i: BigInt,
}

pub fn quartic_invariants(x: [&BigInt; 5]) -> QuarticInvariants {
    let [a0, a1, a2, a3, a4] = x;
    let a = a0 * a4 - BigInt::from(4) * a1 * a3 + BigInt::from(3) * a2 * a2;
    let b = -(a0 * a2 * a4) + a2 * a2 * a2 + a0 * a3 * a3 + a1 * a1 * a4 - BigInt::from(2) * a1 * a2 * a3;
    let i = &a * &a * &a - BigInt::from(27) * &b * &b;
    QuarticInvariants { a, b, i }
}

/// Invariants of `(α_{n-1}, α_n, α_{n+1}, α_{n+2}, α_{n+3})`.
pub fn invariants_at(table: &PartitionTable, n: usize) -> Result<QuarticInvariants> {
    let w = window(table, n, 3)?;
    Ok(quartic_invariants([&w[0], &w[1], &w[2], &w[3], &w[4]]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdResult {
    pub predicate: Predicate,
    pub scan_bound: usize,
    pub last_failure: Option<usize>,
    /// Smallest `T` with the predicate true on all of `T..=scan_bound`.
    pub holds_from: usize,
    pub exhaustive_to: usize,
}

const SCAN_CHUNK: usize = 256;

/// Sweep `1..=scan_bound` exactly and locate the last failure.
pub fn threshold_scan(predicate: Predicate, table: &PartitionTable, scan_bound: usize) -> Result<ThresholdResult> {
    if scan_bound == 0 {
        return Err(Error::Argument("scan bound must be at least 1".into()));
    }
    table.get(scan_bound + predicate.margin())?;
    let starts: Vec<usize> = (1..=scan_bound).step_by(SCAN_CHUNK).collect();
    let per_chunk = starts
        .par_iter()
        .map(|&lo| {
            let hi = (lo + SCAN_CHUNK - 1).min(scan_bound);
            let mut last = None;
            for n in lo..=hi {
                if !predicate.eval(table, n)? {
                    last = Some(n);
                }
            }
            Ok(last)
        })
        .collect::<Result<Vec<Option<usize>>>>()?;
    let last_failure = per_chunk.into_iter().flatten().max();
    Ok(ThresholdResult {
        predicate,
        scan_bound,
        last_failure,
        holds_from: last_failure.map_or(1, |n| n + 1),
        exhaustive_to: scan_bound,
    })
}

/// Log-concavity and degree-3 Turán thresholds `(N_k, M_k)` of `p_k`.
pub fn pk_thresholds(k: u32, scan_bound: usize) -> Result<(ThresholdResult, ThresholdResult)> {
    if scan_bound < 1000 {
        return Err(Error::Argument(format!("scan bound {scan_bound} below 1000")));
    }
    let table = pk_table(k, scan_bound + Predicate::HigherTuran.margin())?;
    Ok((
        threshold_scan(Predicate::LogConcave, &table, scan_bound)?,
        threshold_scan(Predicate::HigherTuran, &table, scan_bound)?,
    ))
}

/// Exact checks on the ratio `Q(n) = α_{n-1}α_{n+1}/α_n²` used to pass from
/// ratio bounds to the degree-3 inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioChain {
    pub n: usize,
    /// `15/16 <= Q(n)`.
    pub lower: bool,
    /// `Q(n) < Q(n+1)`.
    pub increasing: bool,
    /// `Q(n+1) < 1`.
    pub below_one: bool,
    /// `Q(n+1) < Q(n) + √((1-Q(n))³)`.
    pub sqrt_step: bool,
}

impl RatioChain {
    pub fn holds(&self) -> bool {
        self.lower && self.increasing && self.below_one && self.sqrt_step
    }
}

pub fn ratio_chain_at(table: &PartitionTable, n: usize) -> Result<RatioChain> {
    let q0 = q_ratio(table, n)?;
    let q1 = q_ratio(table, n + 1)?;
    let one = BigRational::one();
    Ok(RatioChain {
        n,
        lower: q0 >= rat(15, 16),
        increasing: q0 < q1,
        below_one: q1 < one,
        sqrt_step: q0 <= one && below_sqrt_step(&q0, &q1)?,
    })
}
