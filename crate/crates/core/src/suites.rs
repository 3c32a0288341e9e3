//! Named verification suites: each runs library checks and turns the
//! outcomes into [`VerificationReport`]s.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Mutex;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{escalate, rat, Enclosure, DEFAULT_PRECISION};
use crate::bessel::{bessel_sandwich_check, bkrt_holds, pinelis_holds, remainder_majorant};
use crate::chern::{hybrid_residual_check, EtaQuotient, DISTINCT_ERROR_CONSTANT};
use crate::error::{Error, Result};
use crate::nu::{
    helper_monotone_checks, nu_min_n, q_sandwich_check, ratio_sandwich_check, residual_check, BoundReport,
    RATIO_MIN_N, RESIDUAL_MIN_N, SANDWICH_MIN_NU,
};
use crate::partitions::{q_table, PartitionTable, TableCache, TableKind};
use crate::report::{Params, Status, VerificationReport};
use crate::symbolic::identities::all_checks;
use crate::turan::{
    cubic_hyperbolic_at, cubic_strictly_hyperbolic_at, higher_turan_at, higher_turan_strict_at, jensen_cubic_discriminant, pk_thresholds, ratio_chain_at,
    threshold_scan, Predicate, ThresholdResult,
};

/// Expected first index from which each predicate holds on q.
pub const Q_THRESHOLDS: [(Predicate, usize); 5] = [
    (Predicate::LogConcave, 33),
    (Predicate::HigherTuran, 121),
    (Predicate::InvariantA, 230),
    (Predicate::InvariantB, 272),
    (Predicate::InvariantI, 267),
];

/// Expected `(log-concave from, degree-3 Turán from)` for `p_k`.
pub const PK_THRESHOLDS: [(u32, usize, usize); 3] = [(3, 58, 185), (4, 17, 64), (5, 42, 137)];

/// Upper end of the sampled grids of the asymptotic bounds.
pub const SAMPLE_MAX_N: u64 = 10_000;

/// Upper end and step of the hybrid-formula grid.
pub const HYBRID_MAX_N: u64 = 5000;
pub const HYBRID_STEP: usize = 50;

/// Range of the discriminant equivalence check.
pub const CUBIC_RANGE: (usize, usize) = (2, 2000);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    LogConcave,
    Turan3,
    Thm12,
    Thm13,
    Thm14,
    Chern,
    Symbolic,
    Pk,
    Invariants,
    Bessel,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `all` runs them.
    pub const EACH: [Suite; 10] = [
        Suite::LogConcave,
        Suite::Turan3,
        Suite::Invariants,
        Suite::Pk,
        Suite::Bessel,
        Suite::Thm12,
        Suite::Thm13,
        Suite::Thm14,
        Suite::Chern,
        Suite::Symbolic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LogConcave => "logconcave",
            Suite::Turan3 => "turan3",
            Suite::Thm12 => "thm12",
            Suite::Thm13 => "thm13",
            Suite::Thm14 => "thm14",
            Suite::Chern => "chern",
            Suite::Symbolic => "symbolic",
            Suite::Pk => "pk",
            Suite::Invariants => "invariants",
            Suite::Bessel => "bessel",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Scan bound for exhaustive suites.
    pub bound: usize,
    /// Starting precision in bits for certified comparisons.
    pub precision: u32,
    pub cache_dir: Option<PathBuf>,
    /// Restrict the `pk` suite to one `k`.
    pub k: Option<u32>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { bound: 5000, precision: DEFAULT_PRECISION, cache_dir: None, k: None }
    }
}

/// Runs suites against one shared q table, grown on demand.
pub struct Runner {
    opts: SuiteOptions,
    q: Mutex<Option<PartitionTable>>,
}

impl Runner {
    pub fn new(opts: SuiteOptions) -> Result<Self> {
        if opts.bound == 0 {
            return Err(Error::Argument("bound must be positive".into()));
        }
        if !(crate::arith::MIN_PRECISION..=crate::arith::PRECISION_CAP).contains(&opts.precision) {
            return Err(Error::Argument(format!(
                "precision must lie in {}..={} bits",
                crate::arith::MIN_PRECISION,
                crate::arith::PRECISION_CAP
            )));
        }
        Ok(Runner { opts, q: Mutex::new(None) })
    }

    pub fn options(&self) -> &SuiteOptions {
        &self.opts
    }

    fn q(&self, limit: usize) -> Result<PartitionTable> {
        let mut slot = self.q.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(t) = slot.as_ref() {
            if t.limit() >= limit {
                return Ok(t.clone());
            }
        }
        let t = match &self.opts.cache_dir {
            Some(dir) => TableCache::new(dir).get(TableKind::Distinct, limit)?,
            None => q_table(limit),
        };
        *slot = Some(t.clone());
        Ok(t)
    }

    pub fn run(&self, suite: Suite) -> Result<Vec<VerificationReport>> {
        match suite {
            Suite::All => {
                let mut out = Vec::new();
                for s in Suite::EACH {
                    out.extend(self.run(s)?);
                }
                Ok(out)
            }
            Suite::LogConcave => Ok(vec![self.q_threshold(Predicate::LogConcave)?]),
            Suite::Turan3 => self.turan3(),
            Suite::Invariants => {
                [Predicate::InvariantA, Predicate::InvariantB, Predicate::InvariantI]
                    .into_iter()
                    .map(|p| self.q_threshold(p))
                    .collect()
            }
            Suite::Pk => self.pk(),
            Suite::Thm12 => self.thm12(),
            Suite::Thm13 => self.thm13(),
            Suite::Thm14 => self.thm14(),
            Suite::Chern => self.chern(),
            Suite::Symbolic => symbolic(),
            Suite::Bessel => self.bessel(),
        }
    }

    fn q_threshold(&self, predicate: Predicate) -> Result<VerificationReport> {
        let expected = Q_THRESHOLDS.iter().find(|(p, _)| *p == predicate).map(|&(_, t)| t).unwrap();
        let bound = self.bound_at_least(expected)?;
        let clock = Instant::now();
        let table = self.q(bound + predicate.margin())?;
        let res = threshold_scan(predicate, &table, bound)?;
        Ok(threshold_report(predicate.name(), Params::new(), &res, Some(expected), clock))
    }

    fn bound_at_least(&self, expected: usize) -> Result<usize> {
        if self.opts.bound < expected {
            return Err(Error::Argument(format!(
                "bound {} is below the expected threshold {expected}",
                self.opts.bound
            )));
        }
        Ok(self.opts.bound)
    }

    fn turan3(&self) -> Result<Vec<VerificationReport>> {
        let mut out = vec![self.q_threshold(Predicate::HigherTuran)?];
        let bound = self.opts.bound;
        let table = self.q(bound + 3)?;

        let clock = Instant::now();
        let from = 121;
        let failures = first_failures(from..=bound, |n| higher_turan_strict_at(&table, n))?;
        let mut params = scan_params(from, bound);
        params.insert("strict".into(), json!(true));
        out.push(sweep_report("higher_turan_strict", params, &failures, 0, clock));

        // Distinct real zeros pair with the strict inequality, real zeros with
        // the non-strict one; the two readings differ exactly where Δ = 0.
        let clock = Instant::now();
        let (lo, hi) = (CUBIC_RANGE.0, CUBIC_RANGE.1.min(bound));
        let failures = first_failures(lo..=hi, |n| {
            Ok(cubic_strictly_hyperbolic_at(&table, n)? == higher_turan_strict_at(&table, n)?
                && cubic_hyperbolic_at(&table, n)? == higher_turan_at(&table, n)?)
        })?;
        let degenerate = first_failures(lo..=hi, |n| Ok(!jensen_cubic_discriminant(&table, n)?.is_zero()))?;
        let mut params = scan_params(lo, hi);
        params.insert("zero_discriminant".into(), json!(degenerate));
        out.push(sweep_report("cubic_discriminant_equivalence", params, &failures, 0, clock));

        let clock = Instant::now();
        let lo = RATIO_MIN_N as usize;
        let failures = first_failures(lo..=bound, |n| Ok(ratio_chain_at(&table, n)?.holds()))?;
        out.push(sweep_report("ratio_chain", scan_params(lo, bound), &failures, 0, clock));
        Ok(out)
    }

    fn pk(&self) -> Result<Vec<VerificationReport>> {
        let ks: Vec<u32> = match self.opts.k {
            Some(k) => vec![k],
            None => PK_THRESHOLDS.iter().map(|t| t.0).collect(),
        };
        let mut out = Vec::new();
        for k in ks {
            let clock = Instant::now();
            let expected = PK_THRESHOLDS.iter().find(|t| t.0 == k);
            let (lc, ht) = pk_thresholds(k, self.opts.bound)?;
            for (res, exp) in [(lc, expected.map(|t| t.1)), (ht, expected.map(|t| t.2))] {
                let mut params = Params::new();
                params.insert("k".into(), json!(k));
                let name = format!("pk_{}", res.predicate.name());
                out.push(threshold_report(&name, params, &res, exp, clock));
            }
        }
        Ok(out)
    }

    fn thm12(&self) -> Result<Vec<VerificationReport>> {
        let samples = residual_grid();
        let table = self.q(SAMPLE_MAX_N as usize)?;
        let start = self.opts.precision;
        Ok(vec![bound_sweep("q_residual", &samples, |n| {
            residual_check(n, &table.values()[n as usize], start)
        })?])
    }

    fn thm13(&self) -> Result<Vec<VerificationReport>> {
        let samples = q_sandwich_grid()?;
        let table = self.q(SAMPLE_MAX_N as usize)?;
        let start = self.opts.precision;
        Ok(vec![bound_sweep("q_sandwich", &samples, |n| {
            q_sandwich_check(n, &table.values()[n as usize], start)
        })?])
    }

    fn thm14(&self) -> Result<Vec<VerificationReport>> {
        let samples = ratio_sandwich_grid();
        let table = self.q(SAMPLE_MAX_N as usize + 1)?;
        let start = self.opts.precision;
        Ok(vec![bound_sweep("ratio_sandwich", &samples, |n| ratio_sandwich_check(n, &table, start))?])
    }

    fn chern(&self) -> Result<Vec<VerificationReport>> {
        let samples = hybrid_grid();
        let table = self.q(HYBRID_MAX_N as usize)?;
        let eq = EtaQuotient::distinct_parts();
        let start = self.opts.precision;
        let clock = Instant::now();
        let outcomes = samples
            .par_iter()
            .map(|&n| {
                let r = hybrid_residual_check(&eq, n, &table.values()[n as usize], DISTINCT_ERROR_CONSTANT, start);
                Ok((n, classify(r.map(|r| (r.within_limit && r.within_budget, r.precision)))?))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut params = grid_params(&samples);
        params.insert("limit".into(), json!(DISTINCT_ERROR_CONSTANT));
        Ok(vec![outcome_report("hybrid_residual", params, &outcomes, clock)])
    }

    fn bessel(&self) -> Result<Vec<VerificationReport>> {
        let mut out = Vec::new();
        let start = self.opts.precision;

        let clock = Instant::now();
        let f26 = certified(start, "remainder majorant at 26", |p| {
            let f = remainder_majorant(&Enclosure::from_i64(26, p))?;
            Ok(vec![
                Enclosure::from_ratio(3079, 100, p).lt(&f),
                f.lt(&Enclosure::from_ratio(3082, 100, p)),
                f.lt(&Enclosure::from_i64(31, p)),
            ])
        });
        let mut params = Params::new();
        params.insert("s".into(), json!(26));
        params.insert("interval".into(), json!(["30.79", "30.82"]));
        params.insert("ceiling".into(), json!(31));
        out.push(single_report("remainder_majorant", params, classify(f26)?, clock));

        let clock = Instant::now();
        let samples = q_sandwich_grid()?;
        let helpers = helper_monotone_checks(&samples);
        match helpers {
            Ok(reports) => {
                let elapsed = clock;
                let (fixed, per_n) = reports.split_at(2);
                for (name, r) in ["absorb_helper_at_21", "decay_helper_at_43"].into_iter().zip(fixed) {
                    out.push(single_report(name, Params::new(), (status_of(r.certified), r.precision), elapsed));
                }
                let outcomes: Vec<(u64, (Status, u32))> =
                    per_n.iter().map(|r| (r.n.unwrap(), (status_of(bound_ok(r)), r.precision))).collect();
                out.push(outcome_report("relative_residual", grid_params(&samples), &outcomes, elapsed));
            }
            Err(e @ Error::PrecisionExhausted { .. }) => {
                let mut params = Params::new();
                params.insert("error".into(), json!(e.to_string()));
                out.push(single_report("helper_bounds", params, (Status::Indeterminate, crate::arith::PRECISION_CAP), clock));
            }
            Err(e) => return Err(e),
        }

        let clock = Instant::now();
        let points: Vec<u64> = vec![26, 30, 50, 100, 500];
        let outcomes = points
            .par_iter()
            .map(|&s| Ok((s, classify(bessel_sandwich_check(&rat(s as i64, 1)).map(|b| (b, 0)))?)))
            .collect::<Result<Vec<_>>>()?;
        out.push(outcome_report("bessel_sandwich", grid_params(&points), &outcomes, clock));

        let clock = Instant::now();
        let grid: Vec<BigRational> = (0..200i64).map(|i| rat(1, 1) + rat(499 * i, 199)).collect();
        let ok = grid
            .par_iter()
            .map(|s| classify(bkrt_holds(s).map(|b| (b, 0))))
            .collect::<Result<Vec<_>>>()?;
        let mut params = Params::new();
        params.insert("samples".into(), json!(grid.len()));
        params.insert("range".into(), json!([1, 500]));
        out.push(rational_grid_report("bkrt", params, &grid, &ok, clock));

        let clock = Instant::now();
        let cases: Vec<(BigRational, BigRational)> = (2..=13i64)
            .flat_map(|twice_a| {
                let a = rat(twice_a, 2);
                (0..=20i64).map(move |j| (a.clone(), &a + rat(5 * j, 2)))
            })
            .collect();
        let ok = cases
            .par_iter()
            .map(|(a, s)| classify(pinelis_holds(a, s).map(|b| (b, 0))))
            .collect::<Result<Vec<_>>>()?;
        let mut params = Params::new();
        params.insert("a".into(), json!(["1", "13/2"]));
        params.insert("s_offset".into(), json!([0, 50]));
        let labels: Vec<BigRational> = cases.iter().map(|(a, _)| a.clone()).collect();
        out.push(rational_grid_report("pinelis", params, &labels, &ok, clock));
        Ok(out)
    }
}

fn symbolic() -> Result<Vec<VerificationReport>> {
    let clock = Instant::now();
    let checks = all_checks()?;
    let ms = clock.elapsed().as_millis() as u64;
    Ok(checks
        .into_iter()
        .map(|c| {
            let mut params = Params::new();
            params.insert("kind".into(), json!(format!("{:?}", c.kind).to_lowercase()));
            VerificationReport {
                check: format!("symbolic_{}", c.name),
                params,
                status: status_of(c.holds),
                witness: None,
                precision_bits: 0,
                runtime_ms: ms,
            }
        })
        .collect())
}

/// `135..=335` followed by four larger spot indices and the grid end.
pub fn residual_grid() -> Vec<u64> {
    let first = RESIDUAL_MIN_N;
    (first..=first + 200).chain([500, 1000, 2000, 5000, SAMPLE_MAX_N]).collect()
}

/// 200 consecutive indices from the first with `ν(n) >= 43`, then geometric samples.
pub fn q_sandwich_grid() -> Result<Vec<u64>> {
    let first = nu_min_n(&rat(SANDWICH_MIN_NU, 1))?;
    Ok(boundary_and_geometric(first))
}

pub fn ratio_sandwich_grid() -> Vec<u64> {
    boundary_and_geometric(RATIO_MIN_N)
}

pub fn hybrid_grid() -> Vec<u64> {
    (RESIDUAL_MIN_N..=HYBRID_MAX_N).step_by(HYBRID_STEP).collect()
}

fn boundary_and_geometric(first: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (first..=first + 200).collect();
    let mut n = first + 200;
    while n < SAMPLE_MAX_N {
        n = (n * 5 / 4).min(SAMPLE_MAX_N);
        v.push(n);
    }
    v
}

fn status_of(b: bool) -> Status {
    if b {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn bound_ok(r: &BoundReport) -> bool {
    r.certified || !r.in_range
}

/// Map a certified outcome to a status; exhausted precision is indeterminate.
fn classify(r: Result<(bool, u32)>) -> Result<(Status, u32)> {
    match r {
        Ok((b, bits)) => Ok((status_of(b), bits)),
        Err(Error::PrecisionExhausted { cap, .. }) => Ok((Status::Indeterminate, cap)),
        Err(e) => Err(e),
    }
}

/// Escalate until every comparison is decided; true iff all hold.
fn certified(start: u32, what: &str, f: impl Fn(u32) -> Result<Vec<Option<bool>>>) -> Result<(bool, u32)> {
    escalate(start, what, |p| {
        let v = f(p)?;
        if v.contains(&Some(false)) {
            Ok(Some(false))
        } else if v.iter().all(|x| *x == Some(true)) {
            Ok(Some(true))
        } else {
            Ok(None)
        }
    })
}

fn first_failures(range: std::ops::RangeInclusive<usize>, f: impl Fn(usize) -> Result<bool> + Sync) -> Result<Vec<usize>> {
    let idx: Vec<usize> = range.collect();
    let mut bad: Vec<usize> = idx
        .par_iter()
        .map(|&n| Ok((n, f(n)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n)
        .collect();
    bad.sort_unstable();
    Ok(bad)
}

fn scan_params(from: usize, to: usize) -> Params {
    let mut p = Params::new();
    p.insert("from".into(), json!(from));
    p.insert("to".into(), json!(to));
    p.insert("scan".into(), json!(true));
    p
}

fn grid_params(samples: &[u64]) -> Params {
    let mut p = Params::new();
    p.insert("samples".into(), json!(samples.len()));
    p.insert("first".into(), json!(samples.first()));
    p.insert("last".into(), json!(samples.last()));
    p.insert("scan".into(), json!(true));
    p
}

fn threshold_report(
    name: &str,
    mut params: Params,
    res: &ThresholdResult,
    expected: Option<usize>,
    clock: Instant,
) -> VerificationReport {
    params.insert("scan".into(), json!(true));
    params.insert("bound".into(), json!(res.scan_bound));
    params.insert("holds_from".into(), json!(res.holds_from));
    params.insert("last_failure".into(), json!(res.last_failure));
    params.insert("expected_holds_from".into(), json!(expected));
    let (status, witness) = match expected {
        Some(t) if res.holds_from > t => (Status::Fail, res.last_failure.map(|n| n as u64)),
        // the threshold is not sharp: the index just below it does not fail
        Some(t) if res.holds_from < t => (Status::Fail, Some(t as u64 - 1)),
        _ => (Status::Pass, None),
    };
    VerificationReport {
        check: name.to_string(),
        params,
        status,
        witness,
        precision_bits: 0,
        runtime_ms: clock.elapsed().as_millis() as u64,
    }
}

fn sweep_report(name: &str, mut params: Params, failures: &[usize], bits: u32, clock: Instant) -> VerificationReport {
    params.insert("failures".into(), json!(failures.len()));
    VerificationReport {
        check: name.to_string(),
        params,
        status: status_of(failures.is_empty()),
        witness: failures.first().map(|&n| n as u64),
        precision_bits: bits,
        runtime_ms: clock.elapsed().as_millis() as u64,
    }
}

fn bound_sweep(name: &str, samples: &[u64], check: impl Fn(u64) -> Result<BoundReport> + Sync) -> Result<VerificationReport> {
    let clock = Instant::now();
    let outcomes = samples
        .par_iter()
        .map(|&n| Ok((n, classify(check(n).map(|r| (bound_ok(&r), r.precision)))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(outcome_report(name, grid_params(samples), &outcomes, clock))
}

/// Fold per-index outcomes: the first failing index is the witness.
fn outcome_report(name: &str, mut params: Params, outcomes: &[(u64, (Status, u32))], clock: Instant) -> VerificationReport {
    let failures: Vec<u64> = outcomes.iter().filter(|o| o.1 .0 == Status::Fail).map(|o| o.0).collect();
    let unresolved: Vec<u64> = outcomes.iter().filter(|o| o.1 .0 == Status::Indeterminate).map(|o| o.0).collect();
    let bits = outcomes.iter().map(|o| o.1 .1).max().unwrap_or(0);
    params.insert("failures".into(), json!(failures.len()));
    if !unresolved.is_empty() {
        params.insert("indeterminate".into(), json!(unresolved));
    }
    let status = if !failures.is_empty() {
        Status::Fail
    } else if !unresolved.is_empty() {
        Status::Indeterminate
    } else {
        Status::Pass
    };
    VerificationReport {
        check: name.to_string(),
        params,
        status,
        witness: failures.first().copied(),
        precision_bits: bits,
        runtime_ms: clock.elapsed().as_millis() as u64,
    }
}

/// Non-scan report over rational sample points; failing points are listed in `params`.
fn rational_grid_report(
    name: &str,
    mut params: Params,
    points: &[BigRational],
    outcomes: &[(Status, u32)],
    clock: Instant,
) -> VerificationReport {
    let listed = |st: Status| -> Vec<Value> {
        points.iter().zip(outcomes).filter(|(_, o)| o.0 == st).map(|(p, _)| json!(p.to_string())).collect()
    };
    let (failed, unresolved) = (listed(Status::Fail), listed(Status::Indeterminate));
    let status = if !failed.is_empty() {
        Status::Fail
    } else if !unresolved.is_empty() {
        Status::Indeterminate
    } else {
        Status::Pass
    };
    params.insert("failures".into(), Value::Array(failed));
    if !unresolved.is_empty() {
        params.insert("indeterminate".into(), Value::Array(unresolved));
    }
    VerificationReport {
        check: name.to_string(),
        params,
        status,
        witness: None,
        precision_bits: outcomes.iter().map(|o| o.1).max().unwrap_or(0),
        runtime_ms: clock.elapsed().as_millis() as u64,
    }
}

fn single_report(name: &str, params: Params, outcome: (Status, u32), clock: Instant) -> VerificationReport {
    VerificationReport {
        check: name.to_string(),
        params,
        status: outcome.0,
        witness: None,
        precision_bits: outcome.1,
        runtime_ms: clock.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("thm15".parse::<Suite>().is_err());
    }

    #[test]
    fn grids() {
        let r = residual_grid();
        assert_eq!(r.len(), 206);
        assert_eq!((r[0], r[200], *r.last().unwrap()), (135, 335, 10_000));
        let s = q_sandwich_grid().unwrap();
        assert_eq!(s[0], 562);
        assert_eq!(*s.last().unwrap(), SAMPLE_MAX_N);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ratio_sandwich_grid()[0], 1365);
        let h = hybrid_grid();
        assert_eq!((h[0], h.len()), (135, 98));
    }

    #[test]
    fn small_bound_is_rejected() {
        let r = Runner::new(SuiteOptions { bound: 20, ..Default::default() }).unwrap();
        assert!(matches!(r.run(Suite::LogConcave), Err(Error::Argument(_))));
        assert!(Runner::new(SuiteOptions { bound: 0, ..Default::default() }).is_err());
        assert!(Runner::new(SuiteOptions { precision: 8, ..Default::default() }).is_err());
    }

    #[test]
    fn logconcave_suite_passes_with_witness_free_report() {
        let r = Runner::new(SuiteOptions { bound: 400, ..Default::default() }).unwrap();
        let reps = r.run(Suite::LogConcave).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].status, Status::Pass);
        assert_eq!(reps[0].params["holds_from"], json!(33));
        assert_eq!(reps[0].params["last_failure"], json!(32));
        assert!(reps[0].well_formed());
    }

    #[test]
    fn threshold_report_witness_rules() {
        let res = |last| ThresholdResult {
            predicate: Predicate::LogConcave,
            scan_bound: 100,
            last_failure: last,
            holds_from: last.map_or(1, |n| n + 1),
            exhaustive_to: 100,
        };
        let now = Instant::now();
        let late = threshold_report("x", Params::new(), &res(Some(40)), Some(33), now);
        assert_eq!((late.status, late.witness), (Status::Fail, Some(40)));
        let early = threshold_report("x", Params::new(), &res(Some(20)), Some(33), now);
        assert_eq!((early.status, early.witness), (Status::Fail, Some(32)));
        let free = threshold_report("x", Params::new(), &res(Some(20)), None, now);
        assert_eq!(free.status, Status::Pass);
    }
}
