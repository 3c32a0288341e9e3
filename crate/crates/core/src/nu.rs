//! The scaled argument `ν(n) = π√(24n+1)/(6√2)`, the Bessel main term for
//! q(n) and the explicit bounds built on it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{escalate, pi_enclosure, rat, Dyadic, Enclosure, DEFAULT_PRECISION};
use crate::bessel::{bessel_i1, sqrt_pi};
use crate::error::{Error, Result};
use crate::partitions::PartitionTable;

/// Smallest n with ν(n) >= 21, where the main-term error bound is asserted.
pub const RESIDUAL_MIN_N: u64 = 135;
/// ν threshold for the relative sandwich `M(n)(1 ∓ ν^{-6})`.
pub const SANDWICH_MIN_NU: i64 = 43;
/// Smallest n with ν(n) >= 67, where the ratio sandwich is asserted.
pub const RATIO_MIN_N: u64 = 1365;
/// Numerator of the lower `1/ν^6` allowance around `E_Q`.
pub const RATIO_LOWER_SLACK: i64 = 135;
/// Integer part of the upper `1/ν^6` allowance `126 + π^8/1296` around `E_Q`.
pub const RATIO_UPPER_SLACK: i64 = 126;

/// ν(n) kept exactly as its radicand `24n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuValue {
    n: u64,
    radicand: BigInt,
}

pub fn nu(n: u64) -> NuValue {
    NuValue { n, radicand: BigInt::from(n) * 24 + 1 }
}

impl NuValue {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    /// `π √(2(24n+1)) / 12`.
    pub fn enclosure(&self, prec: u32) -> Enclosure {
        let root = Enclosure::from_bigint(&(&self.radicand * 2), prec).sqrt().expect("positive radicand");
        pi_enclosure(prec).mul(&root).div_i64(12)
    }

    /// `ν² = π² (24n+1) / 72`, without a square root.
    pub fn square(&self, prec: u32) -> Enclosure {
        pi_enclosure(prec).sqr().mul_rational(&BigRational::new(self.radicand.clone(), BigInt::from(72)))
    }
}

/// Minimal n with `ν(n) >= threshold`, i.e. `24n + 1 >= 72 t² / π²`.
///
/// The right-hand side is irrational for rational `t > 0`, so the answer is
/// decided once its enclosure does not straddle an admissible radicand.
pub fn nu_min_n(threshold: &BigRational) -> Result<u64> {
    if !threshold.is_positive() {
        return Err(Error::Argument(format!("threshold must be positive, got {threshold}")));
    }
    let (n, _) = escalate(DEFAULT_PRECISION, "minimal index for a ν threshold", |p| {
        let x = Enclosure::from_rational(&(threshold * threshold * BigInt::from(72)), p)
            .div(&pi_enclosure(p).sqr())?;
        // smallest n with 24n + 1 >= x, evaluated at both endpoints
        let n_at = |d: &Dyadic| -> BigInt {
            let r = (d.to_rational() - BigRational::one()) / BigInt::from(24);
            r.ceil().to_integer().max(BigInt::zero())
        };
        let (a, b) = (n_at(x.lo()), n_at(x.hi()));
        Ok((a == b).then_some(a))
    })?;
    n.to_u64().ok_or_else(|| Error::Argument(format!("threshold {threshold} too large")))
}

/// `M(n) = √2 π² I_1(ν) / (12 ν)`.
pub fn main_term(n: u64, prec: u32) -> Result<Enclosure> {
    let v = nu(n).enclosure(prec);
    let i1 = bessel_i1(&v)?.value;
    let sqrt2 = Enclosure::from_i64(2, prec).sqrt()?;
    sqrt2.mul(&pi_enclosure(prec).sqr()).mul(&i1).div(&v.mul_i64(12))
}

/// `√3 π^{3/2} e^{ν/3} / (6 √ν)`, the absolute error bound for `q(n) - M(n)`.
pub fn r_error_bound(n: u64, prec: u32) -> Result<Enclosure> {
    let v = nu(n).enclosure(prec);
    let sqrt3 = Enclosure::from_i64(3, prec).sqrt()?;
    let pi = pi_enclosure(prec);
    let pi_32 = pi.mul(&sqrt_pi(prec));
    sqrt3.mul(&pi_32).mul(&v.div_i64(3).exp()).div(&v.sqrt()?.mul_i64(6))
}

/// `E_Q(n) = 1 - π⁴/(36ν³) + π⁴/(12ν⁴) - π⁴/(32ν⁵)`.
pub fn e_q(n: u64, prec: u32) -> Result<Enclosure> {
    let v = nu(n).enclosure(prec);
    let pi4 = pi_enclosure(prec).pow_int(4)?;
    let y = v.recip()?;
    let y3 = y.pow_int(3)?;
    let inner = Enclosure::from_ratio(-1, 36, prec)
        .add(&y.div_i64(12))
        .sub(&y.sqr().div_i64(32));
    Ok(Enclosure::one(prec).add(&pi4.mul(&y3).mul(&inner)))
}

/// Outcome of a certified two-sided bound `lower ≤ value ≤ upper` (or strict).
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n: Option<u64>,
    pub quantity: String,
    pub lower: Enclosure,
    pub value: Enclosure,
    pub upper: Enclosure,
    pub certified: bool,
    /// Whether the index satisfies the hypothesis under which the bound is asserted.
    pub in_range: bool,
    pub precision: u32,
}

fn decide(lower: &Enclosure, value: &Enclosure, upper: &Enclosure, strict: bool) -> Option<bool> {
    let (a, b) = if strict {
        (lower.lt(value), value.lt(upper))
    } else {
        (lower.le(value), value.le(upper))
    };
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

/// Run a bound at increasing precision until it is decided.
fn certify_bound(
    n: Option<u64>,
    quantity: &str,
    in_range: bool,
    start: u32,
    strict: bool,
    eval: impl Fn(u32) -> Result<(Enclosure, Enclosure, Enclosure)>,
) -> Result<BoundReport> {
    let ((lower, value, upper, certified), precision) = escalate(start, quantity, |p| {
        let (l, v, u) = eval(p)?;
        Ok(decide(&l, &v, &u, strict).map(|c| (l, v, u, c)))
    })?;
    Ok(BoundReport { n, quantity: quantity.to_string(), lower, value, upper, certified, in_range, precision })
}

/// Working precision that leaves headroom over the size of `q`.
fn start_precision(start: u32, q: &BigInt) -> u32 {
    start.max(q.bits() as u32 + 64)
}

/// `|q(n) - M(n)| <= r_error_bound(n)`, framed as `M - R <= q <= M + R`.
///
/// Indices below [`RESIDUAL_MIN_N`] are evaluated but flagged out of range.
pub fn residual_check(n: u64, q_n: &BigInt, start: u32) -> Result<BoundReport> {
    certify_bound(Some(n), "main-term residual", n >= RESIDUAL_MIN_N, start_precision(start, q_n), false, |p| {
        let m = main_term(n, p)?;
        let r = r_error_bound(n, p)?;
        Ok((m.sub(&r), Enclosure::from_bigint(q_n, p), m.add(&r)))
    })
}

/// `M(n)(1 - ν^{-6}) <= q(n) <= M(n)(1 + ν^{-6})`.
pub fn q_sandwich_check(n: u64, q_n: &BigInt, start: u32) -> Result<BoundReport> {
    let in_range = n >= nu_min_n(&rat(SANDWICH_MIN_NU, 1))?;
    certify_bound(Some(n), "relative main-term sandwich", in_range, start, false, |p| {
        let m = main_term(n, p)?;
        let eps = nu(n).enclosure(p).pow_int(-6)?;
        let one = Enclosure::one(p);
        Ok((m.mul(&one.sub(&eps)), Enclosure::from_bigint(q_n, p), m.mul(&one.add(&eps))))
    })
}

/// The exact ratio `q(n-1) q(n+1) / q(n)²`.
pub fn q_ratio(table: &PartitionTable, n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Index { index: 0, limit: table.limit() });
    }
    let num = table.get(n - 1)? * table.get(n + 1)?;
    let den = table.get(n)? * table.get(n)?;
    Ok(BigRational::new(num, den))
}

/// `E_Q(n) - 135/ν⁶ < Q(n) < E_Q(n) + (126 + π⁸/1296)/ν⁶`, strict on both sides.
pub fn ratio_sandwich_check(n: u64, table: &PartitionTable, start: u32) -> Result<BoundReport> {
    let ratio = q_ratio(table, n as usize)?;
    certify_bound(Some(n), "ratio sandwich", n >= RATIO_MIN_N, start, true, |p| {
        let eq = e_q(n, p)?;
        let inv6 = nu(n).enclosure(p).pow_int(-6)?;
        let pi8 = pi_enclosure(p).pow_int(8)?;
        let upper_slack = Enclosure::from_i64(RATIO_UPPER_SLACK, p).add(&pi8.div_i64(1296));
        Ok((
            eq.sub(&inv6.mul_i64(RATIO_LOWER_SLACK)),
            Enclosure::from_rational(&ratio, p),
            eq.add(&inv6.mul(&upper_slack)),
        ))
    })
}

/// `r(s) = 692√3 s^{1/2} e^{-s/3} / π^{3/2}`; `r(ν) < 1` makes the constant 173 negligible.
pub fn absorb_helper(s: &Enclosure) -> Result<Enclosure> {
    let p = s.precision();
    let sqrt3 = Enclosure::from_i64(3, p).sqrt()?;
    let pi_32 = pi_enclosure(p).mul(&sqrt_pi(p));
    sqrt3.mul_i64(692).mul(&s.sqrt()?).mul(&s.div_i64(3).neg().exp()).div(&pi_32)
}

/// `L(s) = 4√3 s⁷ e^{-2s/3}`.
pub fn decay_helper(s: &Enclosure) -> Result<Enclosure> {
    let p = s.precision();
    let sqrt3 = Enclosure::from_i64(3, p).sqrt()?;
    Ok(sqrt3.mul_i64(4).mul(&s.pow_int(7)?).mul(&s.mul_rational(&rat(-2, 3)).exp()))
}

/// `G(n) = √(6ν/π) e^{ν/3} / I_1(ν)`, the ratio of the residual bound to the main term.
pub fn relative_residual(n: u64, prec: u32) -> Result<Enclosure> {
    let v = nu(n).enclosure(prec);
    let i1 = bessel_i1(&v)?.value;
    v.mul_i64(6).div(&pi_enclosure(prec))?.sqrt()?.mul(&v.div_i64(3).exp()).div(&i1)
}

/// `r(21) < 1`, `L(43) < 1` and `G(n) <= ν(n)^{-6}` on the given indices.
pub fn helper_monotone_checks(samples: &[u64]) -> Result<Vec<BoundReport>> {
    let zero = |p| Enclosure::zero(p);
    let one = |p| Enclosure::one(p);
    let mut out = vec![
        certify_bound(None, "r(21) < 1", true, DEFAULT_PRECISION, true, |p| {
            Ok((zero(p), absorb_helper(&Enclosure::from_i64(21, p))?, one(p)))
        })?,
        certify_bound(None, "L(43) < 1", true, DEFAULT_PRECISION, true, |p| {
            Ok((zero(p), decay_helper(&Enclosure::from_i64(SANDWICH_MIN_NU, p))?, one(p)))
        })?,
    ];
    let min_n = nu_min_n(&rat(SANDWICH_MIN_NU, 1))?;
    for &n in samples {
        out.push(certify_bound(Some(n), "G(n) <= nu^-6", n >= min_n, DEFAULT_PRECISION, false, |p| {
            let g = relative_residual(n, p)?;
            Ok((zero(p), g, nu(n).enclosure(p).pow_int(-6)?))
        })?);
    }
    Ok(out)
}

/// Lower and upper truncated expansions of `ν(n-1)` and `ν(n+1)` in powers of `1/ν(n)`:
/// `(d_v, u_v, d̄_v, ū_v)`.
pub fn shift_brackets(n: u64, prec: u32) -> Result<[Enclosure; 4]> {
    let v = nu(n).enclosure(prec);
    let pi2 = pi_enclosure(prec).sqr();
    let y = v.recip()?;
    let t1 = pi2.mul(&y).div_i64(6);
    let t3 = pi2.sqr().mul(&y.pow_int(3)?).div_i64(72);
    let t5 = pi2.pow_int(3)?.mul(&y.pow_int(5)?).div_i64(432);
    let t7 = pi2.pow_int(4)?.mul(&y.pow_int(7)?).mul_i64(5).div_i64(5184);
    let u_minus = v.sub(&t1).sub(&t3).sub(&t5);
    let u_plus = v.add(&t1).sub(&t3).add(&t5);
    Ok([u_minus.sub(&t7), u_minus, u_plus.sub(&t7), u_plus])
}

/// Certify `d_v < ν(n-1) < u_v` and `d̄_v < ν(n+1) < ū_v` (asserted for ν(n) >= 3).
pub fn shift_bracket_check(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Argument("shift brackets need n >= 1".into()));
    }
    let (ok, _) = escalate(DEFAULT_PRECISION, "shift brackets", |p| {
        let [d, u, db, ub] = shift_brackets(n, p)?;
        let below = nu(n - 1).enclosure(p);
        let above = nu(n + 1).enclosure(p);
        Ok(match (decide(&d, &below, &u, true), decide(&db, &above, &ub, true)) {
            (Some(a), Some(b)) => Some(a && b),
            (Some(false), _) | (_, Some(false)) => Some(false),
            _ => None,
        })
    })?;
    Ok(ok)
}

/// Upper bound on `|x|` as an `f64`, for diagnostics.
pub fn magnitude_f64(e: &Enclosure) -> f64 {
    Dyadic::max(&e.lo().abs(), &e.hi().abs()).to_f64()
}

/// Certified `ν(n) >= t`, used by range gates.
pub fn nu_at_least(n: u64, t: i64) -> Result<bool> {
    let (ok, _) = escalate(DEFAULT_PRECISION, "ν comparison", |p| {
        Ok(Enclosure::from_i64(t, p).le(&nu(n).enclosure(p)))
    })?;
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::q_table;
    use proptest::prelude::*;

    #[test]
    fn nu_examples() {
        assert!(nu_at_least(135, 21).unwrap());
        assert!(!nu_at_least(134, 21).unwrap());
        let v = nu(1365);
        assert_eq!(v.radicand(), &BigInt::from(32761));
        assert_eq!(BigInt::from(181).pow(2), BigInt::from(32761));
        assert!(nu_at_least(1365, 67).unwrap());
        let z = nu(0).enclosure(128);
        assert!((z.mid_f64() - 0.370_240_244_5).abs() < 1e-9, "{z}");
    }

    #[test]
    fn thresholds() {
        assert_eq!(nu_min_n(&rat(21, 1)).unwrap(), 135);
        assert_eq!(nu_min_n(&rat(67, 1)).unwrap(), 1365);
        assert_eq!(nu_min_n(&rat(43, 1)).unwrap(), 562);
        assert_eq!(nu_min_n(&rat(60, 1)).unwrap(), 1095);
        assert!(nu_min_n(&rat(0, 1)).is_err());
    }

    #[test]
    fn shift_identities() {
        for n in [1u64, 10, 135, 5000] {
            let p = 192;
            let shift = pi_enclosure(p).sqr().div_i64(3);
            let v2 = nu(n).square(p);
            assert!(nu(n - 1).square(p).intersects(&v2.sub(&shift)));
            assert!(nu(n + 1).square(p).intersects(&v2.add(&shift)));
            let direct = nu(n).enclosure(p).sqr();
            assert!(direct.intersects(&v2));
        }
    }

    #[test]
    fn brackets_hold_from_nu_three() {
        let start = nu_min_n(&rat(3, 1)).unwrap();
        for n in (start..start + 30).chain([500, 5000, 100_000]) {
            assert!(shift_bracket_check(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn main_term_examples() {
        let q = q_table(1001);
        let r = residual_check(135, &q.values()[135], DEFAULT_PRECISION).unwrap();
        assert!(r.certified && r.in_range);
        let low = residual_check(100, &q.values()[100], DEFAULT_PRECISION).unwrap();
        assert!(!low.in_range);
        let s = q_sandwich_check(1000, &q.values()[1000], DEFAULT_PRECISION).unwrap();
        assert!(s.certified && s.in_range);
        assert!(main_term(10, 128).unwrap().sign() == Some(1));
    }

    #[test]
    fn e_q_shape() {
        let big = e_q(1_000_000, 128).unwrap();
        assert!(magnitude_f64(&big.sub(&Enclosure::one(128))) < 1e-6);
        let start = nu_min_n(&rat(5, 1)).unwrap();
        for n in [start, start + 1, 100, 1365, 10_000] {
            assert_eq!(e_q(n, 128).unwrap().lt(&Enclosure::one(128)), Some(true));
        }
    }

    #[test]
    fn ratio_sandwich_at_boundary() {
        let q = q_table(1400);
        let rep = ratio_sandwich_check(1365, &q, DEFAULT_PRECISION).unwrap();
        assert!(rep.certified && rep.in_range);
    }

    #[test]
    fn helpers() {
        let f = absorb_helper(&Enclosure::from_i64(21, 128)).unwrap();
        assert!((f.mid_f64() - 0.90).abs() < 0.01, "{f}");
        let l = decay_helper(&Enclosure::from_i64(43, 128)).unwrap();
        assert!((l.mid_f64() - 0.667).abs() < 0.01, "{l}");
        let reps = helper_monotone_checks(&[562, 1000]).unwrap();
        assert!(reps.iter().all(|r| r.certified && r.in_range));
    }

    #[test]
    fn bound_to_main_term_ratio_decreases() {
        let mut prev = None;
        for n in [135u64, 300, 1000, 3000, 10_000] {
            let g = relative_residual(n, 192).unwrap();
            if let Some(p) = prev {
                assert_eq!(g.lt(&p), Some(true));
            }
            prev = Some(g);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn brackets_random(n in 3u64..2_000_000) {
            prop_assert!(shift_bracket_check(n).unwrap());
        }
    }
}
