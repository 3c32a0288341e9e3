//! Enclosure (interval) arithmetic with outward rounding.
//!
//! Every [`Enclosure`] returned by an operation contains the exact image of
//! its arguments. Comparisons are three-way: two enclosures are only ordered
//! when they are disjoint, otherwise the answer is
//! [`CompareResult::Indeterminate`] and the caller refines the precision via
//! [`escalate`].

mod dyadic;
mod elementary;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub use dyadic::{Dyadic, Round};
pub use elementary::{cos_sin_pi, ln2_enclosure, pi_enclosure};

use crate::error::{Error, Result};

/// Starting working precision for every verification predicate.
pub const DEFAULT_PRECISION: u32 = 192;
/// Precision at which an indeterminate comparison becomes [`Error::PrecisionExhausted`].
pub const PRECISION_CAP: u32 = 4096;
/// Smallest precision accepted by the constructors.
pub const MIN_PRECISION: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompareResult {
    CertifiedLess,
    CertifiedGreater,
    Indeterminate,
}

/// A closed interval `[lo, hi]` of dyadic endpoints.
///
/// `prec` is the working precision (bits) the enclosure was produced at;
/// binary operations work at the larger precision of their operands.
#[derive(Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Enclosure {
    /// Build from endpoints; panics if `lo > hi`.
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "enclosure endpoints out of order: {lo:?} > {hi:?}");
        Enclosure {
            lo,
            hi,
            prec: prec.max(MIN_PRECISION),
        }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        Enclosure::new(x.clone(), x, prec)
    }

    pub fn zero(prec: u32) -> Self {
        Enclosure::point(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Enclosure::point(Dyadic::one(), prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Enclosure::from_bigint(&BigInt::from(v), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        let x = Dyadic::from_bigint(v.clone());
        Enclosure::new(x.round(prec, Round::Down), x.round(prec, Round::Up), prec)
    }

    pub fn from_ratio(num: i64, den: i64, prec: u32) -> Self {
        Enclosure::from_rational(&BigRational::new(num.into(), den.into()), prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Enclosure::new(
            Dyadic::from_rational(r, prec, Round::Down),
            Dyadic::from_rational(r, prec, Round::Up),
            prec,
        )
    }

    /// Hull of two enclosures.
    pub fn hull(&self, other: &Enclosure) -> Self {
        Enclosure::new(
            Dyadic::min(&self.lo, &other.lo),
            Dyadic::max(&self.hi, &other.hi),
            self.prec.max(other.prec),
        )
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Same interval, tagged with a different working precision.
    pub fn with_precision(&self, prec: u32) -> Self {
        Enclosure {
            lo: self.lo.round(prec, Round::Down),
            hi: self.hi.round(prec, Round::Up),
            prec: prec.max(MIN_PRECISION),
        }
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> Dyadic {
        Dyadic::sub_round(&self.hi, &self.lo, self.prec, Round::Up)
    }

    pub fn mid_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    /// Upper bound on `|x|` over the enclosure.
    pub fn mag(&self) -> Dyadic {
        Dyadic::max(&self.lo.abs(), &self.hi.abs())
    }

    /// The enclosure of `|x|`.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            Enclosure::new(Dyadic::zero(), self.mag(), self.prec)
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        self.lo.cmp_rational(r) != Ordering::Greater && self.hi.cmp_rational(r) != Ordering::Less
    }

    pub fn contains_int(&self, v: &BigInt) -> bool {
        self.contains_rational(&BigRational::from_integer(v.clone()))
    }

    /// True when `other` lies inside `self`.
    pub fn contains(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Widen both endpoints by `eps >= 0`.
    pub fn widen(&self, eps: &Dyadic) -> Self {
        Enclosure::new(
            Dyadic::sub_round(&self.lo, eps, self.prec, Round::Down),
            Dyadic::add_round(&self.hi, eps, self.prec, Round::Up),
            self.prec,
        )
    }

    pub fn compare(&self, other: &Enclosure) -> CompareResult {
        if self.hi < other.lo {
            CompareResult::CertifiedLess
        } else if self.lo > other.hi {
            CompareResult::CertifiedGreater
        } else {
            CompareResult::Indeterminate
        }
    }

    /// `Some(true)` if certainly `self < other`, `Some(false)` if certainly not.
    pub fn lt(&self, other: &Enclosure) -> Option<bool> {
        if self.hi < other.lo {
            Some(true)
        } else if self.lo >= other.hi {
            Some(false)
        } else {
            None
        }
    }

    /// `Some(true)` if certainly `self <= other`, `Some(false)` if certainly not.
    pub fn le(&self, other: &Enclosure) -> Option<bool> {
        if self.hi <= other.lo {
            Some(true)
        } else if self.lo > other.hi {
            Some(false)
        } else {
            None
        }
    }

    /// Certified sign: `Some(1)` positive, `Some(-1)` negative, `None` if it straddles zero.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.signum() > 0 {
            Some(1)
        } else if self.hi.signum() < 0 {
            Some(-1)
        } else {
            None
        }
    }

    fn p(&self, other: &Enclosure) -> u32 {
        self.prec.max(other.prec)
    }

    pub fn add(&self, other: &Enclosure) -> Self {
        let p = self.p(other);
        Enclosure {
            lo: Dyadic::add_round(&self.lo, &other.lo, p, Round::Down),
            hi: Dyadic::add_round(&self.hi, &other.hi, p, Round::Up),
            prec: p,
        }
    }

    pub fn sub(&self, other: &Enclosure) -> Self {
        let p = self.p(other);
        Enclosure {
            lo: Dyadic::sub_round(&self.lo, &other.hi, p, Round::Down),
            hi: Dyadic::sub_round(&self.hi, &other.lo, p, Round::Up),
            prec: p,
        }
    }

    pub fn neg(&self) -> Self {
        Enclosure {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Enclosure) -> Self {
        let p = self.p(other);
        let dn = |a: &Dyadic, b: &Dyadic| Dyadic::mul_round(a, b, p, Round::Down);
        let up = |a: &Dyadic, b: &Dyadic| Dyadic::mul_round(a, b, p, Round::Up);
        let (a, b) = (self, other);
        let class = |e: &Enclosure| {
            if e.lo.signum() >= 0 {
                1
            } else if e.hi.signum() <= 0 {
                -1
            } else {
                0
            }
        };
        let (lo, hi) = match (class(a), class(b)) {
            (1, 1) => (dn(&a.lo, &b.lo), up(&a.hi, &b.hi)),
            (1, -1) => (dn(&a.hi, &b.lo), up(&a.lo, &b.hi)),
            (-1, 1) => (dn(&a.lo, &b.hi), up(&a.hi, &b.lo)),
            (-1, -1) => (dn(&a.hi, &b.hi), up(&a.lo, &b.lo)),
            (1, 0) => (dn(&a.hi, &b.lo), up(&a.hi, &b.hi)),
            (0, 1) => (dn(&a.lo, &b.hi), up(&a.hi, &b.hi)),
            (-1, 0) => (dn(&a.lo, &b.hi), up(&a.lo, &b.lo)),
            (0, -1) => (dn(&a.hi, &b.lo), up(&a.lo, &b.lo)),
            _ => (
                Dyadic::min(&dn(&a.lo, &b.hi), &dn(&a.hi, &b.lo)),
                Dyadic::max(&up(&a.lo, &b.lo), &up(&a.hi, &b.hi)),
            ),
        };
        Enclosure { lo, hi, prec: p }
    }

    pub fn sqr(&self) -> Self {
        let a = self.abs();
        Enclosure {
            lo: Dyadic::mul_round(&a.lo, &a.lo, a.prec, Round::Down),
            hi: Dyadic::mul_round(&a.hi, &a.hi, a.prec, Round::Up),
            prec: a.prec,
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::Domain(format!("reciprocal of {self:?} which contains 0")));
        }
        let one = Dyadic::one();
        Ok(Enclosure {
            lo: Dyadic::div_round(&one, &self.hi, self.prec, Round::Down),
            hi: Dyadic::div_round(&one, &self.lo, self.prec, Round::Up),
            prec: self.prec,
        })
    }

    pub fn div(&self, other: &Enclosure) -> Result<Self> {
        if other.contains_zero() {
            return Err(Error::Domain(format!("divisor {other:?} contains 0")));
        }
        if other.lo == other.hi {
            // point divisor: divide endpoints directly
            let p = self.p(other);
            let d = &other.lo;
            let (a, b) = if d.signum() > 0 {
                (&self.lo, &self.hi)
            } else {
                (&self.hi, &self.lo)
            };
            return Ok(Enclosure {
                lo: Dyadic::div_round(a, d, p, Round::Down),
                hi: Dyadic::div_round(b, d, p, Round::Up),
                prec: p,
            });
        }
        Ok(self.mul(&other.recip()?))
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul(&Enclosure::from_i64(k, self.prec))
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self.div(&Enclosure::from_i64(k, self.prec))
            .expect("division by a non-zero integer")
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        if r.denom().is_one() {
            return self.mul(&Enclosure::from_bigint(r.numer(), self.prec));
        }
        let num = self.mul(&Enclosure::from_bigint(r.numer(), self.prec));
        num.div(&Enclosure::from_bigint(r.denom(), self.prec))
            .expect("rational denominators are non-zero")
    }

    /// Exact scaling by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        Enclosure {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.lo.is_negative() {
            return Err(Error::Domain(format!("square root of {self:?}")));
        }
        Ok(Enclosure {
            lo: Dyadic::sqrt_round(&self.lo, self.prec, Round::Down),
            hi: Dyadic::sqrt_round(&self.hi, self.prec, Round::Up),
            prec: self.prec,
        })
    }

    /// Integer power. Negative exponents require `0` outside the enclosure.
    pub fn pow_int(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.pow_int(-n)?.recip();
        }
        let n = n as u64;
        if n == 0 {
            return Ok(Enclosure::one(self.prec));
        }
        let p = self.prec;
        if n.is_multiple_of(2) {
            let a = self.abs();
            return Ok(Enclosure {
                lo: pow_nonneg(&a.lo, n, p, Round::Down),
                hi: pow_nonneg(&a.hi, n, p, Round::Up),
                prec: p,
            });
        }
        let odd = |x: &Dyadic, dir: Round| {
            if x.is_negative() {
                pow_nonneg(&x.abs(), n, p, dir.flip()).neg()
            } else {
                pow_nonneg(x, n, p, dir)
            }
        };
        Ok(Enclosure {
            lo: odd(&self.lo, Round::Down),
            hi: odd(&self.hi, Round::Up),
            prec: p,
        })
    }

    pub fn exp(&self) -> Self {
        elementary::exp(self)
    }

    pub fn ln(&self) -> Result<Self> {
        elementary::ln(self)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid_f64()
    }
}

fn pow_nonneg(x: &Dyadic, mut n: u64, prec: u32, dir: Round) -> Dyadic {
    let mut base = x.clone();
    let mut acc = Dyadic::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = Dyadic::mul_round(&acc, &base, prec, dir);
        }
        n >>= 1;
        if n > 0 {
            base = Dyadic::mul_round(&base, &base, prec, dir);
        }
    }
    acc
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]@{}", self.lo, self.hi, self.prec)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a Enclosure> for &'a Enclosure {
            type Output = Enclosure;
            fn $m(self, rhs: &'a Enclosure) -> Enclosure {
                Enclosure::$m(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure::neg(self)
    }
}

impl Neg for Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure::neg(&self)
    }
}

/// Run `attempt` at the starting precision and double it while the attempt
/// reports `None` (indeterminate), up to [`PRECISION_CAP`].
///
/// Returns the decided value together with the precision that decided it.
pub fn escalate<T>(
    start: u32,
    what: &str,
    mut attempt: impl FnMut(u32) -> Result<Option<T>>,
) -> Result<(T, u32)> {
    let mut prec = start.max(MIN_PRECISION);
    loop {
        if let Some(v) = attempt(prec)? {
            return Ok((v, prec));
        }
        if prec >= PRECISION_CAP {
            return Err(Error::PrecisionExhausted {
                cap: PRECISION_CAP,
                what: what.to_string(),
            });
        }
        prec = (prec * 2).min(PRECISION_CAP);
    }
}

/// Shorthand for a small exact rational such as `37495/8192`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        rat(n, d)
    }

    #[test]
    fn add_of_integers_is_exact() {
        let s = Enclosure::from_i64(1, 64).add(&Enclosure::from_i64(2, 64));
        assert!(s.contains_int(&BigInt::from(3)));
        assert_eq!(s.lo(), s.hi());
    }

    #[test]
    fn sqrt_of_four_is_tight() {
        let s = Enclosure::from_i64(4, 64).sqrt().unwrap();
        assert!(s.contains_int(&BigInt::from(2)));
        assert!(s.width() <= Dyadic::pow2(-60));
    }

    #[test]
    fn exp_of_zero_contains_one() {
        assert!(Enclosure::zero(64).exp().contains_int(&BigInt::one()));
    }

    #[test]
    fn domain_errors() {
        let straddle = Enclosure::new(Dyadic::from_i64(-1), Dyadic::from_i64(1), 64);
        assert!(matches!(Enclosure::one(64).div(&straddle), Err(Error::Domain(_))));
        assert!(matches!(straddle.sqrt(), Err(Error::Domain(_))));
        assert!(matches!(Enclosure::zero(64).ln(), Err(Error::Domain(_))));
    }

    #[test]
    fn compare_three_way() {
        let e = |a: i64, b: i64| Enclosure::new(Dyadic::from_i64(a), Dyadic::from_i64(b), 64);
        assert_eq!(e(1, 2).compare(&e(3, 4)), CompareResult::CertifiedLess);
        assert_eq!(e(1, 3).compare(&e(2, 4)), CompareResult::Indeterminate);
        assert_eq!(e(5, 5).compare(&e(1, 1)), CompareResult::CertifiedGreater);
    }

    #[test]
    fn pow_int_handles_signs() {
        let x = Enclosure::new(Dyadic::from_i64(-2), Dyadic::from_i64(3), 64);
        let sq = x.pow_int(2).unwrap();
        assert_eq!(sq.lo(), &Dyadic::zero());
        assert_eq!(sq.hi(), &Dyadic::from_i64(9));
        let cube = x.pow_int(3).unwrap();
        assert_eq!(cube.lo(), &Dyadic::from_i64(-8));
        assert_eq!(cube.hi(), &Dyadic::from_i64(27));
        let inv = Enclosure::from_i64(2, 64).pow_int(-3).unwrap();
        assert!(inv.contains_rational(&r(1, 8)));
    }

    #[test]
    fn escalation_doubles_until_decided() {
        let mut seen = Vec::new();
        let (v, p) = escalate(192, "test", |prec| {
            seen.push(prec);
            Ok((prec >= 768).then_some(prec))
        })
        .unwrap();
        assert_eq!((v, p), (768, 768));
        assert_eq!(seen, vec![192, 384, 768]);
        let err = escalate::<()>(192, "never", |_| Ok(None)).unwrap_err();
        assert!(matches!(err, Error::PrecisionExhausted { cap: 4096, .. }));
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-1000i64..1000, 1i64..200).prop_map(|(n, d)| r(n, d))
    }

    proptest! {
        #[test]
        fn composed_expression_contains_exact_value(
            a in small_rational(), b in small_rational(), c in small_rational(), prec in 32u32..200
        ) {
            // (a + b) * c - a / (|b| + 1)
            let ea = Enclosure::from_rational(&a, prec);
            let eb = Enclosure::from_rational(&b, prec);
            let ec = Enclosure::from_rational(&c, prec);
            let denom = eb.abs().add(&Enclosure::one(prec));
            let got = ea.add(&eb).mul(&ec).sub(&ea.div(&denom).unwrap());
            let b_abs = if b.is_negative() { -b.clone() } else { b.clone() };
            let exact = (&a + &b) * &c - &a / (b_abs + BigRational::one());
            prop_assert!(got.contains_rational(&exact));
        }

        #[test]
        fn refinement_intersects_and_does_not_widen(a in small_rational(), b in 1i64..500) {
            let expr = |prec: u32| {
                let x = Enclosure::from_rational(&a, prec);
                x.mul(&x).add(&Enclosure::from_i64(b, prec)).sqrt().unwrap().exp()
            };
            let coarse = expr(64);
            let fine = expr(128);
            prop_assert!(coarse.intersects(&fine));
            // fine width never exceeds the coarse width plus one coarse ulp of slack
            let slack = Dyadic::mul_round(&coarse.mag(), &Dyadic::pow2(-60), 64, Round::Up);
            let bound = Dyadic::add_round(&coarse.width(), &slack, 64, Round::Up);
            prop_assert!(fine.width() <= bound);
        }

        #[test]
        fn certified_less_implies_rational_less(a in small_rational(), b in small_rational()) {
            let ea = Enclosure::from_rational(&a, 40);
            let eb = Enclosure::from_rational(&b, 40);
            match ea.compare(&eb) {
                CompareResult::CertifiedLess => prop_assert!(a < b),
                CompareResult::CertifiedGreater => prop_assert!(a > b),
                CompareResult::Indeterminate => {}
            }
        }
    }
}
