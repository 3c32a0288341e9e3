//! Transcendental constants and functions on enclosures.
//!
//! All routines evaluate a truncated series in interval arithmetic and add a
//! rigorous bound on the discarded tail, so containment never depends on the
//! truncation point.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Dyadic, Enclosure, Round};
use crate::error::{Error, Result};

const GUARD: u32 = 32;

/// `floor(2^wp * atan(1/x))` within `err` units, by the alternating Gregory series.
fn atan_inv_fixed(x: u64, wp: u32) -> (BigInt, u64) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = (BigInt::one() << wp) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut i = 0u64;
    while !power.is_zero() {
        let t = &power / BigInt::from(2 * i + 1);
        if i.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        power /= &x2;
        i += 1;
        terms += 1;
    }
    // each term is off by < 3 units, the omitted tail by < 2
    (sum, 3 * terms + 2)
}

fn compute_pi(prec: u32) -> Enclosure {
    let wp = prec + GUARD;
    let (a, ea) = atan_inv_fixed(5, wp);
    let (b, eb) = atan_inv_fixed(239, wp);
    let center = BigInt::from(16) * a - BigInt::from(4) * b;
    let err = BigInt::from(16 * ea + 4 * eb);
    let lo = Dyadic::new(&center - &err, -(wp as i64));
    let hi = Dyadic::new(&center + &err, -(wp as i64));
    Enclosure::new(lo.round(prec, Round::Down), hi.round(prec, Round::Up), prec)
}

/// Enclosure of π at `prec` bits, cached per precision.
pub fn pi_enclosure(prec: u32) -> Enclosure {
    static CACHE: OnceLock<Mutex<HashMap<u32, Enclosure>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&prec) {
        return p.clone();
    }
    let p = compute_pi(prec);
    cache.lock().unwrap().insert(prec, p.clone());
    p
}

/// `atanh(z)` for an enclosure `0 <= z <= 1/2`.
fn atanh_small(z: &Enclosure, wp: u32) -> Enclosure {
    let z2 = z.sqr();
    let mut power = z.clone();
    let mut sum = Enclosure::zero(wp);
    let eps = Dyadic::pow2(-(wp as i64) - 4);
    let mut k = 1i64;
    loop {
        let term = power.div_i64(k);
        sum = sum.add(&term);
        power = power.mul(&z2);
        k += 2;
        let next = power.div_i64(k);
        if next.mag() < eps {
            // geometric tail with ratio z^2 <= 1/4
            let tail = Dyadic::mul_round(&next.mag(), &Dyadic::from_i64(2), wp, Round::Up);
            return sum.widen(&tail);
        }
    }
}

fn compute_ln2(prec: u32) -> Enclosure {
    let wp = prec + GUARD;
    let third = Enclosure::from_ratio(1, 3, wp);
    atanh_small(&third, wp).mul_pow2(1).with_precision(prec)
}

/// Enclosure of `ln 2`, cached per precision.
pub fn ln2_enclosure(prec: u32) -> Enclosure {
    static CACHE: OnceLock<Mutex<HashMap<u32, Enclosure>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&prec) {
        return p.clone();
    }
    let p = compute_ln2(prec);
    cache.lock().unwrap().insert(prec, p.clone());
    p
}

/// `exp` at a single dyadic point.
fn exp_point(x: &Dyadic, prec: u32) -> Enclosure {
    if x.is_zero() {
        return Enclosure::one(prec);
    }
    // scale so that |r| < 2^-10, then square back up
    let m = (x.msb() + 10).max(0) as u32;
    let wp = prec + m + GUARD;
    let r = Enclosure::point(x.mul_pow2(-(m as i64)), wp);
    let eps = Dyadic::pow2(-(wp as i64) - 4);
    let mut sum = Enclosure::one(wp);
    let mut term = Enclosure::one(wp);
    let mut i = 1i64;
    loop {
        term = term.mul(&r).div_i64(i);
        sum = sum.add(&term);
        if term.mag() < eps {
            // remaining terms are bounded by |term| * sum_j |r|^j with |r| < 2^-10
            break;
        }
        i += 1;
    }
    let mut y = sum.widen(&term.mag());
    for _ in 0..m {
        y = y.sqr();
    }
    y.with_precision(prec)
}

pub(super) fn exp(x: &Enclosure) -> Enclosure {
    let p = x.precision();
    let lo = exp_point(x.lo(), p);
    if x.lo() == x.hi() {
        return lo;
    }
    let hi = exp_point(x.hi(), p);
    Enclosure::new(lo.lo().clone(), hi.hi().clone(), p)
}

/// `ln` at a single positive dyadic point.
fn ln_point(x: &Dyadic, prec: u32) -> Enclosure {
    let wp = prec + GUARD;
    // x = y * 2^k with y in [1, 2)
    let k = x.msb() - 1;
    let y = Enclosure::point(x.mul_pow2(-k), wp);
    let one = Enclosure::one(wp);
    let z = y.sub(&one).div(&y.add(&one)).expect("y + 1 >= 2");
    let ln_y = atanh_small(&z, wp).mul_pow2(1);
    ln2_enclosure(wp).mul_i64(k).add(&ln_y).with_precision(prec)
}

pub(super) fn ln(x: &Enclosure) -> Result<Enclosure> {
    if x.lo().signum() <= 0 {
        return Err(Error::Domain(format!("logarithm of {x:?}")));
    }
    let p = x.precision();
    let lo = ln_point(x.lo(), p);
    if x.lo() == x.hi() {
        return Ok(lo);
    }
    let hi = ln_point(x.hi(), p);
    Ok(Enclosure::new(lo.lo().clone(), hi.hi().clone(), p))
}

/// Taylor series of `(cos θ, sin θ)` for an enclosure with `|θ| <= 1`.
fn cos_sin_small(theta: &Enclosure, wp: u32) -> (Enclosure, Enclosure) {
    let t2 = theta.sqr().neg();
    let eps = Dyadic::pow2(-(wp as i64) - 4);
    let mut c_term = Enclosure::one(wp);
    let mut s_term = theta.clone();
    let mut cos = c_term.clone();
    let mut sin = s_term.clone();
    let mut i = 1i64;
    loop {
        c_term = c_term.mul(&t2).div_i64((2 * i - 1) * (2 * i));
        s_term = s_term.mul(&t2).div_i64((2 * i) * (2 * i + 1));
        cos = cos.add(&c_term);
        sin = sin.add(&s_term);
        if c_term.mag() < eps && s_term.mag() < eps {
            break;
        }
        i += 1;
    }
    // alternating series with decreasing terms: the tail is below the last term
    (cos.widen(&c_term.mag()), sin.widen(&s_term.mag()))
}

/// `(cos(πx), sin(πx))` for an exact rational `x`.
///
/// The argument is reduced modulo 2 and into `[0, 1/4]` with exact rational
/// arithmetic before any enclosure is formed.
pub fn cos_sin_pi(x: &BigRational, prec: u32) -> (Enclosure, Enclosure) {
    let two = BigRational::from_integer(BigInt::from(2));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    // y = x mod 2 in [0, 2)
    let q = (x / &two).floor();
    let mut y = x - &q * &two;
    let mut negate = false;
    if y >= BigRational::one() {
        y -= BigRational::one();
        negate = true;
    }
    // now y in [0, 1); track (cos, sin) as a rotation of the reduced pair
    let mut swap = false;
    let mut neg_cos = false;
    if y >= half {
        // cos(πy) = -sin(π(y-1/2)), sin(πy) = cos(π(y-1/2))
        y -= &half;
        swap = true;
        neg_cos = true;
    }
    let mut swap2 = false;
    if y > quarter {
        // cos(πy) = sin(π(1/2-y)), sin(πy) = cos(π(1/2-y))
        y = &half - &y;
        swap2 = true;
    }
    let wp = prec + GUARD;
    let theta = pi_enclosure(wp).mul_rational(&y);
    let (mut c, mut s) = cos_sin_small(&theta, wp);
    if swap2 {
        std::mem::swap(&mut c, &mut s);
    }
    if swap {
        std::mem::swap(&mut c, &mut s);
    }
    if neg_cos {
        c = c.neg();
    }
    if negate {
        c = c.neg();
        s = s.neg();
    }
    (c.with_precision(prec), s.with_precision(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    // 40 digits of π and related constants
    const PI_NUM: &str = "3141592653589793238462643383279502884197";
    const PI_SQ_NUM: &str = "9869604401089358618834490999876151135313";
    const LN2_NUM: &str = "693147180559945309417232121458176568075";
    const E_NUM: &str = "2718281828459045235360287471352662497757";

    fn digits(num: &str, scale: u32) -> (BigRational, BigRational) {
        let n: BigInt = num.parse().unwrap();
        let d = BigInt::from(10).pow(scale);
        (BigRational::new(n.clone(), d.clone()), BigRational::new(n + 1, d))
    }

    fn overlaps(e: &Enclosure, (lo, hi): (BigRational, BigRational)) -> bool {
        e.lo().cmp_rational(&hi).is_le() && e.hi().cmp_rational(&lo).is_ge()
    }

    #[test]
    fn pi_contains_published_digits_and_is_narrow() {
        let p = pi_enclosure(64);
        assert!(overlaps(&p, digits(PI_NUM, 39)));
        assert!(p.width() < Dyadic::pow2(-60));
        let fine = pi_enclosure(256);
        assert!(p.contains(&fine));
        assert!(fine.width() < Dyadic::pow2(-252));
    }

    #[test]
    fn pi_squared_from_midpoint() {
        let p = pi_enclosure(160);
        let sq = p.sqr();
        assert!(overlaps(&sq, digits(PI_SQ_NUM, 39)));
    }

    #[test]
    fn exp_one_and_ln_two() {
        let e = Enclosure::one(160).exp();
        assert!(overlaps(&e, digits(E_NUM, 39)));
        let l = ln2_enclosure(160);
        assert!(overlaps(&l, digits(LN2_NUM, 39)));
        let via_ln = Enclosure::from_i64(2, 160).ln().unwrap();
        assert!(via_ln.intersects(&l));
    }

    #[test]
    fn exp_ln_roundtrip() {
        for v in [1i64, 7, 1000, 123_456_789] {
            let x = Enclosure::from_i64(v, 128);
            let back = x.ln().unwrap().exp();
            assert!(back.contains_int(&BigInt::from(v)), "{v}: {back:?}");
        }
    }

    #[test]
    fn exp_of_large_and_negative_arguments() {
        // e^100 * e^-100 = 1
        let a = Enclosure::from_i64(100, 192).exp();
        let b = Enclosure::from_i64(-100, 192).exp();
        assert!(a.mul(&b).contains_int(&BigInt::one()));
        let rel = Dyadic::div_round(&a.width(), a.lo(), 64, Round::Up);
        assert!(rel < Dyadic::pow2(-180));
    }

    #[test]
    fn cos_sin_at_special_angles() {
        let (c, s) = cos_sin_pi(&rat(0, 1), 128);
        assert!(c.contains_int(&BigInt::one()) && s.contains_int(&BigInt::zero()));
        let (c, s) = cos_sin_pi(&rat(1, 2), 128);
        assert!(c.contains_int(&BigInt::zero()) && s.contains_int(&BigInt::one()));
        let (c, s) = cos_sin_pi(&rat(7, 1), 128);
        assert!(c.contains_int(&BigInt::from(-1)) && s.contains_int(&BigInt::zero()));
        let (c, s) = cos_sin_pi(&rat(1, 3), 128);
        assert!(c.contains_rational(&rat(1, 2)));
        let three_quarters = rat(3, 4);
        assert!(s.sqr().contains_rational(&three_quarters));
        let (c, s) = cos_sin_pi(&rat(-5, 6), 128);
        assert!(s.contains_rational(&rat(-1, 2)));
        assert!(c.sqr().contains_rational(&three_quarters) && c.sign() == Some(-1));
    }

    #[test]
    fn pythagoras_on_a_grid() {
        for k in 1..60 {
            let x = rat(k * 7 - 200, 37);
            let (c, s) = cos_sin_pi(&x, 128);
            let one = c.sqr().add(&s.sqr());
            assert!(one.contains_int(&BigInt::one()), "x={x}: {one:?}");
            assert!(c.width() < Dyadic::pow2(-120));
        }
    }
}
