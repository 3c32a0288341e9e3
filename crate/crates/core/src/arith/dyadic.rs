//! Arbitrary-precision binary floating point numbers with directed rounding.
//!
//! A [`Dyadic`] is `mant * 2^exp` with an unbounded integer mantissa. Every
//! operation that cannot be carried out exactly takes a target precision in
//! bits and a rounding direction; [`Round::Down`] results are never above the
//! exact value and [`Round::Up`] results are never below it.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// `mant * 2^exp`, kept with an odd mantissa (or zero mantissa and zero exponent).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn shr_round(m: &BigInt, k: u64, dir: Round) -> BigInt {
    if k == 0 {
        return m.clone();
    }
    let (sign, mag) = (m.sign(), m.magnitude());
    let trunc: BigUint = mag >> k;
    let exact = trunc.clone() << k == *mag;
    // truncation moves towards zero; bump away from zero when the direction asks for it
    let away = !exact
        && matches!(
            (sign, dir),
            (Sign::Plus, Round::Up) | (Sign::Minus, Round::Down)
        );
    let mag = if away { trunc + 1u32 } else { trunc };
    BigInt::from_biguint(if sign == Sign::Minus { Sign::Minus } else { Sign::Plus }, mag)
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }

    /// `2^e`
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: e,
        }
    }

    fn normalize(&mut self) {
        match self.mant.trailing_zeros() {
            None => self.exp = 0,
            Some(0) => {}
            Some(tz) => {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Smallest `e` with `|self| < 2^e`; `i64::MIN` for zero.
    pub fn msb(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.mant.bits() as i64 + self.exp
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        Dyadic::new(shr_round(&self.mant, k, dir), self.exp + k as i64)
    }

    fn add_exact(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let e = a.exp.min(b.exp);
        let ma = &a.mant << (a.exp - e) as u64;
        let mb = &b.mant << (b.exp - e) as u64;
        Dyadic::new(ma + mb, e)
    }

    pub fn add_round(a: &Dyadic, b: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        if a.is_zero() {
            return b.round(prec, dir);
        }
        if b.is_zero() {
            return a.round(prec, dir);
        }
        let (big, small) = if a.msb() >= b.msb() { (a, b) } else { (b, a) };
        let limit = big.msb() - prec as i64 - 4;
        if small.msb() < limit {
            // |small| < 2^limit sits far below the rounding granularity of `big`:
            // replace it by a bound on the correct side of it.
            let sticky = match (dir, small.is_negative()) {
                (Round::Down, true) => Dyadic::new(BigInt::from(-1), limit),
                (Round::Up, false) => Dyadic::pow2(limit),
                _ => Dyadic::zero(),
            };
            return Dyadic::add_exact(big, &sticky).round(prec, dir);
        }
        Dyadic::add_exact(a, b).round(prec, dir)
    }

    pub fn sub_round(a: &Dyadic, b: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        Dyadic::add_round(a, &b.neg(), prec, dir)
    }

    pub fn mul_exact(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.is_zero() || b.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: &a.mant * &b.mant,
            exp: a.exp + b.exp,
        }
    }

    pub fn mul_round(a: &Dyadic, b: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        Dyadic::mul_exact(a, b).round(prec, dir)
    }

    /// `a / b` rounded; `b` must be non-zero.
    pub fn div_round(a: &Dyadic, b: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!b.is_zero(), "division by zero dyadic");
        if a.is_zero() {
            return Dyadic::zero();
        }
        let shift = prec as i64 + 2 + b.mant.bits() as i64 - a.mant.bits() as i64;
        let (num, den) = if shift >= 0 {
            (&a.mant << shift as u64, b.mant.clone())
        } else {
            (a.mant.clone(), &b.mant << (-shift) as u64)
        };
        let q = div_integer(&num, &den, dir);
        Dyadic::new(q, a.exp - b.exp - shift).round(prec, dir)
    }

    /// `sqrt(a)` rounded; `a` must be non-negative.
    pub fn sqrt_round(a: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!a.is_negative(), "square root of negative dyadic");
        if a.is_zero() {
            return Dyadic::zero();
        }
        let bits = a.mant.bits() as i64;
        let mut t = (2 * prec as i64 + 4 - bits).max(0);
        if (a.exp - t).rem_euclid(2) != 0 {
            t += 1;
        }
        let m: BigUint = a.mant.magnitude() << t as u64;
        let mut r = m.sqrt();
        if dir == Round::Up && &r * &r != m {
            r += 1u32;
        }
        Dyadic::new(BigInt::from(r), (a.exp - t) / 2).round(prec, dir)
    }

    /// `num / den` rounded to `prec` bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32, dir: Round) -> Dyadic {
        assert!(!den.is_zero(), "zero denominator");
        Dyadic::div_round(
            &Dyadic::from_bigint(num.clone()),
            &Dyadic::from_bigint(den.clone()),
            prec,
            dir,
        )
    }

    pub fn from_rational(r: &BigRational, prec: u32, dir: Round) -> Dyadic {
        Dyadic::from_ratio(r.numer(), r.denom(), prec, dir)
    }

    /// Exact conversion.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        // r = p/q with q > 0
        let (p, q) = (r.numer(), r.denom());
        if self.exp >= 0 {
            ((&self.mant << self.exp as u64) * q).cmp(p)
        } else {
            (&self.mant * q).cmp(&(p << (-self.exp) as u64))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let m = (&self.mant >> shift as u64).to_f64().unwrap_or(f64::NAN);
        let e = self.exp + shift;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        m * 2f64.powi(e as i32)
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

fn div_integer(num: &BigInt, den: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Down => num.div_floor(den),
        Round::Up => -((-num).div_floor(den)),
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ma, mb) = (self.msb(), other.msb());
        if ma != mb {
            let by_mag = ma.cmp(&mb);
            return if sa > 0 { by_mag } else { by_mag.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalization_strips_trailing_zeros() {
        let x = d(12, 0);
        assert_eq!(x.mantissa(), &BigInt::from(3));
        assert_eq!(x.exponent(), 2);
        assert_eq!(d(0, 17).exponent(), 0);
    }

    #[test]
    fn directed_rounding_brackets() {
        // 7 with 2 bits: down 6, up 8
        assert_eq!(d(7, 0).round(2, Round::Down), d(6, 0));
        assert_eq!(d(7, 0).round(2, Round::Up), d(8, 0));
        assert_eq!(d(-7, 0).round(2, Round::Down), d(-8, 0));
        assert_eq!(d(-7, 0).round(2, Round::Up), d(-6, 0));
    }

    #[test]
    fn division_brackets_one_third() {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let lo = Dyadic::div_round(&d(1, 0), &d(3, 0), 64, Round::Down);
        let hi = Dyadic::div_round(&d(1, 0), &d(3, 0), 64, Round::Up);
        assert_eq!(lo.cmp_rational(&third), Ordering::Less);
        assert_eq!(hi.cmp_rational(&third), Ordering::Greater);
        let gap = hi.to_rational() - lo.to_rational();
        assert!(gap < BigRational::new(BigInt::one(), BigInt::one() << 62u32));
    }

    #[test]
    fn sqrt_two_brackets() {
        let lo = Dyadic::sqrt_round(&d(2, 0), 80, Round::Down);
        let hi = Dyadic::sqrt_round(&d(2, 0), 80, Round::Up);
        let two = BigRational::from_integer(BigInt::from(2));
        assert!(lo.to_rational().pow(2) < two);
        assert!(hi.to_rational().pow(2) > two);
        assert_eq!(Dyadic::sqrt_round(&d(9, 4), 10, Round::Up), d(3, 2));
    }

    #[test]
    fn far_apart_addition_respects_direction() {
        let big = d(1, 0);
        let tiny = d(1, -10_000);
        let down = Dyadic::add_round(&big, &tiny, 53, Round::Down);
        let up = Dyadic::add_round(&big, &tiny, 53, Round::Up);
        assert_eq!(down, big);
        assert!(up > big);
        let down_neg = Dyadic::add_round(&big, &tiny.neg(), 53, Round::Down);
        assert!(down_neg < big);
    }

    #[test]
    fn ordering_across_exponents() {
        assert!(d(1, -3) < d(1, 0));
        assert!(d(-1, 5) < d(-1, 2));
        assert!(d(3, 0) > d(5, -1));
        assert_eq!(d(4, 0).cmp(&d(1, 2)), Ordering::Equal);
    }
}
