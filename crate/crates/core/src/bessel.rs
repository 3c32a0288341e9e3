//! The modified Bessel function `I_1`, Gamma values at half-integers, the
//! upper incomplete Gamma function and the explicit two-sided Bessel bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::{cos_sin_pi, escalate, pi_enclosure, rat, Dyadic, Enclosure, Round};
use crate::error::{Error, Result};

/// Coefficients of `1, 1/s, ..., 1/s^5` in the five-term expansion of `I_1(s)·√(2πs)·e^{-s}`.
pub const E_I_COEFFS: [(i64, i64); 6] = [
    (1, 1),
    (-3, 8),
    (-15, 128),
    (-105, 1024),
    (-4725, 32768),
    (-72765, 262144),
];

/// Numerator of the `1/s^6` remainder allowance in the Bessel sandwich.
pub const SANDWICH_REMAINDER: i64 = 31;

/// Smallest argument at which the sandwich is asserted.
pub const SANDWICH_MIN_ARG: i64 = 26;

#[derive(Clone, Debug)]
pub struct BesselValue {
    pub s: Enclosure,
    pub value: Enclosure,
    pub terms_used: usize,
}

/// `I_1(s)` from the ascending series `Σ (s/2)^{2m+1} / (m! (m+1)!)`.
///
/// Summation stops once the term ratio is below one half and the current
/// term is negligible at the working precision; the remaining tail is then
/// dominated by a geometric series bounded by the last term.
pub fn bessel_i1(s: &Enclosure) -> Result<BesselValue> {
    if s.lo().is_negative() {
        return Err(Error::Domain(format!("I_1 needs s >= 0, got {s:?}")));
    }
    let prec = s.precision();
    let wp = prec + 32;
    let x = s.with_precision(wp).mul_pow2(-1);
    let x2 = x.sqr();
    let x2_hi = x2.hi().clone();
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut m: i64 = 0;
    loop {
        term = term.mul(&x2).div_i64((m + 1) * (m + 2));
        sum = sum.add(&term);
        m += 1;
        // ratio of the next term to this one, maximized over the enclosure
        let rho = Dyadic::div_round(&x2_hi, &Dyadic::from_i64((m + 1) * (m + 2)), 64, Round::Up);
        if rho <= Dyadic::pow2(-1) {
            let small = if sum.lo().is_zero() {
                term.hi().is_zero()
            } else {
                Dyadic::mul_round(sum.lo(), &Dyadic::pow2(-(wp as i64)), 64, Round::Down) >= *term.hi()
            };
            if small {
                break;
            }
        }
    }
    let tail = term.hi().clone();
    let value = Enclosure::new(
        sum.lo().clone(),
        Dyadic::add_round(sum.hi(), &tail, wp, Round::Up),
        wp,
    )
    .with_precision(prec);
    Ok(BesselValue { s: s.clone(), value, terms_used: m as usize + 1 })
}

/// `I_1(s)` for a rational `s >= 0` from Gauss–Chebyshev quadrature of the
/// integral representation `(s/π) ∫_{-1}^{1} √(1-t²) e^{st} dt`.
///
/// Independent of [`bessel_i1`]; the enclosure includes the quadrature error
/// `s^{2n+1} e^s / ((2n)! 2^{2n+1})` for `n` nodes.
pub fn bessel_i1_quadrature(s: &BigRational, nodes: usize, prec: u32) -> Result<Enclosure> {
    if s.is_negative() {
        return Err(Error::Domain(format!("quadrature needs s >= 0, got {s}")));
    }
    let wp = prec + 32;
    let se = Enclosure::from_rational(s, wp);
    let n = nodes as i64;
    let mut sum = Enclosure::zero(wp);
    for i in 1..=n {
        let (c, sn) = cos_sin_pi(&rat(i, n + 1), wp);
        sum = sum.add(&sn.sqr().mul(&se.mul(&c).exp()));
    }
    let approx = sum.mul(&se).div_i64(n + 1);
    // error of the n-point rule for f = e^{st}: π/2^{2n+1} · max|f^{(2n)}| / (2n)!
    let mut fact = BigInt::one();
    for j in 1..=(2 * n) {
        fact *= j;
    }
    let bound = se
        .pow_int(2 * n + 1)?
        .mul(&se.exp())
        .div(&Enclosure::from_bigint(&(fact << (2 * n as usize + 1)), wp))?;
    Ok(approx.widen(bound.hi()).with_precision(prec))
}

/// Cross-check of the series against the quadrature oracle: true iff the
/// quadrature enclosure lies inside the series enclosure widened by `tolerance`.
pub fn bessel_i1_integral_check(s: &BigRational, tolerance: &Dyadic) -> Result<bool> {
    if s.is_negative() || s > &BigRational::from_integer(50.into()) {
        return Err(Error::Argument(format!("integral check supports 0 <= s <= 50, got {s}")));
    }
    let prec = 192;
    let series = bessel_i1(&Enclosure::from_rational(s, prec))?.value;
    // enough nodes that the quadrature error is far below any sensible tolerance
    let nodes = (s.to_f64().unwrap_or(50.0) * 2.0) as usize + 40;
    let quad = bessel_i1_quadrature(s, nodes, prec)?;
    Ok(series.widen(tolerance).contains(&quad))
}

/// `√π` as an enclosure.
pub fn sqrt_pi(prec: u32) -> Enclosure {
    pi_enclosure(prec + 8).sqrt().expect("π > 0").with_precision(prec)
}

/// The rational `(2k)! / (4^k k!)`, so that `Γ(k + 1/2)` is this multiple of `√π`.
pub fn gamma_half_coefficient(k: u32) -> BigRational {
    let mut r = BigRational::one();
    for j in 1..=k {
        // Γ(j + 1/2) = (j - 1/2) Γ(j - 1/2)
        r *= rat(2 * j as i64 - 1, 2);
    }
    r
}

fn half_integer_index(a: &BigRational) -> Option<u32> {
    // a = k + 1/2  <=>  2a is an odd integer
    let two_a = a * BigInt::from(2);
    if !two_a.is_integer() || two_a.numer().is_even() || two_a.is_negative() {
        return None;
    }
    let k: BigInt = (two_a.numer() - BigInt::one()) >> 1;
    k.to_u32()
}

/// `Γ(a)` for `a ∈ {1/2, 3/2, 5/2, ...}`.
pub fn gamma_half(a: &BigRational, prec: u32) -> Result<Enclosure> {
    let k = half_integer_index(a)
        .ok_or_else(|| Error::Argument(format!("gamma_half needs a positive half-integer, got {a}")))?;
    Ok(sqrt_pi(prec + 8).mul_rational(&gamma_half_coefficient(k)).with_precision(prec))
}

/// `erfc(√s)` for a point or thin enclosure `s >= 0`, from the series
/// `erf(x) = 2/√π · e^{-x²} Σ 2^n x^{2n+1} / (1·3···(2n+1))`.
fn erfc_sqrt(s: &Enclosure, prec: u32) -> Result<Enclosure> {
    // erf(x) is close to 1, so the subtraction cancels about x²·log2(e) bits
    let guard = (s.hi().to_f64() * 1.45) as u32 + 64;
    let wp = prec + guard;
    let sw = s.with_precision(wp);
    let x = sw.sqrt()?;
    let two_x2 = sw.mul_pow2(1);
    let mut term = x.clone();
    let mut sum = x.clone();
    let eps_scale = Dyadic::pow2(-(wp as i64) - 8);
    let mut n: i64 = 0;
    loop {
        term = term.mul(&two_x2).div_i64(2 * n + 3);
        sum = sum.add(&term);
        n += 1;
        let rho = Dyadic::div_round(two_x2.hi(), &Dyadic::from_i64(2 * n + 3), 64, Round::Up);
        if rho <= Dyadic::pow2(-1)
            && Dyadic::mul_round(sum.lo(), &eps_scale, 64, Round::Down) >= *term.hi()
        {
            break;
        }
    }
    let sum = Enclosure::new(
        sum.lo().clone(),
        Dyadic::add_round(sum.hi(), term.hi(), wp, Round::Up),
        wp,
    );
    let erf = sum.mul(&sw.neg().exp()).mul_pow2(1).div(&sqrt_pi(wp))?;
    Ok(Enclosure::one(wp).sub(&erf).with_precision(prec))
}

/// `Γ(a, s)` at a single point `s > 0` for `a` a positive integer or half-integer.
fn upper_gamma_point(a: &BigRational, s: &Dyadic, prec: u32) -> Result<Enclosure> {
    let wp = prec + 32;
    let se = Enclosure::point(s.clone(), wp);
    let e_neg = se.neg().exp();
    let (mut g, mut cur) = if a.is_integer() {
        // Γ(1, s) = e^{-s}
        (e_neg.clone(), BigRational::one())
    } else {
        (sqrt_pi(wp).mul(&erfc_sqrt(&se, wp)?), rat(1, 2))
    };
    while &cur < a {
        // Γ(c + 1, s) = c Γ(c, s) + s^c e^{-s}
        let pow = power_rational(&se, &cur)?;
        g = g.mul_rational(&cur).add(&pow.mul(&e_neg));
        cur += BigRational::one();
    }
    if &cur != a {
        return Err(Error::Argument(format!("upper_gamma needs a in (1/2)N, a > 0, got {a}")));
    }
    Ok(g.with_precision(prec))
}

/// `s^c` for `c` an integer or half-integer (`s > 0` when `c` is fractional).
fn power_rational(s: &Enclosure, c: &BigRational) -> Result<Enclosure> {
    let whole = c.floor();
    let k = whole.to_integer().to_i64().ok_or_else(|| Error::Argument(format!("exponent {c}")))?;
    let base = s.pow_int(k)?;
    if c.is_integer() {
        Ok(base)
    } else {
        Ok(base.mul(&s.sqrt()?))
    }
}

/// The upper incomplete Gamma function for `a` a positive integer or half-integer, `s > 0`.
pub fn upper_gamma(a: &BigRational, s: &Enclosure) -> Result<Enclosure> {
    if !a.is_positive() || !(a * BigInt::from(2)).is_integer() {
        return Err(Error::Argument(format!("upper_gamma needs a in (1/2)N, a > 0, got {a}")));
    }
    if s.lo().signum() <= 0 {
        return Err(Error::Domain(format!("upper_gamma needs s > 0, got {s:?}")));
    }
    let prec = s.precision();
    // decreasing in s
    let hi = upper_gamma_point(a, s.lo(), prec)?;
    if s.lo() == s.hi() {
        return Ok(hi);
    }
    let lo = upper_gamma_point(a, s.hi(), prec)?;
    Ok(Enclosure::new(lo.lo().clone(), hi.hi().clone(), prec))
}

fn check_pinelis_domain(a: &BigRational, s: &Enclosure) -> Result<()> {
    if a < &BigRational::one() || !(a * BigInt::from(2)).is_integer() {
        return Err(Error::Argument(format!("bound needs a >= 1 in (1/2)N, got {a}")));
    }
    if s.hi().cmp_rational(a).is_lt() {
        return Err(Error::Domain(format!("bound needs s >= a = {a}, got {s:?}")));
    }
    Ok(())
}

/// The majorant `a s^{a-1} e^{-s}` of `Γ(a, s)`, valid for `a >= 1`, `s >= a`.
pub fn incomplete_gamma_upper_bound(a: &BigRational, s: &Enclosure) -> Result<Enclosure> {
    check_pinelis_domain(a, s)?;
    let pow = power_rational(s, &(a - BigRational::one()))?;
    Ok(pow.mul(&s.neg().exp()).mul_rational(a))
}

/// Certify `Γ(a, s) <= a s^{a-1} e^{-s}` at a point `s`, escalating precision.
///
/// For `a = 1` both sides are `e^{-s}`; that case is the identity and is
/// decided without numerics.
pub fn pinelis_holds(a: &BigRational, s: &BigRational) -> Result<bool> {
    let probe = Enclosure::from_rational(s, 64);
    check_pinelis_domain(a, &probe)?;
    if a.is_one() {
        return Ok(true);
    }
    let (ok, _) = escalate(crate::arith::DEFAULT_PRECISION, "incomplete gamma bound", |p| {
        let se = Enclosure::from_rational(s, p);
        Ok(upper_gamma(a, &se)?.le(&incomplete_gamma_upper_bound(a, &se)?))
    })?;
    Ok(ok)
}

/// `E_I(s)`, the five-term expansion in `1/s`.
pub fn e_i(s: &Enclosure) -> Result<Enclosure> {
    let y = s.recip()?;
    let mut acc = Enclosure::zero(s.precision());
    for &(n, d) in E_I_COEFFS.iter().rev() {
        acc = acc.mul(&y).add(&Enclosure::from_ratio(n, d, s.precision()));
    }
    Ok(acc)
}

/// `e^s / √(2πs)`.
pub fn asymptotic_prefactor(s: &Enclosure) -> Result<Enclosure> {
    let p = s.precision();
    let two_pi_s = pi_enclosure(p).mul(s).mul_pow2(1);
    s.exp().div(&two_pi_s.sqrt()?)
}

/// Lower and upper sandwich bounds `e^s/√(2πs)·(E_I(s) ∓ 31/s^6)`.
pub fn sandwich_bounds(s: &Enclosure) -> Result<(Enclosure, Enclosure)> {
    let pre = asymptotic_prefactor(s)?;
    let ei = e_i(s)?;
    let rem = s.pow_int(-6)?.mul_i64(SANDWICH_REMAINDER);
    Ok((pre.mul(&ei.sub(&rem)), pre.mul(&ei.add(&rem))))
}

/// Certify the two-sided Bessel sandwich at a rational `s >= 26`.
pub fn bessel_sandwich_check(s: &BigRational) -> Result<bool> {
    if s < &BigRational::from_integer(SANDWICH_MIN_ARG.into()) {
        return Err(Error::Argument(format!("sandwich needs s >= {SANDWICH_MIN_ARG}, got {s}")));
    }
    let (ok, _) = escalate(crate::arith::DEFAULT_PRECISION, "Bessel sandwich", |p| {
        let se = Enclosure::from_rational(s, p);
        let i1 = bessel_i1(&se)?.value;
        let (lower, upper) = sandwich_bounds(&se)?;
        Ok(match (lower.le(&i1), i1.le(&upper)) {
            (Some(a), Some(b)) => Some(a && b),
            (Some(false), _) | (_, Some(false)) => Some(false),
            _ => None,
        })
    })?;
    Ok(ok)
}

/// `√(2/(πs))·e^s`, the classical upper bound on `I_1(s)` for `s >= 1`.
pub fn bkrt_bound(s: &Enclosure) -> Result<Enclosure> {
    let p = s.precision();
    let pi_s = pi_enclosure(p).mul(s);
    Ok(Enclosure::from_i64(2, p).div(&pi_s)?.sqrt()?.mul(&s.exp()))
}

/// Certify `I_1(s) <= √(2/(πs))·e^s` at a rational `s >= 1`.
pub fn bkrt_holds(s: &BigRational) -> Result<bool> {
    if s < &BigRational::one() {
        return Err(Error::Argument(format!("bound stated for s >= 1, got {s}")));
    }
    let (ok, _) = escalate(crate::arith::DEFAULT_PRECISION, "Bessel upper bound", |p| {
        let se = Enclosure::from_rational(s, p);
        Ok(bessel_i1(&se)?.value.le(&bkrt_bound(&se)?))
    })?;
    Ok(ok)
}

/// The remainder majorant
/// `f(s) = (√2 s/√π + 37495/(8192√π))·s^{13/2} e^{-s} + 2837835√2/131072`.
///
/// The Bessel sandwich follows from `f(s) <= 31` for `s >= 26`.
pub fn remainder_majorant(s: &Enclosure) -> Result<Enclosure> {
    let p = s.precision();
    let sp = sqrt_pi(p);
    let sqrt2 = Enclosure::from_i64(2, p).sqrt()?;
    let lead = sqrt2.mul(s).div(&sp)?.add(&Enclosure::from_ratio(37495, 8192, p).div(&sp)?);
    let pow = s.pow_int(6)?.mul(&s.sqrt()?);
    let constant = sqrt2.mul_rational(&rat(2837835, 131072));
    Ok(lead.mul(&pow).mul(&s.neg().exp()).add(&constant))
}
