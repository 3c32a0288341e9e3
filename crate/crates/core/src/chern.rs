//! Coefficient asymptotics of eta-quotients `∏ (q^{m_r}; q^{m_r})_∞^{δ_r}`
//! with an explicit error budget, specialised to the Bessel order `I_1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{cos_sin_pi, escalate, ln2_enclosure, pi_enclosure, rat, Enclosure};
use crate::bessel::bessel_i1;
use crate::error::{Error, Result};

/// Absolute bound on the error of the truncated sum for q(n) once ν(n) >= 4.
pub const DISTINCT_ERROR_CONSTANT: i64 = 173;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    m: Vec<u64>,
    delta: Vec<i64>,
}

impl EtaQuotient {
    pub fn new(m: Vec<u64>, delta: Vec<i64>) -> Result<Self> {
        if m.is_empty() || m.len() != delta.len() {
            return Err(Error::Argument("m and delta must be non-empty and of equal length".into()));
        }
        if m.contains(&0) || delta.contains(&0) {
            return Err(Error::Argument("m must be positive and delta nonzero".into()));
        }
        let mut sorted = m.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != m.len() {
            return Err(Error::Argument("m entries must be distinct".into()));
        }
        Ok(EtaQuotient { m, delta })
    }

    /// `(q²; q²)_∞ / (q; q)_∞`, the generating function of q(n).
    pub fn distinct_parts() -> Self {
        EtaQuotient { m: vec![1, 2], delta: vec![-1, 1] }
    }

    /// `(q^k; q^k)_∞ / (q; q)_∞`, partitions with no part divisible by `k`.
    pub fn no_multiples_of(k: u64) -> Result<Self> {
        EtaQuotient::new(vec![1, k], vec![-1, 1])
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    pub fn delta(&self) -> &[i64] {
        &self.delta
    }

    fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.m.iter().copied().zip(self.delta.iter().copied())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaInvariants {
    pub delta1: BigRational,
    pub delta2: i64,
    pub lcm: u64,
    /// `Δ₃(l)` for `l = 1..=lcm` (index `l - 1`).
    pub delta3: Vec<BigRational>,
    /// `Δ₄(l)²` for `l = 1..=lcm`; `Δ₄` itself is the positive square root.
    pub delta4_squared: Vec<BigRational>,
    /// The `l` with `Δ₃(l) > 0`.
    pub positive: Vec<u64>,
}

impl DeltaInvariants {
    pub fn delta3_at(&self, l: u64) -> &BigRational {
        &self.delta3[(l - 1) as usize]
    }

    pub fn delta4_at(&self, l: u64, prec: u32) -> Enclosure {
        Enclosure::from_rational(&self.delta4_squared[(l - 1) as usize], prec + 4)
            .sqrt()
            .expect("squares are positive")
            .with_precision(prec)
    }
}

pub fn delta_invariants(eq: &EtaQuotient) -> DeltaInvariants {
    let sum_delta: i64 = eq.delta.iter().sum();
    let delta1 = rat(-sum_delta, 2);
    let delta2 = eq.terms().map(|(m, d)| m as i64 * d).sum();
    let lcm = eq.m.iter().fold(1u64, |a, &b| a.lcm(&b));
    let mut delta3 = Vec::with_capacity(lcm as usize);
    let mut delta4_squared = Vec::with_capacity(lcm as usize);
    for l in 1..=lcm {
        let mut d3 = BigRational::zero();
        let mut d4 = BigRational::one();
        for (m, d) in eq.terms() {
            let g = m.gcd(&l);
            d3 -= rat(d * (g * g) as i64, m as i64);
            // (m/g)^{-δ/2}, squared: (m/g)^{-δ}
            let base = BigRational::from_integer(BigInt::from(m / g));
            d4 *= base.pow(-d as i32);
        }
        delta3.push(d3);
        delta4_squared.push(d4);
    }
    let positive = (1..=lcm).filter(|&l| delta3[(l - 1) as usize].is_positive()).collect();
    DeltaInvariants { delta1, delta2, lcm, delta3, delta4_squared, positive }
}

/// `Δ₁ <= 0` and `min_r gcd²(m_r, l)/m_r >= Δ₃(l)/24` for every `1 <= l <= L`.
pub fn admissible(eq: &EtaQuotient) -> bool {
    let inv = delta_invariants(eq);
    if inv.delta1.is_positive() {
        return false;
    }
    (1..=inv.lcm).all(|l| {
        let min = eq
            .m
            .iter()
            .map(|&m| {
                let g = m.gcd(&l);
                rat((g * g) as i64, m as i64)
            })
            .min()
            .expect("non-empty");
        min >= inv.delta3_at(l) / BigInt::from(24)
    })
}

/// `4 j² s(h, j)` as an integer, from the defining sawtooth sum.
fn dedekind_scaled(h: i64, j: u64) -> i128 {
    let j = j as i128;
    let h = (h as i128).rem_euclid(j.max(1));
    (1..j).map(|r| (2 * r - j) * (2 * ((h * r) % j) - j)).sum()
}

/// The Dedekind sum `s(h, j) = Σ_{r=1}^{j-1} ((r/j)) ((hr/j))`.
pub fn dedekind_sum(h: i64, j: u64) -> Result<BigRational> {
    if j == 0 || (h.unsigned_abs()).gcd(&j) != 1 {
        return Err(Error::Argument(format!("dedekind_sum needs gcd(h, j) = 1 and j >= 1, got ({h}, {j})")));
    }
    let jj = BigInt::from(j);
    Ok(BigRational::new(BigInt::from(dedekind_scaled(h, j)), BigInt::from(4) * &jj * &jj))
}

/// Exact phase `X` with `Â_k(n)`'s summand equal to `exp(πiX)`.
fn a_hat_phase(eq: &EtaQuotient, k: u64, n: u64, h: u64) -> BigRational {
    let twok = 2 * k as u128;
    let lin = ((2 * n as u128 % twok) * h as u128 % twok) as i64;
    let mut x = rat(-lin, k as i64);
    for (m, d) in eq.terms() {
        let g = m.gcd(&k);
        let hh = (m / g * h) as i64;
        let jj = k / g;
        let big_j = BigInt::from(jj);
        x -= BigRational::new(BigInt::from(d as i128 * dedekind_scaled(hh, jj)), BigInt::from(4) * &big_j * &big_j);
    }
    x
}

/// `Â_k(n)` as (real, imaginary) enclosures.
pub fn a_hat(eq: &EtaQuotient, k: u64, n: u64, prec: u32) -> Result<(Enclosure, Enclosure)> {
    if k == 0 {
        return Err(Error::Argument("k must be positive".into()));
    }
    let mut re = Enclosure::zero(prec);
    let mut im = Enclosure::zero(prec);
    for h in (0..k).filter(|h| h.gcd(&k) == 1) {
        let (c, s) = cos_sin_pi(&a_hat_phase(eq, k, n, h), prec);
        re = re.add(&c);
        im = im.add(&s);
    }
    Ok((re, im))
}

/// `ζ(s)` for `s ∈ (1/2)ℤ`, `s > 1`, by Euler–Maclaurin summation.
///
/// `x^{-s}` is completely monotone, so the remainder after the last
/// Bernoulli correction is bounded by the first omitted one.
pub fn zeta_half_integer(s: &BigRational, prec: u32) -> Result<Enclosure> {
    let two_s = s * BigInt::from(2);
    if !two_s.is_integer() || s <= &BigRational::one() {
        return Err(Error::Argument(format!("zeta needs s in (1/2)Z with s > 1, got {s}")));
    }
    const BERNOULLI: [(i64, i64); 8] =
        [(1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730), (7, 6), (-3617, 510)];
    let wp = prec + 32;
    let m: i64 = 1 << (prec / 16).clamp(5, 16);
    let pow_neg_s = |x: i64| -> Result<Enclosure> {
        let e = Enclosure::from_i64(x, wp);
        let whole = e.pow_int(-(s.floor().to_integer().to_i64().unwrap()))?;
        if s.is_integer() { Ok(whole) } else { whole.div(&e.sqrt()?) }
    };
    let mut sum = Enclosure::zero(wp);
    for k in 1..m {
        sum = sum.add(&pow_neg_s(k)?);
    }
    let me = Enclosure::from_i64(m, wp);
    let fm = pow_neg_s(m)?;
    let s_e = Enclosure::from_rational(s, wp);
    // ∫_M^∞ x^{-s} dx + f(M)/2
    sum = sum.add(&fm.mul(&me).div(&s_e.sub(&Enclosure::one(wp)))?).add(&fm.mul_pow2(-1));
    // B_{2j}/(2j)! · (s)_{2j-1} · M^{-s-2j+1}
    let mut rising = s_e.clone();
    let mut fact = BigInt::from(2);
    let mut mpow = fm.div(&me)?;
    let mut last = Enclosure::zero(wp);
    for (j, &(bn, bd)) in BERNOULLI.iter().enumerate() {
        let j = j as i64 + 1;
        let term = rising.mul(&mpow).mul_rational(&BigRational::new(BigInt::from(bn), BigInt::from(bd) * &fact));
        if j as usize == BERNOULLI.len() {
            last = term;
            break;
        }
        sum = sum.add(&term);
        rising = rising.mul(&s_e.add(&Enclosure::from_i64(2 * j - 1, wp))).mul(&s_e.add(&Enclosure::from_i64(2 * j, wp)));
        mpow = mpow.div(&me.sqr())?;
        fact *= (2 * j + 1) * (2 * j + 2);
    }
    Ok(sum.widen(&last.mag()).with_precision(prec))
}

/// `𝔼_{Δ₁}(N)`: `1`, `2√N`, `N log(N+1)` for `Δ₁ = 0, -1/2, -1`, else `N^{-2Δ₁-1} ζ(-Δ₁)`.
pub fn e_delta1(big_n: u64, delta1: &BigRational, prec: u32) -> Result<Enclosure> {
    if big_n == 0 {
        return Err(Error::Argument("N must be positive".into()));
    }
    if delta1.is_positive() {
        return Err(Error::Argument(format!("Δ₁ must be <= 0, got {delta1}")));
    }
    let n_e = Enclosure::from_i64(big_n as i64, prec);
    if delta1.is_zero() {
        Ok(Enclosure::one(prec))
    } else if *delta1 == rat(-1, 2) {
        Ok(n_e.sqrt()?.mul_pow2(1))
    } else if *delta1 == rat(-1, 1) {
        let ln = if big_n == 1 { ln2_enclosure(prec) } else { Enclosure::from_i64(big_n as i64 + 1, prec).ln()? };
        Ok(n_e.mul(&ln))
    } else {
        let expo = -(delta1 * BigInt::from(2)) - BigRational::one();
        if !expo.is_integer() {
            return Err(Error::Argument(format!("Δ₁ must be a half-integer, got {delta1}")));
        }
        let e = expo.to_integer().to_i64().unwrap();
        Ok(n_e.pow_int(e)?.mul(&zeta_half_integer(&-delta1.clone(), prec)?))
    }
}

/// Truncation point `N = ⌊largest Bessel argument at k = 1⌋`; this is `⌊ν(n)⌋` for q(n).
pub fn default_truncation(eq: &EtaQuotient, n: u64) -> Result<u64> {
    let inv = delta_invariants(eq);
    let x = BigInt::from(24 * n as i64 + inv.delta2);
    let (best, _) = escalate(crate::arith::DEFAULT_PRECISION, "truncation point", |p| {
        let mut best = 1u64;
        for &l in &inv.positive {
            let arg = bessel_argument(&inv, l, &x, 1, p)?;
            let (lo, hi) = (arg.lo().to_rational().floor(), arg.hi().to_rational().floor());
            if lo != hi {
                return Ok(None);
            }
            best = best.max(lo.to_integer().to_u64().unwrap_or(1));
        }
        Ok(Some(best))
    })?;
    Ok(best)
}

/// `π/(6k) · √(Δ₃(l)(24n + Δ₂))`.
fn bessel_argument(inv: &DeltaInvariants, l: u64, x: &BigInt, k: u64, prec: u32) -> Result<Enclosure> {
    let r = inv.delta3_at(l) * x;
    Ok(pi_enclosure(prec).mul(&Enclosure::from_rational(&r, prec).sqrt()?).div_i64(6 * k as i64))
}

fn check_evaluable(eq: &EtaQuotient, inv: &DeltaInvariants, n: u64, big_n: u64) -> Result<()> {
    if !admissible(eq) {
        return Err(Error::Argument(format!("eta-quotient {eq:?} is not admissible")));
    }
    if !inv.delta1.is_zero() {
        return Err(Error::UnsupportedOrder(format!("I_{} (Δ₁ = {})", -&inv.delta1 - BigRational::one(), inv.delta1)));
    }
    if 24 * n as i64 + inv.delta2 <= 0 {
        return Err(Error::Argument(format!("need n > -Δ₂/24, got n = {n}")));
    }
    if big_n == 0 {
        return Err(Error::Argument("N must be positive".into()));
    }
    Ok(())
}

/// Per-term working precision: a term of size about `2^b` only needs `b + prec` bits
/// of absolute accuracy to keep the total accurate to about `2^-64`.
fn term_precision(arg: &Enclosure, k: u64, prec: u32) -> u32 {
    let bits = arg.hi().to_f64() * std::f64::consts::LOG2_E + (k as f64).log2();
    ((bits.max(0.0) as u32) + 96).min(prec).max(64)
}

/// The truncated main sum over `l ∈ 𝓛_{>0}` and `k <= N`, `k ≡ l (mod L)`,
/// as (real, imaginary) enclosures.
pub fn chern_truncated_sum(eq: &EtaQuotient, n: u64, big_n: u64, prec: u32) -> Result<(Enclosure, Enclosure)> {
    chern_partial_sum(eq, n, big_n, 1, prec)
}

/// As [`chern_truncated_sum`] but only over `k >= k_min`.
pub fn chern_partial_sum(
    eq: &EtaQuotient,
    n: u64,
    big_n: u64,
    k_min: u64,
    prec: u32,
) -> Result<(Enclosure, Enclosure)> {
    let inv = delta_invariants(eq);
    check_evaluable(eq, &inv, n, big_n)?;
    let x = BigInt::from(24 * n as i64 + inv.delta2);
    let mut re = Enclosure::zero(prec);
    let mut im = Enclosure::zero(prec);
    for &l in &inv.positive {
        // 2π Δ₄(l) ((24n+Δ₂)/Δ₃(l))^{-1/2}
        let ratio = BigRational::from_integer(x.clone()) / inv.delta3_at(l);
        let coef = pi_enclosure(prec)
            .mul_pow2(1)
            .mul(&inv.delta4_at(l, prec))
            .div(&Enclosure::from_rational(&ratio, prec).sqrt()?)?;
        let first = if l == inv.lcm { inv.lcm } else { l };
        let mut k = first;
        while k <= big_n {
            if k >= k_min {
                let arg = bessel_argument(&inv, l, &x, k, prec)?;
                let tp = term_precision(&arg, k, prec);
                let i1 = bessel_i1(&arg.with_precision(tp))?.value;
                let (a_re, a_im) = a_hat(eq, k, n, tp)?;
                let w = coef.mul(&i1).div_i64(k as i64);
                re = re.add(&w.mul(&a_re));
                im = im.add(&w.mul(&a_im));
            }
            k += inv.lcm;
        }
    }
    Ok((re, im))
}

/// `2^{-Δ₁}` and `N^{-Δ₁+2}` for half-integer `Δ₁`.
fn pow_half(base: i64, e: &BigRational, prec: u32) -> Result<Enclosure> {
    let b = Enclosure::from_i64(base, prec);
    let twice = (e * BigInt::from(2)).to_integer().to_i64().unwrap();
    let whole = b.pow_int(twice.div_euclid(2))?;
    if twice.rem_euclid(2) == 0 { Ok(whole) } else { Ok(whole.mul(&b.sqrt()?)) }
}

/// The explicit bound on `|g(n) - truncated sum|`.
pub fn chern_error_budget(eq: &EtaQuotient, n: u64, big_n: u64, prec: u32) -> Result<Enclosure> {
    let inv = delta_invariants(eq);
    if inv.delta1.is_positive() {
        return Err(Error::Argument(format!("Δ₁ must be <= 0, got {}", inv.delta1)));
    }
    let shifted = BigRational::from_integer(BigInt::from(n)) + rat(inv.delta2, 24);
    if !shifted.is_positive() {
        return Err(Error::Argument(format!("need n > -Δ₂/24, got n = {n}")));
    }
    let pi = pi_enclosure(prec);
    let x = Enclosure::from_rational(&shifted, prec);
    let n_e = Enclosure::from_i64(big_n as i64, prec);
    let growth = pi.mul(&x).mul_pow2(1).div(&n_e.sqr())?.exp();

    let mut pos_third = Enclosure::zero(prec);
    let mut pos_24th = Enclosure::zero(prec);
    for &l in &inv.positive {
        let d3 = Enclosure::from_rational(inv.delta3_at(l), prec);
        let d4 = inv.delta4_at(l, prec);
        pos_third = pos_third.add(&d4.mul(&d3.mul(&pi).div_i64(3).exp()));
        pos_24th = pos_24th.add(&d4.mul(&d3.mul(&pi).div_i64(24).exp()));
    }
    let first = pow_half(2, &-inv.delta1.clone(), prec)?
        .mul(&pow_half(big_n as i64, &(BigRational::from_integer(2.into()) - &inv.delta1), prec)?)
        .div(&pi.mul(&x))?
        .mul(&growth)
        .mul(&pos_third);

    let mut all = Enclosure::zero(prec);
    for l in 1..=inv.lcm {
        let d3 = Enclosure::from_rational(inv.delta3_at(l), prec);
        let mut expo = d3.mul(&pi).div_i64(24);
        for (m, d) in eq.terms() {
            let g = m.gcd(&l);
            let q = pi.mul_rational(&rat(-((g * g) as i64), m as i64)).exp();
            let one_minus = Enclosure::one(prec).sub(&q);
            expo = expo.add(&q.mul_i64(d.abs()).div(&one_minus.sqr())?);
        }
        all = all.add(&inv.delta4_at(l, prec).mul(&expo.exp()));
    }
    let second = growth
        .mul_pow2(1)
        .mul(&e_delta1(big_n, &inv.delta1, prec)?)
        .mul(&all.sub(&pos_24th));
    Ok(first.add(&second))
}

/// Outcome of comparing an exact coefficient against the truncated sum.
#[derive(Clone, Debug)]
pub struct HybridReport {
    pub n: u64,
    pub truncation: u64,
    /// `g(n) - Re(truncated sum)`.
    pub residual: Enclosure,
    pub imaginary: Enclosure,
    pub budget: Enclosure,
    /// `|residual| <= limit` certified.
    pub within_limit: bool,
    /// `|residual| <= budget` certified.
    pub within_budget: bool,
    pub precision: u32,
}

/// Certify `|g(n) - Re S| <= limit` and `|g(n) - Re S| <= budget` with `N = default_truncation`.
pub fn hybrid_residual_check(eq: &EtaQuotient, n: u64, g_n: &BigInt, limit: i64, start: u32) -> Result<HybridReport> {
    let big_n = default_truncation(eq, n)?;
    let start = start.max(g_n.bits() as u32 + 64);
    let (report, _) = escalate(start, "hybrid residual", |p| {
        let (re, im) = chern_truncated_sum(eq, n, big_n, p)?;
        let residual = Enclosure::from_bigint(g_n, p).sub(&re);
        let budget = chern_error_budget(eq, n, big_n, p)?;
        let lim = Enclosure::from_i64(limit, p);
        let mag = residual.abs();
        let (a, b) = (mag.le(&lim), mag.le(&budget));
        Ok(match (a, b) {
            (Some(a), Some(b)) => Some(HybridReport {
                n,
                truncation: big_n,
                residual,
                imaginary: im,
                budget,
                within_limit: a,
                within_budget: b,
                precision: p,
            }),
            _ => None,
        })
    })?;
    Ok(report)
}

/// `|Σ_{3<=k<=N, k odd} ...| <= √3 π^{3/2} e^{ν/3} / (12 √ν)` for q(n).
pub fn odd_tail_check(n: u64) -> Result<bool> {
    let eq = EtaQuotient::distinct_parts();
    let big_n = default_truncation(&eq, n)?;
    let (ok, _) = escalate(crate::arith::DEFAULT_PRECISION, "odd tail", |p| {
        let (re, im) = chern_partial_sum(&eq, n, big_n, 3, p)?;
        let mag = re.sqr().add(&im.sqr()).sqrt()?;
        let v = crate::nu::nu(n).enclosure(p);
        let sqrt3 = Enclosure::from_i64(3, p).sqrt()?;
        let pi_32 = pi_enclosure(p).mul(&crate::bessel::sqrt_pi(p));
        let bound = sqrt3.mul(&pi_32).mul(&v.div_i64(3).exp()).div(&v.sqrt()?.mul_i64(12))?;
        Ok(mag.le(&bound))
    })?;
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{pk_table, q_table};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn near(e: &Enclosure, x: f64, tol: f64) -> bool {
        (e.mid_f64() - x).abs() < tol
    }

    #[test]
    fn invariants_for_distinct_parts() {
        let inv = delta_invariants(&EtaQuotient::distinct_parts());
        assert_eq!(inv.delta1, BigRational::zero());
        assert_eq!(inv.delta2, 1);
        assert_eq!(inv.lcm, 2);
        assert_eq!(inv.delta3, vec![rat(1, 2), rat(-1, 1)]);
        assert_eq!(inv.delta4_squared, vec![rat(1, 2), rat(1, 1)]);
        assert_eq!(inv.positive, vec![1]);
        assert!(inv.delta4_at(1, 128).sqr().contains_rational(&rat(1, 2)));
    }

    #[test]
    fn invariants_for_no_multiples_of_three() {
        let inv = delta_invariants(&EtaQuotient::no_multiples_of(3).unwrap());
        assert_eq!((inv.delta1.clone(), inv.delta2, inv.lcm), (BigRational::zero(), 2, 3));
        assert_eq!(inv.delta3, vec![rat(2, 3), rat(2, 3), rat(-2, 1)]);
        assert_eq!(inv.delta4_squared, vec![rat(1, 3), rat(1, 3), rat(1, 1)]);
        assert_eq!(inv.positive, vec![1, 2]);
    }

    #[test]
    fn admissibility() {
        assert!(admissible(&EtaQuotient::distinct_parts()));
        for k in 3..=5 {
            assert!(admissible(&EtaQuotient::no_multiples_of(k).unwrap()));
        }
        let cube = EtaQuotient::new(vec![1], vec![24]).unwrap();
        assert_eq!(delta_invariants(&cube).delta1, rat(-12, 1));
        let positive = EtaQuotient::new(vec![1], vec![-24]).unwrap();
        assert_eq!(delta_invariants(&positive).delta1, rat(12, 1));
        assert!(!admissible(&positive));
        assert!(EtaQuotient::new(vec![1, 1], vec![1, 1]).is_err());
        assert!(EtaQuotient::new(vec![1], vec![0]).is_err());
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_sum(0, 1).unwrap(), BigRational::zero());
        assert_eq!(dedekind_sum(1, 2).unwrap(), BigRational::zero());
        assert_eq!(dedekind_sum(1, 3).unwrap(), rat(1, 18));
        assert_eq!(dedekind_sum(2, 5).unwrap(), BigRational::zero());
        assert_eq!(dedekind_sum(3, 7).unwrap(), rat(-1, 14));
        assert!(dedekind_sum(2, 4).is_err());
    }

    #[test]
    fn dedekind_reciprocity_and_denominator() {
        for j in 1..60u64 {
            for h in 1..60i64 {
                if (h as u64).gcd(&j) != 1 {
                    continue;
                }
                let s = dedekind_sum(h, j).unwrap();
                assert!((s.clone() * BigInt::from(6 * j)).is_integer(), "h={h} j={j}");
                // s(h,j) + s(j,h) = (h/j + j/h + 1/(hj))/12 - 1/4
                let t = dedekind_sum(j as i64, h as u64).unwrap();
                let (hh, jj) = (h, j as i64);
                let rhs = (rat(hh, jj) + rat(jj, hh) + rat(1, hh * jj)) / BigInt::from(12) - rat(1, 4);
                assert_eq!(s + t, rhs);
            }
        }
    }

    #[test]
    fn a_hat_frozen_values() {
        let q = EtaQuotient::distinct_parts();
        let (re, im) = a_hat(&q, 1, 17, 128).unwrap();
        assert!(re.contains_int(&BigInt::one()) && im.contains_int(&BigInt::zero()));
        // independent 60-digit direct summations
        let cases = [
            (3, 0, 1.879_385_241_571_816_8),
            (5, 7, -1.236_067_977_499_789_7),
            (7, 100, -1.0),
            (9, 1, 3.458_240_903_472_697),
            (15, 2000, 0.429_281_903_530_573_5),
        ];
        for (k, n, want) in cases {
            let (re, im) = a_hat(&q, k, n, 128).unwrap();
            assert!(near(&re, want, 1e-14), "k={k} n={n}: {re}");
            assert!(im.mag().to_f64() < 1e-30);
        }
    }

    #[test]
    fn a_hat_bounded_by_k() {
        let q = EtaQuotient::distinct_parts();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let k = rng.gen_range(1..=50u64);
            let n = rng.gen_range(0..10_000u64);
            let (re, im) = a_hat(&q, k, n, 96).unwrap();
            let norm = re.sqr().add(&im.sqr());
            assert_eq!(norm.le(&Enclosure::from_i64((k * k) as i64, 96)), Some(true));
        }
    }

    #[test]
    fn e_delta1_cases() {
        assert!(e_delta1(100, &BigRational::zero(), 64).unwrap().contains_int(&BigInt::one()));
        assert!(e_delta1(4, &rat(-1, 2), 64).unwrap().contains_int(&BigInt::from(4)));
        assert!(e_delta1(1, &rat(-1, 1), 128).unwrap().intersects(&ln2_enclosure(128)));
        assert!(e_delta1(3, &rat(1, 2), 64).is_err());
        // N^3 ζ(2) at N = 2 is 8π²/6
        let z = e_delta1(2, &rat(-2, 1), 128).unwrap();
        assert!(z.intersects(&pi_enclosure(128).sqr().mul_rational(&rat(8, 6))));
    }

    #[test]
    fn zeta_values() {
        let z2 = zeta_half_integer(&rat(2, 1), 128).unwrap();
        assert!(z2.intersects(&pi_enclosure(128).sqr().div_i64(6)));
        assert!(z2.width().to_f64() < 1e-25);
        let z32 = zeta_half_integer(&rat(3, 2), 128).unwrap();
        assert!(near(&z32, 2.612_375_348_685_488, 1e-15), "{z32}");
        assert!(zeta_half_integer(&rat(1, 1), 64).is_err());
    }

    #[test]
    fn truncation_is_floor_nu() {
        let q = EtaQuotient::distinct_parts();
        assert_eq!(default_truncation(&q, 135).unwrap(), 21);
        assert_eq!(default_truncation(&q, 1365).unwrap(), 67);
        assert_eq!(default_truncation(&q, 134).unwrap(), 20);
    }

    #[test]
    fn first_term_is_main_term() {
        let q = EtaQuotient::distinct_parts();
        let (re, im) = chern_truncated_sum(&q, 135, 1, 192).unwrap();
        assert!(im.contains_int(&BigInt::zero()));
        assert!(re.intersects(&crate::nu::main_term(135, 192).unwrap()));
    }

    #[test]
    fn hybrid_formula_for_q() {
        let table = q_table(500);
        let q = EtaQuotient::distinct_parts();
        for n in [135u64, 136, 200, 500] {
            let rep = hybrid_residual_check(&q, n, &table.values()[n as usize], DISTINCT_ERROR_CONSTANT, 192).unwrap();
            assert!(rep.within_limit && rep.within_budget, "n={n}: {rep:?}");
            assert!(rep.imaginary.mag().to_f64() < 1e-20);
            assert_eq!(rep.budget.le(&Enclosure::from_i64(DISTINCT_ERROR_CONSTANT, 64)), Some(true));
        }
    }

    #[test]
    fn hybrid_formula_for_no_multiples() {
        for k in 3..=5u32 {
            let table = pk_table(k, 400).unwrap();
            let eq = EtaQuotient::no_multiples_of(k as u64).unwrap();
            for n in [50u64, 400] {
                let rep = hybrid_residual_check(&eq, n, &table.values()[n as usize], i64::MAX, 192).unwrap();
                assert!(rep.within_budget, "k={k} n={n}: {rep:?}");
            }
        }
    }

    #[test]
    fn budget_at_large_n_and_monotone_in_truncation() {
        let q = EtaQuotient::distinct_parts();
        let b = chern_error_budget(&q, 10_000, default_truncation(&q, 10_000).unwrap(), 128).unwrap();
        assert_eq!(b.le(&Enclosure::from_i64(173, 64)), Some(true));
        // the exponential factor dominates: fewer terms, larger budget
        let mut prev: Option<Enclosure> = None;
        for big_n in [30u64, 25, 20, 15] {
            let b = chern_error_budget(&q, 135, big_n, 128).unwrap();
            if let Some(p) = &prev {
                assert_eq!(p.lt(&b), Some(true), "N={big_n}");
            }
            prev = Some(b);
        }
    }

    #[test]
    fn odd_tail() {
        for n in [135u64, 1000, 3000] {
            assert!(odd_tail_check(n).unwrap());
        }
    }

    #[test]
    fn unsupported_order() {
        let eq = EtaQuotient::new(vec![1], vec![2]).unwrap();
        assert!(matches!(chern_truncated_sum(&eq, 10, 3, 64), Err(Error::UnsupportedOrder(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn dedekind_scaled_denominator(h in -500i64..500, j in 1u64..300) {
            prop_assume!(h.unsigned_abs().gcd(&j) == 1);
            let s = dedekind_sum(h, j).unwrap();
            prop_assert!((s.clone() * BigInt::from(6 * j)).is_integer());
            prop_assert_eq!(dedekind_sum(-h, j).unwrap(), -s);
        }
    }
}
