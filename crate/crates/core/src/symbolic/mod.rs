//! Exact arithmetic in ℚ[π], Laurent polynomials in ν over ℚ[π], and ℚ(√2).

pub mod identities;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{pi_enclosure, Enclosure};
use crate::error::{Error, Result};

/// Polynomial in π with rational coefficients, keyed by π-exponent.
///
/// Zero coefficients are never stored, so derived equality is ring equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PiPoly {
    coeffs: BTreeMap<u32, BigRational>,
}

impl PiPoly {
    pub fn zero() -> Self {
        PiPoly::default()
    }

    pub fn one() -> Self {
        PiPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        PiPoly::term(c, 0)
    }

    pub fn int(c: i64) -> Self {
        PiPoly::constant(BigRational::from_integer(c.into()))
    }

    /// `c·π^k`.
    pub fn term(c: BigRational, k: u32) -> Self {
        let mut p = PiPoly::zero();
        p.accumulate(k, c);
        p
    }

    /// `(num/den)·π^k`.
    pub fn ratio_term(num: i64, den: i64, k: u32) -> Self {
        PiPoly::term(crate::arith::rat(num, den), k)
    }

    fn accumulate(&mut self, k: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: u32) -> BigRational {
        self.coeffs.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero `(π-exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// The value if the polynomial is a constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(self.coeff(0)),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = PiPoly::zero();
        for (k, v) in self.terms() {
            out.accumulate(k, v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = PiPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, prec: u32) -> Enclosure {
        let pi = pi_enclosure(prec);
        let mut acc = Enclosure::zero(prec);
        for (k, c) in self.terms() {
            let pk = pi.pow_int(k as i64).expect("nonnegative power");
            acc = acc.add(&pk.mul_rational(c));
        }
        acc
    }
}

impl Add for &PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: &PiPoly) -> PiPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.accumulate(k, c.clone());
        }
        out
    }
}

impl Sub for &PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: &PiPoly) -> PiPoly {
        self + &(-rhs)
    }
}

impl Neg for &PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: &PiPoly) -> PiPoly {
        let mut out = PiPoly::zero();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out.accumulate(i + j, a * b);
            }
        }
        out
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PiPoly {
    /// Increasing powers of π, e.g. `78 - 175/64*pi^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match k {
                0 => write_rational(f, &mag)?,
                _ => {
                    if !mag.is_one() {
                        write_rational(f, &mag)?;
                        f.write_str("*")?;
                    }
                    f.write_str("pi")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Which neighbour of `ν(n)` a shifted argument refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    /// `ν(n-1)² = ν(n)² - π²/3`.
    Down,
    /// `ν(n+1)² = ν(n)² + π²/3`.
    Up,
}

/// Laurent polynomial in ν with coefficients in ℚ[π].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NuLaurent {
    coeffs: BTreeMap<i32, PiPoly>,
}

impl NuLaurent {
    pub fn zero() -> Self {
        NuLaurent::default()
    }

    pub fn one() -> Self {
        NuLaurent::constant(PiPoly::one())
    }

    pub fn constant(c: PiPoly) -> Self {
        NuLaurent::monomial(c, 0)
    }

    /// `c·ν^j`.
    pub fn monomial(c: PiPoly, j: i32) -> Self {
        let mut p = NuLaurent::zero();
        p.accumulate(j, &c);
        p
    }

    /// The variable ν itself.
    pub fn nu() -> Self {
        NuLaurent::monomial(PiPoly::one(), 1)
    }

    /// Sum of `(ν-exponent, coefficient)` terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, PiPoly)>) -> Self {
        let mut p = NuLaurent::zero();
        for (j, c) in terms {
            p.accumulate(j, &c);
        }
        p
    }

    fn accumulate(&mut self, j: i32, c: &PiPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(j).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.coeffs.remove(&j);
        }
    }

    pub fn coeff(&self, j: i32) -> PiPoly {
        self.coeffs.get(&j).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &PiPoly)> {
        self.coeffs.iter().map(|(j, c)| (*j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: &PiPoly) -> Self {
        NuLaurent::from_terms(self.terms().map(|(j, v)| (j, v * c)))
    }

    /// Multiply by `ν^k`.
    pub fn shift_exp(&self, k: i32) -> Self {
        NuLaurent { coeffs: self.coeffs.iter().map(|(j, c)| (j + k, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = NuLaurent::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Read `self` as a polynomial in the shifted argument `w = ν(n∓1)` and
    /// rewrite it in `ν = ν(n)` using `w² = ν² ∓ π²/3`.
    ///
    /// Only nonnegative even powers of `w` can be rewritten this way.
    pub fn substitute_nu_squared_shift(&self, shift: Shift) -> Result<NuLaurent> {
        let sign = match shift {
            Shift::Down => -1,
            Shift::Up => 1,
        };
        let w2 = NuLaurent::from_terms([(2, PiPoly::one()), (0, PiPoly::ratio_term(sign, 3, 2))]);
        let mut out = NuLaurent::zero();
        for (j, c) in self.terms() {
            if j % 2 != 0 {
                return Err(Error::OddPower(j));
            }
            if j < 0 {
                return Err(Error::Argument(format!(
                    "negative power {j} of a shifted argument is not a polynomial"
                )));
            }
            out = &out + &w2.pow(j as u32 / 2).scale(c);
        }
        Ok(out)
    }

    /// Coefficients of `ν^0..=ν^max_degree` when `self` is a polynomial of at most that degree.
    pub fn polynomial_coeffs(&self, max_degree: u32) -> Result<Vec<PiPoly>> {
        if let Some(lo) = self.min_exp().filter(|&j| j < 0) {
            return Err(Error::InternalInconsistency(format!("expected a polynomial, found ν^{lo}")));
        }
        if let Some(hi) = self.max_exp().filter(|&j| j > max_degree as i32) {
            return Err(Error::InternalInconsistency(format!(
                "expected degree at most {max_degree}, found ν^{hi}"
            )));
        }
        Ok((0..=max_degree as i32).map(|j| self.coeff(j)).collect())
    }

    pub fn eval(&self, nu: &Enclosure) -> Result<Enclosure> {
        let prec = nu.precision();
        let mut acc = Enclosure::zero(prec);
        for (j, c) in self.terms() {
            acc = acc.add(&c.eval(prec).mul(&nu.pow_int(j as i64)?));
        }
        Ok(acc)
    }
}

impl Add for &NuLaurent {
    type Output = NuLaurent;
    fn add(self, rhs: &NuLaurent) -> NuLaurent {
        let mut out = self.clone();
        for (j, c) in rhs.terms() {
            out.accumulate(j, c);
        }
        out
    }
}

impl Sub for &NuLaurent {
    type Output = NuLaurent;
    fn sub(self, rhs: &NuLaurent) -> NuLaurent {
        self + &(-rhs)
    }
}

impl Neg for &NuLaurent {
    type Output = NuLaurent;
    fn neg(self) -> NuLaurent {
        NuLaurent::from_terms(self.terms().map(|(j, c)| (j, -c)))
    }
}

impl Mul for &NuLaurent {
    type Output = NuLaurent;
    fn mul(self, rhs: &NuLaurent) -> NuLaurent {
        let mut out = NuLaurent::zero();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out.accumulate(i + j, &(a * b));
            }
        }
        out
    }
}

impl fmt::Display for NuLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (j, c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*nu^{j}")?;
        }
        Ok(())
    }
}

/// `a + b√2` with rational `a`, `b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QSqrt2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        QSqrt2 { a, b: BigRational::zero() }
    }

    pub fn sqrt2() -> Self {
        QSqrt2 { a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QSqrt2 { a: &self.a * c, b: &self.b * c }
    }

    /// The rational value when the √2 part vanishes.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    pub fn eval(&self, prec: u32) -> Enclosure {
        let r2 = Enclosure::from_i64(2, prec).sqrt().expect("2 > 0");
        Enclosure::from_rational(&self.a, prec).add(&r2.mul_rational(&self.b))
    }
}

impl Add for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2 { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Mul for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        let two = BigRational::from_integer(BigInt::from(2));
        QSqrt2 {
            a: &self.a * &rhs.a + two * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt2", self.a, self.b)
    }
}
