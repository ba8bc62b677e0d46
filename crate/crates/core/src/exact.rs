//! Exact scalar arithmetic.
//!
//! Values are built from Gaussian rationals, square roots of squarefree
//! integers and half-integer powers of π. A complex `f64` path shares the
//! same [`Ring`]/[`Field`] interface so generic formulas run on both.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{MathError, Result};

pub type CScalar = Complex64;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(q: &BigRational) -> f64 {
    let n = q.numer().to_f64().unwrap_or(f64::NAN);
    let d = q.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        return n / d;
    }
    // very large operands: scale both down by the same power of two
    let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
    let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
    n / d
}

/// `"num/den"`, always with an explicit denominator.
pub fn fmt_rat(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `"p/q"`, `"p"` and plain decimals such as `"4.5"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || MathError::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let q = BigRational::new(n, d);
        return Ok(if neg { -q } else { q });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().to_biguint()?;
    let d = q.denom().to_biguint()?;
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if &sn * &sn == n && &sd * &sd == d {
        Some(BigRational::new(sn.into(), sd.into()))
    } else {
        None
    }
}

/// Splits `n = s^2 * r` with `r` squarefree.
fn square_split(n: &BigUint) -> (BigUint, BigUint) {
    let mut rest = n.clone();
    let mut s = BigUint::one();
    let mut r = BigUint::one();
    if rest.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    let mut d = BigUint::from(2u32);
    while &d * &d <= rest {
        let mut e = 0u32;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            s *= num_traits::pow(d.clone(), (e / 2) as usize);
            if e % 2 == 1 {
                r *= &d;
            }
        }
        d += 1u32;
    }
    r *= rest;
    (s, r)
}

// ---------------------------------------------------------------------------
// HalfInt

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_i64(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    /// Panics on a half-odd value; use where integrality is a checked invariant.
    pub fn expect_int(self) -> i64 {
        self.to_i64()
            .unwrap_or_else(|| panic!("expected an integer, got {self}"))
    }

    pub fn to_rational(self) -> BigRational {
        rat(self.twice, 2)
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    /// `lo, lo+1, …` up to and including `hi`.
    pub fn steps(lo: HalfInt, hi: HalfInt) -> impl Iterator<Item = HalfInt> {
        let n = if hi.twice >= lo.twice { (hi.twice - lo.twice) / 2 + 1 } else { 0 };
        (0..n).map(move |k| HalfInt { twice: lo.twice + 2 * k })
    }

    /// `lo, lo+1/2, …` up to and including `hi`.
    pub fn half_steps(lo: HalfInt, hi: HalfInt) -> impl Iterator<Item = HalfInt> {
        let n = (hi.twice - lo.twice + 1).max(0);
        (0..n).map(move |k| HalfInt { twice: lo.twice + k })
    }

    pub fn from_rational(q: &BigRational) -> Option<Self> {
        let t = q * rat_int(2);
        if t.is_integer() {
            t.to_integer().to_i64().map(HalfInt::from_twice)
        } else {
            None
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + o.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - o.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, k: i64) -> HalfInt {
        HalfInt { twice: self.twice * k }
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = MathError;
    fn from_str(s: &str) -> Result<Self> {
        let q = parse_rational(s)?;
        HalfInt::from_rational(&q)
            .ok_or_else(|| MathError::Parse(format!("not a half-integer: {s:?}")))
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// scalar traits

pub trait Ring:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: &BigRational) -> Self;
    fn imag_unit() -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&rat_int(n))
    }

    fn from_half(h: HalfInt) -> Self {
        Self::from_rational(&h.to_rational())
    }

    fn scale(&self, q: &BigRational) -> Self {
        self.clone() * Self::from_rational(q)
    }

    fn powu(&self, e: u64) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// `i^k` for any integer `k`.
    fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::imag_unit(),
            2 => -Self::one(),
            _ => -Self::imag_unit(),
        }
    }
}

pub trait Field: Ring {
    fn try_inv(&self) -> Result<Self>;

    /// `Some(n)` when the value is exactly the integer `n`.
    fn as_integer(&self) -> Option<i64>;

    fn try_div(&self, o: &Self) -> Result<Self> {
        Ok(self.clone() * o.try_inv()?)
    }

    fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.powu(e as u64))
        } else {
            self.powu(e.unsigned_abs()).try_inv()
        }
    }

    fn is_nonpositive_integer(&self) -> bool {
        matches!(self.as_integer(), Some(n) if n <= 0)
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gauss {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gauss {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gauss { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Gauss { re, im: BigRational::zero() }
    }

    pub fn conj(&self) -> Self {
        Gauss { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    fn fmt_canonical(&self) -> String {
        if self.im.is_zero() {
            fmt_rat(&self.re)
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            format!("({}{}{}*i)", fmt_rat(&self.re), sign, fmt_rat(&self.im.abs()))
        }
    }

    fn parse_canonical(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let body = inner
                .strip_suffix("*i")
                .ok_or_else(|| MathError::Parse(format!("bad complex rational {s:?}")))?;
            // split at the sign that follows the first "num/den"
            let first_slash = body
                .find('/')
                .ok_or_else(|| MathError::Parse(format!("bad complex rational {s:?}")))?;
            let rel = body[first_slash..]
                .find(['+', '-'])
                .ok_or_else(|| MathError::Parse(format!("bad complex rational {s:?}")))?;
            let cut = first_slash + rel;
            let re = parse_rational(&body[..cut])?;
            let im = parse_rational(&body[cut..])?;
            return Ok(Gauss::new(re, im));
        }
        Ok(Gauss::real(parse_rational(s)?))
    }
}

impl fmt::Debug for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_canonical())
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_canonical())
    }
}

impl Add for Gauss {
    type Output = Gauss;
    fn add(self, o: Gauss) -> Gauss {
        let sum = |a: BigRational, b: BigRational| if b.is_zero() { a } else if a.is_zero() { b } else { a + b };
        Gauss { re: sum(self.re, o.re), im: sum(self.im, o.im) }
    }
}

impl Sub for Gauss {
    type Output = Gauss;
    fn sub(self, o: Gauss) -> Gauss {
        Gauss { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Gauss {
    type Output = Gauss;
    fn mul(self, o: Gauss) -> Gauss {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => Gauss::real(self.re * o.re),
            (true, false) => o.scale(&self.re),
            (false, true) => self.scale(&o.re),
            _ => Gauss {
                re: &self.re * &o.re - &self.im * &o.im,
                im: &self.re * &o.im + &self.im * &o.re,
            },
        }
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -self.re, im: -self.im }
    }
}

impl Ring for Gauss {
    fn zero() -> Self {
        Gauss::real(BigRational::zero())
    }
    fn one() -> Self {
        Gauss::real(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_rational(q: &BigRational) -> Self {
        Gauss::real(q.clone())
    }
    fn imag_unit() -> Self {
        Gauss::new(BigRational::zero(), BigRational::one())
    }
    fn scale(&self, q: &BigRational) -> Self {
        let part = |x: &BigRational| if x.is_zero() { BigRational::zero() } else { x * q };
        Gauss { re: part(&self.re), im: part(&self.im) }
    }
}

impl Field for Gauss {
    fn try_inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(MathError::pole("division by exact zero"));
        }
        Ok(Gauss { re: &self.re / &n, im: -(&self.im / &n) })
    }

    fn as_integer(&self) -> Option<i64> {
        if self.im.is_zero() && self.re.is_integer() {
            self.re.to_integer().to_i64()
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// complex floating point

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(rat_to_f64(q), 0.0)
    }
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
}

impl Field for Complex64 {
    fn try_inv(&self) -> Result<Self> {
        let v = Complex64::new(1.0, 0.0) / *self;
        if Ring::is_zero(self) || !v.re.is_finite() || !v.im.is_finite() {
            return Err(MathError::pole("division by zero (float path)"));
        }
        Ok(v)
    }

    fn as_integer(&self) -> Option<i64> {
        let r = self.re.round();
        if self.im.abs() < 1e-12 && (self.re - r).abs() < 1e-12 * r.abs().max(1.0) {
            Some(r as i64)
        } else {
            None
        }
    }
}

/// Complex Γ on the float path.
pub fn gamma_c(z: Complex64) -> Result<Complex64> {
    if let Some(n) = Field::as_integer(&z) {
        if n <= 0 {
            return Err(MathError::pole(format!("Gamma pole at {n}")));
        }
    }
    let v = spfunc::gamma::gamma(z);
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(MathError::pole(format!("Gamma overflow at {z}")))
    }
}

/// `Γ(a)/Γ(b)` on the float path, via log-gamma differences.
pub fn gamma_ratio_c(a: Complex64, b: Complex64) -> Result<Complex64> {
    for (v, name) in [(a, "numerator"), (b, "denominator")] {
        if let Some(n) = Field::as_integer(&v) {
            if n <= 0 {
                if name == "denominator" {
                    return Ok(Ring::zero());
                }
                return Err(MathError::pole(format!("Gamma pole at {n}")));
            }
        }
    }
    let v = (spfunc::gamma::gamma_ln(a) - spfunc::gamma::gamma_ln(b)).exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(MathError::pole("Gamma ratio overflow"))
    }
}

// ---------------------------------------------------------------------------
// ExactScalar: q * sqrt(r) * pi^(p/2)

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    q: Gauss,
    r: u64,
    p: i32,
}

impl ExactScalar {
    /// Builds `q * sqrt(r) * pi^(p/2)`, pulling square factors of `r` into `q`.
    pub fn new(q: Gauss, r: u64, p: i32) -> Self {
        assert!(r > 0, "radicand must be positive");
        let (s, rr) = square_split(&BigUint::from(r));
        let rr = rr.to_u64().expect("radicand fits in u64");
        let q = q.scale(&BigRational::from_integer(s.into()));
        Self::normalized(q, rr, p)
    }

    fn normalized(q: Gauss, r: u64, p: i32) -> Self {
        if Ring::is_zero(&q) {
            ExactScalar { q, r: 1, p: 0 }
        } else {
            ExactScalar { q, r, p }
        }
    }

    pub fn zero() -> Self {
        Self::normalized(Gauss::zero(), 1, 0)
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::normalized(Gauss::real(q), 1, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_gauss(q: Gauss) -> Self {
        Self::normalized(q, 1, 0)
    }

    pub fn i() -> Self {
        Self::from_gauss(Gauss::imag_unit())
    }

    pub fn i_pow(k: i64) -> Self {
        Self::from_gauss(Gauss::i_pow(k))
    }

    /// `sqrt(pi)^p`.
    pub fn sqrt_pi_pow(p: i32) -> Self {
        Self::normalized(Gauss::one(), 1, p)
    }

    /// Principal square root of a rational (imaginary for negative input).
    pub fn sqrt_rational(x: &BigRational) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        let a = x.abs();
        let num = a.numer().to_biguint().unwrap();
        let den = a.denom().to_biguint().unwrap();
        // sqrt(n/d) = sqrt(n*d)/d
        let (s, r) = square_split(&(num * &den));
        let coeff = BigRational::new(s.into(), den.into());
        let q = if x.is_negative() {
            Gauss::new(BigRational::zero(), coeff)
        } else {
            Gauss::real(coeff)
        };
        Self::normalized(q, r.to_u64().expect("radicand fits in u64"), 0)
    }

    /// `sign * sqrt(x)` for `x >= 0`.
    pub fn signed_sqrt(sign: i64, x: &BigRational) -> Self {
        let v = Self::sqrt_rational(x);
        if sign < 0 {
            -v
        } else {
            v
        }
    }

    pub fn q(&self) -> &Gauss {
        &self.q
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn p(&self) -> i32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        Ring::is_zero(&self.q)
    }

    pub fn is_rational(&self) -> bool {
        self.r == 1 && self.p == 0 && self.q.is_real()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.q.re.clone())
    }

    pub fn as_gauss(&self) -> Option<Gauss> {
        (self.r == 1 && self.p == 0).then(|| self.q.clone())
    }

    pub fn same_class(&self, o: &Self) -> bool {
        self.is_zero() || o.is_zero() || (self.r == o.r && self.p == o.p)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.r != o.r || self.p != o.p {
            return Err(MathError::RadicandMismatch(self.to_string(), o.to_string()));
        }
        Ok(Self::normalized(self.q.clone() + o.q.clone(), self.r, self.p))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&-o.clone())
    }

    pub fn scale_gauss(&self, g: &Gauss) -> Self {
        Self::normalized(self.q.clone() * g.clone(), self.r, self.p)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(MathError::pole("inverse of exact zero"));
        }
        let q = self.q.try_inv()?.scale(&BigRational::new(BigInt::one(), BigInt::from(self.r)));
        Ok(Self::normalized(q, self.r, -self.p))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        Ok(self.clone() * o.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        let mag = (self.r as f64).sqrt() * std::f64::consts::PI.powf(self.p as f64 / 2.0);
        self.q.to_complex() * mag
    }

    pub fn conj(&self) -> Self {
        Self::normalized(self.q.conj(), self.r, self.p)
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: ExactScalar) -> ExactScalar {
        let g = self.r.gcd(&o.r);
        let r = (self.r / g)
            .checked_mul(o.r / g)
            .expect("radicand overflow");
        let mut q = self.q * o.q;
        if g != 1 {
            q = q.scale(&rat_int(g as i64));
        }
        ExactScalar::normalized(q, r, self.p + o.p)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::normalized(-self.q, self.r, self.p)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*sqrt({})*pi^({}/2)", self.q.fmt_canonical(), self.r, self.p)
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactScalar {
    type Err = MathError;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || MathError::Parse(format!("not a scalar string: {s:?}"));
        let (qs, rest) = s.rsplit_once("*sqrt(").ok_or_else(bad)?;
        let (rs, rest) = rest.split_once(")*pi^(").ok_or_else(bad)?;
        let ps = rest.strip_suffix("/2)").ok_or_else(bad)?;
        let q = Gauss::parse_canonical(qs)?;
        let r: u64 = rs.parse().map_err(|_| bad())?;
        let p: i32 = ps.parse().map_err(|_| bad())?;
        if r == 0 {
            return Err(bad());
        }
        let v = ExactScalar::new(q, r, p);
        if v.to_string() != s {
            return Err(MathError::Parse(format!("non-canonical scalar string: {s:?}")));
        }
        Ok(v)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// RadicalSum: finite sums of ExactScalars with mixed radicands

#[derive(Clone, PartialEq, Eq, Default)]
pub struct RadicalSum {
    terms: BTreeMap<(u64, i32), Gauss>,
}

impl RadicalSum {
    pub fn from_exact(x: &ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !x.is_zero() {
            terms.insert((x.r, x.p), x.q.clone());
        }
        RadicalSum { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = ExactScalar> + '_ {
        self.terms.iter().map(|(&(r, p), q)| ExactScalar::normalized(q.clone(), r, p))
    }

    /// The single-monomial value, if there is at most one term.
    pub fn as_exact(&self) -> Option<ExactScalar> {
        match self.terms.len() {
            0 => Some(ExactScalar::zero()),
            1 => self.terms().next(),
            _ => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.terms().map(|t| t.to_complex()).sum()
    }

    fn insert(&mut self, key: (u64, i32), q: Gauss) {
        let e = self.terms.entry(key).or_insert_with(Gauss::zero);
        *e = std::mem::replace(e, Gauss::zero()) + q;
        if Ring::is_zero(e) {
            self.terms.remove(&key);
        }
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "{}", ExactScalar::zero());
        }
        let parts: Vec<String> = self.terms().map(|t| t.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for RadicalSum {
    type Output = RadicalSum;
    fn add(mut self, o: RadicalSum) -> RadicalSum {
        for (k, q) in o.terms {
            self.insert(k, q);
        }
        self
    }
}

impl Sub for RadicalSum {
    type Output = RadicalSum;
    fn sub(self, o: RadicalSum) -> RadicalSum {
        self + (-o)
    }
}

impl Neg for RadicalSum {
    type Output = RadicalSum;
    fn neg(self) -> RadicalSum {
        RadicalSum { terms: self.terms.into_iter().map(|(k, q)| (k, -q)).collect() }
    }
}

impl Mul for RadicalSum {
    type Output = RadicalSum;
    fn mul(self, o: RadicalSum) -> RadicalSum {
        let mut out = RadicalSum::default();
        for a in self.terms() {
            for b in o.terms() {
                let c = a.clone() * b;
                if !c.is_zero() {
                    out.insert((c.r, c.p), c.q);
                }
            }
        }
        out
    }
}

impl Ring for RadicalSum {
    fn zero() -> Self {
        RadicalSum::default()
    }
    fn one() -> Self {
        RadicalSum::from_exact(&ExactScalar::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(q: &BigRational) -> Self {
        RadicalSum::from_exact(&ExactScalar::from_rational(q.clone()))
    }
    fn imag_unit() -> Self {
        RadicalSum::from_exact(&ExactScalar::i())
    }
}

/// Coefficient rings that can absorb an exact monomial (exact sums or floats).
pub trait FromExact: Ring {
    fn from_exact(x: &ExactScalar) -> Self;
}

impl FromExact for RadicalSum {
    fn from_exact(x: &ExactScalar) -> Self {
        RadicalSum::from_exact(x)
    }
}

impl FromExact for Complex64 {
    fn from_exact(x: &ExactScalar) -> Self {
        x.to_complex()
    }
}

// ---------------------------------------------------------------------------
// induction datum

/// A value that is exact where the inputs allow it.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(ExactScalar),
    Float(Complex64),
}

impl Scalar {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(x) => x.to_complex(),
            Scalar::Float(z) => *z,
        }
    }

    pub fn exact(&self) -> Option<&ExactScalar> {
        match self {
            Scalar::Exact(x) => Some(x),
            Scalar::Float(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(x) => write!(f, "{x}"),
            Scalar::Float(z) => f.write_str(&fmt_complex(*z)),
        }
    }
}

impl FromStr for Scalar {
    type Err = MathError;
    fn from_str(s: &str) -> Result<Self> {
        if s.contains("sqrt(") {
            return s.parse().map(Scalar::Exact);
        }
        parse_complex(s).map(Scalar::Float)
    }
}

/// `re+imi` with shortest round-trip decimal parts.
pub fn fmt_complex(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

/// Parses `re`, `re+imi`, `re-imi` or `imi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || MathError::Parse(format!("cannot parse complex number {s:?}"));
    let t = s.trim();
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.trim_start_matches('+').parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Lambda {
    Exact(BigRational, BigRational),
    Float(Complex64, Complex64),
}

impl Lambda {
    pub fn exact(l1: BigRational, l2: BigRational) -> Self {
        Lambda::Exact(l1, l2)
    }

    pub fn as_exact(&self) -> Option<(&BigRational, &BigRational)> {
        match self {
            Lambda::Exact(a, b) => Some((a, b)),
            Lambda::Float(..) => None,
        }
    }

    pub fn to_complex(&self) -> (Complex64, Complex64) {
        match self {
            Lambda::Exact(a, b) => (Ring::from_rational(a), Ring::from_rational(b)),
            Lambda::Float(a, b) => (*a, *b),
        }
    }

    /// The pair embedded in any ring; floats are only accepted by float rings.
    pub fn in_ring<R: Ring + FromExact>(&self) -> (R, R) {
        match self {
            Lambda::Exact(a, b) => (R::from_rational(a), R::from_rational(b)),
            Lambda::Float(a, b) => {
                let f = |z: &Complex64| {
                    let x = R::from_rational(&BigRational::from_float(z.re).unwrap_or_default());
                    let y = R::from_rational(&BigRational::from_float(z.im).unwrap_or_default());
                    x + R::imag_unit() * y
                };
                (f(a), f(b))
            }
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Exact(a, b) => write!(f, "({}, {})", fmt_rat(a), fmt_rat(b)),
            Lambda::Float(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub delta: (u8, u8),
    pub lambda: Lambda,
}

impl Character {
    pub fn new(delta: (u8, u8), lambda: Lambda) -> Result<Self> {
        if delta.0 > 1 || delta.1 > 1 {
            return Err(MathError::OutOfRange(format!("delta {delta:?} not in {{0,1}}^2")));
        }
        Ok(Character { delta, lambda })
    }

    pub fn exact(delta: (u8, u8), l1: BigRational, l2: BigRational) -> Result<Self> {
        Self::new(delta, Lambda::Exact(l1, l2))
    }
}

// ---------------------------------------------------------------------------
// special values

/// Rising factorial `(a)^(n)`; negative `n` means `1/((a-1)(a-2)…(a+n))`.
pub fn pochhammer<F: Field>(a: &F, n: i64) -> Result<F> {
    if n >= 0 {
        let mut acc = F::one();
        for k in 0..n {
            acc = acc * (a.clone() + F::from_int(k));
        }
        return Ok(acc);
    }
    let mut den = F::one();
    for k in 1..=(-n) {
        den = den * (a.clone() - F::from_int(k));
    }
    den.try_inv().map_err(|e| match e {
        MathError::Pole(_) => MathError::pole(format!("Pochhammer ({a:?})^({n}) hits a pole")),
        other => other,
    })
}

/// `binomial(n, k) = n(n-1)…(n-k+1)/k!` for any scalar `n`.
pub fn binomial<F: Ring>(n: &F, k: u64) -> F {
    let mut acc = F::one();
    for i in 0..k {
        acc = acc * (n.clone() - F::from_int(i as i64));
    }
    acc.scale(&BigRational::new(BigInt::one(), factorial(k)))
}

/// Γ at a half-integer, as `rational * sqrt(pi)^p`.
pub fn gamma_half(a: HalfInt) -> Result<ExactScalar> {
    if a.is_integer() {
        let n = a.twice() / 2;
        if n <= 0 {
            return Err(MathError::pole(format!("Gamma pole at {n}")));
        }
        return Ok(ExactScalar::from_rational(BigRational::from_integer(factorial(
            (n - 1) as u64,
        ))));
    }
    // Γ(1/2) = √π, then the functional equation in either direction
    let mut q = BigRational::one();
    let mut x = HalfInt::HALF;
    match a.cmp(&x) {
        Ordering::Greater => {
            while x < a {
                q *= x.to_rational();
                x = x + HalfInt::ONE;
            }
        }
        Ordering::Less => {
            while x > a {
                x = x - HalfInt::ONE;
                q /= x.to_rational();
            }
        }
        Ordering::Equal => {}
    }
    Ok(ExactScalar::from_rational(q) * ExactScalar::sqrt_pi_pow(1))
}

/// `Γ(a)/Γ(b)` for half-integers, with poles of the denominator giving zero.
pub fn gamma_half_ratio(a: HalfInt, b: HalfInt) -> Result<ExactScalar> {
    if b.is_integer() && b.twice() <= 0 {
        if a.is_integer() && a.twice() <= 0 {
            // both poles: ratio of residues
            let (na, nb) = (-a.twice() / 2, -b.twice() / 2);
            let sign = if (na - nb) % 2 == 0 { 1 } else { -1 };
            let q = BigRational::new(
                BigInt::from(sign) * factorial(nb as u64),
                factorial(na as u64),
            );
            return Ok(ExactScalar::from_rational(q));
        }
        return Ok(ExactScalar::zero());
    }
    gamma_half(a)?.try_div(&gamma_half(b)?)
}
