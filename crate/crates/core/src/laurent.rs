//! Truncated Laurent series with exact coefficients.
//!
//! A series knows its coefficients from `min_exp` up to `trunc` (inclusive);
//! anything above `trunc` is unknown, never silently zero. `trunc = None`
//! marks a Laurent polynomial that is exact to all orders.
//!
//! `LSeries1<F>` is itself a [`Field`], which is how removable singularities
//! are resolved: evaluate a formula at `x0 + s` over series in `s` and read
//! off the constant term (see [`regular_value`]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::error::{MathError, Result};
use crate::exact::{pochhammer, Field, Ring};

/// Relative precision used when inverting an exact non-monomial series.
const EXACT_INVERSE_TERMS: i64 = 24;

#[derive(Clone)]
pub struct LSeries1<F> {
    var: &'static str,
    min_exp: i64,
    coeffs: Vec<F>,
    trunc: Option<i64>,
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl<F: Ring> LSeries1<F> {
    pub fn new(var: &'static str, min_exp: i64, coeffs: Vec<F>, trunc: Option<i64>) -> Self {
        let mut s = LSeries1 { var, min_exp, coeffs, trunc };
        s.normalize();
        s
    }

    pub fn constant(var: &'static str, c: F) -> Self {
        Self::new(var, 0, vec![c], None)
    }

    /// `c * var^k`, exact.
    pub fn monomial(var: &'static str, k: i64, c: F) -> Self {
        Self::new(var, k, vec![c], None)
    }

    /// The variable itself, declared known only through `trunc`.
    pub fn variable(var: &'static str, trunc: i64) -> Self {
        Self::new(var, 1, vec![F::one()], Some(trunc))
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn trunc_order(&self) -> Option<i64> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// Highest exponent stored.
    fn top(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64 - 1
    }

    fn normalize(&mut self) {
        if let Some(t) = self.trunc {
            let keep = (t - self.min_exp + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.min_exp = self.trunc.map_or(0, |t| t + 1);
        } else {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
    }

    /// Coefficient of `var^e`; errors when `e` lies beyond the known window.
    pub fn coeff(&self, e: i64) -> Result<F> {
        if let Some(t) = self.trunc {
            if e > t {
                return Err(MathError::Truncation { exp: e, order: t });
            }
        }
        if e < self.min_exp || e > self.top() {
            return Ok(F::zero());
        }
        Ok(self.coeffs[(e - self.min_exp) as usize].clone())
    }

    /// Lowest exponent with a known nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.min_exp)
    }

    pub fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Self {
        Self::new(self.var, self.min_exp, self.coeffs.iter().map(f).collect(), self.trunc)
    }

    pub fn scale_by(&self, c: &F) -> Self {
        self.map_coeffs(|x| x.clone() * c.clone())
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.var, self.min_exp + k, self.coeffs.clone(), self.trunc.map(|t| t + k))
    }

    /// Substitute `var -> c * var`.
    pub fn rescale_var(&self, c: &F) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            let e = self.min_exp + i as i64;
            let pw = if e >= 0 { c.powu(e as u64) } else { panic!("rescale_var needs min_exp >= 0") };
            out.push(a.clone() * pw);
        }
        Self::new(self.var, self.min_exp, out, self.trunc)
    }

    /// Drop known coefficients above `order`.
    pub fn truncate(&self, order: i64) -> Self {
        Self::new(self.var, self.min_exp, self.coeffs.clone(), min_opt(self.trunc, Some(order)))
    }

    fn check_var(&self, o: &Self) {
        assert!(
            self.var == o.var || self.coeffs.is_empty() || o.coeffs.is_empty() || self.var == "" || o.var == "",
            "mixing series in {} and {}",
            self.var,
            o.var
        );
    }

    fn pick_var(&self, o: &Self) -> &'static str {
        if self.var.is_empty() {
            o.var
        } else {
            self.var
        }
    }
}

impl<F: Ring> PartialEq for LSeries1<F> {
    fn eq(&self, o: &Self) -> bool {
        self.trunc == o.trunc && self.min_exp == o.min_exp && self.coeffs == o.coeffs
    }
}

impl<F: Ring> fmt::Debug for LSeries1<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("({c:?}){}^{}", self.var, self.min_exp + i as i64));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        if let Some(t) = self.trunc {
            parts.push(format!("O({}^{})", self.var, t + 1));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl<F: Ring> Add for LSeries1<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.check_var(&o);
        let trunc = min_opt(self.trunc, o.trunc);
        if self.coeffs.is_empty() {
            return Self::new(self.pick_var(&o), o.min_exp, o.coeffs, trunc);
        }
        if o.coeffs.is_empty() {
            let var = self.pick_var(&o);
            return Self::new(var, self.min_exp, self.coeffs, trunc);
        }
        let lo = self.min_exp.min(o.min_exp);
        let hi = self.top().max(o.top());
        let mut coeffs = vec![F::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = (self.min_exp - lo) as usize + i;
            coeffs[k] = coeffs[k].clone() + c.clone();
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            let k = (o.min_exp - lo) as usize + i;
            coeffs[k] = coeffs[k].clone() + c.clone();
        }
        Self::new(self.pick_var(&o), lo, coeffs, trunc)
    }
}

impl<F: Ring> Neg for LSeries1<F> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<F: Ring> Sub for LSeries1<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Ring> Mul for LSeries1<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.check_var(&o);
        let var = self.pick_var(&o);
        // an unknown-but-truncated factor has valuation trunc+1
        let va = self.valuation().unwrap_or(self.min_exp);
        let vb = o.valuation().unwrap_or(o.min_exp);
        let trunc = min_opt(self.trunc.map(|t| t + vb), o.trunc.map(|t| t + va));
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::new(var, va + vb, vec![], trunc);
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        let limit = trunc.map(|t| t - (self.min_exp + o.min_exp));
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in o.coeffs.iter().enumerate() {
                if limit.is_some_and(|l| (i + k) as i64 > l) {
                    break;
                }
                coeffs[i + k] = coeffs[i + k].clone() + a.clone() * b.clone();
            }
        }
        Self::new(var, self.min_exp + o.min_exp, coeffs, trunc)
    }
}

impl<F: Field> LSeries1<F> {
    /// Multiplicative inverse, with precision tracked relative to the valuation.
    pub fn inverse(&self) -> Result<Self> {
        let v = match self.valuation() {
            Some(v) => v,
            None => {
                return Err(if self.trunc.is_some() {
                    MathError::Precision(format!("inverting a series with no known nonzero term in {}", self.var))
                } else {
                    MathError::pole("division by the zero series")
                })
            }
        };
        let rel = match self.trunc {
            Some(t) => t - v,
            None if self.coeffs.len() == 1 => {
                let c = self.coeffs[0].try_inv()?;
                return Ok(Self::monomial(self.var, -v, c));
            }
            None => EXACT_INVERSE_TERMS,
        };
        let a0_inv = self.coeffs[0].try_inv()?;
        let n = (rel + 1) as usize;
        let mut b: Vec<F> = Vec::with_capacity(n);
        b.push(a0_inv.clone());
        for k in 1..n {
            let mut acc = F::zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc = acc + self.coeffs[i].clone() * b[k - i].clone();
            }
            b.push(-(acc * a0_inv.clone()));
        }
        Ok(Self::new(self.var, -v, b, Some(-v + rel)))
    }
}

impl<F: Field> Ring for LSeries1<F> {
    fn zero() -> Self {
        LSeries1 { var: "", min_exp: 0, coeffs: vec![], trunc: None }
    }
    fn one() -> Self {
        Self::constant("", F::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_rational(q: &BigRational) -> Self {
        Self::constant("", F::from_rational(q))
    }
    fn imag_unit() -> Self {
        Self::constant("", F::imag_unit())
    }
}

impl<F: Field> Field for LSeries1<F> {
    fn try_inv(&self) -> Result<Self> {
        self.inverse()
    }

    fn as_integer(&self) -> Option<i64> {
        if self.trunc.is_none() && self.coeffs.len() <= 1 && self.min_exp == 0 {
            self.coeffs.first().map_or(Some(0), |c| c.as_integer())
        } else if self.coeffs.is_empty() && self.trunc.is_none() {
            Some(0)
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// constructors

/// `(1 + sign*var)^exponent` through `order`.
pub fn binom_series<F: Field>(var: &'static str, exponent: &F, sign: i64, order: i64) -> LSeries1<F> {
    let mut coeffs = Vec::with_capacity(order.max(0) as usize + 1);
    let mut c = F::one();
    let s = F::from_int(sign);
    for k in 0..=order {
        coeffs.push(c.clone());
        // binomial(e, k+1) s^{k+1} = binomial(e, k) s^k * (e-k) s / (k+1)
        c = c * (exponent.clone() - F::from_int(k)) * s.clone();
        c = c.scale(&BigRational::new(1.into(), (k + 1).into()));
    }
    LSeries1::new(var, 0, coeffs, Some(order))
}

/// `2F1(a, b; c; scale*var)`, exact when a top parameter terminates the series.
pub fn hyp2f1_series<F: Field>(
    var: &'static str,
    a: &F,
    b: &F,
    c: &F,
    scale: &F,
    order: i64,
) -> Result<LSeries1<F>> {
    let mut coeffs = Vec::new();
    let mut term = F::one();
    for k in 0..=order {
        coeffs.push(term.clone());
        let ak = a.clone() + F::from_int(k);
        let bk = b.clone() + F::from_int(k);
        if ak.as_integer() == Some(0) || bk.as_integer() == Some(0) {
            return Ok(LSeries1::new(var, 0, coeffs, None));
        }
        let ck = c.clone() + F::from_int(k);
        if ck.as_integer() == Some(0) {
            return Err(MathError::pole(format!(
                "2F1 lower parameter {c:?} reaches zero at step {k} before termination"
            )));
        }
        term = term * ak * bk * scale.clone();
        term = term.try_div(&(ck * F::from_int(k + 1)))?;
    }
    Ok(LSeries1::new(var, 0, coeffs, Some(order)))
}

/// Terminating `pFq` at a scalar argument: `Σ_{k=0}^{m} (a)_k/(b)_k z^k/k!`.
pub fn pfq_partial<F: Field>(a: &[F], b: &[F], z: &F, m: i64) -> Result<F> {
    let mut sum = F::zero();
    let mut term = F::one();
    for k in 0..=m {
        sum = sum + term.clone();
        if k == m {
            break;
        }
        let mut num = z.clone();
        for ai in a {
            num = num * (ai.clone() + F::from_int(k));
        }
        let mut den = F::from_int(k + 1);
        for bi in b {
            den = den * (bi.clone() + F::from_int(k));
        }
        if num.is_zero() {
            break;
        }
        term = term * num.try_div(&den)?;
    }
    Ok(sum)
}

pub fn constant_term_1<F: Ring>(s: &LSeries1<F>) -> Result<F> {
    s.coeff(0)
}

// ---------------------------------------------------------------------------
// two variables, separable form

/// `coef * t1^a * t2^b * f1(t1) * f2(t2)`.
#[derive(Clone, Debug)]
pub struct SepTerm<F: Ring> {
    pub coef: F,
    pub a: i64,
    pub b: i64,
    pub f1: LSeries1<F>,
    pub f2: LSeries1<F>,
}

#[derive(Clone, Debug, Default)]
pub struct LSeries2<F: Ring> {
    pub terms: Vec<SepTerm<F>>,
}

impl<F: Field> LSeries2<F> {
    pub fn new() -> Self {
        LSeries2 { terms: Vec::new() }
    }

    pub fn push(&mut self, coef: F, a: i64, b: i64, f1: Vec<LSeries1<F>>, f2: Vec<LSeries1<F>>) {
        let prod = |fs: Vec<LSeries1<F>>, var| fs.into_iter().fold(LSeries1::constant(var, F::one()), |x, y| x * y);
        self.terms.push(SepTerm { coef, a, b, f1: prod(f1, "t1"), f2: prod(f2, "t2") });
    }
}

pub fn constant_term_2<F: Field>(s: &LSeries2<F>) -> Result<F> {
    let mut acc = F::zero();
    for t in &s.terms {
        if t.coef.is_zero() {
            continue;
        }
        let c1 = t.f1.coeff(-t.a)?;
        let c2 = t.f2.coeff(-t.b)?;
        acc = acc + t.coef.clone() * c1 * c2;
    }
    Ok(acc)
}

/// Re-run `f` with a larger order on truncation errors: +2 per retry, at most 3 retries.
pub fn with_retry<T>(order: i64, mut f: impl FnMut(i64) -> Result<T>) -> Result<T> {
    let mut ord = order;
    for attempt in 0..=3 {
        match f(ord) {
            Err(MathError::Truncation { .. }) if attempt < 3 => ord += 2,
            other => return other,
        }
    }
    unreachable!()
}

// ---------------------------------------------------------------------------
// removable singularities

/// Value at `s = 0` of a function that is regular there.
///
/// `f` receives the perturbation variable `s` (a series over `F`) and must
/// return the function value as a series in `s`. A nonzero principal part
/// is reported as a genuine pole.
pub fn regular_value<F: Field>(
    what: &str,
    f: impl Fn(&LSeries1<F>) -> Result<LSeries1<F>>,
) -> Result<F> {
    for order in [8, 16, 32, 64] {
        let s = LSeries1::variable("s", order);
        let v = match f(&s) {
            Err(MathError::Precision(_)) | Err(MathError::Truncation { .. }) => continue,
            other => other?,
        };
        if let Some(val) = v.valuation() {
            if val < 0 {
                return Err(MathError::pole(format!("{what}: genuine pole of order {}", -val)));
            }
        }
        match v.coeff(0) {
            Ok(c) => return Ok(c),
            Err(_) => continue,
        }
    }
    Err(MathError::Precision(format!("{what}: limit needs more than 64 orders")))
}

/// Direct evaluation, falling back to the limit along `x0 + s` when a
/// removable 0/0 is hit.
pub fn eval_or_limit<F: Field>(
    what: &str,
    direct: impl FnOnce() -> Result<F>,
    perturbed: impl Fn(&LSeries1<F>) -> Result<LSeries1<F>>,
) -> Result<F> {
    match direct() {
        Err(MathError::Pole(_)) => regular_value(what, perturbed),
        other => other,
    }
}

/// NIST 16.2.4 partial-sum reversal, checked exactly.
pub fn partial_sum_check<F: Field>(a: &[F], b: &[F], z: &F, m: i64) -> Result<bool> {
    let lhs = pfq_partial(a, b, z, m)?;
    let (p, q) = (a.len() as i64, b.len() as i64);
    let mut pref = z.powi(m)?;
    for ai in a {
        pref = pref * pochhammer(ai, m)?;
    }
    for bi in b {
        pref = pref.try_div(&pochhammer(bi, m)?)?;
    }
    pref = pref.try_div(&pochhammer(&F::one(), m)?)?;
    let mut top = vec![F::from_int(-m), F::one()];
    top.extend(b.iter().map(|bi| F::from_int(1 - m) - bi.clone()));
    let bot: Vec<F> = a.iter().map(|ai| F::from_int(1 - m) - ai.clone()).collect();
    let sign = if (p + q + 1) % 2 == 0 { F::one() } else { -F::one() };
    let w = sign.try_div(z)?;
    let rhs = pref * pfq_partial(&top, &bot, &w, m)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{binomial, rat, Gauss};

    fn g(n: i64, d: i64) -> Gauss {
        Gauss::real(rat(n, d))
    }

    #[test]
    fn binom_examples() {
        let s = binom_series("t", &g(2, 1), 1, 5);
        assert_eq!(s.coeff(0).unwrap(), g(1, 1));
        assert_eq!(s.coeff(1).unwrap(), g(2, 1));
        assert_eq!(s.coeff(2).unwrap(), g(1, 1));
        assert_eq!(s.coeff(3).unwrap(), g(0, 1));
        let geo = binom_series("t", &g(-1, 1), -1, 6);
        for k in 0..=6 {
            assert_eq!(geo.coeff(k).unwrap(), g(1, 1));
        }
        assert!(geo.coeff(7).is_err());
        let h = binom_series("t", &g(1, 2), -1, 4);
        assert_eq!(h.coeff(1).unwrap(), g(-1, 2));
        assert_eq!(h.coeff(2).unwrap(), g(-1, 8));
        for k in 0..=4 {
            let want = binomial(&g(1, 2), k as u64) * Gauss::i_pow(0) * g(if k % 2 == 0 { 1 } else { -1 }, 1);
            assert_eq!(h.coeff(k).unwrap(), want);
        }
    }

    #[test]
    fn hyp2f1_examples() {
        let s = hyp2f1_series("t", &g(0, 1), &g(3, 7), &g(2, 5), &g(1, 1), 5).unwrap();
        assert!(s.is_exact());
        assert_eq!(s.coeff(0).unwrap(), g(1, 1));
        assert_eq!(s.coeff(3).unwrap(), g(0, 1));
        let b = g(5, 3);
        let c = g(7, 2);
        let s = hyp2f1_series("t", &g(-1, 1), &b, &c, &g(1, 1), 5).unwrap();
        assert_eq!(s.coeff(1).unwrap(), -(b.try_div(&c).unwrap()));
        assert_eq!(s.coeff(2).unwrap(), g(0, 1));
        // terminates at degree j - m1 even though c = -2j
        let (j, m1) = (3, -1);
        let s = hyp2f1_series("t", &g(-j + m1, 1), &g(1, 3), &g(-2 * j, 1), &g(1, 1), 10).unwrap();
        assert!(s.is_exact());
        assert!(s.coeff((j - m1) as i64).unwrap() != g(0, 1));
        assert_eq!(s.coeff((j - m1 + 1) as i64).unwrap(), g(0, 1));
        assert!(hyp2f1_series("t", &g(-5, 1), &g(1, 3), &g(-2, 1), &g(1, 1), 10).is_err());
    }

    #[test]
    fn constant_terms() {
        let s = LSeries1::new("t", -1, vec![g(1, 1), g(3, 1), g(1, 1)], None);
        assert_eq!(constant_term_1(&s).unwrap(), g(3, 1));
        let mut two = LSeries2::new();
        two.push(g(1, 1), 0, 0, vec![], vec![]);
        assert_eq!(constant_term_2(&two).unwrap(), g(1, 1));
    }

    #[test]
    fn truncation_is_tracked() {
        let a = binom_series("t", &g(1, 2), 1, 3);
        let b = LSeries1::monomial("t", -2, g(1, 1));
        let c = a * b;
        assert_eq!(c.trunc_order(), Some(1));
        assert!(c.coeff(1).is_ok());
        assert!(matches!(c.coeff(2), Err(MathError::Truncation { .. })));
    }

    #[test]
    fn inverse_round_trip() {
        let a = binom_series("t", &g(3, 2), -1, 8).shift(2);
        let inv = a.inverse().unwrap();
        let one = a * inv;
        assert_eq!(one.coeff(0).unwrap(), g(1, 1));
        for k in 1..=8 {
            assert_eq!(one.coeff(k).unwrap(), g(0, 1));
        }
    }

    #[test]
    fn removable_singularity_limit() {
        // (x^2 - 1)/(x - 1) at x = 1
        let v = regular_value::<Gauss>("test", |s| {
            let x = LSeries1::one() + s.clone();
            let num = x.clone() * x.clone() - LSeries1::one();
            let den = x - LSeries1::one();
            num.try_div(&den)
        })
        .unwrap();
        assert_eq!(v, g(2, 1));
        let pole = regular_value::<Gauss>("test", |s| LSeries1::one().try_div(s));
        assert!(pole.unwrap_err().is_pole());
    }

    #[test]
    fn nist_partial_sum_small() {
        assert!(partial_sum_check(&[g(1, 3)], &[g(2, 5)], &g(3, 4), 0).unwrap());
        let a = [g(1, 3), g(-2, 5), g(7, 4)];
        let b = [g(3, 7), g(5, 3)];
        assert!(partial_sum_check(&a, &b, &g(2, 9), 4).unwrap());
    }
}
