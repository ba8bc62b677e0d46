//! U(2) kit: Euler angles, Wigner D-functions, Jacobi polynomials,
//! Clebsch–Gordan coefficients for `V^j ⊗ V^1`, and the infinitesimal
//! left/right actions of `γ0..γ3` on the Wigner basis.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{MathError, Result};
pub use crate::exact::Scalar;
use crate::exact::{factorial, pochhammer, rat, ExactScalar, Field, Gauss, HalfInt, Ring};
use crate::laurent::binom_series;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    /// `k * π/2`.
    Quarter(i64),
    Float(f64),
}

impl Angle {
    pub fn to_f64(self) -> f64 {
        match self {
            Angle::Quarter(k) => k as f64 * PI / 2.0,
            Angle::Float(x) => x,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerAngles {
    pub zeta: Angle,
    pub psi: Angle,
    pub theta: Angle,
    pub phi: Angle,
}

impl EulerAngles {
    pub fn quarter(zeta: i64, psi: i64, theta: i64, phi: i64) -> Self {
        EulerAngles {
            zeta: Angle::Quarter(zeta),
            psi: Angle::Quarter(psi),
            theta: Angle::Quarter(theta),
            phi: Angle::Quarter(phi),
        }
    }

    pub fn float(zeta: f64, psi: f64, theta: f64, phi: f64) -> Self {
        EulerAngles {
            zeta: Angle::Float(zeta),
            psi: Angle::Float(psi),
            theta: Angle::Float(theta),
            phi: Angle::Float(phi),
        }
    }

    pub fn quarters(&self) -> Option<[i64; 4]> {
        match (self.zeta, self.psi, self.theta, self.phi) {
            (Angle::Quarter(a), Angle::Quarter(b), Angle::Quarter(c), Angle::Quarter(d)) => Some([a, b, c, d]),
            _ => None,
        }
    }

    /// `e^{-ζγ0} e^{-ψγ3} e^{-θγ2} e^{-φγ3}` as a 2×2 matrix.
    pub fn u2_matrix(&self) -> [[Complex64; 2]; 2] {
        let (z, ps, th, ph) = (self.zeta.to_f64(), self.psi.to_f64(), self.theta.to_f64(), self.phi.to_f64());
        let e = |x: f64| Complex64::from_polar(1.0, 0.5 * x);
        let (c, s) = ((th / 2.0).cos(), (th / 2.0).sin());
        [
            [e(-z - ph - ps) * c, -e(-z + ph - ps) * s],
            [e(-z - ph + ps) * s, e(-z + ph + ps) * c],
        ]
    }

    /// Recovers angles from a generic U(2) matrix (both `θ/2` sine and cosine nonzero).
    pub fn from_u2_matrix(g: &[[Complex64; 2]; 2]) -> Self {
        let a = g[0][0].arg();
        let b = g[1][1].arg();
        let c = g[1][0].arg();
        let th = 2.0 * g[1][0].norm().atan2(g[0][0].norm());
        EulerAngles::float(-(a + b), c - a, th, b - c)
    }
}

pub fn mat2_mul(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

// ---------------------------------------------------------------------------
// indices

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[HalfInt; 4]", into = "[HalfInt; 4]")]
pub struct WignerIndex {
    j: HalfInt,
    n: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
}

impl WignerIndex {
    pub fn new(j: HalfInt, n: HalfInt, m1: HalfInt, m2: HalfInt) -> Result<Self> {
        let ok = j >= HalfInt::ZERO
            && m1.abs() <= j
            && m2.abs() <= j
            && (j - m1).is_integer()
            && (j - m2).is_integer()
            && (j - n).is_integer();
        if !ok {
            return Err(MathError::OutOfRange(format!("invalid Wigner index ({j}, {n}, {m1}, {m2})")));
        }
        Ok(WignerIndex { j, n, m1, m2 })
    }

    /// Constructor from doubled values, convenient in tests and examples.
    pub fn from_twice(j: i64, n: i64, m1: i64, m2: i64) -> Result<Self> {
        Self::new(HalfInt::from_twice(j), HalfInt::from_twice(n), HalfInt::from_twice(m1), HalfInt::from_twice(m2))
    }

    pub fn ints(j: i64, n: i64, m1: i64, m2: i64) -> Result<Self> {
        Self::new(j.into(), n.into(), m1.into(), m2.into())
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }
    pub fn n(&self) -> HalfInt {
        self.n
    }
    pub fn m1(&self) -> HalfInt {
        self.m1
    }
    pub fn m2(&self) -> HalfInt {
        self.m2
    }

    /// Same `(j, n)` with new weights, if still in range.
    pub fn with_m(&self, m1: HalfInt, m2: HalfInt) -> Option<Self> {
        Self::new(self.j, self.n, m1, m2).ok()
    }
}

impl TryFrom<[HalfInt; 4]> for WignerIndex {
    type Error = MathError;
    fn try_from(v: [HalfInt; 4]) -> Result<Self> {
        WignerIndex::new(v[0], v[1], v[2], v[3])
    }
}

impl From<WignerIndex> for [HalfInt; 4] {
    fn from(w: WignerIndex) -> Self {
        [w.j, w.n, w.m1, w.m2]
    }
}

impl fmt::Debug for WignerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({},{};{},{})", self.j, self.n, self.m1, self.m2)
    }
}

impl fmt::Display for WignerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `c^j_m = sqrt((j+m)!(j-m)!)`.
pub fn c_factor(j: HalfInt, m: HalfInt) -> ExactScalar {
    let a = factorial((j + m).expect_int() as u64);
    let b = factorial((j - m).expect_int() as u64);
    ExactScalar::sqrt_rational(&BigRational::from_integer(a * b))
}

fn inv_factorial(n: i64) -> BigRational {
    BigRational::new(BigInt::one(), factorial(n as u64))
}

// ---------------------------------------------------------------------------
// little d

/// The trigonometric sum for `d^j_{m1,m2}` with given `cos(θ/2)`, `sin(θ/2)`.
pub fn little_d_with<R: Ring>(j: HalfInt, m1: HalfInt, m2: HalfInt, cos_half: &R, sin_half: &R) -> R {
    let lo = (m1 - m2).expect_int().max(0);
    let hi = (j - m2).expect_int().min((j + m1).expect_int());
    let mut acc = R::zero();
    for p in lo..=hi {
        let sign = if ((m2 - m1).expect_int() + p).rem_euclid(2) == 0 { 1 } else { -1 };
        let den = inv_factorial((j + m1).expect_int() - p)
            * inv_factorial(p)
            * inv_factorial((m2 - m1).expect_int() + p)
            * inv_factorial((j - m2).expect_int() - p);
        let es = ((m2 - m1).expect_int() + 2 * p) as u64;
        let ec = ((j * 2 + m1 - m2).expect_int() - 2 * p) as u64;
        let term = sin_half.powu(es) * cos_half.powu(ec);
        acc = acc + term.scale(&(den * BigRational::from_integer(sign.into())));
    }
    acc
}

/// `(cos, sin)` of `kπ/4` as signs, plus whether a factor `1/√2` applies to each.
fn eighth_turn(k: i64) -> (i64, i64, bool) {
    match k.rem_euclid(8) {
        0 => (1, 0, false),
        1 => (1, 1, true),
        2 => (0, 1, false),
        3 => (-1, 1, true),
        4 => (-1, 0, false),
        5 => (-1, -1, true),
        6 => (0, -1, false),
        _ => (1, -1, true),
    }
}

/// `(1/√2)^e` for integer `e`.
fn inv_sqrt2_pow(e: i64) -> ExactScalar {
    let h = ExactScalar::sqrt_rational(&rat(1, 2));
    if e >= 0 {
        h.pow(e as u32)
    } else {
        ExactScalar::sqrt_rational(&rat(2, 1)).pow((-e) as u32)
    }
}

/// `e^{iπT/4}`.
fn eighth_root_of_unity(t: i64) -> ExactScalar {
    let t = t.rem_euclid(8);
    if t % 2 == 0 {
        ExactScalar::i_pow(t / 2)
    } else {
        let w = ExactScalar::new(Gauss::new(rat(1, 2), rat(1, 2)), 2, 0);
        w * ExactScalar::i_pow((t - 1) / 2)
    }
}

pub fn little_d_exact(j: HalfInt, m1: HalfInt, m2: HalfInt, theta_quarters: i64) -> ExactScalar {
    let (c, s, half) = eighth_turn(theta_quarters);
    let v = little_d_with(j, m1, m2, &Gauss::from_int(c), &Gauss::from_int(s));
    let base = ExactScalar::from_gauss(v);
    if half {
        base * inv_sqrt2_pow(j.twice())
    } else {
        base
    }
}

pub fn little_d_f64(j: HalfInt, m1: HalfInt, m2: HalfInt, theta: f64) -> f64 {
    let v = little_d_with(
        j,
        m1,
        m2,
        &Complex64::new((theta / 2.0).cos(), 0.0),
        &Complex64::new((theta / 2.0).sin(), 0.0),
    );
    v.re
}

pub fn little_d(j: HalfInt, m1: HalfInt, m2: HalfInt, theta: Angle) -> Scalar {
    match theta {
        Angle::Quarter(k) => Scalar::Exact(little_d_exact(j, m1, m2, k)),
        Angle::Float(x) => Scalar::Float(Complex64::new(little_d_f64(j, m1, m2, x), 0.0)),
    }
}

// ---------------------------------------------------------------------------
// D-functions

pub fn wigner_d_exact(idx: &WignerIndex, quarters: [i64; 4]) -> ExactScalar {
    let [kz, kp, kt, kf] = quarters;
    let d = little_d_exact(idx.j, idx.m1, idx.m2, kt);
    if d.is_zero() {
        return ExactScalar::zero();
    }
    let t = idx.n.twice() * kz + idx.m1.twice() * kp + idx.m2.twice() * kf;
    c_factor(idx.j, idx.m1) * c_factor(idx.j, idx.m2) * eighth_root_of_unity(t) * d
}

pub fn wigner_d_f64(idx: &WignerIndex, a: &EulerAngles) -> Complex64 {
    let (z, ps, th, ph) = (a.zeta.to_f64(), a.psi.to_f64(), a.theta.to_f64(), a.phi.to_f64());
    let c = c_factor(idx.j, idx.m1).to_complex() * c_factor(idx.j, idx.m2).to_complex();
    let phase = Complex64::from_polar(1.0, idx.n.to_f64() * z + idx.m1.to_f64() * ps + idx.m2.to_f64() * ph);
    c * phase * little_d_f64(idx.j, idx.m1, idx.m2, th)
}

/// `W^{(j,n)}_{m1,m2}` at the given angles; exact when every angle is a quarter turn.
#[allow(non_snake_case)]
pub fn wigner_D(idx: &WignerIndex, angles: &EulerAngles) -> Scalar {
    match angles.quarters() {
        Some(q) => Scalar::Exact(wigner_d_exact(idx, q)),
        None => Scalar::Float(wigner_d_f64(idx, angles)),
    }
}

/// The full `(2j+1)×(2j+1)` matrix, rows `m1`, columns `m2` ascending.
pub fn wigner_matrix_f64(j: HalfInt, n: HalfInt, a: &EulerAngles) -> Vec<Vec<Complex64>> {
    let ms: Vec<HalfInt> = HalfInt::steps(-j, j).collect();
    ms.iter()
        .map(|&m1| {
            ms.iter()
                .map(|&m2| wigner_d_f64(&WignerIndex::new(j, n, m1, m2).unwrap(), a))
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Jacobi polynomials

/// Gamma-ratio form; degenerate Γ prefactors are rejected.
pub fn jacobi_sum<F: Field>(n: u64, alpha: &F, beta: &F, x: &F) -> Result<F> {
    let ni = n as i64;
    let a1 = alpha.clone() + F::from_int(ni + 1);
    let ab1 = alpha.clone() + beta.clone() + F::from_int(ni + 1);
    if a1.is_nonpositive_integer() || ab1.is_nonpositive_integer() {
        return Err(MathError::pole(format!(
            "Jacobi prefactor Gamma is degenerate at n={n}, alpha={alpha:?}, beta={beta:?}"
        )));
    }
    let half_xm1 = (x.clone() - F::one()).scale(&rat(1, 2));
    let mut acc = F::zero();
    for m in 0..=ni {
        // Γ(α+β+n+m+1)/Γ(α+β+n+1) and Γ(α+n+1)/Γ(α+m+1)
        let up = pochhammer(&ab1, m)?;
        let down = pochhammer(&(alpha.clone() + F::from_int(m + 1)), ni - m)?;
        let binom = BigRational::from_integer(factorial(n) / (factorial(m as u64) * factorial(n - m as u64)));
        acc = acc + (up * down * half_xm1.powu(m as u64)).scale(&binom);
    }
    Ok(acc.scale(&BigRational::new(BigInt::one(), factorial(n))))
}

/// Hypergeometric form, multiplied through so that `x = -1` and
/// `α+1 ∈ {0,-1,…}` need no special casing.
pub fn jacobi_hyp<F: Ring>(n: u64, alpha: &F, beta: &F, x: &F) -> F {
    let ni = n as i64;
    let xm = (x.clone() - F::one()).scale(&rat(1, 2));
    let xp = (x.clone() + F::one()).scale(&rat(1, 2));
    let mut acc = F::zero();
    for k in 0..=ni {
        let mut t = F::one();
        for i in 0..k {
            t = t * F::from_int(-ni + i) * (-F::from_int(ni) - beta.clone() + F::from_int(i));
        }
        for i in 0..(ni - k) {
            t = t * (alpha.clone() + F::from_int(k + 1 + i));
        }
        let w = BigRational::new(BigInt::one(), factorial(k as u64) * factorial(n));
        acc = acc + (t * xm.powu(k as u64) * xp.powu((ni - k) as u64)).scale(&w);
    }
    acc
}

/// `d^j_{m1,m2}` through the Jacobi polynomial form.
pub fn wigner_via_jacobi(idx: &WignerIndex, theta: Angle) -> Result<Scalar> {
    let (j, m1, m2) = (idx.j, idx.m1, idx.m2);
    let es = (m1 - m2).expect_int();
    let ec = (m1 + m2).expect_int();
    let deg = (j - m1).expect_int() as u64;
    let norm = inv_factorial((j + m2).expect_int()) * inv_factorial((j - m2).expect_int());
    match theta {
        Angle::Quarter(k) => {
            let (c, s, half) = eighth_turn(k);
            let (cg, sg) = (Gauss::from_int(c), Gauss::from_int(s));
            let cos_theta = if half { Gauss::zero() } else { cg.clone() * cg.clone() - sg.clone() * sg.clone() };
            let pref = sg.powi(es).map_err(|_| boundary(idx))? * cg.powi(ec).map_err(|_| boundary(idx))?;
            let p = jacobi_hyp(deg, &Gauss::from_int(es), &Gauss::from_int(ec), &cos_theta);
            let mut v = ExactScalar::from_gauss((pref * p).scale(&norm));
            if half {
                v = v * inv_sqrt2_pow(es + ec);
            }
            Ok(Scalar::Exact(v))
        }
        Angle::Float(th) => {
            let (c, s) = ((th / 2.0).cos(), (th / 2.0).sin());
            let pref = s.powi(es as i32) * c.powi(ec as i32);
            if !pref.is_finite() {
                return Err(boundary(idx));
            }
            let one = |v: f64| Complex64::new(v, 0.0);
            let p = jacobi_hyp(deg, &one(es as f64), &one(ec as f64), &one(th.cos()));
            Ok(Scalar::Float(p * pref * crate::exact::rat_to_f64(&norm)))
        }
    }
}

fn boundary(idx: &WignerIndex) -> MathError {
    MathError::pole(format!("{idx}: negative power of a vanishing sine/cosine at the boundary"))
}

/// `Σ_n P^{(α-n,β-n)}_n(x) t^n` against `(1+(x+1)t/2)^α (1+(x-1)t/2)^β` through `order`.
pub fn jacobi_genfun_check(alpha: &BigRational, beta: &BigRational, x: &BigRational, order: i64) -> Result<bool> {
    let g = |q: &BigRational| Gauss::real(q.clone());
    let (a, b, xx) = (g(alpha), g(beta), g(x));
    let half = |v: Gauss| v.scale(&rat(1, 2));
    let lhs = binom_series("t", &a, 1, order).rescale_var(&half(xx.clone() + Gauss::one()))
        * binom_series("t", &b, 1, order).rescale_var(&half(xx.clone() - Gauss::one()));
    for n in 0..=order {
        let an = a.clone() - Gauss::from_int(n);
        let bn = b.clone() - Gauss::from_int(n);
        if lhs.coeff(n)? != jacobi_hyp(n as u64, &an, &bn, &xx) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Clebsch–Gordan for V^j ⊗ V^1

/// `⟨j+j0, m1+m2 | j, m1; 1, m2⟩`.
pub fn clebsch_gordan_j1(j: HalfInt, m1: HalfInt, m2: i64, j0: i64) -> Result<ExactScalar> {
    if !(-1..=1).contains(&m2) || !(-1..=1).contains(&j0) {
        return Err(MathError::OutOfRange(format!("m2={m2}, j0={j0} must lie in {{-1,0,1}}")));
    }
    let target = j + HalfInt::int(j0);
    if target < HalfInt::ZERO || (m1 + HalfInt::int(m2)).abs() > target || m1.abs() > j {
        return Err(MathError::OutOfRange(format!(
            "<{target}, {}| {j}, {m1}; 1, {m2}> has no admissible weight",
            m1 + HalfInt::int(m2)
        )));
    }
    if j == HalfInt::ZERO && j0 == 0 {
        return Ok(ExactScalar::zero());
    }
    let jr = j.to_rational();
    let mr = m1.to_rational();
    let one = BigRational::one();
    let two = rat(2, 1);
    let (sign, val) = match (j0, m2) {
        (-1, -1) => (1, (&jr + &mr) * (&jr + &mr - &one) / (&two * &jr * (&two * &jr + &one))),
        (-1, 0) => (-1, (&jr - &mr) * (&jr + &mr) / (&jr * (&two * &jr + &one))),
        (-1, 1) => (1, (&jr - &mr) * (&jr - &mr - &one) / (&two * &jr * (&two * &jr + &one))),
        (0, -1) => (1, (&jr + &mr) * (&jr - &mr + &one) / (&two * &jr * (&jr + &one))),
        (0, 0) => {
            // m1 / sqrt(j(j+1))
            let s = if mr < BigRational::zero() { -1 } else { 1 };
            (s, &mr * &mr / (&jr * (&jr + &one)))
        }
        (0, 1) => (-1, (&jr - &mr) * (&jr + &mr + &one) / (&two * &jr * (&jr + &one))),
        (1, -1) => (1, (&jr - &mr + &one) * (&jr - &mr + &two) / ((&two * &jr + &two) * (&two * &jr + &one))),
        (1, 0) => (1, (&jr - &mr + &one) * (&jr + &mr + &one) / ((&jr + &one) * (&two * &jr + &one))),
        _ => (1, (&jr + &mr + &one) * (&jr + &mr + &two) / ((&two * &jr + &two) * (&two * &jr + &one))),
    };
    Ok(ExactScalar::signed_sqrt(sign, &val))
}

/// `W^{(j1,n1)}_{a,b} · W^{(1,n2)}_{c,d}` as a sum over `J ∈ {j1-1, j1, j1+1}`.
pub fn product_expand(w1: &WignerIndex, w2: &WignerIndex) -> Result<Vec<(WignerIndex, ExactScalar)>> {
    if w2.j != HalfInt::ONE {
        return Err(MathError::OutOfRange("second factor must have j = 1".into()));
    }
    let (a, b) = (w2.m1.expect_int(), w2.m2.expect_int());
    let mut out = Vec::new();
    for j0 in -1..=1 {
        let big_j = w1.j + HalfInt::int(j0);
        let (m1, m2) = (w1.m1 + w2.m1, w1.m2 + w2.m2);
        if big_j < HalfInt::ZERO || m1.abs() > big_j || m2.abs() > big_j {
            continue;
        }
        let c = clebsch_gordan_j1(w1.j, w1.m1, a, j0)? * clebsch_gordan_j1(w1.j, w1.m2, b, j0)?;
        if !c.is_zero() {
            out.push((WignerIndex::new(big_j, w1.n + w2.n, m1, m2)?, c));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// infinitesimal actions

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompactGen {
    Gamma0,
    Gamma3,
    /// `γ1 + iγ2`
    PlusLadder,
    /// `γ1 - iγ2`
    MinusLadder,
}

fn ladder_coeff(j: HalfInt, a: HalfInt, b: HalfInt) -> BigRational {
    (j + a).to_rational() * (j + b).to_rational()
}

pub fn dr_gamma(g: CompactGen, w: &WignerIndex) -> Vec<(WignerIndex, ExactScalar)> {
    let i = ExactScalar::i();
    let (j, m2) = (w.j, w.m2);
    match g {
        CompactGen::Gamma0 => vec![(*w, i.scale_gauss(&Gauss::from_half(-w.n)))],
        CompactGen::Gamma3 => vec![(*w, i.scale_gauss(&Gauss::from_half(-m2)))],
        CompactGen::PlusLadder | CompactGen::MinusLadder => {
            let s = if g == CompactGen::PlusLadder { 1 } else { -1 };
            // i sqrt((j ± m2)(j ∓ m2 + 1)) W_{m1, m2 ∓ 1}
            let val = ladder_coeff(j, m2 * s, HalfInt::ONE - m2 * s);
            let target = w.with_m(w.m1, m2 - HalfInt::int(s));
            match target {
                Some(t) if !val.is_zero() => vec![(t, i * ExactScalar::sqrt_rational(&val))],
                _ => vec![],
            }
        }
    }
}

pub fn dl_gamma(g: CompactGen, w: &WignerIndex) -> Vec<(WignerIndex, ExactScalar)> {
    let i = ExactScalar::i();
    let (j, m1) = (w.j, w.m1);
    match g {
        CompactGen::Gamma0 => vec![(*w, i.scale_gauss(&Gauss::from_half(w.n)))],
        CompactGen::Gamma3 => vec![(*w, i.scale_gauss(&Gauss::from_half(m1)))],
        CompactGen::PlusLadder | CompactGen::MinusLadder => {
            let s = if g == CompactGen::PlusLadder { 1 } else { -1 };
            // -i sqrt((j ∓ m1)(j ± m1 + 1)) W_{m1 ± 1, m2}
            let val = ladder_coeff(j, -(m1 * s), m1 * s + HalfInt::ONE);
            let target = w.with_m(m1 + HalfInt::int(s), w.m2);
            match target {
                Some(t) if !val.is_zero() => vec![(t, -(i * ExactScalar::sqrt_rational(&val)))],
                _ => vec![],
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn gq(n: i64, d: i64) -> Gauss {
        Gauss::real(rat(n, d))
    }

    #[test]
    fn jacobi_examples() {
        let x = gq(3, 7);
        assert_eq!(jacobi_sum(0, &gq(2, 3), &gq(1, 5), &x).unwrap(), Gauss::one());
        assert_eq!(jacobi_sum(1, &Gauss::zero(), &Gauss::zero(), &x).unwrap(), x);
        assert_eq!(jacobi_sum(2, &Gauss::one(), &Gauss::one(), &Gauss::zero()).unwrap(), gq(-3, 4));
        assert_eq!(jacobi_hyp(0, &gq(2, 3), &gq(1, 5), &x), Gauss::one());
        assert_eq!(jacobi_hyp(1, &Gauss::zero(), &Gauss::zero(), &gq(1, 2)), gq(1, 2));
        assert_eq!(jacobi_hyp(3, &gq(2, 1), &gq(-1, 1), &Gauss::one()), gq(10, 1));
    }

    #[test]
    fn jacobi_hyp_at_minus_one() {
        // binom(n+β, n)(-1)^n
        let v = jacobi_hyp(3, &gq(1, 3), &gq(5, 2), &gq(-1, 1));
        let want = crate::exact::binomial(&gq(3 + 0, 1).clone(), 0) * gq(-1, 1)
            * crate::exact::binomial(&(gq(5, 2) + gq(3, 1)), 3);
        assert_eq!(v, want);
    }

    #[test]
    fn jacobi_sum_rejects_degenerate_prefactor() {
        assert!(jacobi_sum(2, &gq(-3, 1), &gq(0, 1), &gq(1, 2)).unwrap_err().is_pole());
    }

    #[test]
    fn little_d_examples() {
        for tj in 0..6 {
            let j = h(tj);
            // θ = π/2 is a quarter turn; compare to the cos^{2j}/(2j)! closed form
            let v = little_d_exact(j, j, j, 1);
            let want = crate::exact::ExactScalar::sqrt_rational(&rat(1, 2)).pow(tj as u32)
                * ExactScalar::from_rational(BigRational::new(BigInt::one(), factorial(tj as u64)));
            assert_eq!(v, want);
            for m1 in HalfInt::steps(-j, j) {
                for m2 in HalfInt::steps(-j, j) {
                    let v = little_d_exact(j, m1, m2, 0);
                    let want = if m1 == m2 {
                        ExactScalar::from_rational(
                            inv_factorial((j + m1).expect_int()) * inv_factorial((j - m1).expect_int()),
                        )
                    } else {
                        ExactScalar::zero()
                    };
                    assert_eq!(v, want);
                }
            }
        }
        assert!(little_d_exact(HalfInt::ONE, HalfInt::ZERO, HalfInt::ZERO, 1).is_zero());
    }

    #[test]
    fn wigner_identity_and_diagonal_phase() {
        let w = WignerIndex::from_twice(3, 1, 1, 1).unwrap();
        assert_eq!(wigner_d_exact(&w, [0, 0, 0, 0]), ExactScalar::one());
        let off = WignerIndex::from_twice(3, 1, 1, -1).unwrap();
        assert!(wigner_d_exact(&off, [0, 0, 0, 0]).is_zero());
        // e^{i n ζ + i m ψ}, compared in floats at generic angles
        let a = EulerAngles::float(0.7, -1.3, 0.0, 0.0);
        let v = wigner_d_f64(&w, &a);
        let want = Complex64::from_polar(1.0, 0.5 * 0.7 + 0.5 * -1.3);
        assert!((v - want).norm() < 1e-13);
    }

    #[test]
    fn exact_and_float_d_agree_on_quarter_turns() {
        for tj in 0..=6 {
            let j = h(tj);
            for m1 in HalfInt::steps(-j, j) {
                for m2 in HalfInt::steps(-j, j) {
                    let w = WignerIndex::new(j, j, m1, m2).unwrap();
                    for q in [[0, 1, 2, 3], [-1, 3, 1, 1], [1, -1, 3, 2], [0, 2, 5, -3]] {
                        let e = wigner_d_exact(&w, q).to_complex();
                        let a = EulerAngles::quarter(q[0], q[1], q[2], q[3]);
                        let f = wigner_d_f64(&w, &EulerAngles::float(
                            a.zeta.to_f64(),
                            a.psi.to_f64(),
                            a.theta.to_f64(),
                            a.phi.to_f64(),
                        ));
                        assert!((e - f).norm() < 1e-10, "{w} {q:?}: {e} vs {f}");
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_form_matches_at_boundary_angles() {
        for tj in 0..=8 {
            let j = h(tj);
            for m1 in HalfInt::steps(-j, j) {
                for m2 in HalfInt::steps(-j, j) {
                    let w = WignerIndex::new(j, j, m1, m2).unwrap();
                    for k in [0, 2] {
                        match wigner_via_jacobi(&w, Angle::Quarter(k)) {
                            Ok(v) => assert_eq!(v, Scalar::Exact(little_d_exact(j, m1, m2, k)), "{w} k={k}"),
                            Err(e) => assert!(e.is_pole()),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cg_examples() {
        let j = h(5);
        let m1 = h(3);
        let v = clebsch_gordan_j1(j, m1, 0, 0).unwrap();
        let want = ExactScalar::from_rational(m1.to_rational())
            * ExactScalar::sqrt_rational(&(j.to_rational() * (j.to_rational() + BigRational::one()))).inv().unwrap();
        assert_eq!(v, want);
        assert_eq!(
            clebsch_gordan_j1(HalfInt::ONE, HalfInt::ONE, 0, 0).unwrap(),
            ExactScalar::sqrt_rational(&rat(1, 2))
        );
        for tj in 0..8 {
            assert_eq!(clebsch_gordan_j1(h(tj), h(tj), 1, 1).unwrap(), ExactScalar::one());
        }
        assert!(clebsch_gordan_j1(HalfInt::ONE, HalfInt::ONE, 1, 0).is_err());
    }

    #[test]
    fn cg_orthonormal_columns() {
        // rows (m1, m2) with fixed total weight; columns j0
        for tj in 0..=8 {
            let j = h(tj);
            for tm in (-(tj + 2)..=(tj + 2)).step_by(2) {
                let total = h(tm);
                let rows: Vec<(HalfInt, i64)> = (-1..=1)
                    .map(|b| (total - HalfInt::int(b), b))
                    .filter(|(a, _)| a.abs() <= j)
                    .collect();
                let cg = |a: HalfInt, b: i64, j0: i64| {
                    clebsch_gordan_j1(j, a, b, j0).unwrap_or_else(|_| ExactScalar::zero())
                };
                for &(a, b) in &rows {
                    for &(c, d) in &rows {
                        let mut s = ExactScalar::zero();
                        for j0 in -1..=1 {
                            let t = cg(a, b, j0) * cg(c, d, j0);
                            s = s.try_add(&t).unwrap();
                        }
                        let want = if (a, b) == (c, d) { ExactScalar::one() } else { ExactScalar::zero() };
                        assert_eq!(s, want, "j={j} rows {a},{b} / {c},{d}");
                    }
                }
            }
        }
    }

    #[test]
    fn product_expand_examples() {
        let one = WignerIndex::ints(0, 0, 0, 0).unwrap();
        let w = WignerIndex::ints(1, 3, 1, -1).unwrap();
        assert_eq!(product_expand(&one, &w).unwrap(), vec![(w, ExactScalar::one())]);
        let a = WignerIndex::ints(1, 0, 1, 1).unwrap();
        let b = WignerIndex::ints(1, 1, 1, 1).unwrap();
        assert_eq!(
            product_expand(&a, &b).unwrap(),
            vec![(WignerIndex::ints(2, 1, 2, 2).unwrap(), ExactScalar::one())]
        );
        let a = WignerIndex::ints(1, 0, 0, 0).unwrap();
        let b = WignerIndex::ints(1, 1, 0, 0).unwrap();
        assert_eq!(product_expand(&a, &b).unwrap().len(), 2);
    }

    #[test]
    fn compact_action_examples() {
        let w = WignerIndex::from_twice(3, 1, 1, -3).unwrap();
        assert_eq!(
            dr_gamma(CompactGen::Gamma3, &w),
            vec![(w, ExactScalar::i().scale_gauss(&gq(3, 2)))]
        );
        let top = WignerIndex::from_twice(4, 0, 2, 4).unwrap();
        let j = top.j();
        assert_eq!(
            dr_gamma(CompactGen::PlusLadder, &top),
            vec![(
                WignerIndex::new(j, top.n(), top.m1(), j - HalfInt::ONE).unwrap(),
                ExactScalar::i() * ExactScalar::sqrt_rational(&(j * 2).to_rational())
            )]
        );
        let hw = WignerIndex::from_twice(4, 0, 4, 2).unwrap();
        assert!(dl_gamma(CompactGen::PlusLadder, &hw).is_empty());
    }

    #[test]
    fn genfun_examples() {
        assert!(jacobi_genfun_check(&rat(2, 1), &rat(1, 1), &rat(1, 2), 0).unwrap());
        assert!(jacobi_genfun_check(&rat(2, 1), &rat(1, 1), &rat(1, 2), 3).unwrap());
        assert!(jacobi_genfun_check(&rat(-1, 1), &rat(3, 1), &rat(0, 1), 4).unwrap());
        assert!(jacobi_genfun_check(&rat(1, 2), &rat(-7, 3), &rat(-2, 5), 6).unwrap());
    }

    fn expm2(x: &[[Complex64; 2]; 2], t: f64) -> [[Complex64; 2]; 2] {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        out[0][0] = Complex64::new(1.0, 0.0);
        out[1][1] = Complex64::new(1.0, 0.0);
        let mut term = out;
        for k in 1..30 {
            term = mat2_mul(&term, x);
            for r in term.iter_mut().flatten() {
                *r *= t / k as f64;
            }
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] += term[i][j];
                }
            }
        }
        out
    }

    fn compact_generators() -> [[[Complex64; 2]; 2]; 4] {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let z = c(0.0, 0.0);
        [
            [[c(0.0, 0.5), z], [z, c(0.0, 0.5)]],
            [[z, c(0.0, 0.5)], [c(0.0, 0.5), z]],
            [[z, c(0.5, 0.0)], [c(-0.5, 0.0), z]],
            [[c(0.0, 0.5), z], [z, c(0.0, -0.5)]],
        ]
    }

    #[test]
    fn compact_actions_match_numerical_derivatives() {
        let k = EulerAngles::float(0.3, 1.1, 0.7, -0.4).u2_matrix();
        let g = compact_generators();
        let at = |w: &WignerIndex, m: &[[Complex64; 2]; 2]| wigner_d_f64(w, &EulerAngles::from_u2_matrix(m));
        let h = 1e-5;
        for w in [WignerIndex::from_twice(3, 1, 1, -1).unwrap(), WignerIndex::from_twice(4, 2, -2, 2).unwrap()] {
            // dl(X)f(k) = d/dt f(exp(-tX)k), dr(X)f(k) = d/dt f(k exp(tX))
            let left = |x: &[[Complex64; 2]; 2]| {
                (at(&w, &mat2_mul(&expm2(x, -h), &k)) - at(&w, &mat2_mul(&expm2(x, h), &k))) / (2.0 * h)
            };
            let right = |x: &[[Complex64; 2]; 2]| {
                (at(&w, &mat2_mul(&k, &expm2(x, h))) - at(&w, &mat2_mul(&k, &expm2(x, -h)))) / (2.0 * h)
            };
            let i = Complex64::new(0.0, 1.0);
            let numeric = [
                (CompactGen::Gamma0, left(&g[0]), right(&g[0])),
                (CompactGen::Gamma3, left(&g[3]), right(&g[3])),
                (CompactGen::PlusLadder, left(&g[1]) + i * left(&g[2]), right(&g[1]) + i * right(&g[2])),
                (CompactGen::MinusLadder, left(&g[1]) - i * left(&g[2]), right(&g[1]) - i * right(&g[2])),
            ];
            let eval = |terms: Vec<(WignerIndex, ExactScalar)>| -> Complex64 {
                terms.iter().map(|(v, c)| c.to_complex() * at(v, &k)).sum()
            };
            for (gen, l, r) in numeric {
                assert!((eval(dl_gamma(gen, &w)) - l).norm() < 1e-7, "dl {gen:?} on {w}");
                assert!((eval(dr_gamma(gen, &w)) - r).norm() < 1e-7, "dr {gen:?} on {w}");
            }
        }
    }

    #[test]
    fn compact_generators_match_u2_relations() {
        let g = compact_generators();
        let br = |a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]| {
            let (p, q) = (mat2_mul(a, b), mat2_mul(b, a));
            [[p[0][0] - q[0][0], p[0][1] - q[0][1]], [p[1][0] - q[1][0], p[1][1] - q[1][1]]]
        };
        let neg = |a: &[[Complex64; 2]; 2]| [[-a[0][0], -a[0][1]], [-a[1][0], -a[1][1]]];
        assert_eq!(br(&g[1], &g[2]), neg(&g[3]));
        assert_eq!(br(&g[2], &g[3]), neg(&g[1]));
        assert_eq!(br(&g[3], &g[1]), neg(&g[2]));
    }
}
