//! The Harish-Chandra module of the minimal principal series: K-types,
//! the Wigner basis, and the left action of `sp(4,ℝ)_ℂ` on it.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{MathError, Result};
use crate::exact::{rat, ExactScalar, Field, FromExact, Gauss, HalfInt, Ring};
use crate::sp4::{u2_generators, v_beta, BetaLabel, GMat, PosRoot, UWord};
use crate::wigner::{clebsch_gordan_j1, dl_gamma, CompactGen, WignerIndex};

/// Overall sign of the noncompact part of the left action.
pub const DL_P_SIGN: i64 = 1;

/// `ρ` on `(H1, H2)`.
pub const RHO: (i64, i64) = (2, 1);

pub type BasisIndex = WignerIndex;

/// `2j ≡ 2n ≡ δ1+δ2 (mod 2)`.
pub fn k_condition(delta: (u8, u8), j: HalfInt, n: HalfInt) -> bool {
    let d = (delta.0 + delta.1) as i64;
    (j.twice() - d).rem_euclid(2) == 0 && (n.twice() - d).rem_euclid(2) == 0
}

/// `n - m2 ≡ δ1` and `n + m2 ≡ δ2 (mod 2)`.
pub fn m_condition(delta: (u8, u8), n: HalfInt, m2: HalfInt) -> bool {
    let ok = |x: HalfInt, d: u8| x.is_integer() && (x.expect_int() - d as i64).rem_euclid(2) == 0;
    ok(n - m2, delta.0) && ok(n + m2, delta.1)
}

pub fn m_set(delta: (u8, u8), j: HalfInt, n: HalfInt) -> Vec<HalfInt> {
    if !k_condition(delta, j, n) {
        return Vec::new();
    }
    HalfInt::steps(-j, j).filter(|&m| m_condition(delta, n, m)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KType {
    pub j: HalfInt,
    pub n: HalfInt,
    pub m_set: Vec<HalfInt>,
}

impl KType {
    pub fn multiplicity(&self) -> usize {
        self.m_set.len()
    }
}

/// K-types with `j ≤ j_max` and `|n| ≤ n_max` occurring in the principal series for `δ`.
pub fn ktypes(delta: (u8, u8), j_max: HalfInt, n_max: HalfInt) -> Vec<KType> {
    let mut out = Vec::new();
    for j in HalfInt::half_steps(HalfInt::ZERO, j_max) {
        for n in HalfInt::half_steps(-n_max, n_max) {
            let m = m_set(delta, j, n);
            if !m.is_empty() {
                out.push(KType { j, n, m_set: m });
            }
        }
    }
    out
}

pub fn is_admissible(delta: (u8, u8), v: &WignerIndex) -> bool {
    k_condition(delta, v.j(), v.n()) && m_condition(delta, v.n(), v.m2())
}

/// Every basis vector of the K-types `j ≤ j_max`, `|n| ≤ n_max`.
pub fn basis(delta: (u8, u8), j_max: HalfInt, n_max: HalfInt) -> Vec<WignerIndex> {
    let mut out = Vec::new();
    for kt in ktypes(delta, j_max, n_max) {
        for m1 in HalfInt::steps(-kt.j, kt.j) {
            for &m2 in &kt.m_set {
                out.push(WignerIndex::new(kt.j, kt.n, m1, m2).expect("admissible index"));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// linear combinations

#[derive(Clone, Debug, PartialEq)]
pub struct LinComb<C: Ring> {
    terms: BTreeMap<WignerIndex, C>,
}

impl<C: Ring> Default for LinComb<C> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<C: Ring> LinComb<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(v: WignerIndex) -> Self {
        let mut out = Self::new();
        out.add_term(v, C::one());
        out
    }

    pub fn add_term(&mut self, v: WignerIndex, c: C) {
        let e = self.terms.entry(v).or_insert_with(C::zero);
        *e = std::mem::replace(e, C::zero()) + c;
        if e.is_zero() {
            self.terms.remove(&v);
        }
    }

    pub fn add_scaled(&mut self, o: &LinComb<C>, c: &C) {
        for (k, v) in &o.terms {
            self.add_term(*k, c.clone() * v.clone());
        }
    }

    pub fn scaled(&self, c: &C) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, o: &LinComb<C>) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &-C::one());
        out
    }

    pub fn get(&self, v: &WignerIndex) -> C {
        self.terms.get(v).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WignerIndex, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies a linear map defined on basis vectors.
    pub fn apply(&self, f: impl Fn(&WignerIndex) -> LinComb<C>) -> Self {
        let mut out = Self::new();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// `Some(c)` when `self = c·v`.
    pub fn as_multiple_of(&self, v: &WignerIndex) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(v).cloned(),
            _ => None,
        }
    }
}

impl LinComb<Gauss> {
    pub fn to_exact<C: FromExact>(&self) -> LinComb<C> {
        let mut out = LinComb::new();
        for (k, v) in &self.terms {
            out.add_term(*k, C::from_exact(&ExactScalar::from_gauss(v.clone())));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// noncompact roots

/// A noncompact root with `m_β = -iβ(U3)` and `n_β = -iβ(U0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NoncompactLabel {
    pub beta: BetaLabel,
    pub m_beta: i64,
    pub n_beta: i64,
}

impl NoncompactLabel {
    pub fn new(beta: BetaLabel) -> Result<Self> {
        if !beta.is_noncompact() {
            return Err(MathError::OutOfRange(format!("{beta} is compact")));
        }
        let s = beta.sign();
        let m = match beta.root {
            PosRoot::Long112 => s,
            PosRoot::Long2 => -s,
            _ => 0,
        };
        Ok(NoncompactLabel { beta, m_beta: m, n_beta: s })
    }

    pub fn all() -> Vec<NoncompactLabel> {
        BetaLabel::noncompact().into_iter().map(|b| NoncompactLabel::new(b).unwrap()).collect()
    }
}

/// Which transcription of the `κ` coefficient tables to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaTables {
    /// Coefficients rederived from `dl(u) = dr(-Ad(k⁻¹)u)`; `Ω2` acts by `γ'(Ω2)(λ)`.
    Corrected,
    /// The tables as printed; they break the Casimir identity.
    Published,
}

fn kappa<C: Ring>(tables: KappaTables, positive: bool, j0: i64, eps: i64, w: &WignerIndex, lam: &(C, C)) -> C {
    let j = C::from_half(w.j());
    let n = C::from_half(w.n());
    let m2 = C::from_half(w.m2());
    let r1 = lam.0.clone() + C::from_int(RHO.0);
    let r2 = lam.1.clone() + C::from_int(RHO.1);
    let two = C::from_int(2);
    let tj = two.clone() * j;
    match (tables, positive, j0, eps) {
        (KappaTables::Corrected, true, -1, -1) => m2 - n - r2,
        (KappaTables::Corrected, true, -1, 1) => two + tj + m2 - n - r1,
        (KappaTables::Corrected, true, 0, -1) => m2 - n - r2,
        (KappaTables::Corrected, true, 0, 1) => -two - m2 + n + r1,
        (KappaTables::Corrected, true, 1, -1) => m2 - n - r2,
        (KappaTables::Corrected, true, _, _) => -tj + m2 - n - r1,
        (KappaTables::Corrected, false, -1, -1) => two + tj - m2 + n - r1,
        (KappaTables::Corrected, false, -1, 1) => -m2 + n - r2,
        (KappaTables::Corrected, false, 0, -1) => two - m2 + n - r1,
        (KappaTables::Corrected, false, 0, 1) => m2 - n + r2,
        (KappaTables::Corrected, false, 1, -1) => -tj - m2 + n - r1,
        (KappaTables::Corrected, false, _, _) => -m2 + n - r2,
        (KappaTables::Published, true, -1, -1) => two + tj - m2 - n - r2,
        (KappaTables::Published, true, -1, 1) => -n - m2 - r1,
        (KappaTables::Published, true, 0, -1) => two - n - m2 - r2,
        (KappaTables::Published, true, 0, 1) => n + m2 + r1,
        (KappaTables::Published, true, 1, -1) => -tj - m2 - n - r2,
        (KappaTables::Published, true, _, _) => -n - m2 - r1,
        (KappaTables::Published, false, -1, -1) => n + m2 - r1,
        (KappaTables::Published, false, -1, 1) => two + tj + m2 + n - r2,
        (KappaTables::Published, false, 0, -1) => n + m2 - r1,
        (KappaTables::Published, false, 0, 1) => -two - n - m2 + r2,
        (KappaTables::Published, false, 1, -1) => n + m2 - r1,
        (KappaTables::Published, false, _, _) => -tj + m2 + n - r2,
    }
}

/// `C_{j+j0}` squared.
fn c_sq(j: HalfInt, j0: i64) -> BigRational {
    let j = j.to_rational();
    let one = rat(1, 1);
    let two = rat(2, 1);
    let d = match j0 {
        -1 => &j * (&two * &j + &one),
        0 => &j * (&j + &one),
        _ => (&j + &one) * (&two * &j + &one),
    };
    d.recip()
}

/// `q_{j0,ε}` squared.
fn q_sq(j: HalfInt, m2: HalfInt, j0: i64, eps: i64) -> BigRational {
    let (a, b) = (j.to_rational(), m2.to_rational());
    let f = |x: BigRational, y: BigRational| x * y;
    let r = |k: i64| rat(k, 1);
    match (j0, eps) {
        (-1, -1) => f(&a + &b - r(1), &a + &b),
        (-1, _) => f(&a - &b - r(1), &a - &b),
        (0, -1) => f(&a + &b, &a - &b + r(1)),
        (0, _) => f(&a - &b, &a + &b + r(1)),
        (1, -1) => f(&a - &b + r(1), &a - &b + r(2)),
        _ => f(&a + &b + r(1), &a + &b + r(2)),
    }
}

/// `dl(u_β) W^{(j,n)}_{m1,m2}`.
pub fn dl_p_action<C: FromExact>(
    label: &NoncompactLabel,
    v: &WignerIndex,
    lambda: &(C, C),
    tables: KappaTables,
) -> LinComb<C> {
    let mut out = LinComb::new();
    let sgn = label.n_beta;
    let half_i = ExactScalar::i().scale_gauss(&Gauss::real(rat(DL_P_SIGN, 2)));
    for j0 in -1..=1 {
        let big_j = v.j() + HalfInt::int(j0);
        if big_j < HalfInt::ZERO {
            continue;
        }
        let cg = match clebsch_gordan_j1(v.j(), v.m1(), label.m_beta, j0) {
            Ok(c) if !c.is_zero() => c,
            _ => continue,
        };
        for eps in [-1, 1] {
            let q2 = q_sq(v.j(), v.m2(), j0, eps);
            if q2 == rat(0, 1) {
                continue;
            }
            let target = WignerIndex::new(
                big_j,
                v.n() + HalfInt::int(sgn),
                v.m1() + HalfInt::int(label.m_beta),
                v.m2() + HalfInt::int(eps),
            )
            .unwrap_or_else(|_| panic!("nonzero coefficient on an out-of-range target from {v}"));
            let radical = half_i.clone()
                * cg.clone()
                * ExactScalar::sqrt_rational(&c_sq(v.j(), j0))
                * ExactScalar::sqrt_rational(&q2);
            let k = kappa(tables, label.beta.positive, j0, eps, v, lambda);
            out.add_term(target, C::from_exact(&radical) * k);
        }
    }
    out
}

/// `dr(u_β)` on a Wigner function in the principal series with parameter `λ`.
pub fn dr_p_action<C: FromExact>(label: &NoncompactLabel, v: &WignerIndex, lambda: &(C, C)) -> LinComb<C> {
    let s = label.n_beta;
    let (n, m2) = (C::from_half(v.n()), C::from_half(v.m2()));
    let inv_sqrt2 = C::from_exact(&ExactScalar::sqrt_rational(&rat(1, 2)));
    let i = C::imag_unit();
    let sc = C::from_int(s);
    let mut out = LinComb::new();
    match label.beta.root {
        PosRoot::Long112 => {
            let c = -sc.clone() * n - sc * m2 - lambda.0.clone() - C::from_int(RHO.0);
            out.add_term(*v, i * c * inv_sqrt2);
        }
        PosRoot::Long2 => {
            let c = -sc.clone() * n + sc * m2 - lambda.1.clone() - C::from_int(RHO.1);
            out.add_term(*v, i * c * inv_sqrt2);
        }
        _ => {
            let t = HalfInt::int(-s);
            let val = (v.j() + v.m2() * -s).to_rational() * (v.j() - v.m2() * -s + HalfInt::ONE).to_rational();
            if val > rat(0, 1) {
                let target = v.with_m(v.m1(), v.m2() - t).expect("ladder target in range");
                let c = -(ExactScalar::i() * ExactScalar::sqrt_rational(&val));
                out.add_term(target, C::from_exact(&c));
            }
        }
    }
    out
}

/// `dl(U_i)` through `U_i ↔ γ_i`.
pub fn dl_k_action<C: FromExact>(i: usize, v: &WignerIndex) -> LinComb<C> {
    let lift = |terms: Vec<(WignerIndex, ExactScalar)>, c: ExactScalar| {
        let mut out = LinComb::new();
        for (k, x) in terms {
            out.add_term(k, C::from_exact(&(x * c.clone())));
        }
        out
    };
    let half = ExactScalar::from_rational(rat(1, 2));
    let mi_half = ExactScalar::i().scale_gauss(&Gauss::real(rat(-1, 2)));
    match i {
        0 => lift(dl_gamma(CompactGen::Gamma0, v), ExactScalar::one()),
        3 => lift(dl_gamma(CompactGen::Gamma3, v), ExactScalar::one()),
        // γ1 = (L+ + L-)/2, γ2 = (L+ - L-)/(2i)
        1 => {
            let mut out = lift(dl_gamma(CompactGen::PlusLadder, v), half.clone());
            out.add_scaled(&lift(dl_gamma(CompactGen::MinusLadder, v), half), &C::one());
            out
        }
        2 => {
            let mut out = lift(dl_gamma(CompactGen::PlusLadder, v), mi_half.clone());
            out.add_scaled(&lift(dl_gamma(CompactGen::MinusLadder, v), -mi_half), &C::one());
            out
        }
        _ => panic!("U{i} is not a compact generator"),
    }
}

// ---------------------------------------------------------------------------
// arbitrary algebra elements

/// `{U0..U3, v_β}`, a basis of the complexified algebra.
fn element_basis() -> (Vec<GMat<Gauss>>, Vec<NoncompactLabel>) {
    let labels = NoncompactLabel::all();
    let mut b: Vec<GMat<Gauss>> = u2_generators::<Gauss>().to_vec();
    b.extend(labels.iter().map(|l| v_beta::<Gauss>(l.beta)));
    (b, labels)
}

/// Exact coordinates of `x` in `basis`, by Gaussian elimination over `ℚ(i)`.
pub fn decompose(basis: &[GMat<Gauss>], x: &GMat<Gauss>) -> Result<Vec<Gauss>> {
    let nb = basis.len();
    let mut rows: Vec<Vec<Gauss>> = (0..16)
        .map(|e| {
            let (r, c) = (e / 4, e % 4);
            let mut row: Vec<Gauss> = basis.iter().map(|b| b.get(r, c).clone()).collect();
            row.push(x.get(r, c).clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nb {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].try_inv()?;
        rows[r] = rows[r].iter().map(|v| v.clone() * inv.clone()).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot_row = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(pivot_row) {
                    *a = a.clone() - f.clone() * b;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[nb].is_zero()) {
        return Err(MathError::Decomposition("element outside the span of the handled generators".into()));
    }
    let mut out = vec![Gauss::zero(); nb];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = rows[i][nb].clone();
    }
    Ok(out)
}

/// `dl(X)` for `X` in the complexified algebra.
pub fn dl_element<C: FromExact>(
    x: &GMat<Gauss>,
    v: &LinComb<C>,
    lambda: &(C, C),
    tables: KappaTables,
) -> Result<LinComb<C>> {
    DlMemo::new(lambda.clone(), tables).apply(x, v)
}

/// `dl` with the action of each basis element on each Wigner function cached,
/// for repeated application at a fixed `λ`.
pub struct DlMemo<C: FromExact> {
    lambda: (C, C),
    tables: KappaTables,
    basis: Vec<GMat<Gauss>>,
    labels: Vec<NoncompactLabel>,
    cols: HashMap<(usize, WignerIndex), LinComb<C>>,
    coords: Vec<(GMat<Gauss>, Vec<Gauss>)>,
}

impl<C: FromExact> DlMemo<C> {
    pub fn new(lambda: (C, C), tables: KappaTables) -> Self {
        let (basis, labels) = element_basis();
        DlMemo { lambda, tables, basis, labels, cols: HashMap::new(), coords: Vec::new() }
    }

    fn column(&mut self, i: usize, w: WignerIndex) -> &LinComb<C> {
        let (lambda, tables, labels) = (&self.lambda, self.tables, &self.labels);
        self.cols.entry((i, w)).or_insert_with(|| {
            if i < 4 {
                return dl_k_action(i, &w);
            }
            let l = &labels[i - 4];
            let col = dl_p_action(l, &w, lambda, tables);
            match l.beta.root {
                PosRoot::Short12 => col,
                // v_β = u_β/(√2 i) for the long roots
                _ => col.scaled(&C::from_exact(
                    &(ExactScalar::i() * ExactScalar::sqrt_rational(&rat(2, 1))).inv().unwrap(),
                )),
            }
        })
    }

    pub fn apply(&mut self, x: &GMat<Gauss>, v: &LinComb<C>) -> Result<LinComb<C>> {
        let coords = match self.coords.iter().find(|(m, _)| m == x) {
            Some((_, c)) => c.clone(),
            None => {
                let c = decompose(&self.basis, x)?;
                if self.coords.len() < 64 {
                    self.coords.push((x.clone(), c.clone()));
                }
                c
            }
        };
        let mut out = LinComb::new();
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = C::from_exact(&ExactScalar::from_gauss(c.clone()));
            for (w, a) in v.iter() {
                let f = c.clone() * a.clone();
                out.add_scaled(self.column(i, *w), &f);
            }
        }
        Ok(out)
    }
}

/// `dl(X1)dl(X2)…dl(Xk)v`.
pub fn dl_word<C: FromExact>(
    word: &[GMat<Gauss>],
    v: &LinComb<C>,
    lambda: &(C, C),
    tables: KappaTables,
) -> Result<LinComb<C>> {
    DlMemo::new(lambda.clone(), tables).word(word, v)
}

pub fn dl_uword<C: FromExact>(w: &UWord, v: &LinComb<C>, lambda: &(C, C), tables: KappaTables) -> Result<LinComb<C>> {
    DlMemo::new(lambda.clone(), tables).uword(w, v)
}

impl<C: FromExact> DlMemo<C> {
    pub fn word(&mut self, word: &[GMat<Gauss>], v: &LinComb<C>) -> Result<LinComb<C>> {
        let mut cur = v.clone();
        for x in word.iter().rev() {
            cur = self.apply(x, &cur)?;
        }
        Ok(cur)
    }

    pub fn uword(&mut self, w: &UWord, v: &LinComb<C>) -> Result<LinComb<C>> {
        let mut out = LinComb::new();
        for (c, word) in w {
            out.add_scaled(&self.word(word, v)?, &C::from_rational(c));
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// export

#[derive(Clone, Debug, Serialize)]
pub struct ActionEntry {
    pub from: WignerIndex,
    pub to: WignerIndex,
    pub coeff: String,
}

/// Matrix of `dl(u_β)` on the K-types with `j ≤ j_max`, `|n| ≤ n_max`.
pub fn action_entries<C: FromExact + std::fmt::Display>(
    label: &NoncompactLabel,
    delta: (u8, u8),
    j_max: HalfInt,
    n_max: HalfInt,
    lambda: &(C, C),
) -> Vec<ActionEntry> {
    let mut out = Vec::new();
    for v in basis(delta, j_max, n_max) {
        for (t, c) in dl_p_action(label, &v, lambda, KappaTables::Corrected).iter() {
            out.push(ActionEntry { from: v, to: *t, coeff: c.to_string() });
        }
    }
    out
}
