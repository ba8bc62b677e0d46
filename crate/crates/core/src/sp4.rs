//! The defining 4×4 realization of `sp(4,ℝ)`: Chevalley basis, the `u(2)`
//! generators, Weyl reflections, Cayley transforms, the rank-one Iwasawa
//! factorization and the Harish-Chandra images of the Casimir elements.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::exact::{rat, rational_sqrt, ExactScalar, FromExact, Gauss, RadicalSum, Ring};

#[derive(Clone, PartialEq)]
pub struct GMat<R: Ring> {
    a: [[R; 4]; 4],
}

impl<R: Ring> GMat<R> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> R) -> Self {
        GMat { a: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))) }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| R::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { R::one() } else { R::zero() })
    }

    /// Matrix unit `E_{i,j}`, 1-based.
    pub fn e(i: usize, j: usize) -> Self {
        Self::from_fn(|a, b| if (a + 1, b + 1) == (i, j) { R::one() } else { R::zero() })
    }

    pub fn from_ints(rows: [[i64; 4]; 4]) -> Self {
        Self::from_fn(|i, j| R::from_int(rows[i][j]))
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.a[i][j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.a[j][i].clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_fn(|i, j| c.clone() * self.a[i][j].clone())
    }

    pub fn scale_q(&self, q: &BigRational) -> Self {
        Self::from_fn(|i, j| self.a[i][j].scale(q))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> GMat<S> {
        GMat::from_fn(|i, j| f(&self.a[i][j]))
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().flatten().all(|x| x.is_zero())
    }

    pub fn bracket(&self, o: &Self) -> Self {
        self.clone() * o.clone() - o.clone() * self.clone()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(), |acc, _| acc * self.clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = &R> {
        self.a.iter().flatten()
    }

    /// `XᵗJ + JX = 0`.
    pub fn in_lie_algebra(&self) -> bool {
        let j = symplectic_form::<R>();
        (self.transpose() * j.clone() + j * self.clone()).is_zero()
    }

    /// `gᵗJg = J`.
    pub fn is_symplectic(&self) -> bool {
        let j = symplectic_form::<R>();
        self.transpose() * j.clone() * self.clone() == j
    }

    /// Inverse of a (complex) symplectic matrix: `-J gᵗ J`.
    pub fn symplectic_inverse(&self) -> Self {
        let j = symplectic_form::<R>();
        -(j.clone() * self.transpose() * j)
    }

    /// Cartan involution on the algebra.
    pub fn theta(&self) -> Self {
        -self.transpose()
    }
}

impl GMat<Gauss> {
    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn to_complex(&self) -> GMat<Complex64> {
        self.map(|x| x.to_complex())
    }

    pub fn to_radical(&self) -> GMat<RadicalSum> {
        self.map(|x| RadicalSum::from_exact(&ExactScalar::from_gauss(x.clone())))
    }
}

impl GMat<Complex64> {
    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.entries().zip(o.entries()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl<R: Ring> Add for GMat<R> {
    type Output = GMat<R>;
    fn add(self, o: GMat<R>) -> GMat<R> {
        GMat::from_fn(|i, j| self.a[i][j].clone() + o.a[i][j].clone())
    }
}

impl<R: Ring> Sub for GMat<R> {
    type Output = GMat<R>;
    fn sub(self, o: GMat<R>) -> GMat<R> {
        GMat::from_fn(|i, j| self.a[i][j].clone() - o.a[i][j].clone())
    }
}

impl<R: Ring> Neg for GMat<R> {
    type Output = GMat<R>;
    fn neg(self) -> GMat<R> {
        GMat::from_fn(|i, j| -self.a[i][j].clone())
    }
}

impl<R: Ring> Mul for GMat<R> {
    type Output = GMat<R>;
    fn mul(self, o: GMat<R>) -> GMat<R> {
        GMat::from_fn(|i, j| {
            (0..4).fold(R::zero(), |acc, k| acc + self.a[i][k].clone() * o.a[k][j].clone())
        })
    }
}

impl<R: Ring> fmt::Debug for GMat<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.a {
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}

pub fn symplectic_form<R: Ring>() -> GMat<R> {
    GMat::from_ints([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
}

// ---------------------------------------------------------------------------
// roots

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PosRoot {
    /// `α1` (or `β1`)
    Short1,
    /// `α2` (or `β2`)
    Long2,
    /// `α1+α2` (or `β1+β2`)
    Short12,
    /// `2α1+α2` (or `2β1+β2`)
    Long112,
}

impl PosRoot {
    pub const ALL: [PosRoot; 4] = [PosRoot::Short1, PosRoot::Long2, PosRoot::Short12, PosRoot::Long112];

    /// Values on `(H1, H2)`.
    pub fn coords(self) -> (i64, i64) {
        match self {
            PosRoot::Short1 => (1, -1),
            PosRoot::Long2 => (0, 2),
            PosRoot::Short12 => (1, 1),
            PosRoot::Long112 => (2, 0),
        }
    }

    fn name(self, letter: char) -> String {
        match self {
            PosRoot::Short1 => format!("{letter}1"),
            PosRoot::Long2 => format!("{letter}2"),
            PosRoot::Short12 => format!("{letter}1+{letter}2"),
            PosRoot::Long112 => format!("2{letter}1+{letter}2"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootLabel {
    pub root: PosRoot,
    pub positive: bool,
}

impl RootLabel {
    pub const fn pos(root: PosRoot) -> Self {
        RootLabel { root, positive: true }
    }

    pub const fn neg(root: PosRoot) -> Self {
        RootLabel { root, positive: false }
    }

    pub fn negate(self) -> Self {
        RootLabel { root: self.root, positive: !self.positive }
    }

    pub fn all() -> Vec<RootLabel> {
        PosRoot::ALL.iter().flat_map(|&r| [Self::pos(r), Self::neg(r)]).collect()
    }

    pub fn coords(self) -> (i64, i64) {
        let (a, b) = self.root.coords();
        if self.positive {
            (a, b)
        } else {
            (-a, -b)
        }
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.positive { "" } else { "-" };
        write!(f, "{s}({})", self.root.name('α'))
    }
}

/// Roots in the compact picture. `β1` is compact; the other three pairs are noncompact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BetaLabel {
    pub root: PosRoot,
    pub positive: bool,
}

impl BetaLabel {
    pub const fn pos(root: PosRoot) -> Self {
        BetaLabel { root, positive: true }
    }

    pub const fn neg(root: PosRoot) -> Self {
        BetaLabel { root, positive: false }
    }

    pub fn is_noncompact(self) -> bool {
        self.root != PosRoot::Short1
    }

    pub fn noncompact() -> Vec<BetaLabel> {
        [PosRoot::Long112, PosRoot::Long2, PosRoot::Short12]
            .iter()
            .flat_map(|&r| [Self::pos(r), Self::neg(r)])
            .collect()
    }

    pub fn sign(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    /// The split root obtained through the composite Cayley transform.
    pub fn to_alpha(self) -> RootLabel {
        RootLabel { root: self.root, positive: self.positive }
    }
}

impl fmt::Display for BetaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.positive { "" } else { "-" };
        write!(f, "{s}({})", self.root.name('β'))
    }
}

pub fn h1<R: Ring>() -> GMat<R> {
    GMat::e(1, 1) - GMat::e(3, 3)
}

pub fn h2<R: Ring>() -> GMat<R> {
    GMat::e(2, 2) - GMat::e(4, 4)
}

pub fn chevalley<R: Ring>(label: RootLabel) -> GMat<R> {
    let x: GMat<R> = match label.root {
        PosRoot::Short1 => GMat::e(1, 2) - GMat::e(4, 3),
        PosRoot::Long2 => GMat::e(2, 4),
        PosRoot::Short12 => GMat::e(2, 3) + GMat::e(1, 4),
        PosRoot::Long112 => GMat::e(1, 3),
    };
    if label.positive {
        x
    } else {
        x.transpose()
    }
}

/// The coroot `[X_α, X_{-α}]`.
pub fn coroot<R: Ring>(root: PosRoot) -> GMat<R> {
    chevalley::<R>(RootLabel::pos(root)).bracket(&chevalley(RootLabel::neg(root)))
}

pub fn u2_generators<R: Ring>() -> [GMat<R>; 4] {
    let h = rat(1, 2);
    [
        GMat::from_ints([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]).scale_q(&h),
        GMat::from_ints([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]).scale_q(&h),
        GMat::from_ints([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]).scale_q(&h),
        GMat::from_ints([[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]]).scale_q(&h),
    ]
}

/// Root vectors `v_β` of the complexified algebra for noncompact `β`.
pub fn v_beta<R: Ring>(beta: BetaLabel) -> GMat<R> {
    let i = R::imag_unit();
    let s = R::from_int(beta.sign());
    let h = rat(1, 2);
    let sym = |r: PosRoot| chevalley::<R>(RootLabel::pos(r)) + chevalley(RootLabel::neg(r));
    let m = match beta.root {
        PosRoot::Long112 => h1::<R>() + sym(PosRoot::Long112).scale(&(s * i)),
        PosRoot::Long2 => h2::<R>() + sym(PosRoot::Long2).scale(&(s * i)),
        PosRoot::Short12 => sym(PosRoot::Short12) - sym(PosRoot::Short1).scale(&(s * i)),
        PosRoot::Short1 => panic!("β1 is compact"),
    };
    m.scale_q(&h)
}

/// `u_β = √2·i·v_β` for the long noncompact roots and `v_β` otherwise.
pub fn u_beta<R: FromExact>(beta: BetaLabel) -> GMat<R> {
    let v = v_beta::<R>(beta);
    match beta.root {
        PosRoot::Short12 => v,
        _ => v.scale(&R::from_exact(&(ExactScalar::i() * ExactScalar::sqrt_rational(&rat(2, 1))))),
    }
}

/// `exp(a·G)` for `G³ = -G`, given `cos a` and `sin a`.
pub fn rotation_exp<R: Ring>(g: &GMat<R>, cos: &R, sin: &R) -> GMat<R> {
    let g2 = g.clone() * g.clone();
    debug_assert!((g2.clone() * g.clone() + g.clone()).is_zero());
    GMat::identity() - g2.scale(&(cos.clone() - R::one())) + g.scale(sin)
}

/// `exp(X)` for nilpotent `X`.
pub fn nilpotent_exp<R: Ring>(x: &GMat<R>) -> GMat<R> {
    let mut out = GMat::identity();
    let mut term = GMat::identity();
    for k in 1..4i64 {
        term = (term * x.clone()).scale_q(&rat(1, k));
        out = out + term.clone();
    }
    debug_assert!((term * x.clone()).is_zero());
    out
}

fn quarter_cos_sin(k: i64) -> (i64, i64) {
    match k.rem_euclid(4) {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    }
}

/// `exp(k·(π/2)·G)` for `G³ = -G`.
pub fn rotation_quarter<R: Ring>(g: &GMat<R>, k: i64) -> GMat<R> {
    let (c, s) = quarter_cos_sin(k);
    rotation_exp(g, &R::from_int(c), &R::from_int(s))
}

// ---------------------------------------------------------------------------
// Weyl group

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimpleRoot {
    A1,
    A2,
}

impl SimpleRoot {
    pub fn root(self) -> PosRoot {
        match self {
            SimpleRoot::A1 => PosRoot::Short1,
            SimpleRoot::A2 => PosRoot::Long2,
        }
    }
}

/// `w_{α1} = exp(πU2)`, `w_{α2} = exp((π/2)(U0-U3))`.
pub fn weyl_reflection<R: Ring>(s: SimpleRoot) -> GMat<R> {
    let [u0, _, u2, u3] = u2_generators::<R>();
    match s {
        SimpleRoot::A1 => rotation_quarter(&u2.scale_q(&rat(2, 1)), 1),
        SimpleRoot::A2 => rotation_quarter(&(u0 - u3), 1),
    }
}

/// A product of simple reflections, written left to right as an operator product.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeylWord(pub Vec<SimpleRoot>);

impl WeylWord {
    /// `w0 = w_{α2} w_{α1} w_{α2} w_{α1}`.
    pub fn longest() -> Self {
        use SimpleRoot::*;
        WeylWord(vec![A2, A1, A2, A1])
    }

    pub fn matrix<R: Ring>(&self) -> GMat<R> {
        self.0.iter().fold(GMat::identity(), |acc, &s| acc * weyl_reflection(s))
    }

    /// Every word of length at most `n`.
    pub fn all_up_to(n: usize) -> Vec<WeylWord> {
        let mut out = vec![WeylWord::default()];
        let mut layer = vec![WeylWord::default()];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &layer {
                for s in [SimpleRoot::A1, SimpleRoot::A2] {
                    let mut v = w.0.clone();
                    v.push(s);
                    next.push(WeylWord(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// Action on `λ`: the rightmost reflection acts first.
pub fn weyl_on_lambda<R: Neg<Output = R>>(word: &WeylWord, lambda: (R, R)) -> (R, R) {
    word.0.iter().rev().fold(lambda, |(a, b), s| match s {
        SimpleRoot::A1 => (b, a),
        SimpleRoot::A2 => (a, -b),
    })
}

/// `γ_α = exp(π(X_α - X_{-α}))`.
pub fn gamma_alpha<R: Ring>(root: PosRoot) -> GMat<R> {
    let g = chevalley::<R>(RootLabel::pos(root)) - chevalley(RootLabel::neg(root));
    rotation_quarter(&g, 2)
}

/// Each simple `w_α` conjugates the positive root spaces other than `α` into
/// positive root spaces, and `X_α` into the `-α` root space.
pub fn nilpotent_conjugation_check() -> bool {
    let coords_of = |m: &GMat<Gauss>| -> Option<RootLabel> {
        RootLabel::all().into_iter().find(|&r| {
            let x = chevalley::<Gauss>(r);
            let (a, b) = r.coords();
            let hx = h1::<Gauss>().bracket(m) - m.scale_q(&rat_int(a));
            let hy = h2::<Gauss>().bracket(m) - m.scale_q(&rat_int(b));
            !x.is_zero() && hx.is_zero() && hy.is_zero()
        })
    };
    [SimpleRoot::A1, SimpleRoot::A2].iter().all(|&s| {
        let w = weyl_reflection::<Gauss>(s);
        let wi = w.symplectic_inverse();
        PosRoot::ALL.iter().all(|&r| {
            let img = wi.clone() * chevalley(RootLabel::pos(r)) * w.clone();
            match coords_of(&img) {
                Some(l) if r == s.root() => l == RootLabel::neg(r),
                Some(l) => l.positive && l.root != s.root(),
                None => false,
            }
        })
    })
}

fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

// ---------------------------------------------------------------------------
// Cayley transforms

/// `exp((π/4)(v̄_β - v_β))` for `β ∈ {β2, 2β1+β2}`.
pub fn cayley_element(beta: PosRoot) -> GMat<RadicalSum> {
    assert!(matches!(beta, PosRoot::Long2 | PosRoot::Long112), "Cayley transform is trivial here");
    let v = v_beta::<Gauss>(BetaLabel::pos(beta));
    let g = (v.conj() - v).to_radical();
    let h = RadicalSum::from_exact(&ExactScalar::sqrt_rational(&rat(1, 2)));
    rotation_exp(&g, &h, &h)
}

/// Images of every noncompact `v_β` under the composite Cayley transform.
pub fn cayley_images() -> Vec<(BetaLabel, GMat<RadicalSum>)> {
    let c = cayley_element(PosRoot::Long2) * cayley_element(PosRoot::Long112);
    let ci = c.symplectic_inverse();
    BetaLabel::noncompact()
        .into_iter()
        .map(|b| (b, c.clone() * v_beta::<Gauss>(b).to_radical() * ci.clone()))
        .collect()
}

/// The two Cayley transforms commute, and the composite sends `v_β` to `i·X_α`
/// for the positive long roots and to `X_α` for `±(β1+β2)`.
pub fn cayley_check() -> bool {
    let c2 = cayley_element(PosRoot::Long2);
    let c112 = cayley_element(PosRoot::Long112);
    if c2.clone() * c112.clone() != c112 * c2 {
        return false;
    }
    let i = RadicalSum::imag_unit();
    cayley_images().into_iter().all(|(b, img)| {
        let x = chevalley::<Gauss>(b.to_alpha()).to_radical();
        match (b.root, b.positive) {
            (PosRoot::Short12, _) => img == x,
            (_, true) => img == x.scale(&i),
            (_, false) => img == x.scale(&-i.clone()),
        }
    })
}

// ---------------------------------------------------------------------------
// Iwasawa factorization of exp(t X_{-α})

#[derive(Clone, Debug, PartialEq)]
pub struct Iwasawa<R: Ring> {
    pub kappa: GMat<R>,
    pub h: GMat<R>,
    pub chi: GMat<R>,
    /// `sqrt(1+t²)`
    pub h_param: R,
    /// `t/(1+t²)`
    pub chi_param: R,
}

impl<R: Ring> Iwasawa<R> {
    pub fn product(&self) -> GMat<R> {
        self.kappa.clone() * self.h.clone() * self.chi.clone()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum IwasawaFactors {
    Exact(Iwasawa<Gauss>),
    Float(Iwasawa<Complex64>),
}

fn iwasawa_with<R: Ring>(alpha: SimpleRoot, t: R, r: R, rinv: R, chi_param: R, diag_pow: impl Fn(i64) -> R) -> Iwasawa<R> {
    let root = alpha.root();
    let g = chevalley::<R>(RootLabel::pos(root)) - chevalley(RootLabel::neg(root));
    // κ_α(t) = exp(arctan(-t) (X_α - X_{-α}))
    let kappa = rotation_exp(&g, &rinv, &(-(t * rinv.clone())));
    let hc = coroot::<R>(root);
    let h = GMat::from_fn(|i, j| {
        if i != j {
            return R::zero();
        }
        let d = hc.get(i, i);
        if d.is_zero() {
            R::one()
        } else if *d == R::one() {
            diag_pow(1)
        } else {
            diag_pow(-1)
        }
    });
    let chi = nilpotent_exp(&chevalley::<R>(RootLabel::pos(root)).scale(&chi_param));
    Iwasawa { kappa, h, chi, h_param: r, chi_param }
}

/// `exp(tX_{-α}) = κ_α(t) h_α(√(1+t²)) χ_α(t/(1+t²))`; exact when `1+t²` is a rational square.
pub fn iwasawa_sl2(alpha: SimpleRoot, t: &BigRational) -> IwasawaFactors {
    let n = BigRational::one() + t * t;
    match rational_sqrt(&n) {
        Some(r) => {
            let g = |q: &BigRational| Gauss::real(q.clone());
            let rinv = r.recip();
            let cp = t / &n;
            let (rg, rig) = (g(&r), g(&rinv));
            IwasawaFactors::Exact(iwasawa_with(alpha, g(t), rg.clone(), rig.clone(), g(&cp), |e| {
                if e > 0 {
                    rg.clone()
                } else {
                    rig.clone()
                }
            }))
        }
        None => IwasawaFactors::Float(iwasawa_sl2_f64(alpha, crate::exact::rat_to_f64(t))),
    }
}

pub fn iwasawa_sl2_f64(alpha: SimpleRoot, t: f64) -> Iwasawa<Complex64> {
    let c = |x: f64| Complex64::new(x, 0.0);
    let r = (1.0 + t * t).sqrt();
    iwasawa_with(alpha, c(t), c(r), c(1.0 / r), c(t / (1.0 + t * t)), |e| c(r.powi(e as i32)))
}

/// `exp(tX_{-α})`.
pub fn chi_minus<R: Ring>(alpha: SimpleRoot, t: &R) -> GMat<R> {
    nilpotent_exp(&chevalley::<R>(RootLabel::neg(alpha.root())).scale(t))
}

// ---------------------------------------------------------------------------
// Casimir elements

pub fn hc_omega2<R: Ring>(l1: &R, l2: &R) -> R {
    (l1.clone() * l1.clone() + l2.clone() * l2.clone() - R::from_int(5)).scale(&rat(1, 12))
}

pub fn hc_omega4<R: Ring>(l1: &R, l2: &R) -> R {
    let a = l1.clone() * l1.clone();
    let b = l2.clone() * l2.clone();
    let v = a.clone() * a.clone() + b.clone() * b.clone() + (a.clone() * b.clone()).scale(&rat(6, 1))
        - (a + b).scale(&rat(6, 1))
        - R::from_int(11);
    v.scale(&rat(1, 5184))
}

/// An enveloping-algebra element as a rational combination of words in the algebra.
pub type UWord = Vec<(BigRational, Vec<GMat<Gauss>>)>;

/// `Ω2` in the Chevalley basis.
pub fn omega2_word() -> UWord {
    let x = |r: PosRoot, p: bool| chevalley::<Gauss>(RootLabel { root: r, positive: p });
    let q = |n: i64| rat(n, 12);
    vec![
        (q(1), vec![h1(), h1()]),
        (q(1), vec![h2(), h2()]),
        (q(4), vec![h1()]),
        (q(2), vec![h2()]),
        (q(2), vec![x(PosRoot::Short1, false), x(PosRoot::Short1, true)]),
        (q(4), vec![x(PosRoot::Long2, false), x(PosRoot::Long2, true)]),
        (q(2), vec![x(PosRoot::Short12, false), x(PosRoot::Short12, true)]),
        (q(4), vec![x(PosRoot::Long112, false), x(PosRoot::Long112, true)]),
    ]
}

/// Evaluates a word in the defining representation.
pub fn uword_matrix(w: &UWord) -> GMat<Gauss> {
    w.iter().fold(GMat::zero(), |acc, (c, factors)| {
        acc + factors.iter().fold(GMat::identity(), |p, f| p * f.clone()).scale_q(c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = GMat<Gauss>;

    fn x(r: PosRoot, p: bool) -> M {
        chevalley(RootLabel { root: r, positive: p })
    }

    #[test]
    fn chevalley_examples() {
        assert_eq!(x(PosRoot::Long2, true), M::e(2, 4));
        assert_eq!(
            x(PosRoot::Short1, true).bracket(&x(PosRoot::Short12, true)),
            x(PosRoot::Long112, true).scale_q(&rat(2, 1))
        );
        assert_eq!(h1::<Gauss>().bracket(&x(PosRoot::Short1, true)), x(PosRoot::Short1, true));
    }

    #[test]
    fn chevalley_in_algebra_and_bracket_table() {
        for r in RootLabel::all() {
            let m = chevalley::<Gauss>(r);
            assert!(m.in_lie_algebra(), "{r}");
            let (a, b) = r.coords();
            assert_eq!(h1::<Gauss>().bracket(&m), m.scale_q(&rat(a, 1)), "{r}");
            assert_eq!(h2::<Gauss>().bracket(&m), m.scale_q(&rat(b, 1)), "{r}");
        }
        assert!(h1::<Gauss>().in_lie_algebra() && h2::<Gauss>().in_lie_algebra());
    }

    #[test]
    fn u2_relations() {
        let u = u2_generators::<Gauss>();
        for k in &u {
            assert!(k.in_lie_algebra());
            assert_eq!(k.bracket(&u[0]), M::zero());
        }
        assert_eq!(u[1].bracket(&u[2]), -u[3].clone());
        assert_eq!(u[2].bracket(&u[3]), -u[1].clone());
        assert_eq!(u[3].bracket(&u[1]), -u[2].clone());
        assert_eq!(u[0].clone() + u[3].clone(), x(PosRoot::Long112, true) - x(PosRoot::Long112, false));
        assert_eq!(u[0].clone() - u[3].clone(), x(PosRoot::Long2, true) - x(PosRoot::Long2, false));
        assert_eq!(u[2].scale_q(&rat(2, 1)), x(PosRoot::Short1, true) - x(PosRoot::Short1, false));
        assert_eq!(u[1].scale_q(&rat(2, 1)), x(PosRoot::Short12, true) - x(PosRoot::Short12, false));
    }

    #[test]
    fn weyl_matrices() {
        let w1 = weyl_reflection::<Gauss>(SimpleRoot::A1);
        assert_eq!(w1, M::from_ints([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]));
        let w2 = weyl_reflection::<Gauss>(SimpleRoot::A2);
        assert_eq!(w2.pow(4), M::identity());
        assert!(w1.is_symplectic() && w2.is_symplectic());
        assert_eq!(w2.pow(2), gamma_alpha(PosRoot::Long2));
        assert_eq!(w1.pow(2), gamma_alpha(PosRoot::Short1));
    }

    #[test]
    fn weyl_lambda_examples() {
        let l = (rat(3, 1), rat(5, 1));
        assert_eq!(weyl_on_lambda(&WeylWord(vec![SimpleRoot::A1]), l.clone()), (rat(5, 1), rat(3, 1)));
        assert_eq!(weyl_on_lambda(&WeylWord::longest(), l.clone()), (rat(-3, 1), rat(-5, 1)));
        assert_eq!(weyl_on_lambda(&WeylWord::default(), l.clone()), l);
    }

    #[test]
    fn weyl_matrix_acts_like_lambda_rule() {
        // w H w^{-1} permutes the Cartan coordinates the same way
        for w in WeylWord::all_up_to(4) {
            let m = w.matrix::<Gauss>();
            let mi = m.symplectic_inverse();
            let (a, b) = weyl_on_lambda(&w, (rat(1, 1), rat(0, 1)));
            let (c, d) = weyl_on_lambda(&w, (rat(0, 1), rat(1, 1)));
            let img1 = m.clone() * h1() * mi.clone();
            let img2 = m * h2() * mi;
            let want1 = h1::<Gauss>().scale_q(&a) + h2::<Gauss>().scale_q(&b);
            let want2 = h1::<Gauss>().scale_q(&c) + h2::<Gauss>().scale_q(&d);
            assert_eq!(img1, want1, "{w:?}");
            assert_eq!(img2, want2, "{w:?}");
        }
    }

    #[test]
    fn m_group_generators() {
        let g2 = gamma_alpha::<Gauss>(PosRoot::Long2);
        let g112 = gamma_alpha::<Gauss>(PosRoot::Long112);
        assert_eq!(g2.pow(2), M::identity());
        assert_eq!(g112.pow(2), M::identity());
        assert_eq!(g2.clone() * g112.clone(), g112.clone() * g2.clone());
        assert_ne!(g2, M::identity());
        assert_ne!(g2, g112);
        let [u0, _, _, u3] = u2_generators::<Gauss>();
        assert_eq!(g2, rotation_quarter(&(u0.clone() - u3.clone()), 2));
        assert_eq!(g112, rotation_quarter(&(u0 + u3), 2));
    }

    #[test]
    fn cayley() {
        assert!(cayley_check());
        let imgs = cayley_images();
        let i = RadicalSum::imag_unit();
        let find = |b: BetaLabel| imgs.iter().find(|(l, _)| *l == b).unwrap().1.clone();
        assert_eq!(find(BetaLabel::pos(PosRoot::Long2)), x(PosRoot::Long2, true).to_radical().scale(&i));
        assert_eq!(find(BetaLabel::pos(PosRoot::Short12)), x(PosRoot::Short12, true).to_radical());
    }

    #[test]
    fn iwasawa_exact_pythagorean() {
        for alpha in [SimpleRoot::A1, SimpleRoot::A2] {
            let t = rat(3, 4);
            let IwasawaFactors::Exact(f) = iwasawa_sl2(alpha, &t) else { panic!("expected exact") };
            assert_eq!(f.h_param, Gauss::real(rat(5, 4)));
            assert_eq!(f.chi_param, Gauss::real(rat(12, 25)));
            assert_eq!(f.product(), chi_minus(alpha, &Gauss::real(t)));
            assert!(f.kappa.is_symplectic());
            let IwasawaFactors::Exact(z) = iwasawa_sl2(alpha, &rat(0, 1)) else { panic!() };
            assert_eq!((z.kappa, z.h, z.chi), (M::identity(), M::identity(), M::identity()));
        }
    }

    #[test]
    fn iwasawa_float() {
        for alpha in [SimpleRoot::A1, SimpleRoot::A2] {
            let f = iwasawa_sl2_f64(alpha, 1.0);
            let want = chi_minus(alpha, &Complex64::new(1.0, 0.0));
            assert!(f.product().max_abs_diff(&want) < 1e-12);
            assert!(matches!(iwasawa_sl2(alpha, &rat(1, 1)), IwasawaFactors::Float(_)));
        }
    }

    #[test]
    fn conjugated_nilpotent() {
        assert!(nilpotent_conjugation_check());
    }

    #[test]
    fn casimir_images() {
        let q = |n, d| Gauss::real(rat(n, d));
        assert_eq!(hc_omega2(&q(2, 1), &q(1, 1)), Gauss::zero());
        assert_eq!(hc_omega2(&q(0, 1), &q(0, 1)), q(-5, 12));
        let l = (q(7, 3), q(-2, 5));
        for w in WeylWord::all_up_to(4) {
            let (a, b) = weyl_on_lambda(&w, l.clone());
            assert_eq!(hc_omega2(&a, &b), hc_omega2(&l.0, &l.1));
            assert_eq!(hc_omega4(&a, &b), hc_omega4(&l.0, &l.1));
        }
    }

    #[test]
    fn omega2_is_central_in_defining_rep() {
        // highest weight (1,0): γ'(Ω2) at λ+ρ = (3,1) gives 5/12
        let m = uword_matrix(&omega2_word());
        assert_eq!(m, M::identity().scale_q(&rat(5, 12)));
    }
}
