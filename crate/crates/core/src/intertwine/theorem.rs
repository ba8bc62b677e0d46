//! Long-operator entries and normalized simple-operator entries as constant
//! terms of Laurent series.

use num_rational::BigRational;

use super::block::{BlockMatrix, OperatorBlock, OperatorKind};
use super::{check_ktype, eval_at, inv_cc, kappa_c, pair_poch, ZFn};
use crate::error::{MathError, Result};
use crate::exact::{
    factorial, gamma_half, gamma_half_ratio, pochhammer, rat, rat_int, Character, ExactScalar, Field, Gauss,
    HalfInt, Lambda, Ring, Scalar,
};
use crate::gkmod::m_set;
use crate::laurent::{binom_series, constant_term_2, eval_or_limit, hyp2f1_series, with_retry, LSeries1, LSeries2};

/// `ε^{j,n}_δ`: 0 when `j - n - δ1` is even, 1 otherwise.
pub fn epsilon(j: i64, n: i64, delta: (u8, u8)) -> i64 {
    (j - n - delta.0 as i64).rem_euclid(2)
}

fn half<F: Ring>(x: F) -> F {
    x * F::from_rational(&rat(1, 2))
}

/// The Theorem-1 entry times `c_{m1} c_{m2}`, with `1/(κ(z2) κ(z4))` removed
/// when the Pochhammer pairs have half-odd index.
pub fn genfun_kernel<F: Field>(
    j: i64,
    n: i64,
    delta: (u8, u8),
    m1: i64,
    m2: i64,
    l1: &F,
    l2: &F,
    order: i64,
) -> Result<F> {
    let eps = epsilon(j, n, delta);
    let one = F::one();
    let z1 = half(l1.clone() - l2.clone() + one.clone());
    let z2 = half(l1.clone() + one.clone());
    let z3 = half(l1.clone() + l2.clone() + one.clone());
    let z4 = half(l2.clone() + one);

    let f2j = BigRational::from_integer(factorial((2 * j) as u64));
    let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut pre = F::from_rational(&(f2j.clone() * f2j * rat_int(sign)));
    pre = pre.try_div(&pair_poch(&z2, HalfInt::from_twice(j + n - eps))?.0)?;
    pre = pre.try_div(&(pochhammer(&z1, j)? * pochhammer(&z3, j)?))?;
    let k1 = j + m1 - eps;
    let k2 = -j - m2 + eps;
    if k1 % 2 != 0 || k2 % 2 != 0 {
        return Err(MathError::OutOfRange(format!("m1 = {m1}, m2 = {m2} off the parity set")));
    }
    pre = pre * pochhammer(&half(l1.clone() - l2.clone()), k1 / 2)?;
    pre = pre * pochhammer(&half(l1.clone() + l2.clone()), k2 / 2)?;
    pre = pre.try_div(&pair_poch(&z4, HalfInt::from_twice(m2 - n))?.0)?;
    let gr = gamma_half_ratio(HalfInt::from_twice(1 - eps + j - m1), HalfInt::from_twice(1 - eps + j - m2))?
        .as_rational()
        .ok_or_else(|| MathError::NotExact("Gamma ratio in the prefactor".into()))?;
    pre = pre.scale(&gr);

    let fi = |x: i64| F::from_int(x);
    let fh = |x: i64| F::from_rational(&rat(x, 2));
    let f1 = hyp2f1_series("t1", &fi(-j + m1), &half(l1.clone() - l2.clone() - fi(2 * j + 1)), &fi(-2 * j), &F::one(), order)?;
    let f2 = hyp2f1_series("t2", &fi(-j - m2), &half(l1.clone() + l2.clone() - fi(2 * j + 1)), &fi(-2 * j), &F::one(), order)?;
    let e1 = rat(-1 + eps - j + m1, 2);
    let e2 = rat(-1 - eps + j - m2, 2);

    let ups = [
        fh(-j + m2 + 1 + eps),
        half(fi(-j - n + 1 + eps) - l1.clone()),
        half(fi(-j - m2 + eps) + l1.clone() + l2.clone()),
    ];
    let dns = [
        fh(-j + m1 + 1 + eps),
        half(fi(-j - n + 1 + eps) + l1.clone()),
        half(fi(-j - m1 + eps + 2) - l1.clone() + l2.clone()),
    ];
    let mut series = LSeries2::new();
    let mut coef = F::one();
    for k in 0..=(j - eps) {
        if k > 0 {
            let mut num = F::one();
            for u in &ups {
                num = num * (u.clone() + fi(k - 1));
            }
            let mut den = fi(1);
            for d in &dns {
                den = den * (d.clone() + fi(k - 1));
            }
            // the leading (1)_k/k! is absorbed: (1)_k/k! = 1
            coef = coef * num.try_div(&den)?;
        }
        if coef.is_zero() {
            break;
        }
        let b1 = binom_series("t1", &F::from_rational(&(e1.clone() + rat_int(k))), -1, order);
        let b2 = binom_series("t2", &F::from_rational(&(e2.clone() - rat_int(k))), -1, order);
        series.push(coef.clone(), -eps - 2 * k, eps - 2 * j + 2 * k, vec![b1, f1.clone()], vec![b2, f2.clone()]);
    }
    Ok(pre * constant_term_2(&series)?)
}

/// Slope of the limit line `λ + s(1, 2/7)` used at a removable 0/0.
const LIMIT_SLOPE: (i64, i64) = (2, 7);

struct GK {
    j: i64,
    n: i64,
    delta: (u8, u8),
    m1: i64,
    m2: i64,
    order: Option<i64>,
}

impl GK {
    fn eval<F: Field>(&self, l1: &F, l2: &F) -> Result<F> {
        with_retry(self.order.unwrap_or(6 * self.j + 6), |order| {
            genfun_kernel(self.j, self.n, self.delta, self.m1, self.m2, l1, l2, order)
        })
    }
}

fn genfun_exact(k: &GK, l1: &BigRational, l2: &BigRational) -> Result<Gauss> {
    let (a, b) = (Gauss::real(l1.clone()), Gauss::real(l2.clone()));
    let what = format!("Theorem-1 entry ({},{}) at λ = ({}, {})", k.m1, k.m2, l1, l2);
    eval_or_limit(
        &what,
        || k.eval(&a, &b),
        |s| {
            let x = LSeries1::constant("s", a.clone()) + s.clone();
            let y = LSeries1::constant("s", b.clone()) + s.scale(&rat(LIMIT_SLOPE.0, LIMIT_SLOPE.1));
            k.eval(&x, &y)
        },
    )
}

fn theorem_ktype(ktype: (HalfInt, HalfInt), delta: (u8, u8)) -> Result<(i64, i64)> {
    if delta != (0, 0) && delta != (1, 1) {
        return Err(MathError::OutOfRange(format!(
            "the generating function needs δ ∈ {{(0,0),(1,1)}}, got {delta:?}"
        )));
    }
    check_ktype(ktype, delta)?;
    match (ktype.0.to_i64(), ktype.1.to_i64()) {
        (Some(j), Some(n)) => Ok((j, n)),
        _ => Err(MathError::OutOfRange("the generating function needs integer j and n".into())),
    }
}

/// Theorem-1 entries by constant-term extraction, laid out like
/// [`super::long_operator_product`]: rows `m2`, columns `m1`.
pub fn long_operator_genfun(ktype: (HalfInt, HalfInt), chi: &Character) -> Result<OperatorBlock> {
    long_operator_genfun_order(ktype, chi, None)
}

/// As [`long_operator_genfun`], starting the series at `order` instead of `6j+6`.
pub fn long_operator_genfun_order(
    ktype: (HalfInt, HalfInt),
    chi: &Character,
    order: Option<i64>,
) -> Result<OperatorBlock> {
    let (j, n) = theorem_ktype(ktype, chi.delta)?;
    let ms = m_set(chi.delta, ktype.0, ktype.1);
    let half_odd = chi.delta == (1, 1);
    let mut entries = Vec::with_capacity(ms.len());
    for &m2 in &ms {
        let mut row = Vec::with_capacity(ms.len());
        for &m1 in &ms {
            let k = GK { j, n, delta: chi.delta, m1: m1.expect_int(), m2: m2.expect_int(), order };
            let radical = inv_cc(ktype.0, m1, m2);
            let v = match &chi.lambda {
                Lambda::Exact(a, b) => Scalar::Exact(ExactScalar::from_gauss(genfun_exact(&k, a, b)?) * radical),
                Lambda::Float(a, b) => {
                    let mut v = k.eval(a, b)? * radical.to_complex();
                    if half_odd {
                        let z2 = (a + 1.0) / 2.0;
                        let z4 = (b + 1.0) / 2.0;
                        v /= kappa_c(z2)? * kappa_c(z4)?;
                    }
                    Scalar::Float(v)
                }
            };
            row.push(v);
        }
        entries.push(row);
    }
    let mut block = BlockMatrix::new(ktype, ms.clone(), ms, entries);
    if half_odd {
        if let Lambda::Exact(a, b) = &chi.lambda {
            let z2 = (a + rat_int(1)) / rat_int(2);
            let z4 = (b + rat_int(1)) / rat_int(2);
            block.omitted_kappa = vec![z2, z4];
        }
    }
    Ok(OperatorBlock { delta: chi.delta, lambda: chi.lambda.clone(), kind: OperatorKind::LongGenfun, block })
}

/// The single constant `c` with `genfun = c · product`, checked on every entry
/// (exactly, or to relative `1e-9` in floats).
pub fn genfun_constant(genfun: &BlockMatrix, product: &BlockMatrix) -> Result<Scalar> {
    if genfun.rows != product.rows || genfun.cols != product.cols {
        return Err(MathError::Inconsistent("blocks have different index sets".into()));
    }
    let mut kappa_g = genfun.omitted_kappa.clone();
    let mut kappa_p = product.omitted_kappa.clone();
    kappa_g.sort();
    kappa_p.sort();
    if kappa_g != kappa_p {
        return Err(MathError::Inconsistent("blocks omit different κ factors".into()));
    }
    let exact = genfun.is_exact() && product.is_exact();
    let mut ratio: Option<Scalar> = None;
    for (r, c, g) in genfun.iter() {
        let p = product.get(r, c);
        let pz = p.to_complex();
        let gz = g.to_complex();
        let p_zero = match p {
            Scalar::Exact(x) => x.is_zero(),
            Scalar::Float(x) => x.norm() == 0.0,
        };
        if p_zero {
            let g_zero = match g {
                Scalar::Exact(x) => x.is_zero(),
                Scalar::Float(x) => x.norm() <= 1e-12,
            };
            if !g_zero {
                return Err(MathError::Inconsistent(format!(
                    "entry ({r},{c}): product vanishes but the generating function gives {g}"
                )));
            }
            continue;
        }
        let this = if exact {
            let (Scalar::Exact(a), Scalar::Exact(b)) = (g, p) else { unreachable!() };
            Scalar::Exact(a.try_div(b)?)
        } else {
            Scalar::Float(gz / pz)
        };
        match &ratio {
            None => ratio = Some(this),
            Some(prev) => {
                let same = match (prev, &this) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
                    (a, b) => {
                        let (a, b) = (a.to_complex(), b.to_complex());
                        (a - b).norm() <= 1e-9 * a.norm().max(1e-300)
                    }
                };
                if !same {
                    return Err(MathError::Inconsistent(format!(
                        "entry ({r},{c}): ratio {this} differs from {prev}"
                    )));
                }
            }
        }
    }
    ratio.ok_or_else(|| MathError::Inconsistent("product block vanishes identically".into()))
}

/// The Theorem-1 block divided by its per-block constant, so that it can be
/// compared entry by entry with the four-factor product.
pub fn long_operator_genfun_normalized(ktype: (HalfInt, HalfInt), chi: &Character) -> Result<(OperatorBlock, Scalar)> {
    let g = long_operator_genfun(ktype, chi)?;
    let p = super::long_operator_product(ktype, chi)?;
    let c = genfun_constant(&g.block, &p.block)?;
    let mut block = g.block.divide_by(&c)?;
    block.omitted_kappa = p.block.omitted_kappa.clone();
    Ok((OperatorBlock { block, ..g }, c))
}

// ---------------------------------------------------------------------------
// H and G

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HG {
    H,
    G,
}

/// Constant term without the `Γ(·)/√π` prefactor and the radical.
struct HGK {
    which: HG,
    j: i64,
    m1: i64,
    m2: i64,
}

impl ZFn for HGK {
    fn eval<F: Field>(&self, z: &F) -> Result<F> {
        let (j, m1, m2) = (self.j, self.m1, self.m2);
        let (nn, e, a) = match self.which {
            HG::H => (j + m1, rat(-1 + m1 + m2, 2), -j + m2),
            HG::G => (j - m2, rat(-1 - m1 - m2, 2), -j - m1),
        };
        let zh = z.clone() - F::from_rational(&rat(1, 2));
        let pz = pochhammer(&zh, -(m1 - m2) / 2)?;
        let pre = F::from_rational(&BigRational::from_integer(factorial((2 * j) as u64) * factorial(nn as u64)))
            * pz;
        let pre = pre.try_div(&pochhammer(z, j)?)?;
        let b = binom_series("t", &F::from_rational(&e), -1, nn);
        let f = hyp2f1_series("t", &F::from_int(a), &(z.clone() - F::from_int(1 + j)), &F::from_int(-2 * j), &F::one(), nn)?;
        let c = (b * f).coeff(nn)?;
        let sign = if nn.rem_euclid(2) == 0 { 1 } else { -1 };
        Ok(pre * c.scale(&rat_int(sign)))
    }
}

/// `[H^j_{m1,m2}(z;t)]_0` or `[G^j_{m1,m2}(z;t)]_0` at rational `z`, for
/// `m1 ≡ m2 (mod 2)` (the pairs occurring in one δ-block).
pub fn hg_constant_term(which: HG, j: i64, m1: i64, m2: i64, z: &BigRational) -> Result<ExactScalar> {
    if (m1 - m2) % 2 != 0 {
        return Err(MathError::OutOfRange(format!(
            "{which:?} is defined here for m1 ≡ m2 mod 2, got ({m1},{m2})"
        )));
    }
    let jj = HalfInt::int(j);
    let arg = match which {
        HG::H => HalfInt::from_twice(1 - m1 - m2),
        HG::G => HalfInt::from_twice(1 + m1 + m2),
    };
    let g = gamma_half(arg)?.try_div(&ExactScalar::sqrt_pi_pow(1))?;
    let k = HGK { which, j, m1, m2 };
    let v = eval_at(&format!("{which:?}({j};{m1},{m2}) at z = {z}"), &k, z)?;
    Ok(ExactScalar::from_gauss(v) * g * inv_cc(jj, HalfInt::int(m1), HalfInt::int(m2)))
}
