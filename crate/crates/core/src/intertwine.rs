//! Intertwining operators for the minimal principal series.
//!
//! The default path is normalized: `𝒮 = S / S^{(0,n)}_{0,0}` and `𝒯` are
//! rational in `z` up to the radical `1/(c_{m1} c_{m2})`, so blocks stay exact
//! at every rational `λ`. The unnormalized pieces (`q_factor`, `s_entry_sum`,
//! `s_entry_3f2`) are exact only at half-integer `z` and fall back to floats
//! elsewhere.

pub mod block;
pub mod theorem;

pub use block::{BlockMatrix, OperatorBlock, OperatorKind};

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{MathError, Result};
use crate::exact::{
    factorial, gamma_c, gamma_half, pochhammer, rat, rat_int, rat_to_f64, Character, ExactScalar, Field,
    Gauss, HalfInt, Lambda, RadicalSum, Ring, Scalar,
};
use crate::gkmod::m_set;
use crate::laurent::{eval_or_limit, LSeries1};
use crate::wigner::{c_factor, wigner_d_exact, WignerIndex};

// ---------------------------------------------------------------------------
// Q(z, n)

fn is_gamma_pole(x: HalfInt) -> bool {
    x.is_integer() && x.twice() <= 0
}

/// `Q(z,n) = π 2^{2-2z} Γ(2z-1) / (Γ(z+n) Γ(z-n))` at half-integer `z`.
pub fn q_factor_exact(z: HalfInt, n: HalfInt) -> Result<ExactScalar> {
    let a = HalfInt::int(z.twice() - 1);
    let (b1, b2) = (z + n, z - n);
    let pi = ExactScalar::sqrt_pi_pow(2);
    let e = 2 - z.twice();
    let two_pow = if e >= 0 {
        BigRational::from_integer(num_bigint::BigInt::from(2).pow(e as u32))
    } else {
        BigRational::new(1.into(), num_bigint::BigInt::from(2).pow((-e) as u32))
    };
    let pre = pi * ExactScalar::from_rational(two_pow);
    let poles = [b1, b2].iter().filter(|b| is_gamma_pole(**b)).count();
    if !is_gamma_pole(a) {
        if poles > 0 {
            return Ok(ExactScalar::zero());
        }
        return (pre * gamma_half(a)?).try_div(&(gamma_half(b1)? * gamma_half(b2)?));
    }
    match poles {
        0 => Err(MathError::pole(format!(
            "Q({z},{n}): Gamma(2z-1) has a pole at 2z-1 = {}",
            z.twice() - 1
        ))),
        2 => Ok(ExactScalar::zero()),
        _ => {
            // Γ(2z-1)/Γ(z∓n) at a simultaneous simple pole: (-1)^{k1-k2} k2!/(2 k1!)
            let (pole_b, other) = if is_gamma_pole(b2) { (b2, b1) } else { (b1, b2) };
            let k1 = -(z.twice() - 1);
            let k2 = -pole_b.expect_int();
            let sign = if (k1 - k2).rem_euclid(2) == 0 { 1 } else { -1 };
            let lim = BigRational::new(
                num_bigint::BigInt::from(sign) * factorial(k2 as u64),
                num_bigint::BigInt::from(2) * factorial(k1 as u64),
            );
            (pre * ExactScalar::from_rational(lim)).try_div(&gamma_half(other)?)
        }
    }
}

fn rgamma_c(x: Complex64) -> Result<Complex64> {
    match Field::as_integer(&x) {
        Some(k) if k <= 0 => Ok(Complex64::new(0.0, 0.0)),
        _ => Ok(gamma_c(x)?.inv()),
    }
}

/// `Q(z,n)` on the float path; poles of `Γ(2z-1)` not cancelled by the
/// denominator are reported.
pub fn q_factor_c(z: Complex64, n: HalfInt) -> Result<Complex64> {
    let nf = n.to_f64();
    let a = 2.0 * z - 1.0;
    let (b1, b2) = (z + nf, z - nf);
    if let Some(k) = Field::as_integer(&a) {
        if k <= 0 {
            let zr = HalfInt::from_twice((k + 1) as i64);
            if Field::as_integer(&(z * 2.0)).is_some() && a.im.abs() < 1e-12 {
                return q_factor_exact(zr, n).map(|x| x.to_complex());
            }
        }
    }
    let pre = std::f64::consts::PI * Complex64::new(2.0, 0.0).powc(2.0 - 2.0 * z);
    Ok(pre * gamma_c(a)? * rgamma_c(b1)? * rgamma_c(b2)?)
}

/// `Q(z,n)`: exact when `2z` is an integer, float otherwise.
pub fn q_factor(z: &BigRational, n: HalfInt) -> Result<Scalar> {
    match HalfInt::from_rational(z) {
        Some(h) => q_factor_exact(h, n).map(Scalar::Exact),
        None => q_factor_c(Complex64::new(rat_to_f64(z), 0.0), n).map(Scalar::Float),
    }
}

// ---------------------------------------------------------------------------
// change of basis

const M_ANGLES: [i64; 4] = [0, -1, 3, 1];
const N_ANGLES: [i64; 4] = [0, -1, -3, 1];

fn d_grid(j: HalfInt, quarters: [i64; 4]) -> BlockMatrix {
    let ms: Vec<HalfInt> = HalfInt::steps(-j, j).collect();
    let entries = ms
        .iter()
        .map(|&a| {
            ms.iter()
                .map(|&b| {
                    let idx = WignerIndex::new(j, j, a, b).expect("indices in range");
                    Scalar::Exact(wigner_d_exact(&idx, quarters))
                })
                .collect()
        })
        .collect();
    BlockMatrix::new((j, j), ms.clone(), ms, entries)
}

/// The change-of-basis matrices `M` and `N = M^{-1}`; rows and columns run over
/// `m = -j..j` ascending. They do not depend on `n`.
pub fn mn_matrices(j: HalfInt) -> (BlockMatrix, BlockMatrix) {
    static CACHE: OnceLock<Mutex<HashMap<i64, (BlockMatrix, BlockMatrix)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("cache lock").get(&j.twice()) {
        return v.clone();
    }
    let v = (d_grid(j, M_ANGLES), d_grid(j, N_ANGLES));
    cache.lock().expect("cache lock").insert(j.twice(), v.clone());
    v
}

// ---------------------------------------------------------------------------
// S: sum form and closed form

fn check_m(j: HalfInt, m: HalfInt) -> Result<()> {
    if m.abs() > j || !(j - m).is_integer() {
        return Err(MathError::OutOfRange(format!("m = {m} not admissible for j = {j}")));
    }
    Ok(())
}

fn scalar_mul(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => Scalar::Exact(x.clone() * y.clone()),
        _ => Scalar::Float(a.to_complex() * b.to_complex()),
    }
}

fn scalar_div(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => x.try_div(y).map(Scalar::Exact),
        _ => {
            let d = b.to_complex();
            if d == Complex64::new(0.0, 0.0) {
                return Err(MathError::pole("division by zero"));
            }
            Ok(Scalar::Float(a.to_complex() / d))
        }
    }
}

/// `S^{j,n}_{m3,m2}(z) = Σ_{m4} i^{-2m4} M_{m3,m4} N_{m4,m2} Q(z,m4)`.
pub fn s_entry_sum(j: HalfInt, n: HalfInt, m3: HalfInt, m2: HalfInt, z: &BigRational) -> Result<Scalar> {
    check_m(j, m3)?;
    check_m(j, m2)?;
    let _ = n;
    let (m, nn) = mn_matrices(j);
    let mut exact = RadicalSum::zero();
    let mut float = Complex64::new(0.0, 0.0);
    let mut all_exact = true;
    for m4 in HalfInt::steps(-j, j) {
        let mn = match (m.get(m3, m4), nn.get(m4, m2)) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.clone() * b.clone(),
            _ => unreachable!("change of basis is exact"),
        };
        if mn.is_zero() {
            continue;
        }
        let term_mn = mn * ExactScalar::i_pow(-m4.twice());
        match q_factor(z, m4)? {
            Scalar::Exact(q) => exact = exact + RadicalSum::from_exact(&(term_mn * q)),
            Scalar::Float(q) => {
                all_exact = false;
                float += term_mn.to_complex() * q;
            }
        }
    }
    if all_exact {
        let v = exact.as_exact().ok_or_else(|| {
            MathError::NotExact(format!("S({j},{n};{m3},{m2}) has several radicands: {exact}"))
        })?;
        Ok(Scalar::Exact(v))
    } else {
        Ok(Scalar::Float(float + exact.to_complex()))
    }
}

/// The rational part `𝒮·c_{m1}c_{m2}` of the normalized entry, from the
/// terminating `3F2(-j+z-1, -j-m1, m2-j; -2j, -j-d+1/2; 1)` with `d = (m1-m2)/2`.
pub fn s_kernel<F: Field>(j: i64, m1: i64, m2: i64, z: &F) -> Result<F> {
    if (m1 - m2).rem_euclid(2) != 0 {
        return Ok(F::zero());
    }
    let d = (m1 - m2) / 2;
    let half = F::from_rational(&rat(1, 2));
    let mut g = F::one();
    if d > 0 {
        for i in 1..=d {
            g = g.try_div(&(z.clone() - half.clone() - F::from_int(i)))?;
        }
    } else {
        for i in 0..-d {
            g = g * (z.clone() - half.clone() + F::from_int(i));
        }
    }
    // Γ(-j-d+1/2) = q √π
    let q = gamma_half(HalfInt::from_twice(-2 * j - 2 * d + 1))?
        .try_div(&ExactScalar::sqrt_pi_pow(1))?
        .as_rational()
        .expect("Gamma at a half-odd point is rational times sqrt(pi)");
    let sign = if ((m1 + m2) / 2).rem_euclid(2) == 0 { 1 } else { -1 };
    let c = BigRational::from_integer(factorial((2 * j) as u64)) * rat_int(sign) / q;
    let top = [z.clone() - F::from_int(j + 1), F::from_int(-j - m1), F::from_int(m2 - j)];
    let bot = [F::from_int(-2 * j), F::from_rational(&(rat_int(-j - d) + rat(1, 2)))];
    let p = crate::laurent::pfq_partial(&top, &bot, &F::one(), (j + m1).min(j - m2))?;
    (g * p).scale(&c).try_div(&pochhammer(z, j)?)
}

/// `(z)^{(h)} (z)^{(-h)}` with the factor `κ(z) = Γ(z+1/2)Γ(z-1/2)/Γ(z)^2`
/// removed when `h` is half-odd; the flag reports whether it was removed.
pub fn pair_poch<F: Field>(z: &F, h: HalfInt) -> Result<(F, bool)> {
    if let Some(k) = h.to_i64() {
        return Ok((pochhammer(z, k)? * pochhammer(z, -k)?, false));
    }
    let k = (h.abs().twice() - 1) / 2;
    let half = F::from_rational(&rat(1, 2));
    let v = pochhammer(&(z.clone() + half.clone()), k)? * pochhammer(&(z.clone() - half), -k)?;
    Ok((v, true))
}

/// `κ(z) = Γ(z+1/2)Γ(z-1/2)/Γ(z)^2` in floats.
pub fn kappa_c(z: Complex64) -> Result<Complex64> {
    let g = gamma_c(z)?;
    Ok(gamma_c(z + 0.5)? * gamma_c(z - 0.5)? / (g * g))
}

/// `𝒯^n_m(z)` up to the removed `1/κ(z)` (flag as in [`pair_poch`]).
pub fn t_kernel<F: Field>(n: HalfInt, m: HalfInt, z: &F) -> Result<(F, bool)> {
    let e = (m - n).to_i64().ok_or_else(|| {
        MathError::OutOfRange(format!("m - n = {} must be an integer", m - n))
    })?;
    let (p, flag) = pair_poch(z, HalfInt::from_twice(e))?;
    Ok((F::i_pow(e).try_div(&p)?, flag))
}

// ---------------------------------------------------------------------------
// exact evaluation with removable singularities

/// A function of one scalar, evaluable in any field.
pub trait ZFn {
    fn eval<F: Field>(&self, z: &F) -> Result<F>;
}

/// Exact value at rational `z`, taking the limit through a removable 0/0.
pub fn eval_at<K: ZFn>(what: &str, k: &K, z: &BigRational) -> Result<Gauss> {
    let zg = Gauss::real(z.clone());
    eval_or_limit(
        what,
        || k.eval(&zg),
        |s| k.eval(&(LSeries1::constant("s", zg.clone()) + s.clone())),
    )
}

struct SK {
    j: i64,
    m1: i64,
    m2: i64,
}

impl ZFn for SK {
    fn eval<F: Field>(&self, z: &F) -> Result<F> {
        s_kernel(self.j, self.m1, self.m2, z)
    }
}

struct TK {
    n: HalfInt,
    m: HalfInt,
}

impl ZFn for TK {
    fn eval<F: Field>(&self, z: &F) -> Result<F> {
        t_kernel(self.n, self.m, z).map(|x| x.0)
    }
}

fn inv_cc(j: HalfInt, m1: HalfInt, m2: HalfInt) -> ExactScalar {
    (c_factor(j, m1) * c_factor(j, m2)).inv().expect("c factors are nonzero")
}

fn int_j(j: HalfInt, what: &str) -> Result<i64> {
    j.to_i64().ok_or_else(|| MathError::OutOfRange(format!("{what} needs integer j, got {j}")))
}

/// `S` through the closed form, at rational `z`: `𝒮 · Q(z,0)`.
pub fn s_entry_3f2(j: HalfInt, n: HalfInt, m1: HalfInt, m4: HalfInt, z: &BigRational) -> Result<Scalar> {
    let _ = n;
    let sn = s_norm(j, m1, m4, z)?;
    Ok(scalar_mul(&sn, &q_factor(z, HalfInt::ZERO)?))
}

/// `𝒮^{j,n}_{m1,m2}(z)` from the closed form; integer `j` only. Exact at
/// rational `z`, with removable singularities resolved by their limits.
pub fn s_norm(j: HalfInt, m1: HalfInt, m2: HalfInt, z: &BigRational) -> Result<Scalar> {
    check_m(j, m1)?;
    check_m(j, m2)?;
    let ji = int_j(j, "the closed form")?;
    let k = SK { j: ji, m1: m1.expect_int(), m2: m2.expect_int() };
    let v = eval_at(&format!("S({j};{m1},{m2}) at z = {z}"), &k, z)?;
    Ok(Scalar::Exact(ExactScalar::from_gauss(v) * inv_cc(j, m1, m2)))
}

/// `𝒮` at a complex `z` in floats.
pub fn s_norm_c(j: HalfInt, m1: HalfInt, m2: HalfInt, z: Complex64) -> Result<Complex64> {
    check_m(j, m1)?;
    check_m(j, m2)?;
    let ji = int_j(j, "the closed form")?;
    Ok(s_kernel(ji, m1.expect_int(), m2.expect_int(), &z)? * inv_cc(j, m1, m2).to_complex())
}

/// `𝒯^n_m(z) = i^{m-n} / ((z)^{((m-n)/2)} (z)^{((n-m)/2)})`.
///
/// When `(m-n)/2` is half-odd the value carries the transcendental factor
/// `1/κ(z)`; the exact result omits it and reports `true`.
pub fn t_norm(n: HalfInt, m: HalfInt, z: &BigRational) -> Result<(Scalar, bool)> {
    let flag = (m - n).to_i64().map(|e| e.rem_euclid(2) == 1).unwrap_or(false);
    let v = eval_at(&format!("T({n};{m}) at z = {z}"), &TK { n, m }, z)?;
    Ok((Scalar::Exact(ExactScalar::from_gauss(v)), flag))
}

/// `𝒯^n_m(z)` in floats, including `1/κ(z)` where it occurs.
pub fn t_norm_c(n: HalfInt, m: HalfInt, z: Complex64) -> Result<Complex64> {
    let (v, flag) = t_kernel(n, m, &z)?;
    if flag {
        Ok(v / kappa_c(z)?)
    } else {
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// blocks

fn swap(delta: (u8, u8)) -> (u8, u8) {
    (delta.1, delta.0)
}

/// Stage data: the argument of each simple factor in terms of `λ`.
fn stage_arg_label(kind: OperatorKind) -> &'static str {
    match kind {
        OperatorKind::A1 => "z = (λ1-λ2+1)/2",
        OperatorKind::A2 => "z = (λ1+1)/2",
        OperatorKind::A3 => "z = (λ1+λ2+1)/2",
        OperatorKind::A4 => "z = (λ2+1)/2",
        _ => "",
    }
}

fn stage_arg<R: Ring>(kind: OperatorKind, l1: &R, l2: &R) -> R {
    let half = R::from_rational(&rat(1, 2));
    let one = R::one();
    let v = match kind {
        OperatorKind::A1 => l1.clone() - l2.clone() + one,
        OperatorKind::A2 => l1.clone() + one,
        OperatorKind::A3 => l1.clone() + l2.clone() + one,
        OperatorKind::A4 => l2.clone() + one,
        _ => unreachable!("stage argument of a composite operator"),
    };
    v * half
}

/// The (column, row) parity sets of a simple factor.
fn stage_sets(kind: OperatorKind, delta: (u8, u8), j: HalfInt, n: HalfInt) -> (Vec<HalfInt>, Vec<HalfInt>) {
    match kind {
        OperatorKind::A1 => (m_set(delta, j, n), m_set(swap(delta), j, n)),
        OperatorKind::A2 => (m_set(swap(delta), j, n), m_set(swap(delta), j, n)),
        OperatorKind::A3 => (m_set(swap(delta), j, n), m_set(delta, j, n)),
        _ => (m_set(delta, j, n), m_set(delta, j, n)),
    }
}

fn uses_closed_form(delta: (u8, u8), j: HalfInt) -> bool {
    delta.0 == delta.1 && j.is_integer()
}

/// `𝒮` at a rational `z` through whichever form applies to `δ`.
fn s_block(ktype: (HalfInt, HalfInt), delta: (u8, u8), rows: &[HalfInt], cols: &[HalfInt], z: &ZArg) -> Result<BlockMatrix> {
    let (j, n) = ktype;
    let mut entries = Vec::with_capacity(rows.len());
    let norm = match z {
        ZArg::Exact(q) if !uses_closed_form(delta, j) => Some(q_factor(q, HalfInt::ZERO)?),
        _ => None,
    };
    for &r in rows {
        let mut row = Vec::with_capacity(cols.len());
        for &c in cols {
            let v = match z {
                ZArg::Exact(q) if uses_closed_form(delta, j) => s_norm(j, r, c, q)?,
                ZArg::Exact(q) => scalar_div(&s_entry_sum(j, n, r, c, q)?, norm.as_ref().expect("set above"))?,
                ZArg::Float(w) if uses_closed_form(delta, j) => Scalar::Float(s_norm_c(j, r, c, *w)?),
                ZArg::Float(w) => Scalar::Float(s_entry_sum_c(j, r, c, *w)? / q_factor_c(*w, HalfInt::ZERO)?),
            };
            row.push(v);
        }
        entries.push(row);
    }
    Ok(BlockMatrix::new(ktype, rows.to_vec(), cols.to_vec(), entries))
}

/// The sum form at a complex argument.
pub fn s_entry_sum_c(j: HalfInt, m3: HalfInt, m2: HalfInt, z: Complex64) -> Result<Complex64> {
    let (m, nn) = mn_matrices(j);
    let mut acc = Complex64::new(0.0, 0.0);
    for m4 in HalfInt::steps(-j, j) {
        let mn = m.get(m3, m4).to_complex() * nn.get(m4, m2).to_complex();
        if mn == Complex64::new(0.0, 0.0) {
            continue;
        }
        acc += mn * ExactScalar::i_pow(-m4.twice()).to_complex() * q_factor_c(z, m4)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
enum ZArg {
    Exact(BigRational),
    Float(Complex64),
}

impl std::fmt::Display for ZArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ZArg::Exact(q) => f.write_str(&crate::exact::fmt_rat(q)),
            ZArg::Float(w) => f.write_str(&crate::exact::fmt_complex(*w)),
        }
    }
}

fn stage_z(kind: OperatorKind, lambda: &Lambda) -> ZArg {
    match lambda {
        Lambda::Exact(a, b) => ZArg::Exact(stage_arg(kind, &Gauss::real(a.clone()), &Gauss::real(b.clone())).re),
        Lambda::Float(a, b) => ZArg::Float(stage_arg(kind, a, b)),
    }
}

fn stage_block(kind: OperatorKind, ktype: (HalfInt, HalfInt), chi: &Character) -> Result<BlockMatrix> {
    let (j, n) = ktype;
    let (cols, rows) = stage_sets(kind, chi.delta, j, n);
    let z = stage_z(kind, &chi.lambda);
    match kind {
        OperatorKind::A1 | OperatorKind::A3 => s_block(ktype, chi.delta, &rows, &cols, &z),
        _ => {
            let mut entries = vec![vec![Scalar::Exact(ExactScalar::zero()); cols.len()]; rows.len()];
            let mut omitted = Vec::new();
            for (i, &m) in rows.iter().enumerate() {
                entries[i][i] = match &z {
                    ZArg::Exact(q) => {
                        let (v, flag) = t_norm(n, m, q)?;
                        if flag && omitted.is_empty() {
                            omitted.push(q.clone());
                        }
                        v
                    }
                    ZArg::Float(w) => Scalar::Float(t_norm_c(n, m, *w)?),
                };
            }
            if matches!(z, ZArg::Float(_)) {
                for row in entries.iter_mut() {
                    for x in row.iter_mut() {
                        *x = Scalar::Float(x.to_complex());
                    }
                }
            }
            let mut b = BlockMatrix::new(ktype, rows, cols, entries);
            b.omitted_kappa = omitted;
            Ok(b)
        }
    }
}

fn stage_error(kind: OperatorKind, chi: &Character, e: MathError) -> MathError {
    match e {
        MathError::Pole(msg) => MathError::Pole(format!(
            "stage {kind} at {} = {} (λ = {}): {msg}",
            stage_arg_label(kind),
            stage_z(kind, &chi.lambda),
            chi.lambda
        )),
        other => other,
    }
}

fn check_ktype(ktype: (HalfInt, HalfInt), delta: (u8, u8)) -> Result<()> {
    let (j, n) = ktype;
    if j < HalfInt::ZERO || !crate::gkmod::k_condition(delta, j, n) {
        return Err(MathError::OutOfRange(format!("K-type ({j},{n}) does not occur for δ = {delta:?}")));
    }
    Ok(())
}

/// One normalized simple factor `A1..A4` on the K-type block.
pub fn simple_operator(kind: OperatorKind, ktype: (HalfInt, HalfInt), chi: &Character) -> Result<OperatorBlock> {
    if !kind.is_simple() {
        return Err(MathError::OutOfRange(format!("{kind} is not a simple factor")));
    }
    check_ktype(ktype, chi.delta)?;
    let block = stage_block(kind, ktype, chi).map_err(|e| stage_error(kind, chi, e))?;
    Ok(OperatorBlock { delta: chi.delta, lambda: chi.lambda.clone(), kind, block })
}

/// `A4·A3·A2·A1` on the K-type block.
pub fn long_operator_product(ktype: (HalfInt, HalfInt), chi: &Character) -> Result<OperatorBlock> {
    check_ktype(ktype, chi.delta)?;
    let mut acc: Option<BlockMatrix> = None;
    for kind in [OperatorKind::A1, OperatorKind::A2, OperatorKind::A3, OperatorKind::A4] {
        let b = stage_block(kind, ktype, chi).map_err(|e| stage_error(kind, chi, e))?;
        acc = Some(match acc {
            None => b,
            Some(a) => b.mul(&a)?,
        });
    }
    Ok(OperatorBlock {
        delta: chi.delta,
        lambda: chi.lambda.clone(),
        kind: OperatorKind::Long,
        block: acc.expect("four stages"),
    })
}

/// `Σ_{m2} 𝒮_{m1,m2}(z) 𝒮_{m2,m3}(1-z)` as a block over `M(j,n;δ)`.
pub fn inversion_product(j: HalfInt, n: HalfInt, delta: (u8, u8), z: &BigRational) -> Result<BlockMatrix> {
    let outer = m_set(delta, j, n);
    let inner = m_set(swap(delta), j, n);
    let w = BigRational::one() - z;
    let left = s_block((j, n), swap(delta), &outer, &inner, &ZArg::Exact(z.clone()))?;
    let right = s_block((j, n), delta, &inner, &outer, &ZArg::Exact(w))?;
    left.mul(&right)
}

/// Whether the inversion identity holds exactly (float results within 1e-9).
/// It holds for integer `j`; for half-integer `j` the product is `cot²(πz)` times the identity.
pub fn inversion_check(j: HalfInt, n: HalfInt, delta: (u8, u8), z: &BigRational) -> Result<bool> {
    Ok(inversion_product(j, n, delta, z)?.is_identity(1e-9))
}

// ---------------------------------------------------------------------------
// Mellin transform

#[derive(Clone, Debug)]
pub struct MellinReport {
    pub z: f64,
    pub m: HalfInt,
    pub numeric: f64,
    pub expected: f64,
    pub rel_err: f64,
    pub error_estimate: f64,
}

impl MellinReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.rel_err <= tol
    }
}

/// `∫_0^1 x^{z-1} cos(2m arcsin√(1-x)) / √(x(1-x)) dx` by double-exponential
/// quadrature after `x = sin²u`, compared with `Q(z,m)`.
pub fn mellin_numeric(z: f64, m: HalfInt) -> Result<MellinReport> {
    if z <= 0.5 {
        return Err(MathError::OutOfRange(format!("Mellin integral needs z > 1/2, got {z}")));
    }
    let mf = m.to_f64();
    let half_pi = std::f64::consts::FRAC_PI_2;
    let f = |u: f64| 2.0 * u.sin().powf(2.0 * z - 2.0) * (2.0 * mf * (half_pi - u)).cos();
    let out = quadrature::integrate(f, 0.0, half_pi, 1e-14);
    if !out.integral.is_finite() {
        return Err(MathError::Quadrature(format!("non-finite integral at z = {z}, m = {m}")));
    }
    let expected = match BigRational::from_float(z).and_then(|q| HalfInt::from_rational(&q)) {
        Some(h) => q_factor_exact(h, m)?.to_complex().re,
        None => q_factor_c(Complex64::new(z, 0.0), m)?.re,
    };
    // Q vanishes at some (z, m), e.g. z = 1, m = 1; fall back to absolute error there.
    let rel_err = (out.integral - expected).abs() / expected.abs().max(1.0);
    Ok(MellinReport { z, m, numeric: out.integral, expected, rel_err, error_estimate: out.error_estimate })
}

/// Agreement of the quadrature with `Q(z,m)` to `1e-8`, relative when `|Q| >= 1`.
pub fn mellin_numeric_check(z: f64, m: HalfInt) -> Result<bool> {
    Ok(mellin_numeric(z, m)?.passed(1e-8))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(x: i64) -> HalfInt {
        HalfInt::int(x)
    }

    #[test]
    fn q_examples() {
        let pi = ExactScalar::sqrt_pi_pow(2);
        assert_eq!(q_factor_exact(h(1), h(0)).unwrap(), pi);
        assert_eq!(
            q_factor_exact(HalfInt::from_twice(3), HalfInt::HALF).unwrap(),
            pi * ExactScalar::from_rational(rat(1, 2))
        );
        assert!(q_factor_exact(HalfInt::HALF, h(0)).unwrap_err().is_pole());
    }

    #[test]
    fn q_matches_legendre_duplication() {
        for tw in [3, 5, 7, 9, 11] {
            let z = HalfInt::from_twice(tw);
            let want = ExactScalar::sqrt_pi_pow(1)
                * gamma_half(z - HalfInt::HALF).unwrap().try_div(&gamma_half(z).unwrap()).unwrap();
            assert_eq!(q_factor_exact(z, h(0)).unwrap(), want);
        }
    }

    #[test]
    fn q_float_agrees_with_exact() {
        for (tw, m) in [(4, 1), (5, 3), (7, 0)] {
            let z = HalfInt::from_twice(tw);
            let m = HalfInt::from_twice(m);
            let e = q_factor_exact(z, m).unwrap().to_complex();
            let f = q_factor_c(Complex64::new(z.to_f64(), 0.0), m).unwrap();
            assert!((e - f).norm() < 1e-9 * e.norm().max(1.0));
        }
    }

    #[test]
    fn mn_inverse_small() {
        for tw in 0..=6 {
            let (m, n) = mn_matrices(HalfInt::from_twice(tw));
            assert!(m.mul(&n).unwrap().is_identity(0.0));
        }
    }

    #[test]
    fn t_norm_example() {
        let z = rat(7, 3);
        let (t, flag) = t_norm(h(2), h(0), &z).unwrap();
        assert!(!flag);
        let want = -(z.clone() - rat_int(1)) / z;
        assert_eq!(t, Scalar::Exact(ExactScalar::from_rational(want)));
        assert_eq!(t_norm(h(3), h(3), &rat(2, 5)).unwrap().0, Scalar::Exact(ExactScalar::one()));
    }

    #[test]
    fn s_trivial_cases() {
        let z = rat(7, 3);
        assert_eq!(s_norm(h(0), h(0), h(0), &z).unwrap(), Scalar::Exact(ExactScalar::one()));
        let zz = rat(5, 2);
        assert_eq!(
            s_entry_sum(h(0), h(4), h(0), h(0), &zz).unwrap(),
            q_factor(&zz, h(0)).unwrap()
        );
    }

    #[test]
    fn closed_form_matches_sum() {
        for (j, m1, m2, z) in [(1, 1, 1, rat(2, 1)), (2, 0, -2, rat(3, 2)), (2, 2, 0, rat(5, 2))] {
            let a = s_entry_3f2(h(j), h(j), h(m1), h(m2), &z).unwrap();
            let b = s_entry_sum(h(j), h(j), h(m1), h(m2), &z).unwrap();
            assert_eq!(a, b, "j={j} m1={m1} m2={m2}");
        }
    }

    #[test]
    fn inversion_small() {
        assert!(inversion_check(h(2), h(0), (0, 0), &rat(7, 2)).unwrap());
        assert!(inversion_check(h(3), h(1), (1, 1), &rat(5, 2)).unwrap());
        assert!(inversion_check(h(2), h(0), (0, 0), &rat(1, 3)).unwrap());
    }

    #[test]
    fn half_integer_inversion_is_scaled() {
        // for half-odd m4 the Q products differ from the m4 = 0 normalization by cot²(πz)
        for (z, cot2) in [(rat(1, 3), 1.0 / 3.0), (rat(1, 6), 3.0), (rat(2, 7), 0.635963805975586)] {
            for (tj, tn) in [(1, 1), (3, -1), (3, 3)] {
                let (j, n) = (HalfInt::from_twice(tj), HalfInt::from_twice(tn));
                let p = inversion_product(j, n, (1, 0), &z).unwrap();
                for (a, &r) in p.rows.iter().enumerate() {
                    for (b, &c) in p.cols.iter().enumerate() {
                        let want = if r == c { cot2 } else { 0.0 };
                        let got = p.entries[a][b].to_complex();
                        assert!((got - want).norm() < 1e-9, "z={z} j={j} n={n} ({r},{c}): {got}");
                    }
                }
            }
        }
    }

    #[test]
    fn mellin_pi() {
        let r = mellin_numeric(1.0, h(0)).unwrap();
        assert!(r.passed(1e-8), "{r:?}");
    }
}
