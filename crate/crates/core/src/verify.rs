//! Invariant suites behind `sp4 verify`. Every cell is independent and the
//! cells of all suites run on a rayon pool.

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{MathError, Result};
use crate::exact::{rat, Character, Gauss, HalfInt, Lambda, RadicalSum, Scalar};
use crate::gkmod::{basis, dl_uword, ktypes, DlMemo, KappaTables, LinComb};
use crate::intertwine::theorem::{genfun_constant, hg_constant_term, long_operator_genfun_order, HG};
use crate::intertwine::{
    inversion_check, long_operator_product, mellin_numeric, mn_matrices, s_entry_3f2, s_entry_sum, s_norm,
};
use crate::sp4::{chevalley, h1, h2, hc_omega2, omega2_word, GMat, RootLabel};
use crate::wigner::{jacobi_hyp, jacobi_sum, little_d, wigner_via_jacobi, Angle, WignerIndex};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub chi: Character,
    pub j_max: HalfInt,
    pub deep: bool,
    pub seed: u64,
    pub trunc_order: Option<i64>,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Pass,
    Fail(String),
    Error(MathError),
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub label: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cells: Vec<Cell>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.cells.iter().filter(|c| matches!(c.outcome, Outcome::Pass)).count()
    }

    pub fn failed(&self) -> usize {
        self.cells.iter().filter(|c| matches!(c.outcome, Outcome::Fail(_))).count()
    }

    pub fn errors(&self) -> usize {
        self.cells.iter().filter(|c| matches!(c.outcome, Outcome::Error(_))).count()
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0 && self.errors() == 0
    }
}

type Job = Box<dyn Fn() -> Result<std::result::Result<(), String>> + Send + Sync>;

struct Suite {
    name: &'static str,
    jobs: Vec<(String, Job)>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, jobs: Vec::new() }
    }

    fn add(&mut self, label: String, f: impl Fn() -> Result<std::result::Result<(), String>> + Send + Sync + 'static) {
        self.jobs.push((label, Box::new(f)));
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn half_steps(max: HalfInt) -> impl Iterator<Item = HalfInt> {
    HalfInt::half_steps(HalfInt::ZERO, max)
}

fn symmetric(delta: (u8, u8)) -> bool {
    delta == (0, 0) || delta == (1, 1)
}

fn z_grid() -> Vec<BigRational> {
    [3, 5, 7, 9, 11].iter().map(|&k| rat(k, 2)).collect()
}

fn change_of_basis(cfg: &VerifyConfig) -> Suite {
    let mut s = Suite::new("change-of-basis M·N = 1");
    let top = if cfg.deep { HalfInt::int(6) } else { cfg.j_max };
    for j in half_steps(top) {
        s.add(format!("j={j}"), move || {
            let (m, n) = mn_matrices(j);
            Ok(check(m.mul(&n)?.is_identity(0.0), || "M·N is not the identity".into()))
        });
    }
    s
}

fn closed_form(cfg: &VerifyConfig) -> Suite {
    let mut s = Suite::new("closed form = finite sum");
    let top = if cfg.deep { HalfInt::int(4) } else { cfg.j_max };
    for j in half_steps(top).filter(|j| j.is_integer()) {
        for z in z_grid() {
            s.add(format!("j={j} z={z}"), move || {
                for m1 in HalfInt::steps(-j, j) {
                    for m2 in HalfInt::steps(-j, j).filter(|m2| (m1 - *m2).expect_int() % 2 == 0) {
                        let a = s_entry_3f2(j, j, m1, m2, &z)?;
                        let b = s_entry_sum(j, j, m1, m2, &z)?;
                        if a != b {
                            return Ok(Err(format!("({m1},{m2}): {a} vs {b}")));
                        }
                    }
                }
                Ok(Ok(()))
            });
        }
    }
    s
}

fn parity(cfg: &VerifyConfig) -> Suite {
    let mut s = Suite::new("parity vanishing of S");
    let top = if cfg.deep { HalfInt::int(4) } else { cfg.j_max };
    for j in half_steps(top) {
        s.add(format!("j={j}"), move || {
            for m3 in HalfInt::steps(-j, j) {
                for m2 in HalfInt::steps(-j, j) {
                    if (j.twice() + (m3 - m2).expect_int()).rem_euclid(2) == 0 {
                        continue;
                    }
                    for z in [rat(5, 2), rat(7, 2)] {
                        let v = s_entry_sum(j, j, m3, m2, &z)?;
                        if !v.exact().is_some_and(|e| e.is_zero()) {
                            return Ok(Err(format!("S({m3},{m2})({z}) = {v}")));
                        }
                    }
                }
            }
            Ok(Ok(()))
        });
    }
    s
}

fn inversion(cfg: &VerifyConfig) -> Suite {
    let mut s = Suite::new("inversion S(z)S(1-z) = 1");
    let delta = cfg.chi.delta;
    if !symmetric(delta) {
        return s;
    }
    let top = if cfg.deep { HalfInt::int(4) } else { cfg.j_max };
    for kt in ktypes(delta, top, top) {
        for z in [rat(7, 2), rat(1, 3), rat(-5, 4)] {
            let (j, n) = (kt.j, kt.n);
            s.add(format!("(j,n)=({j},{n}) z={z}"), move || {
                Ok(check(inversion_check(j, n, delta, &z)?, || "not the identity".into()))
            });
        }
    }
    s
}

fn theorem(cfg: &VerifyConfig) -> Suite {
    let mut s = Suite::new("generating function = product");
    if !symmetric(cfg.chi.delta) {
        return s;
    }
    for kt in ktypes(cfg.chi.delta, cfg.j_max, cfg.j_max).into_iter().filter(|k| k.j.is_integer()) {
        let chi = cfg.chi.clone();
        let order = cfg.trunc_order;
        s.add(format!("(j,n)=({},{})", kt.j, kt.n), move || {
            let kt = (kt.j, kt.n);
            let p = long_operator_product(kt, &chi)?;
            let g = long_operator_genfun_order(kt, &chi, order)?;
            match genfun_constant(&g.block, &p.block) {
                Ok(_) => Ok(Ok(())),
                Err(MathError::Inconsistent(m)) => Ok(Err(m)),
                Err(e) => Err(e),
            }
        });
    }
    s
}

fn hg(cfg: &VerifyConfig) -> Suite {
    let mut s = Suite::new("H/G constant terms = S");
    let top = if cfg.deep { 3 } else { cfg.j_max.to_i64().unwrap_or(cfg.j_max.twice() / 2) };
    for j in 0..=top.min(3) {
        for z in z_grid() {
            s.add(format!("j={j} z={z}"), move || {
                let jj = HalfInt::int(j);
                for m1 in -j..=j {
                    for m2 in (-j..=j).filter(|m2| (m1 - m2) % 2 == 0) {
                        let want = s_norm(jj, HalfInt::int(m1), HalfInt::int(m2), &z)?;
                        for w in [HG::H, HG::G] {
                            let got = Scalar::Exact(hg_constant_term(w, j, m1, m2, &z)?);
                            if got != want {
                                return Ok(Err(format!("{w:?}({m1},{m2}) = {got}, S = {want}")));
                            }
                        }
                    }
                }
                Ok(Ok(()))
            });
        }
    }
    s
}

fn casimir(cfg: &VerifyConfig) -> Suite {
    let mut s = Suite::new("Casimir Ω2 acts by (λ1²+λ2²-5)/12");
    let top = if cfg.deep { HalfInt::int(4) } else { cfg.j_max };
    for v in basis(cfg.chi.delta, top, top) {
        let lambda = cfg.chi.lambda.clone();
        s.add(v.to_string(), move || casimir_cell(&v, &lambda));
    }
    s
}

fn casimir_cell(v: &WignerIndex, lambda: &Lambda) -> Result<std::result::Result<(), String>> {
    let w = omega2_word();
    match lambda {
        Lambda::Exact(..) => {
            let l = lambda.in_ring::<RadicalSum>();
            let got = dl_uword(&w, &LinComb::basis(*v), &l, KappaTables::Corrected)?;
            let want = hc_omega2(&l.0, &l.1);
            Ok(check(got.as_multiple_of(v) == Some(want.clone()), || format!("{got:?} ≠ {want}·v")))
        }
        Lambda::Float(..) => {
            let l = lambda.in_ring::<Complex64>();
            let got = dl_uword(&w, &LinComb::basis(*v), &l, KappaTables::Corrected)?;
            let want = hc_omega2(&l.0, &l.1);
            let off: f64 = got.iter().filter(|(k, _)| *k != v).map(|(_, c)| c.norm()).sum();
            let err = (got.get(v) - want).norm() + off;
            Ok(check(err <= 1e-9 * want.norm().max(1.0), || format!("deviation {err:e}")))
        }
    }
}

/// `H1, H2` and the eight root vectors `X_α`.
pub fn generators() -> Vec<(String, GMat<Gauss>)> {
    let mut gens = vec![("H1".to_string(), h1()), ("H2".to_string(), h2())];
    gens.extend(RootLabel::all().into_iter().map(|r| (format!("X_{r}"), chevalley::<Gauss>(r))));
    gens
}

/// A random ordered pair of distinct generators.
pub fn random_generator_pair(rng: &mut impl Rng) -> ((String, GMat<Gauss>), (String, GMat<Gauss>)) {
    let gens = generators();
    let a = rng.gen_range(0..gens.len());
    let b = (a + rng.gen_range(1..gens.len())) % gens.len();
    (gens[a].clone(), gens[b].clone())
}

fn bracket(cfg: &VerifyConfig) -> Suite {
    let mut s = Suite::new("bracket [dl X, dl Y] = dl [X,Y]");
    if cfg.chi.lambda.as_exact().is_none() {
        return s;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let top = cfg.j_max.min(HalfInt::int(2));
    for k in 0..20 {
        let ((xn, x), (yn, y)) = random_generator_pair(&mut rng);
        let chi = cfg.chi.clone();
        s.add(format!("pair {k}: [{xn}, {yn}]"), move || {
            let mut dl = DlMemo::new(chi.lambda.in_ring::<RadicalSum>(), KappaTables::Corrected);
            let xy = x.bracket(&y);
            for v in basis(chi.delta, top, top) {
                let b = LinComb::basis(v);
                let (xb, yb) = (dl.apply(&x, &b)?, dl.apply(&y, &b)?);
                let lhs = dl.apply(&x, &yb)?.sub(&dl.apply(&y, &xb)?);
                let rhs = dl.apply(&xy, &b)?;
                if !lhs.sub(&rhs).is_empty() {
                    return Ok(Err(format!("fails on {v}")));
                }
            }
            Ok(Ok(()))
        });
    }
    s
}

fn wigner_layer(cfg: &VerifyConfig) -> Suite {
    let mut s = Suite::new("Wigner layer");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    for k in 0..50 {
        let mut q = || Gauss::real(rat(rng.gen_range(-9..=9), rng.gen_range(1..=7)));
        let (a, b, x) = (q(), q(), q());
        s.add(format!("jacobi point {k}"), move || {
            for n in 0..=10u64 {
                match jacobi_sum(n, &a, &b, &x) {
                    Ok(v) if v != jacobi_hyp(n, &a, &b, &x) => return Ok(Err(format!("n={n}"))),
                    Err(e) if !e.is_pole() => return Err(e),
                    _ => {}
                }
            }
            Ok(Ok(()))
        });
    }
    let top = if cfg.deep { HalfInt::int(5) } else { cfg.j_max };
    for j in half_steps(top) {
        s.add(format!("little d via Jacobi j={j}"), move || {
            for th in [0.3, 1.1, 2.0, 2.9] {
                for m1 in HalfInt::steps(-j, j) {
                    for m2 in HalfInt::steps(-j, j) {
                        let idx = WignerIndex::new(j, j, m1, m2)?;
                        let a = little_d(j, m1, m2, Angle::Float(th)).to_complex();
                        let b = wigner_via_jacobi(&idx, Angle::Float(th))?.to_complex();
                        if (a - b).norm() > 1e-12 {
                            return Ok(Err(format!("d({m1},{m2})({th})")));
                        }
                    }
                }
            }
            Ok(Ok(()))
        });
    }
    s
}

fn mellin(cfg: &VerifyConfig) -> Suite {
    let mut s = Suite::new("Mellin quadrature = Q");
    let zs: &[f64] = if cfg.deep { &[1.0, 1.5, 2.0, 2.5, 3.0, 4.5] } else { &[1.0, 1.5, 2.0, 2.5] };
    for &z in zs {
        for tm in 0..=3 {
            let m = HalfInt::from_twice(tm);
            s.add(format!("z={z} m={m}"), move || {
                let r = mellin_numeric(z, m)?;
                Ok(check(r.passed(1e-8), || format!("relative error {:e}", r.rel_err)))
            });
        }
    }
    s
}

/// Suite keys accepted by [`run_suite`], in report order.
pub const SUITES: [&str; 10] = [
    "change-of-basis",
    "closed-form",
    "parity",
    "inversion",
    "theorem",
    "hg",
    "casimir",
    "bracket",
    "wigner",
    "mellin",
];

fn build(key: &str, cfg: &VerifyConfig) -> Option<Suite> {
    Some(match key {
        "change-of-basis" => change_of_basis(cfg),
        "closed-form" => closed_form(cfg),
        "parity" => parity(cfg),
        "inversion" => inversion(cfg),
        "theorem" => theorem(cfg),
        "hg" => hg(cfg),
        "casimir" => casimir(cfg),
        "bracket" => bracket(cfg),
        "wigner" => wigner_layer(cfg),
        "mellin" => mellin(cfg),
        _ => return None,
    })
}

/// Runs one suite by key; `None` for an unknown key.
pub fn run_suite(key: &str, cfg: &VerifyConfig) -> Option<SuiteReport> {
    let suite = build(key, cfg)?;
    let cells = suite
        .jobs
        .par_iter()
        .map(|(label, job)| {
            let outcome = match job() {
                Ok(Ok(())) => Outcome::Pass,
                Ok(Err(m)) => Outcome::Fail(m),
                Err(e) => Outcome::Error(e),
            };
            Cell { label: label.clone(), outcome }
        })
        .collect();
    Some(SuiteReport { name: suite.name, cells })
}

/// Runs every suite and returns one report per suite.
pub fn run_suites(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    SUITES.iter().filter_map(|k| run_suite(k, cfg)).collect()
}
