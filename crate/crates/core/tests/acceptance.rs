//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints its PASS/FAIL line.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sp4_intertwine::error::MathError;
use sp4_intertwine::exact::{rat, Character, ExactScalar, Gauss, HalfInt, RadicalSum};
use sp4_intertwine::gkmod::{basis, ktypes, DlMemo, KappaTables, LinComb};
use sp4_intertwine::intertwine::theorem::{epsilon, genfun_constant, hg_constant_term, long_operator_genfun, HG};
use sp4_intertwine::intertwine::{
    inversion_check, long_operator_product, mellin_numeric, mn_matrices, s_entry_3f2, s_entry_sum, s_norm,
};
use sp4_intertwine::sp4::{
    chi_minus, hc_omega2, iwasawa_sl2, iwasawa_sl2_f64, omega2_word, weyl_on_lambda, IwasawaFactors, SimpleRoot,
    WeylWord,
};
use sp4_intertwine::verify::random_generator_pair;
use sp4_intertwine::wigner::{
    jacobi_hyp, jacobi_sum, little_d, mat2_mul, product_expand, wigner_d_f64, wigner_matrix_f64, wigner_via_jacobi,
    Angle, EulerAngles, WignerIndex,
};

type Outcome = Result<String, String>;

fn h(x: i64) -> HalfInt {
    HalfInt::int(x)
}

fn half_steps(max: HalfInt) -> impl Iterator<Item = HalfInt> {
    HalfInt::half_steps(HalfInt::ZERO, max)
}

fn err(e: MathError) -> String {
    e.to_string()
}

fn z_grid() -> Vec<BigRational> {
    [3, 5, 7, 9, 11].iter().map(|&k| rat(k, 2)).collect()
}

fn change_of_basis() -> Outcome {
    let mut n = 0;
    for j in half_steps(h(6)) {
        let (m, inv) = mn_matrices(j);
        if !m.mul(&inv).map_err(err)?.is_identity(0.0) {
            return Err(format!("M·N ≠ 1 at j = {j}"));
        }
        n += 1;
    }
    Ok(format!("{n} values of j"))
}

fn closed_form() -> Outcome {
    let mut n = 0;
    for j in half_steps(h(4)).filter(|j| j.is_integer()) {
        for z in z_grid() {
            for m1 in HalfInt::steps(-j, j) {
                for m2 in HalfInt::steps(-j, j).filter(|m2| (m1 - *m2).expect_int() % 2 == 0) {
                    let a = s_entry_3f2(j, j, m1, m2, &z).map_err(err)?;
                    let b = s_entry_sum(j, j, m1, m2, &z).map_err(err)?;
                    if a != b {
                        return Err(format!("j={j} z={z} ({m1},{m2}): {a} vs {b}"));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} entries"))
}

fn inversion() -> Outcome {
    let mut n = 0;
    for delta in [(0, 0), (1, 1)] {
        for kt in ktypes(delta, h(4), h(4)) {
            for z in [rat(7, 2), rat(1, 3), rat(-5, 4)] {
                if !inversion_check(kt.j, kt.n, delta, &z).map_err(err)? {
                    return Err(format!("δ={delta:?} (j,n)=({},{}) z={z}", kt.j, kt.n));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} blocks"))
}

fn theorem() -> Outcome {
    let mut eps = BTreeSet::new();
    let mut consts = BTreeSet::new();
    let mut n = 0;
    for delta in [(0, 0), (1, 1)] {
        for (a, b) in [((9, 2), (5, 2)), ((7, 2), (3, 2)), ((13, 2), (3, 2))] {
            let chi = Character::exact(delta, rat(a.0, a.1), rat(b.0, b.1)).map_err(err)?;
            for kt in ktypes(delta, h(3), h(3)).into_iter().filter(|k| k.j.is_integer()) {
                let key = (kt.j, kt.n);
                let p = long_operator_product(key, &chi).map_err(err)?;
                let g = long_operator_genfun(key, &chi).map_err(err)?;
                let c = genfun_constant(&g.block, &p.block)
                    .map_err(|e| format!("δ={delta:?} λ={:?} (j,n)=({},{}): {e}", chi.lambda, kt.j, kt.n))?;
                eps.insert(epsilon(kt.j.expect_int(), kt.n.expect_int(), delta));
                consts.insert(c.to_string());
                n += 1;
            }
        }
    }
    if eps.len() != 2 {
        return Err(format!("only ε ∈ {eps:?} exercised"));
    }
    Ok(format!("{n} blocks, ε ∈ {eps:?}, constants {consts:?}"))
}

fn hg() -> Outcome {
    let mut n = 0;
    for j in 0..=3i64 {
        for z in z_grid() {
            for m1 in -j..=j {
                for m2 in (-j..=j).filter(|m2| (m1 - m2) % 2 == 0) {
                    let want = s_norm(h(j), h(m1), h(m2), &z).map_err(err)?;
                    for w in [HG::H, HG::G] {
                        let got = hg_constant_term(w, j, m1, m2, &z).map_err(err)?;
                        if want.exact() != Some(&got) {
                            return Err(format!("{w:?} j={j} z={z} ({m1},{m2}): {got} vs {want}"));
                        }
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} entries"))
}

fn casimir() -> Outcome {
    let w = omega2_word();
    let mut n = 0;
    let mut scalars = Vec::new();
    for (a, b) in [((1, 2), (1, 3)), ((2, 1), (1, 1)), ((5, 1), (3, 1))] {
        let (l1, l2) = (rat(a.0, a.1), rat(b.0, b.1));
        let g = |q: &BigRational| Gauss::real(q.clone());
        let want = hc_omega2(&g(&l1), &g(&l2));
        let formula = Gauss::real((&l1 * &l1 + &l2 * &l2 - rat(5, 1)) / rat(12, 1));
        if want != formula {
            return Err(format!("Ω2 image {want} ≠ (λ1²+λ2²-5)/12 at λ=({l1},{l2})"));
        }
        for word in WeylWord::all_up_to(4) {
            let (x, y) = weyl_on_lambda(&word, (g(&l1), g(&l2)));
            if hc_omega2(&x, &y) != want {
                return Err(format!("Ω2 image not Weyl invariant under {word:?}"));
            }
        }
        let want = RadicalSum::from_exact(&ExactScalar::from_gauss(want));
        for delta in [(0, 0), (1, 1), (1, 0), (0, 1)] {
            let chi = Character::exact(delta, l1.clone(), l2.clone()).map_err(err)?;
            let mut dl = DlMemo::new(chi.lambda.in_ring::<RadicalSum>(), KappaTables::Corrected);
            for v in basis(delta, h(4), h(4)) {
                let got = dl.uword(&w, &LinComb::basis(v)).map_err(err)?;
                if got.as_multiple_of(&v) != Some(want.clone()) {
                    return Err(format!("λ=({l1},{l2}) δ={delta:?} {v}: {got:?}"));
                }
                n += 1;
            }
        }
        scalars.push(want.to_string());
    }
    Ok(format!("{n} basis vectors, scalars {scalars:?}"))
}

fn bracket() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let chi = Character::exact((0, 0), rat(9, 2), rat(5, 2)).map_err(err)?;
    let mut dl = DlMemo::new(chi.lambda.in_ring::<RadicalSum>(), KappaTables::Corrected);
    let vs = basis(chi.delta, h(2), h(2));
    for _ in 0..20 {
        let ((xn, x), (yn, y)) = random_generator_pair(&mut rng);
        let xy = x.bracket(&y);
        for v in &vs {
            let b = LinComb::basis(*v);
            let (xb, yb) = (dl.apply(&x, &b).map_err(err)?, dl.apply(&y, &b).map_err(err)?);
            let lhs = dl.apply(&x, &yb).map_err(err)?.sub(&dl.apply(&y, &xb).map_err(err)?);
            let rhs = dl.apply(&xy, &b).map_err(err)?;
            if !lhs.sub(&rhs).is_empty() {
                return Err(format!("[{xn}, {yn}] on {v}"));
            }
        }
    }
    Ok(format!("20 pairs on {} basis vectors", vs.len()))
}

fn random_angles(rng: &mut impl Rng) -> EulerAngles {
    let mut a = || rng.gen_range(0.1..3.0);
    EulerAngles::float(a(), a(), a(), a())
}

fn wigner_layer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut points = 0;
    while points < 50 {
        let mut q = || Gauss::real(rat(rng.gen_range(-9..=9), rng.gen_range(1..=7)));
        let (a, b, x) = (q(), q(), q());
        let mut hit_pole = false;
        for n in 0..=10u64 {
            match jacobi_sum(n, &a, &b, &x) {
                Ok(v) if v != jacobi_hyp(n, &a, &b, &x) => return Err(format!("Jacobi n={n} at ({a},{b},{x})")),
                Ok(_) => {}
                Err(e) if e.is_pole() => hit_pole = true,
                Err(e) => return Err(err(e)),
            }
        }
        if !hit_pole {
            points += 1;
        }
    }
    for j in half_steps(h(5)) {
        for th in [0.3, 1.1, 2.0, 2.9] {
            for m1 in HalfInt::steps(-j, j) {
                for m2 in HalfInt::steps(-j, j) {
                    let idx = WignerIndex::new(j, j, m1, m2).map_err(err)?;
                    let a = little_d(j, m1, m2, Angle::Float(th)).to_complex();
                    let b = wigner_via_jacobi(&idx, Angle::Float(th)).map_err(err)?.to_complex();
                    if (a - b).norm() > 1e-12 {
                        return Err(format!("little d j={j} ({m1},{m2}) θ={th}"));
                    }
                }
            }
        }
    }
    let zero = Complex64::new(0.0, 0.0);
    for j in half_steps(h(3)) {
        let n = j;
        for _ in 0..5 {
            let (g1, g2) = (random_angles(&mut rng), random_angles(&mut rng));
            let d1 = wigner_matrix_f64(j, n, &g1);
            let d2 = wigner_matrix_f64(j, n, &g2);
            let g12 = EulerAngles::from_u2_matrix(&mat2_mul(&g1.u2_matrix(), &g2.u2_matrix()));
            let d12 = wigner_matrix_f64(j, n, &g12);
            let dim = d1.len();
            for r in 0..dim {
                for c in 0..dim {
                    let uu: Complex64 = (0..dim).map(|k| d1[r][k] * d1[c][k].conj()).fold(zero, |a, b| a + b);
                    let want = if r == c { 1.0 } else { 0.0 };
                    if (uu - want).norm() > 1e-10 {
                        return Err(format!("unitarity j={j} ({r},{c})"));
                    }
                    let prod: Complex64 = (0..dim).map(|k| d1[r][k] * d2[k][c]).fold(zero, |a, b| a + b);
                    if (prod - d12[r][c]).norm() > 1e-10 {
                        return Err(format!("multiplicativity j={j} ({r},{c})"));
                    }
                }
            }
        }
    }
    let mut cg = 0;
    for tj in 0..=6 {
        let j1 = HalfInt::from_twice(tj);
        let g = random_angles(&mut rng);
        for a in HalfInt::steps(-j1, j1) {
            for b in HalfInt::steps(-j1, j1) {
                for c in -1..=1 {
                    for d in -1..=1 {
                        let w1 = WignerIndex::new(j1, j1, a, b).map_err(err)?;
                        let w2 = WignerIndex::ints(1, 1, c, d).map_err(err)?;
                        let lhs = wigner_d_f64(&w1, &g) * wigner_d_f64(&w2, &g);
                        let rhs: Complex64 = product_expand(&w1, &w2)
                            .map_err(err)?
                            .iter()
                            .map(|(w, k)| k.to_complex() * wigner_d_f64(w, &g))
                            .fold(zero, |x, y| x + y);
                        if (lhs - rhs).norm() > 1e-10 * lhs.norm().max(1.0) {
                            return Err(format!("CG expansion {w1}·{w2}"));
                        }
                        cg += 1;
                    }
                }
            }
        }
    }
    Ok(format!("50 Jacobi points, {cg} CG products"))
}

fn iwasawa() -> Outcome {
    for alpha in [SimpleRoot::A1, SimpleRoot::A2] {
        for t in [rat(3, 4), rat(5, 12), rat(8, 15)] {
            match iwasawa_sl2(alpha, &t) {
                IwasawaFactors::Exact(f) => {
                    if f.product() != chi_minus(alpha, &Gauss::real(t.clone())) {
                        return Err(format!("exact {alpha:?} t={t}"));
                    }
                }
                IwasawaFactors::Float(_) => return Err(format!("t={t} fell back to floats")),
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let t: f64 = rng.gen_range(-3.0..3.0);
            let f = iwasawa_sl2_f64(alpha, t);
            let d = f.product().max_abs_diff(&chi_minus(alpha, &Complex64::new(t, 0.0)));
            if d > 1e-12 {
                return Err(format!("float {alpha:?} t={t}: {d:e}"));
            }
        }
    }
    Ok("6 exact, 20 float".into())
}

fn mellin() -> Outcome {
    let mut worst: f64 = 0.0;
    for z in [1.0, 1.5, 2.0, 2.5] {
        for tm in 0..=3 {
            let m = HalfInt::from_twice(tm);
            let r = mellin_numeric(z, m).map_err(err)?;
            if !r.passed(1e-8) {
                return Err(format!("z={z} m={m}: {} vs {} ({:e})", r.numeric, r.expected, r.rel_err));
            }
            worst = worst.max(r.rel_err);
        }
    }
    Ok(format!("worst error {worst:.1e}"))
}

fn parity() -> Outcome {
    let mut n = 0;
    for j in half_steps(h(4)) {
        for m3 in HalfInt::steps(-j, j) {
            for m2 in HalfInt::steps(-j, j) {
                if (j.twice() + (m3 - m2).expect_int()).rem_euclid(2) == 0 {
                    continue;
                }
                for z in z_grid() {
                    let v = s_entry_sum(j, j, m3, m2, &z).map_err(err)?;
                    if !v.exact().is_some_and(|e| e.is_zero()) {
                        return Err(format!("j={j} ({m3},{m2}) z={z}: {v}"));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} entries"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 11] = [
        ("change-of-basis inversion, j ≤ 6", change_of_basis, 5),
        ("closed form = finite sum, j ≤ 4", closed_form, 30),
        ("S(z)S(1-z) = 1, j ≤ 4", inversion, 30),
        ("generating function = four-factor product, j ≤ 3", theorem, 180),
        ("H/G constant terms = S, j ≤ 3", hg, 20),
        ("Casimir Ω2 scalar, j ≤ 4", casimir, 120),
        ("bracket homomorphism, j ≤ 2", bracket, 60),
        ("Wigner layer", wigner_layer, 30),
        ("Iwasawa factorization", iwasawa, 5),
        ("Mellin quadrature, rel. err ≤ 1e-8", mellin, 10),
        ("parity vanishing, j ≤ 4", parity, 5),
    ];
    let mut failed = 0;
    for (k, (name, f, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let dt = t.elapsed();
        let slow = dt > Duration::from_secs(*budget);
        let (ok, detail) = match out {
            Ok(d) if slow => (false, format!("over the time budget; {d}")),
            Ok(d) => (true, d),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        let status = if ok { "PASS" } else { "FAIL" };
        println!("{status} {:>2}. {name} [{:.1}s / {budget}s] {detail}", k + 1, dt.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
