use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use sp4_intertwine::exact::{pochhammer, rat, ExactScalar, Field, Gauss, HalfInt, RadicalSum, Ring};
use sp4_intertwine::gkmod::{basis, DlMemo, KappaTables, LinComb};
use sp4_intertwine::intertwine::{q_factor_c, q_factor_exact};
use sp4_intertwine::sp4::{chevalley, h1, h2, GMat, RootLabel};
use sp4_intertwine::wigner::{jacobi_hyp, jacobi_sum, wigner_matrix_f64, EulerAngles};

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn gauss() -> impl Strategy<Value = Gauss> {
    (small_rat(), small_rat()).prop_map(|(a, b)| Gauss::new(a, b))
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (gauss(), 1i64..=30, 1i64..=30, -3i32..=3).prop_map(|(g, n, d, p)| {
        (ExactScalar::sqrt_rational(&rat(n, d)) * ExactScalar::sqrt_pi_pow(p)).scale_gauss(&g)
    })
}

fn algebra_element() -> impl Strategy<Value = GMat<Gauss>> {
    prop::collection::vec(-2i64..=2, 10).prop_map(|cs| {
        let mut gens = vec![h1::<Gauss>(), h2()];
        gens.extend(RootLabel::all().into_iter().map(chevalley::<Gauss>));
        gens.iter().zip(cs).fold(GMat::zero(), |acc, (g, c)| acc + g.scale(&Gauss::from_int(c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_multiplication_is_commutative_and_associative(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a * (b * c));
    }

    #[test]
    fn scalar_inverse(a in scalar()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.clone() * a.inv().unwrap(), ExactScalar::one());
    }

    #[test]
    fn scalar_string_round_trip(a in scalar()) {
        let s = a.to_string();
        prop_assert!(s.contains("sqrt("));
        prop_assert_eq!(s.parse::<ExactScalar>().unwrap(), a);
    }

    #[test]
    fn radical_sums_distribute(a in scalar(), b in scalar(), c in scalar()) {
        let r = |x: &ExactScalar| RadicalSum::from_exact(x);
        let lhs = r(&a) * (r(&b) + r(&c));
        let rhs = r(&a) * r(&b) + r(&a) * r(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn complex_values_match(a in scalar(), b in scalar()) {
        let p = (a.clone() * b.clone()).to_complex();
        let q = a.to_complex() * b.to_complex();
        prop_assert!((p - q).norm() <= 1e-9 * q.norm().max(1.0));
    }

    #[test]
    fn pochhammer_is_additive(a in gauss(), m in 0i64..6, n in -4i64..6) {
        let (Ok(lhs), Ok(x), Ok(y)) = (
            pochhammer(&a, m + n),
            pochhammer(&a, m),
            pochhammer(&(a.clone() + Gauss::from_int(m)), n),
        ) else {
            return Ok(());
        };
        prop_assert_eq!(lhs, x * y);
    }

    #[test]
    fn jacobi_forms_agree(n in 0u64..=10, a in small_rat(), b in small_rat(), x in small_rat()) {
        let (a, b, x) = (Gauss::real(a), Gauss::real(b), Gauss::real(x));
        if let Ok(v) = jacobi_sum(n, &a, &b, &x) {
            prop_assert_eq!(v, jacobi_hyp(n, &a, &b, &x));
        }
    }

    #[test]
    fn wigner_matrices_are_unitary(tj in 0i64..=6, z in 0.0..6.3f64, p in 0.0..6.3f64, t in 0.0..3.1f64, f in 0.0..6.3f64) {
        let j = HalfInt::from_twice(tj);
        let d = wigner_matrix_f64(j, j, &EulerAngles::float(z, p, t, f));
        for r in 0..d.len() {
            for c in 0..d.len() {
                let v: Complex64 = (0..d.len()).map(|k| d[r][k] * d[c][k].conj()).sum();
                let want = if r == c { 1.0 } else { 0.0 };
                prop_assert!((v - want).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn q_factor_exact_matches_float(tz in 3i64..=20, tm in 0i64..=6) {
        let (z, m) = (HalfInt::from_twice(tz), HalfInt::from_twice(tm));
        if let Ok(q) = q_factor_exact(z, m) {
            let f = q_factor_c(Complex64::new(z.to_f64(), 0.0), m).unwrap();
            prop_assert!((q.to_complex() - f).norm() <= 1e-10 * f.norm().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn bracket_is_preserved(x in algebra_element(), y in algebra_element(), l1 in small_rat(), l2 in small_rat()) {
        let lambda = (RadicalSum::from_rational(&l1), RadicalSum::from_rational(&l2));
        let mut dl = DlMemo::new(lambda, KappaTables::Corrected);
        let xy = x.bracket(&y);
        for v in basis((1, 0), HalfInt::ONE, HalfInt::ONE) {
            let b = LinComb::basis(v);
            let (xb, yb) = (dl.apply(&x, &b).unwrap(), dl.apply(&y, &b).unwrap());
            let lhs = dl.apply(&x, &yb).unwrap().sub(&dl.apply(&y, &xb).unwrap());
            prop_assert!(lhs.sub(&dl.apply(&xy, &b).unwrap()).is_empty());
        }
    }
}

#[test]
fn field_inverse_of_zero_is_a_pole() {
    assert!(Gauss::zero().try_inv().unwrap_err().is_pole());
}
