//! The Harish-Chandra module: K-types, the left action and the Casimir Ω2.

use sp4_intertwine::exact::{rat, Character, HalfInt, RadicalSum};
use sp4_intertwine::gkmod::{basis, dl_p_action, ktypes, DlMemo, KappaTables, LinComb, NoncompactLabel};
use sp4_intertwine::sp4::{hc_omega2, omega2_word};

fn main() {
    let chi = Character::exact((1, 0), rat(5, 3), rat(1, 2)).unwrap();
    let lambda = chi.lambda.in_ring::<RadicalSum>();
    for k in ktypes(chi.delta, HalfInt::from_twice(3), HalfInt::from_twice(3)) {
        println!("K-type (j,n) = ({},{}) multiplicity {}", k.j, k.n, k.multiplicity());
    }

    let v = basis(chi.delta, HalfInt::from_twice(3), HalfInt::from_twice(3))[0];
    for l in NoncompactLabel::all() {
        let out = dl_p_action(&l, &v, &lambda, KappaTables::Corrected);
        println!("dl(u_{:?}) {v} has {} terms", l.beta, out.len());
    }

    let mut dl = DlMemo::new(lambda.clone(), KappaTables::Corrected);
    let want = hc_omega2(&lambda.0, &lambda.1);
    for v in basis(chi.delta, HalfInt::from_twice(3), HalfInt::from_twice(1)) {
        let got = dl.uword(&omega2_word(), &LinComb::basis(v)).unwrap();
        println!("Ω2 {v} = {:?} {v}", got.as_multiple_of(&v).map(|c| c.to_string()));
    }
    println!("expected (λ1²+λ2²-5)/12 = {want}");

    for v in basis(chi.delta, HalfInt::from_twice(3), HalfInt::from_twice(1)).into_iter().take(3) {
        let published = DlMemo::new(lambda.clone(), KappaTables::Published)
            .uword(&omega2_word(), &LinComb::basis(v))
            .unwrap();
        match published.as_multiple_of(&v) {
            Some(c) if c == want => println!("with the tables as printed, Ω2 {v} = {c} {v}"),
            Some(c) => println!("with the tables as printed, Ω2 {v} = {c} {v}, not the expected scalar"),
            None => println!("with the tables as printed, Ω2 {v} leaves the line of {v}"),
        }
    }
}
