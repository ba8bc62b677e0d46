//! The Lie algebra sp(4,ℝ): Chevalley basis, Weyl group, Cayley transform, Iwasawa.

use sp4_intertwine::exact::{rat, Gauss, Ring};
use sp4_intertwine::sp4::{
    cayley_check, chevalley, chi_minus, h1, h2, iwasawa_sl2, weyl_on_lambda, IwasawaFactors, RootLabel, SimpleRoot,
    WeylWord,
};

fn main() {
    for r in RootLabel::all() {
        let x = chevalley::<Gauss>(r);
        let (a1, a2) = r.coords();
        let ok = h1::<Gauss>().bracket(&x) == x.scale(&Gauss::from_int(a1))
            && h2::<Gauss>().bracket(&x) == x.scale(&Gauss::from_int(a2));
        println!("X_{r}: in sp(4) {}, weight ({a1},{a2}) {ok}", x.in_lie_algebra());
    }

    let w0 = WeylWord::longest();
    println!("w0 = {w0:?}, symplectic {}", w0.matrix::<Gauss>().is_symplectic());
    let l = (rat(9, 2), rat(5, 2));
    for w in WeylWord::all_up_to(2) {
        let (a, b) = weyl_on_lambda(&w, l.clone());
        println!("  {:?}·λ = ({a}, {b})", w.0);
    }
    println!("Cayley transform maps u_β to the root vectors: {}", cayley_check());

    for alpha in [SimpleRoot::A1, SimpleRoot::A2] {
        let t = rat(8, 15);
        if let IwasawaFactors::Exact(f) = iwasawa_sl2(alpha, &t) {
            println!("{alpha:?}: √(1+t²) = {}, t/(1+t²) = {}", f.h_param, f.chi_param);
            println!("  κ·h·χ = exp(tX_-α): {}", f.product() == chi_minus(alpha, &Gauss::real(t)));
        }
    }
}
