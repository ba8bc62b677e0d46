//! Wigner functions on U(2), Jacobi polynomials and Clebsch-Gordan expansions.

use sp4_intertwine::exact::{rat, Gauss, HalfInt};
use sp4_intertwine::wigner::{
    clebsch_gordan_j1, jacobi_hyp, jacobi_sum, little_d, product_expand, wigner_D, wigner_via_jacobi, Angle,
    EulerAngles, WignerIndex,
};

fn main() {
    let j = HalfInt::from_twice(3);
    println!("d^(3/2) at θ = π/2, exact:");
    for m1 in HalfInt::steps(-j, j) {
        let row: Vec<String> = HalfInt::steps(-j, j).map(|m2| little_d(j, m1, m2, Angle::Quarter(1)).to_string()).collect();
        println!("  {}", row.join("  "));
    }

    let idx = WignerIndex::from_twice(4, 2, 2, -2).unwrap();
    let exact = wigner_D(&idx, &EulerAngles::quarter(1, 0, 1, 2));
    let float = wigner_D(&idx, &EulerAngles::float(0.3, 1.2, 0.7, -0.4));
    println!("{idx} at quarter turns = {exact}");
    println!("{idx} at generic angles = {float}");
    println!("via Jacobi at θ=0.7: {}", wigner_via_jacobi(&idx, Angle::Float(0.7)).unwrap());

    let (a, b, x) = (Gauss::real(rat(1, 2)), Gauss::real(rat(-1, 3)), Gauss::real(rat(2, 5)));
    for n in 0..4 {
        println!("P_{n}(2/5) = {} = {}", jacobi_sum(n, &a, &b, &x).unwrap(), jacobi_hyp(n, &a, &b, &x));
    }

    println!("<1 1/2; 1 1/2 | 3/2 1> = {}", clebsch_gordan_j1(HalfInt::ONE, HalfInt::from_twice(1), 1, 1).unwrap());
    let w1 = WignerIndex::from_twice(2, 0, 0, 2).unwrap();
    let w2 = WignerIndex::ints(1, 1, 1, 0).unwrap();
    for (w, c) in product_expand(&w1, &w2).unwrap() {
        println!("  {c} · {w}");
    }
}
