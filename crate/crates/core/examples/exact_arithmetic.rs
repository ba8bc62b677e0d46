//! Exact scalars `q·√r·π^{p/2}` over the Gaussian rationals.

use sp4_intertwine::exact::{gamma_half, pochhammer, rat, ExactScalar, Gauss, HalfInt, RadicalSum};

fn main() {
    let a = ExactScalar::sqrt_rational(&rat(3, 8));
    let b = ExactScalar::sqrt_rational(&rat(2, 3)) * ExactScalar::i();
    println!("a = {a}");
    println!("b = {b}");
    println!("a·b = {}", a.clone() * b.clone());
    println!("1/a = {}", a.inv().unwrap());

    // √2 + √3 needs a sum of monomials
    let s = RadicalSum::from_exact(&ExactScalar::sqrt_rational(&rat(2, 1)))
        + RadicalSum::from_exact(&ExactScalar::sqrt_rational(&rat(3, 1)));
    println!("(√2+√3)² = {}", s.clone() * s);

    for tw in [1, 3, 5, 7] {
        let x = HalfInt::from_twice(tw);
        println!("Γ({x}) = {}", gamma_half(x).unwrap());
    }
    println!("(1/2)_4 = {}", pochhammer(&Gauss::real(rat(1, 2)), 4).unwrap());
    println!("(1/2)_-2 = {}", pochhammer(&Gauss::real(rat(1, 2)), -2).unwrap());
    match pochhammer(&Gauss::real(rat(-1, 1)), -1) {
        Ok(v) => println!("(-1)_-1 = {v}"),
        Err(e) => println!("(-1)_-1: {e}"),
    }

    let parsed: ExactScalar = "-2/3*sqrt(6)*pi^(1/2)".parse().unwrap();
    println!("parsed {parsed} ≈ {}", parsed.to_complex());
}
