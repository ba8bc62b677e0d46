//! Truncated Laurent series and constant-term extraction.

use sp4_intertwine::exact::{rat, Gauss, Ring};
use sp4_intertwine::laurent::{binom_series, constant_term_1, hyp2f1_series, pfq_partial, LSeries1};

fn main() {
    let g = |n, d| Gauss::real(rat(n, d));
    // (1 - t)^{-1/2} up to t^6
    let b = binom_series("t", &g(-1, 2), -1, 6);
    for e in 0..=6 {
        println!("[t^{e}] (1-t)^(-1/2) = {}", b.coeff(e).unwrap());
    }

    // terminating 2F1(-3, 1/2; -3; t)
    let f = hyp2f1_series("t", &g(-3, 1), &g(1, 2), &g(-3, 1), &Gauss::one(), 8).unwrap();
    println!("2F1(-3,1/2;-3;t) = {f:?}");

    // constant term of (t + 1/t)^4 / (1-t)
    let x = LSeries1::monomial("t", 1, Gauss::one()) + LSeries1::monomial("t", -1, Gauss::one());
    let x4 = x.clone() * x.clone() * x.clone() * x;
    let s = x4 * binom_series("t", &g(-1, 1), -1, 8);
    println!("CT[(t+1/t)^4/(1-t)] = {}", constant_term_1(&s).unwrap());

    println!("3F2(-2,1,1;2,2;1) = {}", pfq_partial(&[g(-2, 1), g(1, 1), g(1, 1)], &[g(2, 1), g(2, 1)], &g(1, 1), 2).unwrap());
    match constant_term_1(&LSeries1::<Gauss>::variable("t", 2).inverse().unwrap().truncate(-3)) {
        Ok(v) => println!("CT = {v}"),
        Err(e) => println!("truncated too early: {e}"),
    }
}
