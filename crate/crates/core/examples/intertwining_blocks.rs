//! Simple intertwining operators on one K-type and their long composite.

use sp4_intertwine::exact::{rat, Character, HalfInt};
use sp4_intertwine::intertwine::{inversion_check, long_operator_product, mn_matrices, q_factor, s_entry_sum, simple_operator, OperatorKind};

fn main() {
    let chi = Character::exact((0, 0), rat(9, 2), rat(5, 2)).unwrap();
    let kt = (HalfInt::int(2), HalfInt::ZERO);

    let (m, n) = mn_matrices(kt.0);
    println!("M·N = 1: {}", m.mul(&n).unwrap().is_identity(0.0));
    println!("Q(5/2, 0) = {}", q_factor(&rat(5, 2), HalfInt::ZERO).unwrap());
    println!("S(0,0) at z = 5/2: {}", s_entry_sum(kt.0, kt.1, HalfInt::ZERO, HalfInt::ZERO, &rat(5, 2)).unwrap());

    for kind in OperatorKind::ALL.into_iter().filter(|k| k.is_simple()) {
        let op = simple_operator(kind, kt, &chi).unwrap();
        println!("{kind} on (j,n) = (2,0):");
        for (r, row) in op.block.entries.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            println!("  {} | {}", op.block.rows[r], cells.join("  "));
        }
    }
    let long = long_operator_product(kt, &chi).unwrap();
    println!("A4·A3·A2·A1 =\n{}", long.to_csv());
    println!("S(z)S(1-z) = 1 at z = 1/3: {}", inversion_check(kt.0, kt.1, chi.delta, &rat(1, 3)).unwrap());

    let pole = Character::exact((0, 0), rat(0, 1), rat(1, 1)).unwrap();
    if let Err(e) = simple_operator(OperatorKind::A1, kt, &pole) {
        println!("λ = (0,1): {e}");
    }
}
