//! Writes operator blocks as JSON and CSV and reads the JSON back.

use sp4_intertwine::exact::{parse_complex, Character, HalfInt, Lambda};
use sp4_intertwine::gkmod::ktypes;
use sp4_intertwine::intertwine::{long_operator_product, simple_operator, OperatorBlock, OperatorKind};

fn main() {
    let chi = Character::new(
        (1, 1),
        Lambda::Float(parse_complex("4.5+0.5i").unwrap(), parse_complex("1.5+0i").unwrap()),
    )
    .unwrap();
    for k in ktypes(chi.delta, HalfInt::from_twice(3), HalfInt::ONE) {
        let op = simple_operator(OperatorKind::A3, (k.j, k.n), &chi).unwrap();
        print!("{}", op.to_csv());
    }

    let exact = Character::exact((0, 0), sp4_intertwine::exact::rat(9, 2), sp4_intertwine::exact::rat(5, 2)).unwrap();
    let op = long_operator_product((HalfInt::int(1), HalfInt::int(1)), &exact).unwrap();
    let text = op.to_json();
    println!("{text}");
    let back = OperatorBlock::from_json(&text).unwrap();
    println!("round trip: {}", back.to_json() == text);
}
