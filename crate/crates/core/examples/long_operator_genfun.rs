//! The long intertwining operator from its generating function, compared with
//! the product of the four simple operators.

use sp4_intertwine::exact::{rat, Character, HalfInt};
use sp4_intertwine::intertwine::theorem::{epsilon, genfun_constant, hg_constant_term, long_operator_genfun, HG};
use sp4_intertwine::intertwine::{long_operator_product, s_norm};

fn main() {
    for delta in [(0, 0), (1, 1)] {
        let chi = Character::exact(delta, rat(13, 2), rat(3, 2)).unwrap();
        for (j, n) in [(1, 1), (2, 0), (2, 1), (3, -1)] {
            let kt = (HalfInt::int(j), HalfInt::int(n));
            let (Ok(g), Ok(p)) = (long_operator_genfun(kt, &chi), long_operator_product(kt, &chi)) else {
                continue;
            };
            let c = genfun_constant(&g.block, &p.block).unwrap();
            println!("δ={delta:?} (j,n)=({j},{n}) ε={} constant {c}", epsilon(j, n, delta));
        }
    }

    let z = rat(7, 2);
    for (m1, m2) in [(0, 0), (1, -1), (2, 0)] {
        let h = hg_constant_term(HG::H, 2, m1, m2, &z).unwrap();
        let g = hg_constant_term(HG::G, 2, m1, m2, &z).unwrap();
        let s = s_norm(HalfInt::int(2), HalfInt::int(m1), HalfInt::int(m2), &z).unwrap();
        println!("j=2 ({m1},{m2}): [H]0 = {h}, [G]0 = {g}, S = {s}");
    }
}
