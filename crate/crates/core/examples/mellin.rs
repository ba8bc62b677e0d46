//! Quadrature of the Mellin integral against the closed form Q(z,m).

use sp4_intertwine::exact::HalfInt;
use sp4_intertwine::intertwine::{mellin_numeric, q_factor_exact};

fn main() {
    for tz in [2, 3, 4, 5, 9] {
        let z = HalfInt::from_twice(tz);
        for tm in 0..=3 {
            let m = HalfInt::from_twice(tm);
            let r = mellin_numeric(z.to_f64(), m).unwrap();
            println!(
                "z={z:>3} m={m:>3}  Q = {:<28} quadrature {:.15} (err {:.1e}, estimate {:.1e})",
                q_factor_exact(z, m).unwrap().to_string(),
                r.numeric,
                r.rel_err,
                r.error_estimate
            );
        }
    }
    println!("z = 1/2: {}", mellin_numeric(0.5, HalfInt::ZERO).unwrap_err());
}
