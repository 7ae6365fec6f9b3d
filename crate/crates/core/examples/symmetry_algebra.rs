//! Dimension of the Sasakian symmetry algebra across the special cases.

use num_complex::Complex;
use rsl_core::symmetry::{classify_homogeneous, sasaki_algebra, AUT_COORDINATES};
use rsl_core::{Rational, Real, SasakiTriple};

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn main() {
    let cases = [
        (q(0, 1), q(0, 1), q(0, 1)),
        (q(1, 2), q(1, 4), q(0, 1)),
        (q(-1, 2), q(1, 4), q(0, 1)),
        (q(1, 1), q(0, 1), q(0, 1)),
        (q(0, 1), q(0, 1), q(2, 1)),
    ];
    for (tau, rho, a) in cases {
        let t = SasakiTriple::new(tau, rho, Complex::new(a, Rational::from_i64(0)));
        let alg = sasaki_algebra(&t).unwrap();
        println!("{} -> dim {}, {}", t.to_json(), alg.dimension, classify_homogeneous(&t));
        for p in &alg.params {
            let coords: Vec<String> = AUT_COORDINATES
                .iter()
                .zip(p.to_vector())
                .filter(|(_, x)| *x != Rational::from_i64(0))
                .map(|(name, x)| format!("{name}={x}"))
                .collect();
            println!("  basis: {}", coords.join(" "));
        }
    }
}
