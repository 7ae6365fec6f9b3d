//! Branch cubic, discriminant and region for a few triples, in exact arithmetic.

use num_complex::Complex;
use rsl_core::cubic_discriminant::{discriminant, region_of, solve_phi};
use rsl_core::{Rational, Real, SasakiTriple};

fn triple(tau: i64, rho: i64, a: i64) -> SasakiTriple<Rational> {
    SasakiTriple::new(Rational::from_i64(tau), Rational::from_i64(rho), Complex::new(Rational::from_i64(a), Rational::from_i64(0)))
}

fn main() {
    for (tau, rho, a) in [(0, 0, 0), (0, 0, 2), (-3, -3, 2), (0, 1, 0), (1, 5, 3)] {
        let t = triple(tau, rho, a);
        let roots = solve_phi(&t);
        println!("(tau, rho, a) = ({tau}, {rho}, {a})");
        println!("  discriminant = {}", discriminant(&t));
        for r in &roots.roots {
            let exact = r.exact.as_ref().map(|q| format!(" = {q}")).unwrap_or_default();
            println!("  phi = {:.12}{exact} (multiplicity {})", r.value, r.multiplicity);
        }
        if roots.complex_pair_present {
            println!("  plus a complex-conjugate pair");
        }
        println!("  region: {}", region_of(&t));
    }
}
