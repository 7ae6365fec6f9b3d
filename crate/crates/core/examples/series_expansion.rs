//! Expands v = psi(z, zbar) on every branch and reads the parameters back.

use num_complex::Complex;
use rsl_core::scalar::format_rational;
use rsl_core::series::{expand_rational_branches, expand_sphere_all_branches, extract_normal_params};
use rsl_core::{Rational, Real, SasakiTriple};

fn main() {
    // (tau, rho) = (0, 1), a = 0: psi = 1/2 arcsinh(2|z|^2), three rational branches
    let t = SasakiTriple::new(Rational::from_i64(0), Rational::from_i64(1), Complex::new(Rational::from_i64(0), Rational::from_i64(0)));
    let branches = expand_rational_branches(&t, 8).unwrap();
    for b in &branches {
        println!("phi = {:>4}: gamma_33 = {}", format_rational(&b.params.phi), format_rational(&b.series.gamma(3, 3).re));
    }
    assert!(branches.iter().all(|b| b.series == branches[0].series));

    // complex a and irrational roots: all three branches at once
    let t = SasakiTriple::new(Rational::ratio(1, 3), Rational::ratio(-2, 1), Complex::new(Rational::ratio(1, 2), Rational::ratio(3, 1)));
    let h = expand_sphere_all_branches(&t, 8).unwrap();
    for (k, l, c) in h.series().terms().filter(|(k, l, _)| k <= l) {
        if c.re != Rational::from_i64(0) || c.im != Rational::from_i64(0) {
            println!("gamma_{k}{l} = {} + {} i", format_rational(&c.re), format_rational(&c.im));
        }
    }
    let back = extract_normal_params(&h).unwrap();
    println!("recovered {}", back.to_json());
    assert_eq!(back, t);
}
