//! Scaling action and moduli representatives.

use rsl_core::parameters::{apply_scaling, are_homothetic, normalize_to_moduli};
use rsl_core::{Complex64, SasakiTriple, ScalingAction};

fn main() {
    let t = SasakiTriple::new(0.7, -1.3, Complex64::new(0.4, 2.0));
    let (m, c) = normalize_to_moduli(&t);
    println!("t = {}", t.to_json());
    println!("moduli point (tau, rho, a) = ({:.12}, {:.12}, {:.12}) via c = {:.12}", m.tau, m.rho, m.a_nonneg, c.c());
    println!("tau^4 + a^(8/3) + rho^2 = {:.15}", m.tau.powi(4) + m.a_nonneg.powf(8.0 / 3.0) + m.rho * m.rho);

    let s = ScalingAction::new(Complex64::new(-1.5, 0.25)).unwrap();
    let moved = apply_scaling(&t, &s);
    let (m2, _) = normalize_to_moduli(&moved);
    println!("after scaling by {}: same moduli point = {}", s.c(), m.near(&m2, 1e-10));
    match are_homothetic(&t, &moved) {
        Some(c) => println!("homothety recovered: c = {:.12}", c.c()),
        None => println!("not homothetic"),
    }

    // v = log(1+|z|^2) gives (1/4, 1/16); the same class as (1/2, 1/4)
    let a = SasakiTriple::new(0.25, 0.0625, Complex64::new(0.0, 0.0));
    let b = SasakiTriple::new(0.5, 0.25, Complex64::new(0.0, 0.0));
    println!("(1/4, 1/16) ~ (1/2, 1/4): {}", are_homothetic(&a, &b).is_some());
}
