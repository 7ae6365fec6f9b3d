//! The double and the simple root swap sides across the cusp of the lower
//! branch, so the real roots cannot be followed continuously through it.

use rsl_core::cubic_discriminant::{branch_evidence, RootOrder};

fn main() {
    let ev = branch_evidence(2.0, 0.5, Some(1.5)).unwrap();
    for s in &ev.samples {
        let roots: Vec<String> = s.roots.roots.iter().map(|r| format!("{:.6} (x{})", r.value, r.multiplicity)).collect();
        println!("phi = {}: (tau, rho) = ({:.6}, {:.6}), roots {}, {:?}", s.phi, s.tau, s.rho, roots.join(", "), s.order);
    }
    println!("order flip: {}", ev.order_flip);
    let cusp = branch_evidence(2.0, 1.0, None).unwrap();
    assert_eq!(cusp.samples[0].order, RootOrder::Cusp);
    println!("phi = 1 is the cusp ({}, {})", cusp.samples[0].tau, cusp.samples[0].rho);
}
