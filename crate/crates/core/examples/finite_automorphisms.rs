//! Moebius-type automorphisms of v = log(1+|z|^2) and v = -log(1-|z|^2),
//! checked on truncated series.

use rsl_core::series::{BiSeries, HermitianSeries};
use rsl_core::symmetry::{finite_automorphism_residual, MoebiusMapParams};
use rsl_core::Complex64;

fn model(epsilon: f64, n: usize) -> HermitianSeries<f64> {
    let mut s = BiSeries::zero(n);
    for k in 1..=n / 2 {
        s.set(k, k, Complex64::new((-epsilon).powi(k as i32 - 1) / k as f64, 0.0));
    }
    HermitianSeries::new(s).unwrap()
}

fn main() {
    let map = MoebiusMapParams {
        angle: 0.8,
        zeta: Complex64::new(0.5, -0.3),
        q: 1.0,
    };
    for (name, eps) in [("log(1+|z|^2)", 1.0), ("-log(1-|z|^2)", -1.0)] {
        let res = finite_automorphism_residual(&model(eps, 8), &map, 8).unwrap();
        println!("v = {name}: max residual through order 8 = {res:.3e}");
    }
}
