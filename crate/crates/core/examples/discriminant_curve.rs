//! CSV of the discriminant curve for |a| = 2, both sign branches.
//!
//! `cargo run --example discriminant_curve > curve.csv`

use rsl_core::cubic_discriminant::curve_csv;

fn main() {
    let phis: Vec<f64> = (0..50).map(|i| 0.1 + 4.9 * i as f64 / 49.0).collect();
    print!("{}", curve_csv(2.0, &phis, &[1, -1]).expect("valid grid"));
}
