//! Moves a rigid sphere by a holomorphic change of coordinates and brings it
//! back to rigid normal form.

use num_complex::Complex;
use rsl_core::parameters::closedform_from_sasaki;
use rsl_core::scalar::format_rational;
use rsl_core::series::{expand_sphere, is_rigid_normal_form, stanton_normalize, HermitianSeries, VSeries};
use rsl_core::{Rational, Real, SasakiTriple};

fn qc(n: i64, d: i64) -> Complex<Rational> {
    Complex::new(Rational::ratio(n, d), Rational::from_i64(0))
}

fn main() {
    let t = SasakiTriple::new(Rational::from_i64(0), Rational::from_i64(0), qc(2, 1));
    let psi = expand_sphere(&closedform_from_sasaki(&t, Rational::from_i64(1)).unwrap(), 8).unwrap();

    // 2 psi(z + z^2/2, conj) + Re(i z^2)
    let f = VSeries::from_coeffs(vec![qc(0, 1), qc(1, 1), qc(1, 2)], 8);
    let mut moved = psi.series().substitute(&f, &f.conj()).scale(&qc(2, 1));
    moved.set(2, 0, Complex::new(Rational::from_i64(0), Rational::ratio(1, 2)));
    moved.set(0, 2, Complex::new(Rational::from_i64(0), Rational::ratio(-1, 2)));
    let moved = HermitianSeries::new(moved).unwrap();
    println!("moved surface in normal form: {}", is_rigid_normal_form(&moved, 0.0).ok());

    let back = stanton_normalize(&moved).unwrap();
    println!("normalized equals original: {}", back == psi);
    println!("gamma_23 = {}", format_rational(&back.gamma(2, 3).re));
}
