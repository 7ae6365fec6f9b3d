//! Cross-module behaviour of the public API.

use num_complex::Complex;
use rsl_core::cubic_discriminant::{region_of, RegionLabel};
use rsl_core::parameters::{apply_scaling, closedform_from_sasaki, normalize_to_moduli};
use rsl_core::series::{expand_sphere_all_branches, extract_normal_params, rescale_surface, HermitianSeries};
use rsl_core::symmetry::{classify_homogeneous, sasaki_algebra, HomogeneousClass};
use rsl_core::{Rational, Real, SasakiTriple, ScalingAction};

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn t(tau: Rational, rho: Rational, a: Complex<Rational>) -> SasakiTriple<Rational> {
    SasakiTriple::new(tau, rho, a)
}

#[test]
fn json_round_trips() {
    let x = t(q(-3, 2), q(7, 5), Complex::new(q(1, 3), q(-2, 1)));
    assert_eq!(SasakiTriple::<Rational>::from_json(&x.to_json()).unwrap(), x);
    let h = expand_sphere_all_branches(&x, 8).unwrap();
    assert_eq!(HermitianSeries::<Rational>::from_json(&h.to_json()).unwrap(), h);
    let text = serde_json::to_string(&h.to_json()).unwrap();
    assert_eq!(text, serde_json::to_string(&expand_sphere_all_branches(&x, 8).unwrap().to_json()).unwrap());
}

#[test]
fn homothetic_triples_share_everything() {
    let x = t(q(1, 2), q(-1, 3), Complex::new(q(2, 1), q(1, 1)));
    let c = ScalingAction::new(Complex::new(q(2, 3), q(-1, 2))).unwrap();
    let y = apply_scaling(&x, &c);
    let (mx, _) = normalize_to_moduli(&x);
    let (my, _) = normalize_to_moduli(&y);
    assert!(mx.near(&my, 1e-10));
    assert_eq!(region_of(&x), region_of(&y));
    assert_eq!(sasaki_algebra(&x).unwrap().dimension, sasaki_algebra(&y).unwrap().dimension);
    let hx = expand_sphere_all_branches(&x, 8).unwrap();
    let hy = expand_sphere_all_branches(&y, 8).unwrap();
    assert_eq!(rescale_surface(&hx, &c).unwrap(), hy);
    assert_eq!(extract_normal_params(&hy).unwrap(), y);
}

#[test]
fn homogeneous_models_from_their_series() {
    // v = log(1+|z|^2) and v = -log(1-|z|^2)
    for (sign, class) in [(1, HomogeneousClass::RoundSphere), (-1, HomogeneousClass::Hyperboloid)] {
        let mut entries = Vec::new();
        for k in 1..=4i64 {
            let c = if sign > 0 && k % 2 == 0 { q(-1, k) } else { q(1, k) };
            entries.push((k as usize, k as usize, Complex::new(c, q(0, 1))));
        }
        let h = HermitianSeries::from_entries(8, &entries).unwrap();
        let x = extract_normal_params(&h).unwrap();
        assert_eq!(x, t(q(sign, 4), q(1, 16), Complex::new(q(0, 1), q(0, 1))));
        assert_eq!(classify_homogeneous(&x), class);
        assert_eq!(sasaki_algebra(&x).unwrap().dimension, 4);
        let phi = q(0, 1);
        let expanded = rsl_core::series::expand_sphere(&closedform_from_sasaki(&x, phi).unwrap(), 8).unwrap();
        assert_eq!(expanded, h);
    }
}

#[test]
fn stanton_region_examples() {
    assert_eq!(region_of(&t(q(0, 1), q(0, 1), Complex::new(q(2, 1), q(0, 1)))), RegionLabel::Stanton);
    assert_eq!(region_of(&t(q(0, 1), q(1, 1), Complex::new(q(0, 1), q(0, 1)))), RegionLabel::NonStanton);
    let f = SasakiTriple::new(0.0, 0.0, Complex::new(2.0, 0.0));
    assert_eq!(region_of(&f), RegionLabel::Stanton);
}
