//! Acceptance criteria 1-10.  Runs without the libtest harness so that the
//! PASS/FAIL table is always printed; exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rsl_core::linalg::rank;
use rsl_core::cubic_discriminant::{
    branch_evidence, curve_point, curve_points, discriminant, discriminant_a2, discriminant_scale, region_of, solve_phi,
    RegionLabel,
};
use rsl_core::parameters::{apply_scaling, closedform_from_sasaki, stanton_from_closedform, stanton_to_sasaki};
use rsl_core::series::{
    expand_float_branches, expand_rational_branches, expand_sphere, expand_sphere_all_branches, expand_stanton,
    extract_normal_params, rescale_surface, HermitianSeries,
};
use rsl_core::symmetry::{
    aut_family, aut_params_of, equal_modulo, is_tangent_to_sphere, reeb_field, sasaki_algebra, verify_finite_automorphism,
    AutParams, HoloVectorField, MoebiusMapParams, PolyZW,
};
use rsl_core::{Complex64, Rational, Real, SasakiTriple, ScalingAction, StantonParams};

type Q = Rational;
type Outcome = Result<String, String>;

const SEED: u64 = 0x5ea5_1de5;

fn q(n: i64, d: i64) -> Q {
    Q::ratio(n, d)
}

fn qc(re: Q, im: Q) -> Complex<Q> {
    Complex::new(re, im)
}

fn zero() -> Q {
    q(0, 1)
}

fn qt(tau: Q, rho: Q, a: Complex<Q>) -> SasakiTriple<Q> {
    SasakiTriple::new(tau, rho, a)
}

fn rand_q(rng: &mut ChaCha8Rng, max_abs: i64) -> Q {
    let d = rng.random_range(1..=4);
    q(rng.random_range(-max_abs * d..=max_abs * d), d)
}

fn rand_triple(rng: &mut ChaCha8Rng) -> SasakiTriple<Q> {
    let a = qc(rand_q(rng, 3), rand_q(rng, 3));
    qt(rand_q(rng, 3), rand_q(rng, 3), a)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_example_two() -> Outcome {
    let t = qt(zero(), zero(), qc(q(2, 1), zero()));
    let roots = solve_phi(&t);
    ensure(roots.roots.len() == 1 && roots.complex_pair_present, || format!("roots {roots:?}"))?;
    let phi = roots.roots[0].exact.clone().ok_or("root not exact")?;
    ensure(phi == q(1, 1), || format!("phi = {phi}"))?;
    let tf = t.to_f64();
    let residual = 4.0 + 4.0 * tf.tau + (tf.tau * tf.tau - tf.rho) - tf.a.norm_sqr();
    ensure(residual.abs() < 1e-12, || format!("residual {residual}"))?;
    let cf = closedform_from_sasaki(&t, phi).map_err(|e| e.to_string())?;
    ensure(cf.theta == q(3, 1) && cf.s == q(3, 1), || format!("theta {}, s {}", cf.theta, cf.s))?;
    let sp = stanton_from_closedform(&closedform_from_sasaki(&tf, 1.0).unwrap(), 1e-12).ok_or("no Stanton parameters")?;
    let want = Complex64::new(-(3f64.sqrt()), -1.0) / 2.0;
    ensure((sp.b - want).norm() < 1e-12, || format!("b = {}", sp.b))?;
    ensure(region_of(&t) == RegionLabel::Stanton, || format!("region {}", region_of(&t)))?;
    Ok("phi=1, theta=3, s=3, b=-(sqrt3+i)/2, Stanton".into())
}

fn c2_cusp() -> Outcome {
    let t = qt(q(-3, 1), q(-3, 1), qc(q(2, 1), zero()));
    let roots = solve_phi(&t);
    ensure(
        roots.roots.len() == 1 && roots.roots[0].multiplicity == 3 && roots.roots[0].exact == Some(q(1, 1)),
        || format!("roots {roots:?}"),
    )?;
    let df = discriminant(&t.to_f64());
    ensure(df.abs() < 1e-10, || format!("float discriminant {df}"))?;
    ensure(discriminant(&t) == zero(), || "exact discriminant nonzero".into())?;
    ensure(discriminant_a2(&q(-3, 1), &q(-3, 1)) == zero(), || "|a|=2 discriminant nonzero at (-3,-3)".into())?;
    let cf = closedform_from_sasaki(&t, q(1, 1)).map_err(|e| e.to_string())?;
    ensure(cf.s == zero(), || format!("s = {}", cf.s))?;
    Ok(format!("triple root 1, |disc_f64| = {df:.1e}, exact 0, s = 0"))
}

/// Coefficients `c_k` of `v = sum c_k x^k` solving
/// `sinh(2 sigma v) / (2 sigma) = exp(-2 tau v) x`, by fixed-point iteration
/// on plain truncated power series in `x`.
fn example_one_oracle(tau: f64, sigma: f64, m: usize) -> Vec<f64> {
    let mul = |a: &[f64], b: &[f64]| {
        let mut c = vec![0.0; m + 1];
        for i in 0..=m {
            for j in 0..=m - i {
                c[i + j] += a[i] * b[j];
            }
        }
        c
    };
    // f(u) = sum_k coef(k) u^k for u without constant term
    let apply = |u: &[f64], coef: &dyn Fn(usize) -> f64| {
        let mut out = vec![0.0; m + 1];
        let mut p = vec![0.0; m + 1];
        p[0] = 1.0;
        for k in 0..=m {
            for i in 0..=m {
                out[i] += coef(k) * p[i];
            }
            p = mul(&p, u);
        }
        out
    };
    let fact = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
    let mut v = vec![0.0; m + 1];
    let mut x = vec![0.0; m + 1];
    x[1] = 1.0;
    for _ in 0..=m + 1 {
        let e = apply(&v, &|k| (-2.0 * tau).powi(k as i32) / fact(k));
        let rhs = mul(&e, &x);
        // sinh(2 sigma v)/(2 sigma) - v
        let s = apply(&v, &|k| if k % 2 == 1 && k > 1 { (2.0 * sigma).powi(k as i32 - 1) / fact(k) } else { 0.0 });
        v = rhs.iter().zip(&s).map(|(r, s)| r - s).collect();
    }
    v
}

fn c3_example_one() -> Outcome {
    let mut checked = 0;
    // exact instances (sqrt rho rational) and float instances
    for (tau, sigma) in [(q(0, 1), q(1, 1)), (q(1, 3), q(2, 1)), (q(-1, 2), q(1, 2)), (q(3, 4), q(1, 5))] {
        let t = qt(tau.clone(), &sigma * &sigma, qc(zero(), zero()));
        let half = q(1, 2);
        let rows = [
            (zero(), sigma.clone(), tau.clone()),
            (&half * (-&tau + &sigma), &half * (&tau + &sigma), &half * (-&tau + q(3, 1) * &sigma)),
            (&half * (-&tau - &sigma), &half * (&tau - &sigma), &half * (-&tau - q(3, 1) * &sigma)),
        ];
        let mut series = Vec::new();
        for (phi, ir, theta) in rows {
            let cf = closedform_from_sasaki(&t, phi.clone()).map_err(|e| format!("phi = {phi}: {e}"))?;
            ensure(cf.theta == theta && cf.s == -(&ir * &ir), || format!("row phi = {phi}: {cf:?}"))?;
            series.push(expand_sphere(&cf, 8).map_err(|e| e.to_string())?);
        }
        ensure(series.iter().all(|h| *h == series[0]), || format!("branches differ at {t:?}"))?;
        let oracle = example_one_oracle(tau.to_f64(), sigma.to_f64(), 4);
        let h = series[0].to_f64();
        for (k, l, c) in h.series().terms() {
            let want = if k == l { oracle[k] } else { 0.0 };
            ensure((c.re - want).abs() <= 1e-9 * want.abs().max(1.0) && c.im.abs() <= 1e-9, || {
                format!("gamma_{k}{l} = {c} vs closed form {want} at {t:?}")
            })?;
        }
        checked += 1;
    }
    for (tau, rho) in [(0.3, 0.7), (-1.1, 2.5), (0.0, 0.2)] {
        let t = SasakiTriple::new(tau, rho, Complex64::new(0.0, 0.0));
        let branches = expand_float_branches(&t, 8).map_err(|e| e.to_string())?;
        ensure(branches.len() == 3, || format!("{} branches at ({tau}, {rho})", branches.len()))?;
        let sigma = rho.sqrt();
        let mut phis: Vec<f64> = branches.iter().map(|b| b.params.phi).collect();
        phis.sort_by(f64::total_cmp);
        let mut want = [0.0, (-tau + sigma) / 2.0, (-tau - sigma) / 2.0];
        want.sort_by(f64::total_cmp);
        ensure(phis.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-9), || format!("phis {phis:?} vs {want:?}"))?;
        let oracle = example_one_oracle(tau, sigma, 4);
        for b in &branches {
            ensure(b.series.near(&branches[0].series, 1e-9), || format!("branch phi = {} differs", b.params.phi))?;
            for k in 1..=4 {
                let got = b.series.gamma(k, k).re;
                ensure((got - oracle[k]).abs() <= 1e-9 * oracle[k].abs().max(1.0), || {
                    format!("gamma_{k}{k} = {got} vs {}", oracle[k])
                })?;
            }
        }
        checked += 1;
    }
    let t = qt(zero(), q(1, 1), qc(zero(), zero()));
    let h = &expand_rational_branches(&t, 8).map_err(|e| e.to_string())?[0].series;
    ensure(h.gamma(2, 2) == qc(zero(), zero()) && h.gamma(3, 3) == qc(q(-2, 3), zero()), || {
        format!("gamma_22 = {:?}, gamma_33 = {:?}", h.gamma(2, 2), h.gamma(3, 3))
    })?;
    Ok(format!("{checked} (tau, rho) instances, 3 rows each; (0,1): gamma_22=0, gamma_33=-2/3"))
}

fn c4_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut rational_branches = 0;
    for _ in 0..50 {
        let t = rand_triple(&mut rng);
        let all = expand_sphere_all_branches(&t, 8).map_err(|e| format!("{t:?}: {e}"))?;
        for b in expand_rational_branches(&t, 8).map_err(|e| e.to_string())? {
            ensure(b.series == all, || format!("rational branch phi = {} differs at {t:?}", b.params.phi))?;
            rational_branches += 1;
        }
        let all_f = all.to_f64();
        for b in expand_float_branches(&t, 8).map_err(|e| e.to_string())? {
            ensure(b.series.near(&all_f, 1e-8), || format!("float branch phi = {} differs at {t:?}", b.params.phi))?;
        }
        let back = extract_normal_params(&all).map_err(|e| e.to_string())?;
        ensure(back == t, || format!("recovered {back:?} from {t:?}"))?;
    }
    Ok(format!("50 triples exact, {rational_branches} rational branches expanded separately"))
}

fn c5_stanton_overlap() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut worst = 0f64;
    for _ in 0..20 {
        let theta = rng.random_range(-3.0..3.0);
        let r = rng.random_range(0.05..3.0);
        let b = Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
        let sp = StantonParams::new(theta, r, b).map_err(|e| e.to_string())?;
        let t = stanton_to_sasaki(&sp);
        let phi = b.norm_sqr();
        let roots = solve_phi(&t);
        ensure(roots.real_values().any(|x| (x - phi).abs() <= 1e-7 * (1.0 + phi)), || {
            format!("|b|^2 = {phi} not among the roots {:?}", roots.real_values().collect::<Vec<_>>())
        })?;
        let cf = closedform_from_sasaki(&t, phi).map_err(|e| e.to_string())?;
        ensure((cf.theta - theta).abs() < 1e-9 && (cf.s - r * r).abs() < 1e-9 * (1.0 + r * r), || format!("{cf:?}"))?;
        let a = expand_stanton(&sp, 8).map_err(|e| e.to_string())?;
        let h = expand_sphere(&cf, 8).map_err(|e| e.to_string())?;
        if let Some((k, l)) = a.first_difference(&h, 1e-9) {
            return Err(format!("gamma_{k}{l}: {} vs {} at {sp:?}", a.gamma(k, l), h.gamma(k, l)));
        }
        for (k, l, c) in a.series().terms() {
            let d = (c - h.gamma(k, l)).norm() / c.norm().max(1.0);
            worst = worst.max(d);
        }
    }
    Ok(format!("20 random Stanton parameter sets, worst relative difference {worst:.1e}"))
}

fn c6_scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    for _ in 0..20 {
        let c = loop {
            let c = qc(rand_q(&mut rng, 2), rand_q(&mut rng, 2));
            if c != qc(zero(), zero()) {
                break ScalingAction::new(c).unwrap();
            }
        };
        // a random normal form ...
        let mut entries = vec![(1, 1, qc(q(1, 1), zero()))];
        for k in 2..=4 {
            for l in k..=8 - k {
                let im = if k == l { zero() } else { rand_q(&mut rng, 3) };
                entries.push((k, l, qc(rand_q(&mut rng, 3), im)));
            }
        }
        let h = HermitianSeries::from_entries(8, &entries).map_err(|e| e.to_string())?;
        let lhs = extract_normal_params(&rescale_surface(&h, &c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let rhs = apply_scaling(&extract_normal_params(&h).map_err(|e| e.to_string())?, &c);
        ensure(lhs == rhs, || format!("random normal form: {lhs:?} vs {rhs:?}"))?;
        // ... and a rigid sphere
        let t = rand_triple(&mut rng);
        let s = expand_sphere_all_branches(&t, 8).map_err(|e| e.to_string())?;
        let moved = rescale_surface(&s, &c).map_err(|e| e.to_string())?;
        let tc = apply_scaling(&t, &c);
        ensure(extract_normal_params(&moved).map_err(|e| e.to_string())? == tc, || format!("sphere {t:?}"))?;
        ensure(expand_sphere_all_branches(&tc, 8).map_err(|e| e.to_string())? == moved, || {
            format!("rescaled series of {t:?} is not the series of the rescaled triple")
        })?;
    }
    Ok("20 random normal forms and 20 random spheres, exact".into())
}

fn c7_curve() -> Outcome {
    let phis: Vec<f64> = (0..100).map(|i| 0.1 + 4.9 * i as f64 / 99.0).collect();
    let mut worst = 0f64;
    let mut n = 0;
    for sign in [1, -1] {
        for p in curve_points(2.0, &phis, sign).map_err(|e| e.to_string())? {
            let t = p.triple();
            let rel = discriminant(&t).abs() / discriminant_scale(&t);
            ensure(rel <= 1e-8, || format!("phi = {}, sign {sign}: relative discriminant {rel}", p.phi))?;
            worst = worst.max(rel);
            n += 1;
        }
    }
    let cusp = curve_point(2.0, 1.0, -1).map_err(|e| e.to_string())?;
    ensure(cusp.tau == -3.0 && cusp.rho == -3.0, || format!("cusp at ({}, {})", cusp.tau, cusp.rho))?;
    let ev = branch_evidence(2.0, 0.5, Some(1.5)).map_err(|e| e.to_string())?;
    ensure(ev.order_flip, || format!("no order flip: {:?}", ev.samples.iter().map(|s| s.order).collect::<Vec<_>>()))?;
    Ok(format!("{n} points, worst |disc|/scale {worst:.1e}; cusp (-3,-3); order flip"))
}

/// The second generator for `a != 0`, written out term by term.
fn display_generator(t: &SasakiTriple<Q>) -> HoloVectorField<Q> {
    let i = qc(zero(), q(1, 1));
    let real = |x: Q| qc(x, zero());
    let a = t.a.clone();
    let ab = a.conj();
    let tau = real(t.tau.clone());
    let a2 = real(a.norm_sqr());
    let two = real(q(2, 1));
    let dz = PolyZW::from_terms([
        ((0, 0), i.clone() * a.clone()),
        ((1, 0), i.clone() * real(t.rho.clone() - t.tau.clone() * t.tau.clone())),
        ((0, 1), -(a.clone() * tau.clone())),
        ((2, 0), -(two.clone() * i.clone() * ab.clone() * tau.clone())),
        ((1, 1), -(two.clone() * a2.clone())),
    ]);
    let dw = PolyZW::from_terms([
        ((1, 0), two.clone() * ab.clone()),
        ((1, 1), -(two.clone() * i * ab * tau)),
        ((0, 2), -(two * a2)),
    ]);
    HoloVectorField::new(dz, dw).unwrap()
}

fn c8_dimensions() -> Outcome {
    let zero_a = || qc(zero(), zero());
    let four = [qt(zero(), zero(), zero_a()), qt(q(1, 2), q(1, 4), zero_a()), qt(q(-1, 2), q(1, 4), zero_a())];
    for t in &four {
        let d = sasaki_algebra(t).map_err(|e| e.to_string())?.dimension;
        ensure(d == 4, || format!("{t:?}: dim {d}"))?;
    }
    let mut two = vec![
        qt(q(1, 1), zero(), zero_a()),
        qt(zero(), q(1, 1), zero_a()),
        qt(zero(), zero(), qc(q(2, 1), zero())),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    while two.len() < 23 {
        let t = rand_triple(&mut rng);
        let special = t.is_heisenberg() || (t.a == zero_a() && t.rho == &t.tau * &t.tau);
        if !special {
            two.push(t);
        }
    }
    let mut displays = 0;
    for t in &two {
        let alg = sasaki_algebra(t).map_err(|e| e.to_string())?;
        ensure(alg.dimension == 2, || format!("{t:?}: dim {}", alg.dimension))?;
        if t.a != zero_a() {
            let g = display_generator(t);
            ensure(alg.contains(&g), || format!("{t:?}: display generator not in the algebra"))?;
            // the other basis element is the Reeb field up to span
            let z = reeb_field(t);
            ensure(alg.contains(&z), || format!("{t:?}: Reeb field not in the algebra"))?;
            // Z and the generator are independent, so together they span the algebra
            let g_params = aut_params_of(&g, 0.0).ok_or("display generator outside the family")?;
            let z_params = aut_params_of(&z, 0.0).ok_or("Reeb field outside the family")?;
            let rows = vec![g_params.to_vector().to_vec(), z_params.to_vector().to_vec()];
            ensure(rank(&rows, 8, 0.0) == 2, || format!("{t:?}: generator is a multiple of Z"))?;
            ensure(!equal_modulo(&g, &HoloVectorField::zero(), &z, 0.0), || "generator vanishes modulo Z".into())?;
            displays += 1;
        }
    }
    Ok(format!("3 four-dimensional, {} two-dimensional; display generator in span for {displays} triples with a != 0", two.len()))
}

fn c9_tangency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let rand_params = |rng: &mut ChaCha8Rng| {
        let v: Vec<Q> = (0..8).map(|_| rand_q(rng, 3)).collect();
        AutParams::from_vector(&v)
    };
    for _ in 0..100 {
        let x = aut_family(&rand_params(&mut rng));
        ensure(is_tangent_to_sphere(&x), || format!("{x:?} not tangent"))?;
    }
    let monomials = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];
    let mut rejected = 0;
    while rejected < 100 {
        let mut x = aut_family(&rand_params(&mut rng));
        let m = monomials[rng.random_range(0..monomials.len())];
        let delta = qc(rand_q(&mut rng, 2), rand_q(&mut rng, 2));
        if rng.random_bool(0.5) {
            x.dz.add_term(m, delta);
        } else {
            x.dw.add_term(m, delta);
        }
        if aut_params_of(&x, 0.0).is_some() {
            continue;
        }
        ensure(!is_tangent_to_sphere(&x), || format!("{x:?} outside the family but tangent"))?;
        rejected += 1;
    }
    Ok("100 family fields tangent, 100 perturbed fields rejected".into())
}

fn c10_finite_automorphisms() -> Outcome {
    // v = log(1+|z|^2) and v = -log(1-|z|^2) are the normal forms of (±1/4, 1/16)
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let mut count = 0;
    for (tau, max_zeta) in [(q(1, 4), 2.0), (q(-1, 4), 0.9)] {
        let t = qt(tau, q(1, 16), qc(zero(), zero()));
        let h = expand_sphere_all_branches(&t, 6).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let radius = rng.random_range(0.0..max_zeta);
            let map = MoebiusMapParams {
                angle: rng.random_range(0.0..2.0 * PI),
                zeta: Complex64::from_polar(radius, rng.random_range(0.0..2.0 * PI)),
                q: rng.random_range(-5.0..5.0),
            };
            let ok = verify_finite_automorphism(&h, &map, 6).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{map:?} fails on tau = {}", t.tau))?;
            count += 1;
        }
    }
    Ok(format!("{count} maps at order 6"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Example 2 reproduction", c1_example_two),
        ("Example 3 / cusp", c2_cusp),
        ("Example 1 family", c3_example_one),
        ("round trip on 50 random triples", c4_round_trip),
        ("Stanton overlap", c5_stanton_overlap),
        ("scaling covariance", c6_scaling),
        ("discriminant curve", c7_curve),
        ("symmetry dimensions", c8_dimensions),
        ("tangency suite", c9_tangency),
        ("finite automorphisms", c10_finite_automorphisms),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
