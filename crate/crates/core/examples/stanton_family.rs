//! Stanton's closed form against the general closed form.

use rsl_core::parameters::{closedform_from_sasaki, stanton_to_sasaki};
use rsl_core::series::{expand_sphere, expand_stanton};
use rsl_core::{Complex64, StantonParams};

fn main() {
    let sp = StantonParams::new(3.0, 3f64.sqrt(), Complex64::new(-(3f64.sqrt()), -1.0) / 2.0).unwrap();
    let t = stanton_to_sasaki(&sp);
    println!("Stanton {} -> Sasaki {}", sp.to_json(), t.to_json());
    let phi = sp.b.norm_sqr();
    let cf = closedform_from_sasaki(&t, phi).unwrap();
    let a = expand_stanton(&sp, 8).unwrap();
    let b = expand_sphere(&cf, 8).unwrap();
    println!("expansions agree to 1e-9: {}", a.near(&b, 1e-9));
    for (k, l) in [(2, 2), (2, 3), (3, 3), (4, 4)] {
        println!("gamma_{k}{l} = {:.12}", a.gamma(k, l));
    }
}
