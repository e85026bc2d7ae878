//! Dual-path verification of the Mellin constitutive identity
//! G(s) = K(s) H(-s): the left side by direct quadrature of the modulus,
//! the right side from the kernel closed form times the atom transform.
//!
//! ```bash
//! cargo run --example constitutive_check
//! ```

use num_complex::Complex64;
use pronyq::classify::verify_constitutive;
use pronyq::models::ModelSpec;
use pronyq::numerics::QuadratureSpec;

fn main() {
    let quad = QuadratureSpec::oracle();
    for model in [
        ModelSpec::maxwell(0.0, 1.0, 1.0),
        ModelSpec::maxwell(0.0, 2.0, 5.0),
        ModelSpec::sls(1.0, 2.0, 1.0),
    ] {
        let strip = model.convergence_strip().unwrap();
        let mut grid = Vec::new();
        for fr in [0.25, 0.5, 0.75] {
            for im in [-0.5, 0.0, 0.5] {
                grid.push(Complex64::new(strip.0 + (strip.1 - strip.0) * fr, im));
            }
        }
        let residual = verify_constitutive(&model, &grid, &quad).unwrap();
        println!(
            "{:<8} strip ({:+.3}, {:+.3}): max relative residual {residual:.3e}",
            model.name.name(),
            strip.0,
            strip.1
        );
    }
}
