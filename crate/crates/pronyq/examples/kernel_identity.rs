//! The spectral kernel iωτ/(1+iωτ) has the Mellin transform
//! τ^{-s} · (-π e^{-iπs/2}/sin(πs)) on the strip -1 < Re s < 0. This example
//! checks the closed form against direct quadrature and the integer-pole
//! residues against contour integrals.
//!
//! ```bash
//! cargo run --example kernel_identity
//! ```

use num_complex::Complex64;
use pronyq::mellin::{kernel_mellin, kernel_residue};
use pronyq::numerics::{contour_residue, mellin_quadrature, QuadratureSpec};

fn main() {
    let quad = QuadratureSpec::oracle();
    println!("quadrature vs closed form (tau = 1):");
    for s in [
        Complex64::new(-0.5, 0.0),
        Complex64::new(-0.25, 0.0),
        Complex64::new(-0.75, 0.0),
        Complex64::new(-0.5, 0.5),
    ] {
        let f = |w: f64| {
            let x = Complex64::new(0.0, w);
            x / (1.0 + x)
        };
        let by_quadrature = mellin_quadrature(f, s, &quad).unwrap();
        let closed = kernel_mellin(s).unwrap();
        println!(
            "  s = {s:>12}: quadrature {:>24}, closed {:>24}, rel err {:.2e}",
            format!("{by_quadrature:.9}"),
            format!("{closed:.9}"),
            (by_quadrature - closed).norm() / closed.norm()
        );
    }

    println!("\ninteger-pole residues vs contour integrals:");
    for n in -2i64..=3 {
        let formula = kernel_residue(n);
        let contour = contour_residue(
            |z| kernel_mellin(z).unwrap(),
            Complex64::new(n as f64, 0.0),
            0.25,
            64,
        );
        println!(
            "  n = {n:>2}: formula {formula:>8}, contour {:>24}, diff {:.2e}",
            format!("{contour:.9}"),
            (formula - contour).norm()
        );
    }
}
