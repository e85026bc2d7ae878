//! Build a geometric Prony ladder for the log-normal spectrum, check the
//! sum rule, and evaluate the modulus and relaxation curves.
//!
//! ```bash
//! cargo run --example ladder_synthesis
//! ```

use pronyq::ladder::{log_grid, synthesize};
use pronyq::models::ModelSpec;

fn main() {
    let model = ModelSpec::log_normal(0.0, 1.0);
    let provider = model.spectrum().unwrap();

    // 10 modes per decade over +-6 sigma.
    let q = 10f64.powf(0.1);
    let n_half = (6.0 / q.ln()).ceil() as u32;
    let ladder = synthesize(&provider, 0.0, 1.0, q, n_half).unwrap();

    let (g_lo, g_hi) = ladder.boundary_weights();
    println!("modes: {}", ladder.modes.len());
    println!("weight sum (target 1): {:.10}", ladder.weight_sum());
    println!("boundary weights (truncation estimate): {g_lo:.3e}, {g_hi:.3e}");

    // Normalization to the sum rule is an explicit opt-in.
    let normalized = ladder.normalize_sum_rule(1.0).unwrap();
    println!("normalized weight sum: {:.16}", normalized.weight_sum());

    println!("\nfrequency sweep:");
    for w in log_grid(1e-3, 1e3, 7) {
        let g = ladder.eval_modulus(w);
        println!("  omega {w:>10.3e}: G* = {:.6} + {:.6}i", g.re, g.im);
    }

    println!("\nrelaxation curve:");
    for t in [0.0, 0.01, 0.1, 1.0, 10.0, 100.0] {
        println!("  t {t:>7}: G(t) = {:.6}", ladder.eval_time(t));
    }
}
