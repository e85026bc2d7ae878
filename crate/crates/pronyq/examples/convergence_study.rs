//! Refinement study: Cole-Cole ladders at shrinking q with growing span,
//! and the fixed-span schedule showing the truncation floor.
//!
//! ```bash
//! cargo run --example convergence_study
//! ```

use pronyq::exact::Exact;
use pronyq::ladder::{convergence_study, log_grid};
use pronyq::models::ModelSpec;

fn main() {
    let model = ModelSpec::cole_cole(0.0, 1.0, 1.0, Exact::rational(1, 2));
    let grid = log_grid(1e-2, 1e2, 100);

    // Joint refinement: more modes per decade and a wider span together.
    let schedule = [
        (10f64.powf(0.2), 20u32),
        (10f64.powf(0.1), 60u32),
        (10f64.powf(0.05), 160u32),
    ];
    let report = convergence_study(&model, &grid, &schedule, Some(1.0)).unwrap();
    println!("joint refinement (span grows with resolution):");
    for (q, n_half, err) in &report.refinement_history {
        println!("  q = {q:.5}, n_half = {n_half:>3}: sup rel error {err:.3e}");
    }

    // Fixed span: discretization error is already spectrally small at five
    // modes per decade, so the history flattens at the truncation floor.
    let fixed = [
        (10f64.powf(0.2), 40u32),
        (10f64.powf(0.1), 80u32),
        (10f64.powf(0.05), 160u32),
    ];
    let report = convergence_study(&model, &grid, &fixed, Some(1.0)).unwrap();
    println!("\nfixed span 1e-8..1e8 (truncation-limited):");
    for (q, n_half, err) in &report.refinement_history {
        println!("  q = {q:.5}, n_half = {n_half:>3}: sup rel error {err:.3e}");
    }
    println!(
        "  history monotone within a 10% band: {}",
        report.is_monotone_within(0.10)
    );
}
