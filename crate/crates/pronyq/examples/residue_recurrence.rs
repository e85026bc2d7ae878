//! Walk the residue recurrence along an offset sublattice for the Maxwell
//! trial state: the coefficients carry the -1/(n+1) factorial decay, so the
//! cumulative product vanishes factorially.
//!
//! ```bash
//! cargo run --example residue_recurrence
//! ```

use num_complex::Complex64;
use pronyq::classify::recurrence_trace;
use pronyq::models::ModelSpec;
use pronyq::numerics::ln_factorial;

fn main() {
    let meta = ModelSpec::maxwell(0.0, 1.0, 1.0).trial_state().unwrap();
    let trace = recurrence_trace(&meta, 12, Complex64::new(-0.5, 0.0)).unwrap();

    println!("sublattice: s_n = {} - n (offset half a spacing)", trace.offset.re);
    println!(
        "{:>3} {:>10} {:>26} {:>26}",
        "n", "s_n", "C_n", "implied residue R_n"
    );
    for s in &trace.samples {
        println!(
            "{:>3} {:>10.3} {:>26} {:>26}",
            s.n,
            s.s_n.re,
            format!("{:.6}", s.coefficient),
            format!("{:.3e}", s.implied_residue.norm()),
        );
    }

    println!("\ncumulative product decay (|Pi C| * n! stays bounded):");
    let mut product = Complex64::new(1.0, 0.0);
    for s in &trace.samples {
        product *= s.coefficient;
        println!(
            "  n = {:>2}: |Pi C| = {:.3e}, |Pi C| * (n+1)! = {:.6}",
            s.n,
            product.norm(),
            product.norm() * ln_factorial(s.n + 1).exp()
        );
    }
}
