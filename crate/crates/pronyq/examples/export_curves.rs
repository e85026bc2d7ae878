//! Emit plot-ready CSV: a Cole-Cole closed-form modulus sweep next to its
//! synthesized ladder, written to ./target/curves/.
//!
//! ```bash
//! cargo run --example export_curves
//! ```

use pronyq::exact::Exact;
use pronyq::ladder::{log_grid, synthesize};
use pronyq::models::ModelSpec;
use std::fmt::Write as _;

fn main() -> std::io::Result<()> {
    let model = ModelSpec::cole_cole(0.0, 1.0, 1.0, Exact::rational(1, 2));
    let ladder = synthesize(
        &model.spectrum().unwrap(),
        0.0,
        1.0,
        10f64.powf(0.05),
        160,
    )
    .unwrap();

    let mut closed = String::from("omega,re_g,im_g\n");
    let mut discrete = String::from("omega,re_g,im_g\n");
    for w in log_grid(1e-3, 1e3, 241) {
        let a = model.modulus(w).unwrap();
        let b = ladder.eval_modulus(w);
        writeln!(closed, "{w:.16e},{:.16e},{:.16e}", a.re, a.im).unwrap();
        writeln!(discrete, "{w:.16e},{:.16e},{:.16e}", b.re, b.im).unwrap();
    }

    let dir = std::path::Path::new("target/curves");
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("cole_cole_closed.csv"), closed)?;
    std::fs::write(dir.join("cole_cole_ladder.csv"), discrete)?;
    println!("wrote target/curves/cole_cole_closed.csv and cole_cole_ladder.csv");
    println!("ladder: {} modes, weight sum {:.6}", ladder.modes.len(), ladder.weight_sum());
    Ok(())
}
