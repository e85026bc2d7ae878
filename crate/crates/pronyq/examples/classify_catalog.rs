//! Classify the whole model catalog and print the verdicts with their
//! evidence: lattice spacing, alignment witness, coupling detail, and any
//! coalescent-pole warnings.
//!
//! ```bash
//! cargo run --example classify_catalog
//! ```

use pronyq::classify::classify;
use pronyq::cli::default_catalog;

fn main() {
    for spec in default_catalog() {
        let v = classify(&spec).expect("catalog models are valid");
        println!("== {} ==", spec.name.name());
        println!("   class:   {:?} / {:?}", v.class, v.reason);
        if let Some(d) = &v.delta_g {
            println!("   delta_G: {d}");
        }
        if let Some(a) = &v.alignment {
            match &a.witness {
                Some(w) => println!("   alignment: satisfiable, witness {w:?}"),
                None => println!("   alignment: not satisfiable"),
            }
        }
        if let Some(trace) = &v.recurrence {
            let c0 = trace.samples[0].coefficient;
            println!(
                "   recurrence: {} samples along offset {}, C_0 = {:.6}",
                trace.samples.len(),
                trace.offset.re,
                c0
            );
        }
        for w in &v.warnings {
            println!("   warning: {w}");
        }
        println!("   {}", v.narrative);
        println!();
    }
}
