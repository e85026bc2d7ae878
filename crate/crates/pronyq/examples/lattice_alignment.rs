//! Exact lattice geometry: intersections of pole progressions with the
//! integers and with each other, the Diophantine spacing-alignment test,
//! and a coincidence scan.
//!
//! ```bash
//! cargo run --example lattice_alignment
//! ```

use pronyq::exact::{Exact, Rational};
use pronyq::lattice::{
    alignment_test, detect_coincidences, intersect_progressions, intersect_with_integers,
    Progression,
};

fn main() {
    // A lattice of spacing 5/3 (the Havriliak-Negami dominant family at
    // alpha = 3/5): which members are integers?
    let lat = Progression::new(Exact::rational(5, 3), Exact::zero());
    let r = intersect_with_integers(&lat);
    let show = |pts: &[Exact]| {
        pts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
    };
    println!("lattice -(0+k)/(5/3) vs the integers: {:?}", r.kind);
    println!("  first hits: {}", show(&r.points[..4.min(r.points.len())]));
    println!(
        "  s-step of the hit subprogression: {}",
        r.step_in_s.map(|s| s.to_string()).unwrap_or_default()
    );
    println!("  whole lattice contained: {}", r.full_containment);

    // Two lattices of scales 2 and 3 share points only on the integers.
    let l1 = Progression::new(Exact::integer(2), Exact::zero());
    let l2 = Progression::new(Exact::integer(3), Exact::zero());
    let r = intersect_progressions(&l1, &l2);
    println!("\nscale-2 vs scale-3 lattices: {:?}", r.kind);
    println!("  sample points: {}", show(&r.points[..4]));

    // The alignment test: can spacing delta_G be written as a non-negative
    // integer combination of candidate spacings?
    println!("\nalignment tests against candidate spacings:");
    for (delta, spacings, label) in [
        (Rational::new(1, 1), vec![Exact::one()], "delta 1, spacings [1]"),
        (Rational::new(3, 5), vec![Exact::one()], "delta 3/5, spacings [1]"),
        (
            Rational::new(1, 1),
            vec![Exact::rational(1, 2), Exact::rational(1, 3)],
            "delta 1, spacings [1/2, 1/3]",
        ),
    ] {
        let a = alignment_test(delta, &spacings).unwrap();
        println!("  {label}: satisfiable = {}, witness = {:?}", a.satisfiable, a.witness);
    }

    // Coincidence scan: a half-spaced lattice hits the integers on a
    // subprogression -> coalescent double poles.
    let lat = Progression::new(Exact::rational(2, 1), Exact::one());
    let reports = detect_coincidences(&lat, &[Progression::new(Exact::one(), Exact::zero())]);
    println!("\ncoincidence scan of -(1+k)/2:");
    for rep in reports {
        println!(
            "  vs {:?}: {} point(s) in [-50, 0]; {}",
            rep.counterpart,
            rep.points_in_window.len(),
            rep.warning
        );
    }
}
