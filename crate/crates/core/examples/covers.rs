//! Finite connected covers up to isomorphism.
//!
//! cargo run --example covers

use complexforge::builtins::builtin;
use complexforge::covers::{build_cover, enumerate_covers, CoverAssignment};
use complexforge::euler_characteristic;
use complexforge::homology::homology;

fn main() {
    for (name, n) in [("wedge_circles", 2), ("wedge_circles", 3), ("circle", 4), ("rp2", 2), ("torus", 2)] {
        let x = builtin(name).unwrap().complex;
        let covers = enumerate_covers(&x, n);
        println!("{name}, degree {n}: {} cover(s)", covers.len());
        for c in covers {
            println!("  {:?}  χ = {}  {}", c.assignment.perms, euler_characteristic(&c.complex), homology(&c.complex));
        }
    }

    // A hand-made assignment, checked for the relator.
    let rp2 = builtin("rp2").unwrap().complex;
    let bad = CoverAssignment { degree: 3, perms: vec![vec![1, 2, 0]] };
    println!("a ↦ (0 1 2) on <a | aa>: {}", build_cover(&rp2, &bad).unwrap_err());
}
