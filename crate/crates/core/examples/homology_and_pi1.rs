//! Exact homology, π₁ presentations and contractibility certificates.
//!
//! cargo run --example homology_and_pi1

use std::sync::Arc;

use complexforge::builtins::{builtin, presentation_complex};
use complexforge::contractibility::{contractibility_status, DEFAULT_BUDGET};
use complexforge::homology::homology;
use complexforge::presentation::{presentation, simplify};

fn main() {
    for name in ["point", "circle", "sphere", "torus", "rp2", "dunce_hat", "bing_house"] {
        let x = builtin(name).unwrap().complex;
        let p = presentation(&x).unwrap();
        let status = contractibility_status(&x, DEFAULT_BUDGET);
        println!("{name:>10}: {}  π₁ = {p}  {}", homology(&x), status.label());
    }

    // Homology vanishes but no generator occurs once in a relator, so the
    // simplifier cannot settle π₁ and the status stays UNKNOWN.
    let x = Arc::new(presentation_complex(&["a", "b"], &["a b a b^-1 a^-1 b^-1", "a a a b^-1 b^-1"]).unwrap());
    let p = presentation(&x).unwrap();
    let out = simplify(&p, DEFAULT_BUDGET);
    println!("{p}: {} generator(s) left, status {}", out.remaining.len(), contractibility_status(&x, DEFAULT_BUDGET).label());
}
