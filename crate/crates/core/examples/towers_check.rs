//! Bounded search for tower maps with positive χ and non-contractible
//! domain.
//!
//! cargo run --release --example towers_check

use std::sync::Arc;

use complexforge::builtins::{builtin, presentation_complex};
use complexforge::towers::{check_nonpositive_towers, TowerBounds};

fn main() {
    let bounds = TowerBounds::default();
    let discs = Arc::new(presentation_complex(&["a", "b"], &["a", "b"]).unwrap());
    let cases = [
        ("rp2", builtin("rp2").unwrap().complex),
        ("torus", builtin("torus").unwrap().complex),
        ("wedge of two discs", discs),
        ("bing_house", builtin("bing_house").unwrap().complex),
    ];
    println!("{}", complexforge::towers::scope_note(&bounds));
    for (name, x) in cases {
        let t = std::time::Instant::now();
        let r = check_nonpositive_towers(&x, &bounds);
        println!("{name}: {} ({} endpoints, {:.1?})", r.verdict.label(), r.stats.endpoints, t.elapsed());
        for w in &r.witnesses {
            println!("  witness at depth {}: χ = {}, {}", w.depth, w.chi, w.homology);
        }
    }
}
