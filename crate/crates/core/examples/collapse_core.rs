//! Collapsing free faces, and the collapsed core left behind.
//!
//! cargo run --example collapse_core

use std::sync::Arc;

use complexforge::builtins::builtin;
use complexforge::collapse::{collapse_maximally, collapsed_core, is_collapsed, is_collapsible};
use complexforge::ComplexBuilder;

fn main() {
    // A cone: one monogon on a loop. Collapses to a point.
    let mut b = ComplexBuilder::new();
    let v = b.vertex("v");
    let e = b.edge("e", v, v);
    b.disc("D", &[(e, 1)]);
    let cone = Arc::new(b.build().unwrap());
    let r = collapse_maximally(&cone);
    println!("cone: {:?} -> {} cell(s), core components: {}", r.log, r.complex.num_cells(), collapsed_core(&cone).len());

    // The dunce hat has no free face, yet is contractible.
    let hat = builtin("dunce_hat").unwrap().complex;
    println!("dunce hat: collapsed {}, collapsible {}", is_collapsed(&hat).0, is_collapsible(&hat));

    // Bing's house with a whisker attached: the core is the house again.
    let bing = builtin("bing_house").unwrap().complex;
    let mut raw = bing.to_raw();
    raw.vertices.push("w".into());
    raw.edges.push(complexforge::complex::RawEdge { id: "whisker".into(), src: raw.vertices[0].clone(), dst: "w".into() });
    let decorated = Arc::new(complexforge::validate_complex(&raw).unwrap());
    for (core, inclusion) in collapsed_core(&decorated) {
        println!(
            "core of decorated house: {} cells (house has {}), inclusion ok: {}",
            core.num_cells(),
            bing.num_cells(),
            inclusion.is_inclusion()
        );
    }
}
