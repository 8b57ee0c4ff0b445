//! Validate a complex from JSON and look at its vertex links.
//!
//! cargo run --example inspect_complex

use complexforge::link::all_links;
use complexforge::{euler_characteristic, TwoComplex};

const DUNCE_HAT: &str = r#"{
  "vertices": ["v"],
  "edges": [{"id": "a", "src": "v", "dst": "v"}],
  "discs": [{"id": "D", "boundary": [
    {"edge": "a", "sign": 1}, {"edge": "a", "sign": 1}, {"edge": "a", "sign": -1}
  ]}]
}"#;

fn main() {
    let x = TwoComplex::from_json(DUNCE_HAT).expect("valid complex");
    println!("{} vertices, {} edges, {} discs, χ = {}", x.num_vertices(), x.num_edges(), x.num_discs(), euler_characteristic(&x));
    for link in all_links(&x) {
        println!("link of {}: {} nodes, {} arcs, circle: {}", x.vertices()[link.vertex], link.nodes.len(), link.arcs.len(), link.is_circle());
        print!("{}", link.to_dot(&x));
    }

    // A dangling edge reference is reported by id.
    let broken = DUNCE_HAT.replace(r#"{"edge": "a", "sign": -1}"#, r#"{"edge": "b", "sign": -1}"#);
    match TwoComplex::from_json(&broken) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
