//! The boundary surface of a thickening and its map back to the complex:
//! Bing's house gives one sphere immersing into the house; the dunce hat
//! gives a sphere whose map folds.
//!
//! cargo run --example bing_boundary

use complexforge::builtins::{bing_house_cubical, builtin};
use complexforge::contractibility::DEFAULT_BUDGET;
use complexforge::thickening::{boundary_complex, immersed_sphere};

fn main() {
    for entry in [builtin("bing_house").unwrap(), bing_house_cubical(), builtin("sphere").unwrap(), builtin("torus").unwrap(), builtin("dunce_hat").unwrap()] {
        let emb = entry.embedding.as_ref().unwrap();
        let r = boundary_complex(&entry.complex, emb).unwrap();
        println!(
            "{}: ∂T has χ {:?} ({} cells), immersion {}",
            entry.name,
            r.component_chis(),
            r.boundary.num_cells(),
            if r.immersion_verified() { "verified" } else { "folds" }
        );
    }

    let bing = builtin("bing_house").unwrap();
    let s = immersed_sphere(&bing.complex, bing.embedding.as_ref().unwrap(), DEFAULT_BUDGET).unwrap().unwrap();
    let (immerses, _) = s.immersion.is_immersion();
    println!("immersed sphere in Bing's house: {} discs, is_immersion = {immerses}", s.sphere.num_discs());
    println!("{}", bing.embedding.as_ref().unwrap().to_json(&bing.complex));
}
