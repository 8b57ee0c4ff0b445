//! Cellular maps: composing, and testing for immersion and covering.
//!
//! cargo run --example maps

use std::sync::Arc;

use complexforge::builtins::builtin;
use complexforge::covers::enumerate_covers;
use complexforge::morphism::{CellularMap, DiscImage};
use complexforge::complex::Sign;
use complexforge::ComplexBuilder;

fn main() {
    let torus = builtin("torus").unwrap().complex;
    let double = &enumerate_covers(&torus, 2)[0];
    let quad = &enumerate_covers(&double.complex, 2)[0];
    let down = quad.map.compose(&double.map).unwrap();
    println!("cover of a cover: covering = {:?}, immersion = {}", down.is_covering().degree, down.is_immersion().0);

    // Wrapping a two-edge circle twice around a loop: a covering. Folding
    // it onto a single edge back and forth: not an immersion.
    let mut b = ComplexBuilder::new();
    let (p, q) = (b.vertex("p"), b.vertex("q"));
    b.edge("x", p, q);
    b.edge("y", q, p);
    let circle2 = Arc::new(b.build().unwrap());
    let circle = builtin("circle").unwrap().complex;
    let wrap = CellularMap::new(circle2.clone(), circle.clone(), vec![0, 0], vec![(0, Sign::Pos), (0, Sign::Pos)], Vec::<DiscImage>::new()).unwrap();
    println!("wrap: {:?}", wrap.is_covering());

    let mut b = ComplexBuilder::new();
    let (u, w) = (b.vertex("u"), b.vertex("w"));
    b.edge("s", u, w);
    let segment = Arc::new(b.build().unwrap());
    let fold = CellularMap::new(circle2, segment, vec![0, 1], vec![(0, Sign::Pos), (0, Sign::Neg)], Vec::<DiscImage>::new()).unwrap();
    let (ok, witness) = fold.is_immersion();
    println!("fold: immersion = {ok}, witness = {witness:?}");
}
