//! Free faces, elementary collapses and collapsed cores.

use std::sync::Arc;

use serde::Serialize;

use crate::complex::{CellMask, TwoComplex};
use crate::morphism::CellularMap;

/// A free face: a vertex whose only edge lies on no disc, or an edge used by
/// exactly one disc-side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FreeFace {
    Vertex(usize),
    Edge(usize),
}

/// One elementary collapse, recorded by cell ids of the original complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CollapseStep {
    /// A degree-one vertex removed with its edge.
    Vertex { vertex: String, edge: String },
    /// An edge used once removed with the disc containing it.
    Edge { edge: String, disc: String },
}

#[derive(Debug, Clone)]
pub struct CollapseResult {
    pub complex: Arc<TwoComplex>,
    pub inclusion: CellularMap,
    pub log: Vec<CollapseStep>,
}

/// Whether `x` has no free face, together with every free face found. A
/// degree-one vertex only counts when its edge lies on no disc.
pub fn is_collapsed(x: &TwoComplex) -> (bool, Vec<FreeFace>) {
    let mut free = Vec::new();
    let occurrences = x.edge_occurrences();
    for (v, d) in x.vertex_degrees().into_iter().enumerate() {
        if d != 1 {
            continue;
        }
        let e = x.edges().iter().position(|e| e.src == v || e.dst == v).expect("degree one");
        if occurrences[e] == 0 {
            free.push(FreeFace::Vertex(v));
        }
    }
    for (e, o) in occurrences.into_iter().enumerate() {
        if o == 1 {
            free.push(FreeFace::Edge(e));
        }
    }
    (free.is_empty(), free)
}

/// Live-cell bookkeeping over a fixed complex.
struct Pruner<'a> {
    x: &'a TwoComplex,
    mask: CellMask,
    degree: Vec<usize>,
    occurrences: Vec<usize>,
}

impl<'a> Pruner<'a> {
    fn new(x: &'a TwoComplex) -> Self {
        Pruner {
            x,
            mask: CellMask::full(x),
            degree: x.vertex_degrees(),
            occurrences: x.edge_occurrences(),
        }
    }

    fn kill_disc(&mut self, d: usize) {
        self.mask.discs[d] = false;
        for l in &self.x.discs()[d].boundary {
            self.occurrences[l.edge] -= 1;
        }
    }

    fn kill_edge(&mut self, e: usize) {
        self.mask.edges[e] = false;
        let edge = &self.x.edges()[e];
        self.degree[edge.src] -= 1;
        self.degree[edge.dst] -= 1;
    }

    /// One elementary collapse at the lowest-indexed free face; edges are
    /// tried before vertices.
    fn step(&mut self) -> Option<CollapseStep> {
        let x = self.x;
        if let Some(e) = (0..x.num_edges()).find(|&e| self.mask.edges[e] && self.occurrences[e] == 1) {
            let d = (0..x.num_discs())
                .find(|&d| self.mask.discs[d] && x.discs()[d].boundary.iter().any(|l| l.edge == e))
                .expect("a used edge lies on a live disc");
            self.kill_disc(d);
            self.kill_edge(e);
            return Some(CollapseStep::Edge { edge: x.edges()[e].id.clone(), disc: x.discs()[d].id.clone() });
        }
        for v in 0..x.num_vertices() {
            if !self.mask.vertices[v] || self.degree[v] != 1 {
                continue;
            }
            let e = (0..x.num_edges())
                .find(|&e| {
                    self.mask.edges[e] && (x.edges()[e].src == v || x.edges()[e].dst == v)
                })
                .expect("degree-one vertex has a live edge");
            if self.occurrences[e] != 0 {
                // folded into a disc: the edge is not a maximal cell
                continue;
            }
            self.kill_edge(e);
            self.mask.vertices[v] = false;
            return Some(CollapseStep::Vertex { vertex: x.vertices()[v].clone(), edge: x.edges()[e].id.clone() });
        }
        None
    }

    fn collapse(&mut self, log: &mut Vec<CollapseStep>) {
        while let Some(step) = self.step() {
            log.push(step);
        }
    }

    /// Deletes edges on no disc and vertices on no edge; returns whether
    /// anything changed.
    fn delete_isolated(&mut self) -> bool {
        let mut changed = false;
        for e in 0..self.x.num_edges() {
            if self.mask.edges[e] && self.occurrences[e] == 0 {
                self.kill_edge(e);
                changed = true;
            }
        }
        for v in 0..self.x.num_vertices() {
            if self.mask.vertices[v] && self.degree[v] == 0 {
                self.mask.vertices[v] = false;
                changed = true;
            }
        }
        changed
    }
}

/// Collapses free faces (lowest index first) until none is collapsible.
pub fn collapse_maximally(x: &Arc<TwoComplex>) -> CollapseResult {
    let mut pruner = Pruner::new(x);
    let mut log = Vec::new();
    pruner.collapse(&mut log);
    let (complex, inclusion) = x.subcomplex(&pruner.mask);
    CollapseResult { complex, inclusion, log }
}

/// Whether collapsing reaches a single vertex.
pub fn is_collapsible(x: &Arc<TwoComplex>) -> bool {
    let r = collapse_maximally(x);
    r.complex.num_vertices() == 1 && r.complex.num_edges() == 0 && r.complex.num_discs() == 0
}

fn has_isolated_cells(x: &TwoComplex) -> bool {
    x.vertex_degrees().contains(&0) || x.edge_occurrences().contains(&0)
}

/// Collapsed connected subcomplexes containing a disc and no isolated vertex
/// or edge, obtained by alternately collapsing and deleting isolated cells.
pub fn collapsed_core(x: &Arc<TwoComplex>) -> Vec<(Arc<TwoComplex>, CellularMap)> {
    let mut pruner = Pruner::new(x);
    let mut log = Vec::new();
    loop {
        pruner.collapse(&mut log);
        if !pruner.delete_isolated() {
            break;
        }
    }
    let (core, inclusion) = x.subcomplex(&pruner.mask);
    core.components()
        .into_iter()
        .filter(|(c, _)| c.num_discs() > 0 && is_collapsed(c).0 && !has_isolated_cells(c))
        .map(|(c, inc)| {
            let composed = inc.compose(&inclusion).expect("inclusions compose");
            (c, composed)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{euler_characteristic, ComplexBuilder};

    fn cone() -> Arc<TwoComplex> {
        let mut b = ComplexBuilder::new();
        let v = b.vertex("v");
        let e = b.edge("e", v, v);
        b.disc("D", &[(e, 1)]);
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn cone_collapses_to_point() {
        let x = cone();
        assert_eq!(is_collapsed(&x), (false, vec![FreeFace::Edge(0)]));
        let r = collapse_maximally(&x);
        assert_eq!(r.complex.num_cells(), 1);
        assert_eq!(r.log, vec![CollapseStep::Edge { edge: "e".into(), disc: "D".into() }]);
        assert!(collapsed_core(&x).is_empty());
    }

    #[test]
    fn arc_collapses_from_leaf() {
        let mut b = ComplexBuilder::new();
        let a = b.vertex("a");
        let c = b.vertex("c");
        let d = b.vertex("d");
        b.edge("ac", a, c);
        b.edge("cd", c, d);
        let x = Arc::new(b.build().unwrap());
        let r = collapse_maximally(&x);
        assert_eq!(r.complex.num_cells(), 1);
        assert_eq!(euler_characteristic(&r.complex), 1);
        assert_eq!(r.log.len(), 2);
    }

    #[test]
    fn folded_edge_is_not_a_free_face() {
        // a disc folded over an arc is a sphere; its end vertices are not free
        let mut b = ComplexBuilder::new();
        let a = b.vertex("a");
        let c = b.vertex("c");
        let e = b.edge("e", a, c);
        b.disc("S", &[(e, 1), (e, -1)]);
        let x = Arc::new(b.build().unwrap());
        assert_eq!(is_collapsed(&x), (true, vec![]));
        assert!(collapse_maximally(&x).log.is_empty());
        assert_eq!(collapsed_core(&x).len(), 1);
    }

    #[test]
    fn wedge_of_circles_has_empty_core() {
        let mut b = ComplexBuilder::new();
        let v = b.vertex("v");
        b.edge("a", v, v);
        b.edge("b", v, v);
        let x = Arc::new(b.build().unwrap());
        assert!(collapsed_core(&x).is_empty());
    }
}
