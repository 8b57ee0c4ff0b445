//! Vertex links: edge-ends at a vertex joined by the corners of boundary
//! words passing through it.

use crate::complex::{End, Letter, TwoComplex};
use crate::error::ComplexError;

/// One incidence of an edge at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeEnd {
    pub edge: usize,
    pub end: End,
}

/// The corner of disc `disc` between letters `index` and `index + 1`
/// (cyclically).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub disc: usize,
    pub index: usize,
}

/// An arc of the link, running from the node where letter `index` arrives to
/// the node where letter `index + 1` leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinkArc {
    pub corner: Corner,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGraph {
    pub vertex: usize,
    pub nodes: Vec<EdgeEnd>,
    pub arcs: Vec<LinkArc>,
}

/// Edge-end at which a letter arrives.
pub fn arriving_end(l: Letter) -> EdgeEnd {
    EdgeEnd { edge: l.edge, end: End::Target.oriented(l.sign) }
}

/// Edge-end from which a letter leaves.
pub fn leaving_end(l: Letter) -> EdgeEnd {
    EdgeEnd { edge: l.edge, end: End::Source.oriented(l.sign) }
}

impl LinkGraph {
    pub fn node_index(&self, end: EdgeEnd) -> Option<usize> {
        self.nodes.iter().position(|&n| n == end)
    }

    /// Number of connected components (an empty link has none).
    pub fn num_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.nodes.len();
        for a in &self.arcs {
            let (x, y) = (find(&mut parent, a.from), find(&mut parent, a.to));
            if x != y {
                parent[x] = y;
                count -= 1;
            }
        }
        count
    }

    /// Degree of each node counted over arc ends.
    pub fn node_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for a in &self.arcs {
            deg[a.from] += 1;
            deg[a.to] += 1;
        }
        deg
    }

    /// A single circle: connected, every node of degree two.
    pub fn is_circle(&self) -> bool {
        !self.nodes.is_empty()
            && self.num_components() == 1
            && self.node_degrees().iter().all(|&d| d == 2)
    }

    /// Graphviz description for external rendering.
    pub fn to_dot(&self, x: &TwoComplex) -> String {
        let mut out = format!("graph \"link_{}\" {{\n", x.vertices()[self.vertex]);
        for (i, n) in self.nodes.iter().enumerate() {
            let end = match n.end {
                End::Source => "src",
                End::Target => "dst",
            };
            out.push_str(&format!("  n{i} [label=\"{}:{end}\"];\n", x.edges()[n.edge].id));
        }
        for a in &self.arcs {
            out.push_str(&format!(
                "  n{} -- n{} [label=\"{}:{}\"];\n",
                a.from,
                a.to,
                x.discs()[a.corner.disc].id,
                a.corner.index
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Link of `v`, with nodes in edge order (source end before target end) and
/// arcs in disc/corner order.
pub fn link_graph(x: &TwoComplex, v: usize) -> Result<LinkGraph, ComplexError> {
    if v >= x.num_vertices() {
        return Err(ComplexError::UnknownVertex(format!("#{v}")));
    }
    Ok(link_graph_unchecked(x, v))
}

pub fn link_graph_by_id(x: &TwoComplex, id: &str) -> Result<LinkGraph, ComplexError> {
    let v = x.vertex_index(id).ok_or_else(|| ComplexError::UnknownVertex(id.to_string()))?;
    Ok(link_graph_unchecked(x, v))
}

pub(crate) fn link_graph_unchecked(x: &TwoComplex, v: usize) -> LinkGraph {
    let mut nodes = Vec::new();
    for (e, edge) in x.edges().iter().enumerate() {
        if edge.src == v {
            nodes.push(EdgeEnd { edge: e, end: End::Source });
        }
        if edge.dst == v {
            nodes.push(EdgeEnd { edge: e, end: End::Target });
        }
    }
    let position = |n: EdgeEnd| nodes.iter().position(|&m| m == n).expect("node exists");
    let mut arcs = Vec::new();
    for (d, disc) in x.discs().iter().enumerate() {
        let word = &disc.boundary;
        for i in 0..word.len() {
            if x.terminal(word[i]) != v {
                continue;
            }
            let next = word[(i + 1) % word.len()];
            arcs.push(LinkArc {
                corner: Corner { disc: d, index: i },
                from: position(arriving_end(word[i])),
                to: position(leaving_end(next)),
            });
        }
    }
    LinkGraph { vertex: v, nodes, arcs }
}

/// All vertex links in vertex order.
pub fn all_links(x: &TwoComplex) -> Vec<LinkGraph> {
    (0..x.num_vertices()).map(|v| link_graph_unchecked(x, v)).collect()
}
