//! Compact combinatorial 2-complexes.
//!
//! A [`TwoComplex`] has vertices, oriented edges (loops and multi-edges
//! allowed) and discs attached along cyclic words of signed edges. Cells are
//! addressed by their position in the corresponding table; string ids are
//! kept for interchange and diagnostics.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::ComplexError;
use crate::morphism::{CellularMap, DiscImage};

/// Orientation of an edge occurrence or of an edge image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn from_i64(s: i64) -> Option<Sign> {
        match s {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

/// One letter of a boundary word: an edge traversed forwards or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub edge: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(edge: usize, sign: Sign) -> Self {
        Letter { edge, sign }
    }

    pub fn inverse(self) -> Self {
        Letter { edge: self.edge, sign: self.sign.flip() }
    }
}

/// Which end of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Source,
    Target,
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::Source => End::Target,
            End::Target => End::Source,
        }
    }

    pub fn oriented(self, sign: Sign) -> End {
        match sign {
            Sign::Pos => self,
            Sign::Neg => self.flip(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.src == self.dst
    }

    pub fn endpoint(&self, end: End) -> usize {
        match end {
            End::Source => self.src,
            End::Target => self.dst,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Disc {
    pub id: String,
    pub boundary: Vec<Letter>,
}

/// A validated compact 2-complex. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TwoComplex {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    discs: Vec<Disc>,
}

/// Cells by dimension, used in diagnostics and collapse logs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Vertex(usize),
    Edge(usize),
    Disc(usize),
}

// ---------------------------------------------------------------------------
// interchange format

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEdge {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawLetter {
    pub edge: String,
    pub sign: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDisc {
    pub id: String,
    pub boundary: Vec<RawLetter>,
}

/// The JSON document describing a complex.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RawComplex {
    #[serde(default)]
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<RawEdge>,
    #[serde(default)]
    pub discs: Vec<RawDisc>,
}

impl RawComplex {
    pub fn from_json(text: &str) -> Result<RawComplex, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Checks a raw description and builds the complex, reporting the first
/// violated invariant.
pub fn validate_complex(raw: &RawComplex) -> Result<TwoComplex, ComplexError> {
    let mut seen = HashSet::new();
    for v in &raw.vertices {
        if !seen.insert(v.as_str()) {
            return Err(ComplexError::DuplicateId { kind: "vertex", id: v.clone() });
        }
    }
    let vindex = |name: &str| raw.vertices.iter().position(|v| v == name);
    let mut edges = Vec::with_capacity(raw.edges.len());
    let mut seen = HashSet::new();
    for e in &raw.edges {
        if !seen.insert(e.id.as_str()) {
            return Err(ComplexError::DuplicateId { kind: "edge", id: e.id.clone() });
        }
        let lookup = |name: &String| {
            vindex(name).ok_or_else(|| ComplexError::DanglingVertex {
                edge: e.id.clone(),
                vertex: name.clone(),
            })
        };
        edges.push(Edge { id: e.id.clone(), src: lookup(&e.src)?, dst: lookup(&e.dst)? });
    }
    let mut discs = Vec::with_capacity(raw.discs.len());
    let mut seen = HashSet::new();
    for d in &raw.discs {
        if !seen.insert(d.id.as_str()) {
            return Err(ComplexError::DuplicateId { kind: "disc", id: d.id.clone() });
        }
        let mut word = Vec::with_capacity(d.boundary.len());
        for (index, l) in d.boundary.iter().enumerate() {
            let edge = raw.edges.iter().position(|e| e.id == l.edge).ok_or_else(|| {
                ComplexError::DanglingEdge { disc: d.id.clone(), edge: l.edge.clone() }
            })?;
            let sign = Sign::from_i64(l.sign).ok_or(ComplexError::BadSign {
                disc: d.id.clone(),
                index,
                sign: l.sign,
            })?;
            word.push(Letter { edge, sign });
        }
        discs.push(Disc { id: d.id.clone(), boundary: word });
    }
    TwoComplex::new(raw.vertices.clone(), edges, discs)
}

impl TwoComplex {
    /// Builds a complex from index-based tables, checking every invariant.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<Edge>,
        discs: Vec<Disc>,
    ) -> Result<TwoComplex, ComplexError> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(ComplexError::DuplicateId { kind: "vertex", id: v.clone() });
            }
        }
        let mut seen = HashSet::new();
        for e in &edges {
            if !seen.insert(e.id.as_str()) {
                return Err(ComplexError::DuplicateId { kind: "edge", id: e.id.clone() });
            }
            for v in [e.src, e.dst] {
                if v >= vertices.len() {
                    return Err(ComplexError::DanglingVertex {
                        edge: e.id.clone(),
                        vertex: format!("#{v}"),
                    });
                }
            }
        }
        let mut seen = HashSet::new();
        for d in &discs {
            if !seen.insert(d.id.as_str()) {
                return Err(ComplexError::DuplicateId { kind: "disc", id: d.id.clone() });
            }
            if d.boundary.is_empty() {
                return Err(ComplexError::EmptyBoundary { disc: d.id.clone() });
            }
            for l in &d.boundary {
                if l.edge >= edges.len() {
                    return Err(ComplexError::DanglingEdge {
                        disc: d.id.clone(),
                        edge: format!("#{}", l.edge),
                    });
                }
            }
            let n = d.boundary.len();
            for i in 0..n {
                let j = (i + 1) % n;
                let end = terminal(&edges, d.boundary[i]);
                let start = initial(&edges, d.boundary[j]);
                if end != start {
                    return Err(ComplexError::NotClosed { disc: d.id.clone(), index: i, next: j });
                }
            }
        }
        Ok(TwoComplex { vertices, edges, discs })
    }

    pub fn empty() -> TwoComplex {
        TwoComplex::default()
    }

    pub fn from_json(text: &str) -> Result<TwoComplex, crate::Error> {
        let raw = RawComplex::from_json(text)?;
        Ok(validate_complex(&raw)?)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn discs(&self) -> &[Disc] {
        &self.discs
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_discs(&self) -> usize {
        self.discs.len()
    }

    pub fn num_cells(&self) -> usize {
        self.vertices.len() + self.edges.len() + self.discs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn disc_index(&self, id: &str) -> Option<usize> {
        self.discs.iter().position(|d| d.id == id)
    }

    pub fn initial(&self, l: Letter) -> usize {
        initial(&self.edges, l)
    }

    pub fn terminal(&self, l: Letter) -> usize {
        terminal(&self.edges, l)
    }

    /// Number of edge-ends at each vertex; a loop contributes two.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.src] += 1;
            deg[e.dst] += 1;
        }
        deg
    }

    /// Number of occurrences of each edge across all boundary words.
    pub fn edge_occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.edges.len()];
        for d in &self.discs {
            for l in &d.boundary {
                occ[l.edge] += 1;
            }
        }
        occ
    }

    pub fn total_boundary_length(&self) -> usize {
        self.discs.iter().map(|d| d.boundary.len()).sum()
    }

    pub fn cell_id(&self, cell: Cell) -> &str {
        match cell {
            Cell::Vertex(v) => &self.vertices[v],
            Cell::Edge(e) => &self.edges[e].id,
            Cell::Disc(d) => &self.discs[d].id,
        }
    }

    pub fn to_raw(&self) -> RawComplex {
        RawComplex {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge {
                    id: e.id.clone(),
                    src: self.vertices[e.src].clone(),
                    dst: self.vertices[e.dst].clone(),
                })
                .collect(),
            discs: self
                .discs
                .iter()
                .map(|d| RawDisc {
                    id: d.id.clone(),
                    boundary: d
                        .boundary
                        .iter()
                        .map(|l| RawLetter {
                            edge: self.edges[l.edge].id.clone(),
                            sign: l.sign.to_i64(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("complex serializes")
    }

    /// Renders a word with `^-1` marking inverse letters.
    pub fn word_string(&self, word: &[Letter]) -> String {
        word.iter()
            .map(|l| match l.sign {
                Sign::Pos => self.edges[l.edge].id.clone(),
                Sign::Neg => format!("{}^-1", self.edges[l.edge].id),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Closure of the given disc selection together with the selected edges
    /// and vertices, as boolean masks.
    pub fn closure(&self, vertices: &[bool], edges: &[bool], discs: &[bool]) -> CellMask {
        let mut mask = CellMask {
            vertices: vertices.to_vec(),
            edges: edges.to_vec(),
            discs: discs.to_vec(),
        };
        for (d, disc) in self.discs.iter().enumerate() {
            if mask.discs[d] {
                for l in &disc.boundary {
                    mask.edges[l.edge] = true;
                }
            }
        }
        for (e, edge) in self.edges.iter().enumerate() {
            if mask.edges[e] {
                mask.vertices[edge.src] = true;
                mask.vertices[edge.dst] = true;
            }
        }
        mask
    }

    /// Builds the subcomplex selected by a closed mask, with its inclusion.
    ///
    /// Panics if the mask is not closed under taking faces.
    pub fn subcomplex(self: &Arc<Self>, mask: &CellMask) -> (Arc<TwoComplex>, CellularMap) {
        let mut vnew = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        let mut vertex_map = Vec::new();
        for (v, name) in self.vertices.iter().enumerate() {
            if mask.vertices[v] {
                vnew[v] = vertices.len();
                vertices.push(name.clone());
                vertex_map.push(v);
            }
        }
        let mut enew = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if mask.edges[e] {
                assert!(
                    mask.vertices[edge.src] && mask.vertices[edge.dst],
                    "subcomplex mask is not closed at edge {}",
                    edge.id
                );
                enew[e] = edges.len();
                edges.push(Edge { id: edge.id.clone(), src: vnew[edge.src], dst: vnew[edge.dst] });
                edge_map.push((e, Sign::Pos));
            }
        }
        let mut discs = Vec::new();
        let mut disc_map = Vec::new();
        for (d, disc) in self.discs.iter().enumerate() {
            if mask.discs[d] {
                let boundary = disc
                    .boundary
                    .iter()
                    .map(|l| {
                        assert!(mask.edges[l.edge], "subcomplex mask is not closed at disc {}", disc.id);
                        Letter { edge: enew[l.edge], sign: l.sign }
                    })
                    .collect();
                discs.push(Disc { id: disc.id.clone(), boundary });
                disc_map.push(DiscImage { disc: d, offset: 0, flip: false });
            }
        }
        let sub = Arc::new(TwoComplex { vertices, edges, discs });
        let map = CellularMap::new_unchecked(sub.clone(), self.clone(), vertex_map, edge_map, disc_map);
        (sub, map)
    }

    /// Connected components, each with its inclusion map, ordered by lowest
    /// vertex index.
    pub fn components(self: &Arc<Self>) -> Vec<(Arc<TwoComplex>, CellularMap)> {
        let labels = self.component_labels();
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        (0..count)
            .map(|c| {
                let vertices: Vec<bool> = labels.iter().map(|&l| l == c).collect();
                let edges: Vec<bool> = self.edges.iter().map(|e| labels[e.src] == c).collect();
                let discs: Vec<bool> = self
                    .discs
                    .iter()
                    .map(|d| labels[self.initial(d.boundary[0])] == c)
                    .collect();
                self.subcomplex(&CellMask { vertices, edges, discs })
            })
            .collect()
    }

    /// Component label per vertex, numbered in order of first vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.src].push(e.dst);
            adj[e.dst].push(e.src);
        }
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn num_components(&self) -> usize {
        self.component_labels().iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() == 1
    }

    /// The same complex with every cell id rewritten.
    pub fn renamed(
        &self,
        vertex: impl Fn(usize, &str) -> String,
        edge: impl Fn(usize, &str) -> String,
        disc: impl Fn(usize, &str) -> String,
    ) -> TwoComplex {
        TwoComplex {
            vertices: self.vertices.iter().enumerate().map(|(i, v)| vertex(i, v)).collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| Edge { id: edge(i, &e.id), src: e.src, dst: e.dst })
                .collect(),
            discs: self
                .discs
                .iter()
                .enumerate()
                .map(|(i, d)| Disc { id: disc(i, &d.id), boundary: d.boundary.clone() })
                .collect(),
        }
    }
}

/// Boolean selection of cells of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellMask {
    pub vertices: Vec<bool>,
    pub edges: Vec<bool>,
    pub discs: Vec<bool>,
}

impl CellMask {
    pub fn full(x: &TwoComplex) -> CellMask {
        CellMask {
            vertices: vec![true; x.num_vertices()],
            edges: vec![true; x.num_edges()],
            discs: vec![true; x.num_discs()],
        }
    }

    pub fn none(x: &TwoComplex) -> CellMask {
        CellMask {
            vertices: vec![false; x.num_vertices()],
            edges: vec![false; x.num_edges()],
            discs: vec![false; x.num_discs()],
        }
    }

    pub fn count(&self) -> usize {
        [&self.vertices, &self.edges, &self.discs]
            .iter()
            .map(|m| m.iter().filter(|&&b| b).count())
            .sum()
    }
}

fn initial(edges: &[Edge], l: Letter) -> usize {
    match l.sign {
        Sign::Pos => edges[l.edge].src,
        Sign::Neg => edges[l.edge].dst,
    }
}

fn terminal(edges: &[Edge], l: Letter) -> usize {
    match l.sign {
        Sign::Pos => edges[l.edge].dst,
        Sign::Neg => edges[l.edge].src,
    }
}

/// `|V| - |E| + |D|`.
pub fn euler_characteristic(x: &TwoComplex) -> i64 {
    x.num_vertices() as i64 - x.num_edges() as i64 + x.num_discs() as i64
}

impl fmt::Display for TwoComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vertices, {} edges, {} discs (chi = {})",
            self.num_vertices(),
            self.num_edges(),
            self.num_discs(),
            euler_characteristic(self)
        )
    }
}

/// Incremental construction of complexes by name, used by the builtins and
/// in tests.
#[derive(Debug, Default, Clone)]
pub struct ComplexBuilder {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    discs: Vec<Disc>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, id: impl Into<String>) -> usize {
        self.vertices.push(id.into());
        self.vertices.len() - 1
    }

    pub fn edge(&mut self, id: impl Into<String>, src: usize, dst: usize) -> usize {
        self.edges.push(Edge { id: id.into(), src, dst });
        self.edges.len() - 1
    }

    /// Adds a disc; letters are `(edge index, +1 | -1)`.
    pub fn disc(&mut self, id: impl Into<String>, word: &[(usize, i64)]) -> usize {
        let boundary = word
            .iter()
            .map(|&(e, s)| Letter { edge: e, sign: Sign::from_i64(s).expect("sign is +1 or -1") })
            .collect();
        self.discs.push(Disc { id: id.into(), boundary });
        self.discs.len() - 1
    }

    pub fn disc_letters(&mut self, id: impl Into<String>, boundary: Vec<Letter>) -> usize {
        self.discs.push(Disc { id: id.into(), boundary });
        self.discs.len() - 1
    }

    pub fn build(self) -> Result<TwoComplex, ComplexError> {
        TwoComplex::new(self.vertices, self.edges, self.discs)
    }
}
