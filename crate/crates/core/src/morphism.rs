//! Combinatorial maps between 2-complexes.
//!
//! A map sends vertices to vertices, edges to signed edges and discs to discs
//! together with the rotation and reflection aligning the boundary words.
//! Immersions are maps that are injective on every vertex link.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{CellMask, Letter, Sign, TwoComplex};
use crate::error::MapError;
use crate::link::{all_links, link_graph_unchecked, Corner, EdgeEnd};

/// Where a disc goes: the target disc, the rotation offset and whether the
/// target word is read inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiscImage {
    pub disc: usize,
    pub offset: usize,
    pub flip: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellularMap {
    source: Arc<TwoComplex>,
    target: Arc<TwoComplex>,
    vertex_map: Vec<usize>,
    edge_map: Vec<(usize, Sign)>,
    disc_map: Vec<DiscImage>,
}

/// An element of a vertex link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkElement {
    Node(EdgeEnd),
    Arc(Corner),
}

/// Two distinct link elements at `vertex` with the same image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImmersionWitness {
    pub vertex: usize,
    pub first: LinkElement,
    pub second: LinkElement,
    pub image: LinkElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringCheck {
    pub is_covering: bool,
    pub degree: usize,
    pub witness: Option<String>,
}

/// Letter `m` of `word` read with the given reflection.
fn oriented_letter(word: &[Letter], m: usize, flip: bool) -> Letter {
    if flip {
        word[word.len() - 1 - m].inverse()
    } else {
        word[m]
    }
}

impl CellularMap {
    /// Builds and validates a map.
    pub fn new(
        source: Arc<TwoComplex>,
        target: Arc<TwoComplex>,
        vertex_map: Vec<usize>,
        edge_map: Vec<(usize, Sign)>,
        disc_map: Vec<DiscImage>,
    ) -> Result<CellularMap, MapError> {
        let f = CellularMap { source, target, vertex_map, edge_map, disc_map };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: Arc<TwoComplex>,
        target: Arc<TwoComplex>,
        vertex_map: Vec<usize>,
        edge_map: Vec<(usize, Sign)>,
        disc_map: Vec<DiscImage>,
    ) -> CellularMap {
        CellularMap { source, target, vertex_map, edge_map, disc_map }
    }

    pub fn identity(x: &Arc<TwoComplex>) -> CellularMap {
        CellularMap {
            source: x.clone(),
            target: x.clone(),
            vertex_map: (0..x.num_vertices()).collect(),
            edge_map: (0..x.num_edges()).map(|e| (e, Sign::Pos)).collect(),
            disc_map: (0..x.num_discs()).map(|d| DiscImage { disc: d, offset: 0, flip: false }).collect(),
        }
    }

    pub fn source(&self) -> &Arc<TwoComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TwoComplex> {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[(usize, Sign)] {
        &self.edge_map
    }

    pub fn disc_map(&self) -> &[DiscImage] {
        &self.disc_map
    }

    pub fn map_letter(&self, l: Letter) -> Letter {
        let (f, s) = self.edge_map[l.edge];
        Letter { edge: f, sign: l.sign.times(s) }
    }

    /// Checks both map invariants letter by letter.
    pub fn validate(&self) -> Result<(), MapError> {
        let (x, y) = (&*self.source, &*self.target);
        if self.vertex_map.len() != x.num_vertices() {
            return Err(MapError::Shape("vertex map"));
        }
        if self.edge_map.len() != x.num_edges() {
            return Err(MapError::Shape("edge map"));
        }
        if self.disc_map.len() != x.num_discs() {
            return Err(MapError::Shape("disc map"));
        }
        for (v, &w) in self.vertex_map.iter().enumerate() {
            if w >= y.num_vertices() {
                return Err(MapError::OutOfRange { kind: "vertex", id: x.vertices()[v].clone() });
            }
        }
        for (e, &(f, s)) in self.edge_map.iter().enumerate() {
            let edge = &x.edges()[e];
            if f >= y.num_edges() {
                return Err(MapError::OutOfRange { kind: "edge", id: edge.id.clone() });
            }
            let image = &y.edges()[f];
            let (src, dst) = match s {
                Sign::Pos => (image.src, image.dst),
                Sign::Neg => (image.dst, image.src),
            };
            if self.vertex_map[edge.src] != src || self.vertex_map[edge.dst] != dst {
                return Err(MapError::EndpointMismatch { edge: edge.id.clone() });
            }
        }
        for (d, img) in self.disc_map.iter().enumerate() {
            let disc = &x.discs()[d];
            if img.disc >= y.num_discs() {
                return Err(MapError::OutOfRange { kind: "disc", id: disc.id.clone() });
            }
            let word = &y.discs()[img.disc].boundary;
            let len = disc.boundary.len();
            if word.len() != len {
                return Err(MapError::LengthMismatch {
                    disc: disc.id.clone(),
                    source_len: len,
                    target_len: word.len(),
                });
            }
            for (i, &l) in disc.boundary.iter().enumerate() {
                if self.map_letter(l) != oriented_letter(word, (i + img.offset) % len, img.flip) {
                    return Err(MapError::BoundaryMismatch { disc: disc.id.clone(), index: i });
                }
            }
        }
        Ok(())
    }

    /// `g ∘ self`: first `self`, then `g`.
    pub fn compose(&self, g: &CellularMap) -> Result<CellularMap, MapError> {
        if !(Arc::ptr_eq(&self.target, &g.source) || *self.target == *g.source) {
            return Err(MapError::DomainMismatch);
        }
        let vertex_map = self.vertex_map.iter().map(|&v| g.vertex_map[v]).collect();
        let edge_map = self
            .edge_map
            .iter()
            .map(|&(f, s)| {
                let (h, t) = g.edge_map[f];
                (h, s.times(t))
            })
            .collect();
        let disc_map = self
            .disc_map
            .iter()
            .map(|a| {
                let b = g.disc_map[a.disc];
                let len = g.target.discs()[b.disc].boundary.len();
                let offset = if a.flip {
                    (a.offset + len - b.offset % len) % len
                } else {
                    (a.offset + b.offset) % len
                };
                DiscImage { disc: b.disc, offset, flip: a.flip ^ b.flip }
            })
            .collect();
        CellularMap::new(self.source.clone(), g.target.clone(), vertex_map, edge_map, disc_map)
    }

    fn node_image(&self, n: EdgeEnd) -> EdgeEnd {
        let (f, s) = self.edge_map[n.edge];
        EdgeEnd { edge: f, end: n.end.oriented(s) }
    }

    fn corner_image(&self, c: Corner) -> Corner {
        let img = self.disc_map[c.disc];
        let len = self.source.discs()[c.disc].boundary.len();
        let p = (c.index + img.offset) % len;
        let index = if img.flip { (2 * len - 2 - p) % len } else { p };
        Corner { disc: img.disc, index }
    }

    /// Checks injectivity on every vertex link; returns the first collision.
    pub fn is_immersion(&self) -> (bool, Option<ImmersionWitness>) {
        for v in 0..self.source.num_vertices() {
            let link = link_graph_unchecked(&self.source, v);
            let mut seen: HashMap<LinkElement, LinkElement> = HashMap::new();
            let elements = link
                .nodes
                .iter()
                .map(|&n| (LinkElement::Node(n), LinkElement::Node(self.node_image(n))))
                .chain(
                    link.arcs
                        .iter()
                        .map(|a| (LinkElement::Arc(a.corner), LinkElement::Arc(self.corner_image(a.corner)))),
                );
            for (element, image) in elements {
                if let Some(&first) = seen.get(&image) {
                    return (false, Some(ImmersionWitness { vertex: v, first, second: element, image }));
                }
                seen.insert(image, element);
            }
        }
        (true, None)
    }

    /// Immersion with constant fibre size whose link maps are bijective.
    pub fn is_covering(&self) -> CoveringCheck {
        let fail = |why: String| CoveringCheck { is_covering: false, degree: 0, witness: Some(why) };
        if let (false, Some(w)) = self.is_immersion() {
            return fail(format!("not an immersion at vertex {}", self.source.vertices()[w.vertex]));
        }
        let (x, y) = (&*self.source, &*self.target);
        let mut fibres = vec![0usize; y.num_vertices()];
        for &w in &self.vertex_map {
            fibres[w] += 1;
        }
        let mut edge_fibres = vec![0usize; y.num_edges()];
        for &(f, _) in &self.edge_map {
            edge_fibres[f] += 1;
        }
        let mut disc_fibres = vec![0usize; y.num_discs()];
        for img in &self.disc_map {
            disc_fibres[img.disc] += 1;
        }
        let degree = match fibres.first() {
            Some(&n) if n > 0 => n,
            _ => return fail("empty vertex fibre".into()),
        };
        for (kind, counts) in [("vertex", &fibres), ("edge", &edge_fibres), ("disc", &disc_fibres)] {
            if let Some(i) = counts.iter().position(|&c| c != degree) {
                return fail(format!("{kind} #{i} has fibre of size {} instead of {degree}", counts[i]));
            }
        }
        let target_links = all_links(y);
        for v in 0..x.num_vertices() {
            let link = link_graph_unchecked(x, v);
            let tl = &target_links[self.vertex_map[v]];
            if link.nodes.len() != tl.nodes.len() || link.arcs.len() != tl.arcs.len() {
                return fail(format!("link of {} does not surject onto its image link", x.vertices()[v]));
            }
        }
        CoveringCheck { is_covering: true, degree, witness: None }
    }

    /// Whether this is an injective, orientation-preserving map with trivial
    /// disc offsets.
    pub fn is_inclusion(&self) -> bool {
        fn distinct(it: impl Iterator<Item = usize>) -> bool {
            let mut seen = HashSet::new();
            it.into_iter().all(|x| seen.insert(x))
        }
        self.edge_map.iter().all(|&(_, s)| s == Sign::Pos)
            && self.disc_map.iter().all(|d| d.offset == 0 && !d.flip)
            && distinct(self.vertex_map.iter().copied())
            && distinct(self.edge_map.iter().map(|e| e.0))
            && distinct(self.disc_map.iter().map(|d| d.disc))
    }

    /// The image of the map as a subcomplex of the target.
    pub fn image_subcomplex(&self) -> (Arc<TwoComplex>, CellularMap) {
        let mut mask = CellMask::none(&self.target);
        for &v in &self.vertex_map {
            mask.vertices[v] = true;
        }
        for &(e, _) in &self.edge_map {
            mask.edges[e] = true;
        }
        for d in &self.disc_map {
            mask.discs[d.disc] = true;
        }
        self.target.subcomplex(&mask)
    }

    pub fn to_raw(&self) -> RawMap {
        let (x, y) = (&*self.source, &*self.target);
        RawMap {
            vertex_map: self
                .vertex_map
                .iter()
                .enumerate()
                .map(|(v, &w)| (x.vertices()[v].clone(), y.vertices()[w].clone()))
                .collect(),
            edge_map: self
                .edge_map
                .iter()
                .enumerate()
                .map(|(e, &(f, s))| (x.edges()[e].id.clone(), (y.edges()[f].id.clone(), s.to_i64())))
                .collect(),
            disc_map: self
                .disc_map
                .iter()
                .enumerate()
                .map(|(d, img)| {
                    (x.discs()[d].id.clone(), (y.discs()[img.disc].id.clone(), img.offset, img.flip))
                })
                .collect(),
        }
    }

    /// Resolves a map document against its source and target and validates it.
    pub fn from_raw(
        source: Arc<TwoComplex>,
        target: Arc<TwoComplex>,
        raw: &RawMap,
    ) -> Result<CellularMap, MapError> {
        let unknown = |kind: &'static str, id: &str| MapError::UnknownId { kind, id: id.to_string() };
        let mut vertex_map = Vec::with_capacity(source.num_vertices());
        for v in source.vertices() {
            let w = raw.vertex_map.get(v).ok_or_else(|| unknown("vertex", v))?;
            vertex_map.push(target.vertex_index(w).ok_or_else(|| unknown("vertex", w))?);
        }
        let mut edge_map = Vec::with_capacity(source.num_edges());
        for e in source.edges() {
            let (f, s) = raw.edge_map.get(&e.id).ok_or_else(|| unknown("edge", &e.id))?;
            let fi = target.edge_index(f).ok_or_else(|| unknown("edge", f))?;
            let sign = Sign::from_i64(*s).ok_or_else(|| unknown("sign", &s.to_string()))?;
            edge_map.push((fi, sign));
        }
        let mut disc_map = Vec::with_capacity(source.num_discs());
        for d in source.discs() {
            let (t, offset, flip) = raw.disc_map.get(&d.id).ok_or_else(|| unknown("disc", &d.id))?;
            let di = target.disc_index(t).ok_or_else(|| unknown("disc", t))?;
            disc_map.push(DiscImage { disc: di, offset: *offset, flip: *flip });
        }
        CellularMap::new(source, target, vertex_map, edge_map, disc_map)
    }
}

/// JSON form of a map, keyed by cell ids.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RawMap {
    #[serde(default)]
    pub vertex_map: BTreeMap<String, String>,
    #[serde(default)]
    pub edge_map: BTreeMap<String, (String, i64)>,
    #[serde(default)]
    pub disc_map: BTreeMap<String, (String, usize, bool)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexBuilder;

    fn torus() -> Arc<TwoComplex> {
        let mut b = ComplexBuilder::new();
        let v = b.vertex("v");
        let a = b.edge("a", v, v);
        let c = b.edge("b", v, v);
        b.disc("D", &[(a, 1), (c, 1), (a, -1), (c, -1)]);
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn identity_is_a_degree_one_covering() {
        let x = torus();
        let id = CellularMap::identity(&x);
        id.validate().unwrap();
        assert_eq!(id.is_immersion(), (true, None));
        let c = id.is_covering();
        assert!(c.is_covering);
        assert_eq!(c.degree, 1);
        assert_eq!(id.compose(&id).unwrap(), id);
    }

    #[test]
    fn rotated_disc_image() {
        let mut b = ComplexBuilder::new();
        let v = b.vertex("v");
        let a = b.edge("a", v, v);
        let c = b.edge("b", v, v);
        b.disc("D", &[(a, 1), (c, 1)]);
        let x = Arc::new(b.build().unwrap());
        let mut b = ComplexBuilder::new();
        let v = b.vertex("v");
        let a = b.edge("a", v, v);
        let c = b.edge("b", v, v);
        b.disc("E", &[(c, 1), (a, 1)]);
        let y = Arc::new(b.build().unwrap());
        let edges = vec![(0, Sign::Pos), (1, Sign::Pos)];
        let f = CellularMap::new(
            x.clone(),
            y.clone(),
            vec![0],
            edges.clone(),
            vec![DiscImage { disc: 0, offset: 1, flip: false }],
        );
        assert!(f.is_ok());
        let bad = CellularMap::new(x, y, vec![0], edges, vec![DiscImage { disc: 0, offset: 0, flip: false }]);
        assert!(matches!(bad, Err(MapError::BoundaryMismatch { .. })));
    }

    #[test]
    fn flipped_composition_validates() {
        let x = torus();
        // a -> a^-1 reverses the word: a^-1 b^-1 a b read inverted
        let f = CellularMap::new(
            x.clone(),
            x.clone(),
            vec![0],
            vec![(0, Sign::Neg), (1, Sign::Neg)],
            vec![DiscImage { disc: 0, offset: 0, flip: false }],
        );
        // D maps letter-wise to a^-1 b^-1 a b = rotation by 2 of D
        assert!(f.is_err());
        let f = CellularMap::new(
            x.clone(),
            x.clone(),
            vec![0],
            vec![(0, Sign::Neg), (1, Sign::Neg)],
            vec![DiscImage { disc: 0, offset: 2, flip: false }],
        )
        .unwrap();
        let g = CellularMap::new(
            x.clone(),
            x.clone(),
            vec![0],
            vec![(1, Sign::Pos), (0, Sign::Pos)],
            vec![DiscImage { disc: 0, offset: 0, flip: true }],
        )
        .unwrap();
        for (p, q) in [(&f, &g), (&g, &f), (&g, &g), (&f, &f)] {
            let h = p.compose(q).unwrap();
            assert!(h.is_covering().is_covering);
        }
    }

    #[test]
    fn folding_two_edges_is_not_an_immersion() {
        // two edges out of a vertex folded onto one
        let mut b = ComplexBuilder::new();
        let p = b.vertex("p");
        let q = b.vertex("q");
        let r = b.vertex("r");
        b.edge("e1", p, q);
        b.edge("e2", p, r);
        let x = Arc::new(b.build().unwrap());
        let mut b = ComplexBuilder::new();
        let p = b.vertex("p");
        let q = b.vertex("q");
        b.edge("e", p, q);
        let y = Arc::new(b.build().unwrap());
        let f = CellularMap::new(x, y, vec![0, 1, 1], vec![(0, Sign::Pos), (0, Sign::Pos)], vec![]).unwrap();
        let (ok, w) = f.is_immersion();
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!(w.vertex, 0);
        assert!(matches!(w.first, LinkElement::Node(_)));
        assert!(!f.is_covering().is_covering);
    }

    #[test]
    fn subcomplex_inclusion_is_not_a_covering() {
        let x = torus();
        let mut mask = CellMask::full(&x);
        mask.discs[0] = false;
        let (_, inc) = x.subcomplex(&mask);
        assert!(inc.is_immersion().0);
        assert!(inc.is_inclusion());
        assert!(!inc.is_covering().is_covering);
        let (img, _) = inc.image_subcomplex();
        assert_eq!(img.num_discs(), 0);
    }

    #[test]
    fn raw_round_trip() {
        let x = torus();
        let id = CellularMap::identity(&x);
        let raw = id.to_raw();
        let text = serde_json::to_string(&raw).unwrap();
        let back: RawMap = serde_json::from_str(&text).unwrap();
        assert_eq!(CellularMap::from_raw(x.clone(), x, &back).unwrap(), id);
    }
}
