//! Isomorphism of 2-complexes by backtracking over edge assignments,
//! constrained by colors from iterated refinement.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use crate::complex::{Sign, TwoComplex};

/// Isomorphism invariants; equal for isomorphic complexes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    counts: [usize; 3],
    vertices: Vec<u64>,
    edges: Vec<u64>,
    discs: Vec<u64>,
}

/// Stable colors from iterated refinement of vertex, edge and disc colors
/// by their incidences. Edge orientation is ignored.
#[derive(Debug, Clone)]
pub struct Colors {
    pub vertices: Vec<u64>,
    pub edges: Vec<u64>,
    pub discs: Vec<u64>,
}

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

fn classes(c: &[u64]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

pub fn refine(x: &TwoComplex) -> Colors {
    let deg = x.vertex_degrees();
    let occ = x.edge_occurrences();
    let mut corners = vec![0usize; x.num_vertices()];
    for d in x.discs() {
        for &l in &d.boundary {
            corners[x.terminal(l)] += 1;
        }
    }
    let mut incident = vec![Vec::new(); x.num_vertices()];
    for (e, edge) in x.edges().iter().enumerate() {
        incident[edge.src].push(e);
        incident[edge.dst].push(e);
    }
    let mut discs_on = vec![Vec::new(); x.num_edges()];
    for (d, disc) in x.discs().iter().enumerate() {
        for l in &disc.boundary {
            discs_on[l.edge].push(d);
        }
    }
    let profiles = distance_profiles(x.num_vertices(), &incident, x);
    let mut c = Colors {
        vertices: (0..x.num_vertices()).map(|v| hash_of(&(0u8, deg[v], corners[v], &profiles[v]))).collect(),
        edges: x.edges().iter().enumerate().map(|(e, edge)| hash_of(&(1u8, edge.is_loop(), occ[e]))).collect(),
        discs: x.discs().iter().map(|d| hash_of(&(2u8, d.boundary.len()))).collect(),
    };
    let count = |c: &Colors| classes(&c.vertices) + classes(&c.edges) + classes(&c.discs);
    let mut current = count(&c);
    loop {
        let mut corner_at: Vec<Vec<(u64, u64, u64)>> = vec![Vec::new(); x.num_vertices()];
        for (d, disc) in x.discs().iter().enumerate() {
            let n = disc.boundary.len();
            for i in 0..n {
                let (l, m) = (disc.boundary[i], disc.boundary[(i + 1) % n]);
                let (p, q) = (c.edges[l.edge], c.edges[m.edge]);
                corner_at[x.terminal(l)].push((c.discs[d], p.min(q), p.max(q)));
            }
        }
        let vertices = (0..x.num_vertices())
            .map(|v| {
                let mut around: Vec<u64> = incident[v].iter().map(|&e| c.edges[e]).collect();
                around.sort_unstable();
                let corners = &mut corner_at[v];
                corners.sort_unstable();
                hash_of(&(c.vertices[v], around, &*corners))
            })
            .collect();
        let edges = x
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| {
                let (a, b) = (c.vertices[edge.src], c.vertices[edge.dst]);
                let mut on: Vec<u64> = discs_on[e].iter().map(|&d| c.discs[d]).collect();
                on.sort_unstable();
                hash_of(&(c.edges[e], a.min(b), a.max(b), on))
            })
            .collect();
        let discs = x
            .discs()
            .iter()
            .enumerate()
            .map(|(d, disc)| {
                let along: Vec<u64> =
                    disc.boundary.iter().flat_map(|&l| [c.vertices[x.initial(l)], c.edges[l.edge]]).collect();
                hash_of(&(c.discs[d], least_dihedral(&along)))
            })
            .collect();
        let next = Colors { vertices, edges, discs };
        let n = count(&next);
        c = next;
        if n == current {
            return c;
        }
        current = n;
    }
}

/// For each vertex, the number of vertices at each distance in the 1-skeleton.
fn distance_profiles(n: usize, incident: &[Vec<usize>], x: &TwoComplex) -> Vec<Vec<usize>> {
    let mut dist = vec![usize::MAX; n];
    (0..n)
        .map(|s| {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            let mut profile = vec![1];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &e in &incident[v] {
                    let edge = &x.edges()[e];
                    let w = if edge.src == v { edge.dst } else { edge.src };
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        if profile.len() <= dist[w] {
                            profile.push(0);
                        }
                        profile[dist[w]] += 1;
                        queue.push_back(w);
                    }
                }
            }
            profile
        })
        .collect()
}

/// Least rotation of `w` or of its reversal, where `w` alternates vertex and
/// edge entries and rotations keep that alternation.
fn least_dihedral(w: &[u64]) -> Vec<u64> {
    let n = w.len();
    let mut best: Option<Vec<u64>> = None;
    let reversed: Vec<u64> = (0..n).map(|i| w[(2 * n - i) % n]).collect();
    for v in [w, &reversed[..]] {
        for r in (0..n).step_by(2) {
            let candidate: Vec<u64> = v[r..].iter().chain(&v[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    best.unwrap_or_default()
}

pub fn fingerprint_of(x: &TwoComplex, c: &Colors) -> Fingerprint {
    let sorted = |v: &[u64]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v
    };
    Fingerprint {
        counts: [x.num_vertices(), x.num_edges(), x.num_discs()],
        vertices: sorted(&c.vertices),
        edges: sorted(&c.edges),
        discs: sorted(&c.discs),
    }
}

pub fn fingerprint(x: &TwoComplex) -> Fingerprint {
    fingerprint_of(x, &refine(x))
}

fn code(edge: usize, sign: Sign) -> u64 {
    (edge as u64) << 1 | u64::from(sign == Sign::Neg)
}

/// Lexicographically least rotation of the word or of its inverse.
pub fn canonical_cyclic_word(word: &[(usize, Sign)]) -> Vec<u64> {
    let forward: Vec<u64> = word.iter().map(|&(e, s)| code(e, s)).collect();
    let backward: Vec<u64> = word.iter().rev().map(|&(e, s)| code(e, s.flip())).collect();
    let n = word.len();
    let mut best: Option<Vec<u64>> = None;
    for w in [&forward, &backward] {
        for r in 0..n {
            let candidate: Vec<u64> = w[r..].iter().chain(&w[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    best.unwrap_or_default()
}

fn disc_words(x: &TwoComplex) -> HashMap<Vec<u64>, usize> {
    let mut words = HashMap::new();
    for d in x.discs() {
        let w: Vec<(usize, Sign)> = d.boundary.iter().map(|l| (l.edge, l.sign)).collect();
        *words.entry(canonical_cyclic_word(&w)).or_insert(0) += 1;
    }
    words
}

struct Search<'a> {
    a: &'a TwoComplex,
    b: &'a TwoComplex,
    order: Vec<usize>,
    ainv: &'a [u64],
    binv: &'a [u64],
    avinv: &'a [u64],
    bvinv: &'a [u64],
    vmap: Vec<Option<usize>>,
    vused: Vec<bool>,
    emap: Vec<Option<(usize, Sign)>>,
    eused: Vec<bool>,
    /// discs of `a` through each edge, with multiplicity
    discs_on: Vec<Vec<usize>>,
    pending: Vec<usize>,
    /// edges of `b` at each vertex, loops once
    b_incident: Vec<Vec<usize>>,
    target_words: HashMap<Vec<u64>, usize>,
}

impl Search<'_> {
    fn mapped_word(&self, d: usize) -> Vec<u64> {
        let w: Vec<(usize, Sign)> = self.a.discs()[d]
            .boundary
            .iter()
            .map(|l| {
                let (f, s) = self.emap[l.edge].expect("edge assigned");
                (f, l.sign.times(s))
            })
            .collect();
        canonical_cyclic_word(&w)
    }

    fn bind(&mut self, v: usize, w: usize) -> Option<bool> {
        match self.vmap[v] {
            Some(x) if x == w => Some(false),
            Some(_) => None,
            None if self.vused[w] || self.avinv[v] != self.bvinv[w] => None,
            None => {
                self.vmap[v] = Some(w);
                self.vused[w] = true;
                Some(true)
            }
        }
    }

    fn unbind(&mut self, v: usize) {
        if let Some(w) = self.vmap[v].take() {
            self.vused[w] = false;
        }
    }

    fn run(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            let mut words: HashMap<Vec<u64>, usize> = HashMap::new();
            for d in 0..self.a.num_discs() {
                *words.entry(self.mapped_word(d)).or_insert(0) += 1;
            }
            return words == self.target_words;
        }
        let e = self.order[k];
        let edge = self.a.edges()[e].clone();
        let b = self.b;
        let anchor = self.vmap[edge.src].or(self.vmap[edge.dst]);
        let candidates: Vec<usize> = match anchor {
            Some(w) => self.b_incident[w].clone(),
            None => (0..b.num_edges()).collect(),
        };
        for f in candidates {
            if self.eused[f] || self.binv[f] != self.ainv[e] {
                continue;
            }
            for sign in [Sign::Pos, Sign::Neg] {
                let image = &b.edges()[f];
                let (s, t) = match sign {
                    Sign::Pos => (image.src, image.dst),
                    Sign::Neg => (image.dst, image.src),
                };
                let Some(bound_src) = self.bind(edge.src, s) else { continue };
                let Some(bound_dst) = self.bind(edge.dst, t) else {
                    if bound_src {
                        self.unbind(edge.src);
                    }
                    continue;
                };
                self.emap[e] = Some((f, sign));
                self.eused[f] = true;
                let mut ok = true;
                for i in 0..self.discs_on[e].len() {
                    let d = self.discs_on[e][i];
                    self.pending[d] -= 1;
                    if self.pending[d] == 0 && !self.target_words.contains_key(&self.mapped_word(d)) {
                        ok = false;
                    }
                }
                if ok && self.run(k + 1) {
                    return true;
                }
                for i in 0..self.discs_on[e].len() {
                    let d = self.discs_on[e][i];
                    self.pending[d] += 1;
                }
                self.emap[e] = None;
                self.eused[f] = false;
                if bound_dst {
                    self.unbind(edge.dst);
                }
                if bound_src {
                    self.unbind(edge.src);
                }
            }
        }
        false
    }
}

/// Edges in breadth-first order so that each edge after the first of its
/// component touches an already visited vertex.
fn edge_order(x: &TwoComplex) -> Vec<usize> {
    let mut incident = vec![Vec::new(); x.num_vertices()];
    for (e, edge) in x.edges().iter().enumerate() {
        incident[edge.src].push(e);
        incident[edge.dst].push(e);
    }
    let mut seen_v = vec![false; x.num_vertices()];
    let mut seen_e = vec![false; x.num_edges()];
    let mut order = Vec::new();
    for s in 0..x.num_vertices() {
        if seen_v[s] {
            continue;
        }
        seen_v[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &incident[v] {
                if seen_e[e] {
                    continue;
                }
                seen_e[e] = true;
                order.push(e);
                let edge = &x.edges()[e];
                let w = if edge.src == v { edge.dst } else { edge.src };
                if !seen_v[w] {
                    seen_v[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

pub fn are_isomorphic(a: &TwoComplex, b: &TwoComplex) -> bool {
    isomorphic_with(a, &refine(a), b, &refine(b))
}

/// As [`are_isomorphic`], with colors from [`refine`] already computed.
pub fn isomorphic_with(a: &TwoComplex, ac: &Colors, b: &TwoComplex, bc: &Colors) -> bool {
    if fingerprint_of(a, ac) != fingerprint_of(b, bc) {
        return false;
    }
    let mut discs_on = vec![Vec::new(); a.num_edges()];
    for (d, disc) in a.discs().iter().enumerate() {
        for l in &disc.boundary {
            discs_on[l.edge].push(d);
        }
    }
    let mut b_incident = vec![Vec::new(); b.num_vertices()];
    for (f, edge) in b.edges().iter().enumerate() {
        b_incident[edge.src].push(f);
        if !edge.is_loop() {
            b_incident[edge.dst].push(f);
        }
    }
    let mut search = Search {
        a,
        b,
        order: edge_order(a),
        ainv: &ac.edges,
        binv: &bc.edges,
        avinv: &ac.vertices,
        bvinv: &bc.vertices,
        vmap: vec![None; a.num_vertices()],
        vused: vec![false; b.num_vertices()],
        emap: vec![None; a.num_edges()],
        eused: vec![false; b.num_edges()],
        discs_on,
        pending: a.discs().iter().map(|d| d.boundary.len()).collect(),
        b_incident,
        target_words: disc_words(b),
    };
    search.run(0)
}
