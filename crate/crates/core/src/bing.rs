//! Bing's house with two rooms, built from unit squares on the integer grid
//! and then coarsened.
//!
//! ```text
//!   side view (y = 1.5 slice)            z
//!                                        ^
//!   +-----------------+---+-----+        2 +---- roof, hole over B ----+
//!   |                 | B |mem B|          |  upper room   tube B      |
//!   +-----+---+-------+   +-----+        1 +---- floor, holes A and B -+
//!   |mem A| A |                 |          |  tube A       lower room  |
//!   +-----+   +-----------------+        0 +---- base, hole under A ---+
//!   x=0   1   2       3   4     5
//! ```
//!
//! The box is `[0,5] x [0,3] x [0,2]` with a floor at `z = 1`. Tube A
//! (`[1,2] x [1,2] x [0,1]`) leads from a hole in the base up into the upper
//! room; tube B (`[3,4] x [1,2] x [1,2]`) leads from a hole in the roof down
//! into the lower room. Each tube is joined to a side wall by a membrane in
//! the plane `y = 1`, which cuts the room around it into a ball.
//!
//! Cyclic blade orders come from the angular position of each square around
//! each grid edge. Coarsening merges discs across edges used twice, removes
//! spurs and smooths valence-two vertices, carrying the embedding data along.

use std::collections::BTreeMap;

use crate::complex::{Disc, Edge, Letter, Sign, TwoComplex};
use crate::thickening::{Blade, EmbeddingData, Side};

type Point = [i32; 3];

struct Square {
    origin: Point,
    normal: usize,
}

fn add(p: Point, axis: usize, d: i32) -> Point {
    let mut q = p;
    q[axis] += d;
    q
}

/// Unit squares with normal `n` at height `level`, spanning `a_range` along
/// axis `(n+1)%3` and `b_range` along axis `(n+2)%3`, minus `holes`.
fn rect(
    out: &mut Vec<Square>,
    n: usize,
    level: i32,
    a_range: (i32, i32),
    b_range: (i32, i32),
    holes: &[(i32, i32)],
) {
    for a in a_range.0..a_range.1 {
        for b in b_range.0..b_range.1 {
            if holes.contains(&(a, b)) {
                continue;
            }
            let mut origin = [0; 3];
            origin[n] = level;
            origin[(n + 1) % 3] = a;
            origin[(n + 2) % 3] = b;
            out.push(Square { origin, normal: n });
        }
    }
}

fn house_squares() -> Vec<Square> {
    const X: usize = 0;
    const Y: usize = 1;
    const Z: usize = 2;
    let mut s = Vec::new();
    // horizontal: (a, b) = (x, y)
    rect(&mut s, Z, 0, (0, 5), (0, 3), &[(1, 1)]);
    rect(&mut s, Z, 1, (0, 5), (0, 3), &[(1, 1), (3, 1)]);
    rect(&mut s, Z, 2, (0, 5), (0, 3), &[(3, 1)]);
    // normal x: (a, b) = (y, z)
    for level in [0, 5] {
        rect(&mut s, X, level, (0, 3), (0, 2), &[]);
    }
    for level in [1, 2] {
        rect(&mut s, X, level, (1, 2), (0, 1), &[]);
    }
    for level in [3, 4] {
        rect(&mut s, X, level, (1, 2), (1, 2), &[]);
    }
    // normal y: (a, b) = (z, x)
    for level in [0, 3] {
        rect(&mut s, Y, level, (0, 2), (0, 5), &[]);
    }
    for level in [1, 2] {
        rect(&mut s, Y, level, (0, 1), (1, 2), &[]);
        rect(&mut s, Y, level, (1, 2), (3, 4), &[]);
    }
    rect(&mut s, Y, 1, (0, 1), (0, 1), &[]);
    rect(&mut s, Y, 1, (1, 2), (4, 5), &[]);
    s
}

fn cross(a: [i32; 3], b: [i32; 3]) -> [i32; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn unit(axis: usize, d: i32) -> [i32; 3] {
    add([0; 3], axis, d)
}

#[derive(Clone, Copy)]
struct WorkBlade {
    edge: usize,
    sign: Sign,
    side: Side,
    disc: usize,
}

struct WorkEdge {
    src: usize,
    dst: usize,
    alive: bool,
    order: Vec<usize>,
}

/// Mutable complex with stable blade identifiers.
struct Work {
    vertex_alive: Vec<bool>,
    edges: Vec<WorkEdge>,
    discs: Vec<Option<Vec<usize>>>,
    blades: Vec<WorkBlade>,
}

fn rotate_to(word: &[usize], at: usize) -> Vec<usize> {
    word[at..].iter().chain(&word[..at]).copied().collect()
}

impl Work {
    fn from_squares(squares: &[Square]) -> Work {
        let mut vertex_ids: BTreeMap<Point, usize> = BTreeMap::new();
        let mut edge_ids: BTreeMap<(Point, usize), usize> = BTreeMap::new();
        for s in squares {
            let (a, b) = ((s.normal + 1) % 3, (s.normal + 2) % 3);
            for p in [s.origin, add(s.origin, a, 1), add(s.origin, b, 1), add(add(s.origin, a, 1), b, 1)] {
                let next = vertex_ids.len();
                vertex_ids.entry(p).or_insert(next);
            }
            for key in [(s.origin, a), (s.origin, b), (add(s.origin, b, 1), a), (add(s.origin, a, 1), b)] {
                let next = edge_ids.len();
                edge_ids.entry(key).or_insert(next);
            }
        }
        let mut edges: Vec<WorkEdge> = vec![];
        let mut keys: Vec<(Point, usize)> = vec![([0; 3], 0); edge_ids.len()];
        for (&key, &i) in &edge_ids {
            keys[i] = key;
        }
        for &(p, axis) in &keys {
            edges.push(WorkEdge { src: vertex_ids[&p], dst: vertex_ids[&add(p, axis, 1)], alive: true, order: vec![] });
        }
        let mut work = Work { vertex_alive: vec![true; vertex_ids.len()], edges, discs: vec![], blades: vec![] };
        // (angle index, blade) per edge
        let mut around: Vec<Vec<(usize, usize)>> = vec![Vec::new(); keys.len()];
        for (d, s) in squares.iter().enumerate() {
            let (a, b) = ((s.normal + 1) % 3, (s.normal + 2) % 3);
            let p = s.origin;
            // counterclockwise about the normal: (edge start, axis, sign)
            let sides = [(p, a, Sign::Pos), (add(p, a, 1), b, Sign::Pos), (add(p, b, 1), a, Sign::Neg), (p, b, Sign::Neg)];
            let mut word = Vec::new();
            for (start, t, sign) in sides {
                let edge = edge_ids[&(start, t)];
                // direction from the edge into the square
                let other = if t == a { b } else { a };
                let r = unit(other, if p[other] == start[other] { 1 } else { -1 });
                let n = unit(s.normal, 1);
                let tr = cross(unit(t, 1), r);
                let side = if (0..3).map(|i| n[i] * tr[i]).sum::<i32>() > 0 { Side::Succ } else { Side::Pred };
                let (u, w) = ((t + 1) % 3, (t + 2) % 3);
                let angle = match (r[u], r[w]) {
                    (1, _) => 0,
                    (_, 1) => 1,
                    (-1, _) => 2,
                    _ => 3,
                };
                let id = work.blades.len();
                work.blades.push(WorkBlade { edge, sign, side, disc: d });
                around[edge].push((angle, id));
                word.push(id);
            }
            work.discs.push(Some(word));
        }
        for (e, mut list) in around.into_iter().enumerate() {
            list.sort();
            work.edges[e].order = list.into_iter().map(|(_, b)| b).collect();
        }
        work
    }

    fn merge_across(&mut self, e: usize) -> bool {
        let [b1, b2] = self.edges[e].order[..] else { return false };
        let (d1, d2) = (self.blades[b1].disc, self.blades[b2].disc);
        if d1 == d2 {
            return false;
        }
        let w1 = self.discs[d1].clone().expect("live disc");
        let w2 = self.discs[d2].clone().expect("live disc");
        if w1.len() + w2.len() == 2 {
            return false;
        }
        let p1 = w1.iter().position(|&b| b == b1).expect("blade in its disc");
        let p2 = w2.iter().position(|&b| b == b2).expect("blade in its disc");
        let u: Vec<usize> = rotate_to(&w1, (p1 + 1) % w1.len())[..w1.len() - 1].to_vec();
        let mut v: Vec<usize> = rotate_to(&w2, p2)[1..].to_vec();
        if self.blades[b1].sign == self.blades[b2].sign {
            v.reverse();
            for &b in &v {
                self.blades[b].sign = self.blades[b].sign.flip();
            }
        }
        // positive sides agree when they face different sectors of a two-blade edge
        if self.blades[b1].side == self.blades[b2].side {
            for &b in &v {
                self.blades[b].side = self.blades[b].side.opposite();
            }
        }
        for &b in &v {
            self.blades[b].disc = d1;
        }
        let mut merged = u;
        merged.extend(v);
        self.discs[d1] = Some(merged);
        self.discs[d2] = None;
        self.edges[e].alive = false;
        self.edges[e].order.clear();
        true
    }

    /// Edge ends at each vertex: (edge, vertex is its target).
    fn ends_at(&self, v: usize) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        for (e, edge) in self.edges.iter().enumerate().filter(|(_, e)| e.alive) {
            if edge.src == v {
                out.push((e, false));
            }
            if edge.dst == v {
                out.push((e, true));
            }
        }
        out
    }

    fn remove_spur(&mut self, v: usize) -> bool {
        let ends = self.ends_at(v);
        let [(f, at_target)] = ends[..] else { return false };
        let [b1, b2] = self.edges[f].order[..] else { return false };
        let d = self.blades[b1].disc;
        if self.blades[b2].disc != d {
            return false;
        }
        let word = self.discs[d].clone().expect("live disc");
        let len = word.len();
        if len <= 2 {
            return false;
        }
        let (i, j) = (word.iter().position(|&b| b == b1).unwrap(), word.iter().position(|&b| b == b2).unwrap());
        let first = if (i + 1) % len == j {
            i
        } else if (j + 1) % len == i {
            j
        } else {
            return false;
        };
        // the corner between the two letters must sit at v
        let arrives = (self.blades[word[first]].sign == Sign::Pos) == at_target;
        if !arrives {
            return false;
        }
        let second = (first + 1) % len;
        let rest: Vec<usize> = word.iter().enumerate().filter(|&(k, _)| k != first && k != second).map(|(_, &b)| b).collect();
        self.discs[d] = Some(rest);
        self.edges[f].alive = false;
        self.edges[f].order.clear();
        self.vertex_alive[v] = false;
        true
    }

    fn smooth(&mut self, v: usize) -> bool {
        let ends = self.ends_at(v);
        let [(f, f_at_target), (g, g_at_target)] = ends[..] else { return false };
        if f == g || self.edges[f].order.len() != self.edges[g].order.len() {
            return false;
        }
        // h runs along f towards v and then along g away from v
        let f_sign = if f_at_target { Sign::Pos } else { Sign::Neg };
        let g_sign = if g_at_target { Sign::Neg } else { Sign::Pos };
        let mut rewrites = Vec::new();
        for (d, word) in self.discs.iter().enumerate() {
            let Some(word) = word else { continue };
            let len = word.len();
            for k in 0..len {
                let (x, y) = (self.blades[word[k]], self.blades[word[(k + 1) % len]]);
                if x.edge == f && x.sign == f_sign && y.edge == g && y.sign == g_sign {
                    rewrites.push((d, word[k], word[(k + 1) % len], Sign::Pos));
                } else if x.edge == g && x.sign == g_sign.flip() && y.edge == f && y.sign == f_sign.flip() {
                    rewrites.push((d, word[(k + 1) % len], word[k], Sign::Neg));
                }
            }
        }
        if rewrites.len() != self.edges[f].order.len() {
            return false;
        }
        let a = if f_at_target { self.edges[f].src } else { self.edges[f].dst };
        let b = if g_at_target { self.edges[g].src } else { self.edges[g].dst };
        if f_sign == Sign::Neg {
            self.edges[f].order.reverse();
            for &bl in &self.edges[f].order {
                self.blades[bl].side = self.blades[bl].side.opposite();
            }
        }
        for (d, keep, drop, sign) in rewrites {
            self.blades[keep].sign = sign;
            let word = self.discs[d].as_mut().expect("live disc");
            word.retain(|&bl| bl != drop);
        }
        self.edges[f].src = a;
        self.edges[f].dst = b;
        self.edges[g].alive = false;
        self.edges[g].order.clear();
        self.vertex_alive[v] = false;
        true
    }

    fn coarsen(&mut self) {
        loop {
            let mut changed = false;
            for e in 0..self.edges.len() {
                if self.edges[e].alive && self.merge_across(e) {
                    changed = true;
                }
            }
            for v in 0..self.vertex_alive.len() {
                if self.vertex_alive[v] && (self.remove_spur(v) || self.smooth(v)) {
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn finish(&self) -> (TwoComplex, EmbeddingData) {
        let mut vertex_index = vec![usize::MAX; self.vertex_alive.len()];
        let mut vertices = Vec::new();
        for (v, &alive) in self.vertex_alive.iter().enumerate() {
            if alive {
                vertex_index[v] = vertices.len();
                vertices.push(format!("v{}", vertices.len()));
            }
        }
        let mut edge_index = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (e, edge) in self.edges.iter().enumerate().filter(|(_, e)| e.alive) {
            edge_index[e] = edges.len();
            edges.push(Edge { id: format!("e{}", edges.len()), src: vertex_index[edge.src], dst: vertex_index[edge.dst] });
        }
        let mut place = vec![(usize::MAX, 0); self.blades.len()];
        let mut discs = Vec::new();
        let mut coorientations = Vec::new();
        for word in self.discs.iter().flatten() {
            let d = discs.len();
            for (i, &b) in word.iter().enumerate() {
                place[b] = (d, i);
            }
            let boundary = word
                .iter()
                .map(|&b| Letter { edge: edge_index[self.blades[b].edge], sign: self.blades[b].sign })
                .collect();
            discs.push(Disc { id: format!("D{d}"), boundary });
            coorientations.push(word.iter().map(|&b| self.blades[b].side).collect());
        }
        let edge_orders = self
            .edges
            .iter()
            .filter(|e| e.alive)
            .enumerate()
            .map(|(e, edge)| {
                edge.order
                    .iter()
                    .map(|&b| Blade { disc: place[b].0, occ: place[b].1, edge: e, sign: self.blades[b].sign })
                    .collect()
            })
            .collect();
        let x = TwoComplex::new(vertices, edges, discs).expect("coarsening keeps boundary words closed");
        (x, EmbeddingData { edge_orders, coorientations })
    }
}

/// The square-by-square house and its embedding data, before coarsening.
pub(crate) fn cubical_house() -> (TwoComplex, EmbeddingData) {
    Work::from_squares(&house_squares()).finish()
}

pub(crate) fn bing_house() -> (TwoComplex, EmbeddingData) {
    let mut work = Work::from_squares(&house_squares());
    work.coarsen();
    work.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::euler_characteristic;
    use crate::thickening::validate_embedding;

    #[test]
    fn cubical_house_is_a_valid_embedded_spine() {
        let (x, emb) = cubical_house();
        assert_eq!(x.num_discs(), 83);
        assert_eq!(euler_characteristic(&x), 1);
        validate_embedding(&x, &emb).unwrap();
    }

    #[test]
    fn coarsening_keeps_the_embedding_valid() {
        let (x, emb) = bing_house();
        assert_eq!(euler_characteristic(&x), 1);
        validate_embedding(&x, &emb).unwrap();
    }
}
