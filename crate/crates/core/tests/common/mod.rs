//! Generators and independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use complexforge::complex::{RawDisc, RawEdge, RawLetter, Sign};
use complexforge::link::link_graph;
use complexforge::morphism::{CellularMap, DiscImage, ImmersionWitness, LinkElement};
use complexforge::thickening::{EmbeddingData, Side};
use complexforge::{validate_complex, ComplexBuilder, TwoComplex};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random valid complex with at most `max_cells` cells. Discs are closed
/// walks in the 1-skeleton, so the result may be disconnected.
pub fn random_complex(r: &mut impl Rng, max_cells: usize) -> TwoComplex {
    let nv = r.gen_range(1..=4.min(max_cells));
    let ne = r.gen_range(0..=(max_cells - nv).min(8));
    let mut b = ComplexBuilder::new();
    for i in 0..nv {
        b.vertex(format!("v{i}"));
    }
    let mut ends = Vec::new();
    for i in 0..ne {
        let (s, t) = (r.gen_range(0..nv), r.gen_range(0..nv));
        b.edge(format!("e{i}"), s, t);
        ends.push((s, t));
    }
    let room = max_cells - nv - ne;
    let nd = if ne == 0 { 0 } else { r.gen_range(0..=room.min(6)) };
    let mut made = 0;
    let mut tries = 0;
    while made < nd && tries < 200 {
        tries += 1;
        let len = r.gen_range(1..=5);
        if let Some(w) = closed_walk(r, &ends, nv, len) {
            b.disc(format!("D{made}"), &w);
            made += 1;
        }
    }
    b.build().expect("generated complexes are valid")
}

fn closed_walk(r: &mut impl Rng, ends: &[(usize, usize)], nv: usize, len: usize) -> Option<Vec<(usize, i64)>> {
    let start = r.gen_range(0..nv);
    let mut at = start;
    let mut word = Vec::new();
    for _ in 0..len {
        let options: Vec<(usize, i64)> = ends
            .iter()
            .enumerate()
            .flat_map(|(e, &(s, t))| {
                let mut o = Vec::new();
                if s == at {
                    o.push((e, 1));
                }
                if t == at {
                    o.push((e, -1));
                }
                o
            })
            .collect();
        let &(e, sign) = options.choose(r)?;
        word.push((e, sign));
        at = if sign == 1 { ends[e].1 } else { ends[e].0 };
    }
    (at == start).then_some(word)
}

/// One vertex, `gens` loops and the given relators over `(generator, ±1)`.
pub fn one_vertex(gens: usize, relators: &[Vec<(usize, i64)>]) -> TwoComplex {
    let mut b = ComplexBuilder::new();
    let v = b.vertex("v");
    for g in 0..gens {
        b.edge(format!("g{g}"), v, v);
    }
    for (i, w) in relators.iter().enumerate() {
        b.disc(format!("R{i}"), w);
    }
    b.build().unwrap()
}

/// Rank over ℚ by fraction-exact Gaussian elimination.
pub fn rational_rank(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> usize {
    let mut m = vec![vec![BigRational::zero(); cols]; rows];
    for &(i, j, v) in entries {
        m[i][j] += BigRational::from_integer(v.into());
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][c].clone();
        let pivot = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = row[c].clone() * inv.clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= f.clone() * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers over ℚ, from boundary matrices assembled here.
pub fn rational_betti(x: &TwoComplex) -> [usize; 3] {
    let mut d1 = Vec::new();
    for (e, edge) in x.edges().iter().enumerate() {
        d1.push((edge.dst, e, 1));
        d1.push((edge.src, e, -1));
    }
    let mut d2 = Vec::new();
    for (d, disc) in x.discs().iter().enumerate() {
        for l in &disc.boundary {
            d2.push((l.edge, d, if l.sign == Sign::Pos { 1 } else { -1 }));
        }
    }
    let r1 = rational_rank(x.num_vertices(), x.num_edges(), &d1);
    let r2 = rational_rank(x.num_edges(), x.num_discs(), &d2);
    [x.num_vertices() - r1, x.num_edges() - r1 - r2, x.num_discs() - r2]
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        q[j] = i;
    }
    q
}

/// Connected degree-`n` covers up to isomorphism, by brute force over
/// permutations on every edge and relabellings at every vertex.
pub fn brute_force_cover_count(x: &TwoComplex, n: usize) -> usize {
    let perms = permutations(n);
    let ne = x.num_edges();
    let mut classes = BTreeSet::new();
    let mut idx = vec![0usize; ne];
    loop {
        let a: Vec<&Vec<usize>> = idx.iter().map(|&i| &perms[i]).collect();
        if relators_hold(x, &a, n) && connected(x, &a, n) {
            classes.insert(canonical(x, &a, &perms));
        }
        let mut k = 0;
        loop {
            if k == ne {
                return classes.len();
            }
            idx[k] += 1;
            if idx[k] < perms.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn relators_hold(x: &TwoComplex, a: &[&Vec<usize>], n: usize) -> bool {
    x.discs().iter().all(|d| {
        (0..n).all(|s| {
            let mut i = s;
            for l in &d.boundary {
                i = if l.sign == Sign::Pos { a[l.edge][i] } else { invert(a[l.edge])[i] };
            }
            i == s
        })
    })
}

fn connected(x: &TwoComplex, a: &[&Vec<usize>], n: usize) -> bool {
    let total = x.num_vertices() * n;
    let mut seen = vec![false; total];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(node) = stack.pop() {
        let (v, i) = (node / n, node % n);
        for (e, edge) in x.edges().iter().enumerate() {
            let mut next = Vec::new();
            if edge.src == v {
                next.push(edge.dst * n + a[e][i]);
            }
            if edge.dst == v {
                next.push(edge.src * n + invert(a[e])[i]);
            }
            for m in next {
                if !seen[m] {
                    seen[m] = true;
                    count += 1;
                    stack.push(m);
                }
            }
        }
    }
    count == total
}

fn canonical(x: &TwoComplex, a: &[&Vec<usize>], perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let nv = x.num_vertices();
    let mut best: Option<Vec<Vec<usize>>> = None;
    let mut idx = vec![0usize; nv];
    loop {
        let relabel: Vec<&Vec<usize>> = idx.iter().map(|&i| &perms[i]).collect();
        let form: Vec<Vec<usize>> = x
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| {
                let inv = invert(relabel[edge.src]);
                (0..a[e].len()).map(|i| relabel[edge.dst][a[e][inv[i]]]).collect()
            })
            .collect();
        if best.as_ref().is_none_or(|b| form < *b) {
            best = Some(form);
        }
        let mut k = 0;
        loop {
            if k == nv {
                return best.unwrap();
            }
            idx[k] += 1;
            if idx[k] < perms.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// A one-vertex complex in which every generator occurs at least twice,
/// with random cyclic blade orders and per-disc side choices, when those
/// form valid embedding data.
pub fn random_embedded(r: &mut impl Rng) -> Option<(Arc<TwoComplex>, EmbeddingData)> {
    let gens = r.gen_range(1..=2);
    let nrel = r.gen_range(1..=2);
    let relators: Vec<Vec<(usize, i64)>> = (0..nrel)
        .map(|_| {
            let len = r.gen_range(1..=4);
            (0..len).map(|_| (r.gen_range(0..gens), if r.gen_bool(0.5) { 1 } else { -1 })).collect()
        })
        .collect();
    let x = one_vertex(gens, &relators);
    let occurrences = x.edge_occurrences();
    if occurrences.iter().any(|&o| o < 2) {
        return None;
    }
    let mut orders: Vec<Vec<(usize, usize)>> = vec![Vec::new(); gens];
    for (d, disc) in x.discs().iter().enumerate() {
        for (i, l) in disc.boundary.iter().enumerate() {
            orders[l.edge].push((d, i));
        }
    }
    for o in &mut orders {
        o.shuffle(r);
    }
    let flips: Vec<bool> = (0..x.num_discs()).map(|_| r.gen_bool(0.5)).collect();
    let sides = x
        .discs()
        .iter()
        .zip(&flips)
        .map(|(disc, &flip)| {
            disc.boundary
                .iter()
                .map(|l| if (l.sign == Sign::Pos) != flip { Side::Succ } else { Side::Pred })
                .collect()
        })
        .collect();
    let emb = EmbeddingData::new(&x, orders, sides).ok()?;
    let emb = complexforge::thickening::validate_embedding(&x, &emb).ok()?;
    Some((Arc::new(x), emb))
}

/// Folds two distinct edges meeting at a vertex of a random connected
/// complex: the second edge is identified with the first so that their ends
/// at the shared vertex agree, and the far endpoints are merged.
pub fn random_fold(r: &mut impl Rng) -> Option<CellularMap> {
    let y = random_complex(r, 20);
    if !y.is_connected() || y.num_edges() < 2 {
        return None;
    }
    let v = r.gen_range(0..y.num_vertices());
    let ends: Vec<(usize, bool)> = y
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(e, edge)| {
            let mut o = Vec::new();
            if edge.src == v {
                o.push((e, true));
            }
            if edge.dst == v {
                o.push((e, false));
            }
            o
        })
        .collect();
    let &(e1, at_src1) = ends.choose(r)?;
    let others: Vec<&(usize, bool)> = ends.iter().filter(|&&(e, _)| e != e1).collect();
    let &&(e2, at_src2) = others.choose(r)?;
    let same = at_src1 == at_src2;
    let (a, b) = (&y.edges()[e1], &y.edges()[e2]);
    let (img_src, img_dst) = if same { (a.src, a.dst) } else { (a.dst, a.src) };

    let n = y.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            i = p[i];
        }
        i
    }
    for (s, t) in [(b.src, img_src), (b.dst, img_dst)] {
        let (rs, rt) = (find(&mut parent, s), find(&mut parent, t));
        if rs != rt {
            parent[rs.max(rt)] = rs.min(rt);
        }
    }
    let reps: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let kept: Vec<usize> = (0..n).filter(|&i| reps[i] == i).collect();
    let vertex_map: Vec<usize> = reps.iter().map(|r| kept.iter().position(|k| k == r).unwrap()).collect();

    let mut z = ComplexBuilder::new();
    for &k in &kept {
        z.vertex(y.vertices()[k].clone());
    }
    let mut edge_index = vec![0usize; y.num_edges()];
    for (e, edge) in y.edges().iter().enumerate() {
        if e != e2 {
            edge_index[e] = z.edge(edge.id.clone(), vertex_map[edge.src], vertex_map[edge.dst]);
        }
    }
    let sign = if same { Sign::Pos } else { Sign::Neg };
    let edge_map: Vec<(usize, Sign)> = (0..y.num_edges())
        .map(|e| if e == e2 { (edge_index[e1], sign) } else { (edge_index[e], Sign::Pos) })
        .collect();
    for d in y.discs() {
        let word: Vec<(usize, i64)> = d
            .boundary
            .iter()
            .map(|l| {
                let (f, s) = edge_map[l.edge];
                (f, l.sign.times(s).to_i64())
            })
            .collect();
        z.disc(d.id.clone(), &word);
    }
    let z = Arc::new(z.build().expect("folded complex is valid"));
    let discs = (0..y.num_discs()).map(|d| DiscImage { disc: d, offset: 0, flip: false }).collect();
    Some(CellularMap::new(Arc::new(y), z, vertex_map, edge_map, discs).expect("fold is a valid map"))
}

/// Checks an immersion witness without the library's own image routines:
/// both elements lie in the link of the witness vertex, differ, and have
/// the reported image (nodes by the edge map, arcs by the letters around
/// the corner).
pub fn witness_is_valid(f: &CellularMap, w: &ImmersionWitness) -> bool {
    let (x, y) = (f.source(), f.target());
    let link = link_graph(x, w.vertex).unwrap();
    let contains = |e: &LinkElement| match e {
        LinkElement::Node(n) => link.nodes.contains(n),
        LinkElement::Arc(c) => link.arcs.iter().any(|a| a.corner == *c),
    };
    let image_ok = |e: &LinkElement| match (e, &w.image) {
        (LinkElement::Node(n), LinkElement::Node(m)) => {
            let (g, s) = f.edge_map()[n.edge];
            let end = if s == Sign::Pos { n.end } else { n.end.flip() };
            g == m.edge && end == m.end
        }
        (LinkElement::Arc(c), LinkElement::Arc(k)) => {
            let word = &x.discs()[c.disc].boundary;
            let len = word.len();
            let (l1, l2) = (f.map_letter(word[c.index]), f.map_letter(word[(c.index + 1) % len]));
            let target = &y.discs()[k.disc].boundary;
            let tl = target.len();
            let (t1, t2) = (target[k.index], target[(k.index + 1) % tl]);
            f.disc_map()[c.disc].disc == k.disc
                && ((l1, l2) == (t1, t2) || (l1, l2) == (t2.inverse(), t1.inverse()))
        }
        _ => false,
    };
    w.first != w.second && contains(&w.first) && contains(&w.second) && image_ok(&w.first) && image_ok(&w.second)
}

/// A disc on `side · side⁻¹ · rim` between an apex and a base loop.
pub fn cone() -> Arc<TwoComplex> {
    let mut b = ComplexBuilder::new();
    let apex = b.vertex("apex");
    let base = b.vertex("base");
    let rim = b.edge("rim", base, base);
    let side = b.edge("side", base, apex);
    b.disc("D", &[(side, 1), (side, -1), (rim, 1)]);
    Arc::new(b.build().unwrap())
}

/// A new vertex joined to `at` by a new edge.
pub fn with_free_arc(x: &TwoComplex, at: usize) -> Arc<TwoComplex> {
    let mut raw = x.to_raw();
    raw.vertices.push("arc_end".into());
    raw.edges.push(RawEdge { id: "arc".into(), src: x.vertices()[at].clone(), dst: "arc_end".into() });
    Arc::new(validate_complex(&raw).unwrap())
}

/// A monogon on a new loop at `at`.
pub fn with_free_disc(x: &TwoComplex, at: usize) -> Arc<TwoComplex> {
    let mut raw = x.to_raw();
    raw.edges.push(RawEdge { id: "flap_edge".into(), src: x.vertices()[at].clone(), dst: x.vertices()[at].clone() });
    raw.discs.push(RawDisc { id: "flap".into(), boundary: vec![RawLetter { edge: "flap_edge".into(), sign: 1 }] });
    Arc::new(validate_complex(&raw).unwrap())
}
