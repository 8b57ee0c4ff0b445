//! Finite connected covers from permutation representations of π₁.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{Disc, Edge, Letter, Sign, TwoComplex};
use crate::error::CoverError;
use crate::morphism::{CellularMap, DiscImage};
use crate::presentation::{presentation, simplify, GenLetter};

/// Sheet permutations, 0-based: `perms[e][i]` is the sheet reached by
/// following edge `e` forwards from sheet `i` of its source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverAssignment {
    pub degree: usize,
    pub perms: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct Cover {
    pub assignment: CoverAssignment,
    pub complex: Arc<TwoComplex>,
    pub map: CellularMap,
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        q[j] = i;
    }
    q
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Builds the cover with vertices `v.i`, edges `e.i` from `(src, i)` to
/// `(dst, σ_e(i))` and discs `D.i` lifted from sheet `i` at the start of the
/// boundary word.
pub fn build_cover(x: &Arc<TwoComplex>, a: &CoverAssignment) -> Result<(Arc<TwoComplex>, CellularMap), CoverError> {
    let n = a.degree;
    if n == 0 {
        return Err(CoverError::ZeroDegree);
    }
    if a.perms.len() != x.num_edges() {
        return Err(CoverError::Shape { expected: x.num_edges(), found: a.perms.len() });
    }
    for (e, p) in a.perms.iter().enumerate() {
        if !is_permutation(p, n) {
            return Err(CoverError::NotPermutation(x.edges()[e].id.clone()));
        }
    }
    let inverses: Vec<Vec<usize>> = a.perms.iter().map(|p| inverse(p)).collect();

    let vertices = x.vertices().iter().flat_map(|v| (0..n).map(move |i| format!("{v}.{i}"))).collect();
    let mut edges = Vec::with_capacity(x.num_edges() * n);
    for (e, edge) in x.edges().iter().enumerate() {
        for i in 0..n {
            edges.push(Edge {
                id: format!("{}.{i}", edge.id),
                src: edge.src * n + i,
                dst: edge.dst * n + a.perms[e][i],
            });
        }
    }
    let mut discs = Vec::with_capacity(x.num_discs() * n);
    for disc in x.discs() {
        for i in 0..n {
            let mut sheet = i;
            let boundary = disc
                .boundary
                .iter()
                .map(|l| match l.sign {
                    Sign::Pos => {
                        let lifted = Letter { edge: l.edge * n + sheet, sign: Sign::Pos };
                        sheet = a.perms[l.edge][sheet];
                        lifted
                    }
                    Sign::Neg => {
                        sheet = inverses[l.edge][sheet];
                        Letter { edge: l.edge * n + sheet, sign: Sign::Neg }
                    }
                })
                .collect();
            if sheet != i {
                return Err(CoverError::Relator(disc.id.clone()));
            }
            discs.push(Disc { id: format!("{}.{i}", disc.id), boundary });
        }
    }
    let mut parent: Vec<usize> = (0..x.num_vertices() * n).collect();
    for e in &edges {
        let (r, s) = (find(&mut parent, e.src), find(&mut parent, e.dst));
        parent[r] = s;
    }
    let root = find(&mut parent, 0);
    if (0..parent.len()).any(|v| find(&mut parent, v) != root) {
        return Err(CoverError::NotTransitive);
    }
    let cover = Arc::new(TwoComplex::new(vertices, edges, discs).expect("lifted words close up"));
    let map = CellularMap::new(
        cover.clone(),
        x.clone(),
        (0..cover.num_vertices()).map(|v| v / n).collect(),
        (0..cover.num_edges()).map(|e| (e / n, Sign::Pos)).collect(),
        (0..cover.num_discs()).map(|d| DiscImage { disc: d / n, offset: 0, flip: false }).collect(),
    )
    .expect("projection is cellular");
    Ok((cover, map))
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, out);
            p.swap(k, i);
        }
    }
    rec(&mut p, 0, &mut out);
    out.sort();
    out
}

/// Permutation of the word, letters acting left to right.
fn word_action(word: &[GenLetter], perms: &[Vec<usize>], inverses: &[Vec<usize>], n: usize) -> Vec<usize> {
    (0..n)
        .map(|mut i| {
            for l in word {
                i = match l.sign {
                    Sign::Pos => perms[l.gen][i],
                    Sign::Neg => inverses[l.gen][i],
                };
            }
            i
        })
        .collect()
}

fn is_transitive(perms: &[&Vec<usize>], n: usize) -> bool {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for p in perms {
            let j = p[i];
            if !seen[j] {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == n
}

/// Least relabelling under simultaneous conjugation, by breadth-first
/// numbering of sheets from every start. Requires a transitive action.
pub fn canonical_conjugate(perms: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let inverses: Vec<Vec<usize>> = perms.iter().map(|p| inverse(p)).collect();
    let mut best: Option<Vec<Vec<usize>>> = None;
    for start in 0..n {
        let mut label = vec![usize::MAX; n];
        label[start] = 0;
        let mut order = vec![start];
        let mut head = 0;
        while head < order.len() {
            let i = order[head];
            head += 1;
            for (p, q) in perms.iter().zip(&inverses) {
                for j in [p[i], q[i]] {
                    if label[j] == usize::MAX {
                        label[j] = order.len();
                        order.push(j);
                    }
                }
            }
        }
        let relabelled: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                let mut r = vec![0; n];
                for i in 0..n {
                    r[label[i]] = label[p[i]];
                }
                r
            })
            .collect();
        if best.as_ref().is_none_or(|b| relabelled < *b) {
            best = Some(relabelled);
        }
    }
    best.unwrap_or_default()
}

/// Every connected cover of degree `n`, one per isomorphism class of
/// covers, in canonical order.
///
/// Tree edges of the spanning tree carry the identity; the remaining
/// generators are reduced by Tietze elimination before the permutation
/// search, and eliminated generators are recovered from their recorded
/// substitutions.
pub fn enumerate_covers(x: &Arc<TwoComplex>, n: usize) -> Vec<Cover> {
    if n == 0 || !x.is_connected() {
        return Vec::new();
    }
    if n == 1 {
        let assignment = CoverAssignment { degree: 1, perms: vec![vec![0]; x.num_edges()] };
        return vec![Cover { assignment, complex: x.clone(), map: CellularMap::identity(x) }];
    }
    let p = presentation(x).expect("connected");
    let t = simplify(&p, usize::MAX);
    let free = &t.remaining;
    let mut slot = vec![usize::MAX; p.generators.len()];
    for (k, &g) in free.iter().enumerate() {
        slot[g] = k;
    }
    // relators over slot indices, grouped by the last slot they use
    let mut checks: Vec<Vec<Vec<GenLetter>>> = vec![Vec::new(); free.len()];
    for (_, r) in &t.relators {
        let word: Vec<GenLetter> = r.iter().map(|l| GenLetter { gen: slot[l.gen], sign: l.sign }).collect();
        let last = word.iter().map(|l| l.gen).max().expect("relators are nonempty");
        checks[last].push(word);
    }
    let perms = all_permutations(n);
    let identity: Vec<usize> = (0..n).collect();
    let mut found = BTreeSet::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(free.len());
    search(&perms, &checks, &identity, n, &mut chosen, &mut found);

    found
        .into_iter()
        .map(|free_perms| {
            let mut gen_perms: Vec<Option<Vec<usize>>> = vec![None; p.generators.len()];
            for (k, &g) in free.iter().enumerate() {
                gen_perms[g] = Some(free_perms[k].clone());
            }
            for (g, w) in t.eliminations.iter().rev() {
                let current: Vec<Vec<usize>> =
                    gen_perms.iter().map(|q| q.clone().unwrap_or_else(|| identity.clone())).collect();
                let inverses: Vec<Vec<usize>> = current.iter().map(|q| inverse(q)).collect();
                gen_perms[*g] = Some(word_action(w, &current, &inverses, n));
            }
            let edge_perms = p
                .edge_generator
                .iter()
                .map(|g| g.and_then(|g| gen_perms[g].clone()).unwrap_or_else(|| identity.clone()))
                .collect();
            let assignment = CoverAssignment { degree: n, perms: edge_perms };
            let (complex, map) = build_cover(x, &assignment).expect("search only yields valid assignments");
            Cover { assignment, complex, map }
        })
        .collect()
}

fn search(
    perms: &[Vec<usize>],
    checks: &[Vec<Vec<GenLetter>>],
    identity: &[usize],
    n: usize,
    chosen: &mut Vec<usize>,
    found: &mut BTreeSet<Vec<Vec<usize>>>,
) {
    let k = chosen.len();
    if k == checks.len() {
        let current: Vec<&Vec<usize>> = chosen.iter().map(|&c| &perms[c]).collect();
        if is_transitive(&current, n) {
            let owned: Vec<Vec<usize>> = current.into_iter().cloned().collect();
            found.insert(canonical_conjugate(&owned, n));
        }
        return;
    }
    for c in 0..perms.len() {
        chosen.push(c);
        let current: Vec<Vec<usize>> = chosen.iter().map(|&c| perms[c].clone()).collect();
        let inverses: Vec<Vec<usize>> = current.iter().map(|q| inverse(q)).collect();
        if checks[k].iter().all(|w| word_action(w, &current, &inverses, n) == identity) {
            search(perms, checks, identity, n, chosen, found);
        }
        chosen.pop();
    }
}
