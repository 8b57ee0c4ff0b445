//! Spanning-tree presentations of π₁ and a budgeted Tietze simplifier.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::complex::{Sign, TwoComplex};
use crate::error::ComplexError;

/// A generator occurrence in a relator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenLetter {
    pub gen: usize,
    pub sign: Sign,
}

impl GenLetter {
    pub fn inverse(self) -> Self {
        GenLetter { gen: self.gen, sign: self.sign.flip() }
    }
}

pub type Word = Vec<GenLetter>;

pub fn inverse_word(w: &[GenLetter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    /// Generator carried by each edge of the source complex; `None` for tree
    /// edges.
    pub edge_generator: Vec<Option<usize>>,
}

/// Spanning tree by breadth-first search from the first vertex, scanning
/// edges in index order.
pub fn spanning_tree(x: &TwoComplex) -> Vec<bool> {
    let mut in_tree = vec![false; x.num_edges()];
    if x.is_empty() {
        return in_tree;
    }
    let mut incident = vec![Vec::new(); x.num_vertices()];
    for (e, edge) in x.edges().iter().enumerate() {
        incident[edge.src].push(e);
        if edge.dst != edge.src {
            incident[edge.dst].push(e);
        }
    }
    let mut seen = vec![false; x.num_vertices()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &e in &incident[v] {
            let edge = &x.edges()[e];
            let w = if edge.src == v { edge.dst } else { edge.src };
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    in_tree
}

/// Generators are the non-tree edges; one relator per disc.
pub fn presentation(x: &TwoComplex) -> Result<Presentation, ComplexError> {
    if !x.is_connected() {
        return Err(ComplexError::NotConnected);
    }
    let tree = spanning_tree(x);
    let mut generators = Vec::new();
    let mut edge_generator = vec![None; x.num_edges()];
    for (e, edge) in x.edges().iter().enumerate() {
        if !tree[e] {
            edge_generator[e] = Some(generators.len());
            generators.push(edge.id.clone());
        }
    }
    let relators = x
        .discs()
        .iter()
        .map(|d| {
            d.boundary
                .iter()
                .filter_map(|l| edge_generator[l.edge].map(|g| GenLetter { gen: g, sign: l.sign }))
                .collect()
        })
        .collect();
    Ok(Presentation { generators, relators, edge_generator })
}

impl Presentation {
    pub fn word_string(&self, w: &[GenLetter]) -> String {
        w.iter()
            .map(|l| match l.sign {
                Sign::Pos => self.generators[l.gen].clone(),
                Sign::Neg => format!("{}^-1", self.generators[l.gen]),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_string(r)).collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

/// Free and cyclic reduction.
pub fn cyclically_reduce(w: &[GenLetter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j - i >= 2 && out[i] == out[j - 1].inverse() {
        i += 1;
        j -= 1;
    }
    out[i..j].to_vec()
}

/// A recorded Tietze transformation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum TietzeMove {
    /// Relator shortened by free and cyclic cancellation.
    Reduce { relator: usize, from: usize, to: usize },
    /// Trivial relator removed.
    DropEmpty { relator: usize },
    /// Generator solved from a relator in which it occurs once, substituted
    /// everywhere, and removed with that relator.
    Eliminate { generator: String, relator: usize, replacement_length: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TietzeOutcome {
    /// Original generator indices still present.
    pub remaining: Vec<usize>,
    /// Surviving relators over original generator indices, tagged with their
    /// original relator index.
    pub relators: Vec<(usize, Word)>,
    pub moves: Vec<TietzeMove>,
    /// `(g, w)`: generator `g` equals `w`, where `w` only uses generators
    /// eliminated later or still remaining.
    pub eliminations: Vec<(usize, Word)>,
    /// The move budget ran out before no move applied.
    pub exhausted: bool,
}

impl TietzeOutcome {
    /// π₁ certified trivial.
    pub fn is_trivial(&self) -> bool {
        self.remaining.is_empty() && self.relators.is_empty()
    }
}

/// Ceiling on the total relator length, so substitution cannot blow up.
const LENGTH_CAP: usize = 1 << 18;

/// Reduces relators and eliminates generators occurring exactly once in a
/// relator, shortest relator first, until nothing applies or `budget` moves
/// have been made.
pub fn simplify(p: &Presentation, budget: usize) -> TietzeOutcome {
    let mut alive = vec![true; p.generators.len()];
    let mut relators: Vec<(usize, Word)> = p.relators.iter().cloned().enumerate().collect();
    let mut moves = Vec::new();
    let mut eliminations = Vec::new();
    let mut exhausted = false;
    loop {
        for (idx, r) in relators.iter_mut() {
            let reduced = cyclically_reduce(r);
            if reduced.len() != r.len() {
                moves.push(TietzeMove::Reduce { relator: *idx, from: r.len(), to: reduced.len() });
                *r = reduced;
            }
        }
        relators.retain(|(idx, r)| {
            if r.is_empty() {
                moves.push(TietzeMove::DropEmpty { relator: *idx });
                false
            } else {
                true
            }
        });
        if !alive.contains(&true) {
            break;
        }
        if moves.len() >= budget {
            exhausted = true;
            break;
        }
        // (relator position, letter position), shortest relator then lowest generator
        let mut choice: Option<(usize, usize, usize, usize)> = None;
        for (pos, (_, r)) in relators.iter().enumerate() {
            if choice.is_some_and(|c| c.0 <= r.len()) {
                continue;
            }
            let mut counts = std::collections::BTreeMap::new();
            for l in r {
                *counts.entry(l.gen).or_insert(0usize) += 1;
            }
            if let Some((&g, _)) = counts.iter().find(|(_, &c)| c == 1) {
                let at = r.iter().position(|l| l.gen == g).expect("generator occurs");
                choice = Some((r.len(), pos, at, g));
            }
        }
        let Some((_, pos, at, g)) = choice else { break };
        let (idx, r) = relators.remove(pos);
        let rotated: Word = r[at..].iter().chain(&r[..at]).copied().collect();
        let rest = &rotated[1..];
        // g^s · rest = 1  ⇒  g = rest^-1 when s = +, g = rest when s = −
        let replacement: Word = match rotated[0].sign {
            Sign::Pos => inverse_word(rest),
            Sign::Neg => rest.to_vec(),
        };
        let replacement_inv = inverse_word(&replacement);
        let total: usize = relators
            .iter()
            .map(|(_, w)| {
                w.iter()
                    .map(|l| if l.gen == g { replacement.len() } else { 1 })
                    .sum::<usize>()
            })
            .sum();
        if total > LENGTH_CAP {
            relators.insert(pos, (idx, r));
            exhausted = true;
            break;
        }
        for (_, w) in relators.iter_mut() {
            if w.iter().any(|l| l.gen == g) {
                *w = w
                    .iter()
                    .flat_map(|l| {
                        if l.gen != g {
                            vec![*l]
                        } else if l.sign == Sign::Pos {
                            replacement.clone()
                        } else {
                            replacement_inv.clone()
                        }
                    })
                    .collect();
            }
        }
        alive[g] = false;
        moves.push(TietzeMove::Eliminate {
            generator: p.generators[g].clone(),
            relator: idx,
            replacement_length: replacement.len(),
        });
        eliminations.push((g, replacement));
    }
    TietzeOutcome {
        remaining: (0..alive.len()).filter(|&g| alive[g]).collect(),
        relators,
        moves,
        eliminations,
        exhausted,
    }
}
