//! Bounded search over tower maps: finite compositions of finite covers and
//! subcomplex inclusions, checking that every domain has χ ≤ 0 or is
//! contractible.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{euler_characteristic, CellMask, RawComplex, TwoComplex};
use crate::contractibility::{budget_from_env, contractibility_with_homology, ContractibilityStatus};
use crate::covers::enumerate_covers;
use crate::homology::{homology, HomologyProfile};
use crate::iso::{fingerprint_of, isomorphic_with, refine, Colors, Fingerprint};
use crate::morphism::CellularMap;
use crate::presentation::{presentation, simplify};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TowerBounds {
    pub max_depth: usize,
    pub max_degree: usize,
    pub max_cells: usize,
    /// Largest permutation search `(n!)^r` attempted for a cover stage, where
    /// `r` is the number of generators left after Tietze elimination.
    pub max_cover_search: usize,
}

impl Default for TowerBounds {
    fn default() -> Self {
        TowerBounds { max_depth: 4, max_degree: 3, max_cells: 200, max_cover_search: 1000 }
    }
}

/// Disc subsets are enumerated exhaustively up to this many discs; beyond it
/// only subsets of size at most two and their complements are used.
pub const FULL_SUBSET_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Cover(usize),
    Subcomplex,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::Cover(n) => write!(f, "COVER({n})"),
            Stage::Subcomplex => write!(f, "SUBCOMPLEX"),
        }
    }
}

impl Serialize for Stage {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub chi: i64,
    pub homology: HomologyProfile,
    pub status: ContractibilityStatus,
}

/// χ, homology and contractibility status of a connected complex.
pub fn classify(y: &Arc<TwoComplex>) -> Classification {
    classify_with_budget(y, budget_from_env())
}

pub fn classify_with_budget(y: &Arc<TwoComplex>, budget: usize) -> Classification {
    let h = homology(y);
    let status = contractibility_with_homology(y, &h, budget);
    Classification { chi: euler_characteristic(y), homology: h, status }
}

#[derive(Debug, Clone)]
pub struct TowerEndpoint {
    pub complex: Arc<TwoComplex>,
    /// Composite of all stage maps, into the base complex.
    pub map: CellularMap,
    pub stages: Vec<Stage>,
    pub class: Classification,
}

impl TowerEndpoint {
    pub fn trace(&self) -> String {
        if self.stages.is_empty() {
            return "BASE".into();
        }
        self.stages.iter().map(Stage::to_string).collect::<Vec<_>>().join(" > ")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TowerStats {
    pub endpoints: usize,
    pub dedup_hits: usize,
    pub covers_skipped_by_cells: usize,
    pub covers_skipped_by_search: usize,
    pub truncated_subcomplex_families: usize,
    /// Graph endpoints other than the base are not expanded: every tower
    /// domain over a graph is a graph, and a connected graph with χ ≥ 1 is a
    /// tree.
    pub graphs_not_expanded: usize,
}

fn cover_search_size(y: &TwoComplex, n: usize) -> Option<usize> {
    let p = presentation(y).ok()?;
    let free = simplify(&p, usize::MAX).remaining.len();
    let per: usize = (1..=n).product();
    let mut total: usize = 1;
    for _ in 0..free {
        total = total.checked_mul(per)?;
    }
    Some(total)
}

fn disc_subsets(d: usize, stats: &mut TowerStats) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    if d <= FULL_SUBSET_LIMIT {
        for bits in 1u64..(1 << d) {
            out.push((0..d).map(|i| bits >> i & 1 == 1).collect());
        }
        return out;
    }
    stats.truncated_subcomplex_families += 1;
    let mut push = |chosen: &[usize], complement: bool| {
        let mut mask = vec![complement; d];
        for &i in chosen {
            mask[i] = !complement;
        }
        out.push(mask);
    };
    for i in 0..d {
        push(&[i], false);
        push(&[i], true);
        for j in i + 1..d {
            push(&[i, j], false);
            push(&[i, j], true);
        }
    }
    out
}

/// Connected subcomplexes: components of the closure of each nonempty disc
/// subset, components of the 1-skeleton, and the first vertex.
fn subcomplex_family(z: &Arc<TwoComplex>, stats: &mut TowerStats) -> Vec<(Arc<TwoComplex>, CellularMap)> {
    let none_v = vec![false; z.num_vertices()];
    let none_e = vec![false; z.num_edges()];
    let mut masks: Vec<CellMask> = disc_subsets(z.num_discs(), stats)
        .into_iter()
        .map(|discs| z.closure(&none_v, &none_e, &discs))
        .collect();
    masks.push(CellMask { vertices: vec![true; z.num_vertices()], edges: vec![true; z.num_edges()], discs: vec![false; z.num_discs()] });
    if z.num_vertices() > 0 {
        let mut v = none_v.clone();
        v[0] = true;
        masks.push(CellMask { vertices: v, edges: none_e.clone(), discs: vec![false; z.num_discs()] });
    }
    let total = z.num_cells();
    let mut out = Vec::new();
    for mask in masks {
        let (sub, inclusion) = z.subcomplex(&mask);
        for (component, inner) in sub.components() {
            if component.num_cells() == total {
                continue;
            }
            let map = inner.compose(&inclusion).expect("inclusions compose");
            out.push((component, map));
        }
    }
    out
}

struct Registry {
    seen: HashMap<Fingerprint, Vec<(Arc<TwoComplex>, Colors)>>,
}

impl Registry {
    /// Registers `y` unless an isomorphic complex is already present.
    fn insert(&mut self, y: &Arc<TwoComplex>) -> bool {
        let colors = refine(y);
        let bucket = self.seen.entry(fingerprint_of(y, &colors)).or_default();
        if bucket.iter().any(|(z, zc)| isomorphic_with(z, zc, y, &colors)) {
            return false;
        }
        bucket.push((y.clone(), colors));
        true
    }
}

/// Breadth-first enumeration of tower endpoints, deduplicated up to
/// isomorphism. Consecutive subcomplex stages are fused.
pub fn enumerate_towers(x: &Arc<TwoComplex>, b: &TowerBounds) -> (Vec<TowerEndpoint>, TowerStats) {
    let budget = budget_from_env();
    let mut stats = TowerStats::default();
    let mut registry = Registry { seen: HashMap::new() };
    registry.insert(x);
    let base = TowerEndpoint {
        complex: x.clone(),
        map: CellularMap::identity(x),
        stages: vec![],
        class: classify_with_budget(x, budget),
    };
    let mut all = vec![base.clone()];
    let mut frontier = vec![base];
    for _ in 0..b.max_depth {
        let mut next = Vec::new();
        for ep in &frontier {
            let z = &ep.complex;
            if z.num_discs() == 0 && !ep.stages.is_empty() {
                stats.graphs_not_expanded += 1;
                continue;
            }
            let mut candidates: Vec<(Arc<TwoComplex>, CellularMap, Stage)> = Vec::new();
            for n in 2..=b.max_degree {
                if z.num_cells() * n > b.max_cells {
                    stats.covers_skipped_by_cells += 1;
                    continue;
                }
                if cover_search_size(z, n).is_none_or(|s| s > b.max_cover_search) {
                    stats.covers_skipped_by_search += 1;
                    continue;
                }
                for cover in enumerate_covers(z, n) {
                    candidates.push((cover.complex, cover.map, Stage::Cover(n)));
                }
            }
            if ep.stages.last() != Some(&Stage::Subcomplex) {
                for (sub, inclusion) in subcomplex_family(z, &mut stats) {
                    candidates.push((sub, inclusion, Stage::Subcomplex));
                }
            }
            for (y, stage_map, stage) in candidates {
                if !registry.insert(&y) {
                    stats.dedup_hits += 1;
                    continue;
                }
                let map = stage_map.compose(&ep.map).expect("stage maps compose");
                let mut stages = ep.stages.clone();
                stages.push(stage);
                let class = classify_with_budget(&y, budget);
                let endpoint = TowerEndpoint { complex: y, map, stages, class };
                all.push(endpoint.clone());
                next.push(endpoint);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    stats.endpoints = all.len();
    (all, stats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    PassBounded,
    Witness,
    Inconclusive,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::PassBounded => "PASS_BOUNDED",
            Verdict::Witness => "WITNESS",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EndpointSummary {
    pub stages: Vec<Stage>,
    pub depth: usize,
    pub chi: i64,
    pub homology: String,
    pub status: ContractibilityStatus,
    pub complex: RawComplex,
}

impl EndpointSummary {
    fn of(ep: &TowerEndpoint) -> Self {
        EndpointSummary {
            stages: ep.stages.clone(),
            depth: ep.stages.len(),
            chi: ep.class.chi,
            homology: ep.class.homology.to_string(),
            status: ep.class.status.clone(),
            complex: ep.complex.to_raw(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TowerReport {
    pub verdict: Verdict,
    pub bounds: TowerBounds,
    pub scope: String,
    pub witnesses: Vec<EndpointSummary>,
    pub unknowns: Vec<EndpointSummary>,
    pub stats: TowerStats,
}

pub fn scope_note(b: &TowerBounds) -> String {
    format!(
        "bounded search: depth <= {}, cover degree <= {}, at most {} cells per cover, cover searches up to {} \
         assignments; subcomplexes are components of closures of disc subsets (exhaustive up to {} discs) and of \
         the 1-skeleton; infinite covers are not represented",
        b.max_depth, b.max_degree, b.max_cells, b.max_cover_search, FULL_SUBSET_LIMIT
    )
}

/// χ ≤ 0 passes; χ ≥ 1 passes only when contractibility is certified.
pub fn check_nonpositive_towers(x: &Arc<TwoComplex>, b: &TowerBounds) -> TowerReport {
    let (endpoints, stats) = enumerate_towers(x, b);
    let mut witnesses = Vec::new();
    let mut unknowns = Vec::new();
    for ep in &endpoints {
        if ep.class.chi <= 0 {
            continue;
        }
        match ep.class.status {
            ContractibilityStatus::Contractible { .. } => {}
            ContractibilityStatus::NotContractible { .. } => witnesses.push(EndpointSummary::of(ep)),
            ContractibilityStatus::Unknown { .. } => unknowns.push(EndpointSummary::of(ep)),
        }
    }
    let verdict = if !witnesses.is_empty() {
        Verdict::Witness
    } else if !unknowns.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::PassBounded
    };
    TowerReport { verdict, bounds: *b, scope: scope_note(b), witnesses, unknowns, stats }
}
