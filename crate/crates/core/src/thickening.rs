//! Boundary of a regular neighbourhood of an embedded 2-complex.
//!
//! The ambient 3-manifold is never represented. Instead, [`EmbeddingData`]
//! records, for every edge, the cyclic order of the disc-sides ("blades")
//! around it, and for every blade which of its two neighbouring angular
//! sectors the disc's positive side faces. From this the link of each vertex
//! becomes a ribbon graph whose faces are the components of the punctured
//! vertex neighbourhood. The boundary surface then has:
//!
//! * one vertex per face of each vertex link,
//! * one edge per sector between cyclically consecutive blades of an edge,
//! * two discs per disc, one on each side.
//!
//! Sending every boundary cell to the cell it runs parallel to gives an
//! immersion of the boundary surface into the complex.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::collapse::{collapsed_core, is_collapsed};
use crate::complex::{euler_characteristic, Disc, Edge, End, Letter, Sign, TwoComplex};
use crate::error::EmbeddingError;
use crate::homology::homology;
use crate::link::all_links;
use crate::morphism::{CellularMap, DiscImage, ImmersionWitness};
use crate::presentation::{presentation, simplify};

/// One occurrence of an edge in a disc boundary word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade {
    pub disc: usize,
    pub occ: usize,
    pub edge: usize,
    pub sign: Sign,
}

/// Which neighbouring sector of a blade its disc's positive side faces,
/// relative to the stored cyclic order around the edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Succ,
    Pred,
}

impl Side {
    fn sign(self) -> i8 {
        match self {
            Side::Succ => 1,
            Side::Pred => -1,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Succ => Side::Pred,
            Side::Pred => Side::Succ,
        }
    }
}

/// Cyclic blade orders per edge and co-orientations per blade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingData {
    /// `edge_orders[e]` lists the blades over edge `e` in cyclic order.
    pub edge_orders: Vec<Vec<Blade>>,
    /// `coorientations[d][i]` for letter `i` of disc `d`.
    pub coorientations: Vec<Vec<Side>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawBlade {
    pub disc: String,
    pub occ: usize,
}

/// JSON form: `{"edge_orders":{"e":[{"disc":"D","occ":0}]},"coorientations":{"D:0":"succ"}}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RawEmbedding {
    pub edge_orders: BTreeMap<String, Vec<RawBlade>>,
    pub coorientations: BTreeMap<String, Side>,
}

impl EmbeddingData {
    /// Builds data from `(disc, occurrence)` orders, filling in edge and
    /// sign from the complex.
    pub fn new(
        x: &TwoComplex,
        orders: Vec<Vec<(usize, usize)>>,
        coorientations: Vec<Vec<Side>>,
    ) -> Result<EmbeddingData, EmbeddingError> {
        let mut edge_orders = Vec::with_capacity(orders.len());
        for order in orders {
            let mut blades = Vec::with_capacity(order.len());
            for (disc, occ) in order {
                let letter = x
                    .discs()
                    .get(disc)
                    .and_then(|d| d.boundary.get(occ))
                    .ok_or_else(|| EmbeddingError::UnknownId(format!("disc #{disc} occurrence {occ}")))?;
                blades.push(Blade { disc, occ, edge: letter.edge, sign: letter.sign });
            }
            edge_orders.push(blades);
        }
        Ok(EmbeddingData { edge_orders, coorientations })
    }

    /// Orders given explicitly; every disc's positive side chosen so that
    /// co-orientations are consistent (successor side on positive letters).
    pub fn with_orders(x: &TwoComplex, orders: Vec<Vec<(usize, usize)>>) -> Result<EmbeddingData, EmbeddingError> {
        let coor = x
            .discs()
            .iter()
            .map(|d| {
                d.boundary
                    .iter()
                    .map(|l| if l.sign == Sign::Pos { Side::Succ } else { Side::Pred })
                    .collect()
            })
            .collect();
        EmbeddingData::new(x, orders, coor)
    }

    pub fn from_raw(x: &TwoComplex, raw: &RawEmbedding) -> Result<EmbeddingData, EmbeddingError> {
        let mut orders = vec![Vec::new(); x.num_edges()];
        for (edge, blades) in &raw.edge_orders {
            let e = x.edge_index(edge).ok_or_else(|| EmbeddingError::UnknownId(edge.clone()))?;
            for b in blades {
                let d = x.disc_index(&b.disc).ok_or_else(|| EmbeddingError::UnknownId(b.disc.clone()))?;
                orders[e].push((d, b.occ));
            }
        }
        let mut coor: Vec<Vec<Option<Side>>> =
            x.discs().iter().map(|d| vec![None; d.boundary.len()]).collect();
        for (key, &side) in &raw.coorientations {
            let (disc, occ) = key.rsplit_once(':').ok_or_else(|| EmbeddingError::UnknownId(key.clone()))?;
            let d = x.disc_index(disc).ok_or_else(|| EmbeddingError::UnknownId(key.clone()))?;
            let i: usize = occ.parse().map_err(|_| EmbeddingError::UnknownId(key.clone()))?;
            let slot = coor[d].get_mut(i).ok_or_else(|| EmbeddingError::UnknownId(key.clone()))?;
            *slot = Some(side);
        }
        let mut coorientations = Vec::with_capacity(coor.len());
        for (d, sides) in coor.into_iter().enumerate() {
            let mut row = Vec::with_capacity(sides.len());
            for (i, s) in sides.into_iter().enumerate() {
                row.push(s.ok_or_else(|| {
                    EmbeddingError::UnknownId(format!("missing co-orientation {}:{i}", x.discs()[d].id))
                })?);
            }
            coorientations.push(row);
        }
        EmbeddingData::new(x, orders, coorientations)
    }

    pub fn from_json(x: &TwoComplex, text: &str) -> Result<EmbeddingData, crate::Error> {
        let raw: RawEmbedding = serde_json::from_str(text)?;
        Ok(EmbeddingData::from_raw(x, &raw)?)
    }

    pub fn to_raw(&self, x: &TwoComplex) -> RawEmbedding {
        let edge_orders = self
            .edge_orders
            .iter()
            .enumerate()
            .map(|(e, blades)| {
                let list = blades
                    .iter()
                    .map(|b| RawBlade { disc: x.discs()[b.disc].id.clone(), occ: b.occ })
                    .collect();
                (x.edges()[e].id.clone(), list)
            })
            .collect();
        let mut coorientations = BTreeMap::new();
        for (d, sides) in self.coorientations.iter().enumerate() {
            for (i, &s) in sides.iter().enumerate() {
                coorientations.insert(format!("{}:{i}", x.discs()[d].id), s);
            }
        }
        RawEmbedding { edge_orders, coorientations }
    }

    pub fn to_json(&self, x: &TwoComplex) -> String {
        serde_json::to_string_pretty(&self.to_raw(x)).expect("embedding serializes")
    }
}

/// Ribbon structure of all vertex links: darts are blade-ends, faces are
/// numbered per vertex.
struct Ribbon {
    /// position of each letter in its edge's cyclic order
    position: Vec<Vec<usize>>,
    /// first dart of (edge, end)
    dart_base: Vec<[usize; 2]>,
    /// (vertex, face index at that vertex) per dart
    face: Vec<(usize, usize)>,
    faces_at: Vec<usize>,
}

fn end_slot(end: End) -> usize {
    match end {
        End::Source => 0,
        End::Target => 1,
    }
}

impl Ribbon {
    fn dart(&self, x: &TwoComplex, edge: usize, end: End, j: usize) -> usize {
        let _ = x;
        self.dart_base[edge][end_slot(end)] + j
    }
}

fn check_preconditions(x: &TwoComplex) -> Result<(), EmbeddingError> {
    if !x.is_connected() {
        return Err(EmbeddingError::Precondition("complex is empty or disconnected".into()));
    }
    let (collapsed, free) = is_collapsed(x);
    if !collapsed {
        return Err(EmbeddingError::Precondition(format!("complex has free faces {free:?}")));
    }
    if let Some(e) = x.edge_occurrences().iter().position(|&o| o == 0) {
        return Err(EmbeddingError::Precondition(format!("edge `{}` is isolated", x.edges()[e].id)));
    }
    if let Some(v) = x.vertex_degrees().iter().position(|&d| d == 0) {
        return Err(EmbeddingError::Precondition(format!("vertex `{}` is isolated", x.vertices()[v])));
    }
    Ok(())
}

fn analyze(x: &TwoComplex, emb: &EmbeddingData) -> Result<Ribbon, EmbeddingError> {
    check_preconditions(x)?;
    if emb.edge_orders.len() != x.num_edges() {
        return Err(EmbeddingError::Blades {
            edge: "*".into(),
            detail: format!("{} edge orders for {} edges", emb.edge_orders.len(), x.num_edges()),
        });
    }
    // blade completeness
    let mut position: Vec<Vec<usize>> = x.discs().iter().map(|d| vec![usize::MAX; d.boundary.len()]).collect();
    for (e, blades) in emb.edge_orders.iter().enumerate() {
        let edge_id = &x.edges()[e].id;
        for (p, b) in blades.iter().enumerate() {
            let letter = x.discs().get(b.disc).and_then(|d| d.boundary.get(b.occ));
            if letter.map(|l| l.edge) != Some(e) || b.edge != e {
                return Err(EmbeddingError::Blades {
                    edge: edge_id.clone(),
                    detail: format!("blade {}:{} does not lie on this edge", b.disc, b.occ),
                });
            }
            if position[b.disc][b.occ] != usize::MAX {
                return Err(EmbeddingError::Blades {
                    edge: edge_id.clone(),
                    detail: format!("blade {}:{} listed twice", x.discs()[b.disc].id, b.occ),
                });
            }
            position[b.disc][b.occ] = p;
        }
    }
    for (d, disc) in x.discs().iter().enumerate() {
        if let Some(i) = position[d].iter().position(|&p| p == usize::MAX) {
            return Err(EmbeddingError::Blades {
                edge: x.edges()[disc.boundary[i].edge].id.clone(),
                detail: format!("blade {}:{i} missing", disc.id),
            });
        }
    }
    // co-orientation: side * sign is constant along each boundary word
    if emb.coorientations.len() != x.num_discs()
        || emb.coorientations.iter().zip(x.discs()).any(|(c, d)| c.len() != d.boundary.len())
    {
        return Err(EmbeddingError::UnknownId("co-orientation table does not match the discs".into()));
    }
    for (d, disc) in x.discs().iter().enumerate() {
        let parity = |i: usize| emb.coorientations[d][i].sign() * disc.boundary[i].sign.to_i64() as i8;
        if let Some(i) = (1..disc.boundary.len()).find(|&i| parity(i) != parity(0)) {
            return Err(EmbeddingError::Coorientation { disc: disc.id.clone(), first: 0, second: i });
        }
    }
    // darts
    let mut dart_base = Vec::with_capacity(x.num_edges());
    let mut count = 0;
    for blades in &emb.edge_orders {
        dart_base.push([count, count + blades.len()]);
        count += 2 * blades.len();
    }
    let mut ribbon = Ribbon { position, dart_base, face: vec![(usize::MAX, 0); count], faces_at: vec![0; x.num_vertices()] };
    let mut vertex_of = vec![0; count];
    let mut alpha = vec![usize::MAX; count];
    let mut sigma = vec![usize::MAX; count];
    for (e, blades) in emb.edge_orders.iter().enumerate() {
        let n = blades.len();
        for j in 0..n {
            let s = ribbon.dart(x, e, End::Source, j);
            let t = ribbon.dart(x, e, End::Target, j);
            vertex_of[s] = x.edges()[e].src;
            vertex_of[t] = x.edges()[e].dst;
            sigma[s] = ribbon.dart(x, e, End::Source, (j + 1) % n);
            sigma[t] = ribbon.dart(x, e, End::Target, (j + n - 1) % n);
        }
    }
    for (d, disc) in x.discs().iter().enumerate() {
        let len = disc.boundary.len();
        for i in 0..len {
            let k = (i + 1) % len;
            let (li, lk) = (disc.boundary[i], disc.boundary[k]);
            let from = ribbon.dart(x, li.edge, End::Target.oriented(li.sign), ribbon.position[d][i]);
            let to = ribbon.dart(x, lk.edge, End::Source.oriented(lk.sign), ribbon.position[d][k]);
            alpha[from] = to;
            alpha[to] = from;
        }
    }
    debug_assert!(alpha.iter().all(|&a| a != usize::MAX));
    // faces: orbits of sigma after alpha
    for (start, &v) in vertex_of.iter().enumerate() {
        if ribbon.face[start].0 != usize::MAX {
            continue;
        }
        let k = ribbon.faces_at[v];
        ribbon.faces_at[v] += 1;
        let mut d = start;
        loop {
            ribbon.face[d] = (v, k);
            d = sigma[alpha[d]];
            if d == start {
                break;
            }
        }
    }
    // sphericity of each link
    for (v, link) in all_links(x).iter().enumerate() {
        if link.num_components() != 1 {
            return Err(EmbeddingError::DisconnectedLink(x.vertices()[v].clone()));
        }
        let euler = link.nodes.len() as i64 - link.arcs.len() as i64 + ribbon.faces_at[v] as i64;
        if euler != 2 {
            return Err(EmbeddingError::NonSphericalLink { vertex: x.vertices()[v].clone(), euler });
        }
    }
    Ok(ribbon)
}

/// Checks blade completeness, co-orientation consistency and that every
/// vertex link is a connected ribbon graph on the 2-sphere.
pub fn validate_embedding(x: &TwoComplex, emb: &EmbeddingData) -> Result<EmbeddingData, EmbeddingError> {
    analyze(x, emb)?;
    Ok(emb.clone())
}

/// A connected component of the boundary surface.
#[derive(Debug, Clone)]
pub struct SurfaceComponent {
    pub complex: Arc<TwoComplex>,
    pub inclusion: CellularMap,
    pub chi: i64,
    pub is_sphere: bool,
}

#[derive(Debug, Clone)]
pub struct BoundaryResult {
    pub boundary: Arc<TwoComplex>,
    pub retraction_immersion: CellularMap,
    pub components: Vec<SurfaceComponent>,
    /// Where the retraction fails to be injective on a vertex link. This
    /// happens exactly when a face of some vertex link of X meets the same
    /// node or arc twice, as for the dunce hat.
    pub immersion_witness: Option<ImmersionWitness>,
}

impl BoundaryResult {
    pub fn immersion_verified(&self) -> bool {
        self.immersion_witness.is_none()
    }

    pub fn sphere_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_sphere).count()
    }

    pub fn component_chis(&self) -> Vec<i64> {
        self.components.iter().map(|c| c.chi).collect()
    }
}

/// Every edge used by exactly two disc-sides and every vertex link a circle.
pub fn is_closed_surface(x: &TwoComplex) -> bool {
    x.edge_occurrences().iter().all(|&o| o == 2) && all_links(x).iter().all(|l| l.is_circle())
}

/// Builds the boundary surface and its immersion into `x`, checking every
/// postcondition.
pub fn boundary_complex(x: &Arc<TwoComplex>, emb: &EmbeddingData) -> Result<BoundaryResult, EmbeddingError> {
    let ribbon = analyze(x, emb)?;
    let mut vertices = Vec::new();
    let mut vertex_map = Vec::new();
    let mut vertex_base = Vec::with_capacity(x.num_vertices());
    for (v, name) in x.vertices().iter().enumerate() {
        vertex_base.push(vertices.len());
        for k in 0..ribbon.faces_at[v] {
            vertices.push(format!("{name}#{k}"));
            vertex_map.push(v);
        }
    }
    let face_vertex = |dart: usize| {
        let (v, k) = ribbon.face[dart];
        vertex_base[v] + k
    };
    let mut edges = Vec::new();
    let mut edge_map = Vec::new();
    let mut sector_base = Vec::with_capacity(x.num_edges());
    for (e, edge) in x.edges().iter().enumerate() {
        sector_base.push(edges.len());
        let n = emb.edge_orders[e].len();
        for i in 0..n {
            let src = face_vertex(ribbon.dart(x, e, End::Source, (i + 1) % n));
            let dst = face_vertex(ribbon.dart(x, e, End::Target, i));
            edges.push(Edge { id: format!("{}#{i}", edge.id), src, dst });
            edge_map.push((e, Sign::Pos));
        }
    }
    let mut discs = Vec::new();
    let mut disc_map = Vec::new();
    for (d, disc) in x.discs().iter().enumerate() {
        for (suffix, positive) in [("+", true), ("-", false)] {
            let boundary = disc
                .boundary
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let n = emb.edge_orders[l.edge].len();
                    let p = ribbon.position[d][i];
                    let side = if positive { emb.coorientations[d][i] } else { emb.coorientations[d][i].opposite() };
                    let sector = match side {
                        Side::Succ => p,
                        Side::Pred => (p + n - 1) % n,
                    };
                    Letter { edge: sector_base[l.edge] + sector, sign: l.sign }
                })
                .collect();
            discs.push(Disc { id: format!("{}{suffix}", disc.id), boundary });
            disc_map.push(DiscImage { disc: d, offset: 0, flip: false });
        }
    }
    let boundary = TwoComplex::new(vertices, edges, discs)
        .map(Arc::new)
        .map_err(|err| EmbeddingError::Invariant(format!("boundary cell structure: {err}")))?;
    let retraction_immersion = CellularMap::new(boundary.clone(), x.clone(), vertex_map, edge_map, disc_map)
        .map_err(|err| EmbeddingError::Invariant(format!("retraction map: {err}")))?;

    if !is_closed_surface(&boundary) {
        return Err(EmbeddingError::Invariant("boundary is not a closed surface".into()));
    }
    let (_, immersion_witness) = retraction_immersion.is_immersion();
    let (chi_b, chi_x) = (euler_characteristic(&boundary), euler_characteristic(x));
    if chi_b != 2 * chi_x {
        return Err(EmbeddingError::Invariant(format!("chi(boundary) = {chi_b} but chi(X) = {chi_x}")));
    }
    let components = boundary
        .components()
        .into_iter()
        .map(|(complex, inclusion)| {
            let chi = euler_characteristic(&complex);
            SurfaceComponent { complex, inclusion, chi, is_sphere: chi == 2 }
        })
        .collect();
    Ok(BoundaryResult { boundary, retraction_immersion, components, immersion_witness })
}

/// Restricts embedding data along a subcomplex inclusion into `x`.
pub fn restrict_embedding(
    x: &TwoComplex,
    emb: &EmbeddingData,
    inclusion: &CellularMap,
) -> Result<EmbeddingData, EmbeddingError> {
    if **inclusion.target() != *x {
        return Err(EmbeddingError::NotInclusion("map does not land in the embedded complex".into()));
    }
    if !inclusion.is_inclusion() {
        return Err(EmbeddingError::NotInclusion("map is not injective and orientation preserving".into()));
    }
    let y = inclusion.source();
    let mut disc_pre = vec![None; x.num_discs()];
    for (dy, img) in inclusion.disc_map().iter().enumerate() {
        disc_pre[img.disc] = Some(dy);
    }
    let edge_orders = inclusion
        .edge_map()
        .iter()
        .enumerate()
        .map(|(ey, &(ex, _))| {
            emb.edge_orders[ex]
                .iter()
                .filter_map(|b| {
                    disc_pre[b.disc].map(|dy| Blade { disc: dy, occ: b.occ, edge: ey, sign: b.sign })
                })
                .collect()
        })
        .collect();
    let coorientations = inclusion.disc_map().iter().map(|img| emb.coorientations[img.disc].clone()).collect();
    let restricted = EmbeddingData { edge_orders, coorientations };
    validate_embedding(y, &restricted)
}

/// A sphere immersed in a complex.
#[derive(Debug, Clone)]
pub struct ImmersedSphere {
    pub sphere: Arc<TwoComplex>,
    pub immersion: CellularMap,
    /// Set when π₁ could not be certified trivial within the budget.
    pub warning: Option<String>,
}

/// Finds an immersed 2-sphere in a simply connected embedded complex via
/// the boundary surface of a collapsed core, or `None` when the complex has
/// no collapsed subcomplex containing a disc.
pub fn immersed_sphere(
    x: &Arc<TwoComplex>,
    emb: &EmbeddingData,
    budget: usize,
) -> Result<Option<ImmersedSphere>, EmbeddingError> {
    let h = homology(x);
    if h.betti[0] != 1 {
        return Err(EmbeddingError::Precondition("complex is empty or disconnected".into()));
    }
    if h.betti[1] != 0 || !h.torsion1.is_empty() {
        return Err(EmbeddingError::NotSimplyConnected(format!("H1 is nontrivial ({h})")));
    }
    let p = presentation(x).expect("connected");
    let warning = (!simplify(&p, budget).is_trivial())
        .then(|| "fundamental group not certified trivial within the Tietze budget".to_string());
    let Some((core, inclusion)) = collapsed_core(x).into_iter().next() else {
        return Ok(None);
    };
    let restricted = restrict_embedding(x, emb, &inclusion)?;
    let result = boundary_complex(&core, &restricted)?;
    let mut first_failure = None;
    for component in result.components.iter().filter(|c| c.is_sphere) {
        let immersion = component
            .inclusion
            .compose(&result.retraction_immersion)
            .and_then(|f| f.compose(&inclusion))
            .map_err(|e| EmbeddingError::Invariant(e.to_string()))?;
        match immersion.is_immersion() {
            (true, _) => return Ok(Some(ImmersedSphere { sphere: component.complex.clone(), immersion, warning })),
            (false, w) => {
                first_failure.get_or_insert_with(|| {
                    let w = w.expect("failure has a witness");
                    component.complex.vertices()[w.vertex].clone()
                });
            }
        }
    }
    match first_failure {
        Some(vertex) => Err(EmbeddingError::NotImmersion(vertex)),
        None => Err(EmbeddingError::Invariant("no spherical boundary component".into())),
    }
}

/// Exhaustive search for valid embedding data: every cyclic order of every
/// edge (first blade fixed), with consistent co-orientations. Stops after
/// `limit` candidates.
pub fn search_embedding(x: &TwoComplex, limit: usize) -> Option<EmbeddingData> {
    check_preconditions(x).ok()?;
    let mut blades: Vec<Vec<(usize, usize)>> = vec![Vec::new(); x.num_edges()];
    for (d, disc) in x.discs().iter().enumerate() {
        for (i, l) in disc.boundary.iter().enumerate() {
            blades[l.edge].push((d, i));
        }
    }
    let choices: Vec<Vec<Vec<(usize, usize)>>> = blades.iter().map(|b| cyclic_orders(b)).collect();
    let mut index = vec![0usize; choices.len()];
    for _ in 0..limit {
        let orders = index.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        let emb = EmbeddingData::with_orders(x, orders).ok()?;
        if analyze(x, &emb).is_ok() {
            return Some(emb);
        }
        // odometer
        let mut k = 0;
        loop {
            if k == index.len() {
                return None;
            }
            index[k] += 1;
            if index[k] < choices[k].len() {
                break;
            }
            index[k] = 0;
            k += 1;
        }
    }
    None
}

/// All cyclic orders of `items` with the first element fixed.
fn cyclic_orders<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 2 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    let mut rest: Vec<T> = items[1..].to_vec();
    permute(&mut rest, 0, &mut |p| {
        let mut v = vec![items[0].clone()];
        v.extend_from_slice(p);
        out.push(v);
    });
    out
}

fn permute<T: Clone>(items: &mut Vec<T>, k: usize, f: &mut impl FnMut(&[T])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}
