//! Command-line front end. [`run`] parses an argument vector and returns the
//! text, the optional JSON payload and the exit code; the `complexforge`
//! binary only prints the result.
//!
//! Complex arguments are file paths, or builtin names when no such file
//! exists. Exit codes: 0 success, 2 and 3 for `towers-check` verdicts
//! WITNESS and INCONCLUSIVE, 64 usage, 65 invalid input, 70 internal
//! invariant violation.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::builtins::{builtin, NAMES};
use crate::collapse::{collapse_maximally, collapsed_core, is_collapsed, FreeFace};
use crate::complex::{euler_characteristic, End, TwoComplex};
use crate::contractibility::{budget_from_env, contractibility_with_homology};
use crate::covers::enumerate_covers;
use crate::error::EmbeddingError;
use crate::homology::homology;
use crate::link::all_links;
use crate::morphism::{CellularMap, ImmersionWitness, LinkElement, RawMap};
use crate::thickening::{boundary_complex, immersed_sphere, EmbeddingData};
use crate::towers::{check_nonpositive_towers, TowerBounds, Verdict};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_WITNESS: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INVALID: i32 = 65;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub text: String,
    /// Set when `--json` was given.
    pub json: Option<Value>,
    pub exit_code: i32,
}

impl CommandResult {
    /// What the binary writes: pretty JSON when present, the text otherwise.
    pub fn output(&self) -> String {
        match &self.json {
            Some(v) => serde_json::to_string_pretty(v).expect("values serialize") + "\n",
            None => self.text.clone(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "complexforge", version, about = "Exact combinatorial engine for compact 2-complexes")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Complex JSON file or builtin name.
    complex: String,
}

#[derive(Args, Debug)]
struct EmbeddedInput {
    /// Complex JSON file or builtin name.
    complex: String,
    /// Embedding JSON file; defaults to the builtin's own embedding.
    embedding: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cell counts, χ, connectivity, free faces and contractibility status.
    Info(Input),
    /// Collapse free faces until none remain.
    Collapse {
        #[command(flatten)]
        input: Input,
        /// Write the collapsed complex to this path.
        #[arg(long, value_name = "PATH")]
        emit: Option<String>,
    },
    /// Collapsed connected subcomplexes containing a disc.
    Core(Input),
    /// Betti numbers and torsion.
    Homology(Input),
    /// Vertex links.
    Links {
        #[command(flatten)]
        input: Input,
        /// Write every link as Graphviz DOT to this path.
        #[arg(long, value_name = "PATH")]
        dot_links: Option<String>,
    },
    /// Boundary surface of the thickening and its map back to the complex.
    Boundary {
        #[command(flatten)]
        input: EmbeddedInput,
        /// Write the boundary complex and its map to these paths.
        #[arg(long, value_name = "PATH", num_args = 1..=2)]
        emit: Vec<String>,
    },
    /// Immersed 2-sphere from the boundary of a collapsed core.
    Sphere(EmbeddedInput),
    /// Connected covers of a given degree, up to isomorphism.
    Covers {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        degree: usize,
        /// Print only the number of covers.
        #[arg(long)]
        count_only: bool,
    },
    /// Bounded nonpositive-towers check.
    TowersCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = TowerBounds::default().max_depth)]
        depth: usize,
        #[arg(long, default_value_t = TowerBounds::default().max_degree)]
        degree: usize,
        #[arg(long, default_value_t = TowerBounds::default().max_cells)]
        max_cells: usize,
        #[arg(long, default_value_t = TowerBounds::default().max_cover_search)]
        max_cover_search: usize,
    },
    /// Show or export a builtin complex.
    Builtin {
        /// Builtin name; `wedge_circles:k` takes a count.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        /// Write the complex, then its embedding when it has one.
        #[arg(long, value_name = "PATH", num_args = 1..=2)]
        emit: Vec<String>,
        #[arg(long)]
        list: bool,
    },
    /// Validate a map and test it for immersion, covering and inclusion.
    CheckMap {
        source: String,
        target: String,
        /// Map JSON file.
        map: String,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Embedding(EmbeddingError::Invariant(_)) => EXIT_INTERNAL,
            _ => EXIT_INVALID,
        };
        Failure { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, message: message.into() }
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: EXIT_OK }
    }
}

/// Runs one command. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return CommandResult { text: e.render().to_string(), json: None, exit_code: code };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => CommandResult { text: out.text, json: cli.json.then_some(out.json), exit_code: out.code },
        Err(f) => {
            let json = cli.json.then(|| json!({ "error": f.message, "exit_code": f.code }));
            CommandResult { text: format!("error: {}\n", f.message), json, exit_code: f.code }
        }
    }
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read `{path}`: {e}")))
}

fn write(path: &str, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure { code: EXIT_INTERNAL, message: format!("cannot write `{path}`: {e}") })
}

/// A complex from a file, or a builtin when no file has that name.
fn load(arg: &str) -> Result<(Arc<TwoComplex>, Option<EmbeddingData>), Failure> {
    if Path::new(arg).is_file() {
        let x = TwoComplex::from_json(&read(arg)?)?;
        return Ok((Arc::new(x), None));
    }
    match builtin(arg) {
        Ok(b) => Ok((b.complex, b.embedding)),
        Err(Error::UnknownBuiltin(_)) => Err(invalid(format!("`{arg}` is neither a file nor a builtin"))),
        Err(e) => Err(e.into()),
    }
}

fn load_embedded(input: &EmbeddedInput) -> Result<(Arc<TwoComplex>, EmbeddingData), Failure> {
    let (x, own) = load(&input.complex)?;
    let emb = match &input.embedding {
        Some(path) => EmbeddingData::from_json(&x, &read(path)?)?,
        None => own.ok_or_else(|| invalid(format!("`{}` has no embedding data; pass an embedding file", input.complex)))?,
    };
    Ok((x, emb))
}

fn raw_json(x: &TwoComplex) -> Value {
    serde_json::to_value(x.to_raw()).expect("complexes serialize")
}

fn map_json(f: &CellularMap) -> Value {
    serde_json::to_value(f.to_raw()).expect("maps serialize")
}

fn element(x: &TwoComplex, e: LinkElement) -> String {
    match e {
        LinkElement::Node(n) => {
            let end = if n.end == End::Source { "src" } else { "dst" };
            format!("node {}:{end}", x.edges()[n.edge].id)
        }
        LinkElement::Arc(c) => format!("arc {}:{}", x.discs()[c.disc].id, c.index),
    }
}

fn witness_text(f: &CellularMap, w: &ImmersionWitness) -> String {
    let (x, y) = (f.source(), f.target());
    format!(
        "at vertex {}: {} and {} both map to {}",
        x.vertices()[w.vertex],
        element(x, w.first),
        element(x, w.second),
        element(y, w.image)
    )
}

fn dispatch(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Info(input) => info(&input),
        Command::Collapse { input, emit } => collapse(&input, emit.as_deref()),
        Command::Core(input) => core(&input),
        Command::Homology(input) => homology_cmd(&input),
        Command::Links { input, dot_links } => links(&input, dot_links.as_deref()),
        Command::Boundary { input, emit } => boundary(&input, &emit),
        Command::Sphere(input) => sphere(&input),
        Command::Covers { input, degree, count_only } => covers(&input, degree, count_only),
        Command::TowersCheck { input, depth, degree, max_cells, max_cover_search } => {
            towers(&input, TowerBounds { max_depth: depth, max_degree: degree, max_cells, max_cover_search })
        }
        Command::Builtin { name, emit, list } => builtin_cmd(name.as_deref(), &emit, list),
        Command::CheckMap { source, target, map } => check_map(&source, &target, &map),
    }
}

fn info(input: &Input) -> Result<Output, Failure> {
    let (x, _) = load(&input.complex)?;
    let (collapsed, free) = is_collapsed(&x);
    let free: Vec<String> = free
        .iter()
        .map(|f| match *f {
            FreeFace::Vertex(v) => x.vertices()[v].clone(),
            FreeFace::Edge(e) => x.edges()[e].id.clone(),
        })
        .collect();
    let components = x.num_components();
    let chi = euler_characteristic(&x);
    let status = if components == 1 {
        let h = homology(&x);
        contractibility_with_homology(&x, &h, budget_from_env()).label()
    } else {
        "NOT_CONTRACTIBLE"
    };
    let text = format!(
        "vertices: {}, edges: {}, discs: {}\nχ: {chi}\ncomponents: {components}\ncollapsed: {collapsed}\nfree faces: [{}]\ncontractibility: {status}\n",
        x.num_vertices(),
        x.num_edges(),
        x.num_discs(),
        free.join(", ")
    );
    let json = json!({
        "vertices": x.num_vertices(),
        "edges": x.num_edges(),
        "discs": x.num_discs(),
        "chi": chi,
        "components": components,
        "collapsed": collapsed,
        "free_faces": free,
        "contractibility": status,
    });
    Ok(Output::ok(text, json))
}

fn counts(x: &TwoComplex) -> String {
    format!("{} vertices, {} edges, {} discs", x.num_vertices(), x.num_edges(), x.num_discs())
}

fn collapse(input: &Input, emit: Option<&str>) -> Result<Output, Failure> {
    let (x, _) = load(&input.complex)?;
    let r = collapse_maximally(&x);
    if let Some(path) = emit {
        write(path, &r.complex.to_json())?;
    }
    let mut text = format!("{} collapses; result: {}\n", r.log.len(), counts(&r.complex));
    for step in &r.log {
        match step {
            crate::collapse::CollapseStep::Vertex { vertex, edge } => {
                let _ = writeln!(text, "  vertex {vertex} with edge {edge}");
            }
            crate::collapse::CollapseStep::Edge { edge, disc } => {
                let _ = writeln!(text, "  edge {edge} with disc {disc}");
            }
        }
    }
    let json = json!({ "steps": r.log, "result": raw_json(&r.complex) });
    Ok(Output::ok(text, json))
}

fn core(input: &Input) -> Result<Output, Failure> {
    let (x, _) = load(&input.complex)?;
    let cores = collapsed_core(&x);
    let mut text = format!("{} core component(s)\n", cores.len());
    let mut list = Vec::new();
    for (c, inclusion) in &cores {
        let _ = writeln!(text, "  {}, χ = {}", counts(c), euler_characteristic(c));
        list.push(json!({ "complex": raw_json(c), "inclusion": map_json(inclusion) }));
    }
    Ok(Output::ok(text, json!({ "cores": list })))
}

fn homology_cmd(input: &Input) -> Result<Output, Failure> {
    let (x, _) = load(&input.complex)?;
    let h = homology(&x);
    let text = format!("{h}\n");
    Ok(Output::ok(text, serde_json::to_value(&h).expect("homology serializes")))
}

fn links(input: &Input, dot: Option<&str>) -> Result<Output, Failure> {
    let (x, _) = load(&input.complex)?;
    let all = all_links(&x);
    let mut text = String::new();
    let mut list = Vec::new();
    let mut dot_text = String::new();
    for l in &all {
        let id = &x.vertices()[l.vertex];
        let _ = writeln!(
            text,
            "{id}: {} nodes, {} arcs, {} component(s){}",
            l.nodes.len(),
            l.arcs.len(),
            l.num_components(),
            if l.is_circle() { ", circle" } else { "" }
        );
        list.push(json!({
            "vertex": id,
            "nodes": l.nodes.len(),
            "arcs": l.arcs.len(),
            "components": l.num_components(),
            "circle": l.is_circle(),
        }));
        dot_text.push_str(&l.to_dot(&x));
    }
    if let Some(path) = dot {
        write(path, &dot_text)?;
    }
    Ok(Output::ok(text, json!({ "links": list })))
}

fn boundary(input: &EmbeddedInput, emit: &[String]) -> Result<Output, Failure> {
    let (x, emb) = load_embedded(input)?;
    let r = boundary_complex(&x, &emb).map_err(Error::from)?;
    if let Some(path) = emit.first() {
        write(path, &r.boundary.to_json())?;
    }
    if let Some(path) = emit.get(1) {
        let text = serde_json::to_string_pretty(&r.retraction_immersion.to_raw()).expect("maps serialize");
        write(path, &text)?;
    }
    let chis: Vec<String> = r.component_chis().iter().map(i64::to_string).collect();
    let status = if r.immersion_verified() { "verified" } else { "failed" };
    let mut text = format!(
        "components: {}, χ: [{}], spheres: {}, immersion: {status}\n",
        r.components.len(),
        chis.join(", "),
        r.sphere_count()
    );
    let witness = r.immersion_witness.as_ref().map(|w| witness_text(&r.retraction_immersion, w));
    if let Some(w) = &witness {
        let _ = writeln!(text, "fold {w}");
    }
    let components: Vec<Value> = r
        .components
        .iter()
        .map(|c| json!({ "chi": c.chi, "sphere": c.is_sphere, "cells": c.complex.num_cells() }))
        .collect();
    let json = json!({
        "components": components,
        "spheres": r.sphere_count(),
        "immersion": status,
        "witness": witness,
        "boundary": raw_json(&r.boundary),
        "map": map_json(&r.retraction_immersion),
    });
    Ok(Output::ok(text, json))
}

fn sphere(input: &EmbeddedInput) -> Result<Output, Failure> {
    let (x, emb) = load_embedded(input)?;
    let found = immersed_sphere(&x, &emb, budget_from_env()).map_err(Error::from)?;
    let Some(s) = found else {
        let text = "no collapsed subcomplex with a disc; no sphere\n".to_string();
        return Ok(Output::ok(text, json!({ "found": false })));
    };
    let mut text = format!("immersed sphere: {}, immersion verified\n", counts(&s.sphere));
    if let Some(w) = &s.warning {
        let _ = writeln!(text, "warning: {w}");
    }
    let json = json!({
        "found": true,
        "sphere": raw_json(&s.sphere),
        "immersion": map_json(&s.immersion),
        "warning": s.warning,
    });
    Ok(Output::ok(text, json))
}

fn covers(input: &Input, degree: usize, count_only: bool) -> Result<Output, Failure> {
    if degree == 0 {
        return Err(invalid("degree must be positive"));
    }
    let (x, _) = load(&input.complex)?;
    if !x.is_connected() {
        return Err(Error::Complex(crate::ComplexError::NotConnected).into());
    }
    let all = enumerate_covers(&x, degree);
    let mut text = format!("{} connected cover(s) of degree {degree}\n", all.len());
    if count_only {
        return Ok(Output::ok(text, json!({ "degree": degree, "count": all.len() })));
    }
    let mut list = Vec::new();
    for c in &all {
        let chi = euler_characteristic(&c.complex);
        let perms: serde_json::Map<String, Value> = x
            .edges()
            .iter()
            .zip(&c.assignment.perms)
            .map(|(e, p)| (e.id.clone(), json!(p)))
            .collect();
        let shown: Vec<String> =
            x.edges().iter().zip(&c.assignment.perms).map(|(e, p)| format!("{}={p:?}", e.id)).collect();
        let _ = writeln!(text, "  {}; χ = {chi}; {}", shown.join(" "), homology(&c.complex));
        list.push(json!({ "perms": perms, "chi": chi, "complex": raw_json(&c.complex) }));
    }
    Ok(Output::ok(text, json!({ "degree": degree, "count": all.len(), "covers": list })))
}

fn towers(input: &Input, bounds: TowerBounds) -> Result<Output, Failure> {
    if bounds.max_depth == 0 || bounds.max_degree == 0 || bounds.max_cells == 0 || bounds.max_cover_search == 0 {
        return Err(Failure { code: EXIT_USAGE, message: "tower bounds must be positive".into() });
    }
    let (x, _) = load(&input.complex)?;
    if !x.is_connected() {
        return Err(Error::Complex(crate::ComplexError::NotConnected).into());
    }
    let r = check_nonpositive_towers(&x, &bounds);
    let mut text = format!("{}\nverdict: {}\n", r.scope, r.verdict.label());
    let _ = writeln!(
        text,
        "endpoints: {}, dedup hits: {}, witnesses: {}, unknowns: {}",
        r.stats.endpoints,
        r.stats.dedup_hits,
        r.witnesses.len(),
        r.unknowns.len()
    );
    for (kind, list) in [("witness", &r.witnesses), ("unknown", &r.unknowns)] {
        for w in list {
            let trace: Vec<String> = w.stages.iter().map(ToString::to_string).collect();
            let trace = if trace.is_empty() { "BASE".to_string() } else { trace.join(" > ") };
            let _ = writeln!(text, "  {kind}: {trace}; χ = {}; {}; {}", w.chi, w.homology, w.status.label());
        }
    }
    let code = match r.verdict {
        Verdict::PassBounded => EXIT_OK,
        Verdict::Witness => EXIT_WITNESS,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    };
    let json = serde_json::to_value(&r).expect("reports serialize");
    Ok(Output { text, json, code })
}

fn builtin_cmd(name: Option<&str>, emit: &[String], list: bool) -> Result<Output, Failure> {
    if list {
        let mut text = String::new();
        let mut entries = Vec::new();
        for n in NAMES {
            let b = builtin(n)?;
            let _ = writeln!(text, "{n}: {}", b.doc);
            entries.push(json!({ "name": n, "doc": b.doc, "embedding": b.embedding.is_some() }));
        }
        return Ok(Output::ok(text, json!({ "builtins": entries })));
    }
    let name = name.ok_or_else(|| Failure { code: EXIT_USAGE, message: "missing builtin name".into() })?;
    let b = builtin(name)?;
    if let Some(path) = emit.first() {
        write(path, &b.complex.to_json())?;
    }
    if let Some(path) = emit.get(1) {
        let emb = b.embedding.as_ref().ok_or_else(|| invalid(format!("`{name}` has no embedding data")))?;
        write(path, &emb.to_json(&b.complex))?;
    }
    let e = &b.expected;
    let text = format!(
        "{}: {}\n{}\nχ: {}, collapsed: {}, betti: {:?}, torsion: {:?}, {}\n",
        b.name,
        b.doc,
        counts(&b.complex),
        e.chi,
        e.collapsed,
        e.betti,
        e.torsion,
        e.status
    );
    let json = json!({
        "name": b.name,
        "doc": b.doc,
        "complex": raw_json(&b.complex),
        "embedding": b.embedding.as_ref().map(|emb| serde_json::to_value(emb.to_raw(&b.complex)).expect("embeddings serialize")),
        "expected": e,
    });
    Ok(Output::ok(text, json))
}

fn check_map(source: &str, target: &str, map: &str) -> Result<Output, Failure> {
    let (x, _) = load(source)?;
    let (y, _) = load(target)?;
    let raw: RawMap = serde_json::from_str(&read(map)?).map_err(Error::from)?;
    let f = CellularMap::from_raw(x, y, &raw).map_err(Error::from)?;
    let (immersion, witness) = f.is_immersion();
    let covering = f.is_covering();
    let inclusion = f.is_inclusion();
    let witness = witness.map(|w| witness_text(&f, &w));
    let mut text = format!(
        "valid map\nimmersion: {immersion}\ncovering: {}{}\ninclusion: {inclusion}\n",
        covering.is_covering,
        if covering.is_covering { format!(" (degree {})", covering.degree) } else { String::new() }
    );
    if let Some(w) = &witness {
        let _ = writeln!(text, "fold {w}");
    }
    if let Some(w) = &covering.witness {
        let _ = writeln!(text, "not a covering: {w}");
    }
    let json = json!({
        "valid": true,
        "immersion": immersion,
        "immersion_witness": witness,
        "covering": covering.is_covering,
        "degree": covering.degree,
        "covering_witness": covering.witness,
        "inclusion": inclusion,
    });
    Ok(Output::ok(text, json))
}

