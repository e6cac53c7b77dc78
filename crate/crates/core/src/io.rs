//! JSON documents: product specs, words, hyperplanes, automorphisms,
//! conjugating data, decomposition results and ball dumps, plus DOT output.
//!
//! Vertices are referred to by name and group elements by token (an element
//! name for table groups, an integer otherwise). Every document this module
//! emits parses back to an equal value.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::automorphisms::{
    Automorphism, ConjugatingData, DecompositionResult, FromImages, Generator, PartialConjugation, VertexImage,
};
use crate::davis::{AxisSegment, CrossingReport, DavisBall, DavisCube, DavisEdge, DavisVertex};
use crate::error::{Error, Result};
use crate::graph::{Girth, GraphClassification, SilWitness, SimplicialGraph, Vertex, VertexSet};
use crate::groups::{FiniteTable, GroupElement, GroupIso, IsoMap, VertexGroup};
use crate::qm::{Hyperplane, QmBall, QmEdge, TransversalityGraph};
use crate::words::{GraphProduct, NormalForm, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupDoc {
    Cyclic { order: u32 },
    Int,
    /// Table entries are element names or indices into `elements`.
    Table { elements: Vec<String>, table: Vec<Vec<Value>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub graph: GraphDoc,
    pub groups: BTreeMap<String, GroupDoc>,
    /// Overrides the vertex order used for normal forms.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
}

fn doc_err(ctx: &str, msg: impl std::fmt::Display) -> Error {
    Error::Document(format!("{ctx}: {msg}"))
}

fn as_object<'a>(v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| doc_err(ctx, "expected an object"))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| doc_err(ctx, "expected an array"))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str, ctx: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| doc_err(ctx, format!("missing key {key:?}")))
}

fn as_usize(v: &Value, ctx: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| doc_err(ctx, "expected a non-negative integer"))
}

fn name_of(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

// ---------------------------------------------------------------- graphs

pub fn graph_from_doc(doc: &GraphDoc) -> Result<SimplicialGraph> {
    SimplicialGraph::new(&doc.vertices, &doc.edges)
}

pub fn graph_to_doc(graph: &SimplicialGraph) -> GraphDoc {
    GraphDoc {
        vertices: graph.names().to_vec(),
        edges: graph
            .edges()
            .into_iter()
            .map(|(a, b)| (graph.name(a).to_string(), graph.name(b).to_string()))
            .collect(),
    }
}

pub fn parse_graph(v: &Value) -> Result<SimplicialGraph> {
    let doc: GraphDoc = serde_json::from_value(v.clone()).map_err(|e| doc_err("graph", e))?;
    graph_from_doc(&doc)
}

fn group_from_doc(vertex: &str, doc: &GroupDoc) -> Result<VertexGroup> {
    let bad = |reason: String| Error::InvalidGroup { vertex: vertex.to_string(), reason };
    match doc {
        GroupDoc::Cyclic { order } => VertexGroup::cyclic(*order).map_err(|e| bad(e.to_string())),
        GroupDoc::Int => Ok(VertexGroup::Infinite),
        GroupDoc::Table { elements, table } => {
            let mut rows = Vec::with_capacity(table.len());
            for (i, row) in table.iter().enumerate() {
                let mut out = Vec::with_capacity(row.len());
                for (j, entry) in row.iter().enumerate() {
                    let idx = match entry {
                        Value::Number(n) => n.as_u64().map(|x| x as usize),
                        Value::String(s) => elements.iter().position(|e| e == s),
                        _ => None,
                    };
                    out.push(idx.ok_or_else(|| bad(format!("table[{i}][{j}] = {entry} is not an element")))?);
                }
                rows.push(out);
            }
            FiniteTable::new(elements.clone(), rows).map(VertexGroup::Table).map_err(bad)
        }
    }
}

fn group_to_doc(group: &VertexGroup) -> GroupDoc {
    match group {
        VertexGroup::Cyclic { order } => GroupDoc::Cyclic { order: *order },
        VertexGroup::Infinite => GroupDoc::Int,
        VertexGroup::Table(t) => GroupDoc::Table {
            elements: t.names().to_vec(),
            table: t.table().iter().map(|row| row.iter().map(|&x| Value::from(t.names()[x].clone())).collect()).collect(),
        },
    }
}

pub fn product_from_spec(spec: &ProductSpec) -> Result<GraphProduct> {
    let mut graph_doc = spec.graph.clone();
    if let Some(order) = &spec.order {
        let mut sorted = order.clone();
        sorted.sort();
        let mut declared = graph_doc.vertices.clone();
        declared.sort();
        if sorted != declared {
            return Err(doc_err("order", "must be a permutation of the graph's vertices"));
        }
        graph_doc.vertices = order.clone();
    }
    let graph = graph_from_doc(&graph_doc)?;
    if let Some(extra) = spec.groups.keys().find(|k| graph.vertex(k).is_err()) {
        return Err(doc_err(&format!("groups.{extra:?}"), "not a vertex of the graph"));
    }
    let groups = graph
        .names()
        .iter()
        .map(|name| match spec.groups.get(name) {
            Some(doc) => group_from_doc(name, doc),
            None => Err(doc_err("groups", format!("missing group for vertex {name:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    GraphProduct::new(graph, groups)
}

pub fn product_to_spec(gp: &GraphProduct) -> ProductSpec {
    let graph = gp.graph();
    ProductSpec {
        graph: graph_to_doc(graph),
        groups: graph.vertices().map(|v| (graph.name(v).to_string(), group_to_doc(gp.group(v)))).collect(),
        order: None,
    }
}

pub fn parse_product(v: &Value) -> Result<GraphProduct> {
    let spec: ProductSpec = serde_json::from_value(v.clone()).map_err(|e| doc_err("spec", e))?;
    product_from_spec(&spec)
}

// ---------------------------------------------------------------- elements

fn vertex_from(graph: &SimplicialGraph, v: &Value, ctx: &str) -> Result<Vertex> {
    let name = name_of(v).ok_or_else(|| doc_err(ctx, "expected a vertex name"))?;
    graph.vertex(&name).map_err(|_| doc_err(ctx, format!("unknown vertex {name:?}")))
}

fn vertex_json(graph: &SimplicialGraph, v: Vertex) -> Value {
    Value::from(graph.name(v))
}

fn set_from(graph: &SimplicialGraph, v: &Value, ctx: &str) -> Result<VertexSet> {
    as_array(v, ctx)?
        .iter()
        .enumerate()
        .map(|(i, x)| vertex_from(graph, x, &format!("{ctx}[{i}]")))
        .collect()
}

fn set_json(graph: &SimplicialGraph, s: &VertexSet) -> Value {
    Value::from(graph.set_names(s))
}

fn element_from(gp: &GraphProduct, v: Vertex, token: &Value, ctx: &str) -> Result<i64> {
    gp.group(v).parse_token(token).map_err(|e| doc_err(ctx, e))
}

fn key_token(gp: &GraphProduct, v: Vertex, key: &str, ctx: &str) -> Result<i64> {
    element_from(gp, v, &Value::String(key.to_string()), ctx)
}

fn token_key(group: &VertexGroup, a: i64) -> String {
    name_of(&group.token(a)).expect("tokens are strings or numbers")
}

pub fn syllable_from_json(gp: &GraphProduct, v: &Value, ctx: &str) -> Result<GroupElement> {
    let pair = as_array(v, ctx)?;
    if pair.len() != 2 {
        return Err(doc_err(ctx, "a syllable is a [vertex, element] pair"));
    }
    let vertex = vertex_from(gp.graph(), &pair[0], ctx)?;
    let value = element_from(gp, vertex, &pair[1], ctx)?;
    gp.syllable(vertex, value).map_err(|e| doc_err(ctx, e))
}

pub fn syllable_to_json(gp: &GraphProduct, s: GroupElement) -> Value {
    json!([gp.graph().name(s.vertex), gp.group(s.vertex).token(s.value)])
}

pub fn word_from_json(gp: &GraphProduct, v: &Value) -> Result<Word> {
    word_at(gp, v, "word")
}

fn word_at(gp: &GraphProduct, v: &Value, ctx: &str) -> Result<Word> {
    let syllables = as_array(v, ctx)?
        .iter()
        .enumerate()
        .map(|(i, s)| syllable_from_json(gp, s, &format!("{ctx}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    gp.word(syllables)
}

pub fn word_to_json(gp: &GraphProduct, w: &[GroupElement]) -> Value {
    Value::Array(w.iter().map(|&s| syllable_to_json(gp, s)).collect())
}

pub fn hyperplane_to_json(gp: &GraphProduct, j: &Hyperplane) -> Value {
    json!({"label": gp.graph().name(j.label), "base": word_to_json(gp, &j.base)})
}

pub fn hyperplane_from_json(gp: &GraphProduct, v: &Value) -> Result<Hyperplane> {
    hyperplane_at(gp, v, "hyperplane")
}

fn hyperplane_at(gp: &GraphProduct, v: &Value, ctx: &str) -> Result<Hyperplane> {
    let o = as_object(v, ctx)?;
    let label = vertex_from(gp.graph(), field(o, "label", ctx)?, &format!("{ctx}.label"))?;
    let base = word_at(gp, field(o, "base", ctx)?, &format!("{ctx}.base"))?;
    // re-canonicalize so that any coset representative is accepted
    gp.hyperplane(label, &base)
}

// ---------------------------------------------------------------- isomorphisms

/// Reads a map of element tokens `{source: target}` as an isomorphism
/// `G_u → H_w`. For finite groups the assignment is closed under products,
/// so listing images of generators is enough. Absent maps default to the
/// natural identification of equal groups.
fn iso_from(
    src: &GraphProduct,
    u: Vertex,
    tgt: &GraphProduct,
    w: Vertex,
    v: Option<&Value>,
    ctx: &str,
) -> Result<GroupIso> {
    let (g, h) = (src.group(u), tgt.group(w));
    let map = match v {
        None | Some(Value::Null) => {
            if g != h {
                return Err(doc_err(ctx, "groups differ, so an explicit map is required"));
            }
            GroupIso::identity(u, g).map
        }
        Some(v) => {
            let mut seeds = Vec::new();
            for (key, val) in as_object(v, ctx)? {
                let c = format!("{ctx}.{key:?}");
                seeds.push((key_token(src, u, key, &c)?, element_from(tgt, w, val, &c)?));
            }
            match g.order() {
                Some(_) => IsoMap::Table(g.extend_homomorphism(h, &seeds).map_err(|e| doc_err(ctx, e))?),
                None => match seeds.iter().find(|(a, _)| *a != 0) {
                    Some(&(a, b)) if b % a == 0 => IsoMap::Exponent(b / a),
                    _ => return Err(doc_err(ctx, "give the image of a generator")),
                },
            }
        }
    };
    GroupIso::new(u, g, w, h, map).map_err(|e| doc_err(ctx, e))
}

fn iso_to_json(src: &GraphProduct, tgt: &GraphProduct, iso: &GroupIso) -> Value {
    let (g, h) = (src.group(iso.source), tgt.group(iso.target));
    let mut out = Map::new();
    match &iso.map {
        IsoMap::Table(t) => {
            for (a, &b) in t.iter().enumerate().skip(1) {
                out.insert(token_key(g, a as i64), h.token(b));
            }
        }
        IsoMap::Exponent(e) => {
            out.insert("1".into(), Value::from(*e));
        }
    }
    Value::Object(out)
}

// ---------------------------------------------------------------- automorphisms

fn partial_to_json(gp: &GraphProduct, p: &PartialConjugation) -> Value {
    json!({
        "kind": "partial",
        "u": gp.graph().name(p.u),
        "component": set_json(gp.graph(), &p.component),
        "h": gp.group(p.u).token(p.h.value),
    })
}

fn partial_from(gp: &GraphProduct, o: &Map<String, Value>, ctx: &str) -> Result<PartialConjugation> {
    let u = vertex_from(gp.graph(), field(o, "u", ctx)?, &format!("{ctx}.u"))?;
    let component = set_from(gp.graph(), field(o, "component", ctx)?, &format!("{ctx}.component"))?;
    let h = element_from(gp, u, field(o, "h", ctx)?, &format!("{ctx}.h"))?;
    gp.partial_conjugation(u, component, GroupElement::new(u, h))
}

pub fn generator_to_json(gp: &GraphProduct, g: &Generator) -> Value {
    let graph = gp.graph();
    match g {
        Generator::Inner(w) => json!({"kind": "inner", "g": word_to_json(gp, w)}),
        Generator::Partial(p) => partial_to_json(gp, p),
        Generator::Local(l) => {
            let sigma: Map<String, Value> =
                graph.vertices().map(|v| (graph.name(v).to_string(), vertex_json(graph, l.sigma[v.0]))).collect();
            let phis: Map<String, Value> =
                graph.vertices().map(|v| (graph.name(v).to_string(), iso_to_json(gp, gp, &l.phis[v.0]))).collect();
            json!({"kind": "local", "sigma": sigma, "phis": phis})
        }
    }
}

pub fn generator_from_json(gp: &GraphProduct, v: &Value, ctx: &str) -> Result<Generator> {
    let o = as_object(v, ctx)?;
    let graph = gp.graph();
    match field(o, "kind", ctx)?.as_str() {
        Some("inner") => Ok(Generator::Inner(gp.reduce(&word_at(gp, field(o, "g", ctx)?, &format!("{ctx}.g"))?))),
        Some("partial") => Ok(Generator::Partial(partial_from(gp, o, ctx)?)),
        Some("local") => {
            let sig = as_object(field(o, "sigma", ctx)?, &format!("{ctx}.sigma"))?;
            let phis = match o.get("phis") {
                Some(p) => Some(as_object(p, &format!("{ctx}.phis"))?),
                None => None,
            };
            let mut sigma = Vec::with_capacity(graph.len());
            let mut maps = Vec::with_capacity(graph.len());
            for u in graph.vertices() {
                let name = graph.name(u);
                let c = format!("{ctx}.sigma.{name:?}");
                let w = vertex_from(graph, sig.get(name).ok_or_else(|| doc_err(&c, "missing"))?, &c)?;
                let phi = phis.and_then(|p| p.get(name));
                maps.push(iso_from(gp, u, gp, w, phi, &format!("{ctx}.phis.{name:?}"))?.map);
                sigma.push(w);
            }
            Ok(Generator::Local(gp.local_automorphism(sigma, maps)?))
        }
        _ => Err(doc_err(&format!("{ctx}.kind"), "expected \"inner\", \"partial\" or \"local\"")),
    }
}

/// Generators are listed in application order: the first acts first.
pub fn automorphism_to_json(gp: &GraphProduct, phi: &Automorphism) -> Value {
    Value::Array(phi.generators.iter().map(|g| generator_to_json(gp, g)).collect())
}

pub fn automorphism_from_json(gp: &GraphProduct, v: &Value) -> Result<Automorphism> {
    let generators = as_array(v, "automorphism")?
        .iter()
        .enumerate()
        .map(|(i, g)| generator_from_json(gp, g, &format!("automorphism[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Automorphism { generators })
}

pub fn conjugating_data_to_json(src: &GraphProduct, tgt: &GraphProduct, d: &ConjugatingData) -> Value {
    let graph = src.graph();
    let map: Map<String, Value> = d
        .images
        .iter()
        .enumerate()
        .map(|(i, im)| {
            let entry = json!({
                "g": word_to_json(tgt, &im.conjugator),
                "w": tgt.graph().name(im.target),
                "psi": iso_to_json(src, tgt, &im.iso),
            });
            (graph.name(Vertex(i)).to_string(), entry)
        })
        .collect();
    json!({ "map": map })
}

pub fn conjugating_data_from_json(src: &GraphProduct, tgt: &GraphProduct, v: &Value) -> Result<ConjugatingData> {
    let top = as_object(v, "data")?;
    let map = as_object(field(top, "map", "data")?, "data.map")?;
    if let Some(extra) = map.keys().find(|k| src.graph().vertex(k).is_err()) {
        return Err(doc_err(&format!("data.map.{extra:?}"), "not a source vertex"));
    }
    let mut images = Vec::with_capacity(src.graph().len());
    for u in src.graph().vertices() {
        let name = src.graph().name(u);
        let ctx = format!("data.map.{name:?}");
        let o = as_object(map.get(name).ok_or_else(|| doc_err(&ctx, "missing"))?, &ctx)?;
        let g = match o.get("g") {
            Some(g) => tgt.reduce(&word_at(tgt, g, &format!("{ctx}.g"))?),
            None => NormalForm::identity(),
        };
        let w = vertex_from(tgt.graph(), field(o, "w", &ctx)?, &format!("{ctx}.w"))?;
        let iso = iso_from(src, u, tgt, w, o.get("psi"), &format!("{ctx}.psi"))?;
        images.push(VertexImage { conjugator: g, target: w, iso });
    }
    let d = ConjugatingData { images };
    d.validate(src, tgt)?;
    Ok(d)
}

/// `{u: {element: word}}`: images of source elements in the target.
pub fn images_from_json(src: &GraphProduct, tgt: &GraphProduct, v: &Value) -> Result<Vec<Vec<(i64, NormalForm)>>> {
    let top = as_object(v, "images")?;
    if let Some(extra) = top.keys().find(|k| src.graph().vertex(k).is_err()) {
        return Err(doc_err(&format!("images.{extra:?}"), "not a source vertex"));
    }
    src.graph()
        .vertices()
        .map(|u| {
            let name = src.graph().name(u);
            let ctx = format!("images.{name:?}");
            let o = as_object(top.get(name).ok_or_else(|| doc_err(&ctx, "missing"))?, &ctx)?;
            o.iter()
                .map(|(k, w)| {
                    let c = format!("{ctx}.{k:?}");
                    Ok((key_token(src, u, k, &c)?, tgt.reduce(&word_at(tgt, w, &c)?)))
                })
                .collect()
        })
        .collect()
}

pub fn from_images_to_json(src: &GraphProduct, tgt: &GraphProduct, r: &FromImages) -> Value {
    match r {
        FromImages::Conjugating(d) => json!({"conjugating": true, "data": conjugating_data_to_json(src, tgt, d)}),
        FromImages::NotConjugating { vertex, reason, core_length } => json!({
            "conjugating": false,
            "vertex": src.graph().name(*vertex),
            "reason": reason,
            "core_length": core_length,
        }),
    }
}

pub fn from_images_from_json(src: &GraphProduct, tgt: &GraphProduct, v: &Value) -> Result<FromImages> {
    let o = as_object(v, "result")?;
    match field(o, "conjugating", "result")?.as_bool() {
        Some(true) => Ok(FromImages::Conjugating(conjugating_data_from_json(src, tgt, field(o, "data", "result")?)?)),
        Some(false) => Ok(FromImages::NotConjugating {
            vertex: vertex_from(src.graph(), field(o, "vertex", "result")?, "result.vertex")?,
            reason: field(o, "reason", "result")?.as_str().unwrap_or_default().to_string(),
            core_length: o.get("core_length").and_then(Value::as_u64).map(|x| x as usize),
        }),
        None => Err(doc_err("result.conjugating", "expected a boolean")),
    }
}

pub fn decomposition_to_json(src: &GraphProduct, tgt: &GraphProduct, r: &DecompositionResult) -> Value {
    let graph = src.graph();
    let isometry: Map<String, Value> =
        graph.vertices().map(|u| (graph.name(u).to_string(), vertex_json(tgt.graph(), r.isometry[u.0]))).collect();
    let isos: Map<String, Value> =
        graph.vertices().map(|u| (graph.name(u).to_string(), iso_to_json(src, tgt, &r.vertex_isos[u.0]))).collect();
    json!({
        "partial_conjugations": r.partial_conjugations.iter().map(|p| partial_to_json(src, p)).collect::<Vec<_>>(),
        "isometry": isometry,
        "vertex_isos": isos,
        "complexity_log": r.complexity_log,
    })
}

pub fn decomposition_from_json(src: &GraphProduct, tgt: &GraphProduct, v: &Value) -> Result<DecompositionResult> {
    let ctx = "decomposition";
    let o = as_object(v, ctx)?;
    let partial_conjugations = as_array(field(o, "partial_conjugations", ctx)?, ctx)?
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let c = format!("{ctx}.partial_conjugations[{i}]");
            partial_from(src, as_object(p, &c)?, &c)
        })
        .collect::<Result<Vec<_>>>()?;
    let iso_doc = as_object(field(o, "isometry", ctx)?, "decomposition.isometry")?;
    let chi_doc = as_object(field(o, "vertex_isos", ctx)?, "decomposition.vertex_isos")?;
    let mut isometry = Vec::new();
    let mut vertex_isos = Vec::new();
    for u in src.graph().vertices() {
        let name = src.graph().name(u);
        let c = format!("{ctx}.isometry.{name:?}");
        let w = vertex_from(tgt.graph(), iso_doc.get(name).ok_or_else(|| doc_err(&c, "missing"))?, &c)?;
        vertex_isos.push(iso_from(src, u, tgt, w, chi_doc.get(name), &format!("{ctx}.vertex_isos.{name:?}"))?);
        isometry.push(w);
    }
    let complexity_log = as_array(field(o, "complexity_log", ctx)?, ctx)?
        .iter()
        .map(|x| as_usize(x, "decomposition.complexity_log"))
        .collect::<Result<Vec<_>>>()?;
    Ok(DecompositionResult { partial_conjugations, isometry, vertex_isos, complexity_log })
}

// ---------------------------------------------------------------- graph reports

pub fn classification_to_json(graph: &SimplicialGraph, c: &GraphClassification) -> Value {
    json!({
        "connected": c.connected,
        "girth": match c.girth {
            Girth::Finite(n) => Value::from(n),
            Girth::Infinite => Value::from("infinite"),
        },
        "min_valence": c.min_valence,
        "molecular": c.is_molecular,
        "atomic": c.is_atomic,
        "separating_stars": c.separating_stars.iter().map(|&v| graph.name(v)).collect::<Vec<_>>(),
    })
}

pub fn sil_to_json(graph: &SimplicialGraph, w: Option<&SilWitness>) -> Value {
    match w {
        None => json!({"sil": false}),
        Some(w) => json!({
            "sil": true,
            "u": graph.name(w.u),
            "v": graph.name(w.v),
            "component": set_json(graph, &w.component),
        }),
    }
}

pub fn sil_from_json(graph: &SimplicialGraph, v: &Value) -> Result<Option<SilWitness>> {
    let o = as_object(v, "sil")?;
    if !field(o, "sil", "sil")?.as_bool().unwrap_or(false) {
        return Ok(None);
    }
    Ok(Some(SilWitness {
        u: vertex_from(graph, field(o, "u", "sil")?, "sil.u")?,
        v: vertex_from(graph, field(o, "v", "sil")?, "sil.v")?,
        component: set_from(graph, field(o, "component", "sil")?, "sil.component")?,
    }))
}

// ---------------------------------------------------------------- quasi-median balls

pub fn qm_ball_to_json(gp: &GraphProduct, ball: &QmBall) -> Value {
    let edges: Vec<Value> = ball
        .edges
        .iter()
        .map(|e| {
            json!({
                "from": e.from,
                "to": e.to,
                "vertex": gp.graph().name(e.generator.vertex),
                "element": gp.group(e.generator.vertex).token(e.generator.value),
                "hyperplane": hyperplane_to_json(gp, &e.hyperplane),
            })
        })
        .collect();
    json!({
        "radius": ball.radius,
        "vertices": ball.vertices.iter().map(|g| word_to_json(gp, g)).collect::<Vec<_>>(),
        "edges": edges,
        "hyperplanes": ball.hyperplanes().iter().map(|j| hyperplane_to_json(gp, j)).collect::<Vec<_>>(),
    })
}

pub fn qm_ball_from_json(gp: &GraphProduct, v: &Value) -> Result<QmBall> {
    let ctx = "ball";
    let o = as_object(v, ctx)?;
    let radius = as_usize(field(o, "radius", ctx)?, "ball.radius")?;
    let vertices = as_array(field(o, "vertices", ctx)?, ctx)?
        .iter()
        .enumerate()
        .map(|(i, w)| Ok(gp.reduce(&word_at(gp, w, &format!("ball.vertices[{i}]"))?)))
        .collect::<Result<Vec<_>>>()?;
    let edges = as_array(field(o, "edges", ctx)?, ctx)?
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let c = format!("ball.edges[{i}]");
            let e = as_object(e, &c)?;
            let vx = vertex_from(gp.graph(), field(e, "vertex", &c)?, &c)?;
            let value = element_from(gp, vx, field(e, "element", &c)?, &c)?;
            let (from, to) = (as_usize(field(e, "from", &c)?, &c)?, as_usize(field(e, "to", &c)?, &c)?);
            if from >= vertices.len() || to >= vertices.len() {
                return Err(doc_err(&c, "endpoint out of range"));
            }
            Ok(QmEdge {
                from,
                to,
                generator: GroupElement::new(vx, value),
                hyperplane: hyperplane_at(gp, field(e, "hyperplane", &c)?, &format!("{c}.hyperplane"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QmBall::from_parts(radius, vertices, edges))
}

pub fn qm_ball_to_dot(gp: &GraphProduct, ball: &QmBall) -> String {
    let mut out = String::from("graph qm {\n");
    for (i, g) in ball.vertices.iter().enumerate() {
        let _ = writeln!(out, "  {i} [label=\"{}\"];", format_word(gp, g));
    }
    for e in &ball.edges {
        let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.from, e.to, gp.graph().name(e.generator.vertex));
    }
    out.push_str("}\n");
    out
}

/// Compact human-readable rendering such as `0^1 2^1`; `ε` for the identity.
pub fn format_word(gp: &GraphProduct, w: &[GroupElement]) -> String {
    if w.is_empty() {
        return "ε".into();
    }
    w.iter()
        .map(|s| format!("{}^{}", gp.graph().name(s.vertex), token_key(gp.group(s.vertex), s.value)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn transversality_graph_to_json(gp: &GraphProduct, t: &TransversalityGraph) -> Value {
    json!({
        "nodes": t.nodes.iter().map(|j| hyperplane_to_json(gp, j)).collect::<Vec<_>>(),
        "edges": t.edges,
        "induced_four_cycle": t.induced_four_cycle(),
    })
}

pub fn transversality_graph_from_json(gp: &GraphProduct, v: &Value) -> Result<TransversalityGraph> {
    let o = as_object(v, "transversality")?;
    let nodes = as_array(field(o, "nodes", "transversality")?, "transversality.nodes")?
        .iter()
        .enumerate()
        .map(|(i, j)| hyperplane_at(gp, j, &format!("transversality.nodes[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let edges: Vec<(usize, usize)> = serde_json::from_value(field(o, "edges", "transversality")?.clone())
        .map_err(|e| doc_err("transversality.edges", e))?;
    if edges.iter().any(|&(a, b)| a >= nodes.len() || b >= nodes.len()) {
        return Err(doc_err("transversality.edges", "node index out of range"));
    }
    Ok(TransversalityGraph { nodes, edges })
}

// ---------------------------------------------------------------- Davis balls

pub fn davis_vertex_to_json(gp: &GraphProduct, v: &DavisVertex) -> Value {
    json!({"rep": word_to_json(gp, &v.rep), "lambda": set_json(gp.graph(), &v.lambda)})
}

pub fn davis_vertex_from_json(gp: &GraphProduct, v: &Value, ctx: &str) -> Result<DavisVertex> {
    let o = as_object(v, ctx)?;
    let rep = word_at(gp, field(o, "rep", ctx)?, &format!("{ctx}.rep"))?;
    let lambda = set_from(gp.graph(), field(o, "lambda", ctx)?, &format!("{ctx}.lambda"))?;
    if !gp.graph().is_complete_set(&lambda) {
        return Err(doc_err(&format!("{ctx}.lambda"), "not a complete subgraph"));
    }
    Ok(gp.davis_vertex(&rep, &lambda))
}

pub fn davis_ball_to_json(gp: &GraphProduct, ball: &DavisBall) -> Value {
    let graph = gp.graph();
    json!({
        "radius": ball.radius,
        "vertices": ball.vertices.iter().map(|v| davis_vertex_to_json(gp, v)).collect::<Vec<_>>(),
        "edges": ball.edges.iter().map(|e| json!({"lower": e.lower, "upper": e.upper, "label": graph.name(e.label)})).collect::<Vec<_>>(),
        "squares": ball.squares().map(|c| c.vertices.clone()).collect::<Vec<_>>(),
        "cubes": ball.cubes.iter().map(|c| json!({
            "bottom": c.bottom,
            "top": set_json(graph, &c.top),
            "vertices": c.vertices,
        })).collect::<Vec<_>>(),
    })
}

pub fn davis_ball_from_json(gp: &GraphProduct, v: &Value) -> Result<DavisBall> {
    let ctx = "davis";
    let o = as_object(v, ctx)?;
    let radius = as_usize(field(o, "radius", ctx)?, "davis.radius")?;
    let vertices = as_array(field(o, "vertices", ctx)?, ctx)?
        .iter()
        .enumerate()
        .map(|(i, x)| davis_vertex_from_json(gp, x, &format!("davis.vertices[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let n = vertices.len();
    let index = |x: &Value, c: &str| -> Result<usize> {
        let i = as_usize(x, c)?;
        if i >= n {
            return Err(doc_err(c, "vertex index out of range"));
        }
        Ok(i)
    };
    let edges = as_array(field(o, "edges", ctx)?, ctx)?
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let c = format!("davis.edges[{i}]");
            let e = as_object(e, &c)?;
            Ok(DavisEdge {
                lower: index(field(e, "lower", &c)?, &c)?,
                upper: index(field(e, "upper", &c)?, &c)?,
                label: vertex_from(gp.graph(), field(e, "label", &c)?, &c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let cubes = as_array(field(o, "cubes", ctx)?, ctx)?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let c = format!("davis.cubes[{i}]");
            let x = as_object(x, &c)?;
            let vertices = as_array(field(x, "vertices", &c)?, &c)?
                .iter()
                .map(|y| index(y, &c))
                .collect::<Result<Vec<_>>>()?;
            if !vertices.len().is_power_of_two() || vertices.len() < 4 {
                return Err(doc_err(&c, "a cube has 2^k ≥ 4 vertices"));
            }
            Ok(DavisCube {
                bottom: index(field(x, "bottom", &c)?, &c)?,
                top: set_from(gp.graph(), field(x, "top", &c)?, &format!("{c}.top"))?,
                vertices,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DavisBall::from_parts(radius, vertices, edges, cubes))
}

pub fn davis_ball_to_dot(gp: &GraphProduct, ball: &DavisBall) -> String {
    let mut out = String::from("graph davis {\n");
    for (i, v) in ball.vertices.iter().enumerate() {
        let lambda = gp.graph().set_names(&v.lambda).join(",");
        let _ = writeln!(out, "  {i} [label=\"{}<{{{lambda}}}>\"];", format_word(gp, &v.rep));
    }
    for e in &ball.edges {
        let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.lower, e.upper, gp.graph().name(e.label));
    }
    out.push_str("}\n");
    out
}

pub fn crossing_report_to_json(r: &CrossingReport) -> Value {
    json!({
        "holds": r.holds(),
        "davis_hyperplanes": r.davis_hyperplanes,
        "parallelism_classes": r.parallelism_classes,
        "well_defined": r.well_defined,
        "matches_qm_keys": r.matches_qm_keys,
        "crossing_pairs_checked": r.crossing_pairs_checked,
        "crossing_pairs_skipped": r.crossing_pairs_skipped,
        "crossing_matches": r.crossing_matches,
    })
}

pub fn axis_segment_to_json(gp: &GraphProduct, a: &AxisSegment) -> Value {
    json!({
        "geodesic": a.geodesic,
        "edges": a.edges.iter().map(|(x, y, v)| json!({
            "from": davis_vertex_to_json(gp, x),
            "to": davis_vertex_to_json(gp, y),
            "label": gp.graph().name(*v),
        })).collect::<Vec<_>>(),
    })
}

/// Reads a document argument: inline JSON when it starts with `[` or `{`,
/// otherwise a path to a JSON file.
pub fn read_document(arg: &str) -> Result<Value> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)?
    };
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5_spec() -> Value {
        json!({
            "graph": {"vertices": ["0","1","2","3","4"], "edges": [["0","1"],["1","2"],["2","3"],["3","4"],["4","0"]]},
            "groups": {"0": {"type":"cyclic","order":2}, "1": {"type":"cyclic","order":2}, "2": {"type":"cyclic","order":2},
                       "3": {"type":"cyclic","order":2}, "4": {"type":"cyclic","order":2}},
        })
    }

    fn s3_group() -> GroupDoc {
        // S3 = ⟨r, s⟩ with elements e, r, r², s, sr, sr²
        let names = ["e", "r", "rr", "s", "sr", "srr"];
        let mul = |a: usize, b: usize| -> usize {
            // a = s^i r^j encoded as 3i + j
            let (i1, j1) = (a / 3, a % 3);
            let (i2, j2) = (b / 3, b % 3);
            let j = if i2 == 1 { (3 - j1) % 3 + j2 } else { j1 + j2 } % 3;
            3 * ((i1 + i2) % 2) + j
        };
        GroupDoc::Table {
            elements: names.iter().map(|s| s.to_string()).collect(),
            table: (0..6).map(|a| (0..6).map(|b| Value::from(names[mul(a, b)])).collect()).collect(),
        }
    }

    #[test]
    fn spec_round_trip() {
        let gp = parse_product(&c5_spec()).unwrap();
        assert!(gp.is_racg());
        let again = product_from_spec(&product_to_spec(&gp)).unwrap();
        assert_eq!(again.graph(), gp.graph());
        assert_eq!(again.groups(), gp.groups());
    }

    #[test]
    fn table_groups_and_tokens() {
        let spec = ProductSpec {
            graph: GraphDoc { vertices: vec!["a".into(), "b".into()], edges: vec![] },
            groups: [("a".to_string(), s3_group()), ("b".to_string(), GroupDoc::Int)].into(),
            order: None,
        };
        let gp = product_from_spec(&spec).unwrap();
        let w = word_from_json(&gp, &json!([["a", "r"], ["b", -3], ["a", "s"]])).unwrap();
        let nf = gp.reduce(&w);
        assert_eq!(word_from_json(&gp, &word_to_json(&gp, &nf)).unwrap().syllables(), nf.syllables());
        assert!(word_from_json(&gp, &json!([["a", "e"]])).is_err());
        assert!(word_from_json(&gp, &json!([["b", 0]])).is_err());
    }

    #[test]
    fn diagnostics_name_the_key() {
        let mut spec = c5_spec();
        spec["groups"].as_object_mut().unwrap().remove("3");
        let msg = parse_product(&spec).unwrap_err().to_string();
        assert!(msg.contains("\"3\""), "{msg}");
        let mut spec = c5_spec();
        spec["groups"]["9"] = json!({"type": "int"});
        assert!(parse_product(&spec).unwrap_err().to_string().contains("\"9\""));
        let gp = parse_product(&c5_spec()).unwrap();
        let msg = word_from_json(&gp, &json!([["0", 1], ["7", 1]])).unwrap_err().to_string();
        assert!(msg.contains("word[1]") && msg.contains("\"7\""), "{msg}");
        let bad_group = json!({"graph": {"vertices": ["0"]}, "groups": {"0": {"type": "cyclic", "order": 1}}});
        assert!(parse_product(&bad_group).unwrap_err().to_string().contains("\"0\""));
    }

    #[test]
    fn order_override() {
        let mut spec = c5_spec();
        spec["order"] = json!(["4", "3", "2", "1", "0"]);
        let gp = parse_product(&spec).unwrap();
        assert_eq!(gp.graph().name(Vertex(0)), "4");
        spec["order"] = json!(["4", "3"]);
        assert!(parse_product(&spec).is_err());
    }

    #[test]
    fn automorphism_and_data_round_trip() {
        let gp = parse_product(&c5_spec()).unwrap();
        let doc = json!([
            {"kind": "inner", "g": [["0", 1], ["2", 1]]},
            {"kind": "partial", "u": "0", "component": ["2", "3"], "h": 1},
            {"kind": "local", "sigma": {"0":"1","1":"2","2":"3","3":"4","4":"0"}},
        ]);
        let phi = automorphism_from_json(&gp, &doc).unwrap();
        assert_eq!(phi.generators.len(), 3);
        let back = automorphism_from_json(&gp, &automorphism_to_json(&gp, &phi)).unwrap();
        assert_eq!(back, phi);
        let d = gp.to_conjugating_data(&phi);
        let dj = conjugating_data_to_json(&gp, &gp, &d);
        assert_eq!(conjugating_data_from_json(&gp, &gp, &dj).unwrap(), d);
        let bad = json!([{"kind": "partial", "u": "0", "component": ["1"], "h": 1}]);
        assert!(automorphism_from_json(&gp, &bad).is_err());
    }

    #[test]
    fn decomposition_round_trip() {
        let gp = parse_product(&c5_spec()).unwrap();
        let d = ConjugatingData::inner(&gp, &gp.gens_word(&[0]));
        let r = gp.decompose(&gp, &d).unwrap();
        let j = decomposition_to_json(&gp, &gp, &r);
        assert_eq!(j["complexity_log"], json!([2, 0]));
        assert_eq!(decomposition_from_json(&gp, &gp, &j).unwrap(), r);
    }

    #[test]
    fn ball_dumps_round_trip() {
        let gp = parse_product(&c5_spec()).unwrap();
        let ball = gp.build_ball(2).unwrap();
        let j = qm_ball_to_json(&gp, &ball);
        let back = qm_ball_from_json(&gp, &j).unwrap();
        assert_eq!(back.vertices, ball.vertices);
        assert_eq!(back.edges, ball.edges);
        let t = gp.transversality_graph(&ball);
        let tj = transversality_graph_to_json(&gp, &t);
        assert_eq!(transversality_graph_from_json(&gp, &tj).unwrap(), t);
        let davis = gp.build_davis_ball(1).unwrap();
        let dj = davis_ball_to_json(&gp, &davis);
        assert_eq!(davis_ball_to_json(&gp, &davis_ball_from_json(&gp, &dj).unwrap()), dj);
        assert!(qm_ball_to_dot(&gp, &ball).starts_with("graph qm {"));
        assert!(davis_ball_to_dot(&gp, &davis).contains("ε<{}>"));
    }

    #[test]
    fn images_documents() {
        let gp = parse_product(&c5_spec()).unwrap();
        let doc = json!({"0": {"1": [["0", 1]]}, "1": {"1": [["1", 1]]}, "2": {"1": [["0",1],["2",1],["0",1]]},
                         "3": {"1": [["0",1],["3",1],["0",1]]}, "4": {"1": [["4", 1]]}});
        let imgs = images_from_json(&gp, &gp, &doc).unwrap();
        let r = gp.conjugating_data_from_images(&gp, &imgs).unwrap();
        let j = from_images_to_json(&gp, &gp, &r);
        assert_eq!(j["conjugating"], json!(true));
        assert_eq!(from_images_from_json(&gp, &gp, &j).unwrap(), r);
        let missing = json!({"0": {"1": [["0", 1]]}});
        assert!(images_from_json(&gp, &gp, &missing).unwrap_err().to_string().contains("\"1\""));
    }

    #[test]
    fn inline_or_file_documents() {
        assert_eq!(read_document("[1, 2]").unwrap(), json!([1, 2]));
        assert!(read_document("/nonexistent/file.json").is_err());
    }
}
