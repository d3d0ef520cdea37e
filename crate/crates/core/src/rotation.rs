//! Rotation frameworks: a plane embedding of every link graph, edge colours from
//! comparing rotators, flips, sparsity, face parity, junkify and evenness.
//!
//! The rotator at an edge `e` of the complex, seen from an endpoint `v`, is the cyclic
//! sequence of faces (link edges) around the link vertex `e` in the embedding of `L(v)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::DirectedComplex;
use crate::graph::Graph;
use crate::limits::Limits;
use crate::locality::{g_v_at, LocalityError};
use crate::planar::{
    cyclic_eq, embedding_with_prescribed_dual, reflect, sides_by_edge, trace_faces, trace_with_labels, Dart,
    PlanarError, PlaneEmbedding, RotationSystem,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("the faces at edge {0:?} do not form a cycle of the dual graph")]
    FacesAtEdgeNotCycle(String),
    #[error("no plane embedding of the link at {vertex:?} has the prescribed dual: {cause}")]
    PrescribedDualFailure { vertex: String, cause: PlanarError },
    #[error("rotators at edge {0:?} neither agree nor are reverse")]
    CompatibilityViolation(String),
    #[error("hypothesis failure: {0}")]
    HypothesisFailure(String),
    #[error("face {0:?} has an edge of face-degree below three")]
    DegenerateDegrees(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown face {0:?}")]
    UnknownFace(String),
    #[error("host complexes do not match: {0}")]
    HostMismatch(String),
    #[error(transparent)]
    Locality(#[from] LocalityError),
    #[error(transparent)]
    Planar(#[from] PlanarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Colour {
    Green,
    Red,
    /// Face-degree at most two: the rotators are their own reversal.
    DegenerateGreen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationFramework {
    complex: DirectedComplex,
    embeddings: Vec<PlaneEmbedding>,
    reflected: Vec<bool>,
}

impl RotationFramework {
    /// Assembles a framework from per-vertex embeddings of the link graphs; the
    /// embeddings must be on exactly the link graphs of `complex`.
    pub fn from_embeddings(
        complex: DirectedComplex,
        embeddings: Vec<PlaneEmbedding>,
        reflected: Vec<bool>,
    ) -> Result<Self, RotationError> {
        if embeddings.len() != complex.vertex_count() || reflected.len() != complex.vertex_count() {
            return Err(RotationError::HostMismatch("one embedding per vertex expected".into()));
        }
        for (v, pe) in embeddings.iter().enumerate() {
            if !pe.graph.same_labelled(&complex.link_graph_at(v).graph) {
                return Err(RotationError::HostMismatch(format!(
                    "embedding at {:?} is not on the link graph",
                    complex.vertex_label(v)
                )));
            }
        }
        Ok(RotationFramework {
            complex,
            embeddings,
            reflected,
        })
    }

    /// Builds a framework from rotators given, per vertex, as a map from link vertex
    /// (complex edge id) to the cyclic sequence of face keys around it.
    pub fn from_rotators(
        complex: DirectedComplex,
        rotators: &[BTreeMap<String, Vec<String>>],
        reflected: Vec<bool>,
    ) -> Result<Self, RotationError> {
        if rotators.len() != complex.vertex_count() {
            return Err(RotationError::HostMismatch(
                "one rotator table per vertex expected".into(),
            ));
        }
        let mut embeddings = Vec::with_capacity(rotators.len());
        for (v, table) in rotators.iter().enumerate() {
            let link = complex.link_graph_at(v).graph;
            let mut orders = Vec::with_capacity(link.vertex_count());
            for x in 0..link.vertex_count() {
                let seq = table
                    .get(link.vertex_label(x))
                    .ok_or_else(|| PlanarError::BadRotator(link.vertex_label(x).to_string()))?;
                let order = seq
                    .iter()
                    .map(|key| {
                        link.edge_index(key)
                            .ok_or_else(|| PlanarError::UnknownEdge(key.clone()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                orders.push(order);
            }
            if table.len() != link.vertex_count() {
                return Err(PlanarError::BadRotator(format!("extra rotators at {:?}", complex.vertex_label(v))).into());
            }
            let rs = RotationSystem::from_edge_orders(&link, &orders)?;
            embeddings.push(trace_faces(&link, &rs)?);
        }
        Self::from_embeddings(complex, embeddings, reflected)
    }

    pub fn complex(&self) -> &DirectedComplex {
        &self.complex
    }

    pub fn embedding(&self, v: usize) -> &PlaneEmbedding {
        &self.embeddings[v]
    }

    pub fn embeddings(&self) -> &[PlaneEmbedding] {
        &self.embeddings
    }

    pub fn reflected(&self, v: usize) -> bool {
        self.reflected[v]
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize, RotationError> {
        self.complex
            .vertex_index(v)
            .map_err(|_| RotationError::UnknownVertex(v.to_string()))
    }

    /// Face keys around complex edge `e` in the embedding of the link at `v`.
    pub fn rotator(&self, v: usize, e: usize) -> Vec<String> {
        let pe = &self.embeddings[v];
        let x = pe
            .graph
            .vertex_index(&self.complex.edge(e).id)
            .expect("edge at v is a link vertex");
        pe.rotator_labels(x)
    }

    /// All rotators at `v`, keyed by link vertex.
    pub fn rotator_table(&self, v: usize) -> BTreeMap<String, Vec<String>> {
        let pe = &self.embeddings[v];
        (0..pe.graph.vertex_count())
            .map(|x| (pe.graph.vertex_label(x).to_string(), pe.rotator_labels(x)))
            .collect()
    }

    pub fn edge_colour(&self, e: usize) -> Result<Colour, RotationError> {
        let edge = self.complex.edge(e);
        let a = self.rotator(edge.tail, e);
        let b = self.rotator(edge.head, e);
        if a.len() <= 2 {
            return Ok(Colour::DegenerateGreen);
        }
        let b_rev: Vec<String> = b.iter().rev().cloned().collect();
        if cyclic_eq(&a, &b_rev) {
            Ok(Colour::Green)
        } else if cyclic_eq(&a, &b) {
            Ok(Colour::Red)
        } else {
            Err(RotationError::CompatibilityViolation(edge.id.clone()))
        }
    }

    pub fn colour_edges(&self) -> Result<Vec<Colour>, RotationError> {
        (0..self.complex.edge_count()).map(|e| self.edge_colour(e)).collect()
    }

    /// Mirror image of the embedding at one vertex.
    pub fn flip(&self, v: &str) -> Result<RotationFramework, RotationError> {
        let vi = self.vertex_index(v)?;
        Ok(self.flip_at(vi))
    }

    pub fn flip_at(&self, v: usize) -> RotationFramework {
        let mut out = self.clone();
        out.embeddings[v] = reflect(&self.embeddings[v]);
        out.reflected[v] = !out.reflected[v];
        out
    }

    pub fn face_parity(&self, f: usize) -> Result<Parity, RotationError> {
        let face = self.complex.face(f);
        let degrees = self.complex.face_degrees();
        if face.edges.iter().any(|&e| degrees[e] < 3) {
            return Err(RotationError::DegenerateDegrees(face.key()));
        }
        let mut red = 0;
        for &e in &face.edges {
            if self.edge_colour(e)? == Colour::Red {
                red += 1;
            }
        }
        Ok(if red % 2 == 0 { Parity::Even } else { Parity::Odd })
    }
}

pub fn construct_rotation_framework(
    c: &DirectedComplex,
    g: &Graph,
    limits: &Limits,
) -> Result<RotationFramework, RotationError> {
    check_face_labels(c, g)?;
    let mut embeddings = Vec::with_capacity(c.vertex_count());
    for v in 0..c.vertex_count() {
        let link = c.link_graph_at(v);
        let gv = g_v_at(g, c, v, false)?;
        let pe = embedding_with_prescribed_dual(&link.graph, &gv, limits).map_err(|cause| {
            RotationError::PrescribedDualFailure {
                vertex: link.host_label.clone(),
                cause,
            }
        })?;
        embeddings.push(pe);
    }
    for e in 0..c.edge_count() {
        let set: Vec<usize> = c
            .faces_at_edge(e)
            .into_iter()
            .map(|f| g.edge_index(&c.face(f).key()).expect("labels checked"))
            .collect();
        if !g.edge_set_is_cycle(&set) {
            return Err(RotationError::FacesAtEdgeNotCycle(c.edge(e).id.clone()));
        }
    }
    let s = RotationFramework::from_embeddings(c.clone(), embeddings, vec![false; c.vertex_count()])?;
    s.colour_edges()?;
    Ok(s)
}

fn check_face_labels(c: &DirectedComplex, g: &Graph) -> Result<(), RotationError> {
    let faces: BTreeSet<String> = c.face_keys().into_iter().collect();
    let edges: BTreeSet<String> = g.edge_labels().into_iter().collect();
    if faces != edges || g.edge_count() != c.face_count() {
        return Err(RotationError::HypothesisFailure(
            "the dual graph's edges are not the faces of the complex".into(),
        ));
    }
    Ok(())
}

/// Whether every link embedding has dual `G_v`: the two sides of each link edge are the
/// two ends of the corresponding edge of `g`, as face labels.
pub fn is_induced_by(s: &RotationFramework, g: &Graph) -> bool {
    if check_face_labels(&s.complex, g).is_err() {
        return false;
    }
    s.embeddings.iter().all(|pe| {
        pe.genus == 0
            && sides_by_edge(pe).iter().all(|(key, (a, b))| {
                let e = g.edge(g.edge_index(key).expect("labels checked"));
                let (u, v) = (g.vertex_label(e.u), g.vertex_label(e.v));
                (a == u && b == v) || (a == v && b == u)
            })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsityViolation {
    pub dual_vertex: String,
    pub edge: String,
    pub count: usize,
}

/// For every pair (vertex `b` of `g`, edge `e` of `c`), counts the faces at `e` whose
/// edge in `g` meets `b`; the pair is sparse when every count is 0 or 2.
pub fn sparsity_check(c: &DirectedComplex, g: &Graph) -> Result<Vec<SparsityViolation>, RotationError> {
    let mut ends = Vec::with_capacity(c.face_count());
    for f in c.faces() {
        let ge = g
            .edge_index(&f.key())
            .ok_or_else(|| RotationError::HypothesisFailure(format!("face {:?} has no dual edge", f.key())))?;
        let e = g.edge(ge);
        ends.push(if e.is_loop() { vec![e.u] } else { vec![e.u, e.v] });
    }
    let mut out = Vec::new();
    for e in 0..c.edge_count() {
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for f in c.faces_at_edge(e) {
            for &b in &ends[f] {
                *count.entry(b).or_default() += 1;
            }
        }
        for (b, n) in count {
            if n != 2 {
                out.push(SparsityViolation {
                    dual_vertex: g.vertex_label(b).to_string(),
                    edge: c.edge(e).id.clone(),
                    count: n,
                });
            }
        }
    }
    Ok(out)
}

pub fn face_parity_check(s: &RotationFramework, face: &str) -> Result<Parity, RotationError> {
    let f = s
        .complex
        .face_index(face)
        .map_err(|_| RotationError::UnknownFace(face.to_string()))?;
    s.face_parity(f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evenness {
    pub even: bool,
    /// Edge ids of a cycle with an odd number of red edges.
    pub witness: Option<Vec<String>>,
}

/// A fundamental cycle (of the BFS spanning forest) carrying an odd number of marked
/// edges, if any cycle does.
pub fn odd_cycle(g: &Graph, red: &[bool]) -> Option<Vec<usize>> {
    let tree = g.spanning_forest();
    for (e, &in_tree) in tree.iter().enumerate() {
        if in_tree {
            continue;
        }
        let ed = g.edge(e);
        let mut cycle = g.tree_path(&tree, ed.u, ed.v).expect("endpoints in one tree");
        cycle.push(e);
        if cycle.iter().filter(|&&x| red[x]).count() % 2 == 1 {
            return Some(cycle);
        }
    }
    None
}

pub fn is_even(s: &RotationFramework) -> Result<Evenness, RotationError> {
    let colours = s.colour_edges()?;
    let red: Vec<bool> = colours.iter().map(|&c| c == Colour::Red).collect();
    let skeleton = s.complex.one_skeleton();
    let witness = odd_cycle(&skeleton, &red).map(|cyc| cyc.into_iter().map(|e| s.complex.edge(e).id.clone()).collect());
    Ok(Evenness {
        even: witness.is_none(),
        witness,
    })
}

/// True iff `s_prime` restricts to `s` after deleting the faces it adds.
pub fn induces_check(s_prime: &RotationFramework, s: &RotationFramework) -> Result<bool, RotationError> {
    let (big, small) = (&s_prime.complex, &s.complex);
    if big.vertex_labels() != small.vertex_labels() {
        return Err(RotationError::HostMismatch("vertex sets differ".into()));
    }
    if big.edges() != small.edges() {
        return Err(RotationError::HostMismatch("edge sets differ".into()));
    }
    let base: BTreeSet<String> = small.face_keys().into_iter().collect();
    for f in small.faces() {
        let g = big
            .face_index(&f.key())
            .map_err(|_| RotationError::HostMismatch(format!("face {:?} missing", f.key())))?;
        if big.face(g).vertices != f.vertices {
            return Err(RotationError::HostMismatch(format!("face {:?} changed", f.key())));
        }
    }
    for f in big.faces() {
        if !base.contains(&f.key()) && !small.faces().iter().any(|x| x.id == f.id && x.vertices == f.vertices) {
            return Err(RotationError::HostMismatch(format!(
                "face {:?} is not a parallel copy",
                f.key()
            )));
        }
    }
    for v in 0..small.vertex_count() {
        let big_table = s_prime.rotator_table(v);
        for (x, seq) in s.rotator_table(v) {
            let restricted: Vec<String> = big_table
                .get(&x)
                .ok_or_else(|| RotationError::HostMismatch(format!("link vertex {x:?} missing")))?
                .iter()
                .filter(|k| base.contains(*k))
                .cloned()
                .collect();
            if !cyclic_eq(&restricted, &seq) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JunkifyStep {
    /// The face-degree-two edge that triggered the step.
    pub edge: String,
    /// Key of the copied face.
    pub face: String,
    /// Key of the new parallel copy.
    pub copy: String,
    /// Ends of the dual edge of `face` before subdivision.
    pub split: (String, String),
    /// Subdivision vertex: `face` now joins `split.0` to it, `copy` joins it to `split.1`.
    pub new_vertex: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JunkifyResult {
    pub complex: DirectedComplex,
    pub framework: RotationFramework,
    pub graph: Graph,
    pub ledger: Vec<JunkifyStep>,
}

/// Adds parallel faces until every edge has face-degree at least three, keeping the
/// framework induced by a subdivision of `g`.
pub fn junkify(s: &RotationFramework, g: &Graph) -> Result<JunkifyResult, RotationError> {
    if !is_induced_by(s, g) {
        return Err(RotationError::HypothesisFailure(
            "the framework is not induced by the dual graph".into(),
        ));
    }
    let mut frame = s.clone();
    let mut graph = g.clone();
    let mut ledger = Vec::new();
    loop {
        let c = &frame.complex;
        let degrees = c.face_degrees();
        let Some(e) = (0..c.edge_count()).find(|&e| degrees[e] < 3) else {
            break;
        };
        if degrees[e] < 2 {
            return Err(RotationError::HypothesisFailure(format!(
                "edge {:?} has face-degree {}",
                c.edge(e).id,
                degrees[e]
            )));
        }
        let x = c.faces_at_edge(e)[0];
        let step = junkify_step(&frame, &graph, e, x, ledger.len())?;
        frame = step.0;
        graph = step.1;
        ledger.push(step.2);
    }
    frame.colour_edges()?;
    if !is_induced_by(&frame, &graph) {
        return Err(RotationError::CompatibilityViolation(
            "junkified framework is not induced by the subdivided dual".into(),
        ));
    }
    Ok(JunkifyResult {
        complex: frame.complex.clone(),
        framework: frame,
        graph,
        ledger,
    })
}

fn fresh_vertex(g: &Graph, n: usize) -> String {
    let mut label = format!("j{n}");
    while g.vertex_index(&label).is_some() {
        label.push('\'');
    }
    label
}

/// Subdivides dual edge `face` at a new vertex: `face` keeps its first end, `copy` takes the second.
pub(crate) fn subdivide(g: &Graph, face: &str, copy: &str, new_vertex: &str) -> Option<Graph> {
    let target = g.edge_index(face)?;
    let mut out = Graph::new();
    for l in g.vertex_labels() {
        out.add_vertex(l.clone()).ok()?;
    }
    let m = out.add_vertex(new_vertex).ok()?;
    let (s, t) = (g.edge(target).u, g.edge(target).v);
    for (i, e) in g.edges().iter().enumerate() {
        if i == target {
            out.add_edge(e.label.clone(), s, m).ok()?;
        } else {
            out.add_edge(e.label.clone(), e.u, e.v).ok()?;
        }
    }
    out.add_edge(copy, m, t).ok()?;
    Some(out)
}

/// Replays a junkify ledger on the original dual graph.
pub fn replay_ledger(g: &Graph, ledger: &[JunkifyStep]) -> Option<Graph> {
    let mut out = g.clone();
    for step in ledger {
        let e = out.edge(out.edge_index(&step.face)?);
        if (out.vertex_label(e.u), out.vertex_label(e.v)) != (step.split.0.as_str(), step.split.1.as_str()) {
            return None;
        }
        out = subdivide(&out, &step.face, &step.copy, &step.new_vertex)?;
    }
    Some(out)
}

fn junkify_step(
    s: &RotationFramework,
    g: &Graph,
    e: usize,
    x: usize,
    n: usize,
) -> Result<(RotationFramework, Graph, JunkifyStep), RotationError> {
    let c = &s.complex;
    let xkey = c.face(x).key();
    let ge = g.edge(g.edge_index(&xkey).expect("induced"));
    if ge.is_loop() {
        return Err(RotationError::HypothesisFailure(format!(
            "dual edge of {xkey:?} is a loop"
        )));
    }
    let (sl, tl) = (g.vertex_label(ge.u).to_string(), g.vertex_label(ge.v).to_string());
    let m = fresh_vertex(g, n);
    let (c2, xi2) = c.with_parallel_copy(x);
    let copy_key = c2.face(xi2).key();
    let mut embeddings = s.embeddings.clone();
    for &vi in &c.face(x).vertices {
        let old = &s.embeddings[vi];
        let link = c2.link_graph_at(vi).graph;
        let new_edge = link.edge_index(&copy_key).expect("copy at vi");
        let xe = old.graph.edge_index(&xkey).expect("x at vi");
        debug_assert_eq!(new_edge, old.graph.edge_count());
        let face_of = old.face_of_dart();
        // dart of x on the side of the face named by the second end of its dual edge
        let d = [Dart::new(xe, false), Dart::new(xe, true)]
            .into_iter()
            .find(|d| old.face_labels[face_of[d.index()]] == tl)
            .ok_or_else(|| {
                RotationError::HypothesisFailure(format!("link at {:?} does not see face {tl:?}", c.vertex_label(vi)))
            })?;
        let (p, q) = (d.tail(&old.graph), d.head(&old.graph));
        let copy_p = Dart::new(new_edge, d.rev);
        let copy_q = copy_p.reverse();
        let mut rot = old.rotation.clone();
        let at_q = &mut rot.rotators[q];
        let i = at_q.iter().position(|&y| y == d.reverse()).expect("dart in rotator");
        at_q.insert(i + 1, copy_q);
        let at_p = &mut rot.rotators[p];
        let i = at_p.iter().position(|&y| y == d).expect("dart in rotator");
        at_p.insert(i, copy_p);
        let pe = trace_with_labels(&link, &rot, |y| {
            if y == d || y == copy_q {
                m.clone()
            } else if y == copy_p {
                tl.clone()
            } else {
                old.face_labels[face_of[y.index()]].clone()
            }
        })?;
        if pe.genus != 0 {
            return Err(RotationError::CompatibilityViolation(format!(
                "bigon insertion at {:?} is not planar",
                c.vertex_label(vi)
            )));
        }
        embeddings[vi] = pe;
    }
    // embeddings at the other vertices are on unchanged link graphs
    let frame = RotationFramework::from_embeddings(c2, embeddings, s.reflected.clone())?;
    frame.colour_edges()?;
    let g2 = subdivide(g, &xkey, &copy_key, &m).expect("fresh labels");
    let step = JunkifyStep {
        edge: c.edge(e).id.clone(),
        face: xkey,
        copy: copy_key,
        split: (sl, tl),
        new_vertex: m,
    };
    Ok((frame, g2, step))
}

/// Whether `sub` arises from `g` by subdividing edges: every vertex of `g` survives with
/// its label, every added vertex has degree two, and suppressing added vertices gives
/// back `g` with the edge labels of the first segment.
pub fn is_subdivision_of(sub: &Graph, g: &Graph) -> bool {
    let original: BTreeSet<&str> = g.vertex_labels().iter().map(String::as_str).collect();
    if !original.iter().all(|l| sub.vertex_index(l).is_some()) {
        return false;
    }
    let added: Vec<usize> = (0..sub.vertex_count())
        .filter(|&x| !original.contains(sub.vertex_label(x)))
        .collect();
    if added.iter().any(|&x| sub.degree(x) != 2 || sub.incident(x).len() != 2) {
        return false;
    }
    let is_added = |x: usize| !original.contains(sub.vertex_label(x));
    // walk each path between original vertices
    let mut used = vec![false; sub.edge_count()];
    let mut paths: BTreeMap<String, (String, String)> = BTreeMap::new();
    for start in 0..sub.vertex_count() {
        if is_added(start) {
            continue;
        }
        for e in sub.incident(start) {
            if used[e] {
                continue;
            }
            let mut labels = vec![sub.edge(e).label.clone()];
            used[e] = true;
            let mut at = sub.edge(e).other(start);
            let mut cur = e;
            while is_added(at) {
                let Some(next) = sub.incident(at).into_iter().find(|&y| y != cur) else {
                    return false;
                };
                if used[next] {
                    return false;
                }
                used[next] = true;
                labels.push(sub.edge(next).label.clone());
                at = sub.edge(next).other(at);
                cur = next;
            }
            // the surviving label is the one `g` uses
            let Some(name) = labels.iter().find(|l| g.edge_index(l).is_some()) else {
                return false;
            };
            let ends = (sub.vertex_label(start).to_string(), sub.vertex_label(at).to_string());
            if paths.insert(name.clone(), ends).is_some() {
                return false;
            }
        }
    }
    if used.iter().any(|u| !u) || paths.len() != g.edge_count() {
        return false;
    }
    g.edges().iter().all(|e| {
        let Some((a, b)) = paths.get(&e.label) else {
            return false;
        };
        let (u, v) = (g.vertex_label(e.u), g.vertex_label(e.v));
        (a == u && b == v) || (a == v && b == u)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{validate, RawComplex};

    fn lim() -> Limits {
        Limits::default()
    }

    fn tetra() -> DirectedComplex {
        validate(&RawComplex::from_triangles(
            &[0, 1, 2, 3],
            &[[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]],
        ))
        .unwrap()
    }

    fn two_vertex_dual(c: &DirectedComplex) -> Graph {
        let keys = c.face_keys();
        Graph::from_labels(
            &["a", "b"],
            &keys.iter().map(|k| (k.as_str(), "a", "b")).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn junked_tetra() -> JunkifyResult {
        let c = tetra();
        let g = two_vertex_dual(&c);
        let s = construct_rotation_framework(&c, &g, &lim()).unwrap();
        junkify(&s, &g).unwrap()
    }

    #[test]
    fn tetrahedron_framework() {
        let c = tetra();
        let g = two_vertex_dual(&c);
        let s = construct_rotation_framework(&c, &g, &lim()).unwrap();
        assert!(s.embeddings().iter().all(|pe| pe.faces.len() == 2 && pe.genus == 0));
        assert!(s.colour_edges().unwrap().iter().all(|&c| c == Colour::DegenerateGreen));
        assert!(is_induced_by(&s, &g));
        assert!(sparsity_check(&c, &g).unwrap().is_empty());
    }

    #[test]
    fn wrong_dual_is_rejected() {
        let c = tetra();
        let keys = c.face_keys();
        let path = Graph::from_labels(
            &["p0", "p1", "p2", "p3", "p4"],
            &[
                (keys[0].as_str(), "p0", "p1"),
                (keys[1].as_str(), "p1", "p2"),
                (keys[2].as_str(), "p2", "p3"),
                (keys[3].as_str(), "p3", "p4"),
            ],
        )
        .unwrap();
        assert!(matches!(
            construct_rotation_framework(&c, &path, &lim()),
            Err(RotationError::PrescribedDualFailure { .. }) | Err(RotationError::FacesAtEdgeNotCycle(_))
        ));
    }

    #[test]
    fn junkify_tetrahedron() {
        let j = junked_tetra();
        assert!(j.complex.face_degrees().iter().all(|&d| d >= 3));
        assert!(!j.ledger.is_empty() && j.ledger.len() <= 6);
        let g = two_vertex_dual(&tetra());
        assert!(is_subdivision_of(&j.graph, &g));
        assert_eq!(replay_ledger(&g, &j.ledger).unwrap(), j.graph);
        let s = construct_rotation_framework(&tetra(), &g, &lim()).unwrap();
        assert!(induces_check(&j.framework, &s).unwrap());
        for f in j.complex.face_keys() {
            assert_eq!(face_parity_check(&j.framework, &f).unwrap(), Parity::Even);
        }
        assert!(is_even(&j.framework).unwrap().even);
        assert!(sparsity_check(&j.complex, &j.graph).unwrap().is_empty());
    }

    #[test]
    fn junkify_is_identity_at_degree_three() {
        let j = junked_tetra();
        let again = junkify(&j.framework, &j.graph).unwrap();
        assert!(again.ledger.is_empty());
        assert_eq!(again.complex, j.complex);
        assert!(induces_check(&j.framework, &j.framework).unwrap());
    }

    #[test]
    fn flips_toggle_colours() {
        let j = junked_tetra();
        let s = &j.framework;
        let before = s.colour_edges().unwrap();
        let f = s.flip("0").unwrap();
        let after = f.colour_edges().unwrap();
        let at0 = s.complex().edges_at_vertex(0);
        for e in 0..before.len() {
            if at0.contains(&e) {
                assert_ne!(before[e], after[e]);
            } else {
                assert_eq!(before[e], after[e]);
            }
        }
        assert_eq!(f.flip("0").unwrap(), *s);
        assert_eq!(is_even(&f).unwrap().even, is_even(s).unwrap().even);
        assert!(matches!(s.flip("nope"), Err(RotationError::UnknownVertex(_))));
    }

    #[test]
    fn perturbed_rotator_is_odd_and_not_induced() {
        let j = junked_tetra();
        let s = &j.framework;
        let e = 0;
        let v = s.complex().edge(e).tail;
        let mut tables: Vec<_> = (0..s.complex().vertex_count()).map(|x| s.rotator_table(x)).collect();
        let id = s.complex().edge(e).id.clone();
        tables[v].get_mut(&id).unwrap().reverse();
        let bent = RotationFramework::from_rotators(s.complex().clone(), &tables, vec![false; 4]).unwrap();
        let before = s.edge_colour(e).unwrap();
        let after = bent.edge_colour(e).unwrap();
        assert_ne!(before, after);
        let face = s.complex().faces_at_edge(e)[0];
        let expected = if s.face_parity(face).unwrap() == Parity::Even {
            Parity::Odd
        } else {
            Parity::Even
        };
        assert_eq!(bent.face_parity(face).unwrap(), expected);
        let ev = is_even(&bent).unwrap();
        assert!(!ev.even);
        let w = ev.witness.unwrap();
        assert!(w.contains(&id));
        assert!(!induces_check(&bent, s).unwrap());
    }

    #[test]
    fn degenerate_faces_report() {
        let c = tetra();
        let g = two_vertex_dual(&c);
        let s = construct_rotation_framework(&c, &g, &lim()).unwrap();
        assert!(matches!(
            face_parity_check(&s, "f0"),
            Err(RotationError::DegenerateDegrees(_))
        ));
        assert!(matches!(
            face_parity_check(&s, "zz"),
            Err(RotationError::UnknownFace(_))
        ));
    }

    #[test]
    fn sparsity_catches_books() {
        let book = validate(&RawComplex::from_triangles(
            &[0, 1, 2, 3, 4],
            &[[0, 1, 2], [0, 1, 3], [0, 1, 4]],
        ))
        .unwrap();
        let keys = book.face_keys();
        let bouquet =
            Graph::from_labels(&["o"], &keys.iter().map(|k| (k.as_str(), "o", "o")).collect::<Vec<_>>()).unwrap();
        let v = sparsity_check(&book, &bouquet).unwrap();
        assert!(v.iter().any(|x| x.dual_vertex == "o" && x.count == 3));
        let empty = validate(&RawComplex::default()).unwrap();
        assert!(sparsity_check(&empty, &Graph::new()).unwrap().is_empty());
    }

    #[test]
    fn odd_cycle_on_triangle() {
        let g = crate::graph::named::cycle(3);
        assert!(odd_cycle(&g, &[false, false, false]).is_none());
        assert_eq!(odd_cycle(&g, &[true, false, false]).unwrap().len(), 3);
        assert!(odd_cycle(&g, &[true, true, false]).is_none());
    }

    #[test]
    fn subdivision_recognition() {
        let g = crate::graph::named::cycle(3);
        assert!(is_subdivision_of(&g, &g));
        let e = g.edge(0).label.clone();
        let sub = subdivide(&g, &e, "new", "m").unwrap();
        assert!(is_subdivision_of(&sub, &g));
        assert!(!is_subdivision_of(&g, &sub));
    }
}
