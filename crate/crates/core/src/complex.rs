//! Directed 2-complexes: vertices, directed edges and oriented triangular faces,
//! possibly with parallel copies of faces.
//!
//! A face stores its vertices in cyclic order; that order is the orientation. The
//! incidence sign of an edge in a face is `+1` exactly when the edge's (tail, head)
//! pair appears consecutively in the face's cyclic order.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{ExactMatrix, FieldTag};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("edge {0:?} is not incident with any face")]
    MissingFace(String),
    #[error("face {0:?} repeats a vertex")]
    DegenerateFace(String),
    #[error("edge {0:?} has equal endpoints")]
    DegenerateEdge(String),
    #[error("{kind} {id:?} refers to unknown {target} {missing:?}")]
    DanglingReference {
        kind: &'static str,
        id: String,
        target: &'static str,
        missing: String,
    },
    #[error("face {face:?} needs an edge between {u:?} and {v:?}")]
    MissingEdge { face: String, u: String, v: String },
    #[error("duplicate {kind} id {id:?}")]
    DuplicateId { kind: &'static str, id: String },
    #[error("edges {0:?} and {1:?} join the same pair of vertices")]
    DuplicateEdge(String, String),
    #[error("face {0:?} has copies = 0")]
    ZeroCopies(String),
    #[error("face id {0:?} must not contain '#'")]
    ReservedCharacter(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("unknown face {0:?}")]
    UnknownFace(String),
    #[error("malformed complex document: {0}")]
    Parse(String),
}

/// Identifier as it appears in a complex file: a string or an integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawId {
    Int(i64),
    Str(String),
}

impl RawId {
    pub fn to_label(&self) -> String {
        match self {
            RawId::Int(i) => i.to_string(),
            RawId::Str(s) => s.clone(),
        }
    }

    /// Integer-looking labels serialize back as integers.
    pub fn from_label(s: &str) -> RawId {
        match s.parse::<i64>() {
            Ok(i) if i.to_string() == s => RawId::Int(i),
            _ => RawId::Str(s.to_string()),
        }
    }
}

impl From<&str> for RawId {
    fn from(s: &str) -> Self {
        RawId::Str(s.to_string())
    }
}

impl From<i64> for RawId {
    fn from(i: i64) -> Self {
        RawId::Int(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawFace {
    Plain(RawId, RawId, RawId, RawId),
    Copies(RawId, RawId, RawId, RawId, u32),
}

impl RawFace {
    fn parts(&self) -> (&RawId, [&RawId; 3], u32) {
        match self {
            RawFace::Plain(id, a, b, c) => (id, [a, b, c], 1),
            RawFace::Copies(id, a, b, c, n) => (id, [a, b, c], *n),
        }
    }
}

/// The on-disk complex description: `vertices`, `edges: [[id, u, v]]` (u -> v is the
/// direction), `faces: [[id, a, b, c, copies?]]` (cyclic order is the orientation).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComplex {
    pub vertices: Vec<RawId>,
    pub edges: Vec<(RawId, RawId, RawId)>,
    pub faces: Vec<RawFace>,
}

impl RawComplex {
    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        serde_json::from_str(text).map_err(|e| ComplexError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn vertex(&mut self, id: impl Into<RawId>) -> &mut Self {
        self.vertices.push(id.into());
        self
    }

    pub fn edge(&mut self, id: impl Into<RawId>, u: impl Into<RawId>, v: impl Into<RawId>) -> &mut Self {
        self.edges.push((id.into(), u.into(), v.into()));
        self
    }

    pub fn face(
        &mut self,
        id: impl Into<RawId>,
        a: impl Into<RawId>,
        b: impl Into<RawId>,
        c: impl Into<RawId>,
    ) -> &mut Self {
        self.faces.push(RawFace::Plain(id.into(), a.into(), b.into(), c.into()));
        self
    }

    pub fn face_copies(
        &mut self,
        id: impl Into<RawId>,
        a: impl Into<RawId>,
        b: impl Into<RawId>,
        c: impl Into<RawId>,
        copies: u32,
    ) -> &mut Self {
        self.faces
            .push(RawFace::Copies(id.into(), a.into(), b.into(), c.into(), copies));
        self
    }

    /// Raw description of a complex whose faces are all given by vertex triples;
    /// edges are created on demand, directed from the smaller to the larger vertex index.
    pub fn from_triangles<V: ToString>(vertices: &[V], faces: &[[usize; 3]]) -> RawComplex {
        let mut raw = RawComplex::default();
        let labels: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
        for l in &labels {
            raw.vertex(RawId::from_label(l));
        }
        let mut seen = std::collections::BTreeSet::new();
        for f in faces {
            for i in 0..3 {
                let (a, b) = (f[i].min(f[(i + 1) % 3]), f[i].max(f[(i + 1) % 3]));
                seen.insert((a, b));
            }
        }
        for &(a, b) in &seen {
            raw.edge(
                RawId::Str(format!("{}-{}", labels[a], labels[b])),
                RawId::from_label(&labels[a]),
                RawId::from_label(&labels[b]),
            );
        }
        for (i, f) in faces.iter().enumerate() {
            raw.face(
                RawId::Str(format!("f{i}")),
                RawId::from_label(&labels[f[0]]),
                RawId::from_label(&labels[f[1]]),
                RawId::from_label(&labels[f[2]]),
            );
        }
        raw
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: String,
    /// 0 for the first copy of a face record; parallel copies count up.
    pub copy: usize,
    /// Cyclic vertex order.
    pub vertices: [usize; 3],
    /// `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
    pub edges: [usize; 3],
    pub signs: [i8; 3],
}

impl Face {
    /// Unique key: the record id, with `#k` appended for the k-th parallel copy.
    pub fn key(&self) -> String {
        face_key(&self.id, self.copy)
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn position_of_edge(&self, e: usize) -> Option<usize> {
        self.edges.iter().position(|&x| x == e)
    }
}

pub fn face_key(id: &str, copy: usize) -> String {
    if copy == 0 {
        id.to_string()
    } else {
        format!("{id}#{copy}")
    }
}

/// A validated (generalised) simplicial 2-complex with directions and orientations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedComplex {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    face_index: HashMap<String, usize>,
    edge_by_pair: HashMap<(usize, usize), usize>,
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Checks a raw description against the complex invariants and resolves incidences.
pub fn validate(raw: &RawComplex) -> Result<DirectedComplex, ComplexError> {
    let mut vertices = Vec::new();
    let mut vertex_index = HashMap::new();
    for v in &raw.vertices {
        let l = v.to_label();
        if vertex_index.insert(l.clone(), vertices.len()).is_some() {
            return Err(ComplexError::DuplicateId { kind: "vertex", id: l });
        }
        vertices.push(l);
    }
    let lookup = |kind: &'static str, id: &str, v: &RawId| -> Result<usize, ComplexError> {
        vertex_index
            .get(&v.to_label())
            .copied()
            .ok_or_else(|| ComplexError::DanglingReference {
                kind,
                id: id.to_string(),
                target: "vertex",
                missing: v.to_label(),
            })
    };

    let mut edges = Vec::new();
    let mut edge_index = HashMap::new();
    let mut edge_by_pair: HashMap<(usize, usize), usize> = HashMap::new();
    for (id, u, v) in &raw.edges {
        let id = id.to_label();
        let tail = lookup("edge", &id, u)?;
        let head = lookup("edge", &id, v)?;
        if tail == head {
            return Err(ComplexError::DegenerateEdge(id));
        }
        if edge_index.contains_key(&id) {
            return Err(ComplexError::DuplicateId { kind: "edge", id });
        }
        if let Some(&other) = edge_by_pair.get(&ordered(tail, head)) {
            let other: &Edge = &edges[other];
            return Err(ComplexError::DuplicateEdge(other.id.clone(), id));
        }
        edge_by_pair.insert(ordered(tail, head), edges.len());
        edge_index.insert(id.clone(), edges.len());
        edges.push(Edge { id, tail, head });
    }

    let mut faces = Vec::new();
    let mut face_index = HashMap::new();
    let mut record_ids = std::collections::HashSet::new();
    for rf in &raw.faces {
        let (id, verts, copies) = rf.parts();
        let id = id.to_label();
        if id.contains('#') {
            return Err(ComplexError::ReservedCharacter(id));
        }
        if !record_ids.insert(id.clone()) {
            return Err(ComplexError::DuplicateId { kind: "face", id });
        }
        if copies == 0 {
            return Err(ComplexError::ZeroCopies(id));
        }
        let mut vs = [0usize; 3];
        for (slot, v) in vs.iter_mut().zip(verts) {
            *slot = lookup("face", &id, v)?;
        }
        if vs[0] == vs[1] || vs[1] == vs[2] || vs[0] == vs[2] {
            return Err(ComplexError::DegenerateFace(id));
        }
        let mut fedges = [0usize; 3];
        let mut signs = [0i8; 3];
        for i in 0..3 {
            let (a, b) = (vs[i], vs[(i + 1) % 3]);
            let e = *edge_by_pair
                .get(&ordered(a, b))
                .ok_or_else(|| ComplexError::MissingEdge {
                    face: id.clone(),
                    u: vertices[a].clone(),
                    v: vertices[b].clone(),
                })?;
            fedges[i] = e;
            signs[i] = if edges[e].tail == a { 1 } else { -1 };
        }
        for copy in 0..copies as usize {
            let face = Face {
                id: id.clone(),
                copy,
                vertices: vs,
                edges: fedges,
                signs,
            };
            face_index.insert(face.key(), faces.len());
            faces.push(face);
        }
    }
    let c = DirectedComplex {
        vertices,
        edges,
        faces,
        vertex_index,
        edge_index,
        face_index,
        edge_by_pair,
    };
    if let Some(e) = (0..c.edges.len()).find(|&e| c.face_degree_at(e) == 0) {
        return Err(ComplexError::MissingFace(c.edges[e].id.clone()));
    }
    Ok(c)
}

/// Parses and validates a complex file.
pub fn parse_complex(text: &str) -> Result<DirectedComplex, ComplexError> {
    validate(&RawComplex::from_json(text)?)
}

/// Link graph at a vertex: vertices are the complex edges at `v`, edges are the faces at `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGraph {
    pub host: usize,
    pub host_label: String,
    pub graph: Graph,
}

impl DirectedComplex {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn face_keys(&self) -> Vec<String> {
        self.faces.iter().map(Face::key).collect()
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize, ComplexError> {
        self.vertex_index
            .get(label)
            .copied()
            .ok_or_else(|| ComplexError::UnknownVertex(label.to_string()))
    }

    pub fn edge_index(&self, label: &str) -> Result<usize, ComplexError> {
        self.edge_index
            .get(label)
            .copied()
            .ok_or_else(|| ComplexError::UnknownEdge(label.to_string()))
    }

    pub fn face_index(&self, key: &str) -> Result<usize, ComplexError> {
        self.face_index
            .get(key)
            .copied()
            .ok_or_else(|| ComplexError::UnknownFace(key.to_string()))
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_by_pair.get(&ordered(a, b)).copied()
    }

    /// Faces containing edge `e`, in face order.
    pub fn faces_at_edge(&self, e: usize) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| self.faces[f].edges.contains(&e))
            .collect()
    }

    pub fn faces_at_vertex(&self, v: usize) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| self.faces[f].contains_vertex(v))
            .collect()
    }

    pub fn edges_at_vertex(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].tail == v || self.edges[e].head == v)
            .collect()
    }

    fn face_degree_at(&self, e: usize) -> usize {
        self.faces.iter().filter(|f| f.edges.contains(&e)).count()
    }

    /// Number of faces, parallel copies included, containing the edge.
    pub fn face_degree(&self, edge: &str) -> Result<usize, ComplexError> {
        Ok(self.face_degree_at(self.edge_index(edge)?))
    }

    pub fn face_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.edges.len()];
        for f in &self.faces {
            for &e in &f.edges {
                deg[e] += 1;
            }
        }
        deg
    }

    pub fn link_graph(&self, vertex: &str) -> Result<LinkGraph, ComplexError> {
        Ok(self.link_graph_at(self.vertex_index(vertex)?))
    }

    pub fn link_graph_at(&self, v: usize) -> LinkGraph {
        let mut g = Graph::new();
        let mut local = HashMap::new();
        for e in self.edges_at_vertex(v) {
            local.insert(e, g.add_vertex(self.edges[e].id.clone()).expect("unique edge ids"));
        }
        for f in self.faces_at_vertex(v) {
            let face = &self.faces[f];
            let i = face.vertices.iter().position(|&x| x == v).expect("contains v");
            // edge leaving v along the orientation, and the edge arriving at v
            let out = face.edges[i];
            let inc = face.edges[(i + 2) % 3];
            g.add_edge(face.key(), local[&inc], local[&out])
                .expect("unique face keys");
        }
        LinkGraph {
            host: v,
            host_label: self.vertices[v].clone(),
            graph: g,
        }
    }

    pub fn link_graphs(&self) -> Vec<LinkGraph> {
        (0..self.vertices.len()).map(|v| self.link_graph_at(v)).collect()
    }

    /// Signed edge/face incidence matrix over `field`: rows are edges, columns faces.
    pub fn incidence_matrix(&self, field: FieldTag) -> ExactMatrix {
        let mut m = ExactMatrix::zeros_labelled(
            field,
            self.edges.iter().map(|e| e.id.clone()).collect(),
            self.face_keys(),
        );
        for (j, f) in self.faces.iter().enumerate() {
            for i in 0..3 {
                m.set(f.edges[i], j, field.from_i64(f.signs[i] as i64));
            }
        }
        m
    }

    pub fn one_skeleton(&self) -> Graph {
        let mut g = Graph::new();
        for v in &self.vertices {
            g.add_vertex(v.clone()).expect("unique vertex labels");
        }
        for e in &self.edges {
            g.add_edge(e.id.clone(), e.tail, e.head).expect("unique edge ids");
        }
        g
    }

    /// Whether the mod-2 face boundaries span the mod-2 cycle space of the 1-skeleton,
    /// i.e. whether H1 with F2 coefficients vanishes.
    pub fn h1_f2_trivial(&self) -> bool {
        let boundary_rank = self.incidence_matrix(FieldTag::GF2).rank();
        boundary_rank == self.one_skeleton().cycle_rank()
    }

    /// Adds a parallel copy of face `f` (same vertex triple and orientation) and
    /// returns the new complex with the index of the copy.
    pub fn with_parallel_copy(&self, f: usize) -> (DirectedComplex, usize) {
        let mut c = self.clone();
        let src = &self.faces[f];
        let copy = self
            .faces
            .iter()
            .filter(|x| x.id == src.id)
            .map(|x| x.copy)
            .max()
            .unwrap_or(0)
            + 1;
        let face = Face { copy, ..src.clone() };
        let idx = c.faces.len();
        c.face_index.insert(face.key(), idx);
        c.faces.push(face);
        (c, idx)
    }

    /// The same complex with selected edges re-directed and selected faces re-oriented.
    pub fn reoriented(&self, flip_edge: impl Fn(usize) -> bool, flip_face: impl Fn(usize) -> bool) -> DirectedComplex {
        let mut c = self.clone();
        for (i, e) in c.edges.iter_mut().enumerate() {
            if flip_edge(i) {
                std::mem::swap(&mut e.tail, &mut e.head);
            }
        }
        for (i, f) in c.faces.iter_mut().enumerate() {
            if flip_face(i) {
                // (a, b, c) -> (a, c, b); edges re-indexed to match
                f.vertices = [f.vertices[0], f.vertices[2], f.vertices[1]];
                f.edges = [f.edges[2], f.edges[1], f.edges[0]];
            }
            for k in 0..3 {
                let a = f.vertices[k];
                f.signs[k] = if c.edges[f.edges[k]].tail == a { 1 } else { -1 };
            }
        }
        c
    }

    /// Raw description; parallel copies are folded into the `copies` count of their
    /// record (each record takes the orientation of its first copy).
    pub fn to_raw(&self) -> RawComplex {
        let mut raw = RawComplex::default();
        for v in &self.vertices {
            raw.vertex(RawId::from_label(v));
        }
        for e in &self.edges {
            raw.edge(
                RawId::from_label(&e.id),
                RawId::from_label(&self.vertices[e.tail]),
                RawId::from_label(&self.vertices[e.head]),
            );
        }
        let mut order: Vec<&str> = Vec::new();
        let mut count: HashMap<&str, u32> = HashMap::new();
        let mut first: HashMap<&str, &Face> = HashMap::new();
        for f in &self.faces {
            if !count.contains_key(f.id.as_str()) {
                order.push(&f.id);
                first.insert(&f.id, f);
            }
            *count.entry(&f.id).or_default() += 1;
        }
        for id in order {
            let f = first[id];
            let [a, b, c] = f.vertices.map(|v| RawId::from_label(&self.vertices[v]));
            let n = count[id];
            if n == 1 {
                raw.face(RawId::from_label(id), a, b, c);
            } else {
                raw.face_copies(RawId::from_label(id), a, b, c, n);
            }
        }
        raw
    }
}

impl fmt::Display for DirectedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vertices, {} edges, {} faces",
            self.vertex_count(),
            self.edge_count(),
            self.face_count()
        )
    }
}
