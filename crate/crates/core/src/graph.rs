//! Labelled multigraphs (loops and parallel edges allowed).
//!
//! The same type carries 1-skeletons, link graphs and dual graphs. Edges are stored
//! as ordered pairs; the order doubles as an orientation where one is needed
//! (signed incidence vectors) and is ignored everywhere else.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::limits::{Budget, Limits, ScaleExceeded};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge label {0:?}")]
    DuplicateEdge(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub label: String,
    pub u: usize,
    pub v: usize,
}

impl GraphEdge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<GraphEdge>,
    vindex: HashMap<String, usize>,
    eindex: HashMap<String, usize>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from `(label, u, v)` triples over the given vertex labels.
    pub fn from_labels<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<Self, GraphError> {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v.as_ref())?;
        }
        for (l, u, v) in edges {
            let u = g.require_vertex(u.as_ref())?;
            let v = g.require_vertex(v.as_ref())?;
            g.add_edge(l.as_ref(), u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize, GraphError> {
        let label = label.into();
        if self.vindex.contains_key(&label) {
            return Err(GraphError::DuplicateVertex(label));
        }
        let i = self.vertices.len();
        self.vindex.insert(label.clone(), i);
        self.vertices.push(label);
        Ok(i)
    }

    pub fn add_edge(&mut self, label: impl Into<String>, u: usize, v: usize) -> Result<usize, GraphError> {
        let label = label.into();
        assert!(u < self.vertices.len() && v < self.vertices.len());
        if self.eindex.contains_key(&label) {
            return Err(GraphError::DuplicateEdge(label));
        }
        let i = self.edges.len();
        self.eindex.insert(label.clone(), i);
        self.edges.push(GraphEdge { label, u, v });
        Ok(i)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge(&self, e: usize) -> &GraphEdge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn edge_labels(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vindex.get(label).copied()
    }

    pub fn require_vertex(&self, label: &str) -> Result<usize, GraphError> {
        self.vertex_index(label)
            .ok_or_else(|| GraphError::UnknownVertex(label.to_string()))
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.eindex.get(label).copied()
    }

    pub fn require_edge(&self, label: &str) -> Result<usize, GraphError> {
        self.edge_index(label)
            .ok_or_else(|| GraphError::UnknownEdge(label.to_string()))
    }

    /// Edges incident with `v`, in edge order; a loop is listed once.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].u == v || self.edges[e].v == v)
            .collect()
    }

    /// Loops count twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == v) as usize + (e.v == v) as usize)
            .sum()
    }

    /// Component id per vertex, and the number of components (isolated vertices included).
    pub fn components(&self) -> (Vec<usize>, usize) {
        self.components_avoiding(None)
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u].push((i, e.v));
            if e.u != e.v {
                adj[e.v].push((i, e.u));
            }
        }
        adj
    }

    fn components_avoiding(&self, removed: Option<usize>) -> (Vec<usize>, usize) {
        let n = self.vertices.len();
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX || Some(s) == removed {
                continue;
            }
            comp[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(_, y) in &adj[x] {
                    if comp[y] == usize::MAX && Some(y) != removed {
                        comp[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// 2-connectivity for multigraphs: connected, no cut vertex, at least three vertices.
    /// With `allow_two_vertex`, two vertices joined by at least two parallel edges also count.
    pub fn is_two_connected(&self, allow_two_vertex: bool) -> bool {
        let n = self.vertices.len();
        match n {
            0 | 1 => false,
            2 => allow_two_vertex && self.edges.iter().filter(|e| !e.is_loop()).count() >= 2,
            _ => self.is_connected() && (0..n).all(|v| self.components_avoiding(Some(v)).1 == 1),
        }
    }

    /// Spanning forest as per-edge membership flags; BFS from each component's
    /// lowest-index vertex, edges taken in index order.
    pub fn spanning_forest(&self) -> Vec<bool> {
        let n = self.vertices.len();
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut in_tree = vec![false; self.edges.len()];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(e, y) in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        in_tree[e] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        in_tree
    }

    /// Unique path between two vertices inside the forest given by `in_tree`.
    pub fn tree_path(&self, in_tree: &[bool], from: usize, to: usize) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &(e, y) in &adj[x] {
                if in_tree[e] && !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((e, x));
                    queue.push_back(y);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = Vec::new();
        let mut x = to;
        while let Some((e, p)) = prev[x] {
            path.push(e);
            x = p;
        }
        path.reverse();
        Some(path)
    }

    /// Dimension of the cycle space: |E| - |V| + #components.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.components().1 - self.vertices.len()
    }

    /// True iff the edge set is the edge set of a single cycle (a loop, a parallel pair, or longer).
    pub fn edge_set_is_cycle(&self, set: &[usize]) -> bool {
        if set.is_empty() {
            return false;
        }
        let uniq: BTreeSet<usize> = set.iter().copied().collect();
        if uniq.len() != set.len() {
            return false;
        }
        if set.len() == 1 {
            return self.edges[set[0]].is_loop();
        }
        let mut deg: HashMap<usize, usize> = HashMap::new();
        for &e in set {
            let ed = &self.edges[e];
            if ed.is_loop() {
                return false;
            }
            *deg.entry(ed.u).or_default() += 1;
            *deg.entry(ed.v).or_default() += 1;
        }
        if deg.values().any(|&d| d != 2) {
            return false;
        }
        self.edge_subgraph(set, false).is_connected()
    }

    /// Subgraph with the listed edges; vertices untouched by them are kept only on request.
    pub fn edge_subgraph(&self, keep: &[usize], keep_isolated: bool) -> Graph {
        let keep: BTreeSet<usize> = keep.iter().copied().collect();
        let mut used = vec![keep_isolated; self.vertices.len()];
        for &e in &keep {
            used[self.edges[e].u] = true;
            used[self.edges[e].v] = true;
        }
        let mut g = Graph::new();
        let mut map = vec![usize::MAX; self.vertices.len()];
        for v in 0..self.vertices.len() {
            if used[v] {
                map[v] = g.add_vertex(self.vertices[v].clone()).expect("unique labels");
            }
        }
        for &e in &keep {
            let ed = &self.edges[e];
            g.add_edge(ed.label.clone(), map[ed.u], map[ed.v])
                .expect("unique labels");
        }
        g
    }

    fn check_mask_capacity(&self) -> Result<(), ScaleExceeded> {
        if self.edges.len() > 64 {
            return Err(ScaleExceeded::new("graph edge count", self.edges.len() as u64, 64));
        }
        Ok(())
    }

    /// Edge sets of all cycles, as bitmasks over edge indices.
    pub fn cycles(&self, limits: &Limits) -> Result<BTreeSet<u64>, ScaleExceeded> {
        self.check_mask_capacity()?;
        let mut budget = Budget::new(limits, "cycle enumeration");
        let adj = self.adjacency();
        let mut out = BTreeSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                out.insert(1u64 << i);
            }
        }
        let n = self.vertices.len();
        for s in 0..n {
            // cycles whose smallest vertex is s
            let mut on_path = vec![false; n];
            on_path[s] = true;
            #[allow(clippy::too_many_arguments)]
            fn dfs(
                x: usize,
                s: usize,
                mask: u64,
                first: usize,
                adj: &[Vec<(usize, usize)>],
                on_path: &mut [bool],
                out: &mut BTreeSet<u64>,
                budget: &mut Budget,
            ) -> Result<(), ScaleExceeded> {
                budget.spend(1)?;
                on_path[x] = true;
                for &(e, y) in &adj[x] {
                    if mask & (1 << e) != 0 {
                        continue;
                    }
                    if y == s && e != first {
                        out.insert(mask | (1 << e));
                    } else if y > s && !on_path[y] {
                        dfs(y, s, mask | (1 << e), first, adj, on_path, out, budget)?;
                    }
                }
                on_path[x] = false;
                Ok(())
            }
            for &(e, y) in &adj[s] {
                if y > s {
                    dfs(y, s, 1 << e, e, &adj, &mut on_path, &mut out, &mut budget)?;
                }
            }
        }
        Ok(out)
    }

    /// Minimal edge cuts (bonds), as bitmasks over edge indices.
    pub fn bonds(&self, limits: &Limits) -> Result<BTreeSet<u64>, ScaleExceeded> {
        self.check_mask_capacity()?;
        let mut budget = Budget::new(limits, "bond enumeration");
        let (comp, count) = self.components();
        let mut out = BTreeSet::new();
        for c in 0..count {
            let members: Vec<usize> = (0..self.vertices.len()).filter(|&v| comp[v] == c).collect();
            let k = members.len();
            if k < 2 {
                continue;
            }
            if k > limits.max_ground.min(40) {
                return Err(ScaleExceeded::new(
                    "component vertex count",
                    k as u64,
                    limits.max_ground as u64,
                ));
            }
            let comp_edges: Vec<usize> = (0..self.edges.len())
                .filter(|&e| comp[self.edges[e].u] == c && !self.edges[e].is_loop())
                .collect();
            let mut pos = vec![usize::MAX; self.vertices.len()];
            for (i, &v) in members.iter().enumerate() {
                pos[v] = i;
            }
            // side sets always contain members[0]; the full set is excluded
            for side in 0u64..(1u64 << (k - 1)) {
                budget.spend(comp_edges.len() as u64 + 1)?;
                let side = (side << 1) | 1;
                if side == (1u64 << k) - 1 {
                    continue;
                }
                let inside = |v: usize| side & (1 << pos[v]) != 0;
                if !self.induced_connected(&members, &comp_edges, &pos, side)
                    || !self.induced_connected(&members, &comp_edges, &pos, !side & ((1u64 << k) - 1))
                {
                    continue;
                }
                let mut cut = 0u64;
                for &e in &comp_edges {
                    let ed = &self.edges[e];
                    if inside(ed.u) != inside(ed.v) {
                        cut |= 1 << e;
                    }
                }
                out.insert(cut);
            }
        }
        Ok(out)
    }

    fn induced_connected(&self, members: &[usize], edges: &[usize], pos: &[usize], set: u64) -> bool {
        let start = match (0..members.len()).find(|&i| set & (1 << i) != 0) {
            Some(s) => s,
            None => return false,
        };
        let mut reached = 1u64 << start;
        loop {
            let before = reached;
            for &e in edges {
                let (a, b) = (pos[self.edges[e].u], pos[self.edges[e].v]);
                if set & (1 << a) != 0 && set & (1 << b) != 0 {
                    if reached & (1 << a) != 0 {
                        reached |= 1 << b;
                    }
                    if reached & (1 << b) != 0 {
                        reached |= 1 << a;
                    }
                }
            }
            if reached == before {
                break;
            }
        }
        reached == set
    }

    /// Same vertex and edge labels with identical endpoints (edge order may differ;
    /// an edge may be stored reversed).
    pub fn same_labelled(&self, other: &Graph) -> bool {
        let key = |g: &Graph| -> BTreeSet<(String, BTreeSet<String>)> {
            g.edges
                .iter()
                .map(|e| {
                    let ends: BTreeSet<String> = [g.vertices[e.u].clone(), g.vertices[e.v].clone()].into();
                    (e.label.clone(), ends)
                })
                .collect()
        };
        let vs = |g: &Graph| -> BTreeSet<String> { g.vertices.iter().cloned().collect() };
        vs(self) == vs(other) && key(self) == key(other)
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| (e.label.clone(), self.vertices[e.u].clone(), self.vertices[e.v].clone()))
                .collect(),
        }
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<Self, GraphError> {
        Graph::from_labels(
            &doc.vertices,
            &doc.edges
                .iter()
                .map(|(l, u, v)| (l.clone(), u.clone(), v.clone()))
                .collect::<Vec<_>>(),
        )
    }
}

/// Serialized form of a [`Graph`]: vertex labels and `[label, u, v]` edge triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

/// Small named graphs used by the corpus and the tests.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new();
        for i in 1..=n {
            g.add_vertex(i.to_string()).unwrap();
        }
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(format!("{}-{}", i + 1, j + 1), i, j).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::new();
        for i in 1..=n {
            g.add_vertex(i.to_string()).unwrap();
        }
        for i in 0..n {
            let j = (i + 1) % n;
            g.add_edge(format!("{}-{}", i + 1, j + 1), i, j).unwrap();
        }
        g
    }

    /// Sides `a1..` and `b1..`.
    pub fn complete_bipartite(m: usize, n: usize) -> Graph {
        let mut g = Graph::new();
        for i in 1..=m {
            g.add_vertex(format!("a{i}")).unwrap();
        }
        for j in 1..=n {
            g.add_vertex(format!("b{j}")).unwrap();
        }
        for i in 0..m {
            for j in 0..n {
                g.add_edge(format!("a{}-b{}", i + 1, j + 1), i, m + j).unwrap();
            }
        }
        g
    }

    /// Two vertices joined by `n` parallel edges labelled `p0..`.
    pub fn parallel(n: usize) -> Graph {
        let mut g = Graph::new();
        g.add_vertex("a").unwrap();
        g.add_vertex("b").unwrap();
        for i in 0..n {
            g.add_edge(format!("p{i}"), 0, 1).unwrap();
        }
        g
    }

    /// One vertex with `n` loops labelled `l0..`.
    pub fn bouquet(n: usize) -> Graph {
        let mut g = Graph::new();
        g.add_vertex("o").unwrap();
        for i in 0..n {
            g.add_edge(format!("l{i}"), 0, 0).unwrap();
        }
        g
    }
}
