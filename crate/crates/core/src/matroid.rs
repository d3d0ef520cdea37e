//! Representable matroids and graph matroids.
//!
//! A [`VectorMatroid`] is the column matroid of an [`ExactMatrix`]. The dual matroid of
//! a complex is stored this way: its circuit space must be the row space of the
//! incidence matrix `A`, and the circuit space of a column matroid `M[R]` is `null(R)`,
//! so `R` is taken to be a basis of `rowspace(A)^perp = null(A)`. Double orthogonal
//! complement gives back `rowspace(A)`.
//!
//! Circuits are enumerated as supports of elementary vectors of `null(R)`: fixing
//! `d - 1` independent zero coordinates of a `d`-dimensional space leaves a line, and
//! the support of that line is a circuit. Every circuit arises this way.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::algebra::{rank_of_rows, ExactMatrix, FieldTag, Scalar};
use crate::complex::DirectedComplex;
use crate::graph::Graph;
use crate::limits::{Budget, Limits, ScaleExceeded};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("element {0:?} is not in the ground set")]
    UnknownElement(String),
    #[error("ground sets differ")]
    GroundMismatch,
    #[error(transparent)]
    Scale(#[from] ScaleExceeded),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Circuits as bitmasks over a fixed ground order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitFamily {
    pub ground: Vec<String>,
    pub masks: BTreeSet<u64>,
}

impl CircuitFamily {
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn labels(&self, mask: u64) -> Vec<String> {
        mask_labels(&self.ground, mask)
    }

    pub fn label_sets(&self) -> BTreeSet<BTreeSet<String>> {
        self.masks
            .iter()
            .map(|&m| self.labels(m).into_iter().collect())
            .collect()
    }

    /// Re-expresses the masks over another ordering of the same ground set.
    pub fn remap(&self, ground: &[String]) -> Result<CircuitFamily, MatroidError> {
        let perm = permutation(&self.ground, ground)?;
        let masks = self
            .masks
            .iter()
            .map(|&m| {
                (0..self.ground.len())
                    .filter(|i| m & (1 << i) != 0)
                    .fold(0u64, |acc, i| acc | (1 << perm[i]))
            })
            .collect();
        Ok(CircuitFamily {
            ground: ground.to_vec(),
            masks,
        })
    }
}

pub(crate) fn mask_labels(ground: &[String], mask: u64) -> Vec<String> {
    (0..ground.len())
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| ground[i].clone())
        .collect()
}

/// `perm[i]` = position in `to` of `from[i]`.
fn permutation(from: &[String], to: &[String]) -> Result<Vec<usize>, MatroidError> {
    if from.len() != to.len() {
        return Err(MatroidError::GroundMismatch);
    }
    let pos: BTreeMap<&str, usize> = to.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    from.iter()
        .map(|l| pos.get(l.as_str()).copied().ok_or(MatroidError::GroundMismatch))
        .collect()
}

pub trait Matroid {
    fn ground(&self) -> &[String];
    fn rank(&self) -> usize;
    fn circuits(&self, limits: &Limits) -> Result<CircuitFamily, MatroidError>;
}

fn check_ground_size(n: usize, limits: &Limits) -> Result<(), ScaleExceeded> {
    if n > 64 {
        return Err(ScaleExceeded::new("ground set size", n as u64, 64));
    }
    if n > limits.max_ground && limits.max_circuit_size.is_none() {
        return Err(ScaleExceeded::new(
            "ground set size",
            n as u64,
            limits.max_ground as u64,
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorMatroid {
    ground: Vec<String>,
    rep: ExactMatrix,
    rank: usize,
}

impl VectorMatroid {
    /// Column matroid of `rep`; the ground set is the column labels.
    pub fn new(rep: ExactMatrix) -> Self {
        let rank = rep.rank();
        VectorMatroid {
            ground: rep.col_labels().to_vec(),
            rep,
            rank,
        }
    }

    pub fn rep(&self) -> &ExactMatrix {
        &self.rep
    }

    pub fn field(&self) -> FieldTag {
        self.rep.field()
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn element_index(&self, label: &str) -> Result<usize, MatroidError> {
        self.ground
            .iter()
            .position(|g| g == label)
            .ok_or_else(|| MatroidError::UnknownElement(label.to_string()))
    }

    /// Elements whose column is zero.
    pub fn loops(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| (0..self.rep.nrows()).all(|i| self.rep.get(i, j).is_zero()))
            .collect()
    }

    pub fn rank_of(&self, cols: &[usize]) -> usize {
        self.rep.select_columns(cols).rank()
    }

    pub fn is_independent(&self, cols: &[usize]) -> bool {
        self.rank_of(cols) == cols.len()
    }

    /// The dual matroid, represented by a basis of `null(rep)`.
    pub fn dual(&self) -> VectorMatroid {
        VectorMatroid::new(self.rep.null_space_basis())
    }

    /// Column submatrix on the named elements, in the given order.
    pub fn restriction<S: AsRef<str>>(&self, subset: &[S]) -> Result<VectorMatroid, MatroidError> {
        let cols = subset
            .iter()
            .map(|s| self.element_index(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.restriction_at(&cols))
    }

    pub fn restriction_at(&self, cols: &[usize]) -> VectorMatroid {
        VectorMatroid::new(self.rep.select_columns(cols))
    }

    /// Circuits by brute force over size-bounded subsets; used when a circuit size cap is set.
    fn circuits_bounded(&self, cap: usize, limits: &Limits) -> Result<CircuitFamily, MatroidError> {
        let n = self.len();
        let mut budget = Budget::new(limits, "bounded circuit enumeration");
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| (0..self.rep.nrows()).map(|i| self.rep.get(i, j).clone()).collect())
            .collect();
        let mut found: BTreeSet<u64> = BTreeSet::new();
        let mut subset = Vec::new();
        for size in 1..=cap.min(self.rank + 1).min(n) {
            fn rec(
                start: usize,
                size: usize,
                n: usize,
                subset: &mut Vec<usize>,
                cols: &[Vec<Scalar>],
                field: FieldTag,
                found: &mut BTreeSet<u64>,
                budget: &mut Budget,
            ) -> Result<(), ScaleExceeded> {
                if subset.len() == size {
                    budget.spend(1)?;
                    let mask = subset.iter().fold(0u64, |m, &i| m | (1 << i));
                    if found.iter().any(|&c| c & mask == c) {
                        return Ok(());
                    }
                    let rows: Vec<Vec<Scalar>> = subset.iter().map(|&j| cols[j].clone()).collect();
                    if rank_of_rows(field, rows) < size {
                        found.insert(mask);
                    }
                    return Ok(());
                }
                for j in start..n {
                    subset.push(j);
                    rec(j + 1, size, n, subset, cols, field, found, budget)?;
                    subset.pop();
                }
                Ok(())
            }
            rec(0, size, n, &mut subset, &cols, self.field(), &mut found, &mut budget)?;
        }
        Ok(CircuitFamily {
            ground: self.ground.clone(),
            masks: found,
        })
    }

    fn circuits_elementary(&self, limits: &Limits) -> Result<CircuitFamily, MatroidError> {
        let f = self.field();
        let w = self.rep.null_space_basis();
        let d = w.nrows();
        let n = self.len();
        let mut masks = BTreeSet::new();
        if d == 0 {
            return Ok(CircuitFamily {
                ground: self.ground.clone(),
                masks,
            });
        }
        // column z of W as a vector in k^d
        let cols: Vec<Vec<Scalar>> = (0..n).map(|z| (0..d).map(|i| w.get(i, z).clone()).collect()).collect();
        let mut budget = Budget::new(limits, "circuit enumeration");
        let mut chosen: Vec<usize> = Vec::new();
        // independent constraint sets of size d-1, in increasing index order
        #[allow(clippy::too_many_arguments)]
        fn rec(
            start: usize,
            target: usize,
            chosen: &mut Vec<usize>,
            cols: &[Vec<Scalar>],
            w: &ExactMatrix,
            f: FieldTag,
            masks: &mut BTreeSet<u64>,
            budget: &mut Budget,
        ) -> Result<(), ScaleExceeded> {
            budget.spend(1)?;
            if chosen.len() == target {
                let rows: Vec<Vec<Scalar>> = chosen.iter().map(|&z| cols[z].clone()).collect();
                let d = w.nrows();
                let constraint = if rows.is_empty() {
                    ExactMatrix::zeros(f, 0, d)
                } else {
                    ExactMatrix::new(
                        f,
                        (0..rows.len()).map(|i| format!("z{i}")).collect(),
                        (0..d).map(|i| format!("w{i}")).collect(),
                        rows,
                    )
                    .expect("well-formed constraint matrix")
                };
                let line = constraint.null_space_basis();
                debug_assert_eq!(line.nrows(), 1);
                let c = line.row(0);
                let mut mask = 0u64;
                for z in 0..w.ncols() {
                    let mut acc = f.zero();
                    for (i, ci) in c.iter().enumerate() {
                        if !ci.is_zero() && !w.get(i, z).is_zero() {
                            acc = f.add(&acc, &f.mul(ci, w.get(i, z)));
                        }
                    }
                    if !acc.is_zero() {
                        mask |= 1 << z;
                    }
                }
                masks.insert(mask);
                return Ok(());
            }
            let remaining_needed = target - chosen.len();
            for z in start..cols.len() {
                if cols.len() - z < remaining_needed {
                    break;
                }
                let mut rows: Vec<Vec<Scalar>> = chosen.iter().map(|&y| cols[y].clone()).collect();
                rows.push(cols[z].clone());
                if rank_of_rows(f, rows) == chosen.len() + 1 {
                    chosen.push(z);
                    rec(z + 1, target, chosen, cols, w, f, masks, budget)?;
                    chosen.pop();
                }
            }
            Ok(())
        }
        rec(0, d - 1, &mut chosen, &cols, &w, f, &mut masks, &mut budget)?;
        Ok(CircuitFamily {
            ground: self.ground.clone(),
            masks,
        })
    }
}

impl Matroid for VectorMatroid {
    fn ground(&self) -> &[String] {
        &self.ground
    }

    fn rank(&self) -> usize {
        self.rank
    }

    fn circuits(&self, limits: &Limits) -> Result<CircuitFamily, MatroidError> {
        check_ground_size(self.len(), limits)?;
        match limits.max_circuit_size {
            Some(cap) if self.len() > limits.max_ground => self.circuits_bounded(cap, limits),
            _ => self.circuits_elementary(limits),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphMode {
    Cycle,
    Bond,
}

/// The cycle matroid (circuits = cycles) or bond matroid (circuits = minimal cuts) of a graph,
/// with the edge labels as ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMatroid {
    graph: Graph,
    mode: GraphMode,
    ground: Vec<String>,
}

impl GraphMatroid {
    pub fn new(graph: Graph, mode: GraphMode) -> Self {
        let ground = graph.edge_labels();
        GraphMatroid { graph, mode, ground }
    }

    pub fn cycle(graph: &Graph) -> Self {
        Self::new(graph.clone(), GraphMode::Cycle)
    }

    pub fn bond(graph: &Graph) -> Self {
        Self::new(graph.clone(), GraphMode::Bond)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn mode(&self) -> GraphMode {
        self.mode
    }
}

impl Matroid for GraphMatroid {
    fn ground(&self) -> &[String] {
        &self.ground
    }

    fn rank(&self) -> usize {
        let forest = self.graph.vertex_count() - self.graph.components().1;
        match self.mode {
            GraphMode::Cycle => forest,
            GraphMode::Bond => self.graph.edge_count() - forest,
        }
    }

    fn circuits(&self, limits: &Limits) -> Result<CircuitFamily, MatroidError> {
        if self.ground.len() > 64 {
            return Err(ScaleExceeded::new("graph edge count", self.ground.len() as u64, 64).into());
        }
        let masks = match self.mode {
            GraphMode::Cycle => self.graph.cycles(limits)?,
            GraphMode::Bond => self.graph.bonds(limits)?,
        };
        Ok(CircuitFamily {
            ground: self.ground.clone(),
            masks,
        })
    }
}

/// Signed vertex/edge incidence matrix of a graph: `+1` at the first endpoint, `-1` at the
/// second, zero columns for loops.
pub fn graph_incidence_matrix(g: &Graph, field: FieldTag) -> ExactMatrix {
    let mut m = ExactMatrix::zeros_labelled(field, g.vertex_labels().to_vec(), g.edge_labels());
    for (j, e) in g.edges().iter().enumerate() {
        if !e.is_loop() {
            m.set(e.u, j, field.from_i64(1));
            m.set(e.v, j, field.from_i64(-1));
        }
    }
    m
}

/// Vector representation of the cycle matroid of `g`.
pub fn cycle_matroid_rep(g: &Graph, field: FieldTag) -> VectorMatroid {
    VectorMatroid::new(graph_incidence_matrix(g, field))
}

/// The dual matroid M*(C) over `field`, represented by a null-space basis of the
/// edge/face incidence matrix.
pub fn dual_matroid(c: &DirectedComplex, field: FieldTag) -> VectorMatroid {
    VectorMatroid::new(c.incidence_matrix(field).null_space_basis())
}

/// Which side of a comparison a distinguishing circuit came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// A circuit of one matroid that is not a circuit of the other, or `None` if the
/// circuit families coincide.
pub fn circuit_difference(
    m1: &dyn Matroid,
    m2: &dyn Matroid,
    limits: &Limits,
) -> Result<Option<(Side, Vec<String>)>, MatroidError> {
    let c1 = m1.circuits(limits)?;
    let c2 = m2.circuits(limits)?.remap(m1.ground())?;
    if let Some(&m) = c1.masks.difference(&c2.masks).next() {
        return Ok(Some((Side::Left, c1.labels(m))));
    }
    if let Some(&m) = c2.masks.difference(&c1.masks).next() {
        return Ok(Some((Side::Right, c1.labels(m))));
    }
    Ok(None)
}

/// Equality of matroids on the same ground set, by comparing circuit families both ways.
pub fn matroids_equal(m1: &dyn Matroid, m2: &dyn Matroid, limits: &Limits) -> Result<bool, MatroidError> {
    permutation(m1.ground(), m2.ground())?;
    if m1.rank() != m2.rank() {
        return Ok(false);
    }
    Ok(circuit_difference(m1, m2, limits)?.is_none())
}

/// The GF(2) matrix with the support pattern of the standard form of `m`, if it
/// represents the same matroid.
pub fn binary_candidate(m: &VectorMatroid, limits: &Limits) -> Result<Option<VectorMatroid>, MatroidError> {
    let support = support_matrix(m);
    let candidate = VectorMatroid::new(support);
    if matroids_equal(m, &candidate, limits)? {
        Ok(Some(candidate))
    } else {
        Ok(None)
    }
}

fn support_matrix(m: &VectorMatroid) -> ExactMatrix {
    let rref = m.rep.rank_and_rref();
    let rows: Vec<usize> = (0..rref.rank).collect();
    let std_form = rref.matrix.select_rows(&rows);
    let mut s = ExactMatrix::zeros_labelled(FieldTag::GF2, std_form.row_labels().to_vec(), m.ground.clone());
    for i in 0..std_form.nrows() {
        for j in 0..std_form.ncols() {
            if !std_form.get(i, j).is_zero() {
                s.set(i, j, Scalar::Mod(1));
            }
        }
    }
    s
}

/// Connected components of the matroid (loops and coloops are singletons), from the
/// fundamental-circuit incidence of a pivot basis. Sorted by least element.
pub fn components(m: &VectorMatroid) -> Vec<Vec<usize>> {
    let rref = m.rep.rank_and_rref();
    let n = m.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for (i, &pc) in rref.pivot_cols.iter().enumerate() {
        for j in 0..n {
            if j != pc && !rref.matrix.get(i, j).is_zero() {
                let (a, b) = (find(&mut parent, pc), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|g| g[0]);
    out
}

/// A graph realizing a matroid: `edge_of[i]` is the edge carrying ground element `i`
/// (edge labels are the ground labels).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub graph: Graph,
    pub edge_of: Vec<usize>,
}

/// Finds a graph whose cycle matroid equals `m`, or `None` if `m` is not graphic.
///
/// Loops become loops at a hub vertex. Each connected component with at least two
/// elements is realized by a 2-connected graph, found as a family of `rank + 1`
/// cocircuits (its vertex stars) covering every element exactly twice; candidates are
/// confirmed by comparing circuit families. Components are glued at the hub.
pub fn graph_realization(m: &VectorMatroid, limits: &Limits) -> Result<Option<Realization>, MatroidError> {
    check_ground_size(m.len(), limits)?;
    let Some(binary) = binary_candidate(m, limits)? else {
        return Ok(None);
    };
    let loops: BTreeSet<usize> = binary.loops().into_iter().collect();
    let mut g = Graph::new();
    let hub = g.add_vertex("g0").expect("fresh graph");
    let mut edge_at: Vec<Option<(usize, usize)>> = vec![None; m.len()];
    for &l in &loops {
        edge_at[l] = Some((hub, hub));
    }
    for comp in components(&binary) {
        if comp.len() == 1 && loops.contains(&comp[0]) {
            continue;
        }
        if comp.len() == 1 {
            let v = g.add_vertex(format!("g{}", g.vertex_count())).expect("fresh label");
            edge_at[comp[0]] = Some((hub, v));
            continue;
        }
        let sub = binary.restriction_at(&comp);
        let Some(local) = realize_connected(&sub, limits)? else {
            return Ok(None);
        };
        // vertex 0 of the local graph is identified with the hub
        let mut map = vec![hub; local.vertex_count()];
        for (i, slot) in map.iter_mut().enumerate().skip(1) {
            let _ = i;
            *slot = g.add_vertex(format!("g{}", g.vertex_count())).expect("fresh label");
        }
        for (k, &elem) in comp.iter().enumerate() {
            let e = local.edge(k);
            edge_at[elem] = Some((map[e.u], map[e.v]));
        }
    }
    let mut edge_of = Vec::with_capacity(m.len());
    for (i, ends) in edge_at.iter().enumerate() {
        let (u, v) = ends.ok_or_else(|| MatroidError::Internal(format!("element {i} unplaced")))?;
        edge_of.push(g.add_edge(m.ground[i].clone(), u, v).expect("unique ground labels"));
    }
    if !matroids_equal(m, &GraphMatroid::cycle(&g), limits)? {
        return Err(MatroidError::Internal(
            "assembled realization differs from the input matroid".into(),
        ));
    }
    Ok(Some(Realization { graph: g, edge_of }))
}

/// Realizes a connected binary matroid with at least two elements; edges of the
/// returned graph follow the ground order.
fn realize_connected(m: &VectorMatroid, limits: &Limits) -> Result<Option<Graph>, MatroidError> {
    let n = m.len();
    let target = m.circuits(limits)?;
    let cocircuits: Vec<u64> = m.dual().circuits(limits)?.masks.into_iter().collect();
    let need = m.rank() + 1;
    let mut budget = Budget::new(limits, "graph realization search");
    let mut cover = vec![0u8; n];
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    let full = |cover: &[u8]| -> u64 {
        cover
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= 2)
            .fold(0u64, |acc, (i, _)| acc | (1 << i))
    };

    #[allow(clippy::too_many_arguments)]
    fn search(
        n: usize,
        need: usize,
        cocircuits: &[u64],
        cover: &mut Vec<u8>,
        chosen: &mut Vec<(usize, usize)>,
        target: &CircuitFamily,
        ground: &[String],
        full: &dyn Fn(&[u8]) -> u64,
        budget: &mut Budget,
        limits: &Limits,
    ) -> Result<Option<Graph>, MatroidError> {
        budget.spend(1)?;
        let deficit: usize = cover.iter().map(|&c| 2 - c as usize).sum();
        if chosen.len() == need {
            if deficit != 0 {
                return Ok(None);
            }
            let g = star_graph(n, chosen.iter().map(|&(i, _)| cocircuits[i]), ground);
            let cycles = GraphMatroid::cycle(&g).circuits(limits)?;
            return Ok((cycles.masks == target.masks).then_some(g));
        }
        let Some(first) = (0..n).find(|&i| cover[i] < 2) else {
            return Ok(None);
        };
        let saturated = full(cover);
        for (ci, &c) in cocircuits.iter().enumerate() {
            if c & (1 << first) == 0 || c & saturated != 0 {
                continue;
            }
            // both covers of an element chosen on its behalf: keep them ordered
            if chosen.last().is_some_and(|&(last, pivot)| pivot == first && ci < last) {
                continue;
            }
            for i in 0..n {
                if c & (1 << i) != 0 {
                    cover[i] += 1;
                }
            }
            chosen.push((ci, first));
            let found = search(n, need, cocircuits, cover, chosen, target, ground, full, budget, limits)?;
            chosen.pop();
            for i in 0..n {
                if c & (1 << i) != 0 {
                    cover[i] -= 1;
                }
            }
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    search(
        n,
        need,
        &cocircuits,
        &mut cover,
        &mut chosen,
        &target,
        &m.ground,
        &full,
        &mut budget,
        limits,
    )
}

/// Graph whose vertices are the given stars; element `i` joins the two stars containing it.
fn star_graph(n: usize, stars: impl Iterator<Item = u64>, ground: &[String]) -> Graph {
    let stars: Vec<u64> = stars.collect();
    let mut g = Graph::new();
    for i in 0..stars.len() {
        g.add_vertex(format!("s{i}")).expect("fresh label");
    }
    for (i, label) in ground.iter().enumerate().take(n) {
        let ends: Vec<usize> = (0..stars.len()).filter(|&s| stars[s] & (1 << i) != 0).collect();
        g.add_edge(label.clone(), ends[0], ends[1]).expect("unique labels");
    }
    g
}

/// A bijection of ground sets (`map[i]` = index in `m2` of element `i` of `m1`) carrying
/// circuits onto circuits, if one exists. The identity on labels is tried first.
pub fn matroid_isomorphic(
    m1: &dyn Matroid,
    m2: &dyn Matroid,
    limits: &Limits,
) -> Result<Option<Vec<usize>>, MatroidError> {
    let n = m1.ground().len();
    if n != m2.ground().len() || m1.rank() != m2.rank() {
        return Ok(None);
    }
    let c1 = m1.circuits(limits)?;
    let c2 = m2.circuits(limits)?;
    if c1.len() != c2.len() {
        return Ok(None);
    }
    if let Ok(perm) = permutation(m1.ground(), m2.ground()) {
        if c1.remap(m2.ground())?.masks == c2.masks {
            return Ok(Some(perm));
        }
    }
    // per-element signature: circuit counts by size
    let signature = |fam: &CircuitFamily, i: usize| -> Vec<usize> {
        let mut s = vec![0; n + 1];
        for &m in &fam.masks {
            if m & (1 << i) != 0 {
                s[m.count_ones() as usize] += 1;
            }
        }
        s
    };
    let sig1: Vec<Vec<usize>> = (0..n).map(|i| signature(&c1, i)).collect();
    let sig2: Vec<Vec<usize>> = (0..n).map(|i| signature(&c2, i)).collect();
    let mut budget = Budget::new(limits, "isomorphism search");
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn extend(
        i: usize,
        n: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sig1: &[Vec<usize>],
        sig2: &[Vec<usize>],
        c1: &CircuitFamily,
        c2: &CircuitFamily,
        budget: &mut Budget,
    ) -> Result<bool, ScaleExceeded> {
        budget.spend(1)?;
        // every circuit of m1 inside the mapped prefix must land on a circuit of m2
        let prefix: u64 = if i >= 64 { u64::MAX } else { (1u64 << i) - 1 };
        for &c in &c1.masks {
            if c & !prefix == 0 && c & (1 << (i.max(1) - 1)) != 0 {
                let image = (0..i)
                    .filter(|j| c & (1 << j) != 0)
                    .fold(0u64, |a, j| a | (1 << map[j]));
                if !c2.masks.contains(&image) {
                    return Ok(false);
                }
            }
        }
        if i == n {
            return Ok(true);
        }
        for j in 0..n {
            if used[j] || sig1[i] != sig2[j] {
                continue;
            }
            used[j] = true;
            map[i] = j;
            if extend(i + 1, n, map, used, sig1, sig2, c1, c2, budget)? {
                return Ok(true);
            }
            used[j] = false;
            map[i] = usize::MAX;
        }
        Ok(false)
    }

    if extend(0, n, &mut map, &mut used, &sig1, &sig2, &c1, &c2, &mut budget)? {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn realizes_triangle_with_doubled_edges_in_any_column_order() {
        let rep = ExactMatrix::from_i64(FieldTag::GF3, &[vec![-1, 1, 0, 1, -1], vec![-1, 0, -1, 1, 0]]);
        let m = VectorMatroid::new(rep);
        let r = graph_realization(&m, &lim()).unwrap().expect("graphic");
        assert_eq!(r.graph.vertex_count(), 3);
    }

    /// Oracle: minimal dependent sets by rank over all subsets.
    fn brute_circuits(m: &VectorMatroid) -> BTreeSet<u64> {
        let n = m.len();
        let mut dep: Vec<u64> = (1u64..(1 << n))
            .filter(|&s| {
                let cols: Vec<usize> = (0..n).filter(|i| s & (1 << i) != 0).collect();
                !m.is_independent(&cols)
            })
            .collect();
        dep.sort_by_key(|s| s.count_ones());
        let mut out: BTreeSet<u64> = BTreeSet::new();
        for s in dep {
            if !out.iter().any(|&c| c & s == c) {
                out.insert(s);
            }
        }
        out
    }

    fn u24() -> VectorMatroid {
        VectorMatroid::new(ExactMatrix::from_i64(
            FieldTag::Rational,
            &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]],
        ))
    }

    fn parallel_class(n: usize, f: FieldTag) -> VectorMatroid {
        VectorMatroid::new(ExactMatrix::from_i64(f, &[vec![1; n]]))
    }

    #[test]
    fn elementary_circuits_match_brute_force() {
        let mats = vec![
            u24(),
            parallel_class(4, FieldTag::GF3),
            cycle_matroid_rep(&named::complete(4), FieldTag::GF2),
            cycle_matroid_rep(&named::complete(4), FieldTag::Rational).dual(),
            VectorMatroid::new(ExactMatrix::zeros(FieldTag::GF5, 2, 3)),
            VectorMatroid::new(ExactMatrix::identity(FieldTag::GF2, 3)),
        ];
        for m in mats {
            assert_eq!(m.circuits(&lim()).unwrap().masks, brute_circuits(&m));
        }
    }

    #[test]
    fn bounded_circuits_match() {
        let m = cycle_matroid_rep(&named::complete(4), FieldTag::GF3);
        let capped = Limits {
            max_ground: 2,
            max_circuit_size: Some(3),
            ..Limits::default()
        };
        let triangles = m.circuits(&capped).unwrap();
        assert_eq!(triangles.len(), 4);
        assert!(triangles.masks.iter().all(|c| c.count_ones() == 3));
        assert!(matches!(
            m.circuits(&Limits {
                max_ground: 2,
                ..Limits::default()
            }),
            Err(MatroidError::Scale(_))
        ));
    }

    #[test]
    fn parallel_pairs_and_graph_circuits() {
        let circuits = parallel_class(4, FieldTag::Rational).circuits(&lim()).unwrap();
        assert_eq!(circuits.len(), 6);
        let c4 = named::cycle(4);
        assert_eq!(GraphMatroid::cycle(&c4).circuits(&lim()).unwrap().len(), 1);
        let bonds = GraphMatroid::bond(&c4).circuits(&lim()).unwrap();
        assert_eq!(bonds.len(), 6);
        assert_eq!(GraphMatroid::bond(&c4).rank(), 1);
    }

    #[test]
    fn restriction_cases() {
        let m = parallel_class(4, FieldTag::GF2)
            .rep()
            .clone()
            .with_col_labels(vec!["a".into(), "b".into(), "c".into(), "d".into()])
            .map(VectorMatroid::new)
            .unwrap();
        let empty: [&str; 0] = [];
        assert_eq!(m.restriction(&empty).unwrap().len(), 0);
        let all = m.restriction(&["a", "b", "c", "d"]).unwrap();
        assert!(matroids_equal(&m, &all, &lim()).unwrap());
        let three = m.restriction(&["a", "b", "c"]).unwrap();
        assert_eq!(three.rank(), 1);
        assert_eq!(three.circuits(&lim()).unwrap().len(), 3);
        assert_eq!(m.restriction(&["z"]), Err(MatroidError::UnknownElement("z".into())));
    }

    #[test]
    fn equality_examples() {
        let c3 = named::cycle(3);
        let bond = GraphMatroid::bond(&c3);
        let par = VectorMatroid::new(
            ExactMatrix::from_i64(FieldTag::GF2, &[vec![1, 1, 1]])
                .with_col_labels(c3.edge_labels())
                .unwrap(),
        );
        assert!(matroids_equal(&bond, &par, &lim()).unwrap());
        assert!(matroids_equal(&par, &par, &lim()).unwrap());

        let k5 = named::complete(5);
        let loops = VectorMatroid::new(ExactMatrix::zeros_labelled(FieldTag::GF2, vec![], k5.edge_labels()));
        assert!(!matroids_equal(&loops, &GraphMatroid::bond(&k5), &lim()).unwrap());
        assert_eq!(GraphMatroid::bond(&k5).rank(), 6);

        let other = VectorMatroid::new(ExactMatrix::zeros(FieldTag::GF2, 0, 3));
        assert_eq!(matroids_equal(&par, &other, &lim()), Err(MatroidError::GroundMismatch));
    }

    #[test]
    fn binary_gate() {
        assert!(binary_candidate(&u24(), &lim()).unwrap().is_none());
        let q = parallel_class(4, FieldTag::Rational);
        let b = binary_candidate(&q, &lim()).unwrap().unwrap();
        assert_eq!(b.field(), FieldTag::GF2);
        assert!(matroids_equal(&q, &b, &lim()).unwrap());
        let g2 = cycle_matroid_rep(&named::complete(4), FieldTag::GF2);
        let b2 = binary_candidate(&g2, &lim()).unwrap().unwrap();
        assert!(matroids_equal(&g2, &b2, &lim()).unwrap());
    }

    #[test]
    fn realization_examples() {
        let loops = VectorMatroid::new(ExactMatrix::zeros(FieldTag::GF2, 0, 10));
        let r = graph_realization(&loops, &lim()).unwrap().unwrap();
        assert_eq!((r.graph.vertex_count(), r.graph.edge_count()), (1, 10));
        assert!(r.graph.edges().iter().all(|e| e.is_loop()));

        let par = parallel_class(4, FieldTag::Rational);
        let r = graph_realization(&par, &lim()).unwrap().unwrap();
        assert_eq!(r.graph.vertex_count(), 2);
        assert!(r.graph.edges().iter().all(|e| !e.is_loop()));

        assert!(graph_realization(&u24(), &lim()).unwrap().is_none());
        let k5_bond = cycle_matroid_rep(&named::complete(5), FieldTag::GF2).dual();
        assert!(graph_realization(&k5_bond, &lim()).unwrap().is_none());

        let k4 = cycle_matroid_rep(&named::complete(4), FieldTag::GF3);
        let r = graph_realization(&k4, &lim()).unwrap().unwrap();
        assert!(matroids_equal(&k4, &GraphMatroid::cycle(&r.graph), &lim()).unwrap());
        // K4 is self-dual as a matroid
        let r = graph_realization(&k4.dual(), &lim()).unwrap().unwrap();
        assert_eq!(r.graph.vertex_count(), 4);
    }

    #[test]
    fn realization_of_disconnected_matroid() {
        // two triangles sharing nothing, a bridge, and a loop
        let g = Graph::from_labels(
            &["a", "b", "c", "x", "y", "z", "p", "q"],
            &[
                ("1", "a", "b"),
                ("2", "b", "c"),
                ("3", "c", "a"),
                ("4", "x", "y"),
                ("5", "y", "z"),
                ("6", "z", "x"),
                ("7", "p", "q"),
                ("8", "p", "p"),
            ],
        )
        .unwrap();
        let m = cycle_matroid_rep(&g, FieldTag::GF5);
        assert_eq!(components(&m).len(), 4);
        let r = graph_realization(&m, &lim()).unwrap().unwrap();
        assert!(r.graph.is_connected());
        assert!(matroids_equal(&m, &GraphMatroid::cycle(&r.graph), &lim()).unwrap());
    }

    #[test]
    fn isomorphism_examples() {
        let m = cycle_matroid_rep(&named::complete(4), FieldTag::GF2);
        let id = matroid_isomorphic(&m, &m, &lim()).unwrap().unwrap();
        assert_eq!(id, (0..6).collect::<Vec<_>>());
        let two_loops = VectorMatroid::new(ExactMatrix::zeros(FieldTag::GF2, 0, 2));
        let pair = parallel_class(2, FieldTag::GF2);
        assert!(matroid_isomorphic(&two_loops, &pair, &lim()).unwrap().is_none());
        // relabelled K4: found by search
        let relabelled = VectorMatroid::new(
            m.rep()
                .clone()
                .with_col_labels((0..6).map(|i| format!("x{i}")).collect())
                .unwrap(),
        );
        let map = matroid_isomorphic(&m, &relabelled, &lim()).unwrap().unwrap();
        assert_eq!(map.len(), 6);
        // C4 vs a path: same size, different structure
        let path = Graph::from_labels(
            &["1", "2", "3", "4", "5"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "4", "5")],
        )
        .unwrap();
        assert!(matroid_isomorphic(
            &GraphMatroid::cycle(&named::cycle(4)),
            &GraphMatroid::cycle(&path),
            &lim()
        )
        .unwrap()
        .is_none());
    }
}
