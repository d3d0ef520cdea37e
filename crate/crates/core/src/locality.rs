//! The two local hypotheses: k-locality and local 2-connectivity, plus the per-vertex
//! dual graph `G_v`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::FieldTag;
use crate::complex::DirectedComplex;
use crate::graph::Graph;
use crate::limits::Limits;
use crate::matroid::{circuit_difference, dual_matroid, GraphMatroid, Matroid, MatroidError, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalityError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("graph edge {0:?} does not name a face of the complex")]
    ForeignEdge(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// Where a distinguishing circuit lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSide {
    /// A bond of the link graph that is not a circuit of the restriction.
    LinkBondMatroid,
    /// A circuit of the restricted dual matroid that is not a bond of the link graph.
    RestrictedDualMatroid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityWitness {
    pub side: WitnessSide,
    pub circuit: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexLocality {
    pub vertex: String,
    pub faces_at_vertex: Vec<String>,
    pub link_matroid_rank: usize,
    pub restriction_rank: usize,
    pub equal: bool,
    pub witness: Option<LocalityWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityReport {
    pub field: FieldTag,
    pub vertices: Vec<VertexLocality>,
}

impl LocalityReport {
    pub fn is_local(&self) -> bool {
        self.vertices.iter().all(|v| v.equal)
    }

    pub fn first_failure(&self) -> Option<&VertexLocality> {
        self.vertices.iter().find(|v| !v.equal)
    }
}

/// `g` with only the edges whose faces contain `v`; edges of `g` are labelled by face keys.
pub fn g_v(g: &Graph, c: &DirectedComplex, v: &str, keep_isolated: bool) -> Result<Graph, LocalityError> {
    let vi = c
        .vertex_index(v)
        .map_err(|_| LocalityError::UnknownVertex(v.to_string()))?;
    g_v_at(g, c, vi, keep_isolated)
}

pub(crate) fn g_v_at(g: &Graph, c: &DirectedComplex, v: usize, keep_isolated: bool) -> Result<Graph, LocalityError> {
    let mut keep = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let f = c
            .face_index(&e.label)
            .map_err(|_| LocalityError::ForeignEdge(e.label.clone()))?;
        if c.face(f).contains_vertex(v) {
            keep.push(i);
        }
    }
    Ok(g.edge_subgraph(&keep, keep_isolated))
}

/// Compares, at every vertex, the bond matroid of the link graph with the dual matroid
/// restricted to the faces at that vertex. Link edges carry the face keys, so the two
/// ground sets coincide literally.
pub fn is_k_local(c: &DirectedComplex, k: FieldTag, limits: &Limits) -> Result<LocalityReport, LocalityError> {
    let dual = dual_matroid(c, k);
    let mut vertices = Vec::with_capacity(c.vertex_count());
    for v in 0..c.vertex_count() {
        let faces: Vec<String> = c.faces_at_vertex(v).into_iter().map(|f| c.face(f).key()).collect();
        let link = c.link_graph_at(v);
        let bond = GraphMatroid::bond(&link.graph);
        let restriction = dual.restriction(&faces)?;
        let diff = circuit_difference(&bond, &restriction, limits)?;
        let witness = diff.map(|(side, circuit)| LocalityWitness {
            side: match side {
                Side::Left => WitnessSide::LinkBondMatroid,
                Side::Right => WitnessSide::RestrictedDualMatroid,
            },
            circuit,
        });
        vertices.push(VertexLocality {
            vertex: c.vertex_label(v).to_string(),
            faces_at_vertex: faces,
            link_matroid_rank: bond.rank(),
            restriction_rank: restriction.rank(),
            equal: witness.is_none(),
            witness,
        });
    }
    Ok(LocalityReport { field: k, vertices })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkConnectivity {
    pub vertex: String,
    pub two_connected: bool,
}

/// 2-connectivity of every link graph, in vertex order. With `allow_two_vertex`, a link on
/// two vertices joined by at least two parallel edges also counts.
pub fn is_locally_2connected(c: &DirectedComplex, allow_two_vertex: bool) -> Vec<LinkConnectivity> {
    c.link_graphs()
        .into_iter()
        .map(|l| LinkConnectivity {
            vertex: l.host_label,
            two_connected: l.graph.is_two_connected(allow_two_vertex),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{validate, RawComplex};

    fn tetra() -> DirectedComplex {
        validate(&RawComplex::from_triangles(
            &[0, 1, 2, 3],
            &[[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]],
        ))
        .unwrap()
    }

    fn octa() -> DirectedComplex {
        // north 0, south 5, equator 1..4
        let mut faces = Vec::new();
        for i in 0..4 {
            let a = 1 + i;
            let b = 1 + (i + 1) % 4;
            faces.push([0, a, b]);
            faces.push([5, b, a]);
        }
        validate(&RawComplex::from_triangles(&[0, 1, 2, 3, 4, 5], &faces)).unwrap()
    }

    fn cone_k5() -> DirectedComplex {
        let mut faces = Vec::new();
        for i in 1..=5 {
            for j in (i + 1)..=5 {
                faces.push([0, i, j]);
            }
        }
        validate(&RawComplex::from_triangles(&[0, 1, 2, 3, 4, 5], &faces)).unwrap()
    }

    #[test]
    fn tetrahedron_and_octahedron_are_local() {
        for k in FieldTag::standard() {
            let r = is_k_local(&tetra(), k, &Limits::default()).unwrap();
            assert!(r.is_local());
            assert!(r
                .vertices
                .iter()
                .all(|v| v.link_matroid_rank == 1 && v.faces_at_vertex.len() == 3));
            let r = is_k_local(&octa(), k, &Limits::default()).unwrap();
            assert!(r.is_local());
            assert!(r
                .vertices
                .iter()
                .all(|v| v.restriction_rank == 1 && v.faces_at_vertex.len() == 4));
        }
    }

    #[test]
    fn cone_fails_at_apex_only() {
        let r = is_k_local(&cone_k5(), FieldTag::GF3, &Limits::default()).unwrap();
        let bad = r.first_failure().unwrap();
        assert_eq!(bad.vertex, "0");
        assert_eq!((bad.link_matroid_rank, bad.restriction_rank), (6, 0));
        let w = bad.witness.as_ref().unwrap();
        assert_eq!(w.side, WitnessSide::LinkBondMatroid);
        assert!(r.vertices.iter().filter(|v| !v.equal).count() == 1);
    }

    #[test]
    fn local_connectivity_examples() {
        assert!(is_locally_2connected(&tetra(), false).iter().all(|l| l.two_connected));
        assert!(is_locally_2connected(&octa(), false).iter().all(|l| l.two_connected));
        let bowtie = validate(&RawComplex::from_triangles(&[0, 1, 2, 3, 4], &[[0, 1, 2], [0, 3, 4]])).unwrap();
        let r = is_locally_2connected(&bowtie, false);
        assert!(!r[0].two_connected);
    }

    #[test]
    fn g_v_examples() {
        let t = tetra();
        let g = Graph::from_labels(
            &["a", "b"],
            &t.face_keys().iter().map(|k| (k.as_str(), "a", "b")).collect::<Vec<_>>(),
        )
        .unwrap();
        for v in ["0", "1", "2", "3"] {
            let gv = g_v(&g, &t, v, false).unwrap();
            assert_eq!((gv.vertex_count(), gv.edge_count()), (2, 3));
        }
        assert_eq!(g_v(&g, &t, "9", false), Err(LocalityError::UnknownVertex("9".into())));

        let cone = cone_k5();
        let keys = cone.face_keys();
        let bouquet =
            Graph::from_labels(&["o"], &keys.iter().map(|k| (k.as_str(), "o", "o")).collect::<Vec<_>>()).unwrap();
        let gv = g_v(&bouquet, &cone, "0", false).unwrap();
        assert_eq!((gv.vertex_count(), gv.edge_count()), (1, 10));
        assert!(gv.same_labelled(&bouquet));
    }

    #[test]
    fn locality_ignores_orientations() {
        let t = octa();
        let flipped = t.reoriented(|e| e % 2 == 0, |f| f % 3 == 1);
        for k in [FieldTag::GF3, FieldTag::Rational] {
            assert_eq!(
                is_k_local(&t, k, &Limits::default()).unwrap().is_local(),
                is_k_local(&flipped, k, &Limits::default()).unwrap().is_local()
            );
        }
    }
}
