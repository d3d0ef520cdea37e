//! Sparse families and the three-dimensional MacLane criterion: the cycle space of the
//! faces (null space of the incidence matrix) has a generating family in which every
//! coordinate is either zero throughout or carries exactly one `1` and one `-1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{ExactMatrix, FieldTag, Scalar};
use crate::complex::DirectedComplex;
use crate::graph::Graph;
use crate::limits::Limits;
use crate::matroid::{dual_matroid, graph_incidence_matrix, graph_realization, Matroid, MatroidError, VectorMatroid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MaclaneError {
    #[error("family is not sparse at coordinate {coordinate:?}: {reason}")]
    NotSparse { coordinate: String, reason: String },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseFamily {
    pub field: FieldTag,
    /// Coordinate labels.
    pub labels: Vec<String>,
    /// Vector names, in family order.
    pub names: Vec<String>,
    pub vectors: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseViolation {
    pub coordinate: String,
    pub reason: String,
}

impl SparseFamily {
    /// The first coordinate where the family is not sparse.
    pub fn first_violation(&self) -> Option<SparseViolation> {
        let f = self.field;
        for (j, label) in self.labels.iter().enumerate() {
            let nonzero: Vec<&Scalar> = self.vectors.iter().map(|v| &v[j]).filter(|x| !x.is_zero()).collect();
            let reason = match nonzero.as_slice() {
                [] => continue,
                [a, b] => {
                    let ok = (a.is_one() && b.is_minus_one(f)) || (a.is_minus_one(f) && b.is_one());
                    if ok {
                        continue;
                    }
                    format!("entries {a} and {b} are not 1 and -1")
                }
                other => format!("{} non-zero entries", other.len()),
            };
            return Some(SparseViolation {
                coordinate: label.clone(),
                reason,
            });
        }
        None
    }

    pub fn is_sparse(&self) -> bool {
        self.first_violation().is_none()
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        ExactMatrix::new(
            self.field,
            self.names.clone(),
            self.labels.clone(),
            self.vectors.clone(),
        )
        .unwrap_or_else(|_| ExactMatrix::zeros_labelled(self.field, vec![], self.labels.clone()))
    }

    /// Vectors as (name, [(coordinate, value)]) with only the non-zero entries.
    pub fn sparse_entries(&self) -> Vec<(String, Vec<(String, String)>)> {
        self.names
            .iter()
            .zip(&self.vectors)
            .map(|(n, v)| {
                (
                    n.clone(),
                    v.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(j, x)| (self.labels[j].clone(), x.to_string()))
                        .collect(),
                )
            })
            .collect()
    }
}

/// Signed vertex stars: `+1` where the edge leaves the vertex, `-1` where it arrives,
/// zero for loops.
pub fn sparse_set_from_graph(g: &Graph, field: FieldTag) -> SparseFamily {
    let m = graph_incidence_matrix(g, field);
    SparseFamily {
        field,
        labels: g.edge_labels(),
        names: g.vertex_labels().to_vec(),
        vectors: m.rows().map(<[Scalar]>::to_vec).collect(),
    }
}

/// One vertex per vector; each coordinate becomes an edge from the vector holding `1`
/// to the vector holding `-1` (over GF(2), from the earlier to the later one). All-zero
/// coordinates become loops at the first vector, or at a sink vertex for an empty family.
/// Returns the graph and, per coordinate, its edge.
pub fn graph_from_sparse_set(fam: &SparseFamily) -> Result<(Graph, Vec<usize>), MaclaneError> {
    if let Some(v) = fam.first_violation() {
        return Err(MaclaneError::NotSparse {
            coordinate: v.coordinate,
            reason: v.reason,
        });
    }
    let mut g = Graph::new();
    for (i, name) in fam.names.iter().enumerate() {
        if g.add_vertex(name.clone()).is_err() {
            g.add_vertex(format!("{name}#{i}")).expect("disambiguated");
        }
    }
    let sink = if fam.vectors.is_empty() {
        g.add_vertex("sink").expect("fresh graph")
    } else {
        0
    };
    let f = fam.field;
    let mut edge_of = Vec::with_capacity(fam.labels.len());
    for (j, label) in fam.labels.iter().enumerate() {
        let nz: Vec<usize> = (0..fam.vectors.len())
            .filter(|&i| !fam.vectors[i][j].is_zero())
            .collect();
        let (u, v) = match nz.as_slice() {
            [] => (sink, sink),
            [a, b] if f == FieldTag::GF2 || fam.vectors[*a][j].is_one() => (*a, *b),
            [a, b] => (*b, *a),
            _ => unreachable!("sparsity checked"),
        };
        edge_of.push(g.add_edge(label.clone(), u, v).map_err(|_| MaclaneError::NotSparse {
            coordinate: label.clone(),
            reason: "duplicate coordinate label".into(),
        })?);
    }
    Ok((g, edge_of))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaclaneVerdict {
    /// Whether the matroid of the space is graphic.
    pub graphic: bool,
    /// The realizing graph, when graphic.
    pub graph: Option<Graph>,
    /// A sparse generating set, when one was obtained from the realizing graph.
    pub family: Option<SparseFamily>,
}

/// Decides whether the cycle space of the faces admits a sparse generating set.
pub fn maclane_check(c: &DirectedComplex, k: FieldTag, limits: &Limits) -> Result<MaclaneVerdict, MaclaneError> {
    maclane_check_matroid(&dual_matroid(c, k), limits)
}

/// The same question for the row space of an arbitrary representation.
///
/// A realizing graph gives signed stars spanning the right space after rescaling each
/// coordinate; the scaling is solved for exactly and must consist of `±1` entries.
pub fn maclane_check_matroid(m: &VectorMatroid, limits: &Limits) -> Result<MaclaneVerdict, MaclaneError> {
    let Some(real) = graph_realization(m, limits)? else {
        return Ok(MaclaneVerdict {
            graphic: false,
            graph: None,
            family: None,
        });
    };
    let f = m.field();
    let stars = sparse_set_from_graph(&real.graph, f);
    // stars are indexed by edges of the realization; move them onto the ground order
    let n = m.len();
    let reorder = |v: &Vec<Scalar>| -> Vec<Scalar> { (0..n).map(|i| v[real.edge_of[i]].clone()).collect() };
    let star_vectors: Vec<Vec<Scalar>> = stars.vectors.iter().map(reorder).collect();
    let complement = m.rep().null_space_basis();
    // scaling d with (s_b * d) orthogonal to every row a of the complement
    let mut rows = Vec::new();
    for s in &star_vectors {
        for a in complement.rows() {
            rows.push((0..n).map(|j| f.mul(&a[j], &s[j])).collect::<Vec<_>>());
        }
    }
    let family = if rows.is_empty() {
        Some(vec![f.one(); n])
    } else {
        let k = ExactMatrix::new(
            f,
            (0..rows.len()).map(|i| format!("k{i}")).collect(),
            m.ground().to_vec(),
            rows,
        )
        .expect("well-formed");
        let null = k.null_space_basis();
        let mut d = vec![f.zero(); n];
        for row in null.rows() {
            for (j, x) in row.iter().enumerate() {
                d[j] = f.add(&d[j], x);
            }
        }
        d.iter().all(|x| x.is_one() || x.is_minus_one(f)).then_some(d)
    }
    .map(|d| SparseFamily {
        field: f,
        labels: m.ground().to_vec(),
        names: stars.names.clone(),
        vectors: star_vectors
            .iter()
            .map(|s| (0..n).map(|j| f.mul(&s[j], &d[j])).collect())
            .collect(),
    })
    .filter(|fam| generates(fam, m));
    Ok(MaclaneVerdict {
        graphic: true,
        graph: Some(real.graph),
        family,
    })
}

/// Sparse, inside the row space of `m`'s representation, and spanning it.
fn generates(fam: &SparseFamily, m: &VectorMatroid) -> bool {
    if !fam.is_sparse() {
        return false;
    }
    let f = fam.field;
    let mut stacked: Vec<Vec<Scalar>> = m.rep().rows().map(<[Scalar]>::to_vec).collect();
    let base = crate::algebra::rank_of_rows(f, stacked.clone());
    let own = crate::algebra::rank_of_rows(f, fam.vectors.clone());
    stacked.extend(fam.vectors.iter().cloned());
    base == m.rank() && own == base && crate::algebra::rank_of_rows(f, stacked) == base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{validate, RawComplex};
    use crate::graph::named;
    use crate::matroid::{cycle_matroid_rep, matroids_equal, GraphMatroid};

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn sparse_family_examples() {
        let f = FieldTag::Rational;
        let empty = SparseFamily {
            field: f,
            labels: vec!["x".into()],
            names: vec![],
            vectors: vec![],
        };
        assert!(empty.is_sparse());
        let ok = SparseFamily {
            field: f,
            labels: vec!["1".into(), "2".into()],
            names: vec!["a".into(), "b".into()],
            vectors: vec![vec![f.from_i64(1), f.from_i64(1)], vec![f.from_i64(-1), f.from_i64(-1)]],
        };
        assert!(ok.is_sparse());
        let bad = SparseFamily {
            vectors: vec![vec![f.from_i64(1), f.zero()], vec![f.from_i64(1), f.zero()]],
            ..ok.clone()
        };
        assert_eq!(bad.first_violation().unwrap().coordinate, "1");
        let gf2 = SparseFamily {
            field: FieldTag::GF2,
            vectors: vec![
                vec![Scalar::Mod(1), Scalar::Mod(0)],
                vec![Scalar::Mod(1), Scalar::Mod(0)],
            ],
            ..ok
        };
        assert!(gf2.is_sparse());
    }

    #[test]
    fn stars_of_small_graphs() {
        let fam = sparse_set_from_graph(&named::bouquet(3), FieldTag::GF3);
        assert!(fam.vectors.iter().all(|v| v.iter().all(Scalar::is_zero)));
        let (g, _) = graph_from_sparse_set(&fam).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 3));

        let fam = sparse_set_from_graph(&named::parallel(4), FieldTag::Rational);
        assert_eq!(fam.vectors[0], vec![FieldTag::Rational.from_i64(1); 4]);
        assert_eq!(fam.vectors[1], vec![FieldTag::Rational.from_i64(-1); 4]);
        let (g, _) = graph_from_sparse_set(&fam).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 4));

        let tri = named::cycle(3);
        let fam = sparse_set_from_graph(&tri, FieldTag::GF5);
        assert!(fam.is_sparse());
        let (g, _) = graph_from_sparse_set(&fam).unwrap();
        assert!(matroids_equal(&GraphMatroid::cycle(&g), &GraphMatroid::cycle(&tri), &lim()).unwrap());
    }

    #[test]
    fn all_zero_family_becomes_loops() {
        let fam = SparseFamily {
            field: FieldTag::GF2,
            labels: vec!["a".into(), "b".into(), "c".into()],
            names: vec![],
            vectors: vec![],
        };
        let (g, _) = graph_from_sparse_set(&fam).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 3));
        assert!(g.edges().iter().all(|e| e.is_loop()));
    }

    #[test]
    fn matroid_level_checks() {
        let u24 = VectorMatroid::new(ExactMatrix::from_i64(
            FieldTag::Rational,
            &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]],
        ));
        assert!(!maclane_check_matroid(&u24, &lim()).unwrap().graphic);
        for f in FieldTag::standard() {
            let k4 = cycle_matroid_rep(&named::complete(4), f);
            let v = maclane_check_matroid(&k4, &lim()).unwrap();
            assert!(v.graphic);
            assert!(v.family.unwrap().is_sparse());
        }
        // a space whose matroid is graphic but which needs a non-unit rescaling
        let skew = VectorMatroid::new(ExactMatrix::from_i64(FieldTag::Rational, &[vec![1, 2]]));
        let v = maclane_check_matroid(&skew, &lim()).unwrap();
        assert!(v.graphic);
        assert!(v.family.is_none());
    }

    #[test]
    fn complexes() {
        let tet = validate(&RawComplex::from_triangles(
            &[0, 1, 2, 3],
            &[[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]],
        ))
        .unwrap();
        for f in FieldTag::standard() {
            let v = maclane_check(&tet, f, &lim()).unwrap();
            let g = v.graph.unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (2, 4));
            assert!(v.family.unwrap().is_sparse());
        }
        let mut faces = Vec::new();
        for i in 1..=5 {
            for j in (i + 1)..=5 {
                faces.push([0, i, j]);
            }
        }
        let cone = validate(&RawComplex::from_triangles(&[0, 1, 2, 3, 4, 5], &faces)).unwrap();
        let v = maclane_check(&cone, FieldTag::GF2, &lim()).unwrap();
        assert!(v.graphic);
        let fam = v.family.unwrap();
        assert!(fam.vectors.iter().all(|x| x.iter().all(Scalar::is_zero)));
    }
}
