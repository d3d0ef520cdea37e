//! Named example complexes.
//!
//! | name | V | E | F |
//! |---|---|---|---|
//! | `triangle` | 3 | 3 | 1 |
//! | `tetrahedron` | 4 | 6 | 4 |
//! | `octahedron` | 6 | 12 | 8 |
//! | `icosahedron` | 12 | 30 | 20 |
//! | `suspension-of-cycle(n)` | n+2 | 3n | 2n |
//! | `cone(K<n>)`, `cone(C<n>)`, `cone(a-b,c-d,...)` | graph V + 1 | graph V + graph E | graph E |
//! | `book(n)` | n+2 | 2n+1 | n |
//! | `torus7` | 7 | 21 | 14 |
//! | `parallel-triangles(n)` | 3 | 3 | n |
//! | `two-tetrahedra-glued` | 5 | 9 | 7 |
//! | `two-triangles-sharing-vertex` | 5 | 6 | 2 |

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complex::{validate, ComplexError, DirectedComplex, RawComplex, RawId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown corpus name {0:?}")]
    UnknownCorpusName(String),
    #[error("bad argument for {name}: {reason}")]
    BadArgument { name: String, reason: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// The instances exercised by the test suites, by name.
pub fn standard_names() -> Vec<String> {
    let mut names: Vec<String> = ["triangle", "tetrahedron", "octahedron", "icosahedron"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    names.extend((3..=8).map(|n| format!("suspension-of-cycle({n})")));
    names.extend(
        [
            "cone(K5)",
            "cone(C4)",
            "book(3)",
            "torus7",
            "parallel-triangles(2)",
            "parallel-triangles(3)",
            "two-tetrahedra-glued",
            "two-triangles-sharing-vertex",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    names
}

/// Instances expected to be certified embeddable.
pub fn sphere_names() -> Vec<String> {
    let mut names: Vec<String> = ["tetrahedron", "octahedron", "icosahedron"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    names.extend((3..=8).map(|n| format!("suspension-of-cycle({n})")));
    names
}

pub fn corpus(name: &str) -> Result<DirectedComplex, CorpusError> {
    Ok(validate(&corpus_raw(name)?)?)
}

fn split_call(name: &str) -> (&str, Option<&str>) {
    match name.find('(') {
        Some(i) if name.ends_with(')') => (&name[..i], Some(&name[i + 1..name.len() - 1])),
        _ => (name, None),
    }
}

fn count_arg(name: &str, arg: Option<&str>, min: usize) -> Result<usize, CorpusError> {
    let bad = |reason: String| CorpusError::BadArgument {
        name: name.to_string(),
        reason,
    };
    let n: usize = arg
        .ok_or_else(|| bad("missing count".into()))?
        .trim()
        .parse()
        .map_err(|_| bad(format!("{arg:?} is not a count")))?;
    if n < min {
        return Err(bad(format!("need at least {min}")));
    }
    Ok(n)
}

pub fn corpus_raw(name: &str) -> Result<RawComplex, CorpusError> {
    let name = name.trim();
    let (head, arg) = split_call(name);
    let raw = match (head, arg) {
        ("triangle", None) => RawComplex::from_triangles(&[0, 1, 2], &[[0, 1, 2]]),
        ("tetrahedron", None) => tetrahedron(),
        ("octahedron", None) => suspension(4),
        ("icosahedron", None) => icosahedron(),
        ("suspension-of-cycle", a) => suspension(count_arg(head, a, 3)?),
        ("cone", Some(spec)) => cone(spec)?,
        ("book", a) => book(count_arg(head, a, 1)?),
        ("torus7", None) => torus7(),
        ("parallel-triangles", a) => parallel_triangles(count_arg(head, a, 1)?),
        ("two-tetrahedra-glued", None) => RawComplex::from_triangles(
            &[0, 1, 2, 3, 4],
            &[
                [0, 1, 2],
                [1, 3, 2],
                [0, 2, 3],
                [0, 3, 1],
                [0, 4, 2],
                [1, 2, 4],
                [0, 1, 4],
            ],
        ),
        ("two-triangles-sharing-vertex", None) => RawComplex::from_triangles(&[0, 1, 2, 3, 4], &[[0, 1, 2], [0, 3, 4]]),
        _ => return Err(CorpusError::UnknownCorpusName(name.to_string())),
    };
    Ok(raw)
}

fn tetrahedron() -> RawComplex {
    RawComplex::from_triangles(&[0, 1, 2, 3], &[[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]])
}

/// Ring `0..n`, north pole `n`, south pole `n + 1`.
fn suspension(n: usize) -> RawComplex {
    let vertices: Vec<usize> = (0..n + 2).collect();
    let (north, south) = (n, n + 1);
    let mut faces = Vec::new();
    for i in 0..n {
        faces.push([north, i, (i + 1) % n]);
    }
    for i in 0..n {
        faces.push([south, (i + 1) % n, i]);
    }
    RawComplex::from_triangles(&vertices, &faces)
}

/// Top 0, upper ring 1..=5, lower ring 6..=10, bottom 11.
fn icosahedron() -> RawComplex {
    let u = |k: usize| 1 + k % 5;
    let l = |k: usize| 6 + k % 5;
    let mut faces = Vec::new();
    for k in 0..5 {
        faces.push([0, u(k), u(k + 1)]);
    }
    for k in 0..5 {
        faces.push([u(k), l(k), u(k + 1)]);
        faces.push([l(k), l(k + 1), u(k + 1)]);
    }
    for k in 0..5 {
        faces.push([11, l(k + 1), l(k)]);
    }
    RawComplex::from_triangles(&(0..12).collect::<Vec<_>>(), &faces)
}

fn torus7() -> RawComplex {
    let mut faces = Vec::new();
    for i in 0..7 {
        faces.push([i, (i + 1) % 7, (i + 3) % 7]);
        faces.push([i, (i + 2) % 7, (i + 3) % 7]);
    }
    RawComplex::from_triangles(&(0..7).collect::<Vec<_>>(), &faces)
}

/// Spine `0-1`, pages through `2..n+2`.
fn book(n: usize) -> RawComplex {
    let faces: Vec<[usize; 3]> = (0..n).map(|i| [0, 1, i + 2]).collect();
    RawComplex::from_triangles(&(0..n + 2).collect::<Vec<_>>(), &faces)
}

fn parallel_triangles(n: usize) -> RawComplex {
    let mut raw = RawComplex::default();
    for v in 0..3 {
        raw.vertex(v as i64);
    }
    raw.edge("0-1", 0, 1).edge("1-2", 1, 2).edge("0-2", 0, 2);
    if n == 1 {
        raw.face("t", 0, 1, 2);
    } else {
        raw.face_copies("t", 0, 1, 2, n as u32);
    }
    raw
}

/// Cone with apex 0 over a graph on vertices 1..: `K<n>`, `C<n>`, or an edge list `a-b,c-d`.
fn cone(spec: &str) -> Result<RawComplex, CorpusError> {
    let bad = |reason: String| CorpusError::BadArgument {
        name: "cone".into(),
        reason,
    };
    let spec = spec.trim();
    let edges: Vec<(String, String)> = if let Some(n) = spec.strip_prefix('K').and_then(|n| n.parse::<usize>().ok()) {
        (1..=n)
            .flat_map(|i| ((i + 1)..=n).map(move |j| (i.to_string(), j.to_string())))
            .collect()
    } else if let Some(n) = spec.strip_prefix('C').and_then(|n| n.parse::<usize>().ok()) {
        if n < 3 {
            return Err(bad("a cycle needs at least 3 vertices".into()));
        }
        (1..=n).map(|i| (i.to_string(), (i % n + 1).to_string())).collect()
    } else {
        spec.split(',')
            .map(|pair| {
                let (a, b) = pair
                    .split_once('-')
                    .ok_or_else(|| bad(format!("{pair:?} is not an edge a-b")))?;
                Ok((a.trim().to_string(), b.trim().to_string()))
            })
            .collect::<Result<_, CorpusError>>()?
    };
    if edges.is_empty() {
        return Err(bad("empty graph".into()));
    }
    let apex = "0";
    let mut order: Vec<String> = Vec::new();
    let mut seen: BTreeMap<String, ()> = BTreeMap::new();
    for (a, b) in &edges {
        if a == b || a == apex || b == apex {
            return Err(bad(format!("edge {a}-{b} is a loop or uses the apex label")));
        }
        for x in [a, b] {
            if seen.insert(x.clone(), ()).is_none() {
                order.push(x.clone());
            }
        }
    }
    let mut raw = RawComplex::default();
    raw.vertex(RawId::from_label(apex));
    for x in &order {
        raw.vertex(RawId::from_label(x));
    }
    for x in &order {
        raw.edge(
            format!("{apex}-{x}").as_str(),
            RawId::from_label(apex),
            RawId::from_label(x),
        );
    }
    for (a, b) in &edges {
        raw.edge(format!("{a}-{b}").as_str(), RawId::from_label(a), RawId::from_label(b));
    }
    for (i, (a, b)) in edges.iter().enumerate() {
        raw.face(
            format!("f{i}").as_str(),
            RawId::from_label(apex),
            RawId::from_label(a),
            RawId::from_label(b),
        );
    }
    Ok(raw)
}
