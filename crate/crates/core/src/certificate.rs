//! Embeddability certificates: a JSON document with the complex, its dual graph, the
//! junkify ledger, and the rotators of the original and extended frameworks. The
//! verifier rebuilds every object from the document and re-runs the checks.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::FieldTag;
use crate::complex::{validate, DirectedComplex, RawComplex};
use crate::graph::{Graph, GraphDoc};
use crate::limits::Limits;
use crate::locality::g_v_at;
use crate::matroid::{dual_matroid, matroids_equal, GraphMatroid};
use crate::rotation::{
    induces_check, is_even, is_subdivision_of, replay_ledger, sparsity_check, Colour, JunkifyResult, JunkifyStep,
    Parity, RotationFramework,
};

pub const CERTIFICATE_FORMAT: &str = "embed3-certificate";
pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Parse(String),
    #[error("unsupported certificate format {format:?} version {version}")]
    Unsupported { format: String, version: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkRotator {
    /// Complex edge id (a vertex of the link graph).
    pub link_vertex: String,
    /// Face keys in cyclic order around it.
    pub faces: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRotators {
    pub vertex: String,
    pub reflected: bool,
    pub rotators: Vec<LinkRotator>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeColour {
    pub edge: String,
    pub colour: Colour,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub format: String,
    pub version: u32,
    pub field: FieldTag,
    pub complex: RawComplex,
    pub dual_graph: GraphDoc,
    pub junkify: Vec<JunkifyStep>,
    pub extended_dual_graph: GraphDoc,
    pub framework: Vec<VertexRotators>,
    pub extended_framework: Vec<VertexRotators>,
    pub colours: Vec<EdgeColour>,
}

fn rotator_doc(s: &RotationFramework) -> Vec<VertexRotators> {
    (0..s.complex().vertex_count())
        .map(|v| VertexRotators {
            vertex: s.complex().vertex_label(v).to_string(),
            reflected: s.reflected(v),
            rotators: s
                .rotator_table(v)
                .into_iter()
                .map(|(link_vertex, faces)| LinkRotator { link_vertex, faces })
                .collect(),
        })
        .collect()
}

impl Certificate {
    pub fn build(
        field: FieldTag,
        g: &Graph,
        base: &RotationFramework,
        junk: &JunkifyResult,
    ) -> Result<Self, crate::rotation::RotationError> {
        let colours = junk
            .framework
            .colour_edges()?
            .into_iter()
            .enumerate()
            .map(|(e, colour)| EdgeColour {
                edge: junk.complex.edge(e).id.clone(),
                colour,
            })
            .collect();
        Ok(Certificate {
            format: CERTIFICATE_FORMAT.into(),
            version: CERTIFICATE_VERSION,
            field,
            complex: base.complex().to_raw(),
            dual_graph: g.to_doc(),
            junkify: junk.ledger.clone(),
            extended_dual_graph: junk.graph.to_doc(),
            framework: rotator_doc(base),
            extended_framework: rotator_doc(&junk.framework),
            colours,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, CertificateError> {
        let c: Certificate = serde_json::from_str(text).map_err(|e| CertificateError::Parse(e.to_string()))?;
        if c.format != CERTIFICATE_FORMAT || c.version != CERTIFICATE_VERSION {
            return Err(CertificateError::Unsupported {
                format: c.format,
                version: c.version,
            });
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    fn record(&mut self, check: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(CheckResult {
            check: check.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }
}

fn tables(
    doc: &[VertexRotators],
    c: &DirectedComplex,
) -> Result<(Vec<BTreeMap<String, Vec<String>>>, Vec<bool>), String> {
    if doc.len() != c.vertex_count() {
        return Err(format!(
            "{} rotator tables for {} vertices",
            doc.len(),
            c.vertex_count()
        ));
    }
    let mut out = Vec::new();
    let mut refl = Vec::new();
    for (v, entry) in doc.iter().enumerate() {
        if entry.vertex != c.vertex_label(v) {
            return Err(format!("rotator table {v} names {:?}", entry.vertex));
        }
        let mut table = BTreeMap::new();
        for r in &entry.rotators {
            if table.insert(r.link_vertex.clone(), r.faces.clone()).is_some() {
                return Err(format!("duplicate rotator for {:?}", r.link_vertex));
            }
        }
        out.push(table);
        refl.push(entry.reflected);
    }
    Ok((out, refl))
}

/// Stars of `G'_v` (non-isolated vertices) as sets of face keys, in sorted order.
fn star_sets(g: &Graph, c: &DirectedComplex, v: usize) -> Option<Vec<BTreeSet<String>>> {
    let gv = g_v_at(g, c, v, false).ok()?;
    let mut stars: Vec<BTreeSet<String>> = (0..gv.vertex_count())
        .map(|b| gv.incident(b).into_iter().map(|e| gv.edge(e).label.clone()).collect())
        .collect();
    stars.sort();
    Some(stars)
}

fn faces_match_dual(s: &RotationFramework, g: &Graph) -> Result<(), String> {
    for v in 0..s.complex().vertex_count() {
        let pe = s.embedding(v);
        let label = s.complex().vertex_label(v);
        if pe.genus != 0 {
            return Err(format!("link embedding at {label:?} has genus {}", pe.genus));
        }
        if !pe.faces_are_cycles() {
            return Err(format!("a face of the link embedding at {label:?} is not a cycle"));
        }
        let mut faces = pe.face_edge_sets();
        faces.sort();
        let stars =
            star_sets(g, s.complex(), v).ok_or_else(|| format!("dual graph does not match faces at {label:?}"))?;
        if faces != stars {
            return Err(format!("faces at {label:?} are not the vertex stars of the dual graph"));
        }
    }
    Ok(())
}

/// Re-derives everything from the document. Never panics on malformed input.
pub fn verify_certificate(cert: &Certificate, limits: &Limits) -> VerificationReport {
    let mut r = VerificationReport { checks: Vec::new() };
    if !r.record(
        "format",
        cert.format == CERTIFICATE_FORMAT && cert.version == CERTIFICATE_VERSION,
        format!("{} v{}", cert.format, cert.version),
    ) {
        return r;
    }
    let c = match validate(&cert.complex) {
        Ok(c) => c,
        Err(e) => {
            r.record("complex", false, e.to_string());
            return r;
        }
    };
    r.record("complex", true, c.to_string());
    let (g, g2) = match (
        Graph::from_doc(&cert.dual_graph),
        Graph::from_doc(&cert.extended_dual_graph),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            r.record("dual graphs", false, e.to_string());
            return r;
        }
    };
    let face_keys: BTreeSet<String> = c.face_keys().into_iter().collect();
    let g_edges: BTreeSet<String> = g.edge_labels().into_iter().collect();
    if !r.record(
        "dual graph edges are faces",
        face_keys == g_edges && g.edge_count() == c.face_count(),
        "",
    ) {
        return r;
    }
    match matroids_equal(&dual_matroid(&c, cert.field), &GraphMatroid::cycle(&g), limits) {
        Ok(eq) => r.record(
            "dual matroid is the cycle matroid of the dual graph",
            eq,
            cert.field.to_string(),
        ),
        Err(e) => r.record(
            "dual matroid is the cycle matroid of the dual graph",
            false,
            e.to_string(),
        ),
    };

    // replay the ledger on the complex
    let mut c2 = c.clone();
    for (i, step) in cert.junkify.iter().enumerate() {
        let Ok(f) = c2.face_index(&step.face) else {
            r.record(
                "ledger replay",
                false,
                format!("step {i}: unknown face {:?}", step.face),
            );
            return r;
        };
        let degree_ok = c2
            .edge_index(&step.edge)
            .map(|e| c2.face_degrees()[e] == 2 && c2.faces_at_edge(e).contains(&f))
            .unwrap_or(false);
        let (next, idx) = c2.with_parallel_copy(f);
        if !degree_ok || next.face(idx).key() != step.copy {
            r.record("ledger replay", false, format!("step {i} does not replay"));
            return r;
        }
        c2 = next;
    }
    r.record(
        "ledger replay",
        true,
        format!("{} parallel faces added", cert.junkify.len()),
    );
    r.record(
        "minimum face-degree",
        c2.face_degrees().iter().all(|&d| d >= 3),
        "every edge of the extended complex lies on at least three faces",
    );
    let replayed = replay_ledger(&g, &cert.junkify);
    r.record(
        "extended dual graph replays the ledger",
        replayed.is_some_and(|x| x.same_labelled(&g2)),
        "",
    );
    r.record("extended dual graph is a subdivision", is_subdivision_of(&g2, &g), "");

    let build = |doc: &[VertexRotators], host: &DirectedComplex| -> Result<RotationFramework, String> {
        let (t, refl) = tables(doc, host)?;
        RotationFramework::from_rotators(host.clone(), &t, refl).map_err(|e| e.to_string())
    };
    let (s, s2) = match (build(&cert.framework, &c), build(&cert.extended_framework, &c2)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            r.record("rotators", false, e);
            return r;
        }
    };
    r.record("rotators", true, "");
    let check = |res: Result<(), String>| match res {
        Ok(()) => (true, String::new()),
        Err(e) => (false, e),
    };
    let (ok, d) = check(faces_match_dual(&s, &g));
    r.record("link embeddings have the dual graph as dual", ok, d);
    let (ok, d) = check(faces_match_dual(&s2, &g2));
    r.record("extended link embeddings have the extended dual graph as dual", ok, d);

    match s2.colour_edges() {
        Ok(colours) => {
            let listed: Vec<(String, Colour)> = cert.colours.iter().map(|c| (c.edge.clone(), c.colour)).collect();
            let computed: Vec<(String, Colour)> = colours
                .iter()
                .enumerate()
                .map(|(e, &col)| (c2.edge(e).id.clone(), col))
                .collect();
            r.record(
                "colours",
                listed == computed,
                format!("{} red", colours.iter().filter(|&&c| c == Colour::Red).count()),
            );
        }
        Err(e) => {
            r.record("colours", false, e.to_string());
            return r;
        }
    }
    let mut odd = Vec::new();
    for f in 0..c2.face_count() {
        match s2.face_parity(f) {
            Ok(Parity::Even) => {}
            Ok(Parity::Odd) => odd.push(c2.face(f).key()),
            Err(e) => odd.push(format!("{}: {e}", c2.face(f).key())),
        }
    }
    r.record("face parity", odd.is_empty(), odd.join(", "));
    match is_even(&s2) {
        Ok(ev) => r.record("evenness", ev.even, ev.witness.map(|w| w.join(" ")).unwrap_or_default()),
        Err(e) => r.record("evenness", false, e.to_string()),
    };
    match induces_check(&s2, &s) {
        Ok(ok) => r.record("extended framework induces the original", ok, ""),
        Err(e) => r.record("extended framework induces the original", false, e.to_string()),
    };
    match sparsity_check(&c2, &g2) {
        Ok(v) => r.record("sparsity", v.is_empty(), format!("{} violations", v.len())),
        Err(e) => r.record("sparsity", false, e.to_string()),
    };
    r
}
