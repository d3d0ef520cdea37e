//! The decision pipeline.
//!
//! Stages: validation, local 2-connectivity, k-locality and the dual matroid (all three
//! evaluated and logged before a hypothesis failure is reported), graph realization,
//! the rotation framework, sparsity, junkify, face parity, the homology gate, evenness,
//! and finally the certificate, which is re-verified before it is returned.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::FieldTag;
use crate::certificate::{verify_certificate, Certificate};
use crate::complex::DirectedComplex;
use crate::graph::GraphDoc;
use crate::homotopy::{fundamental_group_report, Triviality};
use crate::limits::{Limits, ScaleExceeded};
use crate::locality::{is_k_local, is_locally_2connected, LocalityError, VertexLocality};
use crate::matroid::{
    binary_candidate, circuit_difference, components, dual_matroid, graph_realization, matroid_isomorphic, Matroid,
    MatroidError, Side, VectorMatroid,
};
use crate::rotation::{construct_rotation_framework, is_even, junkify, sparsity_check, Parity, RotationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Scale(#[from] ScaleExceeded),
    #[error("internal inconsistency at stage {stage}: {detail}")]
    Internal { stage: String, detail: String },
}

impl From<MatroidError> for PipelineError {
    fn from(e: MatroidError) -> Self {
        match e {
            MatroidError::Scale(s) => PipelineError::Scale(s),
            other => PipelineError::Internal {
                stage: "matroid".into(),
                detail: other.to_string(),
            },
        }
    }
}

impl From<LocalityError> for PipelineError {
    fn from(e: LocalityError) -> Self {
        match e {
            LocalityError::Matroid(m) => m.into(),
            other => PipelineError::Internal {
                stage: "locality".into(),
                detail: other.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    EmbeddableCertified,
    NotEmbeddableDualNotGraphic,
    HypothesisFailed,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::EmbeddableCertified => 0,
            Status::NotEmbeddableDualNotGraphic => 1,
            Status::HypothesisFailed => 2,
            Status::Inconclusive => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::EmbeddableCertified => "EMBEDDABLE_CERTIFIED",
            Status::NotEmbeddableDualNotGraphic => "NOT_EMBEDDABLE_DUAL_NOT_GRAPHIC",
            Status::HypothesisFailed => "HYPOTHESIS_FAILED",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// How much is known about simple connectivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// The edge-path presentation of the fundamental group simplified to the trivial group.
    CertifiedTrivial,
    /// Mod-2 first homology vanishes, but the fundamental group was not certified trivial.
    HomologySurrogateOnly,
    /// Homology shows the complex is not simply connected.
    RefutedByHomology,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: String,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonGraphicWitness {
    /// The matroid differs from its binary candidate; `circuit` is a circuit of one but not the other.
    NotBinary { circuit: Vec<String>, in_matroid: bool },
    /// Binary, but the component with these elements has no family of vertex stars.
    NoGraphicComponent { elements: Vec<String> },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    /// Vertices whose link graph is not 2-connected.
    pub not_locally_2connected: Vec<String>,
    pub locality: Option<VertexLocality>,
    pub non_graphic: Option<NonGraphicWitness>,
    /// Edge ids of a cycle of the input complex with an odd number of red edges in the
    /// junkified framework. Only filled in on INCONCLUSIVE runs.
    pub odd_cycle: Option<Vec<String>>,
    /// Generators of the fundamental group presentation left after simplification.
    pub fundamental_group_remaining: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub field: FieldTag,
    pub simple_connectivity: Provenance,
    pub stages: Vec<StageRecord>,
    pub witnesses: Witnesses,
    pub dual_graph: Option<GraphDoc>,
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub fn stage(&self, name: &str) -> Option<&StageRecord> {
        self.stages.iter().find(|s| s.stage == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DecideOptions {
    pub limits: Limits,
    /// Count a link on two vertices joined by parallel edges as 2-connected.
    pub allow_two_vertex_links: bool,
}

/// Short description of a matroid: rank, size, loops, coloops and components.
pub fn describe_matroid(m: &VectorMatroid) -> String {
    let n = m.len();
    let loops = m.loops().len();
    if m.rank() == 0 {
        return format!("{n} loops (rank 0)");
    }
    let comps = components(m);
    let coloops = comps
        .iter()
        .filter(|c| c.len() == 1 && !m.loops().contains(&c[0]))
        .count();
    format!(
        "rank {} on {n} elements: {loops} loops, {coloops} coloops, {} components",
        m.rank(),
        comps.len()
    )
}

struct Log {
    stages: Vec<StageRecord>,
}

impl Log {
    fn push(&mut self, stage: &str, outcome: Outcome, detail: impl Into<String>) {
        self.stages.push(StageRecord {
            stage: stage.into(),
            outcome,
            detail: detail.into(),
        });
    }
}

fn provenance(c: &DirectedComplex, log: &mut Log, w: &mut Witnesses) -> Provenance {
    let h1 = c.h1_f2_trivial();
    let skeleton = c.one_skeleton();
    if !skeleton.is_connected() {
        return Provenance::RefutedByHomology;
    }
    if !h1 {
        return Provenance::RefutedByHomology;
    }
    match fundamental_group_report(c) {
        Ok(r) if r.status == Triviality::CertifiedTrivial => {
            log.push(
                "fundamental-group",
                Outcome::Pass,
                format!("presentation trivialised in {} steps", r.steps),
            );
            Provenance::CertifiedTrivial
        }
        Ok(r) => {
            log.push(
                "fundamental-group",
                Outcome::Info,
                format!("not certified; {} generators remain", r.remaining_generators.len()),
            );
            w.fundamental_group_remaining = Some(r.remaining_generators);
            Provenance::HomologySurrogateOnly
        }
        Err(_) => Provenance::RefutedByHomology,
    }
}

pub fn decide(c: &DirectedComplex, k: FieldTag, opts: &DecideOptions) -> Result<Verdict, PipelineError> {
    let limits = &opts.limits;
    let mut log = Log { stages: Vec::new() };
    let mut w = Witnesses::default();
    log.push("validate", Outcome::Pass, c.to_string());

    let conn = is_locally_2connected(c, opts.allow_two_vertex_links);
    w.not_locally_2connected = conn
        .iter()
        .filter(|x| !x.two_connected)
        .map(|x| x.vertex.clone())
        .collect();
    if w.not_locally_2connected.is_empty() {
        log.push("local-2-connectivity", Outcome::Pass, "every link graph is 2-connected");
    } else {
        log.push(
            "local-2-connectivity",
            Outcome::Fail,
            format!("link graph not 2-connected at {}", w.not_locally_2connected.join(", ")),
        );
    }

    let locality = is_k_local(c, k, limits)?;
    match locality.first_failure() {
        None => log.push("locality", Outcome::Pass, format!("local over {k} at every vertex")),
        Some(bad) => {
            let detail = format!(
                "not local over {k} at vertex {}: link bond matroid has rank {}, restriction has rank {}",
                bad.vertex, bad.link_matroid_rank, bad.restriction_rank
            );
            log.push("locality", Outcome::Fail, detail);
            w.locality = Some(bad.clone());
        }
    }

    let dual = dual_matroid(c, k);
    log.push("dual-matroid", Outcome::Info, describe_matroid(&dual));

    let simple = provenance(c, &mut log, &mut w);
    let finish =
        |status: Status, log: Log, w: Witnesses, dual_graph: Option<GraphDoc>, certificate: Option<Certificate>| {
            Verdict {
                status,
                field: k,
                simple_connectivity: simple,
                stages: log.stages,
                witnesses: w,
                dual_graph,
                certificate,
            }
        };

    if !w.not_locally_2connected.is_empty() || w.locality.is_some() {
        log.push(
            "graph-realization",
            Outcome::Skipped,
            "hypotheses unmet; graphicness of the dual matroid would not decide embeddability",
        );
        return Ok(finish(Status::HypothesisFailed, log, w, None, None));
    }

    let Some(real) = graph_realization(&dual, limits)? else {
        w.non_graphic = Some(non_graphic_witness(&dual, limits)?);
        log.push(
            "graph-realization",
            Outcome::Fail,
            "the dual matroid is not graphic; with both local hypotheses in force this rules out an embedding",
        );
        return Ok(finish(Status::NotEmbeddableDualNotGraphic, log, w, None, None));
    };
    let g = real.graph;
    log.push(
        "graph-realization",
        Outcome::Pass,
        format!(
            "dual graph with {} vertices and {} edges",
            g.vertex_count(),
            g.edge_count()
        ),
    );
    let dual_graph = Some(g.to_doc());

    let internal = |stage: &str, e: RotationError| PipelineError::Internal {
        stage: stage.into(),
        detail: e.to_string(),
    };
    let s = construct_rotation_framework(c, &g, limits).map_err(|e| internal("rotation-framework", e))?;
    log.push(
        "rotation-framework",
        Outcome::Pass,
        "framework induced by the dual graph",
    );

    let violations = sparsity_check(c, &g).map_err(|e| internal("sparsity", e))?;
    if !violations.is_empty() {
        return Err(PipelineError::Internal {
            stage: "sparsity".into(),
            detail: format!("{} violations", violations.len()),
        });
    }
    log.push(
        "sparsity",
        Outcome::Pass,
        "every (dual vertex, edge) pair meets 0 or 2 faces",
    );

    let j = junkify(&s, &g).map_err(|e| internal("junkify", e))?;
    log.push(
        "junkify",
        Outcome::Pass,
        format!("{} parallel faces added; minimum face-degree 3", j.ledger.len()),
    );

    let mut odd = Vec::new();
    for f in 0..j.complex.face_count() {
        if j.framework.face_parity(f).map_err(|e| internal("face-parity", e))? == Parity::Odd {
            odd.push(j.complex.face(f).key());
        }
    }
    if !odd.is_empty() {
        return Err(PipelineError::Internal {
            stage: "face-parity".into(),
            detail: format!("odd faces: {}", odd.join(", ")),
        });
    }
    log.push(
        "face-parity",
        Outcome::Pass,
        format!("all {} faces even", j.complex.face_count()),
    );

    if !c.h1_f2_trivial() {
        log.push(
            "homology",
            Outcome::Fail,
            "face boundaries do not generate the mod-2 cycle space; H1 does not vanish",
        );
        let ev = is_even(&j.framework).map_err(|e| internal("evenness", e))?;
        let detail = if ev.even {
            "every cycle carries an even number of red edges (no certificate without the homology gate)"
        } else {
            "a cycle carries an odd number of red edges"
        };
        log.push("evenness", Outcome::Info, detail);
        w.odd_cycle = ev.witness;
        return Ok(finish(Status::Inconclusive, log, w, dual_graph, None));
    }
    log.push("homology", Outcome::Pass, "face boundaries generate all cycles mod 2");

    let ev = is_even(&j.framework).map_err(|e| internal("evenness", e))?;
    if !ev.even {
        return Err(PipelineError::Internal {
            stage: "evenness".into(),
            detail: format!(
                "odd cycle {} although every face is even and H1 vanishes",
                ev.witness.unwrap_or_default().join(" ")
            ),
        });
    }
    log.push(
        "evenness",
        Outcome::Pass,
        "every cycle carries an even number of red edges",
    );

    let cert = Certificate::build(k, &g, &s, &j).map_err(|e| internal("certificate", e))?;
    let check = verify_certificate(&cert, limits);
    if !check.passed() {
        let failed: Vec<String> = check.failures().iter().map(|c| c.check.clone()).collect();
        return Err(PipelineError::Internal {
            stage: "certificate".into(),
            detail: format!("self-check failed: {}", failed.join(", ")),
        });
    }
    log.push(
        "certificate",
        Outcome::Pass,
        format!("{} checks re-verified", check.checks.len()),
    );
    Ok(finish(Status::EmbeddableCertified, log, w, dual_graph, Some(cert)))
}

fn non_graphic_witness(m: &VectorMatroid, limits: &Limits) -> Result<NonGraphicWitness, PipelineError> {
    match binary_candidate(m, limits)? {
        None => {
            let support = crate::matroid::VectorMatroid::new(support_of(m));
            let (side, circuit) = circuit_difference(m, &support, limits)?.ok_or_else(|| PipelineError::Internal {
                stage: "graph-realization".into(),
                detail: "binary candidate rejected without a distinguishing circuit".into(),
            })?;
            Ok(NonGraphicWitness::NotBinary {
                circuit,
                in_matroid: side == Side::Left,
            })
        }
        Some(b) => {
            let ground = b.ground().to_vec();
            for comp in components(&b) {
                if comp.len() < 2 {
                    continue;
                }
                let sub = b.restriction_at(&comp);
                if graph_realization(&sub, limits)?.is_none() {
                    return Ok(NonGraphicWitness::NoGraphicComponent {
                        elements: comp.iter().map(|&i| ground[i].clone()).collect(),
                    });
                }
            }
            Err(PipelineError::Internal {
                stage: "graph-realization".into(),
                detail: "every component realizes separately".into(),
            })
        }
    }
}

fn support_of(m: &VectorMatroid) -> crate::algebra::ExactMatrix {
    let rref = m.rep().rank_and_rref();
    let rows: Vec<usize> = (0..rref.rank).collect();
    let std_form = rref.matrix.select_rows(&rows);
    let mut s =
        crate::algebra::ExactMatrix::zeros_labelled(FieldTag::GF2, std_form.row_labels().to_vec(), m.ground().to_vec());
    for i in 0..std_form.nrows() {
        for j in 0..std_form.ncols() {
            if !std_form.get(i, j).is_zero() {
                s.set(i, j, crate::algebra::Scalar::Mod(1));
            }
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossFieldReport {
    pub verdicts: Vec<Verdict>,
    /// Whether the dual matroids over all fields are pairwise isomorphic; checked when
    /// every field certified an embedding.
    pub dual_matroids_isomorphic: Option<bool>,
    pub identity_bijection: Option<bool>,
}

impl CrossFieldReport {
    /// The common status, or the first non-certified one.
    pub fn status(&self) -> Status {
        self.verdicts
            .iter()
            .map(|v| v.status)
            .find(|&s| s != Status::EmbeddableCertified)
            .unwrap_or(Status::EmbeddableCertified)
    }
}

pub fn decide_all_fields(c: &DirectedComplex, opts: &DecideOptions) -> Result<CrossFieldReport, PipelineError> {
    let fields = FieldTag::standard();
    let verdicts = fields
        .iter()
        .map(|&k| decide(c, k, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let (mut iso, mut ident) = (None, None);
    if verdicts.iter().all(|v| v.status == Status::EmbeddableCertified) {
        let duals: Vec<VectorMatroid> = fields.iter().map(|&k| dual_matroid(c, k)).collect();
        let (mut all_iso, mut all_ident) = (true, true);
        for i in 0..duals.len() {
            for j in (i + 1)..duals.len() {
                match matroid_isomorphic(&duals[i], &duals[j], &opts.limits)? {
                    Some(map) => all_ident &= map.iter().enumerate().all(|(a, &b)| a == b),
                    None => {
                        all_iso = false;
                        all_ident = false;
                    }
                }
            }
        }
        iso = Some(all_iso);
        ident = Some(all_ident);
    }
    Ok(CrossFieldReport {
        verdicts,
        dual_matroids_isomorphic: iso,
        identity_bijection: ident,
    })
}
