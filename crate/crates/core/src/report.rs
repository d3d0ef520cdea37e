//! Rendering verdicts as text or as the versioned structured (JSON) report.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::Certificate;
use crate::graph::GraphDoc;
use crate::pipeline::{CrossFieldReport, Provenance, StageRecord, Status, Verdict, Witnesses};

pub const REPORT_FORMAT: &str = "embed3-report";
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown report format {0:?} (expected text or structured)")]
pub struct UnknownReportFormat(String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Structured,
}

impl FromStr for ReportFormat {
    type Err = UnknownReportFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "structured" => Ok(ReportFormat::Structured),
            other => Err(UnknownReportFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub status: Status,
    pub exit_code: i32,
    pub field: String,
    pub simple_connectivity: Provenance,
    pub stages: Vec<StageRecord>,
    pub witnesses: Witnesses,
    pub dual_graph: Option<GraphDoc>,
    pub certificate: Option<Certificate>,
}

impl From<&Verdict> for VerdictDoc {
    fn from(v: &Verdict) -> Self {
        VerdictDoc {
            status: v.status,
            exit_code: v.status.exit_code(),
            field: v.field.to_string(),
            simple_connectivity: v.simple_connectivity,
            stages: v.stages.clone(),
            witnesses: v.witnesses.clone(),
            dual_graph: v.dual_graph.clone(),
            certificate: v.certificate.clone(),
        }
    }
}

/// The top-level structured document. `verdicts` holds one entry per field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub format: String,
    pub version: u32,
    pub status: Status,
    pub exit_code: i32,
    pub verdicts: Vec<VerdictDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_matroids_isomorphic: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_bijection: Option<bool>,
}

impl ReportDoc {
    pub fn single(v: &Verdict) -> Self {
        ReportDoc {
            format: REPORT_FORMAT.into(),
            version: REPORT_VERSION,
            status: v.status,
            exit_code: v.status.exit_code(),
            verdicts: vec![v.into()],
            dual_matroids_isomorphic: None,
            identity_bijection: None,
        }
    }

    pub fn cross_field(r: &CrossFieldReport) -> Self {
        let status = r.status();
        ReportDoc {
            format: REPORT_FORMAT.into(),
            version: REPORT_VERSION,
            status,
            exit_code: status.exit_code(),
            verdicts: r.verdicts.iter().map(VerdictDoc::from).collect(),
            dual_matroids_isomorphic: r.dual_matroids_isomorphic,
            identity_bijection: r.identity_bijection,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

fn render_verdict(out: &mut String, v: &Verdict) {
    let _ = writeln!(out, "field: {}", v.field);
    let _ = writeln!(out, "status: {}", v.status.as_str());
    let prov = match v.simple_connectivity {
        Provenance::CertifiedTrivial => "certified-trivial",
        Provenance::HomologySurrogateOnly => "homology-surrogate-only",
        Provenance::RefutedByHomology => "refuted-by-homology",
    };
    let _ = writeln!(out, "simple connectivity: {prov}");
    for s in &v.stages {
        let tag = match s.outcome {
            crate::pipeline::Outcome::Pass => "pass",
            crate::pipeline::Outcome::Fail => "FAIL",
            crate::pipeline::Outcome::Skipped => "skip",
            crate::pipeline::Outcome::Info => "info",
        };
        let _ = writeln!(out, "  [{tag}] {}: {}", s.stage, s.detail);
    }
    let w = &v.witnesses;
    if !w.not_locally_2connected.is_empty() {
        let _ = writeln!(
            out,
            "witness: link graph not 2-connected at {}",
            w.not_locally_2connected.join(", ")
        );
    }
    if let Some(l) = &w.locality {
        let _ = write!(out, "witness: locality fails at vertex {}", l.vertex);
        if let Some(c) = &l.witness {
            let _ = write!(out, "; {:?} circuit {{{}}}", c.side, c.circuit.join(", "));
        }
        out.push('\n');
    }
    if let Some(ng) = &w.non_graphic {
        let _ = writeln!(out, "witness: {}", serde_json::to_string(ng).expect("serializable"));
    }
    if let Some(c) = &w.odd_cycle {
        let _ = writeln!(out, "witness: odd cycle {}", c.join(" "));
    }
    if let Some(g) = &v.dual_graph {
        let _ = writeln!(
            out,
            "dual graph: {} vertices, {} edges",
            g.vertices.len(),
            g.edges.len()
        );
    }
    if v.certificate.is_some() {
        let _ = writeln!(out, "certificate: present");
    }
}

pub fn report(v: &Verdict, format: ReportFormat) -> String {
    match format {
        ReportFormat::Structured => ReportDoc::single(v).to_json(),
        ReportFormat::Text => {
            let mut out = String::new();
            render_verdict(&mut out, v);
            out
        }
    }
}

pub fn report_cross_field(r: &CrossFieldReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Structured => ReportDoc::cross_field(r).to_json(),
        ReportFormat::Text => {
            let mut out = String::new();
            for v in &r.verdicts {
                render_verdict(&mut out, v);
                out.push('\n');
            }
            let _ = writeln!(out, "overall: {}", r.status().as_str());
            if let Some(iso) = r.dual_matroids_isomorphic {
                let _ = writeln!(out, "dual matroids pairwise isomorphic: {iso}");
            }
            if let Some(id) = r.identity_bijection {
                let _ = writeln!(out, "identity bijection: {id}");
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldTag;
    use crate::corpus::corpus;
    use crate::pipeline::{decide, DecideOptions};

    #[test]
    fn structured_report_round_trips() {
        let v = decide(
            &corpus("tetrahedron").unwrap(),
            FieldTag::GF2,
            &DecideOptions::default(),
        )
        .unwrap();
        let text = report(&v, ReportFormat::Structured);
        let doc: ReportDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.format, REPORT_FORMAT);
        assert_eq!(doc.exit_code, 0);
        assert_eq!(doc.verdicts[0].certificate, v.certificate);
        assert_eq!(doc.to_json(), text);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["status"], "EMBEDDABLE_CERTIFIED");
        assert_eq!(value["verdicts"][0]["simple_connectivity"], "certified-trivial");
    }

    #[test]
    fn text_report_names_the_witness() {
        let v = decide(&corpus("cone(K5)").unwrap(), FieldTag::GF2, &DecideOptions::default()).unwrap();
        let text = report(&v, ReportFormat::Text);
        assert!(text.contains("status: HYPOTHESIS_FAILED"));
        assert!(text.contains("locality fails at vertex 0"));
        assert!(text.contains("10 loops (rank 0)"));
    }

    #[test]
    fn format_names() {
        assert_eq!("text".parse::<ReportFormat>(), Ok(ReportFormat::Text));
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
