use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use embed3::certificate::{verify_certificate, Certificate};
use embed3::corpus::corpus_raw;
use embed3::maclane::maclane_check_matroid;
use embed3::matrix_file::matrix_from_doc;
use embed3::matroid::{dual_matroid, graph_realization, Matroid, VectorMatroid};
use embed3::pipeline::{decide, decide_all_fields, describe_matroid, DecideOptions, PipelineError};
use embed3::report::{report, report_cross_field, ReportFormat};
use embed3::{parse_complex, FieldTag, Limits};

const EXIT_USAGE: u8 = 10;
const EXIT_IO: u8 = 11;
const EXIT_INPUT: u8 = 12;
const EXIT_SCALE: u8 = 13;
const EXIT_INTERNAL: u8 = 14;

/// Combinatorial embeddability certificates for 2-complexes in 3-space.
#[derive(Parser)]
#[command(name = "embed3", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    /// Largest ground set enumerated exhaustively.
    #[arg(long)]
    max_ground: Option<usize>,
    /// Work budget for a single enumeration.
    #[arg(long)]
    max_work: Option<u64>,
}

impl LimitArgs {
    fn limits(self) -> Limits {
        let mut l = Limits::default();
        if let Some(g) = self.max_ground {
            l.max_ground = g;
        }
        if let Some(w) = self.max_work {
            l.max_work = w;
        }
        l
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the decision pipeline on a complex file.
    Check {
        file: PathBuf,
        /// gf2, gf3, gf5, gf(p), rational, or `all` for every standard field.
        #[arg(long, default_value = "gf2")]
        field: String,
        /// Write the certificate here when one is produced.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: String,
        /// Treat a link made of parallel edges on two vertices as 2-connected.
        #[arg(long)]
        allow_two_vertex_links: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Print a named example complex in the complex file format.
    Corpus {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Describe the matroid of a matrix file, or the dual matroid of a complex file.
    Matroid {
        /// A path, or an inline JSON document.
        input: String,
        /// Field for complex input.
        #[arg(long, default_value = "gf2")]
        field: String,
        /// Search for a graph realizing the matroid.
        #[arg(long)]
        realize: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Graphicness via sparse generating sets, printing the family when one exists.
    Maclane {
        input: String,
        #[arg(long, default_value = "gf2")]
        field: String,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Re-check a certificate file from scratch.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let code = match e {
            PipelineError::Scale(_) => EXIT_SCALE,
            PipelineError::Internal { .. } => EXIT_INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<embed3::matroid::MatroidError> for Failure {
    fn from(e: embed3::matroid::MatroidError) -> Self {
        let code = match e {
            embed3::matroid::MatroidError::Scale(_) => EXIT_SCALE,
            _ => EXIT_INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn field(s: &str) -> Result<FieldTag, Failure> {
    s.parse()
        .map_err(|e: embed3::algebra::AlgebraError| Failure::new(EXIT_USAGE, e.to_string()))
}

/// Reads a path, or takes the argument itself when it is an inline JSON object.
fn document(input: &str) -> Result<Value, Failure> {
    let text = if input.trim_start().starts_with('{') && !Path::new(input).exists() {
        input.to_string()
    } else {
        read(Path::new(input))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::new(EXIT_INPUT, format!("malformed JSON: {e}")))
}

fn matroid_input(input: &str, k: &str) -> Result<VectorMatroid, Failure> {
    let doc = document(input)?;
    if doc.get("rows").is_some() {
        let m: embed3::matrix_file::MatrixDoc =
            serde_json::from_value(doc).map_err(|e| Failure::new(EXIT_INPUT, format!("malformed matrix file: {e}")))?;
        let rep = matrix_from_doc(&m).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
        Ok(VectorMatroid::new(rep))
    } else if doc.get("faces").is_some() {
        let c = parse_complex(&doc.to_string()).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
        Ok(dual_matroid(&c, field(k)?))
    } else {
        Err(Failure::new(
            EXIT_INPUT,
            "input is neither a matrix file (needs \"rows\") nor a complex file (needs \"faces\")",
        ))
    }
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Check {
            file,
            field: k,
            certificate,
            format,
            allow_two_vertex_links,
            limits,
        } => {
            let format: ReportFormat = format
                .parse()
                .map_err(|e: embed3::report::UnknownReportFormat| Failure::new(EXIT_USAGE, e.to_string()))?;
            let c = parse_complex(&read(&file)?)
                .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", file.display())))?;
            let opts = DecideOptions {
                limits: limits.limits(),
                allow_two_vertex_links,
            };
            let (text, code, cert) = if k == "all" {
                let r = decide_all_fields(&c, &opts)?;
                let cert = r.verdicts.first().and_then(|v| v.certificate.clone());
                let mut code = r.status().exit_code();
                if r.dual_matroids_isomorphic == Some(false) {
                    code = EXIT_INTERNAL as i32;
                }
                (report_cross_field(&r, format), code, cert)
            } else {
                let v = decide(&c, field(&k)?, &opts)?;
                (report(&v, format), v.status.exit_code(), v.certificate.clone())
            };
            print!("{text}");
            if let (Some(path), Some(cert)) = (certificate, cert) {
                write(&path, &cert.to_text())?;
            }
            Ok(code as u8)
        }
        Command::Corpus { name, out } => {
            let raw = corpus_raw(&name).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
            embed3::validate(&raw).map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?;
            let text = raw.to_json();
            match out {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Matroid {
            input,
            field: k,
            realize,
            limits,
        } => {
            let limits = limits.limits();
            let m = matroid_input(&input, &k)?;
            let circuits = m.circuits(&limits)?;
            let mut out = json!({
                "field": m.field().to_string(),
                "elements": m.ground(),
                "rank": m.rank(),
                "summary": describe_matroid(&m),
                "circuits": circuits.label_sets(),
            });
            if realize {
                let real = graph_realization(&m, &limits)?;
                out["graphic"] = json!(real.is_some());
                out["graph"] = json!(real.map(|r| r.graph.to_doc()));
            }
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(0)
        }
        Command::Maclane {
            input,
            field: k,
            limits,
        } => {
            let m = matroid_input(&input, &k)?;
            let v =
                maclane_check_matroid(&m, &limits.limits()).map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?;
            let family = v.family.as_ref().map(|f| {
                json!({
                    "field": f.field.to_string(),
                    "coordinates": f.labels,
                    "vectors": f.sparse_entries().into_iter().map(|(name, entries)| {
                        json!({"name": name, "entries": entries.into_iter().collect::<std::collections::BTreeMap<_, _>>()})
                    }).collect::<Vec<_>>(),
                })
            });
            let out = json!({
                "graphic": v.graphic,
                "graph": v.graph.as_ref().map(|g| g.to_doc()),
                "sparse_family": family,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(if v.graphic { 0 } else { 1 })
        }
        Command::Verify { file, limits } => {
            let cert = Certificate::parse(&read(&file)?).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
            let r = verify_certificate(&cert, &limits.limits());
            for c in &r.checks {
                println!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.check, c.detail);
            }
            Ok(if r.passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
