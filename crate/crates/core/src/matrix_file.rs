//! JSON matrix files: `{"field": "gf3", "labels": ["a", "b"], "rows": [[1, "-1"], [0, "2/1"]]}`.
//! Entries are integers or strings holding an integer or a fraction `p/q`. `labels` names
//! the columns and defaults to `e0, e1, ...`.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{AlgebraError, ExactMatrix, FieldTag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixFileError {
    #[error("malformed matrix file: {0}")]
    Parse(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub rows: Vec<Vec<Value>>,
}

pub fn parse_matrix(text: &str) -> Result<ExactMatrix, MatrixFileError> {
    let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| MatrixFileError::Parse(e.to_string()))?;
    matrix_from_doc(&doc)
}

pub fn matrix_from_doc(doc: &MatrixDoc) -> Result<ExactMatrix, MatrixFileError> {
    let field: FieldTag = doc.field.parse()?;
    let ncols = match (&doc.labels, doc.rows.first()) {
        (Some(l), _) => l.len(),
        (None, Some(r)) => r.len(),
        (None, None) => 0,
    };
    let labels = doc
        .labels
        .clone()
        .unwrap_or_else(|| (0..ncols).map(|j| format!("e{j}")).collect());
    let mut rows = Vec::with_capacity(doc.rows.len());
    for row in &doc.rows {
        let mut out = Vec::with_capacity(row.len());
        for v in row {
            let s = match v {
                Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                Value::String(s) => s.clone(),
                other => {
                    return Err(MatrixFileError::Parse(format!(
                        "entry {other} is not an integer or a string"
                    )))
                }
            };
            out.push(field.parse_scalar(&s)?);
        }
        rows.push(out);
    }
    let row_labels = (0..rows.len()).map(|i| format!("r{i}")).collect();
    Ok(ExactMatrix::new(field, row_labels, labels, rows)?)
}

pub fn matrix_to_json(m: &ExactMatrix) -> String {
    let doc = MatrixDoc {
        field: m.field().to_string(),
        labels: Some(m.col_labels().to_vec()),
        rows: m
            .rows()
            .map(|r| r.iter().map(|x| Value::String(x.to_string())).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}
