//! Decision procedure for embedding simply connected 2-complexes in 3-space.

pub mod algebra;
pub mod certificate;
pub mod complex;
pub mod corpus;
pub mod graph;
pub mod homotopy;
pub mod limits;
pub mod locality;
pub mod maclane;
pub mod matrix_file;
pub mod matroid;
pub mod pipeline;
pub mod planar;
pub mod report;
pub mod rotation;

pub use algebra::{ExactMatrix, FieldTag, Scalar};
pub use complex::{parse_complex, validate, DirectedComplex, RawComplex};
pub use graph::Graph;
pub use limits::{Limits, ScaleExceeded};
