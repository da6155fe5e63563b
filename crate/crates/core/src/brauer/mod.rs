//! Brauer configurations and the bound quiver data they induce.
//!
//! A configuration is a list of vertices with multiplicities, an ordered list
//! of polygons (multisets of vertices kept in presentation order), and for
//! each vertex a successor sequence ordering its occurrences. From this data
//! [`build_quiver`] produces one quiver vertex per polygon and one arrow per
//! consecutive pair of every successor sequence, [`special_cycles`] reads the
//! cycles back off the quiver, and [`relations`] emits the generators of the
//! ideal of relations (types I, II and III).
//!
//! The numerical invariants (algebra dimension, center dimension, length
//! grading) live in [`invariants`].

mod config;
pub mod invariants;
mod json;
mod quiver;

pub use config::{
    BrauerConfiguration, Occurrence, Polygon, ValidationReport, Vertex, VertexId, Violation,
};
pub use invariants::{algebra_dimension, center_dimension, is_length_graded, CenterPrecondition};
pub use json::ConfigDocument;
pub use quiver::{
    build_quiver, relations, relations_text, special_cycles, to_dot, Arrow, ConfigQuiver,
    CyclePower, Relation, RelationKind, SpecialCycle, SpecialCycleClass,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BrauerError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("not a Brauer configuration: {0}")]
    Invalid(ValidationReport),
    #[error("center formula precondition failed: {0}")]
    CenterPrecondition(CenterPrecondition),
    #[error("invalid configuration document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, BrauerError>;

/// Number of occurrences of `v` summed over all polygons.
pub fn valency(config: &BrauerConfiguration, v: &VertexId) -> Result<usize> {
    if config.vertex(v).is_none() {
        return Err(BrauerError::UnknownVertex(v.as_str().to_string()));
    }
    Ok(config.valency_unchecked(v))
}

/// Vertices with `val * mu == 1`, in declaration order.
pub fn truncated_vertices(config: &BrauerConfiguration) -> Vec<VertexId> {
    config
        .vertices()
        .iter()
        .filter(|v| config.is_truncated(&v.id))
        .map(|v| v.id.clone())
        .collect()
}

pub fn validate(config: &BrauerConfiguration) -> ValidationReport {
    config.validate()
}

/// True iff the polygon/vertex incidence graph is connected.
pub fn is_connected(config: &BrauerConfiguration) -> bool {
    config.is_connected()
}

/// Removes truncated vertices from polygons with at least three entries
/// until no such removal applies. Vertices that no longer occur anywhere
/// are dropped from the vertex list; the orientation of the remaining
/// vertices is carried over unchanged.
pub fn reduce(config: &BrauerConfiguration) -> BrauerConfiguration {
    config.reduced()
}
