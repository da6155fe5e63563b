//! Numerical invariants of the algebra attached to a configuration.

use std::fmt;

use super::config::BrauerConfiguration;
use super::quiver::{build_quiver, special_cycles};
use super::{BrauerError, Result};

/// `2 |Q_0| + sum |C| (mu |C| - 1)` over one special cycle per
/// non-truncated vertex.
pub fn algebra_dimension(config: &BrauerConfiguration) -> Result<u64> {
    let quiver = build_quiver(config)?;
    let classes = special_cycles(config, &quiver);
    let mut dim = 2 * quiver.num_vertices as u64;
    for class in &classes {
        let len = class.representative().len() as u64;
        dim += len * (class.mu * len - 1);
    }
    Ok(dim)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CenterPrecondition {
    HasTruncatedVertices(Vec<String>),
    Disconnected,
    RadicalSquareZero,
}

impl fmt::Display for CenterPrecondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterPrecondition::HasTruncatedVertices(v) => {
                write!(
                    f,
                    "configuration is not reduced (truncated: {})",
                    v.join(", ")
                )
            }
            CenterPrecondition::Disconnected => f.write_str("configuration is not connected"),
            CenterPrecondition::RadicalSquareZero => {
                f.write_str("no special cycle power of length >= 2 (rad^2 = 0)")
            }
        }
    }
}

/// Dimension of the center,
/// `1 + sum mu + |polygons| - |vertices| + #loops - #{val = 1, mu > 1}`,
/// for reduced connected configurations with `rad^2 != 0`.
pub fn center_dimension(config: &BrauerConfiguration) -> Result<i64> {
    let quiver = build_quiver(config)?;
    let truncated = super::truncated_vertices(config);
    if !truncated.is_empty() {
        return Err(BrauerError::CenterPrecondition(
            CenterPrecondition::HasTruncatedVertices(
                truncated.iter().map(|v| v.as_str().to_string()).collect(),
            ),
        ));
    }
    if !config.is_connected() {
        return Err(BrauerError::CenterPrecondition(
            CenterPrecondition::Disconnected,
        ));
    }
    let classes = special_cycles(config, &quiver);
    let long_power = classes
        .iter()
        .any(|c| c.representative().len() as u64 * c.mu >= 2);
    if !long_power {
        return Err(BrauerError::CenterPrecondition(
            CenterPrecondition::RadicalSquareZero,
        ));
    }
    let sum_mu: i64 = config.vertices().iter().map(|v| v.mu as i64).sum();
    let polygons = config.polygons().len() as i64;
    let vertices = config.vertices().len() as i64;
    let loops = quiver.loop_count() as i64;
    let exceptional = config
        .vertices()
        .iter()
        .filter(|v| config.valency_unchecked(&v.id) == 1 && v.mu > 1)
        .count() as i64;
    Ok(1 + sum_mu + polygons - vertices + loops - exceptional)
}

/// `Some(N)` when every non-truncated vertex has `val * mu == N`.
pub fn is_length_graded(config: &BrauerConfiguration) -> Option<u64> {
    let mut values = config
        .vertices()
        .iter()
        .filter(|v| !config.is_truncated(&v.id))
        .map(|v| config.valency_unchecked(&v.id) as u64 * v.mu);
    let first = values.next()?;
    values.all(|x| x == first).then_some(first)
}
