use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::config::{BrauerConfiguration, Occurrence, Polygon, Vertex, VertexId};
use super::{BrauerError, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// On-disk form of a configuration:
///
/// ```json
/// {"schema": 1,
///  "vertices": [{"id": "2", "mu": 1}, {"id": "1", "mu": 2}],
///  "polygons": [["2", "1"]],
///  "orientation": {"2": [[0, 0]]}}
/// ```
///
/// `schema` and `orientation` may be omitted; unknown fields are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub vertices: Vec<VertexEntry>,
    pub polygons: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<BTreeMap<String, Vec<[usize; 2]>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub mu: u64,
}

impl ConfigDocument {
    pub fn parse(text: &str) -> Result<BrauerConfiguration> {
        let doc: ConfigDocument =
            serde_json::from_str(text).map_err(|e| BrauerError::Document(e.to_string()))?;
        doc.into_config()
    }

    pub fn into_config(self) -> Result<BrauerConfiguration> {
        if let Some(v) = self.schema {
            if v != SCHEMA_VERSION {
                return Err(BrauerError::Document(format!(
                    "unsupported schema version {v} (expected {SCHEMA_VERSION})"
                )));
            }
        }
        let vertices = self
            .vertices
            .into_iter()
            .map(|v| Vertex {
                id: VertexId::new(v.id),
                mu: v.mu,
            })
            .collect();
        let polygons = self.polygons.into_iter().map(Polygon::new).collect();
        let config = BrauerConfiguration::new(vertices, polygons);
        Ok(match self.orientation {
            None => config,
            Some(o) => config.with_orientation(
                o.into_iter()
                    .map(|(k, seq)| {
                        let seq = seq
                            .into_iter()
                            .map(|[polygon, occurrence]| Occurrence {
                                polygon,
                                occurrence,
                            })
                            .collect();
                        (VertexId::new(k), seq)
                    })
                    .collect(),
            ),
        })
    }

    pub fn from_config(config: &BrauerConfiguration) -> Self {
        let orientation = config.explicit_orientation();
        ConfigDocument {
            schema: Some(SCHEMA_VERSION),
            vertices: config
                .vertices()
                .iter()
                .map(|v| VertexEntry {
                    id: v.id.as_str().to_string(),
                    mu: v.mu,
                })
                .collect(),
            polygons: config
                .polygons()
                .iter()
                .map(|p| p.entries().iter().map(|e| e.as_str().to_string()).collect())
                .collect(),
            orientation: (!orientation.is_empty()).then(|| {
                orientation
                    .iter()
                    .map(|(k, seq)| {
                        (
                            k.as_str().to_string(),
                            seq.iter().map(|o| [o.polygon, o.occurrence]).collect(),
                        )
                    })
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}
