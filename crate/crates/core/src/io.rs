//! JSON instance files.
//!
//! ```json
//! {"vertices": ["p", "q"], "edges": [{"u": "p", "v": "q", "w": "3/4"}],
//!  "matching": [["p", "q"]]}
//! ```
//!
//! Weights are exact: decimal strings (`"0.5"`), fractions (`"3/4"`) or JSON
//! integers. `matching` is optional.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{Matching, VertexId, WeightedGraph};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightField {
    Text(String),
    Integer(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub u: String,
    pub v: String,
    pub w: WeightField,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<(String, String)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: WeightedGraph,
    pub matching: Option<Matching>,
}

impl Instance {
    pub fn new(graph: WeightedGraph) -> Self {
        Instance { graph, matching: None }
    }

    pub fn require_matching(&self) -> Result<&Matching> {
        self.matching.as_ref().ok_or(Error::MatchingRequired)
    }
}

fn vertex(g: &WeightedGraph, label: &str) -> Result<VertexId> {
    g.vertex_by_label(label)
        .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex {label:?}")))
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance> {
        let mut g = WeightedGraph::with_labels(self.vertices)?;
        for rec in &self.edges {
            let w = match &rec.w {
                WeightField::Text(s) => s.parse::<Rational>()?,
                WeightField::Integer(i) => Rational::from(*i),
            };
            let (u, v) = (vertex(&g, &rec.u)?, vertex(&g, &rec.v)?);
            g.add_edge(u, v, w)?;
        }
        let matching = match self.matching {
            None => None,
            Some(pairs) => {
                let ids = pairs
                    .iter()
                    .map(|(a, b)| Ok((vertex(&g, a)?, vertex(&g, b)?)))
                    .collect::<Result<Vec<_>>>()?;
                Some(Matching::from_pairs(&g, &ids)?)
            }
        };
        Ok(Instance { graph: g, matching })
    }

    pub fn from_instance(inst: &Instance) -> Self {
        let g = &inst.graph;
        let edges = g
            .edges()
            .iter()
            .map(|e| EdgeRecord {
                u: g.label(e.u).to_string(),
                v: g.label(e.v).to_string(),
                w: WeightField::Text(e.weight.to_string()),
            })
            .collect();
        let matching = inst.matching.as_ref().map(|m| {
            m.edges()
                .map(|id| {
                    let e = g.edge(id);
                    (g.label(e.u).to_string(), g.label(e.v).to_string())
                })
                .collect()
        });
        InstanceFile {
            vertices: g.labels().to_vec(),
            edges,
            matching,
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_instance()
}

/// Canonical compact JSON for an instance.
pub fn emit_instance(inst: &Instance) -> String {
    serde_json::to_string(&InstanceFile::from_instance(inst)).expect("plain data serializes")
}

/// Hex SHA-256 of the canonical form; equal instances hash equally however
/// their files were formatted.
pub fn instance_hash(inst: &Instance) -> String {
    let digest = Sha256::digest(emit_instance(inst).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
