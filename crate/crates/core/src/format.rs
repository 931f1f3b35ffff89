//! Instance file format: a JSON document with explicit counts and edge
//! lists.
//!
//! The canonical form sorts both edge lists and omits empty optional fields;
//! parse → serialize is byte-identical on canonical input. Metadata is
//! carried through but takes no part in instance equality.

use crate::error::{BuildError, ParseError};
use crate::graph::{ConnGraph, Instance, RedBlueGraph};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_hint: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Metadata {
    pub fn is_empty(&self) -> bool {
        self.name.is_none() && self.d_hint.is_none() && self.seed.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub red_count: usize,
    pub blue_count: usize,
    pub conn_edges: Vec<(usize, usize)>,
    pub cov_edges: Vec<(usize, usize)>,
    pub k: usize,
    pub t: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terminals: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance, metadata: Option<Metadata>) -> Self {
        InstanceFile {
            red_count: inst.red_count(),
            blue_count: inst.blue_count(),
            conn_edges: inst.conn.edges(),
            cov_edges: inst.cov.edges(),
            k: inst.k,
            t: inst.t,
            terminals: inst.terminals.clone(),
            metadata: metadata.filter(|m| !m.is_empty()),
        }
    }

    pub fn into_instance(self) -> Result<(Instance, Option<Metadata>), ParseError> {
        let conn = ConnGraph::new(self.red_count, &self.conn_edges).map_err(|source| {
            ParseError::Semantic {
                field: "conn_edges",
                source,
            }
        })?;
        let cov = RedBlueGraph::new(self.red_count, self.blue_count, &self.cov_edges).map_err(
            |source| ParseError::Semantic {
                field: "cov_edges",
                source,
            },
        )?;
        let inst = Instance::new(conn, cov, self.k, self.t, self.terminals).map_err(|source| {
            ParseError::Semantic {
                field: "k/t/terminals",
                source,
            }
        })?;
        Ok((inst, self.metadata))
    }
}

pub fn parse_instance(text: &str) -> Result<(Instance, Option<Metadata>), ParseError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    file.into_instance()
}

/// Canonical serialization: fixed field order, sorted deduplicated edges,
/// pretty-printed, trailing newline.
pub fn to_canonical_string(inst: &Instance, metadata: Option<Metadata>) -> String {
    let file = InstanceFile::from_instance(inst, metadata);
    let mut s = serde_json::to_string_pretty(&file).expect("instance files always serialize");
    s.push('\n');
    s
}

/// Source graph for the encoders, as a plain edge list document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphFile {
    pub fn into_graph(self) -> Result<ConnGraph, BuildError> {
        ConnGraph::new(self.vertex_count, &self.edges)
    }
}

/// Source set system for the encoders.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetSystemFile {
    pub universe_size: usize,
    pub sets: Vec<Vec<usize>>,
}

impl SetSystemFile {
    pub fn into_set_system(self) -> Result<crate::encode::SetSystem, BuildError> {
        crate::encode::SetSystem::new(self.universe_size, self.sets)
    }
}
