//! Text formats: graph JSON, plain edge lists, DOT, and generator sidecars.
//!
//! Graph JSON is `{"n": 4, "edges": [[0, 1], ...]}` with an optional
//! `"weights": [[u, v, w], ...]` that must list every pair exactly once and
//! turns the instance into an explicit cost matrix.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dynamic_sim::{Edge, FailureSchedule};
use crate::error::{Error, Result};
use crate::graph::{CostFunction, CostMatrix, Graph, NodeId, Traversal};
use crate::layered_ring::Membership;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<(NodeId, NodeId, u64)>>,
}

/// A graph together with the cost function used for traversals: the hop
/// metric unless explicit weights were given.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub cost: CostFunction,
}

impl GraphFile {
    pub fn from_graph(graph: &Graph) -> Self {
        Self {
            n: graph.node_count(),
            edges: graph.edges().collect(),
            weights: None,
        }
    }

    pub fn with_matrix(graph: &Graph, matrix: &CostMatrix) -> Self {
        let n = matrix.n();
        let weights = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, matrix.get(u, v)))).collect();
        Self {
            weights: Some(weights),
            ..Self::from_graph(graph)
        }
    }

    pub fn into_instance(self) -> Result<Instance> {
        let graph = Graph::from_edges(self.n, self.edges)?;
        let cost = match self.weights {
            Some(w) => CostFunction::matrix(CostMatrix::from_pairs(self.n, w)?),
            None => CostFunction::hop(graph.clone()),
        };
        Ok(Instance { graph, cost })
    }
}

pub fn parse_graph_json(text: &str) -> Result<Instance> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_instance()
}

pub fn graph_to_json(graph: &Graph) -> String {
    serde_json::to_string(&GraphFile::from_graph(graph)).expect("graph serializes")
}

/// `n <count>` followed by one `u v` per line. Blank lines and lines
/// starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("missing `n <count>` header".into()))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", count] => count.parse::<usize>().map_err(|e| Error::Parse(format!("header: {e}")))?,
        _ => return Err(Error::Parse(format!("expected `n <count>`, found `{header}`"))),
    };
    let mut edges = Vec::new();
    for (idx, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = parts.as_slice() else {
            return Err(Error::Parse(format!("line {}: expected `u v`", idx + 1)));
        };
        let parse = |s: &str| s.parse::<NodeId>().map_err(|e| Error::Parse(format!("line {}: {e}", idx + 1)));
        edges.push((parse(u)?, parse(v)?));
    }
    Graph::from_edges(n, edges)
}

pub fn edge_list(graph: &Graph) -> String {
    let mut out = format!("n {}\n", graph.node_count());
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Graphviz rendering. With `positions`, nodes are labelled `id@pos`.
pub fn to_dot(graph: &Graph, positions: Option<&[usize]>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..graph.node_count() {
        match positions {
            Some(p) => {
                let _ = writeln!(out, "  {v} [label=\"{v}@{}\"];", p[v]);
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// Everything needed to replay a generated instance exactly.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub family: String,
    pub params: serde_json::Map<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membership: Option<Vec<Membership>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nn_route: Option<Traversal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nn_route_cost: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tie_script: Option<Vec<NodeId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian_route: Option<Traversal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree_edges: Option<Vec<Edge>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<NodeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<FailureSchedule>,
}
