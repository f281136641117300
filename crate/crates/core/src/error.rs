use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("node {node} is out of range for a graph with {n} nodes")]
    InvalidNode { node: NodeId, n: usize },

    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(NodeId, NodeId),

    #[error("edge {{{0}, {1}}} does not exist")]
    MissingEdge(NodeId, NodeId),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("node {to} is unreachable from node {from}")]
    Unreachable { from: NodeId, to: NodeId },

    #[error("sequence is not a permutation of the {n} nodes")]
    NotPermutation { n: usize },

    #[error("cost matrix is invalid: {0}")]
    InvalidMatrix(String),

    #[error("step {index} is not greedy: chose {chosen} at cost {chosen_cost}, but {best} costs {best_cost}")]
    NotGreedy {
        index: usize,
        chosen: NodeId,
        chosen_cost: u64,
        best: NodeId,
        best_cost: u64,
    },

    #[error("triangle inequality violated: c({u},{v}) > c({u},{w}) + c({w},{v})")]
    TriangleViolation { u: NodeId, w: NodeId, v: NodeId },

    #[error("instance has {n} nodes, exact search is limited to {limit}")]
    InstanceTooLarge { n: usize, limit: usize },

    #[error("no optimal-cost certificate is available for this instance")]
    NoOptCertificate,

    #[error("aspect ratio is undefined: {0}")]
    AspectRatioUndefined(String),

    #[error("scripted tie-break chose node {chosen}, which is not among the tied candidates {candidates:?}")]
    ScriptIneligible {
        chosen: NodeId,
        candidates: Vec<NodeId>,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("n = {n} is outside the padding window [{lo}, {hi}]")]
    PadWindow { n: usize, lo: usize, hi: usize },

    #[error("failure schedule is invalid: {0}")]
    InvalidSchedule(String),

    #[error("illegal move at step {step}: {from} -> {to} is not an edge")]
    IllegalMove {
        step: usize,
        from: NodeId,
        to: NodeId,
    },

    #[error("illegal halt at step {step}: node {unvisited} is unvisited and reachable")]
    IllegalHalt { step: usize, unvisited: NodeId },

    #[error("illegal deletion after step {step}: edge {{{u}, {v}}} does not exist")]
    IllegalDeletion { step: usize, u: NodeId, v: NodeId },

    #[error("step budget of {budget} exhausted")]
    BudgetExhausted { budget: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
