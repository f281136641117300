//! Nearest-neighbor traversal of graphs: the greedy heuristic and its
//! bounds, worst-case layered-ring instances, a synchronous simulation of
//! the label-propagating walker under edge failures, agent/adversary
//! exploration games, and rank-based nearest-neighbor trees.

pub mod agents_adversary;
pub mod dynamic_sim;
pub mod error;
pub mod graph;
pub mod instances;
pub mod io;
pub mod layered_ring;
pub mod nn_tree;
pub mod static_nn;

pub use error::{Error, Result};
pub use graph::{bfs_distances, cost_of, delete_edge, metric_closure, CostFunction, CostMatrix, Graph, NodeId, Traversal};
pub use static_nn::{
    approx_ratio, aspect_ratio_bound, lambda_profile, nn_traversal, nn_upper_bound, opt_traversal, optimal_cost, partition_route,
    validate_nn_traversal, LambdaProfile, TieBreak,
};
