//! Small instance generators shared by tests, the CLI and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamic_sim::FailureSchedule;
use crate::error::Result;
use crate::graph::{CostFunction, CostMatrix, Graph, NodeId};

pub const NODE_A: NodeId = 0;
pub const NODE_B: NodeId = 1;
pub const NODE_C: NodeId = 2;
pub const NODE_D: NodeId = 3;

/// Four-node non-metric instance: `c(A,B) = x`, `c(D,C) = 1`, every other
/// pair costs 2. The cheapest traversal costs 5 while a greedy traversal
/// from D may cost `x + 3`.
pub fn triangle_counterexample(x: u64) -> CostFunction {
    let m = CostMatrix::from_pairs(
        4,
        [
            (NODE_A, NODE_B, x),
            (NODE_A, NODE_C, 2),
            (NODE_A, NODE_D, 2),
            (NODE_B, NODE_C, 2),
            (NODE_B, NODE_D, 2),
            (NODE_C, NODE_D, 1),
        ],
    )
    .expect("fixed instance is well formed");
    CostFunction::matrix(m)
}

/// Mixes a master seed with a stream index (SplitMix64 finalizer) so that
/// independent rows of a sweep get independent generators.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected graph: a random spanning tree plus each remaining pair with
/// probability `extra`.
pub fn random_connected_graph<R: Rng>(n: usize, extra: f64, rng: &mut R) -> Result<Graph> {
    let mut order: Vec<NodeId> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((order[i], parent));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_set(n, edges)
}

/// Shortest-path closure of a random connected graph with edge weights in
/// `1..=max_weight`. Always symmetric and metric, all off-diagonal costs >= 1.
pub fn random_metric<R: Rng>(n: usize, max_weight: u64, rng: &mut R) -> Result<CostFunction> {
    let g = random_connected_graph(n, 0.35, rng)?;
    let inf = u64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        let w = rng.gen_range(1..=max_weight);
        d[u][v] = w;
        d[v][u] = w;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    Ok(CostFunction::matrix(CostMatrix::from_rows(d)?))
}

/// Deletes each edge of `graph` with probability `rate`, at a uniformly
/// random iteration in `1..=horizon`.
pub fn random_schedule<R: Rng>(graph: &Graph, rate: f64, horizon: usize, rng: &mut R) -> FailureSchedule {
    let mut schedule = FailureSchedule::default();
    for (u, v) in graph.edges() {
        if rng.gen_bool(rate) {
            let at = rng.gen_range(1..=horizon.max(1));
            schedule.push(at, (u, v)).expect("each edge is scheduled once");
        }
    }
    schedule
}

/// Uniformly random bijection `node -> rank`.
pub fn random_ranks<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut ranks: Vec<usize> = (0..n).collect();
    ranks.shuffle(rng);
    ranks
}
