//! Rank-based nearest-neighbor trees and the minimum spanning tree they are
//! compared against.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CostFunction, NodeId};
use crate::static_nn::LambdaProfile;

/// Bijection from nodes to ranks `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct RankAssignment(Vec<usize>);

impl RankAssignment {
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        let n = ranks.len();
        let mut seen = vec![false; n];
        for &r in &ranks {
            if r >= n || std::mem::replace(&mut seen[r], true) {
                return Err(Error::NotPermutation { n });
            }
        }
        Ok(Self(ranks))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn rank(&self, v: NodeId) -> usize {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_node(&self) -> Option<NodeId> {
        self.0.iter().position(|&r| r + 1 == self.0.len())
    }
}

impl TryFrom<Vec<usize>> for RankAssignment {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<RankAssignment> for Vec<usize> {
    fn from(r: RankAssignment) -> Self {
        r.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub u: NodeId,
    pub v: NodeId,
    pub cost: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedTree {
    pub edges: Vec<TreeEdge>,
    pub cost: u64,
}

impl RankedTree {
    /// `λ_j` = number of edges of cost at least `j`.
    pub fn lambda_profile(&self) -> LambdaProfile {
        let costs: Vec<u64> = self.edges.iter().map(|e| e.cost).collect();
        LambdaProfile::from_step_costs(&costs)
    }

    /// `n - 1` edges that connect all `n` nodes.
    pub fn is_spanning_tree(&self, n: usize) -> bool {
        if self.edges.len() + 1 != n {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        self.edges.iter().all(|e| {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            parent[a] = b;
            a != b
        })
    }

    /// Every node except the top-ranked one has exactly one edge to a
    /// node of higher rank.
    pub fn has_rank_property(&self, r: &RankAssignment) -> bool {
        let mut up = vec![0usize; r.len()];
        for e in &self.edges {
            let low = if r.rank(e.u) < r.rank(e.v) { e.u } else { e.v };
            up[low] += 1;
        }
        (0..r.len()).all(|v| up[v] == usize::from(Some(v) != r.max_node()))
    }
}

/// Connects every node but the top-ranked one to its cheapest node of
/// strictly higher rank, lowest id among equals.
pub fn nn_tree(c: &CostFunction, r: &RankAssignment) -> Result<RankedTree> {
    let n = c.n();
    if r.len() != n {
        return Err(Error::NotPermutation { n });
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 0..n {
        let row = c.row(v);
        let best = (0..n).filter(|&w| r.rank(w) > r.rank(v)).min_by_key(|&w| (row[w], w));
        if let Some(w) = best {
            if c.is_unreachable(row[w]) {
                return Err(Error::Unreachable { from: v, to: w });
            }
            edges.push(TreeEdge {
                u: v.min(w),
                v: v.max(w),
                cost: row[w],
            });
        }
    }
    let cost = edges.iter().map(|e| e.cost).sum();
    Ok(RankedTree { edges, cost })
}

/// Prim's algorithm over the complete cost graph.
pub fn mst_cost(c: &CostFunction) -> Result<(u64, Vec<TreeEdge>)> {
    let n = c.n();
    let mut in_tree = vec![false; n];
    let mut best = vec![(u64::MAX, 0usize); n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    best[0] = (0, 0);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !in_tree[v]).min_by_key(|&v| (best[v].0, v)).expect("nodes remain");
        in_tree[v] = true;
        if v != 0 {
            let (w, u) = best[v];
            if c.is_unreachable(w) {
                return Err(Error::Disconnected);
            }
            edges.push(TreeEdge {
                u: u.min(v),
                v: u.max(v),
                cost: w,
            });
        }
        let row = c.row(v);
        for w in 0..n {
            if !in_tree[w] && row[w] < best[w].0 {
                best[w] = (row[w], v);
            }
        }
    }
    Ok((edges.iter().map(|e| e.cost).sum(), edges))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeBoundReport {
    pub tree_cost: u64,
    pub mst_cost: u64,
    /// `⌈2 (1 + ln n) · mst⌉`.
    pub budget: u64,
    pub ok: bool,
}

/// Compares the tree cost to `⌈2 (1 + ln n) · MST⌉`. Non-metric inputs are
/// rejected because the bound is not claimed for them.
pub fn nnt_bound_check(c: &CostFunction, r: &RankAssignment) -> Result<TreeBoundReport> {
    c.check_triangle()?;
    let tree = nn_tree(c, r)?;
    let (mst, _) = mst_cost(c)?;
    let n = c.n().max(1) as f64;
    let budget = (2.0 * (1.0 + n.ln()) * mst as f64).ceil() as u64;
    Ok(TreeBoundReport {
        tree_cost: tree.cost,
        mst_cost: mst,
        budget,
        ok: tree.cost <= budget,
    })
}
