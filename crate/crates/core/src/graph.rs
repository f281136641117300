//! Undirected graphs over dense node ids, hop distances and cost functions.
//!
//! A [`Graph`] is fixed at creation except for edge deletion. A
//! [`CostFunction`] is either the hop metric of a graph or an explicit
//! symmetric integer matrix; both answer row queries so that large hop
//! metrics never need to be materialized.

use std::borrow::Cow;
use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Simple undirected graph. Neighbor sets are ordered so that every
/// "lowest id" rule in the crate is a plain iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<NodeId>>,
    edge_count: usize,
}

impl Graph {
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        if n == 0 {
            return Err(Error::InvalidParameter("a graph needs at least one node".into()));
        }
        let mut adj = vec![BTreeSet::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            check_node(u, n)?;
            check_node(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !adj[u].insert(v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[v].insert(u);
            edge_count += 1;
        }
        Ok(Self { adj, edge_count })
    }

    /// Like [`Graph::from_edges`] but silently merges repeated edges.
    pub(crate) fn from_edge_set<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let set: BTreeSet<(NodeId, NodeId)> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        Self::from_edges(n, set)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edges(n, std::iter::empty())
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter("a cycle needs at least 3 nodes".into()));
        }
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Star with center 0.
    pub fn star(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|v| (0, v)))
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.adj.len() && self.adj[u].contains(&v)
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        check_node(v, self.adj.len())
    }

    /// Removes the edge `{u, v}`. Edges are never added after creation.
    pub fn delete_edge(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !self.adj[u].remove(&v) {
            return Err(Error::MissingEdge(u.min(v), u.max(v)));
        }
        self.adj[v].remove(&u);
        self.edge_count -= 1;
        Ok(())
    }

    /// Sentinel used for unreachable nodes: `n + 1`.
    pub fn unreachable(&self) -> u64 {
        self.adj.len() as u64 + 1
    }

    pub fn bfs_distances(&self, source: NodeId) -> Result<Vec<u64>> {
        self.check_node(source)?;
        Ok(self.bfs_unchecked(source))
    }

    fn bfs_unchecked(&self, source: NodeId) -> Vec<u64> {
        self.multi_source_bfs(std::iter::once(source))
    }

    /// Hop distance from every node to the nearest of `sources`, with the
    /// `n + 1` sentinel where none is reachable. Sources must be valid ids.
    pub fn multi_source_bfs<I: IntoIterator<Item = NodeId>>(&self, sources: I) -> Vec<u64> {
        let sentinel = self.unreachable();
        let mut dist = vec![sentinel; self.adj.len()];
        let mut queue = VecDeque::new();
        for s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &w in &self.adj[u] {
                if dist[w] == sentinel {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Nodes of the connected component containing `v`, ascending.
    pub fn component(&self, v: NodeId) -> Vec<NodeId> {
        let sentinel = self.unreachable();
        self.bfs_unchecked(v)
            .into_iter()
            .enumerate()
            .filter(|&(_, d)| d != sentinel)
            .map(|(u, _)| u)
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component(0).len() == self.adj.len()
    }
}

fn check_node(v: NodeId, n: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::InvalidNode { node: v, n })
    }
}

/// Free-function form of [`Graph::bfs_distances`].
pub fn bfs_distances(graph: &Graph, source: NodeId) -> Result<Vec<u64>> {
    graph.bfs_distances(source)
}

/// Free-function form of [`Graph::delete_edge`], returning the updated graph.
pub fn delete_edge(mut graph: Graph, u: NodeId, v: NodeId) -> Result<Graph> {
    graph.delete_edge(u, v)?;
    Ok(graph)
}

/// Dense symmetric matrix of nonnegative integer costs with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostMatrix {
    n: usize,
    values: Vec<u64>,
}

impl CostMatrix {
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("empty matrix".into()));
        }
        let mut values = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            values.extend_from_slice(row);
        }
        let m = Self { n, values };
        for u in 0..n {
            if m.get(u, u) != 0 {
                return Err(Error::InvalidMatrix(format!("diagonal entry ({u},{u}) is nonzero")));
            }
            for v in u + 1..n {
                if m.get(u, v) != m.get(v, u) {
                    return Err(Error::InvalidMatrix(format!("entries ({u},{v}) and ({v},{u}) differ")));
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from weighted unordered pairs. Every pair `u < v`
    /// must be listed exactly once.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, u64)>,
    {
        if n == 0 {
            return Err(Error::InvalidMatrix("empty matrix".into()));
        }
        let mut values = vec![0; n * n];
        let mut seen = vec![false; n * n];
        for (u, v, w) in pairs {
            check_node(u, n)?;
            check_node(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if seen[u * n + v] {
                return Err(Error::InvalidMatrix(format!("pair ({u},{v}) listed twice")));
            }
            seen[u * n + v] = true;
            seen[v * n + u] = true;
            values[u * n + v] = w;
            values[v * n + u] = w;
        }
        for u in 0..n {
            for v in u + 1..n {
                if !seen[u * n + v] {
                    return Err(Error::InvalidMatrix(format!("pair ({u},{v}) is missing")));
                }
            }
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: NodeId, v: NodeId) -> u64 {
        self.values[u * self.n + v]
    }

    pub fn row(&self, u: NodeId) -> &[u64] {
        &self.values[u * self.n..(u + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.n).map(|u| self.row(u).to_vec()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum CostKind {
    Hop(Graph),
    Matrix(CostMatrix),
}

/// Symmetric nonnegative integer cost over node pairs.
#[derive(Debug, Clone)]
pub struct CostFunction {
    kind: CostKind,
    triangle: OnceLock<Option<(NodeId, NodeId, NodeId)>>,
}

impl PartialEq for CostFunction {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl CostFunction {
    pub fn hop(graph: Graph) -> Self {
        Self {
            kind: CostKind::Hop(graph),
            triangle: OnceLock::new(),
        }
    }

    pub fn matrix(matrix: CostMatrix) -> Self {
        Self {
            kind: CostKind::Matrix(matrix),
            triangle: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        match &self.kind {
            CostKind::Hop(g) => g.node_count(),
            CostKind::Matrix(m) => m.n(),
        }
    }

    pub fn graph(&self) -> Option<&Graph> {
        match &self.kind {
            CostKind::Hop(g) => Some(g),
            CostKind::Matrix(_) => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&CostMatrix> {
        match &self.kind {
            CostKind::Hop(_) => None,
            CostKind::Matrix(m) => Some(m),
        }
    }

    /// All costs from `u`. For hop metrics this runs a BFS, and
    /// unreachable nodes carry the `n + 1` sentinel.
    pub fn row(&self, u: NodeId) -> Cow<'_, [u64]> {
        match &self.kind {
            CostKind::Hop(g) => Cow::Owned(g.bfs_unchecked(u)),
            CostKind::Matrix(m) => Cow::Borrowed(m.row(u)),
        }
    }

    /// True when `value` is the hop metric's unreachable sentinel.
    pub fn is_unreachable(&self, value: u64) -> bool {
        match &self.kind {
            CostKind::Hop(g) => value >= g.unreachable(),
            CostKind::Matrix(_) => false,
        }
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        check_node(v, self.n())
    }

    /// Cost of a single pair; errors if unreachable under a hop metric.
    pub fn cost(&self, u: NodeId, v: NodeId) -> Result<u64> {
        self.check_node(u)?;
        self.check_node(v)?;
        let value = match &self.kind {
            CostKind::Hop(g) => g.bfs_unchecked(u)[v],
            CostKind::Matrix(m) => m.get(u, v),
        };
        if self.is_unreachable(value) {
            Err(Error::Unreachable { from: u, to: v })
        } else {
            Ok(value)
        }
    }

    /// Materializes every row.
    pub fn to_matrix(&self) -> Result<CostMatrix> {
        match &self.kind {
            CostKind::Matrix(m) => Ok(m.clone()),
            CostKind::Hop(g) => {
                let rows: Vec<Vec<u64>> = (0..g.node_count()).map(|u| g.bfs_unchecked(u)).collect();
                if rows[0].iter().any(|&d| d >= g.unreachable()) {
                    return Err(Error::Disconnected);
                }
                CostMatrix::from_rows(rows)
            }
        }
    }

    /// Lexicographically least `(u, w, v)` with `c(u,v) > c(u,w) + c(w,v)`.
    pub fn triangle_violation(&self) -> Option<(NodeId, NodeId, NodeId)> {
        *self.triangle.get_or_init(|| {
            let n = self.n();
            let rows: Vec<Cow<'_, [u64]>> = (0..n).map(|u| self.row(u)).collect();
            for u in 0..n {
                for w in 0..n {
                    for v in 0..n {
                        if rows[u][v] > rows[u][w] + rows[w][v] {
                            return Some((u, w, v));
                        }
                    }
                }
            }
            None
        })
    }

    pub fn check_triangle(&self) -> Result<()> {
        match self.triangle_violation() {
            None => Ok(()),
            Some((u, w, v)) => Err(Error::TriangleViolation { u, w, v }),
        }
    }

    pub fn is_metric(&self) -> bool {
        self.triangle_violation().is_none()
    }

    /// Minimum and maximum cost over unordered pairs of distinct nodes.
    pub fn min_max_pair_cost(&self) -> Option<(u64, u64)> {
        let n = self.n();
        let mut acc: Option<(u64, u64)> = None;
        for u in 0..n {
            let row = self.row(u);
            for &c in &row[u + 1..] {
                acc = Some(match acc {
                    None => (c, c),
                    Some((lo, hi)) => (lo.min(c), hi.max(c)),
                });
            }
        }
        acc
    }

    /// Distinct pairs whose cost is zero. Allowed, but reported by validators.
    pub fn zero_cost_pairs(&self) -> Vec<(NodeId, NodeId)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            let row = self.row(u);
            for v in u + 1..n {
                if row[v] == 0 {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// All-pairs hop distances of a connected graph as an explicit matrix.
pub fn metric_closure(graph: &Graph) -> Result<CostFunction> {
    CostFunction::hop(graph.clone()).to_matrix().map(CostFunction::matrix)
}

/// A permutation of the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<NodeId>", into = "Vec<NodeId>")]
pub struct Traversal(Vec<NodeId>);

impl Traversal {
    pub fn new(order: Vec<NodeId>, n: usize) -> Result<Self> {
        if order.len() != n {
            return Err(Error::NotPermutation { n });
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotPermutation { n });
            }
        }
        Ok(Self(order))
    }

    pub(crate) fn new_unchecked(order: Vec<NodeId>) -> Self {
        Self(order)
    }

    pub fn order(&self) -> &[NodeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn start(&self) -> NodeId {
        self.0[0]
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn into_inner(self) -> Vec<NodeId> {
        self.0
    }

    /// Per-step costs `c(x_i, x_{i+1})`, computing one row per step.
    pub fn step_costs(&self, c: &CostFunction) -> Result<Vec<u64>> {
        if self.0.len() != c.n() {
            return Err(Error::NotPermutation { n: c.n() });
        }
        self.0
            .windows(2)
            .map(|w| {
                let value = c.row(w[0])[w[1]];
                if c.is_unreachable(value) {
                    Err(Error::Unreachable { from: w[0], to: w[1] })
                } else {
                    Ok(value)
                }
            })
            .collect()
    }
}

impl TryFrom<Vec<NodeId>> for Traversal {
    type Error = Error;

    fn try_from(order: Vec<NodeId>) -> Result<Self> {
        let n = order.len();
        Self::new(order, n)
    }
}

impl From<Traversal> for Vec<NodeId> {
    fn from(t: Traversal) -> Self {
        t.0
    }
}

/// Sum of consecutive costs along the traversal.
pub fn cost_of(t: &Traversal, c: &CostFunction) -> Result<u64> {
    Ok(t.step_costs(c)?.into_iter().sum())
}
