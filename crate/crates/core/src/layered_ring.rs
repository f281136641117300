//! Worst-case families for the greedy heuristic.
//!
//! A layered ring `LR^k(ν)` has a backbone `b_0..b_ν` at positions `0..ν`
//! and `k` layers of extra nodes, one node per position of each layer set.
//! Two nodes are adjacent exactly when their positions differ by at most
//! one modulo `ν + 1`.
//!
//! Node numbering: backbone first, then layer `k`, layer `k - 1`, down to
//! layer 1, each in increasing position. With this numbering the
//! lowest-id greedy traversal from `b_0` is the canonical expensive route.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, Traversal};

const MAX_POW2_EXPONENT: u32 = 30;

/// Sorted positions in `[0, ν]`, always containing both ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LayerSet(Vec<usize>);

impl LayerSet {
    fn from_set(set: BTreeSet<usize>) -> Self {
        Self(set.into_iter().collect())
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    /// Consecutive pairs `(a, b)` with no position strictly between them.
    pub fn legs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn is_subset_of(&self, other: &LayerSet) -> bool {
        self.0.iter().all(|&p| other.contains(p))
    }
}

fn check_pow2_exponent(m: u32) -> Result<()> {
    if m == 0 || m > MAX_POW2_EXPONENT {
        return Err(Error::InvalidParameter(format!("m must be in 1..={MAX_POW2_EXPONENT}")));
    }
    Ok(())
}

/// Layers `L^1..L^k` for ring size `2^m`: the first layer is
/// `{0, 1, 2, 4, .., 2^m}` and each further layer adds, for every leg
/// `(a, b)`, the points `a + 2^t` up to `b`.
pub fn layers_pow2(m: u32, k: usize) -> Result<Vec<LayerSet>> {
    check_pow2_exponent(m)?;
    let mut first = BTreeSet::from([0usize]);
    first.extend((0..=m).map(|t| 1usize << t));
    let mut layers = vec![LayerSet::from_set(first)];
    while layers.len() < k {
        let prev = layers.last().expect("nonempty");
        let mut next = BTreeSet::from([0usize]);
        for (a, b) in prev.legs() {
            let span = b - a;
            debug_assert!(span.is_power_of_two());
            next.extend((0..=span.trailing_zeros()).map(|t| a + (1usize << t)));
        }
        layers.push(LayerSet::from_set(next));
    }
    layers.truncate(k);
    Ok(layers)
}

/// Layers for an arbitrary ring size `ν >= 2`, using ceiling halving:
/// `L^1 = {0} ∪ {⌈ν/2^t⌉}` and each leg `(a, b)` contributes
/// `a + ⌈(b - a)/2^t⌉` for all `t >= 0`.
pub fn layers_general(nu: usize, k: usize) -> Result<Vec<LayerSet>> {
    if nu < 2 {
        return Err(Error::InvalidParameter("ring size must be at least 2".into()));
    }
    let mut first = BTreeSet::from([0usize]);
    first.extend(ceil_halvings(nu));
    let mut layers = vec![LayerSet::from_set(first)];
    while layers.len() < k {
        let prev = layers.last().expect("nonempty");
        let mut next = BTreeSet::from([0usize]);
        for (a, b) in prev.legs() {
            next.extend(ceil_halvings(b - a).map(|d| a + d));
        }
        layers.push(LayerSet::from_set(next));
    }
    layers.truncate(k);
    Ok(layers)
}

/// `⌈x / 2^t⌉` for `t = 0, 1, ..` until it reaches 1.
fn ceil_halvings(x: usize) -> impl Iterator<Item = usize> {
    let mut cur = Some(x);
    std::iter::from_fn(move || {
        let v = cur?;
        cur = if v <= 1 { None } else { Some(v.div_ceil(2)) };
        Some(v)
    })
}

/// Where a node lives: on the backbone or in layer `i >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Backbone,
    Layer(usize),
}

#[derive(Debug, Clone)]
pub struct LayeredRing {
    nu: usize,
    layers: Vec<LayerSet>,
    positions: Vec<usize>,
    membership: Vec<Membership>,
    /// First node id of layer `i` at index `i - 1`.
    layer_offsets: Vec<NodeId>,
    graph: Graph,
}

/// `LR^k(ν)` with the ceiling-halving layers, which coincide with the
/// power-of-two layers when `ν = 2^m`.
pub fn build_lr(nu: usize, k: usize) -> Result<LayeredRing> {
    let layers = if k == 0 { Vec::new() } else { layers_general(nu, k)? };
    if nu < 2 {
        return Err(Error::InvalidParameter("ring size must be at least 2".into()));
    }
    LayeredRing::from_layers(nu, layers)
}

/// `LR^k(2^m)` built directly from the power-of-two layers.
pub fn build_lr_pow2(m: u32, k: usize) -> Result<LayeredRing> {
    let layers = layers_pow2(m, k)?;
    LayeredRing::from_layers(1 << m, layers)
}

impl LayeredRing {
    fn from_layers(nu: usize, layers: Vec<LayerSet>) -> Result<Self> {
        let k = layers.len();
        let mut positions: Vec<usize> = (0..=nu).collect();
        let mut membership = vec![Membership::Backbone; nu + 1];
        let mut layer_offsets = vec![0; k];
        for i in (1..=k).rev() {
            layer_offsets[i - 1] = positions.len();
            for &p in layers[i - 1].positions() {
                positions.push(p);
                membership.push(Membership::Layer(i));
            }
        }
        let ring = nu + 1;
        let mut at_position: Vec<Vec<NodeId>> = vec![Vec::new(); ring];
        for (v, &p) in positions.iter().enumerate() {
            at_position[p].push(v);
        }
        let mut edges = Vec::new();
        for p in 0..ring {
            let here = &at_position[p];
            for (i, &u) in here.iter().enumerate() {
                edges.extend(here[i + 1..].iter().map(|&v| (u, v)));
            }
            let q = (p + 1) % ring;
            for &u in here {
                edges.extend(at_position[q].iter().map(|&v| (u, v)));
            }
        }
        let graph = Graph::from_edge_set(positions.len(), edges)?;
        Ok(Self {
            nu,
            layers,
            positions,
            membership,
            layer_offsets,
            graph,
        })
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn k(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[LayerSet] {
        &self.layers
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    pub fn position(&self, v: NodeId) -> usize {
        self.positions[v]
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn membership(&self, v: NodeId) -> Membership {
        self.membership[v]
    }

    pub fn memberships(&self) -> &[Membership] {
        &self.membership
    }

    pub fn backbone(&self, i: usize) -> NodeId {
        assert!(i <= self.nu);
        i
    }

    /// Node `ℓ^i_t`, if `t` belongs to layer `i`.
    pub fn layer_node(&self, i: usize, t: usize) -> Option<NodeId> {
        let layer = self.layers.get(i.checked_sub(1)?)?;
        let idx = layer.positions().binary_search(&t).ok()?;
        Some(self.layer_offsets[i - 1] + idx)
    }

    /// Backbone in order, then layer `k` down to layer 1, each by position.
    pub fn canonical_nn_route(&self) -> Traversal {
        let mut order: Vec<NodeId> = (0..=self.nu).collect();
        for i in (1..=self.k()).rev() {
            let start = self.layer_offsets[i - 1];
            order.extend(start..start + self.layers[i - 1].len());
        }
        Traversal::new_unchecked(order)
    }

    /// Sweeps positions `0..ν`, visiting every node at a position before
    /// moving on. Each step has cost 1.
    pub fn hamiltonian_route(&self) -> Traversal {
        let mut order: Vec<NodeId> = (0..self.node_count()).collect();
        order.sort_by_key(|&v| (self.positions[v], v));
        Traversal::new_unchecked(order)
    }

    /// Hop distance between two nodes, from positions alone.
    pub fn distance(&self, u: NodeId, v: NodeId) -> u64 {
        if u == v {
            return 0;
        }
        let (a, b) = (self.positions[u], self.positions[v]);
        let gap = a.abs_diff(b);
        gap.min(self.nu + 1 - gap).max(1) as u64
    }

    /// Cost of the canonical route, from positions (no BFS).
    pub fn canonical_route_cost(&self) -> u64 {
        let route = self.canonical_nn_route();
        route.order().windows(2).map(|w| self.distance(w[0], w[1])).sum()
    }
}

/// `(k + 1)(2^m + 1) - 1`, the cost of the canonical route on `LR^k(2^m)`.
pub fn canonical_cost_formula(m: u32, k: usize) -> u64 {
    (k as u64 + 1) * ((1u64 << m) + 1) - 1
}

pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `S(k, t)`: number of legs of length `2^t` in layer `L^k` of `LR(2^m)`,
/// for `1 <= k <= max_k` and `0 <= t < m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegCountTable {
    pub m: u32,
    /// `rows[k - 1][t]`.
    pub rows: Vec<Vec<u64>>,
}

impl LegCountTable {
    pub fn get(&self, k: usize, t: u32) -> u64 {
        self.rows[k - 1].get(t as usize).copied().unwrap_or(0)
    }

    pub fn max_k(&self) -> usize {
        self.rows.len()
    }

    /// From the recurrence `S(k, t) = Σ_{u>t} S(k-1, u)` for `t > 0` and
    /// `S(k, 0) = S(k-1, 0) + 2 Σ_{u>0} S(k-1, u)`.
    pub fn recurrence(m: u32, max_k: usize) -> Self {
        let width = m as usize;
        let mut rows = Vec::with_capacity(max_k);
        if max_k > 0 {
            let mut first = vec![1u64; width];
            first[0] = 2;
            rows.push(first);
        }
        while rows.len() < max_k {
            let prev: &Vec<u64> = rows.last().expect("nonempty");
            let mut next = vec![0u64; width];
            for t in 1..width {
                next[t] = prev[t + 1..].iter().sum();
            }
            next[0] = prev[0] + 2 * prev[1..].iter().sum::<u64>();
            rows.push(next);
        }
        Self { m, rows }
    }

    /// `S(k, t) = C(m-t-1, k-1)` for `t > 0`, `S(k, 0) = 2 Σ_{i<k} C(m-1, i)`.
    pub fn closed_form(m: u32, max_k: usize) -> Self {
        let m64 = u64::from(m);
        let rows = (1..=max_k as u64)
            .map(|k| {
                (0..m64)
                    .map(|t| {
                        if t == 0 {
                            2 * (0..k).map(|i| binomial(m64 - 1, i)).sum::<u64>()
                        } else {
                            binomial(m64 - t - 1, k - 1)
                        }
                    })
                    .collect()
            })
            .collect();
        Self { m, rows }
    }

    /// Counted directly from generated layers.
    pub fn enumerate(m: u32, max_k: usize) -> Result<Self> {
        let width = m as usize;
        let rows = layers_pow2(m, max_k)?
            .iter()
            .map(|layer| {
                let mut row = vec![0u64; width];
                for (a, b) in layer.legs() {
                    row[(b - a).trailing_zeros() as usize] += 1;
                }
                row
            })
            .collect();
        Ok(Self { m, rows })
    }

    /// `|V(LR^k(2^m))| = 2^m + 1 + Σ_j (1 + Σ_t S(j, t))`.
    pub fn vertex_count(&self) -> u64 {
        (1u64 << self.m) + 1 + self.rows.iter().map(|row| 1 + row.iter().sum::<u64>()).sum::<u64>()
    }
}

pub fn leg_counts(m: u32, k: usize) -> LegCountTable {
    LegCountTable::recurrence(m, k)
}

/// `2^m + k + 1 + 2k C(m-1, 0) + Σ_{i=1}^{k} (2k - 2i + 1) C(m-1, i)`.
pub fn vertex_count_formula(m: u32, k: usize) -> u64 {
    let (m, k) = (u64::from(m), k as u64);
    (1u64 << m) + k + 1 + 2 * k + (1..=k).map(|i| (2 * k - 2 * i + 1) * binomial(m - 1, i)).sum::<u64>()
}

/// `LR^k(ν)` plus a clique of extra nodes attached to `b_0` and `ℓ^1_ν`
/// (or `b_ν` when there are no layers).
#[derive(Debug, Clone)]
pub struct PaddedRing {
    pub ring: LayeredRing,
    pub extra: Vec<NodeId>,
    pub graph: Graph,
}

/// Pads `LR^k(ν)` to exactly `n` nodes with at most `k + 1` extra nodes.
pub fn pad_to_n(nu: usize, k: usize, n: usize) -> Result<PaddedRing> {
    let ring = build_lr(nu, k)?;
    let lo = ring.node_count();
    let hi = lo + k + 1;
    if n < lo || n > hi {
        return Err(Error::PadWindow { n, lo, hi });
    }
    let extra: Vec<NodeId> = (lo..n).collect();
    let anchor = if k == 0 { nu } else { ring.layer_node(1, nu).expect("ν is in every layer") };
    let mut edges: Vec<(NodeId, NodeId)> = ring.graph().edges().collect();
    for (i, &x) in extra.iter().enumerate() {
        edges.extend(extra[i + 1..].iter().map(|&y| (x, y)));
        edges.push((x, 0));
        edges.push((x, anchor));
    }
    let graph = Graph::from_edge_set(n, edges)?;
    Ok(PaddedRing { ring, extra, graph })
}

impl PaddedRing {
    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// Extra clique first, then the canonical route of the ring.
    pub fn nn_route(&self) -> Traversal {
        let mut order = self.extra.clone();
        order.extend_from_slice(self.ring.canonical_nn_route().order());
        Traversal::new_unchecked(order)
    }

    /// Extra clique, then the position sweep of the ring.
    pub fn hamiltonian_route(&self) -> Traversal {
        let mut order = self.extra.clone();
        order.extend_from_slice(self.ring.hamiltonian_route().order());
        Traversal::new_unchecked(order)
    }
}

/// Two cliques of `n/3` nodes joined through a path of `n/3` internal
/// nodes, with a spanning tree that contains no path covering either
/// clique, and the start node for the restarting-DFS lower bound.
///
/// Ids: first clique `0..q`, path `q..2q`, second clique `2q..3q`. The
/// path attaches to `q - 1` and `2q`; the tree is a star inside each
/// clique centered on its attachment node, plus the path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfsKiller {
    pub n: usize,
    pub cliques: [Vec<NodeId>; 2],
    pub path: Vec<NodeId>,
    pub attach: [NodeId; 2],
    pub tree_edges: Vec<(NodeId, NodeId)>,
    pub start: NodeId,
}

pub fn build_dfs_killer(n: usize) -> Result<(Graph, DfsKiller)> {
    if !n.is_multiple_of(3) || n / 3 <= 3 {
        return Err(Error::InvalidParameter("n must be divisible by 3 with n/3 > 3".into()));
    }
    let q = n / 3;
    let first: Vec<NodeId> = (0..q).collect();
    let path: Vec<NodeId> = (q..2 * q).collect();
    let second: Vec<NodeId> = (2 * q..3 * q).collect();
    let attach = [q - 1, 2 * q];

    let mut edges = Vec::new();
    for clique in [&first, &second] {
        for (i, &u) in clique.iter().enumerate() {
            edges.extend(clique[i + 1..].iter().map(|&v| (u, v)));
        }
    }
    let chain: Vec<NodeId> = std::iter::once(attach[0])
        .chain(path.iter().copied())
        .chain(std::iter::once(attach[1]))
        .collect();
    let chain_edges: Vec<(NodeId, NodeId)> = chain.windows(2).map(|w| (w[0], w[1])).collect();
    edges.extend(&chain_edges);

    let mut tree_edges = chain_edges;
    for (clique, &center) in [&first, &second].into_iter().zip(&attach) {
        tree_edges.extend(clique.iter().filter(|&&v| v != center).map(|&v| (v.min(center), v.max(center))));
    }
    tree_edges.sort_unstable();

    let graph = Graph::from_edges(n, edges)?;
    Ok((
        graph,
        DfsKiller {
            n,
            cliques: [first, second],
            path,
            attach,
            tree_edges,
            start: 0,
        },
    ))
}

impl DfsKiller {
    pub fn is_tree_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.tree_edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Which clique, if any, contains `v`.
    pub fn clique_of(&self, v: NodeId) -> Option<usize> {
        self.cliques.iter().position(|c| c.contains(&v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cost_of, CostFunction};
    use crate::static_nn::validate_nn_traversal;

    fn set(v: &[usize]) -> Vec<usize> {
        v.to_vec()
    }

    #[test]
    fn first_layers_m4() {
        let layers = layers_pow2(4, 2).unwrap();
        assert_eq!(layers[0].positions(), set(&[0, 1, 2, 4, 8, 16]));
        assert_eq!(layers[1].positions(), set(&[0, 1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 16]));
        for m in 1..12 {
            assert_eq!(layers_pow2(m, 1).unwrap()[0].len(), m as usize + 2);
        }
    }

    #[test]
    fn general_layers() {
        assert_eq!(layers_general(10, 1).unwrap()[0].positions(), set(&[0, 1, 2, 3, 5, 10]));
        assert_eq!(layers_general(2, 1).unwrap()[0].positions(), set(&[0, 1, 2]));
        for k in 1..=4 {
            assert_eq!(layers_general(16, k).unwrap(), layers_pow2(4, k).unwrap());
        }
    }

    #[test]
    fn build_sizes() {
        let lr0 = build_lr(16, 0).unwrap();
        assert_eq!(lr0.node_count(), 17);
        assert_eq!(lr0.graph().edge_count(), 17);
        assert!(lr0.graph().edges().all(|(u, v)| v == u + 1 || (u, v) == (0, 16)));

        assert_eq!(build_lr(16, 2).unwrap().node_count(), 35);
        assert_eq!(build_lr(10, 1).unwrap().node_count(), 17);
    }

    #[test]
    fn adjacency_follows_positions() {
        let lr = build_lr(16, 2).unwrap();
        let g = lr.graph();
        for u in 0..lr.node_count() {
            for v in u + 1..lr.node_count() {
                let d = (lr.position(u) + 17 - lr.position(v)) % 17;
                assert_eq!(g.has_edge(u, v), d <= 1 || d == 16, "{u} {v}");
            }
        }
    }

    #[test]
    fn numbering() {
        let lr = build_lr(16, 2).unwrap();
        assert_eq!(lr.layer_node(2, 0), Some(17));
        assert_eq!(lr.layer_node(2, 16), Some(28));
        assert_eq!(lr.layer_node(1, 0), Some(29));
        assert_eq!(lr.layer_node(1, 3), None);
        assert_eq!(lr.membership(30), Membership::Layer(1));
        assert_eq!(lr.membership(5), Membership::Backbone);
    }

    #[test]
    fn leg_count_examples() {
        let t = leg_counts(4, 2);
        assert_eq!(t.get(1, 0), 2);
        assert_eq!((1..4).map(|t_| t.get(1, t_)).collect::<Vec<_>>(), vec![1, 1, 1]);
        assert_eq!(t.get(2, 0), 8);
        assert_eq!(vertex_count_formula(4, 2), 35);
        assert_eq!(t.vertex_count(), 35);
    }

    #[test]
    fn canonical_routes() {
        let lr = build_lr_pow2(4, 2).unwrap();
        let c = CostFunction::hop(lr.graph().clone());
        let route = lr.canonical_nn_route();
        assert_eq!(cost_of(&route, &c).unwrap(), 50);
        assert_eq!(lr.canonical_route_cost(), 50);
        validate_nn_traversal(&c, &route).unwrap();

        let lr0 = build_lr(16, 0).unwrap();
        assert_eq!(lr0.canonical_route_cost(), 16);

        let lr1 = build_lr_pow2(2, 1).unwrap();
        let c1 = CostFunction::hop(lr1.graph().clone());
        assert_eq!(cost_of(&lr1.canonical_nn_route(), &c1).unwrap(), 9);
        validate_nn_traversal(&c1, &lr1.canonical_nn_route()).unwrap();
    }

    #[test]
    fn hamiltonian_routes() {
        let lr0 = build_lr(16, 0).unwrap();
        assert_eq!(lr0.hamiltonian_route().order(), (0..17).collect::<Vec<_>>().as_slice());
        for (nu, k, cost) in [(16, 2, 34), (10, 1, 16)] {
            let lr = build_lr(nu, k).unwrap();
            let route = lr.hamiltonian_route();
            assert!(route.order().windows(2).all(|w| lr.graph().has_edge(w[0], w[1])));
            assert_eq!(cost_of(&route, &CostFunction::hop(lr.graph().clone())).unwrap(), cost);
        }
    }

    #[test]
    fn padding() {
        let same = pad_to_n(10, 1, 17).unwrap();
        assert_eq!(same.graph, build_lr(10, 1).unwrap().into_graph());

        let p = pad_to_n(10, 1, 19).unwrap();
        assert_eq!(p.extra, vec![17, 18]);
        let anchor = p.ring.layer_node(1, 10).unwrap();
        for &x in &p.extra {
            let ns: Vec<_> = p.graph.neighbors(x).collect();
            let mut expected = vec![0, anchor];
            expected.extend(p.extra.iter().filter(|&&y| y != x));
            expected.sort_unstable();
            assert_eq!(ns, expected);
        }
        let c = CostFunction::hop(p.graph.clone());
        validate_nn_traversal(&c, &p.nn_route()).unwrap();
        assert_eq!(cost_of(&p.hamiltonian_route(), &c).unwrap(), 18);

        assert_eq!(pad_to_n(10, 1, 20).unwrap_err(), Error::PadWindow { n: 20, lo: 17, hi: 19 });
        assert!(pad_to_n(10, 1, 16).is_err());
    }

    #[test]
    fn dfs_killer_shape() {
        let (g, killer) = build_dfs_killer(12).unwrap();
        assert_eq!(g.node_count(), 12);
        assert_eq!(g.edge_count(), 17);
        assert_eq!(killer.tree_edges.len(), 11);
        assert_eq!(g.edge_count() - killer.tree_edges.len(), 6);
        assert!(killer.tree_edges.iter().all(|&(u, v)| g.has_edge(u, v)));
        let tree = Graph::from_edges(12, killer.tree_edges.clone()).unwrap();
        assert!(tree.is_connected());
        for (clique, &center) in killer.cliques.iter().zip(&killer.attach) {
            for &v in clique {
                if v != center {
                    assert_eq!(tree.neighbors(v).collect::<Vec<_>>(), vec![center]);
                }
            }
        }
        assert!(build_dfs_killer(9).is_err());
        assert!(build_dfs_killer(13).is_err());
    }

    fn non_backbone_fraction(m: u32, k: usize) -> f64 {
        let p = (1u64 << m) as f64;
        (vertex_count_formula(m, k) as f64 - p - 1.0) / p
    }

    #[test]
    fn non_backbone_fraction_shrinks_for_fixed_k() {
        for k in 1..=5 {
            let fr: Vec<f64> = (k as u32 + 1..=14).map(|m| non_backbone_fraction(m, k)).collect();
            assert!(fr.windows(2).all(|w| w[1] < w[0]), "k={k}: {fr:?}");
        }
        // With k tied to m the fraction jumps whenever k steps up, but stays
        // below one half.
        for m in 8..=14u32 {
            let k = ((m - 1) as f64 / 2.5).floor() as usize;
            assert!(non_backbone_fraction(m, k) < 0.5, "m={m}");
        }
    }
}
