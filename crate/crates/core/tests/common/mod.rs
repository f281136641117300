//! Reference computations written independently of the library, used to
//! check its answers.

#![allow(dead_code)]

use std::collections::VecDeque;

use nntrav::Graph;

pub const UNREACHABLE: u64 = u64::MAX;

pub fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.node_count()];
    for (u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// Hop distances from `s`; `UNREACHABLE` where there is no path.
pub fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<u64> {
    let mut d = vec![UNREACHABLE; adj.len()];
    let mut q = VecDeque::from([s]);
    d[s] = 0;
    while let Some(u) = q.pop_front() {
        for &w in &adj[u] {
            if d[w] == UNREACHABLE {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

pub fn all_pairs(adj: &[Vec<usize>]) -> Vec<Vec<u64>> {
    (0..adj.len()).map(|s| bfs(adj, s)).collect()
}

/// Checks that every step of `order` goes to a cheapest unvisited node,
/// computing each row with `row`.
pub fn is_greedy<F: FnMut(usize) -> Vec<u64>>(n: usize, order: &[usize], mut row: F) -> bool {
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    let mut visited = vec![false; n];
    visited[order[0]] = true;
    for w in order.windows(2) {
        let r = row(w[0]);
        let best = (0..n).filter(|&v| !visited[v]).map(|v| r[v]).min().unwrap();
        if r[w[1]] != best || best == UNREACHABLE {
            return false;
        }
        visited[w[1]] = true;
    }
    true
}

pub fn is_greedy_hop(adj: &[Vec<usize>], order: &[usize]) -> bool {
    is_greedy(adj.len(), order, |u| bfs(adj, u))
}

pub fn route_cost(d: &[Vec<u64>], order: &[usize]) -> u64 {
    order.windows(2).map(|w| d[w[0]][w[1]]).sum()
}

/// Cheapest Hamiltonian path over any start, by subset dynamic programming.
pub fn held_karp(d: &[Vec<u64>]) -> u64 {
    let n = d.len();
    if n <= 1 {
        return 0;
    }
    let full = 1usize << n;
    let mut dp = vec![vec![u64::MAX; n]; full];
    for v in 0..n {
        dp[1 << v][v] = 0;
    }
    for mask in 1..full {
        for v in 0..n {
            let cur = dp[mask][v];
            if cur == u64::MAX {
                continue;
            }
            for w in 0..n {
                if mask & (1 << w) == 0 {
                    let next = &mut dp[mask | (1 << w)][w];
                    *next = (*next).min(cur + d[v][w]);
                }
            }
        }
    }
    *dp[full - 1].iter().min().unwrap()
}

/// `λ_j` for `j = 1..=max step`, as a dense vector indexed by `j - 1`.
pub fn lambdas(steps: &[u64]) -> Vec<usize> {
    let top = steps.iter().copied().max().unwrap_or(0);
    (1..=top).map(|j| steps.iter().filter(|&&s| s >= j).count()).collect()
}

/// Kruskal over the complete cost graph.
pub fn mst(d: &[Vec<u64>]) -> u64 {
    let n = d.len();
    let mut pairs: Vec<(u64, usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).map(|(u, v)| (d[u][v], u, v)).collect();
    pairs.sort_unstable();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut total = 0;
    for (w, u, v) in pairs {
        let (a, b) = (root(&mut parent, u), root(&mut parent, v));
        if a != b {
            parent[a] = b;
            total += w;
        }
    }
    total
}

pub fn is_metric(d: &[Vec<u64>]) -> bool {
    let n = d.len();
    (0..n).all(|u| (0..n).all(|v| (0..n).all(|w| d[u][v] <= d[u][w].saturating_add(d[w][v]))))
}

/// Slope of the least-squares line through `(ln x, ln y)`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}
