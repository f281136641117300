//! Greedy nearest-neighbor traversals on a fixed cost function, their
//! step-length profile, and the quantities used to bound them.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cost_of, CostFunction, NodeId, Traversal};

/// Largest instance the exact subset dynamic program accepts.
pub const EXACT_OPT_LIMIT: usize = 13;

/// How to choose among several equally-near unvisited nodes.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "policy", content = "value")]
pub enum TieBreak {
    #[default]
    LowestId,
    SeededRandom(u64),
    /// One entry is consumed at every step with more than one candidate.
    /// Each entry must name one of the tied candidates. Once the script is
    /// exhausted, remaining ties fall back to the lowest id.
    Scripted(Vec<NodeId>),
}

#[derive(Debug, Clone)]
pub(crate) struct TieChooser {
    policy: TieBreak,
    rng: Option<ChaCha8Rng>,
    cursor: usize,
}

impl TieChooser {
    pub(crate) fn new(policy: &TieBreak) -> Self {
        let rng = match policy {
            TieBreak::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
            _ => None,
        };
        Self {
            policy: policy.clone(),
            rng,
            cursor: 0,
        }
    }

    /// `candidates` is nonempty and ascending.
    pub(crate) fn choose(&mut self, candidates: &[NodeId]) -> Result<NodeId> {
        if candidates.len() == 1 {
            return Ok(candidates[0]);
        }
        match &self.policy {
            TieBreak::LowestId => Ok(candidates[0]),
            TieBreak::SeededRandom(_) => {
                let rng = self.rng.as_mut().expect("rng is set for seeded policy");
                Ok(*candidates.choose(rng).expect("nonempty"))
            }
            TieBreak::Scripted(script) => match script.get(self.cursor) {
                None => Ok(candidates[0]),
                Some(&chosen) => {
                    self.cursor += 1;
                    if candidates.binary_search(&chosen).is_ok() {
                        Ok(chosen)
                    } else {
                        Err(Error::ScriptIneligible {
                            chosen,
                            candidates: candidates.to_vec(),
                        })
                    }
                }
            },
        }
    }
}

/// Minimum cost from `row` over unvisited nodes, with all nodes attaining it.
fn nearest_unvisited(row: &[u64], visited: &[bool]) -> Option<(u64, Vec<NodeId>)> {
    let best = row
        .iter()
        .zip(visited)
        .filter(|(_, &seen)| !seen)
        .map(|(&c, _)| c)
        .min()?;
    let candidates = (0..row.len()).filter(|&v| !visited[v] && row[v] == best).collect();
    Some((best, candidates))
}

/// Runs the greedy heuristic from `start`: repeatedly move to a cheapest
/// unvisited node.
pub fn nn_traversal(c: &CostFunction, start: NodeId, tb: &TieBreak) -> Result<Traversal> {
    c.check_node(start)?;
    let n = c.n();
    let mut chooser = TieChooser::new(tb);
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut current = start;
    visited[start] = true;
    order.push(start);
    while order.len() < n {
        let row = c.row(current);
        let (best, candidates) = nearest_unvisited(&row, &visited).expect("unvisited nodes remain");
        if c.is_unreachable(best) {
            return Err(Error::Unreachable {
                from: current,
                to: candidates[0],
            });
        }
        let next = chooser.choose(&candidates)?;
        visited[next] = true;
        order.push(next);
        current = next;
    }
    Ok(Traversal::new_unchecked(order))
}

/// Checks that every step of `t` moves to a cheapest unvisited node.
/// The error names the first offending index of `t`.
pub fn validate_nn_traversal(c: &CostFunction, t: &Traversal) -> Result<()> {
    tie_points(c, t).map(|_| ())
}

/// Validates `t` and returns the choices it makes at every tie, in order.
/// Feeding the result to [`TieBreak::Scripted`] reproduces `t`.
pub fn tie_script_for(c: &CostFunction, t: &Traversal) -> Result<Vec<NodeId>> {
    tie_points(c, t)
}

fn tie_points(c: &CostFunction, t: &Traversal) -> Result<Vec<NodeId>> {
    let n = c.n();
    if t.len() != n {
        return Err(Error::NotPermutation { n });
    }
    let order = t.order();
    let mut visited = vec![false; n];
    visited[order[0]] = true;
    let mut script = Vec::new();
    for index in 1..n {
        let row = c.row(order[index - 1]);
        let chosen = order[index];
        let (best, candidates) = nearest_unvisited(&row, &visited).expect("unvisited nodes remain");
        if row[chosen] != best {
            return Err(Error::NotGreedy {
                index,
                chosen,
                chosen_cost: row[chosen],
                best: candidates[0],
                best_cost: best,
            });
        }
        if candidates.len() > 1 {
            script.push(chosen);
        }
        visited[chosen] = true;
    }
    Ok(script)
}

/// `λ_j`: number of steps of cost at least `j`, stored only where nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LambdaProfile(BTreeMap<u64, usize>);

impl LambdaProfile {
    pub fn from_step_costs(steps: &[u64]) -> Self {
        let mut sorted = steps.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let max = sorted.first().copied().unwrap_or(0);
        let mut counts = BTreeMap::new();
        let mut at_least = 0;
        for j in (1..=max).rev() {
            while at_least < sorted.len() && sorted[at_least] >= j {
                at_least += 1;
            }
            counts.insert(j, at_least);
        }
        Self(counts)
    }

    pub fn get(&self, j: u64) -> usize {
        self.0.get(&j).copied().unwrap_or(0)
    }

    /// Sum over all `j`; equals the traversal cost.
    pub fn total(&self) -> u64 {
        self.0.values().map(|&v| v as u64).sum()
    }

    /// Largest `j` with `λ_j > 0`.
    pub fn max_j(&self) -> u64 {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, usize)> + '_ {
        self.0.iter().map(|(&j, &v)| (j, v))
    }
}

pub fn lambda_profile(t: &Traversal, c: &CostFunction) -> Result<LambdaProfile> {
    Ok(LambdaProfile::from_step_costs(&t.step_costs(c)?))
}

/// Consecutive blocks of a route such that within each block every pair
/// of nodes is cheaper than the threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutePartition {
    pub threshold: u64,
    pub parts: Vec<Vec<NodeId>>,
    /// Start index of each part in the route, followed by the route length.
    pub cuts: Vec<usize>,
}

impl RoutePartition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Cuts `o` greedily: a part ends just before the accumulated step cost
/// inside it would reach `j`. Requires the triangle inequality.
pub fn partition_route(o: &Traversal, j: u64, c: &CostFunction) -> Result<RoutePartition> {
    if j == 0 {
        return Err(Error::InvalidParameter("threshold must be positive".into()));
    }
    c.check_triangle()?;
    let steps = o.step_costs(c)?;
    let order = o.order();
    let mut cuts = vec![0];
    let mut acc = 0u64;
    for (t, &step) in steps.iter().enumerate() {
        acc += step;
        if acc >= j {
            cuts.push(t + 1);
            acc = 0;
        }
    }
    cuts.push(order.len());
    let parts = cuts.windows(2).map(|w| order[w[0]..w[1]].to_vec()).collect();
    Ok(RoutePartition { threshold: j, parts, cuts })
}

/// Exact cheapest traversal over all start nodes (Held-Karp on paths).
/// Ties resolve toward the lexicographically smallest choices.
pub fn opt_traversal(c: &CostFunction) -> Result<(u64, Traversal)> {
    let n = c.n();
    if n > EXACT_OPT_LIMIT {
        return Err(Error::InstanceTooLarge { n, limit: EXACT_OPT_LIMIT });
    }
    let m = c.to_matrix()?;
    if n == 1 {
        return Ok((0, Traversal::new_unchecked(vec![0])));
    }
    let full = (1usize << n) - 1;
    let mut dp = vec![u64::MAX; (full + 1) * n];
    for v in 0..n {
        dp[(1 << v) * n + v] = 0;
    }
    for mask in 1..=full {
        for last in 0..n {
            let here = dp[mask * n + last];
            if here == u64::MAX {
                continue;
            }
            let row = m.row(last);
            for next in 0..n {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let slot = &mut dp[(mask | 1 << next) * n + next];
                *slot = (*slot).min(here + row[next]);
            }
        }
    }
    let (best, mut last) = (0..n).map(|v| (dp[full * n + v], v)).min().expect("n >= 1");
    let mut order = vec![last];
    let mut mask = full;
    while mask.count_ones() > 1 {
        let rest = mask & !(1 << last);
        let target = dp[mask * n + last];
        let prev = (0..n)
            .filter(|&p| rest & (1 << p) != 0)
            .find(|&p| dp[rest * n + p] != u64::MAX && dp[rest * n + p] + m.get(p, last) == target)
            .expect("dp predecessor exists");
        order.push(prev);
        mask = rest;
        last = prev;
    }
    order.reverse();
    Ok((best, Traversal::new_unchecked(order)))
}

fn ceil_exact(x: f64) -> u64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r as u64
    } else {
        x.ceil() as u64
    }
}

/// `ceil(C * (1 + ln(n - 1)))`, the guaranteed budget for any greedy
/// traversal on a metric instance with optimal cost `C`.
pub fn nn_upper_bound(n: usize, opt_cost: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidParameter("bound needs n >= 2".into()));
    }
    Ok(ceil_exact(opt_cost as f64 * (1.0 + ((n - 1) as f64).ln())))
}

/// `ceil(C * (1 + ln(M / m)))` where `M` and `m` are the largest and
/// smallest pairwise costs. Computed even when the instance is not
/// metric; the bound only holds when it is.
pub fn aspect_ratio_bound(c: &CostFunction, opt_cost: u64) -> Result<u64> {
    let (lo, hi) = c
        .min_max_pair_cost()
        .ok_or_else(|| Error::AspectRatioUndefined("fewer than two nodes".into()))?;
    if lo == 0 {
        return Err(Error::AspectRatioUndefined("some pair has zero cost".into()));
    }
    if c.is_unreachable(hi) {
        return Err(Error::Disconnected);
    }
    Ok(ceil_exact(opt_cost as f64 * (1.0 + (hi as f64 / lo as f64).ln())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptSource {
    Exact,
    /// A supplied traversal meets the trivial lower bound `(n - 1) * m`.
    Certificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptCost {
    pub cost: u64,
    pub source: OptSource,
}

/// Optimal traversal cost, from a certificate when one is given and tight,
/// otherwise from the exact search.
pub fn optimal_cost(c: &CostFunction, certificate: Option<&Traversal>) -> Result<OptCost> {
    let n = c.n();
    if let Some(cert) = certificate {
        let lower = if c.graph().is_some() {
            n.saturating_sub(1) as u64
        } else {
            let min = c.min_max_pair_cost().map_or(0, |(lo, _)| lo);
            n.saturating_sub(1) as u64 * min
        };
        if cost_of(cert, c)? == lower {
            return Ok(OptCost {
                cost: lower,
                source: OptSource::Certificate,
            });
        }
    }
    match opt_traversal(c) {
        Ok((cost, _)) => Ok(OptCost {
            cost,
            source: OptSource::Exact,
        }),
        Err(Error::InstanceTooLarge { .. }) => Err(Error::NoOptCertificate),
        Err(e) => Err(e),
    }
}

/// Exact `cost(t) / OPT`.
pub fn approx_ratio(c: &CostFunction, t: &Traversal, certificate: Option<&Traversal>) -> Result<Ratio<u64>> {
    let cost = cost_of(t, c)?;
    let opt = optimal_cost(c, certificate)?.cost;
    match (cost, opt) {
        (0, 0) => Ok(Ratio::from_integer(1)),
        (_, 0) => Err(Error::InvalidParameter("optimal cost is zero".into())),
        _ => Ok(Ratio::new(cost, opt)),
    }
}
