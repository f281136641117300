//! Synchronous-round simulation of the label-propagating greedy walker.
//!
//! Every visited node keeps a `dist` label estimating its hop distance to
//! the nearest unvisited node; unvisited nodes hold 0. One iteration:
//!
//! 1. all visited labels are recomputed at once from the previous
//!    snapshot as `1 + min` over the closed neighborhood, capped at `n + 1`;
//! 2. the agent moves to a neighbor with a strictly smaller label (smallest
//!    label first, then lowest id), exploring it if new;
//! 3. the run stops if `pos.dist > exp`;
//! 4. otherwise the edges scheduled for this iteration are deleted.
//!
//! Schedule key 0 holds deletions applied before the first iteration.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub type Edge = (NodeId, NodeId);

fn normalize((u, v): Edge) -> Edge {
    (u.min(v), u.max(v))
}

/// Default iteration budget: `4 n^2`.
pub fn iteration_budget(n: usize) -> usize {
    4 * n * n
}

/// Edge deletions keyed by iteration. Each edge appears at most once.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ScheduleFile", into = "ScheduleFile")]
pub struct FailureSchedule {
    by_iter: BTreeMap<usize, Vec<Edge>>,
}

#[derive(Serialize, Deserialize)]
struct ScheduleFile {
    deletions: Vec<ScheduleEntry>,
}

#[derive(Serialize, Deserialize)]
struct ScheduleEntry {
    iter: usize,
    edges: Vec<Edge>,
}

impl TryFrom<ScheduleFile> for FailureSchedule {
    type Error = Error;

    fn try_from(file: ScheduleFile) -> Result<Self> {
        let mut schedule = Self::default();
        for entry in file.deletions {
            for e in entry.edges {
                schedule.push(entry.iter, e)?;
            }
        }
        Ok(schedule)
    }
}

impl From<FailureSchedule> for ScheduleFile {
    fn from(s: FailureSchedule) -> Self {
        Self {
            deletions: s
                .by_iter
                .into_iter()
                .map(|(iter, edges)| ScheduleEntry { iter, edges })
                .collect(),
        }
    }
}

impl FailureSchedule {
    pub fn new() -> Self {
        Self::default()
    }

    /// Schedules `edge` for deletion at the end of iteration `at`.
    pub fn push(&mut self, at: usize, edge: Edge) -> Result<()> {
        let (u, v) = normalize(edge);
        if u == v {
            return Err(Error::InvalidSchedule(format!("self-loop {{{u}, {v}}}")));
        }
        if self.contains(edge) {
            return Err(Error::InvalidSchedule(format!("edge {{{u}, {v}}} is deleted twice")));
        }
        self.by_iter.entry(at).or_default().push((u, v));
        Ok(())
    }

    pub fn contains(&self, edge: Edge) -> bool {
        let e = normalize(edge);
        self.by_iter.values().any(|es| es.contains(&e))
    }

    pub fn at(&self, iteration: usize) -> &[Edge] {
        self.by_iter.get(&iteration).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[Edge])> + '_ {
        self.by_iter.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.by_iter.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every scheduled edge must exist in the initial graph.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        for (at, edges) in self.iter() {
            for &(u, v) in edges {
                if !graph.has_edge(u, v) {
                    return Err(Error::InvalidSchedule(format!(
                        "edge {{{u}, {v}}} at iteration {at} is not in the graph"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimState {
    pub vis: Vec<bool>,
    pub dist: Vec<u64>,
    pub pos: NodeId,
    pub exp: usize,
    pub iteration: usize,
}

impl SimState {
    pub fn new(n: usize, start: NodeId) -> Result<Self> {
        if start >= n {
            return Err(Error::InvalidNode { node: start, n });
        }
        let mut vis = vec![false; n];
        vis[start] = true;
        Ok(Self {
            vis,
            dist: vec![0; n],
            pos: start,
            exp: 1,
            iteration: 0,
        })
    }

    pub fn cap(&self) -> u64 {
        self.vis.len() as u64 + 1
    }

    pub fn is_terminal(&self) -> bool {
        self.dist[self.pos] > self.exp as u64
    }
}

/// One iteration as observed: labels after the update phase, the move, and
/// the deletions applied at its end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub iter: usize,
    pub pos_before: NodeId,
    pub pos_after: NodeId,
    pub moved: bool,
    pub explored: Option<NodeId>,
    pub dist: Vec<u64>,
    pub deleted: Vec<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum SimOutcome {
    Terminated { iteration: usize },
    BudgetExhausted { budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimTrace {
    pub n: usize,
    pub start: NodeId,
    pub initial_deletions: Vec<Edge>,
    pub steps: Vec<StepRecord>,
    pub outcome: SimOutcome,
    /// Nodes in the order they were first visited, starting with `start`.
    pub explored_order: Vec<NodeId>,
}

impl SimTrace {
    pub fn iterations(&self) -> usize {
        self.steps.len()
    }

    pub fn terminated(&self) -> bool {
        matches!(self.outcome, SimOutcome::Terminated { .. })
    }

    /// One JSON object per iteration, then a summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            let line = serde_json::to_string(step).expect("records serialize");
            let _ = writeln!(out, "{line}");
        }
        let summary = serde_json::json!({
            "outcome": self.outcome,
            "iterations": self.iterations(),
            "explored": self.explored_order.len(),
            "visited": self.explored_order,
        });
        let _ = writeln!(out, "{summary}");
        out
    }
}

/// Label update and move phases of one iteration. Does not delete edges.
fn update_and_move(state: &mut SimState, graph: &Graph) -> StepRecord {
    state.iteration += 1;
    let cap = state.cap();
    let snapshot = state.dist.clone();
    for v in 0..state.vis.len() {
        if state.vis[v] {
            let low = graph.neighbors(v).map(|u| snapshot[u]).fold(snapshot[v], u64::min);
            state.dist[v] = (low + 1).min(cap);
        }
    }

    let pos_before = state.pos;
    let here = state.dist[pos_before];
    let target = graph
        .neighbors(pos_before)
        .filter(|&u| state.dist[u] < here)
        .min_by_key(|&u| (state.dist[u], u));
    let mut explored = None;
    if let Some(u) = target {
        state.pos = u;
        if !state.vis[u] {
            state.vis[u] = true;
            state.exp += 1;
            explored = Some(u);
        }
    }
    StepRecord {
        iter: state.iteration,
        pos_before,
        pos_after: state.pos,
        moved: target.is_some(),
        explored,
        dist: state.dist.clone(),
        deleted: Vec::new(),
    }
}

fn apply_deletions(graph: &mut Graph, deletions: &[Edge]) -> Result<Vec<Edge>> {
    for &(u, v) in deletions {
        graph.delete_edge(u, v)?;
    }
    Ok(deletions.iter().copied().map(normalize).collect())
}

/// One full iteration: update, move, then delete `deletions`.
pub fn sim_step(state: &mut SimState, graph: &mut Graph, deletions: &[Edge]) -> Result<StepRecord> {
    if state.vis.len() != graph.node_count() {
        return Err(Error::Precondition("state and graph sizes differ".into()));
    }
    let mut record = update_and_move(state, graph);
    record.deleted = apply_deletions(graph, deletions)?;
    Ok(record)
}

/// Runs until `pos.dist > exp` or `max_iterations` iterations have run.
pub fn run_sim(graph: &Graph, start: NodeId, schedule: &FailureSchedule, max_iterations: usize) -> Result<SimTrace> {
    graph.check_node(start)?;
    schedule.validate(graph)?;
    let mut g = graph.clone();
    let mut state = SimState::new(graph.node_count(), start)?;
    let initial_deletions = apply_deletions(&mut g, schedule.at(0))?;
    let mut steps = Vec::new();
    let mut explored_order = vec![start];
    let mut outcome = SimOutcome::BudgetExhausted { budget: max_iterations };
    while state.iteration < max_iterations {
        let mut record = update_and_move(&mut state, &g);
        explored_order.extend(record.explored);
        if state.is_terminal() {
            steps.push(record);
            outcome = SimOutcome::Terminated { iteration: state.iteration };
            break;
        }
        record.deleted = apply_deletions(&mut g, schedule.at(state.iteration))?;
        steps.push(record);
    }
    Ok(SimTrace {
        n: graph.node_count(),
        start,
        initial_deletions,
        steps,
        outcome,
        explored_order,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// A label decreased.
    R1,
    /// A visited label exceeded the true distance to the nearest unvisited node.
    R2,
    /// The agent stayed put, the run continued, and no label grew.
    NoProgress,
    /// The agent moved to a neighbor whose label was not smaller.
    BadMove,
    /// The run stopped with an unvisited node reachable from the agent.
    UnsoundTermination,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub iteration: usize,
    pub node: NodeId,
    pub kind: ViolationKind,
}

/// Replays `trace` against `graph` and `schedule` and checks label
/// monotonicity, the distance bound, progress in non-moving iterations, move
/// direction and termination soundness. Returns the first violation.
pub fn check_r1_r2(trace: &SimTrace, graph: &Graph, schedule: &FailureSchedule) -> std::result::Result<(), Violation> {
    let n = trace.n;
    let cap = n as u64 + 1;
    let mut g = graph.clone();
    for &(u, v) in schedule.at(0) {
        let _ = g.delete_edge(u, v);
    }
    let mut vis = vec![false; n];
    vis[trace.start] = true;
    let mut prev = vec![0u64; n];
    let last = trace.steps.len();
    for (idx, step) in trace.steps.iter().enumerate() {
        let at = |node, kind| Violation {
            iteration: step.iter,
            node,
            kind,
        };
        if let Some(v) = (0..n).find(|&v| step.dist[v] < prev[v]) {
            return Err(at(v, ViolationKind::R1));
        }
        let unvisited: Vec<NodeId> = (0..n).filter(|&v| !vis[v]).collect();
        let truth = g.multi_source_bfs(unvisited.iter().copied());
        if let Some(v) = (0..n).find(|&v| vis[v] && step.dist[v] > truth[v].min(cap)) {
            return Err(at(v, ViolationKind::R2));
        }
        let terminal = trace.terminated() && idx + 1 == last;
        if step.moved {
            if step.dist[step.pos_after] >= step.dist[step.pos_before] {
                return Err(at(step.pos_after, ViolationKind::BadMove));
            }
            vis[step.pos_after] = true;
        } else if !terminal && step.dist == prev {
            return Err(at(step.pos_before, ViolationKind::NoProgress));
        }
        if terminal {
            if let Some(v) = g.component(step.pos_after).into_iter().find(|&v| !vis[v]) {
                return Err(at(v, ViolationKind::UnsoundTermination));
            }
        }
        for &(u, v) in &step.deleted {
            let _ = g.delete_edge(u, v);
        }
        prev.clone_from(&step.dist);
    }
    Ok(())
}
