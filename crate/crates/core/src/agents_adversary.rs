//! Exploration as a game between a walking agent and an edge-deleting
//! adversary.
//!
//! Each round the agent moves along one edge of the current graph or
//! halts, then the adversary deletes any set of existing edges. The agent
//! may halt only once every node in its connected component is visited.
//! The adversary also acts once before the first move.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dynamic_sim::{Edge, FailureSchedule};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::layered_ring::{build_dfs_killer, DfsKiller};
use crate::static_nn::{TieBreak, TieChooser};

/// What both players may observe.
#[derive(Debug, Clone, Copy)]
pub struct GameView<'a> {
    pub graph: &'a Graph,
    pub visited: &'a [bool],
    pub pos: NodeId,
    /// Moves made so far.
    pub step: usize,
    /// The move just made, if any.
    pub last_move: Option<(NodeId, NodeId)>,
}

impl GameView<'_> {
    pub fn visited_count(&self) -> usize {
        self.visited.iter().filter(|&&v| v).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AgentAction {
    Move(NodeId),
    Halt,
}

pub trait Agent {
    fn name(&self) -> &str;

    /// Called once before the game with the node count.
    fn reset(&mut self, n: usize);

    fn decide(&mut self, view: &GameView<'_>) -> Result<AgentAction>;
}

/// Role of a node named by an adversary during a game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MarkerRole {
    /// The node from which the last unvisited node was first cut off.
    V,
    /// Start of a phase: the node being kept out of reach.
    X,
    /// A neighbor of the current `x` that the agent stepped on.
    Y,
    /// The first of the last two neighbors of `x` reached by the agent.
    Z,
    /// The other one; it becomes the next `x`.
    ZPrime,
    /// The adversary has stopped deleting.
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseMarker {
    pub step: usize,
    pub phase: usize,
    pub role: MarkerRole,
    pub node: NodeId,
}

pub trait Adversary {
    fn name(&self) -> &str;

    /// Checks preconditions on the initial graph.
    fn start(&mut self, graph: &Graph, start: NodeId) -> Result<()>;

    /// Edges to delete now. `view.step` is 0 before the first move.
    fn respond(&mut self, view: &GameView<'_>) -> Vec<Edge>;

    fn markers(&self) -> Vec<PhaseMarker> {
        Vec::new()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameMove {
    pub step: usize,
    pub from: NodeId,
    pub to: NodeId,
    pub deleted: Vec<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum GameOutcome {
    Halted { steps: usize },
    BudgetExhausted { budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameTrace {
    pub n: usize,
    pub start: NodeId,
    pub agent: String,
    pub adversary: String,
    pub initial_deletions: Vec<Edge>,
    pub moves: Vec<GameMove>,
    pub markers: Vec<PhaseMarker>,
    pub outcome: GameOutcome,
}

impl GameTrace {
    pub fn steps(&self) -> usize {
        self.moves.len()
    }

    pub fn halted(&self) -> bool {
        matches!(self.outcome, GameOutcome::Halted { .. })
    }

    /// The deletions of this game as a schedule keyed by step.
    pub fn to_schedule(&self) -> FailureSchedule {
        let mut schedule = FailureSchedule::new();
        let batches = std::iter::once((0, &self.initial_deletions)).chain(self.moves.iter().map(|m| (m.step, &m.deleted)));
        for (step, edges) in batches {
            for &e in edges {
                schedule.push(step, e).expect("a game deletes each edge once");
            }
        }
        schedule
    }

    /// One JSON object per move, with the markers of that step, then a
    /// summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for m in &self.moves {
            let phases: Vec<&PhaseMarker> = self.markers.iter().filter(|p| p.step == m.step).collect();
            let line = serde_json::json!({
                "step": m.step,
                "from": m.from,
                "to": m.to,
                "deleted": m.deleted,
                "phases": phases,
            });
            let _ = writeln!(out, "{line}");
        }
        let summary = serde_json::json!({
            "agent": self.agent,
            "adversary": self.adversary,
            "n": self.n,
            "start": self.start,
            "steps": self.steps(),
            "outcome": self.outcome,
        });
        let _ = writeln!(out, "{summary}");
        out
    }

    /// Step counts before `x_1` is defined, for each completed phase, and
    /// after the last one. Empty if the trace has no `x_1` marker.
    pub fn phase_breakdown(&self) -> Vec<usize> {
        let Some(first) = self.markers.iter().find(|p| p.role == MarkerRole::X && p.phase == 1) else {
            return Vec::new();
        };
        let mut parts = vec![first.step];
        let mut boundary = first.step;
        for z in self.markers.iter().filter(|p| p.role == MarkerRole::Z) {
            parts.push(z.step - boundary);
            boundary = z.step;
        }
        parts.push(self.steps() - boundary);
        parts
    }
}

/// Default game budget: `8 n^2` moves.
pub fn game_budget(n: usize) -> usize {
    8 * n * n
}

/// Plays until the agent halts legally or `max_steps` moves are made.
pub fn play_game(agent: &mut dyn Agent, adv: &mut dyn Adversary, graph: &Graph, start: NodeId, max_steps: usize) -> Result<GameTrace> {
    graph.check_node(start)?;
    let n = graph.node_count();
    agent.reset(n);
    adv.start(graph, start)?;
    let mut g = graph.clone();
    let mut visited = vec![false; n];
    visited[start] = true;
    let mut pos = start;

    let view = GameView {
        graph: &g,
        visited: &visited,
        pos,
        step: 0,
        last_move: None,
    };
    let initial = adv.respond(&view);
    let initial_deletions = delete_all(&mut g, &initial, 0)?;

    let mut moves: Vec<GameMove> = Vec::new();
    let outcome = loop {
        let step = moves.len();
        let view = GameView {
            graph: &g,
            visited: &visited,
            pos,
            step,
            last_move: moves.last().map(|m| (m.from, m.to)),
        };
        match agent.decide(&view)? {
            AgentAction::Halt => {
                if let Some(u) = g.component(pos).into_iter().find(|&u| !visited[u]) {
                    return Err(Error::IllegalHalt { step, unvisited: u });
                }
                break GameOutcome::Halted { steps: step };
            }
            AgentAction::Move(to) => {
                if step == max_steps {
                    break GameOutcome::BudgetExhausted { budget: max_steps };
                }
                if to >= n || !g.has_edge(pos, to) {
                    return Err(Error::IllegalMove { step: step + 1, from: pos, to });
                }
                let from = pos;
                pos = to;
                visited[to] = true;
                let view = GameView {
                    graph: &g,
                    visited: &visited,
                    pos,
                    step: step + 1,
                    last_move: Some((from, to)),
                };
                let batch = adv.respond(&view);
                let deleted = delete_all(&mut g, &batch, step + 1)?;
                moves.push(GameMove {
                    step: step + 1,
                    from,
                    to,
                    deleted,
                });
            }
        }
    };
    Ok(GameTrace {
        n,
        start,
        agent: agent.name().to_owned(),
        adversary: adv.name().to_owned(),
        initial_deletions,
        moves,
        markers: adv.markers(),
        outcome,
    })
}

fn delete_all(g: &mut Graph, edges: &[Edge], step: usize) -> Result<Vec<Edge>> {
    for &(u, v) in edges {
        g.delete_edge(u, v).map_err(|_| Error::IllegalDeletion { step, u, v })?;
    }
    Ok(edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect())
}

/// Walks one hop at a time toward a currently nearest unvisited node,
/// recomputing hop distances on the current graph at every step. The
/// target is kept while it stays among the nearest; a new one is picked by
/// the tie policy (lowest id by default). The hop itself goes to the
/// lowest-id neighbor on a shortest path.
#[derive(Debug, Clone)]
pub struct NnAgent {
    ties: TieBreak,
    chooser: TieChooser,
    target: Option<NodeId>,
}

pub fn nn_agent() -> NnAgent {
    nn_agent_with_ties(TieBreak::LowestId)
}

pub fn nn_agent_with_ties(ties: TieBreak) -> NnAgent {
    NnAgent {
        chooser: TieChooser::new(&ties),
        ties,
        target: None,
    }
}

impl Agent for NnAgent {
    fn name(&self) -> &str {
        "nn"
    }

    fn reset(&mut self, _n: usize) {
        self.chooser = TieChooser::new(&self.ties);
        self.target = None;
    }

    fn decide(&mut self, view: &GameView<'_>) -> Result<AgentAction> {
        let g = view.graph;
        let sentinel = g.unreachable();
        let from_pos = g.multi_source_bfs([view.pos]);
        let Some(best) = (0..g.node_count()).filter(|&v| !view.visited[v]).map(|v| from_pos[v]).min() else {
            return Ok(AgentAction::Halt);
        };
        if best == sentinel {
            return Ok(AgentAction::Halt);
        }
        let target = match self.target {
            Some(t) if !view.visited[t] && from_pos[t] == best => t,
            _ => {
                let candidates: Vec<NodeId> = (0..g.node_count()).filter(|&v| !view.visited[v] && from_pos[v] == best).collect();
                self.chooser.choose(&candidates)?
            }
        };
        self.target = Some(target);
        let to_target = g.multi_source_bfs([target]);
        let hop = g
            .neighbors(view.pos)
            .find(|&w| to_target[w] + 1 == to_target[view.pos])
            .expect("a shortest path exists");
        Ok(AgentAction::Move(hop))
    }
}

/// Depth-first search that forgets everything and starts over from its
/// current node whenever the edge it needs to backtrack along is gone.
#[derive(Debug, Clone, Default)]
pub struct DfsRestartAgent {
    stack: Vec<NodeId>,
    seen: Vec<bool>,
    restarts: usize,
}

pub fn dfs_restart_agent() -> DfsRestartAgent {
    DfsRestartAgent::default()
}

impl DfsRestartAgent {
    pub fn restarts(&self) -> usize {
        self.restarts
    }

    fn begin(&mut self, at: NodeId) {
        self.stack.clear();
        self.stack.push(at);
        self.seen.fill(false);
        self.seen[at] = true;
    }
}

impl Agent for DfsRestartAgent {
    fn name(&self) -> &str {
        "dfs-restart"
    }

    fn reset(&mut self, n: usize) {
        self.stack.clear();
        self.seen = vec![false; n];
        self.restarts = 0;
    }

    fn decide(&mut self, view: &GameView<'_>) -> Result<AgentAction> {
        if self.stack.last() != Some(&view.pos) {
            self.begin(view.pos);
        }
        loop {
            let here = view.pos;
            if let Some(w) = view.graph.neighbors(here).find(|&w| !self.seen[w]) {
                self.seen[w] = true;
                self.stack.push(w);
                return Ok(AgentAction::Move(w));
            }
            if self.stack.len() == 1 {
                return Ok(AgentAction::Halt);
            }
            let parent = self.stack[self.stack.len() - 2];
            if view.graph.has_edge(here, parent) {
                self.stack.pop();
                return Ok(AgentAction::Move(parent));
            }
            self.restarts += 1;
            self.begin(here);
        }
    }
}

/// Deletes nothing.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoAdversary;

pub fn no_adversary() -> NoAdversary {
    NoAdversary
}

impl Adversary for NoAdversary {
    fn name(&self) -> &str {
        "none"
    }

    fn start(&mut self, _graph: &Graph, _start: NodeId) -> Result<()> {
        Ok(())
    }

    fn respond(&mut self, _view: &GameView<'_>) -> Vec<Edge> {
        Vec::new()
    }
}

/// Replays a fixed schedule; key `s` is applied after move `s`.
#[derive(Debug, Clone)]
pub struct ScheduleAdversary {
    schedule: FailureSchedule,
}

pub fn schedule_adversary(schedule: FailureSchedule) -> ScheduleAdversary {
    ScheduleAdversary { schedule }
}

impl Adversary for ScheduleAdversary {
    fn name(&self) -> &str {
        "schedule"
    }

    fn start(&mut self, _graph: &Graph, _start: NodeId) -> Result<()> {
        Ok(())
    }

    fn respond(&mut self, view: &GameView<'_>) -> Vec<Edge> {
        self.schedule.at(view.step).to_vec()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CliqueState {
    Waiting,
    Phase { i: usize, x: NodeId, prev: Option<NodeId> },
    Done,
}

/// Adaptive adversary on a complete graph. Once a single node `x_1` is
/// left unvisited it cuts the agent's edge to it; afterwards, in phase
/// `i`, every node the agent steps on loses its edge to `x_i` until only
/// two neighbors `z, z'` (besides `x_{i-1}`) remain. When the agent
/// reaches one of them, `z`, the edges `x_i z` and `z z'` go and `z'`
/// becomes `x_{i+1}`. It stops when `x_i` has fewer than two such
/// neighbors, leaving a path.
#[derive(Debug, Clone)]
pub struct CliqueAdversary {
    state: CliqueState,
    markers: Vec<PhaseMarker>,
}

pub fn clique_adversary() -> CliqueAdversary {
    CliqueAdversary {
        state: CliqueState::Waiting,
        markers: Vec::new(),
    }
}

impl CliqueAdversary {
    fn mark(&mut self, step: usize, phase: usize, role: MarkerRole, node: NodeId) {
        self.markers.push(PhaseMarker { step, phase, role, node });
    }

    fn open_phase(&mut self, g: &Graph, step: usize, i: usize, x: NodeId, prev: Option<NodeId>) {
        self.mark(step, i, MarkerRole::X, x);
        self.state = CliqueState::Phase { i, x, prev };
        if g.neighbors(x).filter(|&u| Some(u) != prev).count() < 2 {
            self.mark(step, i, MarkerRole::End, x);
            self.state = CliqueState::Done;
        }
    }
}

impl Adversary for CliqueAdversary {
    fn name(&self) -> &str {
        "clique"
    }

    fn start(&mut self, graph: &Graph, _start: NodeId) -> Result<()> {
        let n = graph.node_count();
        if n < 4 || graph.edge_count() != n * (n - 1) / 2 {
            return Err(Error::Precondition("the clique adversary needs a complete graph on at least 4 nodes".into()));
        }
        self.state = CliqueState::Waiting;
        self.markers.clear();
        Ok(())
    }

    fn respond(&mut self, view: &GameView<'_>) -> Vec<Edge> {
        let mut g = view.graph.clone();
        let mut out = Vec::new();
        let pos = view.pos;
        let step = view.step;
        let cut = |g: &mut Graph, out: &mut Vec<Edge>, u: NodeId, v: NodeId| {
            if g.delete_edge(u, v).is_ok() {
                out.push((u, v));
            }
        };
        loop {
            match self.state {
                CliqueState::Done => break,
                CliqueState::Waiting => {
                    let n = view.visited.len();
                    if view.visited_count() != n - 1 {
                        break;
                    }
                    let x1 = view.visited.iter().position(|&v| !v).expect("one node is unvisited");
                    self.mark(step, 0, MarkerRole::V, pos);
                    cut(&mut g, &mut out, pos, x1);
                    self.open_phase(&g, step, 1, x1, None);
                }
                CliqueState::Phase { i, x, prev } => {
                    let rest: Vec<NodeId> = g.neighbors(x).filter(|&u| Some(u) != prev).collect();
                    if !rest.contains(&pos) {
                        break;
                    }
                    if rest.len() > 2 {
                        self.mark(step, i, MarkerRole::Y, pos);
                        cut(&mut g, &mut out, pos, x);
                        break;
                    }
                    let z = pos;
                    let z2 = *rest.iter().find(|&&u| u != z).expect("two neighbors remain");
                    self.mark(step, i, MarkerRole::Z, z);
                    self.mark(step, i, MarkerRole::ZPrime, z2);
                    cut(&mut g, &mut out, x, z);
                    cut(&mut g, &mut out, z, z2);
                    self.open_phase(&g, step, i + 1, z2, Some(x));
                }
            }
        }
        out
    }

    fn markers(&self) -> Vec<PhaseMarker> {
        self.markers.clone()
    }
}

/// Adaptive adversary for the two-clique construction, aimed at the
/// restarting DFS. It watches one target clique; the first time since its
/// last deletion that the agent enters a node of that clique over a
/// non-tree edge inside it, the edge is deleted and the target switches to
/// the other clique. The agent later fails to backtrack over that edge and
/// restarts, and reaching the other clique means crossing the path again.
#[derive(Debug, Clone)]
pub struct KillerAdversary {
    killer: DfsKiller,
    target: usize,
    fresh: Vec<bool>,
    deletions: usize,
}

pub fn dfs_killer_adversary(killer: DfsKiller) -> KillerAdversary {
    KillerAdversary {
        fresh: vec![true; killer.n],
        killer,
        target: 1,
        deletions: 0,
    }
}

impl KillerAdversary {
    pub fn deletions(&self) -> usize {
        self.deletions
    }
}

impl Adversary for KillerAdversary {
    fn name(&self) -> &str {
        "killer"
    }

    fn start(&mut self, graph: &Graph, start: NodeId) -> Result<()> {
        if graph.node_count() != self.killer.n {
            return Err(Error::Precondition("graph does not match the two-clique construction".into()));
        }
        self.target = 1;
        self.deletions = 0;
        self.fresh = vec![true; self.killer.n];
        self.fresh[start] = false;
        Ok(())
    }

    fn respond(&mut self, view: &GameView<'_>) -> Vec<Edge> {
        let Some((from, to)) = view.last_move else {
            return Vec::new();
        };
        let was_fresh = std::mem::replace(&mut self.fresh[to], false);
        let target = &self.killer.cliques[self.target];
        let inside = target.contains(&from) && target.contains(&to);
        if !was_fresh || !inside || self.killer.is_tree_edge(from, to) {
            return Vec::new();
        }
        self.deletions += 1;
        self.target = 1 - self.target;
        self.fresh.fill(true);
        self.fresh[to] = false;
        vec![(from.min(to), from.max(to))]
    }
}

/// The two-clique graph for `n` nodes and the deletions the adaptive
/// adversary makes against the restarting DFS from the designated start,
/// as a schedule keyed by step.
pub fn dfs_killer_script(n: usize) -> Result<(Graph, DfsKiller, FailureSchedule)> {
    let (graph, killer) = build_dfs_killer(n)?;
    let mut agent = dfs_restart_agent();
    let mut adv = dfs_killer_adversary(killer.clone());
    let trace = play_game(&mut agent, &mut adv, &graph, killer.start, killer_step_budget(&graph))?;
    if !trace.halted() {
        return Err(Error::BudgetExhausted {
            budget: killer_step_budget(&graph),
        });
    }
    Ok((graph, killer, trace.to_schedule()))
}

/// Step budget for restarting-DFS games: each restart is caused by a
/// distinct deletion and a DFS epoch moves at most `2(n - 1)` times.
pub fn killer_step_budget(graph: &Graph) -> usize {
    (graph.edge_count() + 1) * 2 * graph.node_count().saturating_sub(1).max(1)
}

/// Least-squares slope of `ln(steps)` against `ln(n)`.
pub fn growth_fit(points: &[(usize, u64)]) -> Result<f64> {
    if points.len() < 4 {
        return Err(Error::InvalidParameter("growth fit needs at least 4 sizes".into()));
    }
    if points.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::InvalidParameter("sizes must be strictly increasing".into()));
    }
    if points.iter().any(|&(n, s)| n == 0 || s == 0) {
        return Err(Error::InvalidParameter("sizes and step counts must be positive".into()));
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, s)| (s as f64).ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}
