//! C ABI over the `nntrav` library.
//!
//! Graphs are opaque handles created by `nntrav_graph_*` constructors and
//! released with [`nntrav_graph_free`]. Every fallible call returns an
//! [`NntravStatus`]; on failure, [`nntrav_last_error`] describes the most
//! recent error on the calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nntrav::agents_adversary::{
    clique_adversary, dfs_killer_adversary, dfs_restart_agent, game_budget, killer_step_budget, nn_agent, no_adversary, play_game,
    Adversary, Agent,
};
use nntrav::dynamic_sim::{iteration_budget, run_sim, FailureSchedule, SimOutcome};
use nntrav::layered_ring::{build_dfs_killer, build_lr};
use nntrav::static_nn::{nn_traversal, optimal_cost, TieBreak};
use nntrav::{cost_of, CostFunction, Error, Graph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NntravStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidNode = 3,
    MissingEdge = 4,
    DuplicateEdge = 5,
    Unreachable = 6,
    TooLarge = 7,
    BufferTooSmall = 8,
    Precondition = 9,
    BudgetExhausted = 10,
    Panic = 99,
}

/// Tie policy for [`nntrav_nn_traversal`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NntravTies {
    LowestId = 0,
    SeededRandom = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NntravAgent {
    Nn = 0,
    DfsRestart = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NntravAdversary {
    None = 0,
    Clique = 1,
    Killer = 2,
}

/// Opaque graph handle.
pub struct NntravGraph {
    graph: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> NntravStatus {
    match e {
        Error::InvalidNode { .. } => NntravStatus::InvalidNode,
        Error::MissingEdge(..) => NntravStatus::MissingEdge,
        Error::DuplicateEdge(..) => NntravStatus::DuplicateEdge,
        Error::Unreachable { .. } | Error::Disconnected => NntravStatus::Unreachable,
        Error::InstanceTooLarge { .. } | Error::NoOptCertificate => NntravStatus::TooLarge,
        Error::Precondition(_) => NntravStatus::Precondition,
        Error::BudgetExhausted { .. } => NntravStatus::BudgetExhausted,
        _ => NntravStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic for [`nntrav_last_error`].
fn guard<F: FnOnce() -> Result<(), (NntravStatus, String)>>(f: F) -> NntravStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            NntravStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            NntravStatus::Panic
        }
    }
}

trait IntoFfi<T> {
    fn ffi(self) -> Result<T, (NntravStatus, String)>;
}

impl<T> IntoFfi<T> for Result<T, Error> {
    fn ffi(self) -> Result<T, (NntravStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

fn null(what: &str) -> (NntravStatus, String) {
    (NntravStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `g` must be null or a live handle from this library.
unsafe fn graph_ref<'a>(g: *const NntravGraph) -> Result<&'a Graph, (NntravStatus, String)> {
    g.as_ref().map(|h| &h.graph).ok_or_else(|| null("graph"))
}

unsafe fn store(out: *mut *mut NntravGraph, graph: Graph) -> Result<(), (NntravStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(NntravGraph { graph }));
    Ok(())
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn nntrav_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a graph on `n` nodes from `edge_count` pairs stored flat in
/// `edges` (`u0, v0, u1, v1, ...`).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (or be null when
/// `edge_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nntrav_graph_new(n: usize, edges: *const usize, edge_count: usize, out: *mut *mut NntravGraph) -> NntravStatus {
    guard(|| {
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let graph = Graph::from_edges(n, flat.chunks_exact(2).map(|p| (p[0], p[1]))).ffi()?;
        store(out, graph)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nntrav_graph_complete(n: usize, out: *mut *mut NntravGraph) -> NntravStatus {
    guard(|| store(out, Graph::complete(n).ffi()?))
}

/// Layered ring with ring size `nu` and `k` layers.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nntrav_graph_layered_ring(nu: usize, k: usize, out: *mut *mut NntravGraph) -> NntravStatus {
    guard(|| store(out, build_lr(nu, k).ffi()?.into_graph()))
}

/// Two cliques of `n/3` nodes joined by a path of `n/3` nodes.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nntrav_graph_dfs_killer(n: usize, out: *mut *mut NntravGraph) -> NntravStatus {
    guard(|| store(out, build_dfs_killer(n).ffi()?.0))
}

/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nntrav_graph_free(g: *mut NntravGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Node count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nntrav_graph_node_count(g: *const NntravGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.node_count())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nntrav_graph_edge_count(g: *const NntravGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.edge_count())
}

/// # Safety
/// `g` must be a live handle with no concurrent users.
#[no_mangle]
pub unsafe extern "C" fn nntrav_graph_delete_edge(g: *mut NntravGraph, u: usize, v: usize) -> NntravStatus {
    guard(|| {
        let h = g.as_mut().ok_or_else(|| null("graph"))?;
        h.graph.delete_edge(u, v).ffi()
    })
}

/// Hop distances from `source` into `out[0..len]`; unreachable nodes get
/// `n + 1`. `len` must be at least the node count.
///
/// # Safety
/// `g` must be a live handle and `out` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn nntrav_graph_bfs(g: *const NntravGraph, source: usize, out: *mut u64, len: usize) -> NntravStatus {
    guard(|| {
        let graph = graph_ref(g)?;
        let d = graph.bfs_distances(source).ffi()?;
        write_slice(out, len, &d)
    })
}

unsafe fn write_slice<T: Copy>(out: *mut T, len: usize, data: &[T]) -> Result<(), (NntravStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    if len < data.len() {
        return Err((NntravStatus::BufferTooSmall, format!("need {} slots, got {len}", data.len())));
    }
    ptr::copy_nonoverlapping(data.as_ptr(), out, data.len());
    Ok(())
}

/// Greedy traversal of the hop metric from `start`. Writes the visiting
/// order to `order[0..len]` and its cost to `cost`.
///
/// # Safety
/// `g` must be a live handle, `order` must have room for `len` values and
/// `cost` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nntrav_nn_traversal(
    g: *const NntravGraph,
    start: usize,
    ties: NntravTies,
    seed: u64,
    order: *mut usize,
    len: usize,
    cost: *mut u64,
) -> NntravStatus {
    guard(|| {
        let c = CostFunction::hop(graph_ref(g)?.clone());
        let tb = match ties {
            NntravTies::LowestId => TieBreak::LowestId,
            NntravTies::SeededRandom => TieBreak::SeededRandom(seed),
        };
        let t = nn_traversal(&c, start, &tb).ffi()?;
        let total = cost_of(&t, &c).ffi()?;
        write_slice(order, len, t.order())?;
        *cost.as_mut().ok_or_else(|| null("cost"))? = total;
        Ok(())
    })
}

/// Exact cheapest traversal cost of the hop metric; only for small graphs.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nntrav_opt_cost(g: *const NntravGraph, out: *mut u64) -> NntravStatus {
    guard(|| {
        let c = CostFunction::hop(graph_ref(g)?.clone());
        let opt = optimal_cost(&c, None).ffi()?;
        *out.as_mut().ok_or_else(|| null("out"))? = opt.cost;
        Ok(())
    })
}

/// Runs the label-propagating walker. `schedule` holds `count` triples
/// `(iteration, u, v)`; iteration 0 deletes before the first round. A
/// `budget` of 0 selects the default. On return `iterations` holds the
/// rounds run; an exhausted budget yields `BUDGET_EXHAUSTED`.
///
/// # Safety
/// `g` must be a live handle, `schedule` must hold `3 * count` values (or
/// be null when `count` is 0) and `iterations` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nntrav_simulate(
    g: *const NntravGraph,
    start: usize,
    schedule: *const usize,
    count: usize,
    budget: usize,
    iterations: *mut usize,
) -> NntravStatus {
    guard(|| {
        let graph = graph_ref(g)?;
        let mut s = FailureSchedule::new();
        if count > 0 {
            if schedule.is_null() {
                return Err(null("schedule"));
            }
            for t in std::slice::from_raw_parts(schedule, 3 * count).chunks_exact(3) {
                s.push(t[0], (t[1], t[2])).ffi()?;
            }
        }
        let budget = if budget == 0 { iteration_budget(graph.node_count()) } else { budget };
        let trace = run_sim(graph, start, &s, budget).ffi()?;
        *iterations.as_mut().ok_or_else(|| null("iterations"))? = trace.iterations();
        match trace.outcome {
            SimOutcome::Terminated { .. } => Ok(()),
            SimOutcome::BudgetExhausted { budget } => Err(Error::BudgetExhausted { budget }).ffi(),
        }
    })
}

/// Plays an agent against an adversary on the adversary's graph: `K_n`
/// for `NONE` and `CLIQUE`, the two-clique graph for `KILLER`. Writes the
/// number of moves to `steps`.
///
/// # Safety
/// `steps` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nntrav_duel(agent: NntravAgent, adversary: NntravAdversary, n: usize, steps: *mut usize) -> NntravStatus {
    guard(|| {
        let mut a: Box<dyn Agent> = match agent {
            NntravAgent::Nn => Box::new(nn_agent()),
            NntravAgent::DfsRestart => Box::new(dfs_restart_agent()),
        };
        let (graph, start, mut adv, budget): (Graph, usize, Box<dyn Adversary>, usize) = match adversary {
            NntravAdversary::None => (Graph::complete(n).ffi()?, 0, Box::new(no_adversary()), game_budget(n)),
            NntravAdversary::Clique => (Graph::complete(n).ffi()?, 0, Box::new(clique_adversary()), game_budget(n)),
            NntravAdversary::Killer => {
                let (g, killer) = build_dfs_killer(n).ffi()?;
                let budget = killer_step_budget(&g);
                (g, killer.start, Box::new(dfs_killer_adversary(killer)), budget)
            }
        };
        let trace = play_game(a.as_mut(), adv.as_mut(), &graph, start, budget).ffi()?;
        *steps.as_mut().ok_or_else(|| null("steps"))? = trace.steps();
        if trace.halted() {
            Ok(())
        } else {
            Err(Error::BudgetExhausted { budget }).ffi()
        }
    })
}
