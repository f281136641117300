use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;

use nntrav::agents_adversary::{
    clique_adversary, dfs_killer_adversary, dfs_killer_script, dfs_restart_agent, game_budget, killer_step_budget, nn_agent_with_ties,
    no_adversary, play_game, schedule_adversary, Adversary, Agent, GameTrace,
};
use nntrav::dynamic_sim::{check_r1_r2, iteration_budget, run_sim, FailureSchedule};
use nntrav::instances::{derive_seed, random_connected_graph, random_metric, random_ranks, random_schedule, rng};
use nntrav::io::{edge_list, parse_edge_list, parse_graph_json, to_dot, GraphFile, Instance, Sidecar};
use nntrav::layered_ring::{build_dfs_killer, build_lr, build_lr_pow2, pad_to_n, LayeredRing};
use nntrav::nn_tree::{nn_tree, nnt_bound_check, RankAssignment};
use nntrav::static_nn::{lambda_profile, nn_traversal, optimal_cost, tie_script_for, TieBreak, EXACT_OPT_LIMIT};
use nntrav::{approx_ratio, aspect_ratio_bound, cost_of, nn_upper_bound, CostFunction, Error, Graph, NodeId};

const DEFAULT_SEED: u64 = 0x5EED;
const BENCH_HEADER: &str = "# nntrav-bench v1";

const EXIT_VALIDATION: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_IO: u8 = 5;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Invalid(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("budget of {0} exhausted")]
    Budget(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Io { .. } => EXIT_IO,
            Self::Invalid(Error::BudgetExhausted { .. }) | Self::Budget(_) => EXIT_BUDGET,
            Self::Invalid(_) | Self::Usage(_) => EXIT_VALIDATION,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "nntrav", version, about = "Nearest-neighbor traversal experiments")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Input graph: JSON (`{"n":..,"edges":..}`) or an edge list.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Master seed for every randomized choice.
    #[arg(long, global = true, env = "NNTRAV_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Tie policy: lowest-id, random, or scripted:FILE (JSON array of ids).
    #[arg(long, global = true, default_value = "lowest-id")]
    ties: String,
    /// Iteration or step budget (defaults: 4n^2 for simulate, 8n^2 for duel).
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Edges,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a graph family and write it with a replay sidecar.
    Generate(GenerateArgs),
    /// Greedy traversal with its cost profile and bound report.
    Traverse(TraverseArgs),
    /// Run the label-propagating walker under edge failures.
    Simulate(SimulateArgs),
    /// Play an agent against an edge-deleting adversary.
    Duel(DuelArgs),
    /// Build a rank-based nearest-neighbor tree and compare to the MST.
    Tree(TreeArgs),
    /// Run a suite of experiments and write a CSV table.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    LrPow2,
    LrGeneral,
    LrPadded,
    DfsKiller,
    Complete,
    Path,
    RandomMetric,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    nu: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Largest edge weight for random-metric.
    #[arg(long, default_value_t = 10)]
    max_weight: u64,
    /// Sidecar path (default: `<output>.sidecar.json` when --output is set).
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TraverseArgs {
    #[arg(long, default_value_t = 0)]
    start: NodeId,
    /// Sidecar whose hamiltonian route certifies the optimum.
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, default_value_t = 0)]
    start: NodeId,
    /// Failure schedule JSON.
    #[arg(long)]
    schedule: Option<PathBuf>,
    /// Seeded random failures: each edge fails with this probability.
    #[arg(long)]
    failure_rate: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AgentKind {
    Nn,
    DfsRestart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AdversaryKind {
    None,
    Clique,
    Killer,
    Schedule,
}

#[derive(Debug, Args)]
struct DuelArgs {
    #[arg(value_enum)]
    agent: AgentKind,
    #[arg(value_enum)]
    adversary: AdversaryKind,
    /// Size of the built-in graph (K_n for clique, two-clique graph for killer).
    #[arg(long)]
    n: Option<usize>,
    /// Graph file, alternative to --input.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    start: Option<NodeId>,
    #[arg(long)]
    schedule: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TreeArgs {
    /// JSON array: rank of each node.
    #[arg(long)]
    ranks: Option<PathBuf>,
    /// Use a seeded random rank permutation.
    #[arg(long)]
    shuffle: bool,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Suite JSON; the built-in suite is used when omitted.
    #[arg(long)]
    suite: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let c = &cli.common;
    match &cli.command {
        Command::Generate(a) => generate(c, a),
        Command::Traverse(a) => traverse(c, a),
        Command::Simulate(a) => simulate(c, a),
        Command::Duel(a) => duel(c, a),
        Command::Tree(a) => tree(c, a),
        Command::Bench(a) => bench(c, a),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write_to(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_owned(),
            source,
        }),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()).into())
}

fn load_instance(path: &Path) -> CliResult<Instance> {
    let text = read(path)?;
    let inst = if text.trim_start().starts_with('{') {
        parse_graph_json(&text)?
    } else {
        let graph = parse_edge_list(&text)?;
        Instance {
            cost: CostFunction::hop(graph.clone()),
            graph,
        }
    };
    Ok(inst)
}

fn require_input(c: &Common) -> CliResult<Instance> {
    let path = c.input.as_deref().ok_or_else(|| CliError::Usage("--input is required".into()))?;
    load_instance(path)
}

fn tie_policy(c: &Common) -> CliResult<TieBreak> {
    match c.ties.as_str() {
        "lowest-id" => Ok(TieBreak::LowestId),
        "random" => Ok(TieBreak::SeededRandom(derive_seed(c.seed, 0))),
        other => match other.strip_prefix("scripted:") {
            Some(file) => Ok(TieBreak::Scripted(parse_json(&read(Path::new(file))?)?)),
            None => Err(CliError::Usage(format!("unknown tie policy `{other}`"))),
        },
    }
}

fn need<T>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("{flag} is required for this family")))
}

fn params(pairs: &[(&str, serde_json::Value)]) -> serde_json::Map<String, serde_json::Value> {
    pairs.iter().map(|(k, v)| ((*k).to_owned(), v.clone())).collect()
}

fn ring_sidecar(family: &str, lr: &LayeredRing, p: serde_json::Map<String, serde_json::Value>) -> CliResult<Sidecar> {
    let route = lr.canonical_nn_route();
    let c = CostFunction::hop(lr.graph().clone());
    Ok(Sidecar {
        family: family.into(),
        params: p,
        positions: Some(lr.positions().to_vec()),
        membership: Some(lr.memberships().to_vec()),
        nn_route_cost: Some(cost_of(&route, &c)?),
        tie_script: Some(tie_script_for(&c, &route)?),
        nn_route: Some(route),
        hamiltonian_route: Some(lr.hamiltonian_route()),
        start: Some(0),
        ..Sidecar::default()
    })
}

fn generate(c: &Common, a: &GenerateArgs) -> CliResult<()> {
    let mut matrix = None;
    let (graph, sidecar) = match a.family {
        Family::LrPow2 => {
            let (m, k) = (need(a.m, "--m")?, need(a.k, "--k")?);
            let lr = build_lr_pow2(m, k)?;
            let sc = ring_sidecar("lr-pow2", &lr, params(&[("m", json!(m)), ("k", json!(k))]))?;
            (lr.into_graph(), sc)
        }
        Family::LrGeneral => {
            let (nu, k) = (need(a.nu, "--nu")?, need(a.k, "--k")?);
            let lr = build_lr(nu, k)?;
            let sc = ring_sidecar("lr-general", &lr, params(&[("nu", json!(nu)), ("k", json!(k))]))?;
            (lr.into_graph(), sc)
        }
        Family::LrPadded => {
            let (nu, k, n) = (need(a.nu, "--nu")?, need(a.k, "--k")?, need(a.n, "--n")?);
            let p = pad_to_n(nu, k, n)?;
            let cost = CostFunction::hop(p.graph.clone());
            let route = p.nn_route();
            let mut positions = p.ring.positions().to_vec();
            positions.extend(p.extra.iter().map(|_| 0));
            let sc = Sidecar {
                family: "lr-padded".into(),
                params: params(&[("nu", json!(nu)), ("k", json!(k)), ("n", json!(n))]),
                membership: Some(p.ring.memberships().to_vec()),
                positions: Some(positions),
                nn_route_cost: Some(cost_of(&route, &cost)?),
                tie_script: Some(tie_script_for(&cost, &route)?),
                start: Some(route.start()),
                nn_route: Some(route),
                hamiltonian_route: Some(p.hamiltonian_route()),
                ..Sidecar::default()
            };
            (p.graph, sc)
        }
        Family::DfsKiller => {
            let n = need(a.n, "--n")?;
            let (graph, killer, script) = dfs_killer_script(n)?;
            let sc = Sidecar {
                family: "dfs-killer".into(),
                params: params(&[("n", json!(n))]),
                tree_edges: Some(killer.tree_edges),
                start: Some(killer.start),
                schedule: Some(script),
                ..Sidecar::default()
            };
            (graph, sc)
        }
        Family::Complete | Family::Path => {
            let n = need(a.n, "--n")?;
            let (name, graph) = if a.family == Family::Complete {
                ("complete", Graph::complete(n)?)
            } else {
                ("path", Graph::path(n)?)
            };
            let sc = Sidecar {
                family: name.into(),
                params: params(&[("n", json!(n))]),
                ..Sidecar::default()
            };
            (graph, sc)
        }
        Family::RandomMetric => {
            let n = need(a.n, "--n")?;
            let cost = random_metric(n, a.max_weight.max(1), &mut rng(derive_seed(c.seed, 0)))?;
            matrix = cost.as_matrix().cloned();
            let sc = Sidecar {
                family: "random-metric".into(),
                params: params(&[("n", json!(n)), ("max_weight", json!(a.max_weight)), ("seed", json!(c.seed))]),
                ..Sidecar::default()
            };
            (Graph::complete(n)?, sc)
        }
    };
    let text = match c.format {
        Format::Json | Format::Csv => {
            let file = match &matrix {
                Some(m) => GraphFile::with_matrix(&graph, m),
                None => GraphFile::from_graph(&graph),
            };
            serde_json::to_string(&file).expect("graph serializes") + "\n"
        }
        Format::Edges => edge_list(&graph),
        Format::Dot => to_dot(&graph, sidecar.positions.as_deref()),
    };
    write_to(c.output.as_deref(), &text)?;
    let sidecar_path = a.sidecar.clone().or_else(|| {
        c.output.as_ref().map(|o| {
            let mut s = o.clone().into_os_string();
            s.push(".sidecar.json");
            PathBuf::from(s)
        })
    });
    if let Some(path) = sidecar_path {
        let body = serde_json::to_string(&sidecar).expect("sidecar serializes") + "\n";
        write_to(Some(&path), &body)?;
    }
    Ok(())
}

fn traverse(c: &Common, a: &TraverseArgs) -> CliResult<()> {
    let inst = require_input(c)?;
    let cost = &inst.cost;
    let n = cost.n();
    let ties = tie_policy(c)?;
    let t = nn_traversal(cost, a.start, &ties)?;
    let total = cost_of(&t, cost)?;
    let steps = t.step_costs(cost)?;
    let lambda = lambda_profile(&t, cost)?;
    let certificate = match &a.sidecar {
        Some(p) => parse_json::<Sidecar>(&read(p)?)?.hamiltonian_route,
        None => None,
    };
    let opt = match optimal_cost(cost, certificate.as_ref()) {
        Ok(o) => Some(o),
        Err(Error::NoOptCertificate) => None,
        Err(e) => return Err(e.into()),
    };
    let violation = cost.triangle_violation();
    let metric = violation.is_none();
    let mut report = json!({
        "n": n,
        "start": a.start,
        "ties": ties,
        "traversal": t,
        "cost": total,
        "lambda": lambda,
        "metric": metric,
        "triangle_violation": violation.map(|(u, w, v)| [u, w, v]),
        "zero_cost_pairs": cost.zero_cost_pairs(),
        "opt": null,
    });
    if let Some(o) = opt {
        let ratio = approx_ratio(cost, &t, certificate.as_ref())?;
        report["opt"] = json!({ "cost": o.cost, "source": o.source });
        report["ratio"] = json!({
            "value": format!("{}/{}", total, o.cost),
            "reduced": ratio.to_string(),
            "float": if o.cost == 0 { 1.0 } else { total as f64 / o.cost as f64 },
        });
        if n >= 2 {
            let b = nn_upper_bound(n, o.cost)?;
            report["log_bound"] = json!({ "budget": b, "within": total <= b, "claimed": metric });
        }
        if let Ok(b) = aspect_ratio_bound(cost, o.cost) {
            report["aspect_bound"] = json!({ "budget": b, "within": total <= b, "claimed": metric });
        }
    } else {
        report["opt_note"] = json!(format!("no certificate and n > {EXACT_OPT_LIMIT}"));
    }
    let text = match c.format {
        Format::Csv => {
            let mut s = String::from("step,from,to,cost\n");
            for (i, (w, sc)) in t.order().windows(2).zip(&steps).enumerate() {
                s += &format!("{},{},{},{}\n", i + 1, w[0], w[1], sc);
            }
            s
        }
        Format::Dot => to_dot(&inst.graph, None),
        Format::Edges => edge_list(&inst.graph),
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
    };
    write_to(c.output.as_deref(), &text)
}

fn simulate(c: &Common, a: &SimulateArgs) -> CliResult<()> {
    let inst = require_input(c)?;
    let g = &inst.graph;
    let n = g.node_count();
    let schedule = match (&a.schedule, a.failure_rate) {
        (Some(p), _) => parse_json::<FailureSchedule>(&read(p)?)?,
        (None, Some(rate)) => {
            if !(0.0..=1.0).contains(&rate) {
                return Err(CliError::Usage("--failure-rate must be in [0, 1]".into()));
            }
            random_schedule(g, rate, 2 * n * n, &mut rng(derive_seed(c.seed, 1)))
        }
        (None, None) => FailureSchedule::new(),
    };
    let budget = c.budget.unwrap_or_else(|| iteration_budget(n));
    let trace = run_sim(g, a.start, &schedule, budget)?;
    let verdict = match check_r1_r2(&trace, g, &schedule) {
        Ok(()) => json!({ "ok": true }),
        Err(v) => json!({ "ok": false, "violation": v }),
    };
    let mut text = String::new();
    for step in &trace.steps {
        text += &serde_json::to_string(step).expect("record serializes");
        text.push('\n');
    }
    let summary = json!({
        "outcome": trace.outcome,
        "iterations": trace.iterations(),
        "explored": trace.explored_order.len(),
        "visited": trace.explored_order,
        "budget": budget,
        "r1_r2": verdict,
    });
    text += &(summary.to_string() + "\n");
    write_to(c.output.as_deref(), &text)?;
    if trace.terminated() {
        Ok(())
    } else {
        Err(CliError::Budget(budget))
    }
}

fn duel(c: &Common, a: &DuelArgs) -> CliResult<()> {
    let file = a.graph.as_deref().or(c.input.as_deref());
    let mut adversary: Box<dyn Adversary> = match a.adversary {
        AdversaryKind::None => Box::new(no_adversary()),
        AdversaryKind::Clique => Box::new(clique_adversary()),
        AdversaryKind::Schedule => {
            let p = a.schedule.as_deref().ok_or_else(|| CliError::Usage("--schedule is required".into()))?;
            Box::new(schedule_adversary(parse_json(&read(p)?)?))
        }
        AdversaryKind::Killer => {
            let n = need(a.n, "--n")?;
            let (_, killer) = build_dfs_killer(n)?;
            Box::new(dfs_killer_adversary(killer))
        }
    };
    let (graph, default_start) = match (a.adversary, file) {
        (AdversaryKind::Killer, _) => {
            let (g, killer) = build_dfs_killer(need(a.n, "--n")?)?;
            (g, killer.start)
        }
        (_, Some(p)) => (load_instance(p)?.graph, 0),
        (_, None) => (Graph::complete(need(a.n, "--n or --graph")?)?, 0),
    };
    let mut agent: Box<dyn Agent> = match a.agent {
        AgentKind::Nn => Box::new(nn_agent_with_ties(tie_policy(c)?)),
        AgentKind::DfsRestart => Box::new(dfs_restart_agent()),
    };
    let n = graph.node_count();
    let default_budget = if a.adversary == AdversaryKind::Killer {
        killer_step_budget(&graph)
    } else {
        game_budget(n)
    };
    let budget = c.budget.unwrap_or(default_budget);
    let trace = play_game(agent.as_mut(), adversary.as_mut(), &graph, a.start.unwrap_or(default_start), budget)?;
    write_to(c.output.as_deref(), &duel_output(&trace, a.adversary == AdversaryKind::Clique))?;
    if trace.halted() {
        Ok(())
    } else {
        Err(CliError::Budget(budget))
    }
}

fn duel_output(trace: &GameTrace, clique: bool) -> String {
    let text = trace.to_json_lines();
    let mut lines: Vec<&str> = text.lines().collect();
    let summary_line = lines.pop().unwrap_or("{}");
    let mut summary: serde_json::Value = serde_json::from_str(summary_line).expect("summary is JSON");
    if clique {
        let bound = trace.n * (trace.n - 1) / 2;
        summary["bound"] = json!(bound);
        summary["meets_bound"] = json!(trace.steps() >= bound);
        summary["phase_breakdown"] = json!(trace.phase_breakdown());
    }
    let mut out = String::new();
    for l in lines {
        out += l;
        out.push('\n');
    }
    out + &summary.to_string() + "\n"
}

fn tree(c: &Common, a: &TreeArgs) -> CliResult<()> {
    let inst = require_input(c)?;
    let n = inst.cost.n();
    let ranks = match (&a.ranks, a.shuffle) {
        (Some(p), _) => RankAssignment::new(parse_json(&read(p)?)?)?,
        (None, true) => RankAssignment::new(random_ranks(n, &mut rng(derive_seed(c.seed, 2))))?,
        (None, false) => RankAssignment::identity(n),
    };
    let t = nn_tree(&inst.cost, &ranks)?;
    let bound = match nnt_bound_check(&inst.cost, &ranks) {
        Ok(r) => json!(r),
        Err(Error::TriangleViolation { u, w, v }) => json!({ "claimed": false, "triangle_violation": [u, w, v] }),
        Err(e) => return Err(e.into()),
    };
    let report = json!({
        "n": n,
        "ranks": ranks,
        "edges": t.edges,
        "cost": t.cost,
        "lambda": t.lambda_profile(),
        "bound": bound,
    });
    write_to(c.output.as_deref(), &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
enum BenchRow {
    /// Canonical greedy route on `LR^k(2^m)`; `k` defaults to `⌊(m-1)/2.5⌋`.
    LrPow2 { m: u32, k: Option<usize> },
    /// Clique adversary against an agent on `K_n`.
    Clique { n: usize, agent: BenchAgent },
    /// Restarting DFS against the two-clique adversary.
    Killer { n: usize },
    /// Simulation on a random graph with random failures.
    Sim { n: usize, rate: f64 },
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum BenchAgent {
    Nn,
    DfsRestart,
}

#[derive(Debug, Deserialize)]
struct Suite {
    rows: Vec<BenchRow>,
}

fn default_suite() -> Vec<BenchRow> {
    let mut rows: Vec<BenchRow> = (6..=12).map(|m| BenchRow::LrPow2 { m, k: None }).collect();
    for n in 4..=12 {
        rows.push(BenchRow::Clique { n, agent: BenchAgent::Nn });
        rows.push(BenchRow::Clique {
            n,
            agent: BenchAgent::DfsRestart,
        });
    }
    rows.extend([12, 24, 48].map(|n| BenchRow::Killer { n }));
    rows.extend([10, 20, 40].map(|n| BenchRow::Sim { n, rate: 0.2 }));
    rows
}

struct CsvRow {
    family: &'static str,
    n: usize,
    m: String,
    k: String,
    agent: &'static str,
    adversary: &'static str,
    value: u64,
    bound: u64,
    ratio: String,
    seed: String,
}

fn bench_row(row: &BenchRow, seed: u64) -> CliResult<CsvRow> {
    let blank = String::new;
    Ok(match *row {
        BenchRow::LrPow2 { m, k } => {
            let k = k.unwrap_or(((m.saturating_sub(1)) as f64 / 2.5).floor() as usize);
            let lr = build_lr_pow2(m, k)?;
            let n = lr.node_count();
            let cost = lr.canonical_route_cost();
            let opt = (n - 1) as u64;
            CsvRow {
                family: "lr-pow2",
                n,
                m: m.to_string(),
                k: k.to_string(),
                agent: "nn",
                adversary: "none",
                value: cost,
                bound: nn_upper_bound(n, opt)?,
                ratio: format!("{:.6}", cost as f64 / opt as f64),
                seed: blank(),
            }
        }
        BenchRow::Clique { n, agent } => {
            let g = Graph::complete(n)?;
            let (name, mut a): (&'static str, Box<dyn Agent>) = match agent {
                BenchAgent::Nn => ("nn", Box::new(nn_agent_with_ties(TieBreak::LowestId))),
                BenchAgent::DfsRestart => ("dfs-restart", Box::new(dfs_restart_agent())),
            };
            let t = play_game(a.as_mut(), &mut clique_adversary(), &g, 0, game_budget(n))?;
            let bound = (n * (n - 1) / 2) as u64;
            CsvRow {
                family: "clique",
                n,
                m: blank(),
                k: blank(),
                agent: name,
                adversary: "clique",
                value: t.steps() as u64,
                bound,
                ratio: format!("{:.6}", t.steps() as f64 / bound as f64),
                seed: blank(),
            }
        }
        BenchRow::Killer { n } => {
            let (g, killer) = build_dfs_killer(n)?;
            let t = play_game(&mut dfs_restart_agent(), &mut dfs_killer_adversary(killer.clone()), &g, killer.start, killer_step_budget(&g))?;
            let bound = 2 * (n as u64 - 1);
            CsvRow {
                family: "dfs-killer",
                n,
                m: blank(),
                k: blank(),
                agent: "dfs-restart",
                adversary: "killer",
                value: t.steps() as u64,
                bound,
                ratio: format!("{:.6}", t.steps() as f64 / bound as f64),
                seed: blank(),
            }
        }
        BenchRow::Sim { n, rate } => {
            let mut r = rng(seed);
            let g = random_connected_graph(n, 0.1, &mut r)?;
            let schedule = random_schedule(&g, rate.clamp(0.0, 1.0), 2 * n * n, &mut r);
            let budget = iteration_budget(n);
            let trace = run_sim(&g, 0, &schedule, budget)?;
            CsvRow {
                family: "sim",
                n,
                m: blank(),
                k: blank(),
                agent: "label-walker",
                adversary: "random-schedule",
                value: trace.iterations() as u64,
                bound: budget as u64,
                ratio: format!("{:.6}", trace.iterations() as f64 / budget as f64),
                seed: seed.to_string(),
            }
        }
    })
}

fn bench(c: &Common, a: &BenchArgs) -> CliResult<()> {
    let rows = match &a.suite {
        Some(p) => parse_json::<Suite>(&read(p)?)?.rows,
        None => default_suite(),
    };
    let results: Vec<CliResult<CsvRow>> = rows
        .par_iter()
        .enumerate()
        .map(|(i, row)| bench_row(row, derive_seed(c.seed, i as u64)))
        .collect();
    let mut out = format!("{BENCH_HEADER}\nfamily,n,m,k,agent,adversary,value,bound,ratio,seed\n");
    for r in results {
        let r = r?;
        out += &format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.family, r.n, r.m, r.k, r.agent, r.adversary, r.value, r.bound, r.ratio, r.seed
        );
    }
    write_to(c.output.as_deref(), &out)
}
