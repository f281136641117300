use std::ffi::CStr;
use std::process::Command;
use std::ptr;

use nntrav_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(nntrav_last_error()) }.to_string_lossy().into_owned()
}

fn path_graph(n: usize) -> *mut NntravGraph {
    let edges: Vec<usize> = (0..n - 1).flat_map(|i| [i, i + 1]).collect();
    let mut g = ptr::null_mut();
    let st = unsafe { nntrav_graph_new(n, edges.as_ptr(), n - 1, &mut g) };
    assert_eq!(st, NntravStatus::Ok);
    g
}

#[test]
fn graph_lifecycle_and_bfs() {
    let g = path_graph(4);
    unsafe {
        assert_eq!(nntrav_graph_node_count(g), 4);
        assert_eq!(nntrav_graph_edge_count(g), 3);
        let mut d = [0u64; 4];
        assert_eq!(nntrav_graph_bfs(g, 0, d.as_mut_ptr(), 4), NntravStatus::Ok);
        assert_eq!(d, [0, 1, 2, 3]);
        assert_eq!(nntrav_graph_delete_edge(g, 1, 2), NntravStatus::Ok);
        assert_eq!(nntrav_graph_bfs(g, 0, d.as_mut_ptr(), 4), NntravStatus::Ok);
        assert_eq!(d, [0, 1, 5, 5]);
        assert_eq!(nntrav_graph_delete_edge(g, 1, 2), NntravStatus::MissingEdge);
        assert!(!last_error().is_empty());
        nntrav_graph_free(g);
        nntrav_graph_free(ptr::null_mut());
    }
}

#[test]
fn rejects_bad_input() {
    let mut g = ptr::null_mut();
    unsafe {
        let bad = [0usize, 7];
        assert_eq!(nntrav_graph_new(3, bad.as_ptr(), 1, &mut g), NntravStatus::InvalidNode);
        assert!(g.is_null());
        let dup = [0usize, 1, 1, 0];
        assert_eq!(nntrav_graph_new(3, dup.as_ptr(), 2, &mut g), NntravStatus::DuplicateEdge);
        assert_eq!(nntrav_graph_new(3, ptr::null(), 1, &mut g), NntravStatus::NullPointer);
        assert_eq!(nntrav_graph_node_count(ptr::null()), 0);
        let mut c = 0u64;
        assert_eq!(nntrav_opt_cost(ptr::null(), &mut c), NntravStatus::NullPointer);
    }
}

#[test]
fn traversal_on_layered_ring() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(nntrav_graph_layered_ring(4, 1, &mut g), NntravStatus::Ok);
        let n = nntrav_graph_node_count(g);
        let mut order = vec![0usize; n];
        let mut cost = 0u64;
        let mut small = [0usize; 1];
        assert_eq!(
            nntrav_nn_traversal(g, 0, NntravTies::LowestId, 0, small.as_mut_ptr(), 1, &mut cost),
            NntravStatus::BufferTooSmall
        );
        assert_eq!(
            nntrav_nn_traversal(g, 0, NntravTies::LowestId, 0, order.as_mut_ptr(), n, &mut cost),
            NntravStatus::Ok
        );
        assert_eq!(order[0], 0);
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..n).collect::<Vec<_>>());
        let mut opt = 0u64;
        assert_eq!(nntrav_opt_cost(g, &mut opt), NntravStatus::Ok);
        assert!(opt as usize >= n - 1 && opt <= cost);
        nntrav_graph_free(g);
    }
}

#[test]
fn seeded_traversal_is_reproducible() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(nntrav_graph_complete(7, &mut g), NntravStatus::Ok);
        let run = |seed| {
            let mut order = [0usize; 7];
            let mut cost = 0u64;
            assert_eq!(
                nntrav_nn_traversal(g, 0, NntravTies::SeededRandom, seed, order.as_mut_ptr(), 7, &mut cost),
                NntravStatus::Ok
            );
            assert_eq!(cost, 6);
            order
        };
        assert_eq!(run(11), run(11));
        nntrav_graph_free(g);
    }
}

#[test]
fn simulate_and_duel() {
    let g = path_graph(2);
    unsafe {
        let mut iters = 0usize;
        assert_eq!(nntrav_simulate(g, 0, ptr::null(), 0, 0, &mut iters), NntravStatus::Ok);
        assert_eq!(iters, 4);
        let mut iters = 0usize;
        assert_eq!(nntrav_simulate(g, 0, ptr::null(), 0, 1, &mut iters), NntravStatus::BudgetExhausted);
        let sched = [1usize, 0, 1, 1, 0, 1];
        assert_eq!(nntrav_simulate(g, 0, sched.as_ptr(), 2, 0, &mut iters), NntravStatus::InvalidArgument);
        assert!(last_error().contains("twice"), "{}", last_error());
        nntrav_graph_free(g);

        let mut steps = 0usize;
        assert_eq!(nntrav_duel(NntravAgent::Nn, NntravAdversary::None, 5, &mut steps), NntravStatus::Ok);
        assert_eq!(steps, 4);
        assert_eq!(nntrav_duel(NntravAgent::Nn, NntravAdversary::Clique, 4, &mut steps), NntravStatus::Ok);
        assert_eq!(steps, 6);
        assert_eq!(nntrav_duel(NntravAgent::DfsRestart, NntravAdversary::Killer, 12, &mut steps), NntravStatus::Ok);
        assert!(steps > 11);
    }
}

#[test]
fn c_program_links_against_header() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let manifest = env!("CARGO_MANIFEST_DIR");
    let target = std::path::Path::new(manifest).join("../../target");
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("libnntrav_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "nntrav.h"
int main(void) {
    NntravGraph *g = NULL;
    if (nntrav_graph_layered_ring(4, 1, &g) != NNTRAV_STATUS_OK) return 1;
    size_t n = nntrav_graph_node_count(g);
    size_t order[64];
    uint64_t cost = 0;
    if (nntrav_nn_traversal(g, 0, NNTRAV_TIES_LOWEST_ID, 0, order, 64, &cost) != NNTRAV_STATUS_OK) return 2;
    if (nntrav_graph_delete_edge(g, 0, 0) == NNTRAV_STATUS_OK) return 3;
    printf("%zu %llu %s\n", n, (unsigned long long)cost, nntrav_last_error()[0] ? "err" : "none");
    nntrav_graph_free(g);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let out = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(format!("{manifest}/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success());
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.ends_with(" err\n"), "{text}");
}
