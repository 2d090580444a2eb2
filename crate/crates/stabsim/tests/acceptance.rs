//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line. Run with `cargo test --test acceptance -- --nocapture`.

use rayon::prelude::*;
use std::time::Instant;

use stabsim::algo::{Problem, Task};
use stabsim::cli::{self, AlgoArg, BenchArgs, SchedArg};
use stabsim::engine::{self, Init, Scheduler, SchedulerConfig, Sim};
use stabsim::graph::Graph;
use stabsim::instance::SdmdsInstance;
use stabsim::oracle;
use stabsim::state::{GlobalState, Membership};

const MASTER_SEED: u64 = 0xC0FFEE;

fn g4() -> Graph {
    Graph::new(4, &[(1, 2), (3, 4)]).unwrap()
}

/// Holds the input so a `Task` can borrow from it inside loops.
enum Holder {
    Plain(Graph),
    Tokens(SdmdsInstance),
}

impl Holder {
    fn build(problem: Problem, graph: &Graph, seed: u64) -> Holder {
        match problem {
            Problem::Sdmds => {
                Holder::Tokens(SdmdsInstance::random(graph.clone(), &["a", "b", "c"], seed))
            }
            _ => Holder::Plain(graph.clone()),
        }
    }

    fn task(&self, problem: Problem) -> Task<'_> {
        match (problem, self) {
            (Problem::Sdmds, Holder::Tokens(inst)) => Task::Sdmds(inst),
            (Problem::Mvc, Holder::Plain(g)) => Task::Mvc(g),
            (Problem::Mis, Holder::Plain(g)) => Task::Mis(g),
            (Problem::Gc, Holder::Plain(g)) => Task::Gc(g),
            (Problem::TwoDs, Holder::Plain(g)) => Task::TwoDs(g),
            _ => unreachable!(),
        }
    }
}

const ALL_PROBLEMS: [Problem; 5] = [
    Problem::Sdmds,
    Problem::Mvc,
    Problem::Mis,
    Problem::Gc,
    Problem::TwoDs,
];

/// 50 seeded random graphs with n in [10, 100] and m in [n, 5n]
/// (clamped to the simple-graph maximum).
fn corpus() -> Vec<Graph> {
    (0..50u64)
        .map(|t| {
            let s1 = cli::sub_seed(MASTER_SEED, &[t, 1]);
            let s2 = cli::sub_seed(MASTER_SEED, &[t, 2]);
            let n = 10 + (s1 % 91) as u32;
            let span = 4 * n as u64 + 1;
            let m = (n as u64 + s2 % span).min(n as u64 * (n as u64 - 1) / 2);
            Graph::gen_gnm(n, m, cli::sub_seed(MASTER_SEED, &[t, 3])).unwrap()
        })
        .collect()
}

fn fresh_read_schedulers() -> Vec<(Scheduler, u32)> {
    vec![
        (Scheduler::Central, 0),
        (Scheduler::Distributed, 0),
        (Scheduler::Synchronous, 0),
    ]
}

fn all_schedulers() -> Vec<(Scheduler, u32)> {
    let mut v = fresh_read_schedulers();
    v.extend([
        (Scheduler::Amr, 1),
        (Scheduler::Amr, 4),
        (Scheduler::Amr, 16),
    ]);
    v
}

#[test]
fn criterion_1_state_space_census_of_the_two_edge_graph() {
    let started = Instant::now();
    let inst = SdmdsInstance::uniform(g4());
    let lat = oracle::enumerate_lattices(Task::Sdmds(&inst)).unwrap();

    assert_eq!(lat.feasible.len(), 9, "feasible states");
    assert_eq!(lat.infeasible.len(), 7, "infeasible states");
    assert_eq!(lat.components.len(), 4, "disjoint components");
    assert_eq!(lat.component_sizes(), vec![4, 2, 2, 1], "component sizes");
    let mut suprema: Vec<String> = lat.suprema().iter().map(|s| s.to_string()).collect();
    suprema.sort();
    assert_eq!(
        suprema,
        vec![
            "(IN,OUT,IN,OUT)",
            "(IN,OUT,OUT,IN)",
            "(OUT,IN,IN,OUT)",
            "(OUT,IN,OUT,IN)",
        ],
        "per-component suprema"
    );
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "census took {elapsed:?}");
    println!("criterion 1 (two-edge census, {elapsed:?}): PASS");
}

#[test]
fn criterion_2_priority_set_and_double_fire() {
    let inst = SdmdsInstance::uniform(g4());
    let task = Task::Sdmds(&inst);
    let rules = task.rules();
    let all_in = GlobalState::all_member(4, Membership::In);

    let pivots = oracle::pivotal_set(&*rules, &all_in);
    assert_eq!(pivots, vec![2, 4], "exactly nodes 2 and 4 may leave");

    let after_2 = oracle::fire_refine(&*rules, &all_in, 2);
    let after_both = oracle::fire_refine(&*rules, &after_2, 4);
    assert_eq!(after_both.to_string(), "(IN,OUT,IN,OUT)");
    // Order does not matter.
    let after_4 = oracle::fire_refine(&*rules, &all_in, 4);
    let after_both_rev = oracle::fire_refine(&*rules, &after_4, 2);
    assert_eq!(after_both, after_both_rev);
    println!("criterion 2 (priority set {{2, 4}} and double fire): PASS");
}

#[test]
fn criterion_3_convergence_and_optimality_everywhere() {
    let started = Instant::now();
    let graphs = corpus();
    let scheds = all_schedulers();

    let mut cells = Vec::new();
    for &problem in &ALL_PROBLEMS {
        for (gidx, _) in graphs.iter().enumerate() {
            for &(kind, b) in &scheds {
                cells.push((problem, gidx, kind, b));
            }
        }
    }
    let failures: Vec<String> = cells
        .par_iter()
        .filter_map(|&(problem, gidx, kind, b)| {
            let graph = &graphs[gidx];
            let seed = cli::sub_seed(
                MASTER_SEED,
                &[problem as u64, gidx as u64, kind as u64, b as u64],
            );
            let holder = Holder::build(problem, graph, cli::sub_seed(seed, &[0]));
            let task = holder.task(problem);
            let init =
                engine::initial_state(problem, graph, &Init::Random, cli::sub_seed(seed, &[1]));
            let cfg = SchedulerConfig::new(kind, cli::sub_seed(seed, &[2]))
                .staleness(b)
                .record_steps(false);
            let rules = task.rules();
            let describe = || format!("{problem} on graph#{gidx} (n={}) {kind}/B={b}", graph.n());
            match engine::run(graph, &*rules, init, cfg) {
                Err(e) => Some(format!("{}: {e}", describe())),
                Ok(trace) => {
                    let verdict = oracle::check_optimal(task, &trace.final_state);
                    (!verdict.optimal).then(|| {
                        format!(
                            "{}: non-optimal final state {:?}",
                            describe(),
                            verdict.witness
                        )
                    })
                }
            }
        })
        .collect();

    assert!(failures.is_empty(), "failures:\n{}", failures.join("\n"));
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "corpus sweep took {elapsed:?}"
    );
    println!(
        "criterion 3 (convergence + optimality, {} runs, {elapsed:?}): PASS",
        cells.len()
    );
}

#[test]
fn criterion_4_move_bounds_under_fresh_reads() {
    let graphs = corpus();
    let scheds = fresh_read_schedulers();

    let mut cells = Vec::new();
    for &problem in &ALL_PROBLEMS {
        for (gidx, _) in graphs.iter().enumerate() {
            for &(kind, _) in &scheds {
                cells.push((problem, gidx, kind));
            }
        }
    }
    let failures: Vec<String> = cells
        .par_iter()
        .filter_map(|&(problem, gidx, kind)| {
            let graph = &graphs[gidx];
            let seed = cli::sub_seed(MASTER_SEED, &[problem as u64, gidx as u64, kind as u64]);
            let holder = Holder::build(problem, graph, cli::sub_seed(seed, &[0]));
            let task = holder.task(problem);
            let init = engine::initial_state(
                problem,
                graph,
                &Init::Random,
                cli::sub_seed(seed, &[1]),
            );
            let cfg = SchedulerConfig::new(kind, cli::sub_seed(seed, &[2])).record_steps(false);
            let rules = task.rules();
            let trace = match engine::run(graph, &*rules, init, cfg) {
                Ok(t) => t,
                Err(e) => return Some(format!("{problem} graph#{gidx} {kind}: {e}")),
            };
            let bounds = oracle::check_bounds(problem, graph, &trace);
            (!bounds.ok).then(|| {
                format!(
                    "{problem} graph#{gidx} (n={}, m={}) {kind}: moves={} limit={} after-round={} after-limit={:?}",
                    graph.n(),
                    graph.m(),
                    bounds.moves,
                    bounds.move_limit,
                    bounds.moves_after_first_round,
                    bounds.after_round_limit,
                )
            })
        })
        .collect();

    assert!(failures.is_empty(), "failures:\n{}", failures.join("\n"));
    println!(
        "criterion 4 (move bounds, {} fresh-read runs): PASS",
        cells.len()
    );
}

#[test]
fn criterion_5_round_lemma_suite_on_all_small_graphs() {
    let started = Instant::now();
    let graphs: Vec<Graph> = (1..=5).flat_map(oracle::non_isomorphic_graphs).collect();
    assert_eq!(graphs.len(), 52, "graph classes with 1..=5 nodes");

    let failures: Vec<String> = graphs
        .par_iter()
        .enumerate()
        .filter_map(|(gidx, graph)| {
            let inst = SdmdsInstance::uniform(graph.clone());
            let task = Task::Sdmds(&inst);
            let rules = task.rules();
            let n = graph.n();

            // Silence of optimal states, over the whole state space.
            for state in oracle::member_states(n).unwrap() {
                let verdict = oracle::check_optimal(task, &state);
                if verdict.optimal && !engine::is_silent(&*rules, &state) {
                    return Some(format!("graph#{gidx}: optimal state {state} not silent"));
                }
            }

            // Refine-descent structure over the whole state space.
            let report = oracle::check_lattice_linearity(task).unwrap();
            if !report.pass() {
                return Some(format!(
                    "graph#{gidx}: {} descent violations, first {:?}",
                    report.violations.len(),
                    report.violations.first().map(|v| (&v.state, &v.kind))
                ));
            }

            // Round-by-round behaviour from every initial state.
            for init in oracle::member_states(n).unwrap() {
                for (kind, seed_tag) in [(Scheduler::Central, 1u64), (Scheduler::Synchronous, 2u64)]
                {
                    let cfg = SchedulerConfig::new(
                        kind,
                        cli::sub_seed(MASTER_SEED, &[gidx as u64, seed_tag]),
                    )
                    .record_steps(false);
                    let mut sim = Sim::new(graph, &*rules, init.clone(), cfg).unwrap();
                    let mut boundaries: Vec<GlobalState> = Vec::new();
                    let mut guard = 0u64;
                    loop {
                        guard += 1;
                        if guard > 100_000 {
                            return Some(format!("graph#{gidx}: runaway from {init}"));
                        }
                        let out = sim.step();
                        if out.completed_round {
                            boundaries.push(sim.state().clone());
                            if engine::is_silent(&*rules, sim.state()) {
                                break;
                            }
                        }
                    }
                    // Coverage restored by the end of round 1, kept forever.
                    for (round0, s) in boundaries.iter().enumerate() {
                        if oracle::rank(&inst, s).unwrap() != 0 {
                            return Some(format!(
                                "graph#{gidx} {kind}: rank != 0 after round {} from {init}",
                                round0 + 1
                            ));
                        }
                    }
                    // Non-minimal coverage strictly shrinks round over
                    // round, and removable slack never grows back.
                    for pair in boundaries.windows(2) {
                        let (s, t) = (&pair[0], &pair[1]);
                        let v = oracle::check_optimal(task, s);
                        if v.feasible
                            && !v.optimal
                            && (!oracle::check_feasible(task, t) || t.count_in() + 1 > s.count_in())
                        {
                            return Some(format!(
                                "graph#{gidx} {kind}: no strict shrink {s} -> {t}"
                            ));
                        }
                        if oracle::badness(&inst, t).unwrap() > oracle::badness(&inst, s).unwrap()
                        {
                            return Some(format!(
                                "graph#{gidx} {kind}: slack grew {s} -> {t}"
                            ));
                        }
                    }
                }
            }
            None
        })
        .collect();

    assert!(failures.is_empty(), "failures:\n{}", failures.join("\n"));
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "lemma suite took {elapsed:?}"
    );
    println!("criterion 5 (round lemmas on 52 graph classes, {elapsed:?}): PASS");
}

#[test]
fn criterion_6_stale_reads_tolerated_and_closed() {
    let started = Instant::now();
    let graphs = corpus();

    let mut cells = Vec::new();
    for &problem in &ALL_PROBLEMS {
        for (gidx, _) in graphs.iter().enumerate() {
            cells.push((problem, gidx));
        }
    }
    let failures: Vec<String> = cells
        .par_iter()
        .filter_map(|&(problem, gidx)| {
            let graph = &graphs[gidx];
            let n = graph.n() as u64;
            let seed = cli::sub_seed(MASTER_SEED, &[77, problem as u64, gidx as u64]);
            let holder = Holder::build(problem, graph, cli::sub_seed(seed, &[0]));
            let task = holder.task(problem);
            let init =
                engine::initial_state(problem, graph, &Init::Random, cli::sub_seed(seed, &[1]));
            let cfg = SchedulerConfig::new(Scheduler::Amr, cli::sub_seed(seed, &[2]))
                .staleness(16)
                .record_steps(false);
            let rules = task.rules();
            let mut sim = match Sim::new(graph, &*rules, init, cfg) {
                Ok(s) => s,
                Err(e) => return Some(format!("{problem} graph#{gidx}: {e}")),
            };
            if let Err(e) = sim.run_to_silence() {
                return Some(format!("{problem} graph#{gidx}: {e}"));
            }
            let verdict = oracle::check_optimal(task, sim.state());
            if !verdict.optimal {
                return Some(format!(
                    "{problem} graph#{gidx}: non-optimal {:?}",
                    verdict.witness
                ));
            }
            // Drive until every cursor has caught up and the state is still
            // silent; stale reads in between may not disturb anything after
            // that point.
            let mut budget = 200 * n + 2000;
            while !(sim.views_caught_up() && sim.is_silent_now()) {
                sim.step();
                budget -= 1;
                if budget == 0 {
                    return Some(format!("{problem} graph#{gidx}: views never caught up"));
                }
            }
            let moves_frozen = sim.moves();
            let mut activations = 0u64;
            while activations < 10 * n {
                activations += sim.step().activated as u64;
            }
            (sim.moves() != moves_frozen).then(|| {
                format!(
                    "{problem} graph#{gidx}: {} extra moves after closure",
                    sim.moves() - moves_frozen
                )
            })
        })
        .collect();

    assert!(failures.is_empty(), "failures:\n{}", failures.join("\n"));
    let elapsed = started.elapsed();
    println!(
        "criterion 6 (staleness 16 + closure, {} runs, {elapsed:?}): PASS",
        cells.len()
    );
}

#[test]
fn criterion_7_sync_versus_stale_benchmark_harness() {
    let started = Instant::now();
    let args = || BenchArgs {
        algos: vec![AlgoArg::Mis],
        n: 1000,
        m: (2..=10).map(|k| k * 1000).collect(),
        trials: 16,
        schedulers: vec![SchedArg::Sync, SchedArg::Amr],
        staleness: vec![16],
        seed: MASTER_SEED,
        out: None,
        zero_time: true,
    };
    let rows = cli::bench_matrix(&args()).unwrap();
    assert_eq!(rows.len(), 2 * 9 * 16, "one row per configuration");
    assert!(rows.iter().all(|r| r.optimal), "every final state optimal");
    assert!(rows.iter().all(|r| r.moves > 0 && r.rounds > 0));

    // Byte determinism of the emitted CSV.
    let a = cli::cmd_bench(args()).unwrap();
    let b = cli::cmd_bench(args()).unwrap();
    assert_eq!(a, b, "bench CSV must be byte-identical across runs");

    // The sync-versus-stale comparison table is derivable from the rows.
    println!("criterion 7 derived table (means over 16 trials):");
    println!("  scheduler      m  moves rounds");
    for sched in [Scheduler::Synchronous, Scheduler::Amr] {
        for m in (2..=10).map(|k| k * 1000u64) {
            let sel: Vec<_> = rows
                .iter()
                .filter(|r| r.scheduler == sched && r.m == m)
                .collect();
            assert_eq!(sel.len(), 16);
            let moves: f64 = sel.iter().map(|r| r.moves as f64).sum::<f64>() / 16.0;
            let rounds: f64 = sel.iter().map(|r| r.rounds as f64).sum::<f64>() / 16.0;
            println!("  {:<11} {m:>6} {moves:>6.1} {rounds:>6.1}", sched.name());
        }
    }
    let elapsed = started.elapsed();
    println!(
        "criterion 7 (benchmark harness, {} rows, {elapsed:?}): PASS",
        rows.len()
    );
}

#[test]
fn criterion_8_bit_identical_reruns() {
    // Full trace export, stale scheduler.
    let g = Graph::gen_gnm(50, 120, 4).unwrap();
    let init = engine::initial_state(Problem::Mis, &g, &Init::Random, 9);
    let cfg = SchedulerConfig::new(Scheduler::Amr, 31).staleness(4);
    let rules = stabsim::algo::mis::rules(&g);
    let t1 = engine::run(&g, &rules, init.clone(), cfg).unwrap();
    let t2 = engine::run(&g, &rules, init, cfg).unwrap();
    assert_eq!(t1.to_jsonl(), t2.to_jsonl());

    // Full trace export, synchronous colouring.
    let init = engine::initial_state(Problem::Gc, &g, &Init::Random, 10);
    let cfg = SchedulerConfig::new(Scheduler::Synchronous, 8);
    let rules = stabsim::algo::gc::rules(&g);
    let t1 = engine::run(&g, &rules, init.clone(), cfg).unwrap();
    let t2 = engine::run(&g, &rules, init, cfg).unwrap();
    assert_eq!(t1.to_jsonl(), t2.to_jsonl());

    // CSV rows across all five algorithms.
    let args = || BenchArgs {
        algos: vec![
            AlgoArg::Sdmds,
            AlgoArg::Mvc,
            AlgoArg::Mis,
            AlgoArg::Gc,
            AlgoArg::TwoDs,
        ],
        n: 30,
        m: vec![40, 90],
        trials: 2,
        schedulers: vec![SchedArg::Central, SchedArg::Amr],
        staleness: vec![4],
        seed: 123,
        out: None,
        zero_time: true,
    };
    let a = cli::cmd_bench(args()).unwrap();
    let b = cli::cmd_bench(args()).unwrap();
    assert_eq!(a, b);
    assert!(a.lines().skip(1).all(|l| l.ends_with(",true")));
    println!("criterion 8 (bit-identical traces and CSV): PASS");
}
