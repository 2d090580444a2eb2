//! One seeded simulation end to end: generate a random graph, run the
//! independent-set rules under a central scheduler from a random state, and
//! check the result against the oracle and the move bounds.

use stabsim::algo::{mis, Problem, Task};
use stabsim::engine::{self, Init, Scheduler, SchedulerConfig};
use stabsim::oracle;
use stabsim::Graph;

fn main() {
    let graph = Graph::gen_gnm(60, 150, 7).unwrap();
    let rules = mis::rules(&graph);
    let init = engine::initial_state(Problem::Mis, &graph, &Init::Random, 7);
    let cfg = SchedulerConfig::new(Scheduler::Central, 7);

    let trace = engine::run(&graph, &rules, init, cfg).unwrap();
    println!(
        "n={} m={} -> {}",
        graph.n(),
        graph.m(),
        trace.summary_line()
    );

    let verdict = oracle::check_optimal(Task::Mis(&graph), &trace.final_state);
    let bounds = oracle::check_bounds(Problem::Mis, &graph, &trace);
    println!(
        "independent-set size {}, optimal={}, moves {} <= {} (after first round {} <= {:?})",
        trace.final_state.count_in(),
        verdict.optimal,
        bounds.moves,
        bounds.move_limit,
        bounds.moves_after_first_round,
        bounds.after_round_limit
    );

    // The last few activations of the trace, as exported to JSON lines.
    let jsonl = trace.to_jsonl();
    println!("\ntail of the activation log:");
    let lines: Vec<&str> = jsonl.lines().collect();
    for line in lines.iter().rev().take(4).rev() {
        println!("  {line}");
    }
}
