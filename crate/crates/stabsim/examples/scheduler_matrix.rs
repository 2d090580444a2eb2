//! The same input under all four schedulers: central (one node per step),
//! distributed (random subsets), synchronous (everyone, lockstep), and the
//! bounded-staleness monotonic-read model.

use stabsim::algo::{Problem, Task};
use stabsim::engine::{self, Init, Scheduler, SchedulerConfig};
use stabsim::instance::SdmdsInstance;
use stabsim::oracle;
use stabsim::Graph;

fn main() {
    let graph = Graph::gen_gnm(40, 90, 3).unwrap();
    let inst = SdmdsInstance::uniform(graph.clone());
    let task = Task::Sdmds(&inst);
    let init = engine::initial_state(Problem::Sdmds, &graph, &Init::Random, 11);

    println!("dominating-set rules on n={} m={}", graph.n(), graph.m());
    println!(
        "{:<13} {:>2} {:>6} {:>6} {:>11} {:>7}",
        "scheduler", "B", "moves", "rounds", "activations", "optimal"
    );
    for (kind, b) in [
        (Scheduler::Central, 0),
        (Scheduler::Distributed, 0),
        (Scheduler::Synchronous, 0),
        (Scheduler::Amr, 4),
        (Scheduler::Amr, 16),
    ] {
        let cfg = SchedulerConfig::new(kind, 5)
            .staleness(b)
            .record_steps(false);
        let rules = task.rules();
        let trace = engine::run(&graph, &*rules, init.clone(), cfg).unwrap();
        let optimal = oracle::check_optimal(task, &trace.final_state).optimal;
        println!(
            "{:<13} {:>2} {:>6} {:>6} {:>11} {:>7}",
            kind.name(),
            b,
            trace.moves,
            trace.rounds,
            trace.activations,
            optimal
        );
    }
}
