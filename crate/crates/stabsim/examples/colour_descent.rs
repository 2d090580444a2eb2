//! Colouring in two phases: clashing nodes escape upwards by adding their
//! own id (distinct ids guarantee separation), then, once the colouring is
//! proper everywhere, the highest-id node with a free lower colour descends
//! to the minimum. The example prints every move on a small wheel.

use stabsim::algo::{gc, Problem, Task};
use stabsim::engine::{self, Init, Scheduler, SchedulerConfig, Sim};
use stabsim::oracle;
use stabsim::Graph;

fn main() {
    // Wheel: hub 6 joined to a 5-cycle.
    let graph = Graph::new(
        6,
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 1),
            (6, 1),
            (6, 2),
            (6, 3),
            (6, 4),
            (6, 5),
        ],
    )
    .unwrap();
    let init = engine::initial_state(Problem::Gc, &graph, &Init::AllOut, 0);
    println!("wheel on 6 nodes, everyone starts at colour 1: {init}");

    let rules = gc::rules(&graph);
    let cfg = SchedulerConfig::new(Scheduler::Central, 4);
    let mut sim = Sim::new(&graph, &rules, init, cfg).unwrap();
    let mut last = sim.state().clone();
    while !sim.is_silent_now() {
        sim.step();
        if sim.state() != &last {
            last = sim.state().clone();
            println!("  -> {last}");
        }
    }

    let trace_moves = sim.moves();
    let state = sim.state().clone();
    let verdict = oracle::check_optimal(Task::Gc(&graph), &state);
    let palette: std::collections::BTreeSet<u32> = graph.ids().map(|i| state.colour(i)).collect();
    println!(
        "settled after {trace_moves} moves (bound n+4m = {}), palette {palette:?}, optimal={}",
        graph.n() as u64 + 4 * graph.m(),
        verdict.optimal
    );
}
