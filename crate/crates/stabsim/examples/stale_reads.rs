//! Reads under the bounded-staleness model may lag the writer by up to B
//! versions but never go backwards. This example converges the vertex-cover
//! rules under increasingly stale reads, then keeps scheduling after
//! convergence to show closure: once every cursor has caught up, nothing
//! moves again.

use stabsim::algo::{mvc, Problem, Task};
use stabsim::engine::{self, Init, Scheduler, SchedulerConfig, Sim};
use stabsim::oracle;
use stabsim::Graph;

fn main() {
    let graph = Graph::gen_gnm(50, 140, 21).unwrap();
    let init = engine::initial_state(Problem::Mvc, &graph, &Init::Random, 21);

    println!("vertex-cover rules on n={} m={}", graph.n(), graph.m());
    for b in [0, 1, 4, 16, 64] {
        let rules = mvc::rules(&graph);
        let cfg = SchedulerConfig::new(Scheduler::Amr, 33)
            .staleness(b)
            .record_steps(false);
        let mut sim = Sim::new(&graph, &rules, init.clone(), cfg).unwrap();
        sim.run_to_silence().unwrap();
        let optimal = oracle::check_optimal(Task::Mvc(&graph), sim.state()).optimal;
        print!(
            "B={b:<3} moves={:<4} rounds={:<3} optimal={optimal}",
            sim.moves(),
            sim.rounds()
        );

        // Closure probe: keep scheduling with stale reads allowed.
        let mut extra_steps = 0u64;
        while !(sim.views_caught_up() && sim.is_silent_now()) {
            sim.step();
            extra_steps += 1;
        }
        let frozen = sim.moves();
        let mut activations = 0u64;
        while activations < 10 * graph.n() as u64 {
            activations += sim.step().activated as u64;
        }
        println!(
            "  (+{extra_steps} steps to catch views up, then {activations} activations, {} extra moves)",
            sim.moves() - frozen
        );
    }
}
