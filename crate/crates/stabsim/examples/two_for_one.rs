//! The two-for-one improvement: a dominating set is only accepted once no
//! non-member could replace two members in a single atomic swap. On a star,
//! the leaves form a minimal dominating set, yet the centre buys all of
//! them out two at a time.

use stabsim::algo::{two_ds, Task};
use stabsim::engine::{Scheduler, SchedulerConfig, Sim};
use stabsim::oracle;
use stabsim::state::GlobalState;
use stabsim::Graph;

fn main() {
    // Star: centre 1, five leaves.
    let edges: Vec<(u32, u32)> = (2..=6).map(|l| (1, l)).collect();
    let graph = Graph::new(6, &edges).unwrap();
    let leaves_in = GlobalState::from_members(6, &[2, 3, 4, 5, 6]);

    let task = Task::TwoDs(&graph);
    let verdict = oracle::check_optimal(task, &leaves_in);
    println!("leaves-only set {leaves_in}:");
    println!(
        "  minimal dominating set, but improvable: optimal={}, witness={:?}",
        verdict.optimal, verdict.witness
    );

    let snap = stabsim::Snapshot::of_state(&leaves_in);
    println!(
        "  centre swap witness from its own view: {:?}",
        two_ds::two_addable(&graph, &snap, 1)
    );

    let rules = two_ds::rules(&graph);
    let cfg = SchedulerConfig::new(Scheduler::Central, 9);
    let mut sim = Sim::new(&graph, &rules, leaves_in, cfg).unwrap();
    let mut last = sim.state().clone();
    while !sim.is_silent_now() {
        sim.step();
        if sim.state() != &last {
            last = sim.state().clone();
            println!("  -> {last}");
        }
    }
    println!(
        "settled on members {:?} in {} moves (bound 3n = {}); optimal={}",
        sim.state().members_in(),
        sim.moves(),
        3 * graph.n(),
        oracle::check_optimal(task, sim.state()).optimal
    );
}
