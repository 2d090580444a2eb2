//! Token-based domination: a node outside the set is covered only if every
//! one of its demand tokens is offered by some in-set neighbour. This
//! example builds a small heterogeneous instance, prints who can cover
//! whom, and runs it to a minimal configuration.

use stabsim::algo::{Problem, Task};
use stabsim::engine::{self, Init, Scheduler, SchedulerConfig};
use stabsim::instance::SdmdsInstance;
use stabsim::oracle;

fn main() {
    // A clinic (node 1) offers surgery+pharmacy, a pharmacy (node 2) only
    // pharmacy; villages 3..5 demand different token mixes.
    let doc = r#"{
        "n": 5,
        "edges": [[1,3],[1,4],[2,4],[2,5],[3,4]],
        "services": {"1": ["surgery","pharmacy"], "2": ["pharmacy"]},
        "demands":  {"3": ["surgery"], "4": ["pharmacy"], "5": ["pharmacy"]}
    }"#;
    let inst = SdmdsInstance::parse_json(doc).unwrap();
    let task = Task::Sdmds(&inst);
    let graph = inst.graph();

    for i in graph.ids() {
        let names = |set: &std::collections::BTreeSet<u32>| {
            set.iter()
                .map(|&t| inst.token_name(t).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        println!(
            "node {i}: offers [{}], demands [{}]",
            names(inst.services(i)),
            names(inst.demands(i))
        );
    }

    let init = engine::initial_state(Problem::Sdmds, graph, &Init::AllIn, 0);
    let rules = task.rules();
    let cfg = SchedulerConfig::new(Scheduler::Central, 2);
    let trace = engine::run(graph, &*rules, init, cfg).unwrap();
    let verdict = oracle::check_optimal(task, &trace.final_state);
    println!(
        "\nfrom everyone-in: {} ({} moves), members {:?}, optimal={}",
        trace.final_state,
        trace.moves,
        trace.final_state.members_in(),
        verdict.optimal
    );

    // Node 5 demands pharmacy; only node 2 can serve it from outside, so 2
    // can never leave while 5 is out.
    println!(
        "coverage distance of the empty set: {}",
        oracle::rank(
            &inst,
            &engine::initial_state(Problem::Sdmds, graph, &Init::AllOut, 0)
        )
        .unwrap()
    );
}
