//! The 4-node demo graph (two disjoint edges) under the token-coverage
//! dominating-set rules: enumerate its whole state space, show which states
//! form descent components, and watch the two pivotal nodes fire from the
//! all-in state.

use stabsim::algo::Task;
use stabsim::instance::SdmdsInstance;
use stabsim::oracle;
use stabsim::state::{GlobalState, Membership};
use stabsim::Graph;

fn main() {
    let graph = Graph::parse_edge_list("4 2\n1 2\n3 4").unwrap();
    let inst = SdmdsInstance::uniform(graph);
    let task = Task::Sdmds(&inst);

    let lat = oracle::enumerate_lattices(task).unwrap();
    println!(
        "state space: {} feasible, {} infeasible, {} descent components",
        lat.feasible.len(),
        lat.infeasible.len(),
        lat.components.len()
    );
    for (idx, comp) in lat.components.iter().enumerate() {
        let supremum = comp
            .supremum
            .map(|s| lat.feasible[s].to_string())
            .unwrap_or_else(|| "<none>".into());
        println!(
            "  component {idx}: {} states, supremum {supremum}",
            comp.members.len()
        );
        for &s in &comp.members {
            println!("    {}", lat.feasible[s]);
        }
    }

    let all_in = GlobalState::all_member(4, Membership::In);
    let rules = task.rules();
    let pivots = oracle::pivotal_set(&*rules, &all_in);
    println!("\nfrom {all_in}, the nodes that must leave: {pivots:?}");
    let mut state = all_in;
    for p in pivots {
        state = oracle::fire_refine(&*rules, &state, p);
        println!("  node {p} leaves -> {state}");
    }
    let verdict = oracle::check_optimal(task, &state);
    println!("final state optimal: {}", verdict.optimal);

    println!("\nGraphViz of the descent structure:\n{}", lat.to_dot());
}
