//! Ground-truth verification.
//!
//! Feasibility and optimality are evaluated directly from the problem
//! statements — set membership and token coverage only, never through the
//! algorithms' guard predicates — so simulation results are checked against
//! an independent route. Exponential-cost scores and whole-state-space
//! checks are guarded by explicit size caps.

use thiserror::Error;

use crate::algo::{Problem, Task};
use crate::engine::Trace;
use crate::graph::{Graph, NodeId};
use crate::state::{GlobalState, Membership};

mod enumerate;
mod lattice;
mod score;

pub use enumerate::{colour_cap, colour_states, member_states, non_isomorphic_graphs};
pub use lattice::{
    check_lattice_linearity, enumerate_lattices, fire_refine, pivotal_set, Component,
    LatticeDecomposition, LinearityReport, Violation, ViolationKind,
};
pub use score::{badness, rank};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for exhaustive search: {what} (limit {limit})")]
    TooLarge { what: String, limit: u64 },
    #[error("state is not feasible, score undefined")]
    Infeasible,
}

/// A node (or swap triple) demonstrating why a state is not optimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Node(NodeId),
    Swap(NodeId, NodeId, NodeId),
}

/// Outcome of an optimality check. `optimal` implies `feasible`; a
/// non-optimal verdict always carries a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub feasible: bool,
    pub optimal: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn good() -> Self {
        Verdict {
            feasible: true,
            optimal: true,
            witness: None,
        }
    }

    fn bad(feasible: bool, w: Witness) -> Self {
        Verdict {
            feasible,
            optimal: false,
            witness: Some(w),
        }
    }
}

/// Evaluates the problem's feasibility predicate on an exact state.
pub fn check_feasible(task: Task<'_>, state: &GlobalState) -> bool {
    feasibility_witness(task, state).is_none()
}

/// The first node violating feasibility, if any.
fn feasibility_witness(task: Task<'_>, state: &GlobalState) -> Option<NodeId> {
    match task {
        Task::Sdmds(inst) => inst.graph().ids().find(|&i| {
            !state.member(i).is_in()
                && inst.demands(i).iter().any(|&d| {
                    !inst
                        .graph()
                        .adj(i)
                        .iter()
                        .any(|&j| inst.serves(j, d) && state.member(j).is_in())
                })
        }),
        Task::Mvc(g) => g
            .edges()
            .iter()
            .find(|&&(u, v)| !state.member(u).is_in() && !state.member(v).is_in())
            .map(|&(u, _)| u),
        Task::Mis(g) => g.ids().find(|&i| {
            state.member(i).is_in() && g.adj(i).iter().any(|&j| state.member(j).is_in())
        }),
        Task::Gc(g) => g
            .ids()
            .find(|&i| g.adj(i).iter().any(|&j| state.colour(j) == state.colour(i))),
        Task::TwoDs(g) => g.ids().find(|&i| {
            !state.member(i).is_in() && !g.adj(i).iter().any(|&j| state.member(j).is_in())
        }),
    }
}

/// Evaluates feasibility plus the problem's optimality clause.
pub fn check_optimal(task: Task<'_>, state: &GlobalState) -> Verdict {
    if let Some(w) = feasibility_witness(task, state) {
        return Verdict::bad(false, Witness::Node(w));
    }
    match task {
        Task::Sdmds(_) | Task::Mvc(_) => {
            // Minimal: no single member can be dropped. Witness scan runs
            // from the highest id, mirroring the algorithms' tie-breaking.
            for i in task.graph().ids().rev() {
                if state.member(i).is_in() && feasible_without(task, state, i) {
                    return Verdict::bad(true, Witness::Node(i));
                }
            }
            Verdict::good()
        }
        Task::Mis(g) => {
            // Maximal: no single non-member can be added.
            for i in g.ids() {
                if !state.member(i).is_in() && !g.adj(i).iter().any(|&j| state.member(j).is_in()) {
                    return Verdict::bad(true, Witness::Node(i));
                }
            }
            Verdict::good()
        }
        Task::Gc(g) => {
            // Every colour below a node's own is used by some neighbour.
            for i in g.ids() {
                let c = state.colour(i);
                for cand in 1..c {
                    if !g.adj(i).iter().any(|&j| state.colour(j) == cand) {
                        return Verdict::bad(true, Witness::Node(i));
                    }
                }
            }
            Verdict::good()
        }
        Task::TwoDs(g) => {
            for i in g.ids() {
                if state.member(i).is_in() && feasible_without(task, state, i) {
                    return Verdict::bad(true, Witness::Node(i));
                }
            }
            // No two-for-one improvement among in-set neighbours.
            for i in g.ids() {
                if state.member(i).is_in() {
                    continue;
                }
                let members: Vec<NodeId> = g
                    .adj(i)
                    .iter()
                    .copied()
                    .filter(|&j| state.member(j).is_in())
                    .collect();
                for (a, &j) in members.iter().enumerate() {
                    for &k in &members[a + 1..] {
                        let mut alt = state.clone();
                        alt.set(i, crate::state::LocalState::Member(Membership::In));
                        alt.set(j, crate::state::LocalState::Member(Membership::Out));
                        alt.set(k, crate::state::LocalState::Member(Membership::Out));
                        if check_feasible(task, &alt) {
                            return Verdict::bad(true, Witness::Swap(i, j, k));
                        }
                    }
                }
            }
            Verdict::good()
        }
    }
}

fn feasible_without(task: Task<'_>, state: &GlobalState, i: NodeId) -> bool {
    let mut alt = state.clone();
    alt.set(i, crate::state::LocalState::Member(Membership::Out));
    check_feasible(task, &alt)
}

/// Move-bound verdict for a converged trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsCheck {
    pub ok: bool,
    pub moves: u64,
    pub move_limit: u64,
    pub moves_after_first_round: u64,
    pub after_round_limit: Option<u64>,
}

/// Checks a converged trace against the per-problem move bounds: total moves
/// and, where applicable, moves after the first completed round.
pub fn check_bounds(problem: Problem, graph: &Graph, trace: &Trace) -> BoundsCheck {
    let n = graph.n() as u64;
    let m = graph.m();
    let (move_limit, after_round_limit) = match problem {
        Problem::Sdmds | Problem::Mvc | Problem::Mis => (2 * n, Some(n)),
        Problem::Gc => (n + 4 * m, None),
        Problem::TwoDs => (3 * n, Some(2 * n)),
    };
    let ok = trace.moves <= move_limit
        && after_round_limit.is_none_or(|lim| trace.moves_after_first_round <= lim);
    BoundsCheck {
        ok,
        moves: trace.moves,
        move_limit,
        moves_after_first_round: trace.moves_after_first_round,
        after_round_limit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::SdmdsInstance;

    fn g4() -> Graph {
        Graph::new(4, &[(1, 2), (3, 4)]).unwrap()
    }

    #[test]
    fn mds_reduction_feasibility_on_g4() {
        let inst = SdmdsInstance::uniform(g4());
        let task = Task::Sdmds(&inst);
        assert!(check_feasible(task, &GlobalState::from_members(4, &[1, 3])));
        // Node 1 undominated: (OUT,OUT,IN,IN).
        assert!(!check_feasible(
            task,
            &GlobalState::from_members(4, &[3, 4])
        ));
        assert!(check_feasible(
            task,
            &GlobalState::from_members(4, &[1, 2, 3, 4])
        ));
    }

    #[test]
    fn mds_reduction_optimality_on_g4() {
        let inst = SdmdsInstance::uniform(g4());
        let task = Task::Sdmds(&inst);
        assert!(check_optimal(task, &GlobalState::from_members(4, &[1, 3])).optimal);
        let v = check_optimal(task, &GlobalState::from_members(4, &[1, 2, 3, 4]));
        assert!(v.feasible && !v.optimal);
        assert!(matches!(v.witness, Some(Witness::Node(i)) if i == 2 || i == 4));
    }

    #[test]
    fn empty_demands_are_always_covered() {
        // Nobody demands anything: every state is feasible, only the empty
        // set is minimal.
        let inst = SdmdsInstance::parse_json(r#"{"n": 3, "edges": [[1,2],[2,3]]}"#).unwrap();
        let task = Task::Sdmds(&inst);
        for members in [vec![], vec![1], vec![1, 2, 3]] {
            let s = GlobalState::from_members(3, &members);
            assert!(check_feasible(task, &s));
            assert_eq!(check_optimal(task, &s).optimal, members.is_empty());
        }
    }

    #[test]
    fn gc_distinct_colours_feasible() {
        let g = Graph::new(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let s = GlobalState::from_colours(&[4, 5, 6]);
        assert!(check_feasible(Task::Gc(&g), &s));
        // But colours above the floor are not optimal.
        let v = check_optimal(Task::Gc(&g), &s);
        assert!(v.feasible && !v.optimal);
        assert!(check_optimal(Task::Gc(&g), &GlobalState::from_colours(&[1, 2, 3])).optimal);
    }

    #[test]
    fn two_ds_star_swap_witness() {
        // All three leaves of a star form a minimal dominating set that a
        // centre swap improves.
        let g = Graph::new(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        let v = check_optimal(Task::TwoDs(&g), &GlobalState::from_members(4, &[2, 3, 4]));
        assert!(v.feasible && !v.optimal);
        assert_eq!(v.witness, Some(Witness::Swap(1, 2, 3)));
        // The centre alone is optimal.
        assert!(check_optimal(Task::TwoDs(&g), &GlobalState::from_members(4, &[1])).optimal);
    }

    #[test]
    fn mvc_and_mis_verdicts() {
        let k2 = Graph::new(2, &[(1, 2)]).unwrap();
        assert!(check_optimal(Task::Mvc(&k2), &GlobalState::from_members(2, &[1])).optimal);
        let v = check_optimal(Task::Mvc(&k2), &GlobalState::from_members(2, &[1, 2]));
        assert!(v.feasible && !v.optimal);
        assert!(check_optimal(Task::Mis(&k2), &GlobalState::from_members(2, &[2])).optimal);
        let v = check_optimal(Task::Mis(&k2), &GlobalState::from_members(2, &[]));
        assert!(v.feasible && !v.optimal);
    }
}
