//! Descent-structure checks over whole state spaces.
//!
//! Feasible states are partitioned by reachability under single refine
//! moves. In each component there should be exactly one terminal state (the
//! supremum) and it should be optimal; from every feasible non-optimal state
//! some node must be ready to refine, and that readiness must survive other
//! nodes' refine moves. Violations are reported, not panicked on, so callers
//! can print counterexamples.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{check_feasible, check_optimal, colour_cap, colour_states, member_states, OracleError};
use crate::algo::{RuleKind, Rules, Task};
use crate::graph::NodeId;
use crate::state::{GlobalState, Snapshot, StateKind};

/// Nodes whose refine rule is enabled on the exact state.
pub fn pivotal_set(rules: &dyn Rules, state: &GlobalState) -> Vec<NodeId> {
    let snap = Snapshot::of_state(state);
    (1..=state.len())
        .filter(|&i| matches!(rules.enabled(&snap, i), Some(f) if f.rule == RuleKind::Refine))
        .collect()
}

/// Applies node `i`'s enabled refine action to an exact state.
pub fn fire_refine(rules: &dyn Rules, state: &GlobalState, i: NodeId) -> GlobalState {
    let snap = Snapshot::of_state(state);
    let firing = rules
        .enabled(&snap, i)
        .expect("fire_refine called on a disabled node");
    assert_eq!(
        firing.rule,
        RuleKind::Refine,
        "node {i} would repair, not refine"
    );
    let mut next = state.clone();
    for (j, s) in firing.writes {
        next.set(j, s);
    }
    next
}

#[derive(Debug, Clone)]
pub struct Component {
    /// Indices into `LatticeDecomposition::feasible`, ascending.
    pub members: Vec<usize>,
    /// Terminal (refine-silent) states in this component.
    pub optima: Vec<usize>,
    /// The unique terminal state, when there is exactly one.
    pub supremum: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct LatticeDecomposition {
    pub feasible: Vec<GlobalState>,
    pub infeasible: Vec<GlobalState>,
    /// One entry per refine move: (from, to, moved node).
    pub transitions: Vec<(usize, usize, NodeId)>,
    pub components: Vec<Component>,
}

impl LatticeDecomposition {
    /// Component sizes, descending.
    pub fn component_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.components.iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    pub fn suprema(&self) -> Vec<&GlobalState> {
        self.components
            .iter()
            .filter_map(|c| c.supremum.map(|idx| &self.feasible[idx]))
            .collect()
    }

    /// GraphViz rendering: feasible states as boxes (suprema doubled),
    /// refine moves as labelled edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph descent {\n  rankdir=BT;\n  node [shape=box];\n");
        let suprema: Vec<usize> = self.components.iter().filter_map(|c| c.supremum).collect();
        for (idx, s) in self.feasible.iter().enumerate() {
            let extra = if suprema.contains(&idx) {
                ", peripheries=2"
            } else {
                ""
            };
            let _ = writeln!(out, "  s{idx} [label=\"{s}\"{extra}];");
        }
        for &(from, to, node) in &self.transitions {
            let _ = writeln!(out, "  s{from} -> s{to} [label=\"{node}\"];");
        }
        out.push_str("}\n");
        out
    }
}

fn all_states(task: Task<'_>) -> Result<Vec<GlobalState>, OracleError> {
    let n = task.graph().n();
    match task.problem().state_kind() {
        StateKind::Member => Ok(member_states(n)?.collect()),
        StateKind::Colour => Ok(colour_states(n, colour_cap(n))?.collect()),
    }
}

/// Splits the state space into feasible/infeasible and partitions the
/// feasible part into refine-reachability components.
pub fn enumerate_lattices(task: Task<'_>) -> Result<LatticeDecomposition, OracleError> {
    let rules = task.rules();
    let mut feasible = Vec::new();
    let mut infeasible = Vec::new();
    for s in all_states(task)? {
        if check_feasible(task, &s) {
            feasible.push(s);
        } else {
            infeasible.push(s);
        }
    }
    let index: HashMap<&GlobalState, usize> =
        feasible.iter().enumerate().map(|(i, s)| (s, i)).collect();

    let mut parent: Vec<usize> = (0..feasible.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    let mut transitions = Vec::new();
    let mut terminal = vec![true; feasible.len()];
    for idx in 0..feasible.len() {
        for p in pivotal_set(&*rules, &feasible[idx]) {
            let next = fire_refine(&*rules, &feasible[idx], p);
            let to = *index.get(&next).expect("refine moves preserve feasibility");
            transitions.push((idx, to, p));
            terminal[idx] = false;
            let (a, b) = (root(&mut parent, idx), root(&mut parent, to));
            if a != b {
                parent[a] = b;
            }
        }
    }

    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for idx in 0..feasible.len() {
        let r = root(&mut parent, idx);
        groups.entry(r).or_default().push(idx);
    }
    let mut components: Vec<Component> = groups
        .into_values()
        .map(|mut members| {
            members.sort_unstable();
            let optima: Vec<usize> = members.iter().copied().filter(|&i| terminal[i]).collect();
            let supremum = (optima.len() == 1).then(|| optima[0]);
            Component {
                members,
                optima,
                supremum,
            }
        })
        .collect();
    components.sort_by_key(|c| c.members[0]);

    Ok(LatticeDecomposition {
        feasible,
        infeasible,
        transitions,
        components,
    })
}

#[derive(Debug, Clone)]
pub enum ViolationKind {
    /// Feasible, not optimal, yet no node may refine.
    NoPivot,
    /// A refine-enabled node lost its enabledness when another one moved.
    PivotLost { pivot: NodeId, moved: NodeId },
    /// A maximal refine path ended in a non-optimal state.
    StuckPath { terminal: GlobalState },
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub state: GlobalState,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone)]
pub struct LinearityReport {
    pub feasible: usize,
    pub optimal: usize,
    pub violations: Vec<Violation>,
}

impl LinearityReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, over every feasible state: a non-optimal state has a
/// refine-enabled node; enabled nodes stay enabled while others move; and
/// every maximal refine path terminates optimal.
pub fn check_lattice_linearity(task: Task<'_>) -> Result<LinearityReport, OracleError> {
    let rules = task.rules();
    let states = all_states(task)?;
    let mut report = LinearityReport {
        feasible: 0,
        optimal: 0,
        violations: Vec::new(),
    };
    // Memo over "every maximal path from here ends optimal".
    let mut descends_ok: HashMap<GlobalState, bool> = HashMap::new();

    for s in states {
        if !check_feasible(task, &s) {
            continue;
        }
        report.feasible += 1;
        let verdict = check_optimal(task, &s);
        if verdict.optimal {
            report.optimal += 1;
        }
        let pivots = pivotal_set(&*rules, &s);
        if !verdict.optimal && pivots.is_empty() {
            report.violations.push(Violation {
                state: s.clone(),
                kind: ViolationKind::NoPivot,
            });
        }
        for &i in &pivots {
            for &j in &pivots {
                if i == j {
                    continue;
                }
                let after = fire_refine(&*rules, &s, j);
                let snap = Snapshot::of_state(&after);
                let still =
                    matches!(rules.enabled(&snap, i), Some(f) if f.rule == RuleKind::Refine);
                if !still {
                    report.violations.push(Violation {
                        state: s.clone(),
                        kind: ViolationKind::PivotLost { pivot: i, moved: j },
                    });
                }
            }
        }
        if let Some(term) = first_stuck_terminal(task, &*rules, &s, &mut descends_ok) {
            report.violations.push(Violation {
                state: s,
                kind: ViolationKind::StuckPath { terminal: term },
            });
        }
    }
    Ok(report)
}

/// Depth-first search over refine moves; returns a non-optimal terminal
/// reachable from `s`, if any.
fn first_stuck_terminal(
    task: Task<'_>,
    rules: &dyn Rules,
    s: &GlobalState,
    memo: &mut HashMap<GlobalState, bool>,
) -> Option<GlobalState> {
    if let Some(&ok) = memo.get(s) {
        return if ok {
            None
        } else {
            Some(stuck_witness(task, rules, s))
        };
    }
    let pivots = pivotal_set(rules, s);
    let result = if pivots.is_empty() {
        if check_optimal(task, s).optimal {
            None
        } else {
            Some(s.clone())
        }
    } else {
        pivots
            .iter()
            .find_map(|&p| first_stuck_terminal(task, rules, &fire_refine(rules, s, p), memo))
    };
    memo.insert(s.clone(), result.is_none());
    result
}

fn stuck_witness(task: Task<'_>, rules: &dyn Rules, s: &GlobalState) -> GlobalState {
    // Re-walk a failing path; only invoked on states already known bad.
    let pivots = pivotal_set(rules, s);
    if pivots.is_empty() {
        return s.clone();
    }
    for p in pivots {
        let next = fire_refine(rules, s, p);
        let ok = check_lattice_descends(task, rules, &next);
        if !ok {
            return stuck_witness(task, rules, &next);
        }
    }
    s.clone()
}

fn check_lattice_descends(task: Task<'_>, rules: &dyn Rules, s: &GlobalState) -> bool {
    let mut memo = HashMap::new();
    first_stuck_terminal(task, rules, s, &mut memo).is_none()
}
