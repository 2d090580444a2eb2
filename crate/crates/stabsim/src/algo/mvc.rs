//! Minimal vertex cover.
//!
//! An uncovered endpoint enters the cover (repair: out of the cover with an
//! out-of-cover neighbour). A covered node whose whole neighbourhood is also
//! covered may leave, but only the highest-id such node in its
//! neighbourhood does (refine).

use super::{Firing, Problem, ReadRadius, RuleKind, Rules};
use crate::graph::{Graph, NodeId};
use crate::state::{LocalState, Membership, Snapshot};

/// Every neighbour is in the cover (own state not consulted).
pub fn removable(g: &Graph, snap: &Snapshot, i: NodeId) -> bool {
    g.adj(i).iter().all(|&j| snap.is_in(j))
}

/// Out of the cover next to an uncovered node.
pub fn addable(g: &Graph, snap: &Snapshot, i: NodeId) -> bool {
    !snap.is_in(i) && g.adj(i).iter().any(|&j| !snap.is_in(j))
}

/// In the cover, removable, and of highest id among removable neighbours.
pub fn pivotal(g: &Graph, snap: &Snapshot, i: NodeId) -> bool {
    snap.is_in(i)
        && removable(g, snap, i)
        && g.adj(i).iter().all(|&j| j < i || !removable(g, snap, j))
}

pub struct MvcRules<'a> {
    graph: &'a Graph,
}

pub fn rules(graph: &Graph) -> MvcRules<'_> {
    MvcRules { graph }
}

impl Rules for MvcRules<'_> {
    fn problem(&self) -> Problem {
        Problem::Mvc
    }

    fn read_radius(&self) -> ReadRadius {
        ReadRadius::Hops(2)
    }

    fn enabled(&self, snap: &Snapshot, i: NodeId) -> Option<Firing> {
        let add = addable(self.graph, snap, i);
        let refine = pivotal(self.graph, snap, i);
        assert!(!(add && refine), "both rules enabled at node {i}");
        if add {
            Some(Firing::single(
                RuleKind::Repair,
                i,
                LocalState::Member(Membership::In),
            ))
        } else if refine {
            Some(Firing::single(
                RuleKind::Refine,
                i,
                LocalState::Member(Membership::Out),
            ))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::GlobalState;

    fn snap(n: u32, members: &[NodeId]) -> Snapshot {
        Snapshot::of_state(&GlobalState::from_members(n, members))
    }

    #[test]
    fn k2_both_in_only_higher_leaves() {
        let g = Graph::new(2, &[(1, 2)]).unwrap();
        let s = snap(2, &[1, 2]);
        assert!(removable(&g, &s, 1) && removable(&g, &s, 2));
        assert!(!pivotal(&g, &s, 1));
        assert!(pivotal(&g, &s, 2));
    }

    #[test]
    fn isolated_in_node_is_vacuously_pivotal() {
        let g = Graph::new(1, &[]).unwrap();
        let s = snap(1, &[1]);
        assert!(removable(&g, &s, 1));
        assert!(pivotal(&g, &s, 1));
    }

    #[test]
    fn k2_both_out_both_addable() {
        let g = Graph::new(2, &[(1, 2)]).unwrap();
        let s = snap(2, &[]);
        assert!(addable(&g, &s, 1) && addable(&g, &s, 2));
    }

    #[test]
    fn rules_guard_actions() {
        let g = Graph::new(2, &[(1, 2)]).unwrap();
        let r = rules(&g);
        let f = r.enabled(&snap(2, &[]), 1).unwrap();
        assert_eq!(
            (f.rule, f.writes[0]),
            (RuleKind::Repair, (1, LocalState::Member(Membership::In)))
        );
        let f = r.enabled(&snap(2, &[1, 2]), 2).unwrap();
        assert_eq!(
            (f.rule, f.writes[0]),
            (RuleKind::Refine, (2, LocalState::Member(Membership::Out)))
        );
        // Covered pair (IN, OUT) is silent.
        assert!(r.enabled(&snap(2, &[1]), 1).is_none());
        assert!(r.enabled(&snap(2, &[1]), 2).is_none());
    }
}
