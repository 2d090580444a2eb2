//! Maximal independent set.
//!
//! A node that is in the set alongside a neighbour leaves (repair). A node
//! whose whole neighbourhood is out may enter, but only the highest-id such
//! candidate in its neighbourhood does (refine).

use super::{Firing, Problem, ReadRadius, RuleKind, Rules};
use crate::graph::{Graph, NodeId};
use crate::state::{LocalState, Membership, Snapshot};

/// Every neighbour is out of the set (own state not consulted).
pub fn addable(g: &Graph, snap: &Snapshot, i: NodeId) -> bool {
    g.adj(i).iter().all(|&j| !snap.is_in(j))
}

/// In the set next to another set member.
pub fn removable(g: &Graph, snap: &Snapshot, i: NodeId) -> bool {
    snap.is_in(i) && g.adj(i).iter().any(|&j| snap.is_in(j))
}

/// Out of the set, addable, and of highest id among addable neighbours.
pub fn pivotal(g: &Graph, snap: &Snapshot, i: NodeId) -> bool {
    !snap.is_in(i) && addable(g, snap, i) && g.adj(i).iter().all(|&j| j < i || !addable(g, snap, j))
}

pub struct MisRules<'a> {
    graph: &'a Graph,
}

pub fn rules(graph: &Graph) -> MisRules<'_> {
    MisRules { graph }
}

impl Rules for MisRules<'_> {
    fn problem(&self) -> Problem {
        Problem::Mis
    }

    fn read_radius(&self) -> ReadRadius {
        ReadRadius::Hops(2)
    }

    fn enabled(&self, snap: &Snapshot, i: NodeId) -> Option<Firing> {
        let repair = removable(self.graph, snap, i);
        let refine = pivotal(self.graph, snap, i);
        assert!(!(repair && refine), "both rules enabled at node {i}");
        if repair {
            Some(Firing::single(
                RuleKind::Repair,
                i,
                LocalState::Member(Membership::Out),
            ))
        } else if refine {
            Some(Firing::single(
                RuleKind::Refine,
                i,
                LocalState::Member(Membership::In),
            ))
        } else {
            None
        }
    }
}
