//! Graph colouring by conflict escape and greedy descent.
//!
//! A node sharing a colour with a neighbour escapes to `colour + id`
//! (repair); ids are distinct, so two clashing neighbours that move together
//! still separate. Once the whole graph is properly coloured, the single
//! highest-id node that can take a smaller free colour drops to the minimum
//! free value below its current colour (refine). The refine guard reads the
//! entire graph: nobody descends while any conflict remains anywhere.
//!
//! Colours are unbounded above; termination comes from the move bound, not
//! from a palette cap.

use super::{Firing, Problem, ReadRadius, RuleKind, Rules};
use crate::graph::{Graph, NodeId};
use crate::state::{LocalState, Snapshot};

/// Shares its colour with some neighbour.
pub fn conflicted(g: &Graph, snap: &Snapshot, i: NodeId) -> bool {
    let c = snap.colour(i);
    g.adj(i).iter().any(|&j| snap.colour(j) == c)
}

/// Some colour below the current one is free of neighbour conflicts.
pub fn subtractable(g: &Graph, snap: &Snapshot, i: NodeId) -> bool {
    let c = snap.colour(i);
    if c == 1 {
        return false;
    }
    // At most deg(i) distinct neighbour colours can block the c-1 candidates.
    if (c - 1) as usize > g.degree(i) {
        return true;
    }
    min_free_below(g, snap, i).is_some()
}

/// The smallest colour in `[1, colour(i) - 1]` unused by `i`'s neighbours.
pub fn min_free_below(g: &Graph, snap: &Snapshot, i: NodeId) -> Option<u32> {
    let c = snap.colour(i);
    let mut taken: Vec<u32> = g
        .adj(i)
        .iter()
        .map(|&j| snap.colour(j))
        .filter(|&cj| cj < c)
        .collect();
    taken.sort_unstable();
    taken.dedup();
    let mut candidate = 1;
    for t in taken {
        if t > candidate {
            break;
        }
        candidate = t + 1;
    }
    (candidate < c).then_some(candidate)
}

/// Properly coloured, subtractable, and the highest-id subtractable node in
/// a graph with no conflicts anywhere.
pub fn pivotal(g: &Graph, snap: &Snapshot, i: NodeId) -> bool {
    if conflicted(g, snap, i) || !subtractable(g, snap, i) {
        return false;
    }
    g.ids()
        .filter(|&j| j != i)
        .all(|j| !conflicted(g, snap, j) && (j < i || !subtractable(g, snap, j)))
}

pub struct GcRules<'a> {
    graph: &'a Graph,
}

pub fn rules(graph: &Graph) -> GcRules<'_> {
    GcRules { graph }
}

impl Rules for GcRules<'_> {
    fn problem(&self) -> Problem {
        Problem::Gc
    }

    fn read_radius(&self) -> ReadRadius {
        ReadRadius::WholeGraph
    }

    fn enabled(&self, snap: &Snapshot, i: NodeId) -> Option<Firing> {
        let clash = conflicted(self.graph, snap, i);
        let refine = pivotal(self.graph, snap, i);
        assert!(!(clash && refine), "both rules enabled at node {i}");
        if clash {
            Some(Firing::single(
                RuleKind::Repair,
                i,
                LocalState::Colour(snap.colour(i) + i),
            ))
        } else if refine {
            let c = min_free_below(self.graph, snap, i).expect("pivotal implies subtractable");
            Some(Firing::single(RuleKind::Refine, i, LocalState::Colour(c)))
        } else {
            None
        }
    }
}
