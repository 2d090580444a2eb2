//! Service-demand minimal dominating set.
//!
//! A node outside the set whose demands are not all covered by in-set
//! neighbours enters unconditionally (repair). A node inside the set leaves
//! only when it is removable *and* every rival that co-serves one of its
//! dependents either has a lower id or is itself not removable (refine), so
//! two co-servers of the same demand can never leave together.
//!
//! Removability means the set minus the node still dominates the node and
//! all of its neighbours: the node's own demands are covered by in-set
//! neighbours, and every demand it offers to an out-of-set neighbour has an
//! alternate in-set server. In-set neighbours cover their own demands and
//! impose nothing.

use super::{Firing, Problem, ReadRadius, RuleKind, Rules};
use crate::graph::NodeId;
use crate::instance::{SdmdsInstance, Token};
use crate::state::{LocalState, Membership, Snapshot};

/// Out of the set with some demand no in-set neighbour serves.
pub fn addable(inst: &SdmdsInstance, snap: &Snapshot, i: NodeId) -> bool {
    if snap.is_in(i) {
        return false;
    }
    inst.demands(i).iter().any(|&d| unserved(inst, snap, i, d))
}

fn unserved(inst: &SdmdsInstance, snap: &Snapshot, i: NodeId, d: Token) -> bool {
    inst.graph()
        .adj(i)
        .iter()
        .all(|&j| !inst.serves(j, d) || !snap.is_in(j))
}

/// The set minus `i` still dominates `i` and all of `i`'s neighbours.
pub fn removable(inst: &SdmdsInstance, snap: &Snapshot, i: NodeId) -> bool {
    let g = inst.graph();
    let own_covered = inst
        .demands(i)
        .iter()
        .all(|&d| g.adj(i).iter().any(|&j| inst.serves(j, d) && snap.is_in(j)));
    if !own_covered {
        return false;
    }
    g.adj(i).iter().all(|&j| {
        if snap.is_in(j) {
            return true;
        }
        inst.demands(j).iter().all(|&d| {
            !inst.serves(i, d)
                || g.adj(j)
                    .iter()
                    .any(|&k| k != i && inst.serves(k, d) && snap.is_in(k))
        })
    })
}

/// In-set neighbours offering some demand of `i`, plus `i` itself when in.
pub fn dominators_of(inst: &SdmdsInstance, snap: &Snapshot, i: NodeId) -> Vec<NodeId> {
    let mut out: Vec<NodeId> = inst
        .graph()
        .adj(i)
        .iter()
        .copied()
        .filter(|&j| snap.is_in(j) && inst.demands(i).iter().any(|&d| inst.serves(j, d)))
        .collect();
    if snap.is_in(i) {
        out.push(i);
        out.sort_unstable();
    }
    out
}

/// Removable, and beats every rival dominator of every dependent on id or
/// removability, so no dependent can lose all of its cover at once.
///
/// A rival for demand `d` of dependent `j` is an in-set neighbour of `j`
/// offering `d`, or `j` itself when in: membership covers a node's own
/// demands with no token condition, exactly as in [`dominators_of`].
/// Counting the self-dominating dependent is what serializes mutual-service
/// cycles (`i` covers `j`'s demand, `j` covers `i`'s) that would otherwise
/// leave together under a synchronous step and oscillate forever.
pub fn pivotal(inst: &SdmdsInstance, snap: &Snapshot, i: NodeId) -> bool {
    if !snap.is_in(i) || !removable(inst, snap, i) {
        return false;
    }
    let g = inst.graph();
    for &j in g.adj(i) {
        for &d in inst.demands(j) {
            if !inst.serves(i, d) {
                continue;
            }
            if snap.is_in(j) && j > i && removable(inst, snap, j) {
                return false;
            }
            for &k in g.adj(j) {
                if k != i && k > i && snap.is_in(k) && inst.serves(k, d) && removable(inst, snap, k)
                {
                    return false;
                }
            }
        }
    }
    true
}

pub struct SdmdsRules<'a> {
    inst: &'a SdmdsInstance,
}

pub fn rules(inst: &SdmdsInstance) -> SdmdsRules<'_> {
    SdmdsRules { inst }
}

impl Rules for SdmdsRules<'_> {
    fn problem(&self) -> Problem {
        Problem::Sdmds
    }

    // Rival removability probes two hops past the rival: i -> j -> k -> k's
    // dependents -> their alternate servers.
    fn read_radius(&self) -> ReadRadius {
        ReadRadius::Hops(4)
    }

    fn enabled(&self, snap: &Snapshot, i: NodeId) -> Option<Firing> {
        let add = addable(self.inst, snap, i);
        let refine = pivotal(self.inst, snap, i);
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
