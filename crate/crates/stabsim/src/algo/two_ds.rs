//! 2-dominating set: a minimal dominating set that additionally admits no
//! two-for-one improvement (remove two members, add one non-member, keep
//! everything dominated).
//!
//! An undominated node enters (repair). The refine rule covers two cases for
//! the highest-id unsatisfied node within distance 4: a removable member
//! leaves; a non-member that can replace two members within distance 2
//! performs the swap atomically (both members out, itself in). The
//! distance-4 priority gate is what keeps concurrent swaps write-disjoint.
//!
//! Guard evaluation walks up to eight hops (unsatisfied neighbours at
//! distance 4, each probing its own distance-4 zone), so the rule set keeps
//! per-node distance-2/4 tables and a per-snapshot memo of guard values.

use std::cell::RefCell;

use super::{Firing, Problem, ReadRadius, RuleKind, Rules};
use crate::graph::{Graph, NodeId};
use crate::state::{LocalState, Membership, Snapshot};

/// Out of the set with every neighbour out: undominated.
pub fn addable(g: &Graph, snap: &Snapshot, i: NodeId) -> bool {
    !snap.is_in(i) && g.adj(i).iter().all(|&j| !snap.is_in(j))
}

/// In the set, and the set minus `i` still dominates `i`'s closed
/// neighbourhood.
pub fn removable(g: &Graph, snap: &Snapshot, i: NodeId) -> bool {
    if !snap.is_in(i) {
        return false;
    }
    let covered =
        |j: NodeId| (j != i && snap.is_in(j)) || g.adj(j).iter().any(|&k| k != i && snap.is_in(k));
    covered(i) && g.adj(i).iter().all(|&j| covered(j))
}

/// `q` keeps a dominator once `j`, `k` leave and `i` enters.
fn dominated_after_swap(
    g: &Graph,
    snap: &Snapshot,
    i: NodeId,
    j: NodeId,
    k: NodeId,
    q: NodeId,
) -> bool {
    let stays_in = |r: NodeId| r == i || (snap.is_in(r) && r != j && r != k);
    stays_in(q) || g.adj(q).iter().any(|&r| stays_in(r))
}

fn two_addable_core(
    g: &Graph,
    snap: &Snapshot,
    i: NodeId,
    hop2: &[NodeId],
    mut is_addable: impl FnMut(NodeId) -> bool,
    mut is_removable: impl FnMut(NodeId) -> bool,
) -> Option<(NodeId, NodeId)> {
    if snap.is_in(i) {
        return None;
    }
    // The swap only applies where no plain add/remove is pending nearby.
    if is_addable(i) || is_removable(i) {
        return None;
    }
    for &x in hop2 {
        if is_addable(x) || is_removable(x) {
            return None;
        }
    }
    let members: Vec<NodeId> = hop2.iter().copied().filter(|&x| snap.is_in(x)).collect();
    for (a, &j) in members.iter().enumerate() {
        for &k in &members[a + 1..] {
            let safe = std::iter::once(j)
                .chain(std::iter::once(k))
                .chain(g.adj(j).iter().copied())
                .chain(g.adj(k).iter().copied())
                .all(|q| dominated_after_swap(g, snap, i, j, k, q));
            if safe {
                return Some((j, k));
            }
        }
    }
    None
}

/// Out of the set and able to replace two distance-2 members while keeping
/// them, their neighbours, and itself dominated. Returns the lowest witness
/// pair `(j, k)` by id.
pub fn two_addable(g: &Graph, snap: &Snapshot, i: NodeId) -> Option<(NodeId, NodeId)> {
    two_addable_core(
        g,
        snap,
        i,
        &g.k_neighborhood(i, 2),
        |x| addable(g, snap, x),
        |x| removable(g, snap, x),
    )
}

/// Removable or able to perform a two-for-one swap.
pub fn unsatisfied(g: &Graph, snap: &Snapshot, i: NodeId) -> bool {
    removable(g, snap, i) || two_addable(g, snap, i).is_some()
}

/// Unsatisfied and of highest id among unsatisfied nodes within distance 4.
pub fn pivotal(g: &Graph, snap: &Snapshot, i: NodeId) -> bool {
    unsatisfied(g, snap, i)
        && g.k_neighborhood(i, 4)
            .iter()
            .all(|&j| i > j || !unsatisfied(g, snap, j))
}

struct Memo {
    epoch: u64,
    addable: Vec<i8>,
    removable: Vec<i8>,
    unsat: Vec<i8>,
}

pub struct TdsRules<'a> {
    graph: &'a Graph,
    hop2: Vec<Vec<NodeId>>,
    /// Ascending, so the priority scan can stop at the first id below `i`.
    hop4: Vec<Vec<NodeId>>,
    memo: RefCell<Memo>,
}

pub fn rules(graph: &Graph) -> TdsRules<'_> {
    let n = graph.n() as usize;
    TdsRules {
        hop2: graph.ids().map(|i| graph.k_neighborhood(i, 2)).collect(),
        hop4: graph.ids().map(|i| graph.k_neighborhood(i, 4)).collect(),
        memo: RefCell::new(Memo {
            epoch: 0,
            addable: vec![-1; n],
            removable: vec![-1; n],
            unsat: vec![-1; n],
        }),
        graph,
    }
}

impl TdsRules<'_> {
    fn sync_epoch(&self, snap: &Snapshot) {
        let mut m = self.memo.borrow_mut();
        if m.epoch != snap.epoch() {
            m.epoch = snap.epoch();
            m.addable.fill(-1);
            m.removable.fill(-1);
            m.unsat.fill(-1);
        }
    }

    fn m_addable(&self, snap: &Snapshot, x: NodeId) -> bool {
        let idx = (x - 1) as usize;
        match self.memo.borrow().addable[idx] {
            0 => return false,
            1 => return true,
            _ => {}
        }
        let v = addable(self.graph, snap, x);
        self.memo.borrow_mut().addable[idx] = v as i8;
        v
    }

    fn m_removable(&self, snap: &Snapshot, x: NodeId) -> bool {
        let idx = (x - 1) as usize;
        match self.memo.borrow().removable[idx] {
            0 => return false,
            1 => return true,
            _ => {}
        }
        let v = removable(self.graph, snap, x);
        self.memo.borrow_mut().removable[idx] = v as i8;
        v
    }

    fn m_two_addable(&self, snap: &Snapshot, x: NodeId) -> Option<(NodeId, NodeId)> {
        two_addable_core(
            self.graph,
            snap,
            x,
            &self.hop2[(x - 1) as usize],
            |y| self.m_addable(snap, y),
            |y| self.m_removable(snap, y),
        )
    }

    fn m_unsat(&self, snap: &Snapshot, x: NodeId) -> bool {
        let idx = (x - 1) as usize;
        match self.memo.borrow().unsat[idx] {
            0 => return false,
            1 => return true,
            _ => {}
        }
        let v = self.m_removable(snap, x) || self.m_two_addable(snap, x).is_some();
        self.memo.borrow_mut().unsat[idx] = v as i8;
        v
    }

    fn m_pivotal(&self, snap: &Snapshot, i: NodeId) -> bool {
        if !self.m_unsat(snap, i) {
            return false;
        }
        for &j in self.hop4[(i - 1) as usize].iter().rev() {
            if j < i {
                break;
            }
            if self.m_unsat(snap, j) {
                return false;
            }
        }
        true
    }
}

impl Rules for TdsRules<'_> {
    fn problem(&self) -> Problem {
        Problem::TwoDs
    }

    fn read_radius(&self) -> ReadRadius {
        ReadRadius::Hops(8)
    }

    fn enabled(&self, snap: &Snapshot, i: NodeId) -> Option<Firing> {
        self.sync_epoch(snap);
        let repair = self.m_addable(snap, i);
        let refine = self.m_pivotal(snap, i);
        assert!(!(repair && refine), "both rules enabled at node {i}");
        if repair {
            return Some(Firing::single(
                RuleKind::Repair,
                i,
                LocalState::Member(Membership::In),
            ));
        }
        if !refine {
            return None;
        }
        if snap.is_in(i) {
            Some(Firing::single(
                RuleKind::Refine,
                i,
                LocalState::Member(Membership::Out),
            ))
        } else {
            let (j, k) = self
                .m_two_addable(snap, i)
                .expect("pivotal non-member implies a swap witness");
            Some(Firing {
                rule: RuleKind::Refine,
                writes: vec![
                    (j, LocalState::Member(Membership::Out)),
                    (k, LocalState::Member(Membership::Out)),
                    (i, LocalState::Member(Membership::In)),
                ],
            })
        }
    }
}
