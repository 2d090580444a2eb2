//! Per-node local states, global configurations, and read snapshots.
//!
//! Set-membership algorithms (dominating set, vertex cover, independent set)
//! keep an `IN`/`OUT` flag per node; the colouring algorithm keeps a positive
//! integer colour. A [`GlobalState`] holds one local state per node, indexed
//! by 1-based node id. A [`Snapshot`] is what a node actually *sees* when it
//! evaluates its guards: possibly stale local states of the nodes in its read
//! set. Reading a node that is not covered by the snapshot is a bug in the
//! caller's declared read radius and panics.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::graph::NodeId;

/// Membership flag for set-valued problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Membership {
    #[serde(rename = "IN")]
    In,
    #[serde(rename = "OUT")]
    Out,
}

impl Membership {
    pub fn is_in(self) -> bool {
        self == Membership::In
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Membership::In => write!(f, "IN"),
            Membership::Out => write!(f, "OUT"),
        }
    }
}

/// The state one node publishes: a membership flag or a colour (>= 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LocalState {
    Member(Membership),
    Colour(u32),
}

impl LocalState {
    pub fn member(self) -> Membership {
        match self {
            LocalState::Member(m) => m,
            LocalState::Colour(_) => panic!("expected a membership state, found a colour"),
        }
    }

    pub fn colour(self) -> u32 {
        match self {
            LocalState::Colour(c) => c,
            LocalState::Member(_) => panic!("expected a colour state, found a membership flag"),
        }
    }

    pub fn kind(self) -> StateKind {
        match self {
            LocalState::Member(_) => StateKind::Member,
            LocalState::Colour(_) => StateKind::Colour,
        }
    }
}

/// Which local-state variant a problem uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Member,
    Colour,
}

/// One local state per node, indexed by 1-based node id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GlobalState {
    states: Vec<LocalState>,
}

impl GlobalState {
    pub fn new(states: Vec<LocalState>) -> Self {
        GlobalState { states }
    }

    pub fn all_member(n: u32, m: Membership) -> Self {
        GlobalState {
            states: vec![LocalState::Member(m); n as usize],
        }
    }

    /// Builds a membership state with exactly the listed nodes `IN`.
    pub fn from_members(n: u32, members: &[NodeId]) -> Self {
        let mut s = Self::all_member(n, Membership::Out);
        for &i in members {
            s.set(i, LocalState::Member(Membership::In));
        }
        s
    }

    pub fn all_colour(n: u32, c: u32) -> Self {
        assert!(c >= 1, "colours start at 1");
        GlobalState {
            states: vec![LocalState::Colour(c); n as usize],
        }
    }

    pub fn from_colours(colours: &[u32]) -> Self {
        assert!(colours.iter().all(|&c| c >= 1), "colours start at 1");
        GlobalState {
            states: colours.iter().map(|&c| LocalState::Colour(c)).collect(),
        }
    }

    pub fn len(&self) -> u32 {
        self.states.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn local(&self, i: NodeId) -> LocalState {
        self.states[(i - 1) as usize]
    }

    pub fn member(&self, i: NodeId) -> Membership {
        self.local(i).member()
    }

    pub fn colour(&self, i: NodeId) -> u32 {
        self.local(i).colour()
    }

    pub fn set(&mut self, i: NodeId, s: LocalState) {
        self.states[(i - 1) as usize] = s;
    }

    pub fn kind(&self) -> StateKind {
        self.states
            .first()
            .map(|s| s.kind())
            .unwrap_or(StateKind::Member)
    }

    /// Node ids currently `IN`, ascending.
    pub fn members_in(&self) -> Vec<NodeId> {
        self.states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.member().is_in())
            .map(|(idx, _)| idx as NodeId + 1)
            .collect()
    }

    pub fn count_in(&self) -> usize {
        self.states.iter().filter(|s| s.member().is_in()).count()
    }

    /// SHA-256 over a canonical byte encoding, as a hex string.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for s in &self.states {
            match s {
                LocalState::Member(Membership::In) => h.update([1u8]),
                LocalState::Member(Membership::Out) => h.update([0u8]),
                LocalState::Colour(c) => {
                    h.update([2u8]);
                    h.update(c.to_le_bytes());
                }
            }
        }
        let out = h.finalize();
        let mut hex = String::with_capacity(64);
        for b in out {
            hex.push_str(&format!("{b:02x}"));
        }
        hex
    }
}

impl fmt::Display for GlobalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, s) in self.states.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            match s {
                LocalState::Member(m) => write!(f, "{m}")?,
                LocalState::Colour(c) => write!(f, "{c}")?,
            }
        }
        write!(f, ")")
    }
}

static SNAPSHOT_EPOCH: AtomicU64 = AtomicU64::new(1);

/// A node's view of the system: local states for the nodes in its read set.
///
/// Coverage is tracked per epoch so a snapshot buffer can be reused across
/// activations without clearing. Each `begin` (and each `of_state`) takes a
/// fresh process-wide epoch, so an epoch uniquely identifies one logical
/// snapshot; guard memoisation keys off it.
#[derive(Debug)]
pub struct Snapshot {
    vals: Vec<LocalState>,
    covered: Vec<u64>,
    epoch: u64,
}

impl Snapshot {
    pub fn new(n: u32) -> Self {
        Snapshot {
            vals: vec![LocalState::Member(Membership::Out); n as usize],
            covered: vec![0; n as usize],
            epoch: 0,
        }
    }

    /// Starts a new (empty) view in this buffer.
    pub fn begin(&mut self) {
        self.epoch = SNAPSHOT_EPOCH.fetch_add(1, Ordering::Relaxed);
    }

    /// A fully covered snapshot of an exact global state (fresh reads).
    pub fn of_state(state: &GlobalState) -> Self {
        let mut s = Snapshot::new(state.len());
        s.begin();
        for i in 1..=state.len() {
            s.put(i, state.local(i));
        }
        s
    }

    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    pub fn put(&mut self, i: NodeId, s: LocalState) {
        let idx = (i - 1) as usize;
        self.vals[idx] = s;
        self.covered[idx] = self.epoch;
    }

    pub fn covers(&self, i: NodeId) -> bool {
        self.covered[(i - 1) as usize] == self.epoch
    }

    pub fn local(&self, i: NodeId) -> LocalState {
        let idx = (i - 1) as usize;
        assert!(
            self.covered[idx] == self.epoch,
            "guard read node {i} outside its declared read radius"
        );
        self.vals[idx]
    }

    pub fn member(&self, i: NodeId) -> Membership {
        self.local(i).member()
    }

    pub fn is_in(&self, i: NodeId) -> bool {
        self.member(i).is_in()
    }

    pub fn colour(&self, i: NodeId) -> u32 {
        self.local(i).colour()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_distinguishes_states() {
        let a = GlobalState::from_members(3, &[1]);
        let b = GlobalState::from_members(3, &[2]);
        assert_ne!(a.digest(), b.digest());
        assert_eq!(a.digest(), GlobalState::from_members(3, &[1]).digest());
    }

    #[test]
    fn display_matches_tuple_convention() {
        let s = GlobalState::from_members(4, &[1, 3]);
        assert_eq!(s.to_string(), "(IN,OUT,IN,OUT)");
    }

    #[test]
    #[should_panic(expected = "outside its declared read radius")]
    fn snapshot_flags_out_of_radius_reads() {
        let mut snap = Snapshot::new(3);
        snap.begin();
        snap.put(1, LocalState::Member(Membership::In));
        let _ = snap.member(2);
    }

    #[test]
    fn snapshot_reuse_invalidates_old_coverage() {
        let mut snap = Snapshot::new(2);
        snap.begin();
        snap.put(1, LocalState::Member(Membership::In));
        assert!(snap.covers(1));
        snap.begin();
        assert!(!snap.covers(1));
    }
}
