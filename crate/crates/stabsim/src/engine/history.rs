//! Per-node publication histories and monotonic read cursors.
//!
//! Every write a node performs appends a new version to its history; version
//! 0 is the initial state. A reader holds one cursor per subject in its read
//! set. A read returns a version between `max(cursor, latest - B)` and
//! `latest` (chosen by the seeded generator) and advances the cursor to it,
//! so successive reads of the same subject never go backwards and never lag
//! more than `B` versions behind.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::graph::NodeId;
use crate::state::{GlobalState, LocalState, Snapshot};

pub type Version = u32;

/// Append-only per-node state logs.
#[derive(Debug, Clone)]
pub struct History {
    logs: Vec<Vec<LocalState>>,
}

impl History {
    pub fn init(state: &GlobalState) -> Self {
        History {
            logs: (1..=state.len()).map(|i| vec![state.local(i)]).collect(),
        }
    }

    pub fn latest_version(&self, j: NodeId) -> Version {
        (self.logs[(j - 1) as usize].len() - 1) as Version
    }

    pub fn at(&self, j: NodeId, v: Version) -> LocalState {
        self.logs[(j - 1) as usize][v as usize]
    }

    pub fn latest(&self, j: NodeId) -> LocalState {
        *self.logs[(j - 1) as usize].last().expect("never empty")
    }

    pub fn push(&mut self, j: NodeId, s: LocalState) {
        self.logs[(j - 1) as usize].push(s);
    }

    /// Total number of writes across all nodes (excluding initial versions).
    pub fn write_count(&self) -> u64 {
        self.logs.iter().map(|l| l.len() as u64 - 1).sum()
    }
}

/// Monotonic read cursors, one per (reader, subject) pair with the subject
/// in the reader's read set.
#[derive(Debug, Clone)]
pub struct ViewTable {
    read_sets: Vec<Vec<NodeId>>,
    cursors: Vec<Vec<Version>>,
}

impl ViewTable {
    /// `read_sets[i-1]` must be sorted ascending and exclude `i` itself.
    pub fn new(read_sets: Vec<Vec<NodeId>>) -> Self {
        let cursors = read_sets.iter().map(|s| vec![0; s.len()]).collect();
        ViewTable { read_sets, cursors }
    }

    pub fn read_set(&self, i: NodeId) -> &[NodeId] {
        &self.read_sets[(i - 1) as usize]
    }

    pub fn cursor(&self, i: NodeId, j: NodeId) -> Version {
        let idx = self.read_sets[(i - 1) as usize]
            .binary_search(&j)
            .expect("subject not in reader's read set");
        self.cursors[(i - 1) as usize][idx]
    }

    /// True when every cursor equals its subject's latest version.
    pub fn all_caught_up(&self, hist: &History) -> bool {
        self.read_sets.iter().zip(&self.cursors).all(|(set, cur)| {
            set.iter()
                .zip(cur)
                .all(|(&j, &v)| v == hist.latest_version(j))
        })
    }
}

/// Builds node `i`'s view: a possibly stale read of every subject in its
/// read set plus a fresh read of its own state. Returns reads as
/// `(subject, version)` in read order when requested.
#[allow(clippy::too_many_arguments)]
pub fn snapshot_for(
    hist: &History,
    views: &mut ViewTable,
    state: &GlobalState,
    i: NodeId,
    staleness: u32,
    rng: &mut ChaCha8Rng,
    snap: &mut Snapshot,
    mut record: Option<&mut Vec<(NodeId, Version)>>,
) {
    snap.begin();
    snap.put(i, state.local(i));
    if let Some(rec) = record.as_deref_mut() {
        rec.push((i, hist.latest_version(i)));
    }
    let set = &views.read_sets[(i - 1) as usize];
    let cursors = &mut views.cursors[(i - 1) as usize];
    for (idx, &j) in set.iter().enumerate() {
        let latest = hist.latest_version(j);
        let lo = cursors[idx].max(latest.saturating_sub(staleness));
        let v = if lo == latest {
            latest
        } else {
            rng.gen_range(lo..=latest)
        };
        cursors[idx] = v;
        snap.put(j, hist.at(j, v));
        if let Some(rec) = record.as_deref_mut() {
            rec.push((j, v));
        }
    }
}
