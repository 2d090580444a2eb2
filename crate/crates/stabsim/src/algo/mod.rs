//! The five guarded-command rule sets.
//!
//! Every algorithm is two rules evaluated in order on a node's snapshot of
//! its read set:
//!
//! 1. a **repair** rule that drives the system into the problem's feasible
//!    region (it is disabled in every feasible state), and
//! 2. a **refine** rule that fires only for the locally highest-priority
//!    candidate and walks the feasible region to an optimal state.
//!
//! Guards are pure predicates over `(input, snapshot, node)`; actions write
//! one node's state, except the two-for-one swap of the 2-dominating-set
//! algorithm which atomically writes three. Ties are broken by node id:
//! ids only ever participate in order comparisons.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::graph::{Graph, NodeId};
use crate::instance::SdmdsInstance;
use crate::state::{LocalState, Snapshot, StateKind};

pub mod gc;
pub mod mis;
pub mod mvc;
pub mod sdmds;
pub mod two_ds;

/// Problem tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Sdmds,
    Mvc,
    Mis,
    Gc,
    #[serde(rename = "2ds")]
    TwoDs,
}

impl Problem {
    pub fn state_kind(self) -> StateKind {
        match self {
            Problem::Gc => StateKind::Colour,
            _ => StateKind::Member,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Problem::Sdmds => "sdmds",
            Problem::Mvc => "mvc",
            Problem::Mis => "mis",
            Problem::Gc => "gc",
            Problem::TwoDs => "2ds",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A problem together with its input.
#[derive(Debug, Clone, Copy)]
pub enum Task<'a> {
    Sdmds(&'a SdmdsInstance),
    Mvc(&'a Graph),
    Mis(&'a Graph),
    Gc(&'a Graph),
    TwoDs(&'a Graph),
}

impl<'a> Task<'a> {
    pub fn problem(&self) -> Problem {
        match self {
            Task::Sdmds(_) => Problem::Sdmds,
            Task::Mvc(_) => Problem::Mvc,
            Task::Mis(_) => Problem::Mis,
            Task::Gc(_) => Problem::Gc,
            Task::TwoDs(_) => Problem::TwoDs,
        }
    }

    pub fn graph(&self) -> &'a Graph {
        match self {
            Task::Sdmds(inst) => inst.graph(),
            Task::Mvc(g) | Task::Mis(g) | Task::Gc(g) | Task::TwoDs(g) => g,
        }
    }

    /// Builds the rule set for this task.
    pub fn rules(&self) -> Box<dyn Rules + 'a> {
        match self {
            Task::Sdmds(inst) => Box::new(sdmds::rules(inst)),
            Task::Mvc(g) => Box::new(mvc::rules(g)),
            Task::Mis(g) => Box::new(mis::rules(g)),
            Task::Gc(g) => Box::new(gc::rules(g)),
            Task::TwoDs(g) => Box::new(two_ds::rules(g)),
        }
    }
}

/// How far a node's guards can read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReadRadius {
    Hops(u32),
    WholeGraph,
}

/// Which of the two rules fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    /// First rule: restores feasibility.
    Repair,
    /// Second rule: priority-gated descent towards an optimal state.
    Refine,
}

/// An enabled rule and the writes its action performs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Firing {
    pub rule: RuleKind,
    /// Writes applied atomically within one activation. Only the
    /// 2-dominating-set swap writes more than one node.
    pub writes: Vec<(NodeId, LocalState)>,
}

impl Firing {
    fn single(rule: RuleKind, i: NodeId, s: LocalState) -> Self {
        Firing {
            rule,
            writes: vec![(i, s)],
        }
    }
}

/// A rule set: the two ordered guarded commands of one algorithm.
pub trait Rules {
    fn problem(&self) -> Problem;

    /// Radius the engine must cover when building a node's snapshot.
    fn read_radius(&self) -> ReadRadius;

    /// Evaluates both guards on `i`'s view and returns the firing of the
    /// first enabled rule, if any. Implementations assert that the two
    /// guards are never enabled simultaneously.
    fn enabled(&self, snap: &Snapshot, i: NodeId) -> Option<Firing>;
}
