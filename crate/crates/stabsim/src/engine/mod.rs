//! Executes a rule set over a graph under a chosen scheduler.
//!
//! Asynchrony is modelled entirely through stale reads: every activation's
//! writes land atomically and in sequence, but under the bounded-staleness
//! scheduler a node evaluates its guards on old (monotonically advancing)
//! versions of its read set. The central and distributed schedulers read
//! fresh values; the synchronous scheduler evaluates every guard against
//! the pre-step state and then applies all enabled actions at once.
//!
//! A round completes when every node has evaluated its guards at least once
//! since the previous round boundary. Schedulers are kept weakly fair by
//! force-scheduling the lowest-id straggler once a round has stalled for
//! `2n` steps. Runs stop at the first round boundary where no guard holds
//! on the exact current state; a step budget (an order of magnitude above
//! every expected bound) turns accidental non-termination into an error
//! carrying the partial trace.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::algo::{Firing, Problem, ReadRadius, RuleKind, Rules};
use crate::graph::{Graph, NodeId};
use crate::state::{GlobalState, Membership, Snapshot};

mod history;
mod trace;

pub use history::{snapshot_for, History, Version, ViewTable};
pub use trace::{ActivationRecord, StepRecord, Trace};

/// Which nodes get activated each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheduler {
    /// One seeded-random node per step.
    Central,
    /// A seeded-random non-empty subset per step, activations serialized.
    Distributed,
    /// All nodes per step, guards evaluated against the pre-step state.
    #[serde(rename = "sync")]
    Synchronous,
    /// Distributed, but reads may lag up to the staleness bound.
    Amr,
}

impl Scheduler {
    pub fn name(self) -> &'static str {
        match self {
            Scheduler::Central => "central",
            Scheduler::Distributed => "distributed",
            Scheduler::Synchronous => "sync",
            Scheduler::Amr => "amr",
        }
    }
}

impl fmt::Display for Scheduler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SchedulerConfig {
    pub kind: Scheduler,
    /// Maximum read lag in versions; meaningful only for [`Scheduler::Amr`],
    /// every other scheduler fixes it at 0.
    pub staleness: u32,
    pub seed: u64,
    /// Step budget; `None` uses `10 * (2n + 4m + 10)`.
    pub max_steps: Option<u64>,
    /// Keep per-activation records (nodes, rules, read versions).
    pub record_steps: bool,
}

impl SchedulerConfig {
    pub fn new(kind: Scheduler, seed: u64) -> Self {
        SchedulerConfig {
            kind,
            staleness: 0,
            seed,
            max_steps: None,
            record_steps: true,
        }
    }

    pub fn staleness(mut self, b: u32) -> Self {
        assert!(
            b == 0 || self.kind == Scheduler::Amr,
            "only the amr scheduler reads stale values"
        );
        self.staleness = b;
        self
    }

    pub fn max_steps(mut self, steps: u64) -> Self {
        self.max_steps = Some(steps);
        self
    }

    pub fn record_steps(mut self, record: bool) -> Self {
        self.record_steps = record;
        self
    }
}

/// Default step budget: an order of magnitude above the worst move bound,
/// times the worst-case steps a scheduler needs per round (a central
/// scheduler touches one node per step, and fairness injection caps a round
/// at `3n` steps; a synchronous round is one step).
pub fn default_max_steps(graph: &Graph, kind: Scheduler) -> u64 {
    let rounds = 10 * (2 * graph.n() as u64 + 4 * graph.m() + 10);
    let steps_per_round = match kind {
        Scheduler::Synchronous => 1,
        _ => 3 * graph.n() as u64 + 2,
    };
    rounds.saturating_mul(steps_per_round)
}

/// How the initial state is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Init {
    /// Membership uniform per node; colours uniform in `[1, n]`.
    Random,
    /// Everyone in; for colouring, the distinct escape colours `id + n`.
    AllIn,
    /// Everyone out; for colouring, everyone at colour 1.
    AllOut,
    Explicit(GlobalState),
}

/// Materialises an initial state for `problem` on `graph`.
pub fn initial_state(problem: Problem, graph: &Graph, init: &Init, seed: u64) -> GlobalState {
    use crate::state::StateKind;
    let n = graph.n();
    match (problem.state_kind(), init) {
        (_, Init::Explicit(s)) => s.clone(),
        (StateKind::Member, Init::AllIn) => GlobalState::all_member(n, Membership::In),
        (StateKind::Member, Init::AllOut) => GlobalState::all_member(n, Membership::Out),
        (StateKind::Member, Init::Random) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            GlobalState::new(
                (0..n)
                    .map(|_| {
                        crate::state::LocalState::Member(if rng.gen_bool(0.5) {
                            Membership::In
                        } else {
                            Membership::Out
                        })
                    })
                    .collect(),
            )
        }
        (StateKind::Colour, Init::AllIn) => {
            GlobalState::from_colours(&graph.ids().map(|i| i + n).collect::<Vec<_>>())
        }
        (StateKind::Colour, Init::AllOut) => GlobalState::all_colour(n, 1),
        (StateKind::Colour, Init::Random) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            GlobalState::from_colours(&(0..n).map(|_| rng.gen_range(1..=n)).collect::<Vec<_>>())
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("initial state does not match the algorithm's state variant")]
    InitMismatch,
    #[error(
        "step budget exhausted without convergence ({} steps, {} moves, {} rounds)",
        trace.activations, trace.moves, trace.rounds
    )]
    NonTermination { trace: Box<Trace> },
}

/// Budget marker returned by [`Sim::run_to_silence`].
#[derive(Debug, Error, PartialEq, Eq)]
#[error("step budget {steps} exhausted without convergence")]
pub struct Stalled {
    pub steps: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct StepOutcome {
    pub activated: u32,
    pub moved: bool,
    pub completed_round: bool,
}

/// One deterministic simulation instance.
pub struct Sim<'a> {
    graph: &'a Graph,
    rules: &'a dyn Rules,
    cfg: SchedulerConfig,
    state: GlobalState,
    hist: History,
    views: ViewTable,
    rng: ChaCha8Rng,
    snap: Snapshot,
    budget: u64,
    steps: u64,
    activations: u64,
    moves: u64,
    rounds: u64,
    moves_after_first_round: u64,
    pending: Vec<bool>,
    pending_count: u32,
    steps_in_round: u64,
    step_log: Vec<StepRecord>,
}

fn read_sets_for(graph: &Graph, radius: ReadRadius) -> Vec<Vec<NodeId>> {
    match radius {
        ReadRadius::Hops(k) => graph.ids().map(|i| graph.k_neighborhood(i, k)).collect(),
        ReadRadius::WholeGraph => graph
            .ids()
            .map(|i| graph.ids().filter(|&j| j != i).collect())
            .collect(),
    }
}

impl<'a> Sim<'a> {
    pub fn new(
        graph: &'a Graph,
        rules: &'a dyn Rules,
        init: GlobalState,
        cfg: SchedulerConfig,
    ) -> Result<Self, RunError> {
        if init.len() != graph.n() || init.kind() != rules.problem().state_kind() {
            return Err(RunError::InitMismatch);
        }
        let n = graph.n();
        Ok(Sim {
            graph,
            rules,
            state: init.clone(),
            hist: History::init(&init),
            views: ViewTable::new(read_sets_for(graph, rules.read_radius())),
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            snap: Snapshot::new(n),
            budget: cfg
                .max_steps
                .unwrap_or_else(|| default_max_steps(graph, cfg.kind)),
            cfg,
            steps: 0,
            activations: 0,
            moves: 0,
            rounds: 0,
            moves_after_first_round: 0,
            pending: vec![true; n as usize],
            pending_count: n,
            steps_in_round: 0,
            step_log: Vec::new(),
        })
    }

    pub fn state(&self) -> &GlobalState {
        &self.state
    }

    pub fn moves(&self) -> u64 {
        self.moves
    }

    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn history(&self) -> &History {
        &self.hist
    }

    /// True when every read cursor has reached its subject's latest version.
    pub fn views_caught_up(&self) -> bool {
        self.views.all_caught_up(&self.hist)
    }

    /// No guard holds anywhere on the exact current state (fresh reads).
    pub fn is_silent_now(&mut self) -> bool {
        self.snap.begin();
        for i in self.graph.ids() {
            self.snap.put(i, self.state.local(i));
        }
        let rules = self.rules;
        self.graph
            .ids()
            .all(|i| rules.enabled(&self.snap, i).is_none())
    }

    fn mark_active(&mut self, i: NodeId) {
        let idx = (i - 1) as usize;
        if self.pending[idx] {
            self.pending[idx] = false;
            self.pending_count -= 1;
        }
    }

    fn lowest_pending(&self) -> Option<NodeId> {
        self.pending
            .iter()
            .position(|&p| p)
            .map(|idx| idx as NodeId + 1)
    }

    fn apply_firing(&mut self, firing: &Firing) {
        for &(j, s) in &firing.writes {
            self.state.set(j, s);
            self.hist.push(j, s);
        }
        self.moves += 1;
        if self.rounds >= 1 {
            self.moves_after_first_round += 1;
        }
    }

    fn activate_into(&mut self, i: NodeId, recs: &mut Vec<ActivationRecord>) -> Option<RuleKind> {
        self.activations += 1;
        self.mark_active(i);
        let staleness = if self.cfg.kind == Scheduler::Amr {
            self.cfg.staleness
        } else {
            0
        };
        let mut reads = self.cfg.record_steps.then(Vec::new);
        snapshot_for(
            &self.hist,
            &mut self.views,
            &self.state,
            i,
            staleness,
            &mut self.rng,
            &mut self.snap,
            reads.as_mut(),
        );
        let rules = self.rules;
        let firing = rules.enabled(&self.snap, i);
        if let Some(reads) = reads {
            recs.push(ActivationRecord {
                node: i,
                rule: firing.as_ref().map(|f| f.rule),
                reads,
            });
        }
        match firing {
            Some(f) => {
                self.apply_firing(&f);
                Some(f.rule)
            }
            None => None,
        }
    }

    fn pick_nodes(&mut self) -> Vec<NodeId> {
        let n = self.graph.n();
        let inject = self.steps_in_round > 2 * n as u64;
        match self.cfg.kind {
            Scheduler::Central => {
                let natural = self.rng.gen_range(1..=n);
                if inject {
                    vec![self.lowest_pending().unwrap_or(natural)]
                } else {
                    vec![natural]
                }
            }
            Scheduler::Distributed | Scheduler::Amr => {
                let rng = &mut self.rng;
                let mut set: Vec<NodeId>;
                loop {
                    set = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
                    if !set.is_empty() {
                        break;
                    }
                }
                if inject {
                    if let Some(p) = self.lowest_pending() {
                        if !set.contains(&p) {
                            set.push(p);
                            set.sort_unstable();
                        }
                    }
                }
                set
            }
            Scheduler::Synchronous => unreachable!("synchronous steps take the dedicated path"),
        }
    }

    /// Runs one scheduler step.
    pub fn step(&mut self) -> StepOutcome {
        let step_idx = self.steps;
        self.steps += 1;
        self.steps_in_round += 1;
        let mut recs: Vec<ActivationRecord> = Vec::new();
        let mut moved = false;
        let mut activated = 0u32;

        if self.cfg.kind == Scheduler::Synchronous {
            // Everyone evaluates against the pre-step state.
            self.snap.begin();
            for i in self.graph.ids() {
                self.snap.put(i, self.state.local(i));
            }
            let pre_versions: Option<Vec<Version>> = self.cfg.record_steps.then(|| {
                self.graph
                    .ids()
                    .map(|j| self.hist.latest_version(j))
                    .collect()
            });
            let rules = self.rules;
            let mut firings: Vec<Firing> = Vec::new();
            for i in self.graph.ids() {
                self.activations += 1;
                activated += 1;
                self.mark_active(i);
                let firing = rules.enabled(&self.snap, i);
                if let Some(pre) = &pre_versions {
                    let mut reads = vec![(i, pre[(i - 1) as usize])];
                    reads.extend(
                        self.views
                            .read_set(i)
                            .iter()
                            .map(|&j| (j, pre[(j - 1) as usize])),
                    );
                    recs.push(ActivationRecord {
                        node: i,
                        rule: firing.as_ref().map(|f| f.rule),
                        reads,
                    });
                }
                if let Some(f) = firing {
                    firings.push(f);
                }
            }
            let mut targets: Vec<NodeId> = firings
                .iter()
                .flat_map(|f| f.writes.iter().map(|w| w.0))
                .collect();
            targets.sort_unstable();
            assert!(
                targets.windows(2).all(|w| w[0] != w[1]),
                "colliding synchronous writes"
            );
            for f in &firings {
                self.apply_firing(f);
                moved = true;
            }
        } else {
            for i in self.pick_nodes() {
                activated += 1;
                moved |= self.activate_into(i, &mut recs).is_some();
            }
        }

        if self.cfg.record_steps {
            self.step_log.push(StepRecord {
                step: step_idx,
                activations: recs,
            });
        }
        let completed_round = self.pending_count == 0;
        if completed_round {
            self.rounds += 1;
            self.pending.fill(true);
            self.pending_count = self.graph.n();
            self.steps_in_round = 0;
        }
        StepOutcome {
            activated,
            moved,
            completed_round,
        }
    }

    /// Activates a single chosen node as its own step (central-style);
    /// returns the rule that fired, if any.
    pub fn activate(&mut self, i: NodeId) -> Option<RuleKind> {
        let step_idx = self.steps;
        self.steps += 1;
        self.steps_in_round += 1;
        let mut recs = Vec::new();
        let rule = self.activate_into(i, &mut recs);
        if self.cfg.record_steps {
            self.step_log.push(StepRecord {
                step: step_idx,
                activations: recs,
            });
        }
        if self.pending_count == 0 {
            self.rounds += 1;
            self.pending.fill(true);
            self.pending_count = self.graph.n();
            self.steps_in_round = 0;
        }
        rule
    }

    /// Steps until the first round boundary at which the exact state is
    /// silent, within the step budget.
    pub fn run_to_silence(&mut self) -> Result<(), Stalled> {
        loop {
            if self.steps >= self.budget {
                return Err(Stalled { steps: self.steps });
            }
            let out = self.step();
            if out.completed_round && self.is_silent_now() {
                return Ok(());
            }
        }
    }

    pub fn into_trace(self, converged: bool) -> Trace {
        Trace {
            algorithm: self.rules.problem(),
            n: self.graph.n(),
            m: self.graph.m(),
            moves: self.moves,
            rounds: self.rounds,
            activations: self.activations,
            moves_after_first_round: self.moves_after_first_round,
            converged,
            final_state: self.state,
            steps: self.step_log,
        }
    }

    /// Runs to silence and returns the trace; on budget exhaustion the
    /// partial trace rides in the error.
    pub fn run(mut self) -> Result<Trace, RunError> {
        match self.run_to_silence() {
            Ok(()) => Ok(self.into_trace(true)),
            Err(_) => Err(RunError::NonTermination {
                trace: Box::new(self.into_trace(false)),
            }),
        }
    }
}

/// Convenience wrapper: build a [`Sim`] and run it to silence.
pub fn run(
    graph: &Graph,
    rules: &dyn Rules,
    init: GlobalState,
    cfg: SchedulerConfig,
) -> Result<Trace, RunError> {
    Sim::new(graph, rules, init, cfg)?.run()
}

/// True iff no guard of any node holds on the exact given state.
pub fn is_silent(rules: &dyn Rules, state: &GlobalState) -> bool {
    let snap = Snapshot::of_state(state);
    (1..=state.len()).all(|i| rules.enabled(&snap, i).is_none())
}
