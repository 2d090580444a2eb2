//! Activation traces and their line-oriented JSON export.

use serde::Serialize;
use std::io::{self, Write};

use super::history::Version;
use crate::algo::{Problem, RuleKind};
use crate::graph::NodeId;
use crate::state::GlobalState;

/// One guard evaluation by one node.
#[derive(Debug, Clone, Serialize)]
pub struct ActivationRecord {
    pub node: NodeId,
    /// `None` when no guard held.
    pub rule: Option<RuleKind>,
    /// `(subject, version)` pairs actually read, own state first.
    pub reads: Vec<(NodeId, Version)>,
}

/// All activations of one scheduler step.
#[derive(Debug, Clone, Serialize)]
pub struct StepRecord {
    pub step: u64,
    pub activations: Vec<ActivationRecord>,
}

/// The full account of one run.
#[derive(Debug, Clone)]
pub struct Trace {
    pub algorithm: Problem,
    pub n: u32,
    pub m: u64,
    /// Activations that changed at least one node's state.
    pub moves: u64,
    pub rounds: u64,
    /// Total guard evaluations.
    pub activations: u64,
    pub moves_after_first_round: u64,
    pub converged: bool,
    pub final_state: GlobalState,
    /// Per-step activation log; empty when recording was disabled.
    pub steps: Vec<StepRecord>,
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: Summary<'a>,
}

#[derive(Serialize)]
struct Summary<'a> {
    algorithm: Problem,
    n: u32,
    m: u64,
    moves: u64,
    rounds: u64,
    activations: u64,
    moves_after_first_round: u64,
    converged: bool,
    final_digest: &'a str,
}

impl Trace {
    /// Writes one JSON line per recorded step, then a summary line carrying
    /// the counters and a digest of the final state.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> io::Result<()> {
        for step in &self.steps {
            serde_json::to_writer(&mut w, step)?;
            w.write_all(b"\n")?;
        }
        let digest = self.final_state.digest();
        let line = SummaryLine {
            summary: Summary {
                algorithm: self.algorithm,
                n: self.n,
                m: self.m,
                moves: self.moves,
                rounds: self.rounds,
                activations: self.activations,
                moves_after_first_round: self.moves_after_first_round,
                converged: self.converged,
                final_digest: &digest,
            },
        };
        serde_json::to_writer(&mut w, &line)?;
        w.write_all(b"\n")
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("vec write");
        String::from_utf8(buf).expect("json is utf-8")
    }

    /// One-line human summary.
    pub fn summary_line(&self) -> String {
        format!(
            "moves={} rounds={} activations={} converged={}",
            self.moves, self.rounds, self.activations, self.converged
        )
    }
}
