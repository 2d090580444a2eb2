//! A simulation and verification lab for self-stabilizing guarded-command
//! graph algorithms.
//!
//! Five algorithms — service-demand minimal dominating set, minimal vertex
//! cover, maximal independent set, graph colouring, and 2-dominating set —
//! run under four schedulers (central, distributed, synchronous, and a
//! bounded-staleness monotonic-read model), with exact move and round
//! accounting. A brute-force oracle checks feasibility, optimality,
//! descent-structure, and move bounds on small instances.
//!
//! ## Where to start
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --example two_disjoint_edges   # state-space census of the 4-node demo
//! cargo run --example single_run           # one seeded simulation, end to end
//! cargo run --example scheduler_matrix     # same input under all four schedulers
//! cargo run --example stale_reads          # bounded-staleness runs and closure
//! cargo run --example service_demands      # tokens: who can dominate whom
//! cargo run --example colour_descent       # conflict escape, then greedy descent
//! cargo run --example two_for_one          # the 2-dominating-set swap in action
//! cargo run --example exhaustive_verify    # every small graph, machine-checked
//! ```
//!
//! The `stabsim` binary exposes the same machinery as `gen`, `run`, `bench`
//! and `verify` subcommands; see the README.
//!
//! ## Layout
//!
//! - [`graph`]: immutable simple graphs, edge-list parsing, seeded G(n, m).
//! - [`instance`]: per-node service/demand token sets.
//! - [`algo`]: the five rule sets as pure guard predicates plus actions.
//! - [`engine`]: histories, monotonic-read views, schedulers, traces.
//! - [`oracle`]: ground-truth predicates and exhaustive structure checks.
//! - [`cli`]: the thin command-line layer over all of the above.

pub mod algo;
pub mod cli;
pub mod engine;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod state;

pub use algo::{Problem, Task};
pub use graph::{Graph, NodeId};
pub use instance::SdmdsInstance;
pub use state::{GlobalState, LocalState, Membership, Snapshot};
