//! Connectivity-constrained partial coverage on red-blue graphs.
//!
//! An instance pairs a connectivity graph on red vertices with a bipartite
//! coverage graph from red to blue vertices, a budget `k` and a coverage
//! target `t`; the goal is a connected red set of size at most `k` that
//! dominates at least `t` blue vertices. The crate provides:
//!
//! - an exact solver parameterized by `t` ([`exact`]),
//! - a budget-exact, coverage-approximate scheme for biclique-free coverage
//!   graphs ([`epas`]),
//! - a coverage-exact, budget-approximate scheme ([`pas`]),
//! - brute-force reference oracles ([`oracle`]),
//! - encoders from classical problems ([`encode`]),
//! - instance file I/O and seeded generators ([`format`], [`generate`]).

pub mod config;
pub mod encode;
pub mod epas;
pub mod error;
pub mod exact;
pub mod format;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod pas;
pub(crate) mod util;

pub use config::{Limits, Route, SearchMode, SolverConfig};
pub use epas::{epas_solve, steiner_epas_solve, Epsilon};
pub use error::{BuildError, ParseError, SolverError};
pub use exact::exact_solve_by_t;
pub use graph::{
    ConnGraph, Digraph, InfeasibleReason, Instance, OutTree, Outcome, RedBlueGraph, Solution,
    VerifyReport,
};
pub use pas::pas_outer;
