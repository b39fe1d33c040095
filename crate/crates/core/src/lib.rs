//! Cops chasing adversarial and drunk robbers on finite graphs.
//!
//! * [`graph`]: graph type, validation, family generators and edge-list I/O.
//! * [`chain`]: the robber's absorbing Markov chain under fixed cop
//!   strategies, capture distributions and worst-case survival times.
//! * [`solver`]: exact adversarial capture times, value iteration for the
//!   expected capture time of a random-walking robber, feedback policies and
//!   the cost of drunkenness `ct / dct`.
//! * [`montecarlo`]: seeded simulation used as an independent check.

pub mod chain;
pub mod config;
pub mod error;
pub mod fmt;
pub mod graph;
pub mod montecarlo;
pub mod par;
pub mod solver;

pub use config::{ConfigSpace, CopConfig, DEFAULT_STATE_CAP};
pub use error::{Error, Result};
pub use graph::{Family, Graph};
pub use par::Exec;
pub use solver::{Rounds, Scheme, SolveOptions};
