//! Stochastic global optimization: the GAS walker-swarm metaheuristic,
//! Basin Hopping, Cuckoo Search and Differential Evolution baselines, the
//! 31-objective benchmark testbed, and a seeded benchmark harness.

// `!(x > 0.0)` is used on purpose so that NaN parameters fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod error;
pub mod eval;
pub mod gas;
pub mod harness;
pub mod local_search;
pub mod problem;
pub mod rng;
pub mod testbed;
pub mod trace;

pub use error::{Error, EvalError, Result};
pub use eval::{Budgeted, Halt, Objective, Tracker};
pub use gas::{gas_run, GasConfig};
pub use local_search::{fd_gradient, minimize_bounded, LocalMinResult, LocalSearchOptions};
pub use problem::{counted_evaluate, project, BoxDomain, EvalBudget, ObjectiveSpec, Sense};
pub use rng::RngStream;
pub use trace::{RunStatus, RunTrace, Sample};
