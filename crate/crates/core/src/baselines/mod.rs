//! Comparison solvers sharing the GAS run interface: Basin Hopping, Cuckoo
//! Search with a periodic local search, and Differential Evolution.

pub mod bh;
pub mod cs;
pub mod de;

pub use bh::{bh_run, metropolis_accept, BhConfig};
pub use cs::{cs_run, levy_step, mantegna_sigma, CsConfig, CsState};
pub use de::{binomial_crossover, de_run, DeConfig, DeState};

use std::convert::Infallible;

use crate::eval::Halt;
use crate::trace::RunStatus;

/// Final status of a search loop that only ends by halting.
pub(crate) fn finish(result: Result<Infallible, Halt>) -> RunStatus {
    match result {
        Ok(never) => match never {},
        Err(h) => h.into(),
    }
}
