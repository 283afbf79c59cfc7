//! Basin Hopping: random perturbation, local minimization, Metropolis test.

use std::convert::Infallible;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::eval::{Halt, Objective, Tracker};
use crate::local_search::{minimize_bounded, LocalSearchOptions};
use crate::problem::{EvalBudget, ObjectiveSpec};
use crate::rng::RngStream;
use crate::trace::RunTrace;

use super::finish;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BhConfig {
    /// Half-width of the uniform perturbation as a fraction of each side.
    pub step_size: f64,
    pub temperature: f64,
    pub local_opts: LocalSearchOptions,
    /// Iterations between step-size adjustments toward 50% acceptance.
    pub adaptive_interval: usize,
}

impl Default for BhConfig {
    fn default() -> Self {
        Self {
            step_size: 0.25,
            temperature: 1.0,
            local_opts: LocalSearchOptions::default(),
            adaptive_interval: 50,
        }
    }
}

impl BhConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.step_size > 0.0 && self.step_size <= 1.0) {
            return Err(Error::InvalidConfig(
                "BH step_size must lie in (0, 1]".into(),
            ));
        }
        if !(self.temperature > 0.0) {
            return Err(Error::InvalidConfig(
                "BH temperature must be positive".into(),
            ));
        }
        if self.adaptive_interval == 0 {
            return Err(Error::InvalidConfig(
                "BH adaptive_interval must be positive".into(),
            ));
        }
        self.local_opts.validate()
    }
}

/// Metropolis rule with a uniform draw `u` in [0, 1). Downhill and level
/// moves always pass; at zero temperature every uphill move fails.
pub fn metropolis_accept(f_new: f64, f_old: f64, temperature: f64, u: f64) -> bool {
    if f_new <= f_old {
        return true;
    }
    u < (-(f_new - f_old) / temperature).exp()
}

const STEP_FACTOR: f64 = 0.9;
const TARGET_ACCEPT: f64 = 0.5;

fn search<O: Objective + ?Sized>(
    obj: &mut O,
    config: &BhConfig,
    rng: &RngStream,
) -> Result<Infallible, Halt> {
    let domain = obj.domain().clone();
    let mut rng_step = rng.child("bh-step");
    let mut rng_accept = rng.child("bh-accept");
    let mut rng_local = rng.child("local");
    let opts = config.local_opts;

    let x0 = rng_step.point_in(&domain);
    let start = minimize_bounded(obj, &x0, &opts, &mut rng_local);
    if let Some(h) = start.halted {
        return Err(h);
    }
    let (mut x, mut f) = (start.x, start.value);
    let mut step = config.step_size;
    let (mut accepted, mut trials) = (0usize, 0usize);
    loop {
        let trial: Vec<f64> = x
            .iter()
            .enumerate()
            .map(|(n, xn)| {
                let w = step * domain.length(n);
                xn + rng_step.uniform_in(-w, w)
            })
            .collect();
        let trial = domain.project(&trial);
        let res = minimize_bounded(obj, &trial, &opts, &mut rng_local);
        if let Some(h) = res.halted {
            return Err(h);
        }
        trials += 1;
        if metropolis_accept(res.value, f, config.temperature, rng_accept.uniform()) {
            x = res.x;
            f = res.value;
            accepted += 1;
        }
        if trials == config.adaptive_interval {
            let rate = accepted as f64 / trials as f64;
            step = if rate > TARGET_ACCEPT {
                (step / STEP_FACTOR).min(1.0)
            } else {
                step * STEP_FACTOR
            };
            accepted = 0;
            trials = 0;
        }
    }
}

/// Runs Basin Hopping until the target is hit or the budget runs out.
pub fn bh_run(
    spec: &ObjectiveSpec,
    config: &BhConfig,
    budget: EvalBudget,
    rng: &RngStream,
    target: Option<f64>,
) -> Result<RunTrace, Error> {
    config.validate()?;
    let mut tracker = Tracker::new(spec, budget, target);
    let status = finish(search(&mut tracker, config, rng));
    let snapshot = serde_json::to_value(config)?;
    Ok(tracker.into_trace("bh", rng.seed(), status, snapshot))
}
