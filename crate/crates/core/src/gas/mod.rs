//! General Algorithmic Search.
//!
//! A swarm of walkers explores the box. Each loop:
//!
//! 1. every walker scores a *flow* from its scaled value, its squared
//!    distance to a random partner and to a random tabu memory, then may
//!    clone (copy the full state of) a random other walker;
//! 2. two local searches run, one from the scaled-value-weighted centre of
//!    mass and one from the lowest walker, and both results enter the tabu
//!    list, which churns through its own flow-and-cloning routine; the best
//!    memory updates BEST;
//! 3. each walker jumps by a Gaussian whose width grows with its scaled
//!    value (good walkers move slowly) and is re-evaluated.
//!
//! The run stops on the target, on the read budget, or, when no target is
//! given, once BEST has been stable over a window of loops.

pub mod jump;
pub mod swarm;
pub mod tabu;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::eval::{Halt, Objective, Tracker};
use crate::local_search::{minimize_bounded, LocalSearchOptions};
use crate::problem::{EvalBudget, ObjectiveSpec, Sense};
use crate::rng::RngStream;
use crate::trace::{RunStatus, RunTrace};

pub use jump::{jump_scale, perturb_position};
pub use swarm::{
    apply_cloning, argmin_random, center_of_mass, clone_probability, compute_flows,
    flow_and_clone_pass, scale_values, squared_distance, walker_flow, Swarm,
};
pub use tabu::{memory_churn, memory_insert, memory_insert_and_churn, tabu_flow, TabuList};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasConfig {
    /// Swarm size. Small swarms leave more of the read budget to local
    /// searches, which pays off on the multimodal test functions.
    pub n_walkers: usize,
    /// Loops averaged by the stability halt.
    pub stability_window: usize,
    pub stability_precision: f64,
    pub local_opts: LocalSearchOptions,
}

impl Default for GasConfig {
    fn default() -> Self {
        Self {
            n_walkers: 10,
            stability_window: 50,
            stability_precision: 1e-6,
            local_opts: LocalSearchOptions::default(),
        }
    }
}

impl GasConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.n_walkers < 2 {
            return Err(Error::InvalidConfig(
                "GAS needs at least two walkers".into(),
            ));
        }
        if self.stability_window == 0 || !(self.stability_precision > 0.0) {
            return Err(Error::InvalidConfig(
                "stability window and precision must be positive".into(),
            ));
        }
        self.local_opts.validate()
    }
}

/// Monotone best-so-far record with a window of recent values.
#[derive(Debug, Clone, PartialEq)]
pub struct BestRecord {
    pub position: Vec<f64>,
    /// Minimization sense.
    pub value: f64,
    pub history: VecDeque<f64>,
    window: usize,
}

impl BestRecord {
    pub fn new(position: Vec<f64>, value: f64, window: usize) -> Self {
        Self {
            position,
            value,
            history: VecDeque::with_capacity(window),
            window,
        }
    }

    /// Replaces the record only on strict improvement.
    pub fn offer(&mut self, position: &[f64], value: f64) -> bool {
        if value < self.value {
            self.position = position.to_vec();
            self.value = value;
            true
        } else {
            false
        }
    }

    /// Appends the current value to the window.
    pub fn push_history(&mut self) {
        if self.history.len() == self.window {
            self.history.pop_front();
        }
        self.history.push_back(self.value);
    }

    /// Full window and the current value within `precision` of its mean.
    pub fn is_stable(&self, precision: f64) -> bool {
        if self.history.len() < self.window {
            return false;
        }
        let mean = self.history.iter().sum::<f64>() / self.history.len() as f64;
        (self.value - mean).abs() < precision
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Continue,
    Stable,
}

/// Complete state of one GAS run between loops.
#[derive(Debug, Clone)]
pub struct GasState {
    pub config: GasConfig,
    pub swarm: Swarm,
    pub tabu: TabuList,
    pub best: BestRecord,
    pub loops: u64,
    pub stability_halt: bool,
    sense: Sense,
    rng_walkers: RngStream,
    rng_tabu: RngStream,
    rng_local: RngStream,
}

impl GasState {
    /// Random swarm, local search from its lowest walker, tabu list filled
    /// with the result, BEST set to it.
    pub fn initialize<O: Objective + ?Sized>(
        obj: &mut O,
        config: GasConfig,
        sense: Sense,
        rng: &RngStream,
    ) -> Result<Self, Halt> {
        let mut rng_init = rng.child("init");
        let rng_walkers = rng.child("walkers");
        let rng_tabu = rng.child("tabu");
        let mut rng_local = rng.child("local");
        let domain = obj.domain().clone();

        let positions: Vec<Vec<f64>> = (0..config.n_walkers)
            .map(|_| rng_init.point_in(&domain))
            .collect();
        let mut values = Vec::with_capacity(config.n_walkers);
        for x in &positions {
            values.push(obj.value(x)?);
        }
        let swarm = Swarm::new(positions, values);

        let i_min = argmin_random(&swarm.values, &mut rng_init);
        let res = minimize_bounded(
            obj,
            &swarm.positions[i_min],
            &config.local_opts,
            &mut rng_local,
        );
        if let Some(h) = res.halted {
            return Err(h);
        }
        let tabu = TabuList::filled(res.x.clone(), res.value, config.n_walkers);
        let best = BestRecord::new(res.x, res.value, config.stability_window);

        Ok(Self {
            config,
            swarm,
            tabu,
            best,
            loops: 0,
            stability_halt: true,
            sense,
            rng_walkers,
            rng_tabu,
            rng_local,
        })
    }

    /// One search loop.
    pub fn step<O: Objective + ?Sized>(&mut self, obj: &mut O) -> Result<StepOutcome, Halt> {
        let domain = obj.domain().clone();
        let opts = self.config.local_opts;

        // Walkers flow & cloning.
        flow_and_clone_pass(&mut self.swarm, &self.tabu, &mut self.rng_walkers);

        // Local searches.
        let x_cm = center_of_mass(&self.swarm, &domain);
        let x_min = if self.loops == 0 {
            self.best.position.clone()
        } else {
            let i = argmin_random(&self.swarm.values, &mut self.rng_walkers);
            self.swarm.positions[i].clone()
        };
        let t = minimize_bounded(obj, &x_cm, &opts, &mut self.rng_local);
        if let Some(h) = t.halted {
            return Err(h);
        }
        let t_prime = minimize_bounded(obj, &x_min, &opts, &mut self.rng_local);
        if let Some(h) = t_prime.halted {
            return Err(h);
        }
        memory_insert_and_churn(&mut self.tabu, &t.x, t.value, &mut self.rng_tabu);
        memory_insert_and_churn(
            &mut self.tabu,
            &t_prime.x,
            t_prime.value,
            &mut self.rng_tabu,
        );
        let r = self.tabu.best();
        let (pos, val) = (self.tabu.memories[r].clone(), self.tabu.values[r]);
        self.best.offer(&pos, val);
        self.best.push_history();
        self.loops += 1;

        if self.stability_halt && self.best.is_stable(self.config.stability_precision) {
            return Ok(StepOutcome::Stable);
        }

        // Position update.
        let jump_phis = match self.sense {
            Sense::Minimize => self.swarm.phis.clone(),
            Sense::Maximize => {
                let user: Vec<f64> = self.swarm.values.iter().map(|v| -v).collect();
                scale_values(&user)
            }
        };
        for (x, phi) in self.swarm.positions.iter_mut().zip(&jump_phis) {
            let delta = jump_scale(*phi, self.sense);
            *x = perturb_position(x, delta, &domain, &mut self.rng_walkers);
        }
        for i in 0..self.swarm.len() {
            self.swarm.values[i] = obj.value(&self.swarm.positions[i])?;
        }
        self.swarm.rescale();
        Ok(StepOutcome::Continue)
    }
}

/// Runs GAS until the target is hit, the budget runs out, or (without a
/// target) BEST stabilizes.
pub fn gas_run(
    spec: &ObjectiveSpec,
    config: &GasConfig,
    budget: EvalBudget,
    rng: &RngStream,
    target: Option<f64>,
) -> Result<RunTrace, Error> {
    config.validate()?;
    let mut tracker = Tracker::new(spec, budget, target);
    let status = drive(&mut tracker, config, spec.sense(), rng, target.is_none());
    let snapshot = serde_json::to_value(config)?;
    Ok(tracker.into_trace("gas", rng.seed(), status, snapshot))
}

fn drive(
    tracker: &mut Tracker<'_>,
    config: &GasConfig,
    sense: Sense,
    rng: &RngStream,
    stability_halt: bool,
) -> RunStatus {
    let mut state = match GasState::initialize(tracker, *config, sense, rng) {
        Ok(s) => s,
        Err(h) => return h.into(),
    };
    state.stability_halt = stability_halt;
    loop {
        match state.step(tracker) {
            Ok(StepOutcome::Continue) => {}
            Ok(StepOutcome::Stable) => return RunStatus::StabilityHalt,
            Err(h) => return h.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testbed::registry;

    #[test]
    fn one_step_keeps_best_monotone() {
        let spec = registry().get("sphere").unwrap();
        let mut tracker = Tracker::new(spec, EvalBudget::new(1_000_000), None);
        let config = GasConfig {
            n_walkers: 10,
            ..Default::default()
        };
        let mut state =
            GasState::initialize(&mut tracker, config, Sense::Minimize, &RngStream::new(1))
                .unwrap();
        let before = state.best.value;
        state.step(&mut tracker).unwrap();
        assert!(state.best.value <= before);
        assert_eq!(state.tabu.len(), 10);
    }

    #[test]
    fn converged_swarm_halts_on_stability() {
        let spec = registry().get("sphere").unwrap();
        let config = GasConfig {
            n_walkers: 5,
            stability_window: 10,
            ..Default::default()
        };
        let trace = gas_run(
            spec,
            &config,
            EvalBudget::new(1_000_000),
            &RngStream::new(3),
            None,
        )
        .unwrap();
        assert_eq!(trace.status, RunStatus::StabilityHalt);
        assert!(trace.best_value.abs() < 1e-9);
    }

    #[test]
    fn sphere_is_solved() {
        let spec = registry().get("sphere").unwrap();
        let config = GasConfig {
            n_walkers: 50,
            ..Default::default()
        };
        let trace = gas_run(
            spec,
            &config,
            EvalBudget::new(10_000),
            &RngStream::new(1),
            Some(0.0),
        )
        .unwrap();
        assert_eq!(trace.status, RunStatus::Solved);
        assert!(trace.solved_at_reads.unwrap() <= 10_000);
    }

    #[test]
    fn tiny_budget_exhausts() {
        let spec = registry().get("eggholder").unwrap();
        let trace = gas_run(
            spec,
            &GasConfig::default(),
            EvalBudget::new(10),
            &RngStream::new(1),
            Some(spec.known_min_value()),
        )
        .unwrap();
        assert_eq!(trace.status, RunStatus::BudgetExhausted);
        assert!(!trace.samples.is_empty());
        assert_eq!(trace.reads_used, 10);
    }

    #[test]
    fn maximizes_negated_sphere() {
        let domain = crate::BoxDomain::cube(-10.0, 10.0, 2).unwrap();
        let spec = ObjectiveSpec::new("neg_sphere", domain, |x| -(x[0] * x[0] + x[1] * x[1]))
            .with_gradient(|x| vec![-2.0 * x[0], -2.0 * x[1]])
            .with_known_min(0.0, Some(vec![0.0, 0.0]))
            .with_sense(Sense::Maximize);
        let trace = gas_run(
            &spec,
            &GasConfig::default(),
            EvalBudget::new(10_000),
            &RngStream::new(5),
            Some(0.0),
        )
        .unwrap();
        assert_eq!(trace.status, RunStatus::Solved);
        assert!(trace
            .samples
            .windows(2)
            .all(|w| w[1].best_value >= w[0].best_value));
    }

    #[test]
    fn rejects_single_walker() {
        let config = GasConfig {
            n_walkers: 1,
            ..Default::default()
        };
        assert!(config.validate().is_err());
    }

    #[test]
    fn best_record_window() {
        let mut b = BestRecord::new(vec![0.0], 1.0, 3);
        b.push_history();
        b.push_history();
        assert!(!b.is_stable(1e-6));
        b.push_history();
        assert!(b.is_stable(1e-6));
        assert!(b.offer(&[1.0], 0.5));
        assert!(!b.offer(&[2.0], 0.7));
        b.push_history();
        assert!(!b.is_stable(1e-6));
    }
}
