//! Differential Evolution, best/1/bin with per-generation dithering.

use std::convert::Infallible;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::eval::{Halt, Objective, Tracker};
use crate::problem::{BoxDomain, EvalBudget, ObjectiveSpec};
use crate::rng::RngStream;
use crate::trace::RunTrace;

use super::finish;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeConfig {
    /// Population per dimension; the population never drops below
    /// [`DeConfig::MIN_POPULATION`].
    pub pop_multiplier: usize,
    /// Mutation factor is drawn uniformly from this range each generation.
    pub mutation_range: (f64, f64),
    pub crossover_rate: f64,
}

impl Default for DeConfig {
    fn default() -> Self {
        Self {
            pop_multiplier: 15,
            mutation_range: (0.5, 1.0),
            crossover_rate: 0.7,
        }
    }
}

impl DeConfig {
    pub const MIN_POPULATION: usize = 20;

    pub fn population(&self, dim: usize) -> usize {
        (self.pop_multiplier * dim).max(Self::MIN_POPULATION)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.pop_multiplier == 0 {
            return Err(Error::InvalidConfig(
                "DE pop_multiplier must be positive".into(),
            ));
        }
        let (lo, hi) = self.mutation_range;
        if !(lo > 0.0 && lo <= hi && hi <= 2.0) {
            return Err(Error::InvalidConfig(
                "DE mutation_range must satisfy 0 < lo <= hi <= 2".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::InvalidConfig(
                "DE crossover_rate must lie in [0, 1]".into(),
            ));
        }
        Ok(())
    }
}

/// Binomial crossover. Coordinate `forced` always comes from the donor.
pub fn binomial_crossover(
    target: &[f64],
    donor: &[f64],
    cr: f64,
    forced: usize,
    rng: &mut RngStream,
) -> Vec<f64> {
    target
        .iter()
        .zip(donor)
        .enumerate()
        .map(|(n, (t, d))| {
            if n == forced || rng.uniform() < cr {
                *d
            } else {
                *t
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct DeState {
    pub config: DeConfig,
    pub population: Vec<Vec<f64>>,
    /// Minimization sense.
    pub values: Vec<f64>,
    pub generations: usize,
    domain: BoxDomain,
    rng: RngStream,
}

impl DeState {
    pub fn initialize<O: Objective + ?Sized>(
        obj: &mut O,
        config: DeConfig,
        rng: &RngStream,
    ) -> Result<Self, Halt> {
        let domain = obj.domain().clone();
        let mut rng_init = rng.child("de-init");
        let population: Vec<Vec<f64>> = (0..config.population(domain.dim()))
            .map(|_| rng_init.point_in(&domain))
            .collect();
        let mut values = Vec::with_capacity(population.len());
        for x in &population {
            values.push(obj.value(x)?);
        }
        Ok(Self::from_population(
            config, population, values, domain, rng,
        ))
    }

    /// Starts from a given population; needs at least four members.
    pub fn from_population(
        config: DeConfig,
        population: Vec<Vec<f64>>,
        values: Vec<f64>,
        domain: BoxDomain,
        rng: &RngStream,
    ) -> Self {
        assert!(population.len() >= 4, "DE needs at least four members");
        assert_eq!(population.len(), values.len());
        Self {
            config,
            population,
            values,
            generations: 0,
            domain,
            rng: rng.child("de-evolve"),
        }
    }

    pub fn best(&self) -> usize {
        self.values
            .iter()
            .enumerate()
            .fold(0, |b, (i, v)| if *v < self.values[b] { i } else { b })
    }

    /// One generation: all trials are built from the current population,
    /// then each replaces its parent when no worse.
    pub fn step<O: Objective + ?Sized>(&mut self, obj: &mut O) -> Result<(), Halt> {
        let np = self.population.len();
        let dim = self.domain.dim();
        let (lo, hi) = self.config.mutation_range;
        let f = self.rng.uniform_in(lo, hi);
        let best = &self.population[self.best()];

        let mut trials = Vec::with_capacity(np);
        for i in 0..np {
            let a = self.rng.index_excluding(np, i);
            let b = loop {
                let b = self.rng.index_excluding(np, i);
                if b != a {
                    break b;
                }
            };
            let donor: Vec<f64> = (0..dim)
                .map(|n| best[n] + f * (self.population[a][n] - self.population[b][n]))
                .collect();
            let donor = self.domain.project(&donor);
            let forced = self.rng.index(dim);
            trials.push(binomial_crossover(
                &self.population[i],
                &donor,
                self.config.crossover_rate,
                forced,
                &mut self.rng,
            ));
        }
        for (i, trial) in trials.into_iter().enumerate() {
            let v = obj.value(&trial)?;
            if v <= self.values[i] {
                self.population[i] = trial;
                self.values[i] = v;
            }
        }
        self.generations += 1;
        Ok(())
    }
}

fn search<O: Objective + ?Sized>(
    obj: &mut O,
    config: &DeConfig,
    rng: &RngStream,
) -> Result<Infallible, Halt> {
    let mut state = DeState::initialize(obj, *config, rng)?;
    loop {
        state.step(obj)?;
    }
}

/// Runs Differential Evolution until the target is hit or the budget runs
/// out.
pub fn de_run(
    spec: &ObjectiveSpec,
    config: &DeConfig,
    budget: EvalBudget,
    rng: &RngStream,
    target: Option<f64>,
) -> Result<RunTrace, Error> {
    config.validate()?;
    let mut tracker = Tracker::new(spec, budget, target);
    let status = finish(search(&mut tracker, config, rng));
    let snapshot = serde_json::to_value(config)?;
    Ok(tracker.into_trace("de", rng.seed(), status, snapshot))
}
