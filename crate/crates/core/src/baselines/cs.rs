//! Cuckoo Search with Lévy flights and a periodic local search from the
//! best nest.

use std::convert::Infallible;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::eval::{Halt, Objective, Tracker};
use crate::local_search::{minimize_bounded, LocalSearchOptions};
use crate::problem::{BoxDomain, EvalBudget, ObjectiveSpec};
use crate::rng::RngStream;
use crate::trace::RunTrace;

use super::finish;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CsConfig {
    pub n_nests: usize,
    /// Fraction of nests abandoned each loop.
    pub pa: f64,
    pub levy_beta: f64,
    /// Lévy step multiplier, relative to each side of the box.
    pub levy_scale: f64,
    /// Loops between local searches.
    pub local_search_period: usize,
    pub local_opts: LocalSearchOptions,
}

impl Default for CsConfig {
    fn default() -> Self {
        Self {
            n_nests: 25,
            pa: 0.25,
            levy_beta: 1.5,
            levy_scale: 0.01,
            local_search_period: 100,
            local_opts: LocalSearchOptions::default(),
        }
    }
}

impl CsConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.n_nests < 2 {
            return Err(Error::InvalidConfig("CS needs at least two nests".into()));
        }
        if !(0.0..=1.0).contains(&self.pa) {
            return Err(Error::InvalidConfig("CS pa must lie in [0, 1]".into()));
        }
        if !(self.levy_beta > 1.0 && self.levy_beta <= 2.0) {
            return Err(Error::InvalidConfig(
                "CS levy_beta must lie in (1, 2]".into(),
            ));
        }
        if !(self.levy_scale > 0.0) || self.local_search_period == 0 {
            return Err(Error::InvalidConfig(
                "CS levy_scale and local_search_period must be positive".into(),
            ));
        }
        self.local_opts.validate()
    }
}

/// Mantegna's scale for the numerator Gaussian.
pub fn mantegna_sigma(beta: f64) -> f64 {
    let num = libm::tgamma(1.0 + beta) * (PI * beta / 2.0).sin();
    let den = libm::tgamma((1.0 + beta) / 2.0) * beta * 2f64.powf((beta - 1.0) / 2.0);
    (num / den).powf(1.0 / beta)
}

/// One Lévy-distributed step per coordinate via Mantegna's ratio
/// `u / |v|^(1/beta)`. At `beta` = 2 the ratio degenerates (its numerator
/// scale vanishes) and the stable law is Gaussian, so standard normals are
/// returned.
pub fn levy_step(rng: &mut RngStream, beta: f64, d: usize) -> Vec<f64> {
    if beta >= 2.0 {
        return (0..d).map(|_| rng.standard_normal()).collect();
    }
    let sigma = mantegna_sigma(beta);
    (0..d)
        .map(|_| {
            let u = rng.normal(sigma);
            let v = rng.standard_normal();
            u / v.abs().powf(1.0 / beta)
        })
        .collect()
}

/// Nest population and loop counters.
#[derive(Debug, Clone)]
pub struct CsState {
    pub config: CsConfig,
    pub nests: Vec<Vec<f64>>,
    /// Minimization sense.
    pub values: Vec<f64>,
    pub loops: usize,
    pub local_searches: usize,
    domain: BoxDomain,
    rng_levy: RngStream,
    rng_nest: RngStream,
    rng_local: RngStream,
}

impl CsState {
    pub fn initialize<O: Objective + ?Sized>(
        obj: &mut O,
        config: CsConfig,
        rng: &RngStream,
    ) -> Result<Self, Halt> {
        let domain = obj.domain().clone();
        let mut rng_nest = rng.child("cs-nest");
        let nests: Vec<Vec<f64>> = (0..config.n_nests)
            .map(|_| rng_nest.point_in(&domain))
            .collect();
        let mut values = Vec::with_capacity(nests.len());
        for x in &nests {
            values.push(obj.value(x)?);
        }
        Ok(Self {
            config,
            nests,
            values,
            loops: 0,
            local_searches: 0,
            domain,
            rng_levy: rng.child("cs-levy"),
            rng_nest,
            rng_local: rng.child("local"),
        })
    }

    pub fn best(&self) -> usize {
        self.values
            .iter()
            .enumerate()
            .fold(0, |b, (i, v)| if *v < self.values[b] { i } else { b })
    }

    /// One loop: Lévy moves, abandonment, and the periodic local search.
    pub fn step<O: Objective + ?Sized>(&mut self, obj: &mut O) -> Result<(), Halt> {
        let n = self.nests.len();
        let dim = self.domain.dim();
        for i in 0..n {
            let step = levy_step(&mut self.rng_levy, self.config.levy_beta, dim);
            let moved: Vec<f64> = self.nests[i]
                .iter()
                .zip(&step)
                .enumerate()
                .map(|(k, (x, s))| x + self.config.levy_scale * self.domain.length(k) * s)
                .collect();
            let moved = self.domain.project(&moved);
            let f = obj.value(&moved)?;
            let j = self.rng_nest.index(n);
            if f < self.values[j] {
                self.nests[j] = moved;
                self.values[j] = f;
            }
        }

        let abandon = (self.config.pa * n as f64).round() as usize;
        if abandon > 0 {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|a, b| self.values[*b].total_cmp(&self.values[*a]));
            for &i in order.iter().take(abandon) {
                self.nests[i] = self.rng_nest.point_in(&self.domain);
                self.values[i] = obj.value(&self.nests[i])?;
            }
        }

        self.loops += 1;
        if self.loops.is_multiple_of(self.config.local_search_period) {
            let b = self.best();
            let res = minimize_bounded(
                obj,
                &self.nests[b],
                &self.config.local_opts,
                &mut self.rng_local,
            );
            self.local_searches += 1;
            if let Some(h) = res.halted {
                return Err(h);
            }
            if res.value <= self.values[b] {
                self.nests[b] = res.x;
                self.values[b] = res.value;
            }
        }
        Ok(())
    }
}

fn search<O: Objective + ?Sized>(
    obj: &mut O,
    config: &CsConfig,
    rng: &RngStream,
) -> Result<Infallible, Halt> {
    let mut state = CsState::initialize(obj, *config, rng)?;
    loop {
        state.step(obj)?;
    }
}

/// Runs Cuckoo Search until the target is hit or the budget runs out.
pub fn cs_run(
    spec: &ObjectiveSpec,
    config: &CsConfig,
    budget: EvalBudget,
    rng: &RngStream,
    target: Option<f64>,
) -> Result<RunTrace, Error> {
    config.validate()?;
    let mut tracker = Tracker::new(spec, budget, target);
    let status = finish(search(&mut tracker, config, rng));
    let snapshot = serde_json::to_value(config)?;
    Ok(tracker.into_trace("cs", rng.seed(), status, snapshot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testbed::registry;
    use crate::trace::RunStatus;

    /// Hill estimate of the survival-function tail exponent from the top
    /// `k` order statistics.
    fn hill(mut xs: Vec<f64>, k: usize) -> f64 {
        xs.sort_by(|a, b| b.total_cmp(a));
        let xk = xs[k];
        k as f64 / xs[..k].iter().map(|x| (x / xk).ln()).sum::<f64>()
    }

    #[test]
    fn mantegna_sigma_at_three_halves() {
        assert!((mantegna_sigma(1.5) - 0.696_574_502_557_696_7).abs() < 1e-12);
    }

    #[test]
    fn tail_exponent_near_beta() {
        let mut rng = RngStream::new(11);
        let xs: Vec<f64> = (0..100_000)
            .map(|_| levy_step(&mut rng, 1.5, 1)[0].abs())
            .collect();
        let alpha = hill(xs, 1_000);
        assert!(alpha > 1.3 && alpha < 1.7, "alpha {alpha}");
    }

    #[test]
    fn beta_two_has_stable_variance() {
        let mut rng = RngStream::new(12);
        let var = |rng: &mut RngStream, n: usize| {
            (0..n)
                .map(|_| levy_step(rng, 2.0, 1)[0].powi(2))
                .sum::<f64>()
                / n as f64
        };
        let small = var(&mut rng, 10_000);
        let large = var(&mut rng, 100_000);
        assert!((small - large).abs() / large < 0.1, "{small} vs {large}");
    }

    #[test]
    fn seeded_levy() {
        let a = levy_step(&mut RngStream::new(3), 1.5, 7);
        let b = levy_step(&mut RngStream::new(3), 1.5, 7);
        assert_eq!(a, b);
    }

    #[test]
    fn solves_sphere() {
        let spec = registry().get("sphere").unwrap();
        let t = cs_run(
            spec,
            &CsConfig::default(),
            EvalBudget::new(20_000),
            &RngStream::new(2),
            Some(0.0),
        )
        .unwrap();
        assert_eq!(t.status, RunStatus::Solved);
    }

    #[test]
    fn local_search_every_period() {
        let spec = registry().get("ackley").unwrap();
        let mut budget = EvalBudget::new(u64::MAX);
        let mut obj = crate::eval::Budgeted::new(spec, &mut budget);
        let mut state =
            CsState::initialize(&mut obj, CsConfig::default(), &RngStream::new(5)).unwrap();
        for _ in 0..99 {
            state.step(&mut obj).unwrap();
        }
        assert_eq!(state.local_searches, 0);
        state.step(&mut obj).unwrap();
        assert_eq!(state.local_searches, 1);
    }

    #[test]
    fn no_abandonment_at_zero_pa() {
        let spec = registry().get("booth").unwrap();
        let mut budget = EvalBudget::new(u64::MAX);
        let mut obj = crate::eval::Budgeted::new(spec, &mut budget);
        let config = CsConfig {
            pa: 0.0,
            ..Default::default()
        };
        let mut state = CsState::initialize(&mut obj, config, &RngStream::new(6)).unwrap();
        for _ in 0..20 {
            let before = state.values.clone();
            state.step(&mut obj).unwrap();
            // without abandonment a nest can only be replaced by a better point
            for (b, a) in before.iter().zip(&state.values) {
                assert!(a <= b);
            }
        }
    }
}
