//! Counted access to an objective from inside a solver.
//!
//! Solvers see the problem through [`Objective`], always in minimization
//! sense: a maximization objective is negated on the way in. Two adapters
//! exist. [`Budgeted`] only charges a budget. [`Tracker`] also keeps the
//! best-so-far record, samples it on every improvement, and stops the run
//! once the target is reached.

use crate::error::EvalError;
use crate::problem::{BoxDomain, EvalBudget, ObjectiveSpec};
use crate::trace::{RunStatus, RunTrace, Sample};

/// Why a counted evaluation refused to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Halt {
    BudgetExhausted,
    Solved,
}

impl From<Halt> for RunStatus {
    fn from(h: Halt) -> Self {
        match h {
            Halt::BudgetExhausted => RunStatus::BudgetExhausted,
            Halt::Solved => RunStatus::Solved,
        }
    }
}

pub trait Objective {
    fn domain(&self) -> &BoxDomain;

    /// Counted evaluation, minimization sense. Non-finite results come back
    /// as `+inf`.
    fn value(&mut self, x: &[f64]) -> Result<f64, Halt>;

    /// Analytic gradient in minimization sense; free of charge.
    fn analytic_gradient(&self, x: &[f64]) -> Option<Vec<f64>>;

    /// Reads consumed so far.
    fn reads(&self) -> u64;
}

fn internal(spec: &ObjectiveSpec, raw: f64) -> f64 {
    let v = spec.sense().sign() * raw;
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

fn internal_gradient(spec: &ObjectiveSpec, x: &[f64]) -> Option<Vec<f64>> {
    let sign = spec.sense().sign();
    spec.gradient(x)
        .map(|g| g.into_iter().map(|v| sign * v).collect())
}

/// Charges a caller-owned budget and nothing else.
pub struct Budgeted<'a> {
    spec: &'a ObjectiveSpec,
    budget: &'a mut EvalBudget,
}

impl<'a> Budgeted<'a> {
    pub fn new(spec: &'a ObjectiveSpec, budget: &'a mut EvalBudget) -> Self {
        Self { spec, budget }
    }
}

impl Objective for Budgeted<'_> {
    fn domain(&self) -> &BoxDomain {
        self.spec.domain()
    }

    fn value(&mut self, x: &[f64]) -> Result<f64, Halt> {
        match crate::problem::counted_evaluate(self.spec, x, self.budget) {
            Ok(v) => Ok(internal(self.spec, v)),
            Err(EvalError::BudgetExhausted) => Err(Halt::BudgetExhausted),
            Err(EvalError::OutOfDomain) => {
                panic!("solver evaluated {x:?} outside the search domain")
            }
        }
    }

    fn analytic_gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        internal_gradient(self.spec, x)
    }

    fn reads(&self) -> u64 {
        self.budget.used()
    }
}

/// Per-run evaluation context: budget, best-so-far record and halt-on-target.
pub struct Tracker<'a> {
    spec: &'a ObjectiveSpec,
    budget: EvalBudget,
    target: Option<f64>,
    tolerance: f64,
    best: f64,
    best_x: Vec<f64>,
    samples: Vec<Sample>,
    solved_at: Option<u64>,
}

impl<'a> Tracker<'a> {
    pub fn new(spec: &'a ObjectiveSpec, budget: EvalBudget, target: Option<f64>) -> Self {
        Self {
            spec,
            budget,
            target,
            tolerance: spec.tolerance(),
            best: f64::INFINITY,
            best_x: Vec::new(),
            samples: Vec::new(),
            solved_at: None,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn spec(&self) -> &ObjectiveSpec {
        self.spec
    }

    pub fn budget(&self) -> &EvalBudget {
        &self.budget
    }

    /// Best value seen so far, minimization sense.
    pub fn best(&self) -> f64 {
        self.best
    }

    pub fn best_position(&self) -> &[f64] {
        &self.best_x
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn solved_at(&self) -> Option<u64> {
        self.solved_at
    }

    pub fn into_trace(
        self,
        algorithm: &str,
        seed: u64,
        status: RunStatus,
        config: serde_json::Value,
    ) -> RunTrace {
        let sign = self.spec.sense().sign();
        let mut samples = self.samples;
        let reads = self.budget.used();
        if let Some(last) = samples.last().copied() {
            if last.reads < reads {
                samples.push(Sample {
                    reads,
                    best_value: last.best_value,
                });
            }
        }
        RunTrace {
            algorithm: algorithm.to_string(),
            objective: self.spec.name().to_string(),
            seed,
            samples,
            status,
            solved_at_reads: self.solved_at,
            reads_used: reads,
            best_value: sign * self.best,
            best_position: self.best_x,
            target: self.target,
            config,
        }
    }
}

impl Objective for Tracker<'_> {
    fn domain(&self) -> &BoxDomain {
        self.spec.domain()
    }

    fn value(&mut self, x: &[f64]) -> Result<f64, Halt> {
        if self.solved_at.is_some() {
            return Err(Halt::Solved);
        }
        if self.budget.charge().is_err() {
            return Err(Halt::BudgetExhausted);
        }
        assert!(
            self.spec.domain().contains(x),
            "solver evaluated {x:?} outside the search domain"
        );
        let raw = self.spec.evaluate(x);
        let v = internal(self.spec, raw);
        if v < self.best {
            self.best = v;
            self.best_x.clear();
            self.best_x.extend_from_slice(x);
            let reads = self.budget.used();
            self.samples.push(Sample {
                reads,
                best_value: raw,
            });
            if let Some(t) = self.target {
                if (raw - t).abs() <= self.tolerance {
                    self.solved_at = Some(reads);
                    return Err(Halt::Solved);
                }
            }
        }
        Ok(v)
    }

    fn analytic_gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        internal_gradient(self.spec, x)
    }

    fn reads(&self) -> u64 {
        self.budget.used()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::Sense;

    fn sphere() -> ObjectiveSpec {
        ObjectiveSpec::new("sphere", BoxDomain::cube(-10.0, 10.0, 2).unwrap(), |x| {
            x.iter().map(|v| v * v).sum()
        })
    }

    #[test]
    fn tracker_samples_only_improvements() {
        let spec = sphere();
        let mut t = Tracker::new(&spec, EvalBudget::new(100), None);
        for x in [[3.0, 4.0], [5.0, 5.0], [1.0, 0.0], [2.0, 0.0]] {
            t.value(&x).unwrap();
        }
        let trace = t.into_trace(
            "test",
            0,
            RunStatus::BudgetExhausted,
            serde_json::Value::Null,
        );
        let s: Vec<(u64, f64)> = trace
            .samples
            .iter()
            .map(|s| (s.reads, s.best_value))
            .collect();
        assert_eq!(s, vec![(1, 25.0), (3, 1.0), (4, 1.0)]);
        assert_eq!(trace.reads_used, 4);
    }

    #[test]
    fn tracker_halts_on_target() {
        let spec = sphere();
        let mut t = Tracker::new(&spec, EvalBudget::new(100), Some(0.0));
        t.value(&[1.0, 1.0]).unwrap();
        assert_eq!(t.value(&[0.0, 1e-4]), Err(Halt::Solved));
        assert_eq!(t.solved_at(), Some(2));
        assert_eq!(t.value(&[0.0, 0.0]), Err(Halt::Solved));
        assert_eq!(t.budget().used(), 2);
    }

    #[test]
    fn tracker_stops_at_limit() {
        let spec = sphere();
        let mut t = Tracker::new(&spec, EvalBudget::new(2), None);
        t.value(&[1.0, 1.0]).unwrap();
        t.value(&[1.0, 1.0]).unwrap();
        assert_eq!(t.value(&[1.0, 1.0]), Err(Halt::BudgetExhausted));
        assert_eq!(t.reads(), 2);
    }

    #[test]
    fn maximization_is_negated_internally() {
        let spec = ObjectiveSpec::new("negsphere", BoxDomain::cube(-1.0, 1.0, 1).unwrap(), |x| {
            -x[0] * x[0]
        })
        .with_gradient(|x| vec![-2.0 * x[0]])
        .with_sense(Sense::Maximize);
        let mut t = Tracker::new(&spec, EvalBudget::new(10), Some(0.0));
        assert_eq!(t.value(&[0.5]).unwrap(), 0.25);
        assert_eq!(t.analytic_gradient(&[0.5]).unwrap(), vec![1.0]);
        assert_eq!(t.value(&[0.0]), Err(Halt::Solved));
        let trace = t.into_trace("test", 0, RunStatus::Solved, serde_json::Value::Null);
        assert_eq!(trace.best_value, 0.0);
        assert_eq!(trace.samples[0].best_value, -0.25);
    }

    #[test]
    fn nan_is_treated_as_infinite() {
        let spec = ObjectiveSpec::new("nan", BoxDomain::cube(-1.0, 1.0, 1).unwrap(), |_| f64::NAN);
        let mut t = Tracker::new(&spec, EvalBudget::new(10), None);
        assert_eq!(t.value(&[0.0]).unwrap(), f64::INFINITY);
        assert!(t.samples().is_empty());
    }
}
