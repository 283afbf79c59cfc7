//! Objectives, search domains and function-read accounting.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, EvalError};

/// Axis-aligned compact search domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxDomain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxDomain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, Error> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::InvalidDomain(format!(
                "bounds must be non-empty and of equal length (got {} and {})",
                lower.len(),
                upper.len()
            )));
        }
        for (n, (l, u)) in lower.iter().zip(&upper).enumerate() {
            if !(l.is_finite() && u.is_finite() && l < u) {
                return Err(Error::InvalidDomain(format!(
                    "dimension {n}: need finite lower < upper, got [{l}, {u}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[lower, upper]` on every one of `dim` axes.
    pub fn cube(lower: f64, upper: f64, dim: usize) -> Result<Self, Error> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Edge length of axis `n`.
    pub fn length(&self, n: usize) -> f64 {
        self.upper[n] - self.lower[n]
    }

    pub fn lengths(&self) -> Vec<f64> {
        (0..self.dim()).map(|n| self.length(n)).collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| *l <= *v && *v <= *u)
    }

    /// Componentwise clamp onto the box.
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(v, (l, u))| v.clamp(*l, *u))
            .collect()
    }

    pub fn center(&self) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| 0.5 * (l + u))
            .collect()
    }
}

/// Componentwise clamp of `x` onto `domain`.
pub fn project(x: &[f64], domain: &BoxDomain) -> Vec<f64> {
    domain.project(x)
}

/// Whether the objective is to be minimized or maximized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    #[default]
    Minimize,
    Maximize,
}

impl Sense {
    /// Factor mapping the objective onto the internal minimization problem.
    pub fn sign(self) -> f64 {
        match self {
            Sense::Minimize => 1.0,
            Sense::Maximize => -1.0,
        }
    }
}

pub type EvalFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
pub type GradFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// Success tolerance applied when an objective does not set its own.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// A named objective with its search domain and known optimum.
#[derive(Clone)]
pub struct ObjectiveSpec {
    name: String,
    domain: BoxDomain,
    evaluate: EvalFn,
    gradient: Option<GradFn>,
    known_min_value: f64,
    known_min_position: Option<Vec<f64>>,
    sense: Sense,
    tolerance: f64,
}

impl ObjectiveSpec {
    pub fn new<F>(name: impl Into<String>, domain: BoxDomain, evaluate: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            domain,
            evaluate: Arc::new(evaluate),
            gradient: None,
            known_min_value: f64::NAN,
            known_min_position: None,
            sense: Sense::Minimize,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_gradient<G>(mut self, gradient: G) -> Self
    where
        G: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        self.gradient = Some(Arc::new(gradient));
        self
    }

    /// Records the known optimum. For a maximization objective this is the
    /// known maximum.
    pub fn with_known_min(mut self, value: f64, position: Option<Vec<f64>>) -> Self {
        self.known_min_value = value;
        self.known_min_position = position;
        self
    }

    pub fn with_sense(mut self, sense: Sense) -> Self {
        self.sense = sense;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.domain.dim()
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn known_min_value(&self) -> f64 {
        self.known_min_value
    }

    pub fn known_min_position(&self) -> Option<&[f64]> {
        self.known_min_position.as_deref()
    }

    pub fn has_gradient(&self) -> bool {
        self.gradient.is_some()
    }

    /// Uncounted evaluation. Solvers go through [`counted_evaluate`] or a
    /// [`crate::Tracker`] instead.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        (self.evaluate)(x)
    }

    /// Analytic gradient, if the objective provides one. Costs no reads.
    pub fn gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        self.gradient.as_ref().map(|g| g(x))
    }
}

impl fmt::Debug for ObjectiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveSpec")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("has_gradient", &self.gradient.is_some())
            .field("known_min_value", &self.known_min_value)
            .field("sense", &self.sense)
            .finish()
    }
}

/// Function-read counter with a hard limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalBudget {
    counter: u64,
    limit: u64,
}

impl EvalBudget {
    pub fn new(limit: u64) -> Self {
        Self { counter: 0, limit }
    }

    pub fn used(&self) -> u64 {
        self.counter
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.counter
    }

    pub fn is_exhausted(&self) -> bool {
        self.counter >= self.limit
    }

    /// Consumes one read.
    pub fn charge(&mut self) -> Result<(), EvalError> {
        if self.is_exhausted() {
            return Err(EvalError::BudgetExhausted);
        }
        self.counter += 1;
        Ok(())
    }
}

/// Evaluates `spec` at `x`, charging exactly one read to `budget`.
pub fn counted_evaluate(
    spec: &ObjectiveSpec,
    x: &[f64],
    budget: &mut EvalBudget,
) -> Result<f64, EvalError> {
    if budget.is_exhausted() {
        return Err(EvalError::BudgetExhausted);
    }
    if !spec.domain().contains(x) {
        return Err(EvalError::OutOfDomain);
    }
    budget.charge()?;
    Ok(spec.evaluate(x))
}
