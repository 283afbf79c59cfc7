//! Benchmark orchestration: seeded single and concurrent runs, success
//! curves over function reads, and result files.

pub mod curves;
pub mod export;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{bh_run, cs_run, de_run, BhConfig, CsConfig, DeConfig};
use crate::error::Error;
use crate::gas::{gas_run, GasConfig};
use crate::problem::{EvalBudget, ObjectiveSpec};
use crate::rng::{derive_seed, RngStream};
use crate::testbed::registry;
use crate::trace::RunTrace;

pub use curves::{log_grid, panel_sizes, success_curve, FunctionRuns, SuccessCurve};
pub use export::{export_results, read_traces_csv, write_traces_csv, BenchmarkResults};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Gas,
    Bh,
    Cs,
    De,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Gas, Algorithm::Bh, Algorithm::Cs, Algorithm::De];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Gas => "gas",
            Algorithm::Bh => "bh",
            Algorithm::Cs => "cs",
            Algorithm::De => "de",
        }
    }

    /// One run with default settings. Supplying a target disables the GAS
    /// stability halt.
    pub fn run(
        self,
        spec: &ObjectiveSpec,
        budget: u64,
        seed: u64,
        target: Option<f64>,
    ) -> Result<RunTrace, Error> {
        let budget = EvalBudget::new(budget);
        let rng = RngStream::new(seed);
        match self {
            Algorithm::Gas => gas_run(spec, &GasConfig::default(), budget, &rng, target),
            Algorithm::Bh => bh_run(spec, &BhConfig::default(), budget, &rng, target),
            Algorithm::Cs => cs_run(spec, &CsConfig::default(), budget, &rng, target),
            Algorithm::De => de_run(spec, &DeConfig::default(), budget, &rng, target),
        }
    }

    /// Comma-separated list, duplicates dropped.
    pub fn parse_list(s: &str) -> Result<Vec<Algorithm>, Error> {
        let mut out = Vec::new();
        for token in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let a: Algorithm = token.parse()?;
            if !out.contains(&a) {
                out.push(a);
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidConfig("empty algorithm selection".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "gas" => Ok(Algorithm::Gas),
            "bh" => Ok(Algorithm::Bh),
            "cs" => Ok(Algorithm::Cs),
            "de" => Ok(Algorithm::De),
            _ => Err(Error::UnknownAlgorithm(s.to_string())),
        }
    }
}

/// One run against the registry's known minimum.
pub fn run_single(
    algo: Algorithm,
    function: &str,
    budget: u64,
    seed: u64,
) -> Result<RunTrace, Error> {
    let spec = registry().get(function)?;
    algo.run(spec, budget, seed, Some(spec.known_min_value()))
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, Error> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))
}

/// `t` independent runs, each with the full `budget`. Run `i` uses seed
/// `derive_seed(base_seed, i)`, so the first `t` runs of a larger batch are
/// exactly this batch.
pub fn run_concurrent(
    algo: Algorithm,
    function: &str,
    budget: u64,
    t: usize,
    base_seed: u64,
    workers: usize,
) -> Result<Vec<RunTrace>, Error> {
    if t == 0 {
        return Err(Error::InvalidConfig("need at least one run".into()));
    }
    registry().get(function)?;
    pool(workers)?.install(|| {
        (0..t)
            .into_par_iter()
            .map(|i| run_single(algo, function, budget, derive_seed(base_seed, i as u64)))
            .collect()
    })
}

/// A full benchmark: every algorithm on every function, `runs` times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkPlan {
    pub algorithms: Vec<Algorithm>,
    pub functions: Vec<String>,
    pub budget: u64,
    pub runs: usize,
    pub base_seed: u64,
    pub sample_grid: Vec<u64>,
}

impl BenchmarkPlan {
    /// Plan with the default logarithmic checkpoint grid.
    pub fn new(
        algorithms: Vec<Algorithm>,
        functions: Vec<String>,
        budget: u64,
        runs: usize,
        base_seed: u64,
    ) -> Result<Self, Error> {
        let plan = Self {
            algorithms,
            functions,
            budget,
            runs,
            base_seed,
            sample_grid: log_grid(budget),
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.algorithms.is_empty() || self.functions.is_empty() {
            return Err(Error::InvalidConfig(
                "plan needs algorithms and functions".into(),
            ));
        }
        if self.budget == 0 || self.runs == 0 {
            return Err(Error::InvalidConfig(
                "budget and runs must be positive".into(),
            ));
        }
        if self.sample_grid.iter().any(|&b| b > self.budget) {
            return Err(Error::InvalidConfig("checkpoint beyond the budget".into()));
        }
        for f in &self.functions {
            registry().get(f)?;
        }
        Ok(())
    }

    /// Executes every run on `workers` threads. Output order is fixed by
    /// the plan (algorithm, function, run) whatever the scheduling.
    pub fn execute(&self, workers: usize) -> Result<BenchmarkResults, Error> {
        self.validate()?;
        let jobs: Vec<(Algorithm, &str, usize)> = self
            .algorithms
            .iter()
            .flat_map(|&a| {
                self.functions
                    .iter()
                    .flat_map(move |f| (0..self.runs).map(move |r| (a, f.as_str(), r)))
            })
            .collect();
        let traces: Vec<RunTrace> = pool(workers)?.install(|| {
            jobs.par_iter()
                .map(|&(a, f, r)| {
                    run_single(a, f, self.budget, derive_seed(self.base_seed, r as u64))
                })
                .collect::<Result<_, Error>>()
        })?;
        let records = jobs
            .iter()
            .zip(traces)
            .map(|(&(algorithm, function, run_id), trace)| RunRecord {
                algorithm,
                function: function.to_string(),
                run_id,
                trace,
            })
            .collect();
        Ok(BenchmarkResults {
            plan: self.clone(),
            records,
        })
    }
}

/// A trace tagged with its place in a plan.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub algorithm: Algorithm,
    pub function: String,
    pub run_id: usize,
    pub trace: RunTrace,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::RunStatus;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.as_str().parse::<Algorithm>().unwrap(), a);
        }
        assert!(matches!(
            "pso".parse::<Algorithm>(),
            Err(Error::UnknownAlgorithm(_))
        ));
        assert_eq!(
            Algorithm::parse_list("gas, de,gas").unwrap(),
            vec![Algorithm::Gas, Algorithm::De]
        );
    }

    #[test]
    fn single_run_on_sphere() {
        let a = run_single(Algorithm::Gas, "sphere", 10_000, 1).unwrap();
        assert_eq!(a.status, RunStatus::Solved);
        assert!(a.solved_at_reads.unwrap() <= 10_000);
        assert_eq!(a, run_single(Algorithm::Gas, "sphere", 10_000, 1).unwrap());
    }

    #[test]
    fn tiny_budget_de_on_lj10() {
        let t = run_single(Algorithm::De, "lj10", 1_000, 7).unwrap();
        assert_eq!(t.status, RunStatus::BudgetExhausted);
        assert_eq!(t.reads_used, 1_000);
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(
            run_single(Algorithm::Gas, "nope", 10, 0),
            Err(Error::UnknownFunction(_))
        ));
    }

    #[test]
    fn one_concurrent_run_is_a_single_run() {
        let c = run_concurrent(Algorithm::Bh, "booth", 2_000, 1, 5, 2).unwrap();
        assert_eq!(
            c,
            vec![run_single(Algorithm::Bh, "booth", 2_000, derive_seed(5, 0)).unwrap()]
        );
    }

    #[test]
    fn concurrent_runs_nest_and_ignore_workers() {
        let small = run_concurrent(Algorithm::Cs, "matyas", 1_500, 2, 9, 1).unwrap();
        let large = run_concurrent(Algorithm::Cs, "matyas", 1_500, 4, 9, 3).unwrap();
        assert_eq!(small[..], large[..2]);
    }
}
