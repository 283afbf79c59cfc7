//! Success-fraction curves over function reads.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Number of checkpoints in the default grid.
pub const GRID_POINTS: usize = 30;
const GRID_START: u64 = 100;

/// Logarithmically spaced integer checkpoints from 100 (or the budget, if
/// smaller) up to the budget, at most [`GRID_POINTS`] of them.
pub fn log_grid(budget: u64) -> Vec<u64> {
    if budget == 0 {
        return Vec::new();
    }
    let lo = (GRID_START.min(budget) as f64).log10();
    let hi = (budget as f64).log10();
    let mut grid: Vec<u64> = (0..GRID_POINTS)
        .map(|k| {
            let e = lo + (hi - lo) * k as f64 / (GRID_POINTS - 1) as f64;
            (10f64.powf(e).round() as u64).clamp(1, budget)
        })
        .collect();
    *grid.last_mut().unwrap() = budget;
    grid.dedup();
    grid
}

/// Run counts shown as panels: 1, 10, 20 and 50 where available, plus the
/// full run count.
pub fn panel_sizes(runs: usize) -> Vec<usize> {
    let mut sizes: Vec<usize> = [1, 10, 20, 50].into_iter().filter(|&t| t <= runs).collect();
    if runs > 0 && !sizes.contains(&runs) {
        sizes.push(runs);
    }
    sizes
}

/// Solve read counts of the runs of one function, in run order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionRuns {
    pub function: String,
    pub solved_at: Vec<Option<u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuccessCurve {
    pub algorithm: String,
    pub runs_t: usize,
    /// `(reads, fraction of functions solved)`.
    pub points: Vec<(u64, f64)>,
}

/// Fraction of functions that any of their first `t` runs had solved by
/// each checkpoint.
pub fn success_curve(
    algorithm: &str,
    groups: &[FunctionRuns],
    grid: &[u64],
    t: usize,
) -> Result<SuccessCurve, Error> {
    if t == 0 {
        return Err(Error::InvalidConfig("curve needs at least one run".into()));
    }
    let mut first_solve = Vec::with_capacity(groups.len());
    for g in groups {
        if g.solved_at.len() < t {
            return Err(Error::IncompleteData(format!(
                "{algorithm}/{}: {} runs, {t} needed",
                g.function,
                g.solved_at.len()
            )));
        }
        first_solve.push(g.solved_at[..t].iter().flatten().copied().min());
    }
    let total = groups.len();
    let points = grid
        .iter()
        .map(|&b| {
            let solved = first_solve
                .iter()
                .filter(|s| s.is_some_and(|r| r <= b))
                .count();
            let fraction = if total == 0 {
                0.0
            } else {
                solved as f64 / total as f64
            };
            (b, fraction)
        })
        .collect();
    Ok(SuccessCurve {
        algorithm: algorithm.to_string(),
        runs_t: t,
        points,
    })
}
