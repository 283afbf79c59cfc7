//! Bound-constrained local minimization.
//!
//! A limited-memory BFGS iteration with gradient projection onto the box:
//! variables pressing against an active bound are frozen for the step, the
//! trial point is clamped back into the domain, and a backtracking Armijo
//! search (c = 1e-4, halving) picks the step length. The memory is reset
//! whenever the curvature condition fails.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::eval::{Halt, Objective};
use crate::problem::BoxDomain;
use crate::rng::RngStream;

const ARMIJO_C1: f64 = 1e-4;
const MAX_HALVINGS: usize = 50;
const CURVATURE_EPS: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalSearchOptions {
    /// Number of (s, y) correction pairs kept.
    pub memory_pairs: usize,
    pub max_iterations: usize,
    /// Stop once the projected gradient's infinity norm is at most this.
    pub pg_tolerance: f64,
    /// Relative central-difference step, scaled by `max(1, |x[n]|)`.
    pub fd_step: f64,
}

impl Default for LocalSearchOptions {
    fn default() -> Self {
        Self {
            memory_pairs: 10,
            max_iterations: 200,
            pg_tolerance: 1e-9,
            fd_step: 1e-8,
        }
    }
}

impl LocalSearchOptions {
    pub fn validate(&self) -> Result<(), Error> {
        if self.memory_pairs == 0
            || self.max_iterations == 0
            || !(self.pg_tolerance > 0.0)
            || !(self.fd_step > 0.0)
        {
            return Err(Error::InvalidConfig(
                "local search options must all be strictly positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalMinResult {
    pub x: Vec<f64>,
    /// Objective at `x`, minimization sense.
    pub value: f64,
    pub reads_used: u64,
    pub converged: bool,
    pub iterations: usize,
    /// Set when the evaluation context refused further reads.
    pub halted: Option<Halt>,
}

/// Central-difference gradient, two reads per coordinate. Steps are clamped
/// to the box, so a coordinate closer than `h` to a bound gets a one-sided
/// quotient over the shortened interval.
pub fn fd_gradient<O: Objective + ?Sized>(
    obj: &mut O,
    x: &[f64],
    fd_step: f64,
) -> Result<Vec<f64>, Halt> {
    let (lower, upper) = {
        let d = obj.domain();
        (d.lower().to_vec(), d.upper().to_vec())
    };
    let mut probe = x.to_vec();
    let mut grad = Vec::with_capacity(x.len());
    for n in 0..x.len() {
        let h = fd_step * x[n].abs().max(1.0);
        let hi = (x[n] + h).min(upper[n]);
        let lo = (x[n] - h).max(lower[n]);
        probe[n] = hi;
        let f_hi = obj.value(&probe)?;
        probe[n] = lo;
        let f_lo = obj.value(&probe)?;
        probe[n] = x[n];
        grad.push((f_hi - f_lo) / (hi - lo));
    }
    Ok(grad)
}

/// Projected gradient `P(x - g) - x`; zero exactly where the box blocks
/// the descent direction.
pub fn projected_gradient(x: &[f64], g: &[f64], domain: &BoxDomain) -> Vec<f64> {
    x.iter()
        .zip(g)
        .enumerate()
        .map(|(n, (xn, gn))| (xn - gn).clamp(domain.lower()[n], domain.upper()[n]) - xn)
        .collect()
}

fn gradient<O: Objective + ?Sized>(
    obj: &mut O,
    x: &[f64],
    opts: &LocalSearchOptions,
) -> Result<Vec<f64>, Halt> {
    match obj.analytic_gradient(x) {
        Some(g) => Ok(g),
        None => fd_gradient(obj, x, opts.fd_step),
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

struct Pair {
    s: Vec<f64>,
    y: Vec<f64>,
    rho: f64,
}

/// Two-loop recursion: approximate inverse Hessian applied to `g`.
fn two_loop(g: &[f64], memory: &VecDeque<Pair>) -> Vec<f64> {
    let mut q = g.to_vec();
    let mut alphas = Vec::with_capacity(memory.len());
    for p in memory.iter().rev() {
        let a = p.rho * dot(&p.s, &q);
        q.iter_mut().zip(&p.y).for_each(|(qi, yi)| *qi -= a * yi);
        alphas.push(a);
    }
    if let Some(p) = memory.back() {
        let gamma = dot(&p.s, &p.y) / dot(&p.y, &p.y);
        q.iter_mut().for_each(|v| *v *= gamma);
    }
    for (p, a) in memory.iter().zip(alphas.iter().rev()) {
        let b = p.rho * dot(&p.y, &q);
        q.iter_mut()
            .zip(&p.s)
            .for_each(|(qi, si)| *qi += si * (a - b));
    }
    q
}

/// Minimizes `obj` over its box starting from `x0`.
///
/// The returned point is never worse than the (projected) start. On a halt
/// the best point reached is returned with `converged = false`.
pub fn minimize_bounded<O: Objective + ?Sized>(
    obj: &mut O,
    x0: &[f64],
    opts: &LocalSearchOptions,
    _rng: &mut RngStream,
) -> LocalMinResult {
    let start = obj.reads();
    let domain = obj.domain().clone();
    let mut x = domain.project(x0);

    let finish = |obj: &O, x: Vec<f64>, value: f64, converged, iterations, halted| LocalMinResult {
        x,
        value,
        reads_used: obj.reads() - start,
        converged,
        iterations,
        halted,
    };

    let mut f = match obj.value(&x) {
        Ok(v) => v,
        Err(h) => return finish(obj, x, f64::INFINITY, false, 0, Some(h)),
    };
    let mut g = match gradient(obj, &x, opts) {
        Ok(g) => g,
        Err(h) => return finish(obj, x, f, false, 0, Some(h)),
    };

    let mut memory: VecDeque<Pair> = VecDeque::with_capacity(opts.memory_pairs);
    let mut iterations = 0;
    let mut converged = false;

    while iterations < opts.max_iterations {
        if !f.is_finite() || g.iter().any(|v| !v.is_finite()) {
            break;
        }
        let pg = projected_gradient(&x, &g, &domain);
        if norm_inf(&pg) <= opts.pg_tolerance {
            converged = true;
            break;
        }

        let active: Vec<bool> = (0..x.len())
            .map(|n| {
                (x[n] <= domain.lower()[n] && g[n] > 0.0)
                    || (x[n] >= domain.upper()[n] && g[n] < 0.0)
            })
            .collect();
        let g_free: Vec<f64> = g
            .iter()
            .zip(&active)
            .map(|(v, a)| if *a { 0.0 } else { *v })
            .collect();

        let mut dir: Vec<f64> = two_loop(&g_free, &memory)
            .into_iter()
            .zip(&active)
            .map(|(v, a)| if *a { 0.0 } else { -v })
            .collect();
        if !(dot(&dir, &g_free) < 0.0) {
            memory.clear();
            dir = g_free.iter().map(|v| -v).collect();
        }

        let mut alpha = if memory.is_empty() {
            (1.0 / norm_inf(&dir)).min(1.0)
        } else {
            1.0
        };

        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let trial: Vec<f64> = domain.project(
                &x.iter()
                    .zip(&dir)
                    .map(|(xi, di)| xi + alpha * di)
                    .collect::<Vec<_>>(),
            );
            if trial == x {
                break;
            }
            let ft = match obj.value(&trial) {
                Ok(v) => v,
                Err(h) => return finish(obj, x, f, false, iterations, Some(h)),
            };
            let step: Vec<f64> = trial.iter().zip(&x).map(|(a, b)| a - b).collect();
            if ft <= f + ARMIJO_C1 * dot(&g, &step) {
                accepted = Some((trial, ft, step));
                break;
            }
            alpha *= 0.5;
        }
        let Some((x_new, f_new, s)) = accepted else {
            break;
        };
        iterations += 1;

        let g_new = match gradient(obj, &x_new, opts) {
            Ok(g) => g,
            Err(h) => return finish(obj, x_new, f_new, false, iterations, Some(h)),
        };
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > CURVATURE_EPS * dot(&y, &y) && sy > 0.0 {
            if memory.len() == opts.memory_pairs {
                memory.pop_front();
            }
            memory.push_back(Pair {
                s,
                y,
                rho: 1.0 / sy,
            });
        } else {
            memory.clear();
        }
        x = x_new;
        f = f_new;
        g = g_new;
    }

    if !converged && f.is_finite() && g.iter().all(|v| v.is_finite()) {
        converged = norm_inf(&projected_gradient(&x, &g, &domain)) <= opts.pg_tolerance;
    }
    finish(obj, x, f, converged, iterations, None)
}
