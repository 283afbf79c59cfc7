//! Walker swarm: value scaling, flows and cloning.

use crate::problem::BoxDomain;
use crate::rng::RngStream;

use super::tabu::TabuList;

/// Min-max scaling onto `[0, 1]`. All zeros when every value is equal.
/// Non-finite values sit at the top of the scale (1).
pub fn scale_values(values: &[f64]) -> Vec<f64> {
    let finite = values.iter().copied().filter(|v| v.is_finite());
    let (min, max) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    values
        .iter()
        .map(|&v| {
            if !v.is_finite() {
                1.0
            } else if max > min {
                ((v - min) / (max - min)).clamp(0.0, 1.0)
            } else {
                0.0
            }
        })
        .collect()
}

/// Squared Euclidean distance.
pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// `(phi + 1)^2 * d2 * delta2`.
pub fn walker_flow(phi: f64, d2: f64, delta2: f64) -> f64 {
    (phi + 1.0).powi(2) * d2 * delta2
}

/// Probability that the holder of flow `f_self` copies the holder of
/// `f_other`. Zero when the other flow is larger or `f_self` is zero.
pub fn clone_probability(f_self: f64, f_other: f64) -> f64 {
    if f_other > f_self || f_self <= 0.0 {
        0.0
    } else {
        ((f_self - f_other) / f_self).min(1.0)
    }
}

fn bitwise_eq(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
}

/// Index of a minimum of `values`; ties broken uniformly at random.
pub fn argmin_random(values: &[f64], rng: &mut RngStream) -> usize {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let ties: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == min)
        .map(|(i, _)| i)
        .collect();
    match ties.len() {
        0 => 0,
        1 => ties[0],
        n => ties[rng.index(n)],
    }
}

/// Positions with their values (minimization sense), scaled values and flows.
#[derive(Debug, Clone, PartialEq)]
pub struct Swarm {
    pub positions: Vec<Vec<f64>>,
    pub values: Vec<f64>,
    pub phis: Vec<f64>,
    pub flows: Vec<f64>,
}

impl Swarm {
    pub fn new(positions: Vec<Vec<f64>>, values: Vec<f64>) -> Self {
        assert_eq!(positions.len(), values.len());
        let phis = scale_values(&values);
        let flows = vec![0.0; values.len()];
        Self {
            positions,
            values,
            phis,
            flows,
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn rescale(&mut self) {
        self.phis = scale_values(&self.values);
    }

    fn copy_from(&mut self, i: usize, pre: &Swarm, k: usize) {
        self.positions[i].clone_from(&pre.positions[k]);
        self.values[i] = pre.values[k];
        self.phis[i] = pre.phis[k];
        self.flows[i] = pre.flows[k];
    }
}

/// Flow of every walker against a random partner and a random tabu memory.
pub fn compute_flows(swarm: &mut Swarm, tabu: &TabuList, rng: &mut RngStream) {
    let n = swarm.len();
    for i in 0..n {
        let j = rng.index_excluding(n, i);
        let r = rng.index(tabu.len());
        let xi = &swarm.positions[i];
        let d2 = squared_distance(xi, &swarm.positions[j]);
        let t = &tabu.memories[r];
        let delta2 = if bitwise_eq(xi, t) {
            1.0
        } else {
            squared_distance(xi, t)
        };
        swarm.flows[i] = walker_flow(swarm.phis[i], d2, delta2);
    }
}

/// Every walker draws a clone target and copies its full state with the
/// clone probability. Decisions use the flows as they stand on entry and
/// are applied together.
pub fn apply_cloning(swarm: &mut Swarm, rng: &mut RngStream) {
    let n = swarm.len();
    let pre = swarm.clone();
    for i in 0..n {
        let k = rng.index_excluding(n, i);
        let p = clone_probability(pre.flows[i], pre.flows[k]);
        if rng.uniform() < p {
            swarm.copy_from(i, &pre, k);
        }
    }
}

/// Flow computation followed by the cloning pass.
pub fn flow_and_clone_pass(swarm: &mut Swarm, tabu: &TabuList, rng: &mut RngStream) {
    assert!(swarm.len() >= 2, "cloning needs at least two walkers");
    compute_flows(swarm, tabu, rng);
    apply_cloning(swarm, rng);
}

/// Scaled-value-weighted centroid, projected onto the domain. Falls back to
/// the plain mean when every weight is zero.
pub fn center_of_mass(swarm: &Swarm, domain: &BoxDomain) -> Vec<f64> {
    let dim = domain.dim();
    let total: f64 = swarm.phis.iter().sum();
    let mut c = vec![0.0; dim];
    if total > 0.0 {
        for (x, w) in swarm.positions.iter().zip(&swarm.phis) {
            c.iter_mut().zip(x).for_each(|(ci, xi)| *ci += w * xi);
        }
        c.iter_mut().for_each(|ci| *ci /= total);
    } else {
        for x in &swarm.positions {
            c.iter_mut().zip(x).for_each(|(ci, xi)| *ci += xi);
        }
        let n = swarm.len() as f64;
        c.iter_mut().for_each(|ci| *ci /= n);
    }
    domain.project(&c)
}
