//! Tabu memory list and its flow-and-cloning routine.

use crate::rng::RngStream;

use super::swarm::{clone_probability, scale_values, squared_distance};

/// `(phi_t + 1)^2 * d2`.
pub fn tabu_flow(phi_t: f64, d2: f64) -> f64 {
    (phi_t + 1.0).powi(2) * d2
}

/// Fixed-size list of remembered local minima.
#[derive(Debug, Clone, PartialEq)]
pub struct TabuList {
    pub memories: Vec<Vec<f64>>,
    /// Objective values, minimization sense.
    pub values: Vec<f64>,
    pub flows: Vec<f64>,
}

impl TabuList {
    /// `n` copies of the same memory.
    pub fn filled(memory: Vec<f64>, value: f64, n: usize) -> Self {
        Self {
            memories: vec![memory; n],
            values: vec![value; n],
            flows: vec![0.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.memories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memories.is_empty()
    }

    /// Index of the lowest-valued memory (first on ties).
    pub fn best(&self) -> usize {
        self.values
            .iter()
            .enumerate()
            .fold(0, |b, (i, v)| if *v < self.values[b] { i } else { b })
    }
}

/// Overwrites a random slot with `t_new`, returning the slot.
pub fn memory_insert(tabu: &mut TabuList, t_new: &[f64], value: f64, rng: &mut RngStream) -> usize {
    let slot = rng.index(tabu.len());
    tabu.memories[slot] = t_new.to_vec();
    tabu.values[slot] = value;
    slot
}

/// Flow and cloning among the memories: every memory picks a partner,
/// scores its flow against it, and copies it with the clone probability.
/// Decisions are taken on the entry state and applied together.
pub fn memory_churn(tabu: &mut TabuList, rng: &mut RngStream) {
    let n = tabu.len();
    if n < 2 {
        return;
    }
    let phis = scale_values(&tabu.values);
    let partners: Vec<usize> = (0..n).map(|r| rng.index_excluding(n, r)).collect();
    for r in 0..n {
        let d2 = squared_distance(&tabu.memories[r], &tabu.memories[partners[r]]);
        tabu.flows[r] = tabu_flow(phis[r], d2);
    }
    let pre = tabu.clone();
    for (r, &s) in partners.iter().enumerate() {
        let p = clone_probability(pre.flows[r], pre.flows[s]);
        if rng.uniform() < p {
            tabu.memories[r].clone_from(&pre.memories[s]);
            tabu.values[r] = pre.values[s];
            tabu.flows[r] = pre.flows[s];
        }
    }
}

/// Insert followed by churn. Returns the overwritten slot.
pub fn memory_insert_and_churn(
    tabu: &mut TabuList,
    t_new: &[f64],
    value: f64,
    rng: &mut RngStream,
) -> usize {
    let slot = memory_insert(tabu, t_new, value, rng);
    memory_churn(tabu, rng);
    slot
}
