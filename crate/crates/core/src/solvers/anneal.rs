//! Simulated annealing over QUBO objectives.
//!
//! Stand-in for an annealer: each read starts from a random assignment and
//! runs single-bit-flip Metropolis sweeps over a geometric temperature
//! schedule. The best sample over all reads is returned.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::qubo::Qubo;
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealParams {
    pub num_reads: usize,
    pub sweeps: usize,
    /// Acceptance probability of an uphill move of the largest coefficient
    /// magnitude at the starting temperature.
    pub initial_acceptance: f64,
    pub t_cold: f64,
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams {
            num_reads: 100,
            sweeps: 200,
            initial_acceptance: 0.8,
            t_cold: 0.05,
        }
    }
}

impl AnnealParams {
    /// Geometric schedule from the hot to the cold temperature, one entry per
    /// sweep.
    pub fn schedule(&self, q: &Qubo) -> Vec<f64> {
        let scale = q
            .linear()
            .values()
            .chain(q.quadratic().values())
            .fold(0.0f64, |m, c| m.max(c.abs()));
        let t_hot = (scale / (1.0 / self.initial_acceptance).ln()).max(self.t_cold);
        if self.sweeps <= 1 {
            return vec![t_hot; self.sweeps];
        }
        let ratio = (self.t_cold / t_hot).powf(1.0 / (self.sweeps - 1) as f64);
        (0..self.sweeps)
            .map(|k| t_hot * ratio.powi(k as i32))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSummary {
    pub reads: usize,
    /// Reads whose best sample reached the returned value.
    pub best_hits: usize,
    pub mean_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnealOutcome {
    pub assignment: Vec<bool>,
    pub value: f64,
    pub summary: SampleSummary,
}

/// Adjacency-list view of a QUBO for fast local-field updates.
struct Dense {
    linear: Vec<f64>,
    couplings: Vec<Vec<(usize, f64)>>,
}

impl Dense {
    fn new(q: &Qubo) -> Self {
        let n = q.num_vars();
        let mut linear = vec![0.0; n];
        for (&i, &c) in q.linear() {
            linear[i] = c;
        }
        let mut couplings = vec![Vec::new(); n];
        for (&(i, j), &c) in q.quadratic() {
            couplings[i].push((j, c));
            couplings[j].push((i, c));
        }
        Dense { linear, couplings }
    }

    fn read(&self, schedule: &[f64], mut rng: rng::Rng) -> (Vec<bool>, f64) {
        let n = self.linear.len();
        let mut x: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        // field[i] = a_i + sum_j a_ij x_j
        let mut field = self.linear.clone();
        let mut energy = 0.0;
        for i in 0..n {
            if x[i] {
                energy += self.linear[i];
                for &(j, c) in &self.couplings[i] {
                    field[j] += c;
                    if j < i && x[j] {
                        energy += c;
                    }
                }
            }
        }
        let mut best = (x.clone(), energy);
        for &t in schedule {
            for i in 0..n {
                let delta = if x[i] { -field[i] } else { field[i] };
                if delta <= 0.0 || rng.gen::<f64>() < (-delta / t).exp() {
                    x[i] = !x[i];
                    energy += delta;
                    let sign = if x[i] { 1.0 } else { -1.0 };
                    for &(j, c) in &self.couplings[i] {
                        field[j] += sign * c;
                    }
                    if energy < best.1 {
                        best = (x.clone(), energy);
                    }
                }
            }
        }
        best
    }
}

/// Anneals `q` with `params.num_reads` independent reads. Read `r` draws from
/// stream `r` of `seed`, so the outcome does not depend on thread count.
pub fn anneal_qubo(q: &Qubo, params: &AnnealParams, seed: u64) -> AnnealOutcome {
    assert!(
        params.num_reads >= 1 && params.sweeps >= 1,
        "need at least one read and one sweep"
    );
    let dense = Dense::new(q);
    let schedule = params.schedule(q);
    let samples: Vec<(Vec<bool>, f64)> = (0..params.num_reads)
        .into_par_iter()
        .map(|r| {
            let (x, _) = dense.read(&schedule, rng::stream(seed, r as u64));
            // exact re-evaluation, free of incremental round-off
            let value = q.evaluate(&x).expect("sample covers every variable");
            (x, value)
        })
        .collect();
    let best = samples
        .iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| a.1.total_cmp(&b.1).then(ia.cmp(ib)))
        .map(|(i, _)| i)
        .expect("at least one read");
    let value = samples[best].1;
    let summary = SampleSummary {
        reads: samples.len(),
        best_hits: samples.iter().filter(|s| s.1 == value).count(),
        mean_value: samples.iter().map(|s| s.1).sum::<f64>() / samples.len() as f64,
    };
    AnnealOutcome {
        assignment: samples[best].0.clone(),
        value,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn triangle_clique() {
        let q = Qubo::max_clique(&Graph::empty(3).complement());
        let params = AnnealParams {
            num_reads: 100,
            sweeps: 100,
            ..Default::default()
        };
        let out = anneal_qubo(&q, &params, 1);
        assert_eq!(out.value, -3.0);
        assert_eq!(out.assignment, vec![true; 3]);
    }

    #[test]
    fn edge_cover() {
        let q = Qubo::min_vertex_cover(&Graph::from_edges(2, &[(0, 1)]).unwrap());
        let out = anneal_qubo(&q, &AnnealParams::default(), 5);
        assert_eq!(out.value, 1.0);
        assert_eq!(out.summary.reads, 100);
        assert!(out.summary.best_hits >= 1);
    }

    #[test]
    fn single_variable_reaches_optimum() {
        for c in [-2.0, 3.0] {
            let mut q = Qubo::new(1);
            q.add_linear(0, c);
            let params = AnnealParams {
                num_reads: 2,
                sweeps: 1,
                ..Default::default()
            };
            assert_eq!(anneal_qubo(&q, &params, 0).value, c.min(0.0));
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let g = Graph::erdos_renyi(14, 0.5, 3);
        let q = Qubo::max_clique(&g);
        let params = AnnealParams {
            num_reads: 8,
            sweeps: 20,
            ..Default::default()
        };
        assert_eq!(anneal_qubo(&q, &params, 11), anneal_qubo(&q, &params, 11));
    }

    #[test]
    fn schedule_is_geometric_and_cooling() {
        let q = Qubo::max_clique(&Graph::erdos_renyi(6, 0.5, 0));
        let params = AnnealParams::default();
        let s = params.schedule(&q);
        assert_eq!(s.len(), 200);
        assert!((s[199] - 0.05).abs() < 1e-12);
        assert!((s[0] - 2.0 / (1.0f64 / 0.8).ln()).abs() < 1e-12);
        let r = s[1] / s[0];
        assert!(s.windows(2).all(|w| ((w[1] / w[0]) - r).abs() < 1e-9));
    }

    #[test]
    fn empty_objective() {
        let mut q = Qubo::new(0);
        q.add_offset(4.0);
        let out = anneal_qubo(&q, &AnnealParams::default(), 0);
        assert_eq!(out.value, 4.0);
        assert!(out.assignment.is_empty());
    }
}
