//! Sign-reshuffling null model and Z scores.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::solver::{solve_exact, FrustrationResult, SolverConfig};

/// Same topology with exactly `m⁻` edges, chosen uniformly without
/// replacement, carrying the negative sign.
pub fn reshuffle(g: &SignedGraph, seed: u64) -> SignedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = g.edge_count();
    let mut negative = vec![false; m];
    for i in sample(&mut rng, m, g.negative_edge_count()) {
        negative[i] = true;
    }
    let edges = g.edges().iter().zip(&negative).map(|(e, &neg)| {
        (e.u, e.v, if neg { Sign::Negative } else { Sign::Positive })
    });
    SignedGraph::with_labels(g.labels().to_vec(), edges).expect("reshuffle keeps a valid edge set")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleMode {
    /// Every run must be solved to optimality.
    Exact,
    /// Runs record their proven lower bound from gap- or time-limited solves.
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStats {
    pub runs: usize,
    /// Per-run `L(G_r)`, or its proven lower bound when `used_bounds`.
    pub values: Vec<usize>,
    pub mean: f64,
    /// Sample standard deviation (divisor `k - 1`).
    pub sd: f64,
    /// `(observed - mean) / sd`; absent when `sd = 0`.
    pub z: Option<f64>,
    /// Values are lower bounds, so `mean` underestimates the reshuffled mean.
    pub used_bounds: bool,
    /// `L(G)` in exact mode or its proven lower bound in lower-bound mode.
    pub observed: usize,
    pub observed_exact: bool,
}

impl EnsembleStats {
    pub fn from_values(values: Vec<usize>, observed: usize, observed_exact: bool, used_bounds: bool) -> Result<Self> {
        let k = values.len();
        if k < 2 {
            return Err(Error::Contract(format!("an ensemble needs at least 2 runs, got {k}")));
        }
        let mean = values.iter().sum::<usize>() as f64 / k as f64;
        let ss: f64 = values.iter().map(|&v| (v as f64 - mean).powi(2)).sum();
        let sd = (ss / (k - 1) as f64).sqrt();
        let z = (sd > 0.0).then(|| (observed as f64 - mean) / sd);
        Ok(EnsembleStats {
            runs: k,
            values,
            mean,
            sd,
            z,
            used_bounds,
            observed,
            observed_exact,
        })
    }
}

/// Solves `k` reshuffles seeded `cfg.seed + 1 ..= cfg.seed + k` and scores
/// the observed graph against them.
pub fn ensemble(g: &SignedGraph, k: usize, cfg: &SolverConfig, mode: EnsembleMode) -> Result<EnsembleStats> {
    if k < 2 {
        return Err(Error::Contract(format!("an ensemble needs at least 2 runs, got {k}")));
    }
    let observed = solve_exact(g, cfg);
    let runs: Vec<FrustrationResult> = (1..=k as u64)
        .into_par_iter()
        .map(|i| solve_exact(&reshuffle(g, cfg.seed.wrapping_add(i)), cfg))
        .collect();

    let (values, observed_value) = match mode {
        EnsembleMode::Exact => {
            if let Some((run, r)) = runs.iter().enumerate().find(|(_, r)| !r.exact) {
                return Err(Error::NotExact { run: run + 1, lower: r.lower_bound, upper: r.upper_bound });
            }
            if !observed.exact {
                return Err(Error::NotExact { run: 0, lower: observed.lower_bound, upper: observed.upper_bound });
            }
            (runs.iter().map(|r| r.upper_bound).collect(), observed.upper_bound)
        }
        EnsembleMode::LowerBound => (runs.iter().map(|r| r.lower_bound).collect(), observed.lower_bound),
    };
    let used_bounds = mode == EnsembleMode::LowerBound;
    EnsembleStats::from_values(values, observed_value, observed.exact, used_bounds)
}
