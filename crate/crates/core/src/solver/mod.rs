//! Frustration index solvers: exhaustive enumeration, cycle-packing lower
//! bounds, a local-search heuristic and the exact branch-and-bound.

mod bnb;
mod bound;
mod brute;
mod local;
mod sweep;

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{frustration_count, Colouring, SignedGraph};
use crate::reduce::reduce;

pub use bound::{lower_bound_pack, pack_negative_cycles, SHORT_CYCLE_LIMIT};
pub use brute::{brute_force, brute_force_capped, BRUTE_FORCE_CAP};
pub use local::local_search;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Wall-clock budget for one solve; `None` runs to completion.
    pub time_limit: Option<Duration>,
    /// Stop once `(upper - lower) / max(upper, 1)` is at most this value.
    pub target_gap: f64,
    pub seed: u64,
    pub heuristic_restarts: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            time_limit: None,
            target_gap: 0.0,
            seed: 0,
            heuristic_restarts: 32,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.target_gap) {
            return Err(Error::Contract(format!("target gap {} is outside [0, 1]", self.target_gap)));
        }
        if self.heuristic_restarts == 0 {
            return Err(Error::Contract("at least one heuristic restart is required".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrustrationResult {
    pub lower_bound: usize,
    pub upper_bound: usize,
    /// A colouring whose frustration count is `upper_bound`.
    pub colouring: Colouring,
    pub exact: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl FrustrationResult {
    pub fn gap(&self) -> f64 {
        relative_gap(self.lower_bound, self.upper_bound)
    }
}

fn relative_gap(lower: usize, upper: usize) -> f64 {
    (upper - lower) as f64 / upper.max(1) as f64
}

pub(crate) fn within_gap(lower: usize, upper: usize, target: f64) -> bool {
    lower >= upper || (target > 0.0 && relative_gap(lower, upper) <= target)
}

/// Exact frustration index: reduction to biconnected blocks, then
/// branch-and-bound on each block in parallel.
///
/// With a time limit or a positive target gap the result may stop short of
/// optimality; `lower_bound` is then the best proven bound and `exact` is
/// false unless the bounds happen to meet.
pub fn solve_exact(g: &SignedGraph, cfg: &SolverConfig) -> FrustrationResult {
    let started = Instant::now();
    let deadline = cfg.time_limit.map(|t| started + t);
    let reduced = reduce(g);

    let outcomes: Vec<_> = reduced
        .blocks()
        .par_iter()
        .map(|b| bnb::solve_block(&b.graph, cfg, deadline))
        .collect();

    let base = reduced.removed_contribution();
    let lower = base + outcomes.iter().map(|o| o.lower).sum::<usize>();
    let upper = base + outcomes.iter().map(|o| o.upper).sum::<usize>();
    let nodes_explored = outcomes.iter().map(|o| o.nodes).sum();
    let colourings: Vec<Colouring> = outcomes.into_iter().map(|o| o.colouring).collect();
    let colouring = reduced.lift(&colourings).expect("one colouring per block");

    assert_eq!(frustration_count(g, &colouring).ok(), Some(upper), "lifted colouring disagrees with block costs");
    assert!(upper <= g.negative_edge_count() && 2 * upper <= g.edge_count(), "upper bound above the trivial bounds");
    assert!(lower <= upper);

    FrustrationResult {
        lower_bound: lower,
        upper_bound: upper,
        colouring,
        exact: lower == upper,
        nodes_explored,
        elapsed: started.elapsed(),
    }
}
