//! Study pipelines built on the solver: frustration over time, correlation
//! networks, bipartite edge frustration and Ising lattices.

mod ising;
mod portfolio;
mod temporal;

pub use ising::{ising_generate, IsingSpec, ISING_NODE_CAP};
pub use portfolio::{parse_correlation_csv, portfolio_graph, CorrelationMatrix};
pub use temporal::{frames_to_csv, partition_stability, temporal_series, FrameReport, FrameState, NodeStability};

use crate::error::{Error, Result};
use crate::graph::Sign;
use crate::solver::{solve_exact, FrustrationResult, SolverConfig};
use crate::SignedGraph;

/// Fewest edge deletions that make an unsigned graph bipartite, computed as
/// the frustration index of its all-negative signing.
pub fn bipartite_edge_frustration(g: &SignedGraph, cfg: &SolverConfig) -> Result<FrustrationResult> {
    if !g.all_signs(Sign::Positive) {
        return Err(Error::Contract(
            "bipartite edge frustration expects an unsigned (all-positive) graph".into(),
        ));
    }
    Ok(solve_exact(&g.with_uniform_sign(Sign::Negative), cfg))
}
