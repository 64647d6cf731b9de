//! Frustration index toolkit for signed graphs.
//!
//! The crate computes the frustration index `L(G)` of a signed graph (the
//! fewest edges whose removal makes the graph balanced) exactly by
//! branch-and-bound, together with the measures derived from it: the
//! normalised index `F = 1 - 2L/m`, null-model Z scores over sign
//! reshuffles, the Ising ground-state energy `2L - m`, and the spectral
//! bipartivity indices of the underlying unsigned graph.
//!
//! ```
//! use frustra::graph::parse_edge_list;
//! use frustra::solver::{solve_exact, SolverConfig};
//!
//! let g = parse_edge_list("a b -\nb c -\na c -\n").unwrap();
//! let result = solve_exact(&g, &SolverConfig::default());
//! assert!(result.exact);
//! assert_eq!(result.upper_bound, 1);
//! ```

pub mod appkits;
pub mod error;
pub mod generate;
pub mod graph;
pub mod measures;
pub mod nullmodel;
pub mod reduce;
pub mod solver;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use graph::{frustration_count, Colouring, Sign, SignedGraph};
