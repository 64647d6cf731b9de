use std::time::Instant;

use super::FrustrationResult;
use crate::error::{Error, Result};
use crate::graph::{Colouring, SignedGraph};

/// Largest node count [`brute_force`] accepts.
pub const BRUTE_FORCE_CAP: usize = 25;

/// Exhaustive minimum over all colourings with node 0 fixed to colour 0.
pub fn brute_force(g: &SignedGraph) -> Result<FrustrationResult> {
    brute_force_capped(g, BRUTE_FORCE_CAP)
}

/// [`brute_force`] with a caller-chosen node cap (at most 40).
pub fn brute_force_capped(g: &SignedGraph, cap: usize) -> Result<FrustrationResult> {
    let n = g.node_count();
    let cap = cap.min(40);
    if n > cap {
        return Err(Error::TooLargeForBruteForce { nodes: n, cap });
    }
    let started = Instant::now();
    let mut colour = vec![false; n];
    let mut cost = g.negative_edge_count();
    let mut best = cost;
    let mut best_colour = colour.clone();

    // Gray-code walk over nodes 1..n: step i flips the node given by the
    // lowest set bit of i, changing the count by that node's flip delta.
    let total: u64 = if n == 0 { 1 } else { 1u64 << (n - 1) };
    for step in 1..total {
        if best == 0 {
            break;
        }
        let v = step.trailing_zeros() as usize + 1;
        for nb in g.neighbours(v) {
            if nb.sign.frustrated(colour[v], colour[nb.node]) {
                cost -= 1;
            } else {
                cost += 1;
            }
        }
        colour[v] = !colour[v];
        if cost < best {
            best = cost;
            best_colour.copy_from_slice(&colour);
        }
    }
    Ok(FrustrationResult {
        lower_bound: best,
        upper_bound: best,
        colouring: Colouring::from_bits(best_colour),
        exact: true,
        nodes_explored: total,
        elapsed: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{frustration_count, Sign};
    use crate::testutil;

    #[test]
    fn all_positive_is_zero() {
        let g = testutil::random_graph(3, 20, 0.4, 0.0);
        assert_eq!(brute_force(&g).unwrap().upper_bound, 0);
    }

    #[test]
    fn negative_triangle_is_one() {
        let r = brute_force(&testutil::cycle(3, Sign::Negative)).unwrap();
        assert!(r.exact);
        assert_eq!(r.upper_bound, 1);
    }

    #[test]
    fn refuses_large_graphs() {
        let g = SignedGraph::empty(26);
        assert!(matches!(brute_force(&g), Err(Error::TooLargeForBruteForce { nodes: 26, cap: 25 })));
        assert!(brute_force_capped(&g, 26).is_ok());
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        for seed in 0..80 {
            let g = testutil::random_graph(seed, 1 + seed as usize % 11, 0.5, 0.4);
            let r = brute_force(&g).unwrap();
            assert_eq!(r.upper_bound, testutil::naive_frustration_index(&g), "seed {seed}");
            assert_eq!(frustration_count(&g, &r.colouring).unwrap(), r.upper_bound);
            assert!(r.colouring.is_empty() || !r.colouring.get(0));
        }
    }
}
