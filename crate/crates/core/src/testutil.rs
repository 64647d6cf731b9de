//! Independent oracles and small fixtures shared by the unit tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Sign, SignedGraph};

/// Random graph with edge probability `p`; each edge is negative with probability `q`.
pub fn random_graph(seed: u64, n: usize, p: f64, q: f64) -> SignedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                let s = if rng.random_bool(q) { Sign::Negative } else { Sign::Positive };
                edges.push((i, j, s));
            }
        }
    }
    SignedGraph::new(n, edges).unwrap()
}

pub fn random_subset(seed: u64, n: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
    nodes.shuffle(&mut rng);
    nodes
}

pub fn cycle(n: usize, sign: Sign) -> SignedGraph {
    SignedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n, sign))).unwrap()
}

/// Minimum frustration over all `2^n` colourings, counted edge by edge.
pub fn naive_frustration_index(g: &SignedGraph) -> usize {
    let n = g.node_count();
    assert!(n <= 20, "oracle is exponential");
    let mut best = usize::MAX;
    for mask in 0u64..(1u64 << n) {
        let colour = |v: usize| (mask >> v) & 1;
        let mut count = 0;
        for e in g.edges() {
            let same = colour(e.u) == colour(e.v);
            if same == e.sign.is_negative() {
                count += 1;
            }
        }
        best = best.min(count);
    }
    best
}

/// An optimal colouring found by exhaustive enumeration.
pub fn naive_optimal_colouring(g: &SignedGraph) -> crate::graph::Colouring {
    let n = g.node_count();
    assert!(n <= 20, "oracle is exponential");
    let mut best = (usize::MAX, 0u64);
    for mask in 0u64..(1u64 << n) {
        let colour = |v: usize| (mask >> v) & 1;
        let count = g
            .edges()
            .iter()
            .filter(|e| (colour(e.u) == colour(e.v)) == e.sign.is_negative())
            .count();
        if count < best.0 {
            best = (count, mask);
        }
    }
    crate::graph::Colouring::from_bits((0..n).map(|v| (best.1 >> v) & 1 == 1).collect())
}
