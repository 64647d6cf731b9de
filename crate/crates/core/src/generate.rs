//! Seeded random and structured signed graphs for testing and benchmarking.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Colouring, Sign, SignedGraph};

pub fn cycle(n: usize, sign: Sign) -> SignedGraph {
    assert!(n >= 3, "a cycle needs at least three nodes");
    SignedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n, sign))).expect("valid cycle")
}

pub fn path(n: usize, signs: impl Fn(usize) -> Sign) -> SignedGraph {
    SignedGraph::new(n, (1..n).map(|i| (i - 1, i, signs(i)))).expect("valid path")
}

/// Uniform random recursive tree: node `i` attaches to a uniformly chosen earlier node.
pub fn random_tree(n: usize, negative_probability: f64, seed: u64) -> SignedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (1..n)
        .map(|i| {
            let parent = rng.random_range(0..i);
            (parent, i, random_sign(&mut rng, negative_probability))
        })
        .collect();
    SignedGraph::new(n, edges).expect("valid tree")
}

/// G(n, p) with each edge negative with probability `negative_probability`.
pub fn erdos_renyi(n: usize, p: f64, negative_probability: f64, seed: u64) -> SignedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j, random_sign(&mut rng, negative_probability)));
            }
        }
    }
    SignedGraph::new(n, edges).expect("valid random graph")
}

/// G(n, p) topology whose signs follow a random planted bipartition, with
/// exactly `flipped` uniformly chosen edges negated afterwards. The planted
/// bipartition frustrates exactly those edges, so `L(G) <= flipped`.
pub fn planted(n: usize, p: f64, flipped: usize, seed: u64) -> (SignedGraph, Colouring) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = Colouring::from_bits((0..n).map(|_| rng.random_bool(0.5)).collect());
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    let flipped = flipped.min(pairs.len());
    let mut flip = vec![false; pairs.len()];
    for idx in sample(&mut rng, pairs.len(), flipped) {
        flip[idx] = true;
    }
    let edges: Vec<_> = pairs
        .iter()
        .zip(&flip)
        .map(|(&(i, j), &f)| {
            let agree = side.get(i) == side.get(j);
            let sign = if agree != f { Sign::Positive } else { Sign::Negative };
            (i, j, sign)
        })
        .collect();
    (SignedGraph::new(n, edges).expect("valid planted graph"), side)
}

fn random_sign(rng: &mut impl Rng, negative_probability: f64) -> Sign {
    if rng.random_bool(negative_probability) {
        Sign::Negative
    } else {
        Sign::Positive
    }
}
