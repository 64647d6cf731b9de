use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};

/// Largest lattice [`ising_generate`] will build.
pub const ISING_NODE_CAP: usize = 1 << 24;

/// An open-boundary `d`-dimensional lattice with `side` nodes per axis, or
/// the `d`-dimensional hypercube when `side` is absent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsingSpec {
    pub dimension: usize,
    pub side: Option<usize>,
    pub negative_fraction: f64,
    pub seed: u64,
}

impl IsingSpec {
    /// The hypercube is the side-2 lattice.
    fn side(&self) -> usize {
        self.side.unwrap_or(2)
    }

    pub fn node_count(&self) -> Option<usize> {
        self.side().checked_pow(self.dimension.try_into().ok()?)
    }

    /// `d · s^(d-1) · (s-1)`.
    pub fn edge_count(&self) -> Option<usize> {
        let s = self.side();
        let inner = s.checked_pow((self.dimension - 1).try_into().ok()?)?;
        self.dimension.checked_mul(inner)?.checked_mul(s - 1)
    }
}

/// Lattice couplings with exactly `round(q · m)` uniformly chosen negative edges.
pub fn ising_generate(spec: &IsingSpec) -> Result<SignedGraph> {
    if spec.dimension == 0 {
        return Err(Error::Contract("lattice dimension must be at least 1".into()));
    }
    if spec.side.is_some_and(|s| s < 2) {
        return Err(Error::Contract("lattice side must be at least 2".into()));
    }
    if !(0.0..=1.0).contains(&spec.negative_fraction) {
        return Err(Error::Contract(format!("negative fraction {} is outside [0, 1]", spec.negative_fraction)));
    }
    let n = spec
        .node_count()
        .filter(|&n| n <= ISING_NODE_CAP)
        .ok_or_else(|| Error::Contract(format!("lattice exceeds the cap of {ISING_NODE_CAP} nodes")))?;
    let s = spec.side();

    let mut pairs = Vec::with_capacity(spec.edge_count().unwrap_or(0));
    for v in 0..n {
        let mut stride = 1;
        for _ in 0..spec.dimension {
            if (v / stride) % s + 1 < s {
                pairs.push((v, v + stride));
            }
            stride *= s;
        }
    }
    let m = pairs.len();
    let negatives = (spec.negative_fraction * m as f64).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut negative = vec![false; m];
    for i in sample(&mut rng, m, negatives) {
        negative[i] = true;
    }
    let edges = pairs
        .into_iter()
        .zip(negative)
        .map(|((a, b), neg)| (a, b, if neg { Sign::Negative } else { Sign::Positive }));
    SignedGraph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_balanced, Balance};
    use crate::solver::{solve_exact, SolverConfig};

    fn grid(d: usize, s: usize, q: f64, seed: u64) -> IsingSpec {
        IsingSpec { dimension: d, side: Some(s), negative_fraction: q, seed }
    }

    fn cube(d: usize) -> IsingSpec {
        IsingSpec { dimension: d, side: None, negative_fraction: 0.5, seed: 0 }
    }

    #[test]
    fn sizes_follow_the_closed_forms() {
        for (spec, n, m) in [
            (grid(3, 5, 0.5, 0), 125, 300),
            (grid(2, 50, 0.5, 0), 2500, 4900),
            (grid(3, 10, 0.5, 0), 1000, 2700),
            (cube(4), 16, 32),
            (cube(8), 256, 1024),
        ] {
            let g = ising_generate(&spec).unwrap();
            assert_eq!((g.node_count(), g.edge_count()), (n, m));
            assert_eq!((spec.node_count(), spec.edge_count()), (Some(n), Some(m)));
        }
        for d in 1..=6 {
            for s in 2..=5 {
                let spec = grid(d, s, 0.3, 1);
                let g = ising_generate(&spec).unwrap();
                assert_eq!(g.node_count(), s.pow(d as u32));
                assert_eq!(g.edge_count(), d * s.pow(d as u32 - 1) * (s - 1));
            }
        }
    }

    #[test]
    fn negative_count_is_rounded() {
        let g = ising_generate(&grid(2, 4, 0.25, 3)).unwrap();
        assert_eq!(g.negative_edge_count(), 6);
        // 0.3 * 24 = 7.2
        assert_eq!(ising_generate(&grid(2, 4, 0.3, 3)).unwrap().negative_edge_count(), 7);
        let g = ising_generate(&grid(3, 4, 0.0, 3)).unwrap();
        assert_eq!(solve_exact(&g, &SolverConfig::default()).upper_bound, 0);
    }

    #[test]
    fn seeded_and_validated() {
        assert_eq!(ising_generate(&grid(2, 6, 0.5, 9)).unwrap(), ising_generate(&grid(2, 6, 0.5, 9)).unwrap());
        assert!(ising_generate(&grid(0, 4, 0.5, 0)).is_err());
        assert!(ising_generate(&grid(2, 1, 0.5, 0)).is_err());
        assert!(ising_generate(&grid(2, 4, 1.5, 0)).is_err());
        assert!(ising_generate(&grid(30, 3, 0.5, 0)).is_err());
    }

    #[test]
    fn negation_is_undone_by_switching_one_side() {
        for seed in 0..6 {
            let g = ising_generate(&grid(2, 5, 0.25, seed)).unwrap();
            let Balance::Balanced(sides) = is_balanced(&g.with_uniform_sign(Sign::Negative)) else {
                panic!("lattices are bipartite");
            };
            let back = g.negated().switch_by(&sides);
            assert_eq!(back, g);
            let cfg = SolverConfig::default();
            assert_eq!(solve_exact(&g.negated(), &cfg).upper_bound, solve_exact(&g, &cfg).upper_bound);
        }
    }
}
