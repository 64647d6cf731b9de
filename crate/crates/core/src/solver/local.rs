//! Restarted steepest-descent single-node flips.

use std::collections::VecDeque;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{bound::lower_bound_pack, FrustrationResult, SolverConfig};
use crate::graph::{Colouring, SignedGraph};

/// Heuristic upper bound. The first start is the all-zero colouring, so the
/// result never exceeds `m⁻`; every descent ends in a single-flip local
/// optimum, which never exceeds `m / 2`.
pub fn local_search(g: &SignedGraph, cfg: &SolverConfig) -> FrustrationResult {
    let started = Instant::now();
    let (colouring, upper) = best_colouring(g, cfg);
    let lower = lower_bound_pack(g).min(upper);
    FrustrationResult {
        lower_bound: lower,
        upper_bound: upper,
        colouring,
        exact: lower == upper,
        nodes_explored: 0,
        elapsed: started.elapsed(),
    }
}

pub(crate) fn best_colouring(g: &SignedGraph, cfg: &SolverConfig) -> (Colouring, usize) {
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut state = Descent::new(g);
    let mut best = Colouring::zeros(n);
    let mut best_cost = state.run(&best);
    best = state.colouring();

    for restart in 1..cfg.heuristic_restarts.max(1) {
        if best_cost == 0 {
            break;
        }
        let start = match restart {
            1 => spanning_forest_colouring(g),
            r if r % 2 == 0 => Colouring::from_bits((0..n).map(|_| rng.random_bool(0.5)).collect()),
            _ => {
                let mut x = best.clone();
                let strength = 0.05 + 0.1 * rng.random::<f64>();
                for v in 0..n {
                    if rng.random_bool(strength) {
                        x.flip(v);
                    }
                }
                if n > 0 {
                    x.flip(rng.random_range(0..n));
                }
                x
            }
        };
        let cost = state.run(&start);
        if cost < best_cost {
            best_cost = cost;
            best = state.colouring();
        }
    }
    (best, best_cost)
}

/// Colouring that satisfies every edge of a BFS spanning forest.
fn spanning_forest_colouring(g: &SignedGraph) -> Colouring {
    let n = g.node_count();
    let mut x = Colouring::zeros(n);
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for nb in g.neighbours(u) {
                if !seen[nb.node] {
                    seen[nb.node] = true;
                    x.set(nb.node, x.get(u) ^ nb.sign.is_negative());
                    queue.push_back(nb.node);
                }
            }
        }
    }
    x
}

/// Steepest descent with gain buckets. `gain[v]` is the drop in frustration
/// count obtained by flipping `v`.
struct Descent<'a> {
    g: &'a SignedGraph,
    colour: Vec<bool>,
    gain: Vec<i64>,
    offset: i64,
    // Doubly linked lists of nodes per gain value.
    head: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl<'a> Descent<'a> {
    fn new(g: &'a SignedGraph) -> Self {
        let n = g.node_count();
        let offset = g.max_degree() as i64;
        Descent {
            g,
            colour: vec![false; n],
            gain: vec![0; n],
            offset,
            head: vec![NIL; 2 * offset as usize + 1],
            next: vec![NIL; n],
            prev: vec![NIL; n],
        }
    }

    fn colouring(&self) -> Colouring {
        Colouring::from_bits(self.colour.clone())
    }

    fn bucket(&self, gain: i64) -> usize {
        (gain + self.offset) as usize
    }

    fn insert(&mut self, v: usize) {
        let b = self.bucket(self.gain[v]);
        self.prev[v] = NIL;
        self.next[v] = self.head[b];
        if self.head[b] != NIL {
            self.prev[self.head[b]] = v;
        }
        self.head[b] = v;
    }

    fn remove(&mut self, v: usize) {
        let b = self.bucket(self.gain[v]);
        if self.prev[v] != NIL {
            self.next[self.prev[v]] = self.next[v];
        } else {
            self.head[b] = self.next[v];
        }
        if self.next[v] != NIL {
            self.prev[self.next[v]] = self.prev[v];
        }
    }

    /// Descends from `start` and returns the final frustration count.
    fn run(&mut self, start: &Colouring) -> usize {
        let g = self.g;
        let n = g.node_count();
        self.colour.copy_from_slice(start.bits());
        self.head.iter_mut().for_each(|h| *h = NIL);
        let mut cost = 0usize;
        for e in g.edges() {
            if e.sign.frustrated(self.colour[e.u], self.colour[e.v]) {
                cost += 1;
            }
        }
        for v in 0..n {
            let mut gval = 0;
            for nb in g.neighbours(v) {
                if nb.sign.frustrated(self.colour[v], self.colour[nb.node]) {
                    gval += 1;
                } else {
                    gval -= 1;
                }
            }
            self.gain[v] = gval;
        }
        for v in (0..n).rev() {
            self.insert(v);
        }

        let mut top = self.head.len();
        loop {
            while top > 0 && self.head[top - 1] == NIL {
                top -= 1;
            }
            if top == 0 {
                break;
            }
            let b = top - 1;
            if b as i64 - self.offset <= 0 {
                break;
            }
            let v = self.head[b];
            cost -= self.gain[v] as usize;
            self.remove(v);
            self.gain[v] = -self.gain[v];
            self.insert(v);
            self.colour[v] = !self.colour[v];
            for nb in g.neighbours(v) {
                let w = nb.node;
                let now_frustrated = nb.sign.frustrated(self.colour[v], self.colour[w]);
                self.remove(w);
                self.gain[w] += if now_frustrated { 2 } else { -2 };
                self.insert(w);
                top = top.max(self.bucket(self.gain[w]) + 1);
            }
        }
        cost
    }
}
