//! Lower bounds from packings of edge-disjoint negative cycles.
//!
//! Every negative cycle contains at least one frustrated edge under any
//! colouring, so the size of any collection of edge-disjoint negative
//! cycles bounds `L(G)` from below. Cycles are collected greedily in rounds
//! of increasing length: triangles first, then 4-cycles, and so on.

use crate::graph::{is_balanced, SignedGraph};

/// Default cycle length cap for [`lower_bound_pack`].
pub const SHORT_CYCLE_LIMIT: usize = 5;

/// Greedy packing of edge-disjoint negative triangles followed by negative
/// cycles of length at most five.
pub fn lower_bound_pack(g: &SignedGraph) -> usize {
    pack_negative_cycles(g, SHORT_CYCLE_LIMIT)
}

/// Greedy packing of edge-disjoint negative cycles of length at most `max_len`.
pub fn pack_negative_cycles(g: &SignedGraph, max_len: usize) -> usize {
    let mut alive = vec![true; g.edge_count()];
    CyclePacker::new(g).pack(&mut alive, max_len)
}

/// Packing restricted to the edges marked in `alive`; packed edges are cleared.
pub(crate) fn pack_within(g: &SignedGraph, alive: &mut [bool], max_len: usize) -> usize {
    CyclePacker::new(g).pack(alive, max_len)
}

/// Cycle length cap used for root bounds: unbounded on small graphs, short
/// cycles only once the quadratic cost of long rounds becomes noticeable.
pub(crate) fn root_cycle_limit(g: &SignedGraph) -> usize {
    if g.edge_count() <= 4000 {
        g.node_count().max(3)
    } else {
        SHORT_CYCLE_LIMIT
    }
}

struct CyclePacker<'a> {
    g: &'a SignedGraph,
    // Search state lives on the double cover: state = 2 * node + parity.
    stamp: Vec<u32>,
    epoch: u32,
    parent: Vec<(u32, u32)>,
    queue: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl<'a> CyclePacker<'a> {
    fn new(g: &'a SignedGraph) -> Self {
        let states = 2 * g.node_count();
        CyclePacker {
            g,
            stamp: vec![0; states],
            epoch: 0,
            parent: vec![(NONE, NONE); states],
            queue: Vec::with_capacity(states),
        }
    }

    fn pack(&mut self, alive: &mut [bool], max_len: usize) -> usize {
        let mut count = 0;
        for len in 3..=max_len {
            if self.remaining_is_balanced(alive) {
                break;
            }
            for e in 0..self.g.edge_count() {
                if !alive[e] {
                    continue;
                }
                if let Some(cycle) = self.negative_cycle_through(e, alive, len) {
                    for c in cycle {
                        alive[c] = false;
                    }
                    count += 1;
                }
            }
        }
        count
    }

    fn remaining_is_balanced(&self, alive: &[bool]) -> bool {
        let sub = self.g.edge_subgraph(|i| alive[i]);
        is_balanced(&sub).is_balanced()
    }

    /// Shortest negative closed walk through edge `e` of length at most
    /// `max_len`, reduced to one of its negative simple cycles.
    fn negative_cycle_through(&mut self, e: usize, alive: &[bool], max_len: usize) -> Option<Vec<usize>> {
        let g = self.g;
        let edge = g.edges()[e];
        // Path v -> u of parity `want` closes a negative cycle with e.
        let want = if edge.sign.is_negative() { 0 } else { 1 };
        let start = 2 * edge.v as u32;
        let goal = 2 * edge.u as u32 + want;

        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.queue.clear();
        self.queue.push(start);
        self.stamp[start as usize] = self.epoch;
        self.parent[start as usize] = (NONE, NONE);

        let mut head = 0;
        let mut depth = 0;
        let mut found = false;
        'bfs: while head < self.queue.len() && depth < max_len - 1 {
            let layer_end = self.queue.len();
            depth += 1;
            while head < layer_end {
                let state = self.queue[head];
                head += 1;
                let node = (state / 2) as usize;
                let parity = state % 2;
                for nb in g.neighbours(node) {
                    if nb.edge == e || !alive[nb.edge] {
                        continue;
                    }
                    let next = 2 * nb.node as u32 + (parity ^ nb.sign.is_negative() as u32);
                    if self.stamp[next as usize] == self.epoch {
                        continue;
                    }
                    self.stamp[next as usize] = self.epoch;
                    self.parent[next as usize] = (state, nb.edge as u32);
                    if next == goal {
                        found = true;
                        break 'bfs;
                    }
                    self.queue.push(next);
                }
            }
        }
        if !found {
            return None;
        }

        let mut walk_nodes = vec![edge.u];
        let mut walk_edges = Vec::new();
        let mut s = goal;
        while s != start {
            let (prev, via) = self.parent[s as usize];
            walk_edges.push(via as usize);
            s = prev;
            walk_nodes.push((s / 2) as usize);
        }
        walk_edges.push(e);
        Some(extract_negative_cycle(g, walk_nodes, walk_edges))
    }
}

/// Splits a negative closed walk (`nodes[i]` to `nodes[i+1]` via `edges[i]`,
/// closing back to `nodes[0]`) at repeated nodes until a simple negative
/// cycle remains.
fn extract_negative_cycle(g: &SignedGraph, mut nodes: Vec<usize>, mut edges: Vec<usize>) -> Vec<usize> {
    loop {
        let len = nodes.len();
        let mut first_seen = std::collections::HashMap::new();
        let mut split = None;
        for (i, &v) in nodes.iter().enumerate() {
            if let Some(&j) = first_seen.get(&v) {
                split = Some((j, i));
                break;
            }
            first_seen.insert(v, i);
        }
        let Some((j, i)) = split else {
            return edges;
        };
        // Inner closed walk: nodes[j..i] with edges[j..i]; outer: the rest.
        let inner_edges: Vec<usize> = edges[j..i].to_vec();
        let negative = |es: &[usize]| {
            es.iter().filter(|&&x| g.edges()[x].sign.is_negative()).count() % 2 == 1
        };
        if negative(&inner_edges) {
            nodes = nodes[j..i].to_vec();
            edges = inner_edges;
        } else {
            let mut outer_nodes = nodes[..j].to_vec();
            outer_nodes.extend_from_slice(&nodes[i..len]);
            let mut outer_edges = edges[..j].to_vec();
            outer_edges.extend_from_slice(&edges[i..]);
            nodes = outer_nodes;
            edges = outer_edges;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;
    use crate::testutil;

    #[test]
    fn balanced_graphs_have_zero_bound() {
        let g = testutil::cycle(6, Sign::Positive);
        assert_eq!(lower_bound_pack(&g), 0);
        let g = crate::generate::path(5, |_| Sign::Negative);
        assert_eq!(pack_negative_cycles(&g, 10), 0);
    }

    #[test]
    fn two_disjoint_negative_triangles() {
        let t = testutil::cycle(3, Sign::Negative);
        assert_eq!(lower_bound_pack(&t.disjoint_union(&t)), 2);
    }

    #[test]
    fn long_cycles_need_a_longer_cap() {
        let c7 = testutil::cycle(7, Sign::Negative);
        assert_eq!(lower_bound_pack(&c7), 0);
        assert_eq!(pack_negative_cycles(&c7, 7), 1);
    }

    #[test]
    fn bound_never_exceeds_brute_force() {
        for seed in 0..50 {
            let n = 4 + (seed as usize % 9);
            let g = testutil::random_graph(seed, n, 0.5, 0.5);
            let exact = testutil::naive_frustration_index(&g);
            assert!(lower_bound_pack(&g) <= exact, "seed {seed}");
            assert!(pack_negative_cycles(&g, n) <= exact, "seed {seed}");
        }
    }

    #[test]
    fn extracted_cycles_are_simple_and_negative() {
        for seed in 0..40 {
            let g = testutil::random_graph(seed + 77, 12, 0.4, 0.5);
            let mut alive = vec![true; g.edge_count()];
            let mut packer = CyclePacker::new(&g);
            for len in 3..=12 {
                for e in 0..g.edge_count() {
                    if !alive[e] {
                        continue;
                    }
                    if let Some(c) = packer.negative_cycle_through(e, &alive, len) {
                        let negatives = c.iter().filter(|&&x| g.edges()[x].sign.is_negative()).count();
                        assert_eq!(negatives % 2, 1);
                        let mut deg = std::collections::HashMap::new();
                        for &x in &c {
                            assert!(alive[x]);
                            let ed = g.edges()[x];
                            *deg.entry(ed.u).or_insert(0) += 1;
                            *deg.entry(ed.v).or_insert(0) += 1;
                        }
                        assert!(deg.values().all(|&d| d == 2));
                        for x in c {
                            alive[x] = false;
                        }
                    }
                }
            }
        }
    }
}
