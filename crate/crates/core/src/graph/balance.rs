use std::collections::VecDeque;

use super::{Colouring, Edge, SignedGraph};

/// Outcome of a balance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Balance {
    /// A colouring that leaves every edge unfrustrated.
    Balanced(Colouring),
    /// Edges of one cycle whose sign product is negative.
    Unbalanced(Vec<Edge>),
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced(_))
    }
}

/// Sign-consistent BFS two-colouring in `O(n + m)`.
///
/// Each tree edge forces the child's colour (same colour across a positive
/// edge, opposite across a negative one). The first non-tree edge that is
/// frustrated closes a negative cycle with the two tree paths to the lowest
/// common ancestor.
pub fn is_balanced(g: &SignedGraph) -> Balance {
    let n = g.node_count();
    let mut colour = Colouring::zeros(n);
    let mut visited = vec![false; n];
    let mut parent_edge: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();

    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for nb in g.neighbours(u) {
                let v = nb.node;
                let want = colour.get(u) ^ nb.sign.is_negative();
                if !visited[v] {
                    visited[v] = true;
                    colour.set(v, want);
                    parent_edge[v] = Some(nb.edge);
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                } else if colour.get(v) != want {
                    return Balance::Unbalanced(cycle_through(g, u, v, nb.edge, &parent_edge, &depth));
                }
            }
        }
    }
    Balance::Balanced(colour)
}

fn cycle_through(
    g: &SignedGraph,
    u: usize,
    v: usize,
    closing: usize,
    parent_edge: &[Option<usize>],
    depth: &[usize],
) -> Vec<Edge> {
    let step = |x: usize| -> (usize, usize) {
        let e = parent_edge[x].expect("non-root node has a parent edge");
        let edge = g.edges()[e];
        (if edge.u == x { edge.v } else { edge.u }, e)
    };
    let mut left = Vec::new();
    let mut right = Vec::new();
    let (mut a, mut b) = (u, v);
    while depth[a] > depth[b] {
        let (p, e) = step(a);
        left.push(e);
        a = p;
    }
    while depth[b] > depth[a] {
        let (p, e) = step(b);
        right.push(e);
        b = p;
    }
    while a != b {
        let (pa, ea) = step(a);
        let (pb, eb) = step(b);
        left.push(ea);
        right.push(eb);
        a = pa;
        b = pb;
    }
    let mut cycle: Vec<Edge> = left.into_iter().map(|e| g.edges()[e]).collect();
    cycle.extend(right.into_iter().rev().map(|e| g.edges()[e]));
    cycle.push(g.edges()[closing]);
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{frustration_count, Sign};
    use crate::testutil;

    fn assert_negative_cycle(g: &SignedGraph, cycle: &[Edge]) {
        assert!(cycle.len() >= 3);
        let negatives = cycle.iter().filter(|e| e.sign.is_negative()).count();
        assert_eq!(negatives % 2, 1, "cycle sign must be negative");
        let mut deg = std::collections::HashMap::new();
        for e in cycle {
            assert!(g.edges().contains(e));
            *deg.entry(e.u).or_insert(0) += 1;
            *deg.entry(e.v).or_insert(0) += 1;
        }
        assert!(deg.values().all(|&d| d == 2), "edges must form a simple cycle");
        assert_eq!(deg.len(), cycle.len());
    }

    #[test]
    fn all_positive_is_balanced_with_zero_colouring() {
        let g = SignedGraph::new(4, [(0, 1, Sign::Positive), (1, 2, Sign::Positive), (2, 3, Sign::Positive), (0, 3, Sign::Positive)]).unwrap();
        assert_eq!(is_balanced(&g), Balance::Balanced(Colouring::zeros(4)));
    }

    #[test]
    fn negative_triangle_is_returned() {
        let g = SignedGraph::new(3, [(0, 1, Sign::Negative), (1, 2, Sign::Negative), (0, 2, Sign::Negative)]).unwrap();
        match is_balanced(&g) {
            Balance::Unbalanced(c) => {
                assert_eq!(c.len(), 3);
                assert_negative_cycle(&g, &c);
            }
            b => panic!("expected unbalanced, got {b:?}"),
        }
    }

    #[test]
    fn witnesses_agree_with_brute_force() {
        for seed in 0..300 {
            let g = testutil::random_graph(seed, 3 + (seed as usize % 10), 0.4, 0.3);
            let exact = testutil::naive_frustration_index(&g);
            match is_balanced(&g) {
                Balance::Balanced(x) => {
                    assert_eq!(exact, 0);
                    assert_eq!(frustration_count(&g, &x).unwrap(), 0);
                }
                Balance::Unbalanced(c) => {
                    assert!(exact > 0);
                    assert_negative_cycle(&g, &c);
                }
            }
        }
    }
}
