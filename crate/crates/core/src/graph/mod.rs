//! Signed graphs, node colourings and the frustration count.
//!
//! A [`SignedGraph`] is a simple undirected graph whose edges carry a
//! [`Sign`]. Nodes are dense integers in `0..n`; the original labels read
//! from a file are kept so results can be reported by name.
//!
//! A [`Colouring`] splits the nodes into two sets. An edge is *frustrated*
//! under a colouring when it is positive and joins different colours, or
//! negative and joins equal colours. The frustration index is the minimum
//! frustration count over all colourings (see [`crate::solver`]).

mod balance;
mod ops;
mod parse;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use balance::{is_balanced, Balance};
pub use ops::{connected_components, Component};
pub use parse::{parse_edge_list, read_edge_list};

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Positive,
    #[serde(rename = "-1")]
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    /// Whether an edge of this sign is frustrated given the colours of its endpoints.
    #[inline]
    pub fn frustrated(self, a: bool, b: bool) -> bool {
        (a == b) == self.is_negative()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+1",
            Sign::Negative => "-1",
        })
    }
}

/// An undirected edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub sign: Sign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Neighbour {
    pub node: NodeId,
    pub sign: Sign,
    /// Index into [`SignedGraph::edges`].
    pub edge: usize,
}

/// Immutable simple signed graph.
#[derive(Clone, PartialEq, Eq)]
pub struct SignedGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<Neighbour>>,
    negative: usize,
}

impl SignedGraph {
    /// Builds a graph on `n` nodes labelled `0..n`.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, Sign)>,
    {
        Self::with_labels((0..n).map(|i| i.to_string()).collect(), edges)
    }

    /// Builds a graph whose node `i` is reported as `labels[i]`.
    pub fn with_labels<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, Sign)>,
    {
        let n = labels.len();
        let mut list = Vec::new();
        for (a, b, sign) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) refers to a node outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on node {a}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            list.push(Edge { u, v, sign });
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0].u == w[1].u && w[0].v == w[1].v) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].u, w[0].v
            )));
        }
        Ok(Self::from_sorted_edges(labels, list))
    }

    /// `edges` must already be sorted, deduplicated and loop free.
    fn from_sorted_edges(labels: Vec<String>, edges: Vec<Edge>) -> Self {
        let mut adjacency = vec![Vec::new(); labels.len()];
        let mut negative = 0;
        for (idx, e) in edges.iter().enumerate() {
            if e.sign.is_negative() {
                negative += 1;
            }
            adjacency[e.u].push(Neighbour { node: e.v, sign: e.sign, edge: idx });
            adjacency[e.v].push(Neighbour { node: e.u, sign: e.sign, edge: idx });
        }
        SignedGraph {
            labels,
            edges,
            adjacency,
            negative,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_edges((0..n).map(|i| i.to_string()).collect(), Vec::new())
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn negative_edge_count(&self) -> usize {
        self.negative
    }

    pub fn positive_edge_count(&self) -> usize {
        self.edges.len() - self.negative
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbours(&self, node: NodeId) -> &[Neighbour] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn label(&self, node: NodeId) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self) -> HashMap<&str, NodeId> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect()
    }

    /// Graph density `2m / (n(n-1))`, undefined below two nodes.
    pub fn density(&self) -> Option<f64> {
        let n = self.node_count();
        (n >= 2).then(|| 2.0 * self.edge_count() as f64 / (n as f64 * (n as f64 - 1.0)))
    }

    /// True when every edge has the given sign (vacuously true without edges).
    pub fn all_signs(&self, sign: Sign) -> bool {
        self.edges.iter().all(|e| e.sign == sign)
    }

    /// Same topology with every edge carrying `sign`.
    pub fn with_uniform_sign(&self, sign: Sign) -> SignedGraph {
        self.map_signs(|_| sign)
    }

    /// Same topology with every sign flipped.
    pub fn negated(&self) -> SignedGraph {
        self.map_signs(|e| e.sign.negate())
    }

    pub(crate) fn map_signs(&self, f: impl Fn(&Edge) -> Sign) -> SignedGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { sign: f(e), ..*e })
            .collect();
        Self::from_sorted_edges(self.labels.clone(), edges)
    }

    /// Subgraph induced by `nodes`, relabelled so that `nodes[i]` becomes `i`.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> SignedGraph {
        let mut local = vec![usize::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            local[v] = i;
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| local[e.u] != usize::MAX && local[e.v] != usize::MAX)
            .map(|e| {
                let (a, b) = (local[e.u], local[e.v]);
                Edge {
                    u: a.min(b),
                    v: a.max(b),
                    sign: e.sign,
                }
            })
            .collect();
        edges.sort_unstable();
        let labels = nodes.iter().map(|&v| self.labels[v].clone()).collect();
        Self::from_sorted_edges(labels, edges)
    }

    /// Spanning subgraph keeping only the edges whose index satisfies `keep`.
    pub fn edge_subgraph(&self, keep: impl Fn(usize) -> bool) -> SignedGraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, e)| *e)
            .collect();
        Self::from_sorted_edges(self.labels.clone(), edges)
    }

    /// Disjoint union; nodes of `other` are shifted by `self.node_count()`.
    pub fn disjoint_union(&self, other: &SignedGraph) -> SignedGraph {
        let shift = self.node_count();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            u: e.u + shift,
            v: e.v + shift,
            sign: e.sign,
        }));
        Self::from_sorted_edges(labels, edges)
    }

    /// Negates every edge with exactly one endpoint in `subset`.
    pub fn switch(&self, subset: &[NodeId]) -> SignedGraph {
        let mut inside = Colouring::zeros(self.node_count());
        for &v in subset {
            inside.set(v, true);
        }
        self.switch_by(&inside)
    }

    /// Switching by an indicator colouring (`true` marks the switched set).
    pub fn switch_by(&self, indicator: &Colouring) -> SignedGraph {
        self.map_signs(|e| {
            if indicator.get(e.u) != indicator.get(e.v) {
                e.sign.negate()
            } else {
                e.sign
            }
        })
    }

    /// Canonical edge-list text: one declaration line per node in id order,
    /// then one `<u> <v> <+1|-1>` line per edge with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for label in &self.labels {
            out.push_str(label);
            out.push('\n');
        }
        for e in &self.edges {
            out.push_str(&format!(
                "{} {} {}\n",
                self.labels[e.u], self.labels[e.v], e.sign
            ));
        }
        out
    }
}

impl fmt::Debug for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SignedGraph(n={}, m={}, m-={})",
            self.node_count(),
            self.edge_count(),
            self.negative
        )
    }
}

/// Two-colour node partition; `true` means the node is in the colouring set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Colouring(Vec<bool>);

impl Colouring {
    pub fn zeros(n: usize) -> Self {
        Colouring(vec![false; n])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Colouring(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, node: NodeId) -> bool {
        self.0[node]
    }

    #[inline]
    pub fn set(&mut self, node: NodeId, colour: bool) {
        self.0[node] = colour;
    }

    #[inline]
    pub fn flip(&mut self, node: NodeId) {
        self.0[node] = !self.0[node];
    }

    pub fn complement(&self) -> Colouring {
        Colouring(self.0.iter().map(|b| !b).collect())
    }

    pub fn xor(&self, other: &Colouring) -> Colouring {
        Colouring(self.0.iter().zip(&other.0).map(|(a, b)| a != b).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

/// Number of edges frustrated under `colouring`.
pub fn frustration_count(g: &SignedGraph, colouring: &Colouring) -> Result<usize> {
    if colouring.len() != g.node_count() {
        return Err(Error::DimensionMismatch {
            expected: g.node_count(),
            got: colouring.len(),
        });
    }
    Ok(frustrated_edges(g, colouring).count())
}

/// Edges frustrated under `colouring`. The colouring length must equal `n`.
pub fn frustrated_edges<'a>(
    g: &'a SignedGraph,
    colouring: &'a Colouring,
) -> impl Iterator<Item = &'a Edge> + 'a {
    g.edges()
        .iter()
        .filter(move |e| e.sign.frustrated(colouring.get(e.u), colouring.get(e.v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle(signs: [Sign; 3]) -> SignedGraph {
        SignedGraph::new(3, [(0, 1, signs[0]), (1, 2, signs[1]), (0, 2, signs[2])]).unwrap()
    }

    #[test]
    fn one_negative_edge_is_frustrated_under_zero_colouring() {
        let g = triangle([Sign::Positive, Sign::Positive, Sign::Negative]);
        assert_eq!(frustration_count(&g, &Colouring::zeros(3)).unwrap(), 1);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let g = triangle([Sign::Positive; 3]);
        assert!(matches!(
            frustration_count(&g, &Colouring::zeros(2)),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn constructor_rejects_invalid_edges() {
        assert!(SignedGraph::new(2, [(0, 0, Sign::Positive)]).is_err());
        assert!(SignedGraph::new(2, [(0, 2, Sign::Positive)]).is_err());
        assert!(SignedGraph::new(2, [(0, 1, Sign::Positive), (1, 0, Sign::Negative)]).is_err());
    }

    #[test]
    fn switching_negative_triangle_at_one_node() {
        let g = triangle([Sign::Negative; 3]);
        let s = g.switch(&[0]);
        assert_eq!(g.negative_edge_count(), 3);
        assert_eq!(s.negative_edge_count(), 1);
        assert_eq!(g.switch(&[]), g);
        assert_eq!(g.switch(&[0, 1, 2]), g);
    }

    #[test]
    fn adjacency_mirrors_edge_list() {
        let g = triangle([Sign::Positive, Sign::Negative, Sign::Positive]);
        for (idx, e) in g.edges().iter().enumerate() {
            assert!(g.neighbours(e.u).iter().any(|nb| nb.node == e.v && nb.edge == idx));
            assert!(g.neighbours(e.v).iter().any(|nb| nb.node == e.u && nb.edge == idx));
        }
        assert_eq!(g.positive_edge_count() + g.negative_edge_count(), g.edge_count());
    }

    /// Per-edge recount straight from the case table, kept separate from `Sign::frustrated`.
    fn recount(g: &SignedGraph, x: &Colouring) -> usize {
        let mut total = 0;
        for e in g.edges() {
            let same = x.get(e.u) == x.get(e.v);
            total += match (same, e.sign) {
                (true, Sign::Positive) => 0,
                (true, Sign::Negative) => 1,
                (false, Sign::Negative) => 0,
                (false, Sign::Positive) => 1,
            };
        }
        total
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = SignedGraph> {
        (1..=max_n)
            .prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .collect();
                let k = pairs.len();
                (Just(n), Just(pairs), proptest::collection::vec(0u8..3, k))
            })
            .prop_map(|(n, pairs, picks)| {
                let edges = pairs.into_iter().zip(picks).filter_map(|((i, j), p)| match p {
                    1 => Some((i, j, Sign::Positive)),
                    2 => Some((i, j, Sign::Negative)),
                    _ => None,
                });
                SignedGraph::new(n, edges).unwrap()
            })
    }

    proptest! {
        #[test]
        fn count_matches_recount_and_is_complement_symmetric(
            g in arb_graph(10),
            seed in any::<u64>(),
        ) {
            let n = g.node_count();
            let x = Colouring::from_bits((0..n).map(|i| (seed >> (i % 64)) & 1 == 1).collect());
            let c = frustration_count(&g, &x).unwrap();
            prop_assert_eq!(c, recount(&g, &x));
            prop_assert_eq!(c, frustration_count(&g, &x.complement()).unwrap());
            prop_assert!(c <= g.edge_count());
        }

        #[test]
        fn switching_is_covariant(g in arb_graph(8), s_bits in any::<u16>()) {
            let n = g.node_count();
            let s = Colouring::from_bits((0..n).map(|i| (s_bits >> i) & 1 == 1).collect());
            let switched = g.switch_by(&s);
            for mask in 0u32..(1 << n) {
                let x = Colouring::from_bits((0..n).map(|i| (mask >> i) & 1 == 1).collect());
                prop_assert_eq!(
                    frustration_count(&switched, &x).unwrap(),
                    frustration_count(&g, &x.xor(&s)).unwrap()
                );
            }
        }

        #[test]
        fn edge_list_round_trip(g in arb_graph(12)) {
            let text = g.to_edge_list();
            let back = parse_edge_list(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.to_edge_list(), text);
        }
    }

    #[test]
    fn random_graph_count_matches_recount() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let mut pairs: Vec<(usize, usize)> =
            (0..8).flat_map(|i| (i + 1..8).map(move |j| (i, j))).collect();
        for _ in 0..20 {
            use rand::seq::SliceRandom;
            pairs.shuffle(&mut rng);
            let edges = pairs[..16].iter().map(|&(i, j)| {
                (i, j, if rng.random_bool(0.5) { Sign::Negative } else { Sign::Positive })
            });
            let g = SignedGraph::new(8, edges).unwrap();
            assert_eq!(g.edge_count(), 16);
            for mask in 0u32..256 {
                let x = Colouring::from_bits((0..8).map(|i| (mask >> i) & 1 == 1).collect());
                assert_eq!(frustration_count(&g, &x).unwrap(), recount(&g, &x));
            }
        }
    }
}
