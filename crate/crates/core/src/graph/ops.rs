use super::{NodeId, SignedGraph};

/// A connected component together with the original id of each local node.
#[derive(Clone, Debug)]
pub struct Component {
    pub graph: SignedGraph,
    /// `nodes[local] = original`.
    pub nodes: Vec<NodeId>,
}

/// Maximal connected subgraphs, ordered by their smallest original node.
/// Isolated nodes become single-node components.
pub fn connected_components(g: &SignedGraph) -> Vec<Component> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        stack.push(root);
        let mut nodes = Vec::new();
        while let Some(u) = stack.pop() {
            nodes.push(u);
            for nb in g.neighbours(u) {
                if !seen[nb.node] {
                    seen[nb.node] = true;
                    stack.push(nb.node);
                }
            }
        }
        nodes.sort_unstable();
        out.push(Component {
            graph: g.induced_subgraph(&nodes),
            nodes,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;
    use crate::testutil;

    #[test]
    fn connected_graph_is_one_component() {
        let g = testutil::cycle(5, Sign::Negative);
        let comps = connected_components(&g);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].graph, g);
    }

    #[test]
    fn two_triangles() {
        let t = testutil::cycle(3, Sign::Negative);
        let g = t.disjoint_union(&t);
        let comps = connected_components(&g);
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.graph.node_count() == 3));
        assert_eq!(comps[1].nodes, vec![3, 4, 5]);
    }

    #[test]
    fn frustration_index_adds_up_over_components() {
        for seed in 0..40 {
            let a = testutil::random_graph(seed, 5, 0.5, 0.5);
            let b = testutil::random_graph(seed + 1000, 6, 0.5, 0.5);
            let g = a.disjoint_union(&b);
            let parts: usize = connected_components(&g)
                .iter()
                .map(|c| testutil::naive_frustration_index(&c.graph))
                .sum();
            assert_eq!(parts, testutil::naive_frustration_index(&g));
        }
    }
}
