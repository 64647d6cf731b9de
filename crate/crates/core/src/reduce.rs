//! Data reduction ahead of exact solving.
//!
//! Three reductions are applied, each of which leaves the frustration index
//! unchanged:
//!
//! * isolated nodes are dropped;
//! * degree-1 nodes are peeled repeatedly, since a pendant edge can always be
//!   left unfrustrated by colouring the leaf accordingly;
//! * what remains is split into biconnected blocks. Blocks meet in at most
//!   one articulation node, so complementing a block's colouring aligns it
//!   with its neighbours and `L` is the sum over blocks. Bridges between
//!   blocks are recorded and never frustrated.
//!
//! [`ReducedInstance::lift`] rebuilds a colouring of the original graph from
//! one colouring per block.

use crate::error::{Error, Result};
use crate::graph::{Colouring, NodeId, Sign, SignedGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    Isolated(NodeId),
    Leaf { node: NodeId, neighbour: NodeId, sign: Sign },
    Bridge { u: NodeId, v: NodeId, sign: Sign },
}

/// A biconnected block with at least three nodes.
#[derive(Clone, Debug)]
pub struct Block {
    pub graph: SignedGraph,
    /// `nodes[local] = original`.
    pub nodes: Vec<NodeId>,
}

#[derive(Clone, Debug)]
pub struct ReducedInstance {
    original_nodes: usize,
    blocks: Vec<Block>,
    steps: Vec<ReductionStep>,
    removed_contribution: usize,
}

impl ReducedInstance {
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Frustration forced by the removed structure; always zero for these reductions.
    pub fn removed_contribution(&self) -> usize {
        self.removed_contribution
    }

    pub fn steps(&self) -> &[ReductionStep] {
        &self.steps
    }

    pub fn original_node_count(&self) -> usize {
        self.original_nodes
    }

    pub fn core_edge_count(&self) -> usize {
        self.blocks.iter().map(|b| b.graph.edge_count()).sum()
    }

    /// Distinct original nodes that lie in some block.
    pub fn core_node_count(&self) -> usize {
        let mut seen = vec![false; self.original_nodes];
        for b in &self.blocks {
            for &v in &b.nodes {
                seen[v] = true;
            }
        }
        seen.into_iter().filter(|&s| s).count()
    }

    /// Colouring of the original graph from one colouring per block. Its
    /// frustration count is the sum of the block counts.
    pub fn lift(&self, block_colourings: &[Colouring]) -> Result<Colouring> {
        if block_colourings.len() != self.blocks.len() {
            return Err(Error::DimensionMismatch {
                expected: self.blocks.len(),
                got: block_colourings.len(),
            });
        }
        for (b, c) in self.blocks.iter().zip(block_colourings) {
            if c.len() != b.graph.node_count() {
                return Err(Error::DimensionMismatch {
                    expected: b.graph.node_count(),
                    got: c.len(),
                });
            }
        }

        let bridges: Vec<(NodeId, NodeId, Sign)> = self
            .steps
            .iter()
            .filter_map(|s| match *s {
                ReductionStep::Bridge { u, v, sign } => Some((u, v, sign)),
                _ => None,
            })
            .collect();

        // Pieces are blocks followed by bridges; walk them through shared nodes
        // so that each piece is placed relative to an already coloured node.
        let piece_count = self.blocks.len() + bridges.len();
        let mut pieces_of: Vec<Vec<usize>> = vec![Vec::new(); self.original_nodes];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in &b.nodes {
                pieces_of[v].push(i);
            }
        }
        for (k, &(u, v, _)) in bridges.iter().enumerate() {
            pieces_of[u].push(self.blocks.len() + k);
            pieces_of[v].push(self.blocks.len() + k);
        }

        let mut colour: Vec<Option<bool>> = vec![None; self.original_nodes];
        let mut placed = vec![false; piece_count];
        let mut queue = Vec::new();
        for start in 0..piece_count {
            if placed[start] {
                continue;
            }
            placed[start] = true;
            queue.push(start);
            while let Some(piece) = queue.pop() {
                let members: Vec<NodeId> = if piece < self.blocks.len() {
                    let block = &self.blocks[piece];
                    let local = &block_colourings[piece];
                    let flip = block
                        .nodes
                        .iter()
                        .enumerate()
                        .find_map(|(i, &v)| colour[v].map(|c| c != local.get(i)))
                        .unwrap_or(false);
                    for (i, &v) in block.nodes.iter().enumerate() {
                        colour[v] = Some(local.get(i) ^ flip);
                    }
                    block.nodes.clone()
                } else {
                    let (u, v, sign) = bridges[piece - self.blocks.len()];
                    match (colour[u], colour[v]) {
                        (Some(cu), None) => colour[v] = Some(cu ^ sign.is_negative()),
                        (None, Some(cv)) => colour[u] = Some(cv ^ sign.is_negative()),
                        (None, None) => {
                            colour[u] = Some(false);
                            colour[v] = Some(sign.is_negative());
                        }
                        (Some(_), Some(_)) => {}
                    }
                    vec![u, v]
                };
                for v in members {
                    for &next in &pieces_of[v] {
                        if !placed[next] {
                            placed[next] = true;
                            queue.push(next);
                        }
                    }
                }
            }
        }

        for step in self.steps.iter().rev() {
            match *step {
                ReductionStep::Isolated(v) => colour[v] = Some(false),
                ReductionStep::Leaf { node, neighbour, sign } => {
                    let c = colour[neighbour].unwrap_or(false);
                    colour[node] = Some(c ^ sign.is_negative());
                }
                ReductionStep::Bridge { .. } => {}
            }
        }

        Ok(Colouring::from_bits(
            colour.into_iter().map(|c| c.unwrap_or(false)).collect(),
        ))
    }
}

/// Peels isolated and degree-1 nodes to a fixpoint, then splits the rest
/// into biconnected blocks.
pub fn reduce(g: &SignedGraph) -> ReducedInstance {
    let n = g.node_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut steps = Vec::new();

    let mut queue: Vec<NodeId> = (0..n).filter(|&v| degree[v] <= 1).collect();
    queue.reverse();
    while let Some(v) = queue.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        if degree[v] == 0 {
            steps.push(ReductionStep::Isolated(v));
            continue;
        }
        let nb = g
            .neighbours(v)
            .iter()
            .find(|nb| alive[nb.node])
            .expect("degree-1 node has one live neighbour");
        steps.push(ReductionStep::Leaf {
            node: v,
            neighbour: nb.node,
            sign: nb.sign,
        });
        degree[nb.node] -= 1;
        degree[v] = 0;
        if degree[nb.node] <= 1 {
            queue.push(nb.node);
        }
    }

    let mut blocks = Vec::new();
    for edges in biconnected_blocks(g, &alive) {
        if edges.len() == 1 {
            let e = g.edges()[edges[0]];
            steps.push(ReductionStep::Bridge {
                u: e.u,
                v: e.v,
                sign: e.sign,
            });
            continue;
        }
        let mut nodes: Vec<NodeId> = edges
            .iter()
            .flat_map(|&e| [g.edges()[e].u, g.edges()[e].v])
            .collect();
        nodes.sort_unstable();
        nodes.dedup();
        blocks.push(Block {
            graph: g.induced_subgraph(&nodes),
            nodes,
        });
    }
    blocks.sort_by_key(|b| b.nodes[0]);

    ReducedInstance {
        original_nodes: n,
        blocks,
        steps,
        removed_contribution: 0,
    }
}

/// Edge sets of the biconnected components among live nodes (iterative Tarjan).
fn biconnected_blocks(g: &SignedGraph, alive: &[bool]) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = g.node_count();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut out = Vec::new();

    struct Frame {
        node: NodeId,
        parent_edge: Option<usize>,
        next: usize,
    }

    for root in 0..n {
        if !alive[root] || disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut stack = vec![Frame {
            node: root,
            parent_edge: None,
            next: 0,
        }];
        while let Some(frame) = stack.last_mut() {
            let u = frame.node;
            if frame.next < g.degree(u) {
                let nb = g.neighbours(u)[frame.next];
                frame.next += 1;
                if !alive[nb.node] || Some(nb.edge) == frame.parent_edge {
                    continue;
                }
                let v = nb.node;
                if disc[v] == UNSEEN {
                    edge_stack.push(nb.edge);
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    stack.push(Frame {
                        node: v,
                        parent_edge: Some(nb.edge),
                        next: 0,
                    });
                } else if disc[v] < disc[u] {
                    edge_stack.push(nb.edge);
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                let done = stack.pop().expect("non-empty stack");
                if let Some(parent) = stack.last() {
                    let p = parent.node;
                    low[p] = low[p].min(low[done.node]);
                    if low[done.node] >= disc[p] {
                        let tree_edge = done.parent_edge.expect("child frame has a parent edge");
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == tree_edge {
                                break;
                            }
                        }
                        block.sort_unstable();
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}
