//! Exact dynamic programme over a node order of small frontier width.
//!
//! Nodes are introduced one at a time. The frontier holds every introduced
//! node that still has an unintroduced neighbour, and the table maps each
//! colouring of the frontier to the fewest frustrated edges among the
//! introduced nodes that is consistent with it. A node leaves the frontier
//! once its last neighbour is introduced; its colour is minimised out and
//! the choice is recorded so an optimal colouring can be replayed backwards.

use std::time::Instant;

use crate::graph::{Colouring, SignedGraph};

/// Frontier width above which the sweep is not attempted.
pub(crate) const MAX_WIDTH: usize = 25;
/// Memory budget for the recorded choices, in bytes.
const CHOICE_BUDGET: u64 = 1 << 30;

pub(crate) struct Plan {
    order: Vec<usize>,
}

/// Frontier size after introducing `order[t]` and retiring finished nodes,
/// maximised over the order. Stops early once `cap` is exceeded.
fn width_of(g: &SignedGraph, order: &[usize], cap: usize) -> Option<(usize, u64)> {
    let n = g.node_count();
    let mut remaining: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut introduced = vec![false; n];
    let mut frontier = 0usize;
    let mut width = 0usize;
    let mut choice_bytes = 0u64;
    for &v in order {
        frontier += 1;
        width = width.max(frontier);
        if width > cap {
            return None;
        }
        introduced[v] = true;
        let mut retired = 0;
        for nb in g.neighbours(v) {
            remaining[nb.node] -= 1;
        }
        for nb in g.neighbours(v) {
            if introduced[nb.node] && remaining[nb.node] == 0 {
                retired += 1;
            }
        }
        if remaining[v] == 0 {
            retired += 1;
        }
        for _ in 0..retired {
            frontier -= 1;
            choice_bytes = choice_bytes.saturating_add(1u64.checked_shl(frontier as u32).unwrap_or(u64::MAX).div_ceil(8));
        }
    }
    Some((width, choice_bytes))
}

/// Greedy order from `start`: repeatedly introduce the frontier neighbour
/// whose introduction grows the frontier least. Gives up once the frontier
/// outgrows `cap`.
fn greedy_order(g: &SignedGraph, start: usize, cap: usize) -> Option<Vec<usize>> {
    let n = g.node_count();
    let mut introduced = vec![false; n];
    let mut remaining: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut front: Vec<usize> = Vec::new();
    let mut order = Vec::with_capacity(n);
    let mut next = Some(start);
    while order.len() < n {
        let v = match next.take() {
            Some(v) => v,
            None => {
                let mut best: Option<(i64, usize, usize)> = None;
                for &u in &front {
                    for nb in g.neighbours(u) {
                        let w = nb.node;
                        if introduced[w] {
                            continue;
                        }
                        let mut joins = 0i64;
                        let mut closes = 0i64;
                        let mut links = 0usize;
                        for nb2 in g.neighbours(w) {
                            if introduced[nb2.node] {
                                links += 1;
                                if remaining[nb2.node] == 1 {
                                    closes += 1;
                                }
                            }
                        }
                        if links < g.degree(w) {
                            joins = 1;
                        }
                        let key = (joins - closes, usize::MAX - links, w);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
                match best {
                    Some((_, _, w)) => w,
                    None => (0..n)
                        .filter(|&w| !introduced[w])
                        .min_by_key(|&w| (g.degree(w), w))
                        .expect("unintroduced node remains"),
                }
            }
        };
        introduced[v] = true;
        order.push(v);
        for nb in g.neighbours(v) {
            remaining[nb.node] -= 1;
        }
        if remaining[v] > 0 {
            front.push(v);
        }
        front.retain(|&u| remaining[u] > 0);
        if front.len() > cap {
            return None;
        }
    }
    Some(order)
}

/// Best order among greedy sweeps from a few low-degree and peripheral
/// start nodes, if its width and memory needs fit the limits.
pub(crate) fn plan(g: &SignedGraph) -> Option<Plan> {
    let n = g.node_count();
    if n == 0 || g.edge_count() >= u16::MAX as usize {
        return None;
    }
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (g.degree(v), v));
    starts.truncate(4);
    starts.push(peripheral(g));
    starts.sort_unstable();
    starts.dedup();

    let mut best: Option<(usize, Vec<usize>)> = None;
    for s in starts {
        let cap = best.as_ref().map_or(MAX_WIDTH, |b| b.0 - 1);
        let Some(order) = greedy_order(g, s, cap) else {
            continue;
        };
        if let Some((w, bytes)) = width_of(g, &order, cap) {
            if bytes <= CHOICE_BUDGET {
                best = Some((w, order));
            }
        }
    }
    best.map(|(_, order)| Plan { order })
}

/// End point of a BFS from the end point of a BFS from node 0.
fn peripheral(g: &SignedGraph) -> usize {
    let far = |s: usize| {
        let mut dist = vec![usize::MAX; g.node_count()];
        let mut queue = std::collections::VecDeque::from([s]);
        dist[s] = 0;
        let mut last = s;
        while let Some(u) = queue.pop_front() {
            last = u;
            for nb in g.neighbours(u) {
                if dist[nb.node] == usize::MAX {
                    dist[nb.node] = dist[u] + 1;
                    queue.push_back(nb.node);
                }
            }
        }
        last
    };
    far(far(0))
}

/// Runs the sweep; `None` if the deadline passes first.
pub(crate) fn solve(g: &SignedGraph, plan: &Plan, deadline: Option<Instant>) -> Option<(usize, Colouring)> {
    let n = g.node_count();
    let mut remaining: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut slot = vec![usize::MAX; n];
    let mut front: Vec<usize> = Vec::new();
    let mut table: Vec<u16> = vec![0];
    let mut scratch: Vec<u16> = Vec::new();
    // (retired node, bit-packed colour choice indexed by the remaining frontier)
    let mut choices: Vec<(usize, Vec<u64>)> = Vec::new();
    // Frontier snapshot after each retirement, needed for the replay.
    let mut fronts: Vec<Vec<usize>> = Vec::new();

    for &v in &plan.order {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return None;
        }
        // Introduce v as the new top bit.
        let k = front.len();
        let (mut pos_mask, mut neg_mask) = (0usize, 0usize);
        for nb in g.neighbours(v) {
            if slot[nb.node] != usize::MAX {
                if nb.sign.is_negative() {
                    neg_mask |= 1 << slot[nb.node];
                } else {
                    pos_mask |= 1 << slot[nb.node];
                }
            }
        }
        let full = (1usize << k) - 1;
        scratch.clear();
        scratch.resize(table.len() * 2, 0);
        let (low, high) = scratch.split_at_mut(table.len());
        for (s, &t) in table.iter().enumerate() {
            let ones_pos = (s & pos_mask).count_ones() as u16;
            let ones_neg = (s & neg_mask).count_ones() as u16;
            let zeros_neg = (!s & full & neg_mask).count_ones() as u16;
            let zeros_pos = (!s & full & pos_mask).count_ones() as u16;
            // Colour 0 at v frustrates positive edges to 1s and negative edges to 0s.
            low[s] = t + ones_pos + zeros_neg;
            high[s] = t + zeros_pos + ones_neg;
        }
        std::mem::swap(&mut table, &mut scratch);
        slot[v] = k;
        front.push(v);

        for nb in g.neighbours(v) {
            remaining[nb.node] -= 1;
        }
        let mut retire: Vec<usize> = front.iter().copied().filter(|&u| remaining[u] == 0).collect();
        retire.sort_by_key(|&u| std::cmp::Reverse(slot[u]));
        for u in retire {
            let i = slot[u];
            let half = table.len() / 2;
            scratch.clear();
            scratch.resize(half, 0);
            let mut bits = vec![0u64; half.div_ceil(64)];
            let low_mask = (1usize << i) - 1;
            for (s2, out) in scratch.iter_mut().enumerate() {
                let base = (s2 & low_mask) | ((s2 & !low_mask) << 1);
                let a = table[base];
                let b = table[base | (1 << i)];
                if b < a {
                    *out = b;
                    bits[s2 / 64] |= 1 << (s2 % 64);
                } else {
                    *out = a;
                }
            }
            std::mem::swap(&mut table, &mut scratch);
            front.remove(i);
            slot[u] = usize::MAX;
            for (j, &w) in front.iter().enumerate().skip(i) {
                slot[w] = j;
            }
            choices.push((u, bits));
            fronts.push(front.clone());
        }
    }
    debug_assert!(front.is_empty() && table.len() == 1);
    let best = table[0] as usize;

    // Replay: walk retirements backwards, reinserting each retired node's bit.
    let mut colour = vec![false; n];
    for ((u, bits), after) in choices.iter().zip(&fronts).rev() {
        let mut s2 = 0usize;
        for (j, &w) in after.iter().enumerate() {
            if colour[w] {
                s2 |= 1 << j;
            }
        }
        colour[*u] = bits[s2 / 64] >> (s2 % 64) & 1 == 1;
    }
    Some((best, Colouring::from_bits(colour)))
}
