//! Branch-and-bound over node colours for one biconnected block.
//!
//! Nodes are branched in a fixed order (most neighbours among earlier
//! nodes, then higher degree, then lower id), which makes the set of
//! unassigned nodes at depth `p` always the suffix `order[p..]`. The exact
//! frustration index of every suffix is therefore a valid bound on the
//! edges not yet touched by the assignment, and is computed first for the
//! shortest suffixes and reused by the longer ones.
//!
//! At depth `p` the pruning bound is
//! `a + Σ_{q > p} min(cnt₀[q], cnt₁[q]) + L(G[order[p+1..]])`, where `a`
//! counts frustrated edges between assigned nodes and `cnt_c[q]` counts the
//! edges from unassigned `q` to assigned nodes that colour `c` would
//! frustrate. The three terms bound disjoint edge sets.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use super::bound::{pack_negative_cycles, pack_within, root_cycle_limit};
use super::{local, sweep, within_gap, SolverConfig};
use crate::graph::{Colouring, SignedGraph};

pub(crate) struct BlockOutcome {
    pub lower: usize,
    pub upper: usize,
    pub colouring: Colouring,
    pub nodes: u64,
}

const DEADLINE_INTERVAL: u64 = 1 << 12;
const GAP_INTERVAL: u64 = 1 << 14;

pub(crate) fn solve_block(g: &SignedGraph, cfg: &SolverConfig, deadline: Option<Instant>) -> BlockOutcome {
    solve_block_with(g, cfg, deadline, true)
}

/// `allow_sweep = false` forces the branch-and-bound even where the frontier
/// sweep would apply.
pub(crate) fn solve_block_with(g: &SignedGraph, cfg: &SolverConfig, deadline: Option<Instant>, allow_sweep: bool) -> BlockOutcome {
    let n = g.node_count();
    let (incumbent, inc_cost) = local::best_colouring(g, cfg);
    let cycle_cap = root_cycle_limit(g);
    let root_lower = pack_negative_cycles(g, cycle_cap).min(inc_cost);
    let done = |lower: usize, upper: usize, colouring: Colouring, nodes: u64| BlockOutcome {
        lower,
        upper,
        colouring,
        nodes,
    };
    if root_lower == inc_cost || within_gap(root_lower, inc_cost, cfg.target_gap) || n < 2 {
        return done(root_lower, inc_cost, incumbent, 0);
    }
    if expired(deadline) {
        return done(root_lower, inc_cost, incumbent, 0);
    }
    if let Some(plan) = sweep::plan(g).filter(|_| allow_sweep) {
        return match sweep::solve(g, &plan, deadline) {
            Some((best, colouring)) => done(best, best, colouring, 0),
            None => done(root_lower, inc_cost, incumbent, 0),
        };
    }

    let order = branching_order(g);
    let mut search = Search::new(g, &order);
    let stride = (n / 16).max(1);

    search.doll[n - 1] = 0;
    search.cur[n - 1] = 0;
    for k in (0..n - 1).rev() {
        let (colour, extra) = search.best_extension(k);
        if colour == 1 {
            for c in &mut search.cur[k + 1..] {
                *c ^= 1;
            }
        }
        search.cur[k] = 0;
        let mut upper = search.doll[k + 1] + extra;
        let mut target = search.doll[k + 1];
        if k == 0 {
            target = target.max(root_lower);
            if inc_cost < upper {
                upper = inc_cost;
                let flip = incumbent.get(order[0]);
                for (p, &v) in order.iter().enumerate() {
                    search.cur[p] = (incumbent.get(v) ^ flip) as u8;
                }
            }
        }

        let gap_target = if k == 0 { cfg.target_gap } else { 0.0 };
        let end = if upper > target {
            search.run(k, upper, target, deadline, gap_target)
        } else {
            End::Complete(upper)
        };

        match end {
            End::Complete(best) => search.doll[k] = best,
            End::Stopped { best, pending_lower } => {
                if k == 0 {
                    let lower = pending_lower.max(root_lower);
                    let colouring = search.colouring(&order);
                    return done(lower, best, colouring, search.nodes);
                }
                let lower = outer_bound(g, &search, k + 1, cycle_cap).max(root_lower).min(inc_cost);
                return done(lower, inc_cost, incumbent, search.nodes);
            }
        }

        if k > 0 && cfg.target_gap > 0.0 && k % stride == 0 {
            let lower = outer_bound(g, &search, k, cycle_cap).max(root_lower).min(inc_cost);
            if within_gap(lower, inc_cost, cfg.target_gap) {
                return done(lower, inc_cost, incumbent, search.nodes);
            }
        }
    }

    let best = search.doll[0];
    done(best, best, search.colouring(&order), search.nodes)
}

fn expired(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

/// `L(G[order[k..]])` plus a cycle packing over every edge with an endpoint
/// outside that suffix.
fn outer_bound(g: &SignedGraph, search: &Search, k: usize, cycle_cap: usize) -> usize {
    let mut alive: Vec<bool> = g
        .edges()
        .iter()
        .map(|e| search.pos[e.u] < k || search.pos[e.v] < k)
        .collect();
    search.doll[k] + pack_within(g, &mut alive, cycle_cap)
}

/// Static branching order; see the module documentation.
pub(crate) fn branching_order(g: &SignedGraph) -> Vec<usize> {
    let n = g.node_count();
    let mut conn = vec![0usize; n];
    let mut placed = vec![false; n];
    let mut heap: BinaryHeap<(usize, usize, Reverse<usize>)> =
        (0..n).map(|v| (0, g.degree(v), Reverse(v))).collect();
    let mut order = Vec::with_capacity(n);
    while let Some((c, _, Reverse(v))) = heap.pop() {
        if placed[v] || c != conn[v] {
            continue;
        }
        placed[v] = true;
        order.push(v);
        for nb in g.neighbours(v) {
            let w = nb.node;
            if !placed[w] {
                conn[w] += 1;
                heap.push((conn[w], g.degree(w), Reverse(w)));
            }
        }
    }
    order
}

enum End {
    Complete(usize),
    Stopped { best: usize, pending_lower: usize },
}

struct Search {
    n: usize,
    pos: Vec<usize>,
    // Edges from each position to later positions, as (position, negative).
    fwd_start: Vec<usize>,
    fwd: Vec<(usize, bool)>,
    doll: Vec<usize>,
    cur: Vec<u8>,
    cnt: Vec<[usize; 2]>,
    colour: Vec<u8>,
    state: Vec<u8>,
    first: Vec<u8>,
    bound_before: Vec<usize>,
    assigned_cost: usize,
    sum_min: usize,
    nodes: u64,
}

impl Search {
    fn new(g: &SignedGraph, order: &[usize]) -> Self {
        let n = g.node_count();
        let mut pos = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mut lists: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for e in g.edges() {
            let (a, b) = (pos[e.u], pos[e.v]);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            lists[lo].push((hi, e.sign.is_negative()));
        }
        let mut fwd_start = Vec::with_capacity(n + 1);
        let mut fwd = Vec::with_capacity(g.edge_count());
        for l in &mut lists {
            l.sort_unstable();
            fwd_start.push(fwd.len());
            fwd.extend_from_slice(l);
        }
        fwd_start.push(fwd.len());
        Search {
            n,
            pos,
            fwd_start,
            fwd,
            doll: vec![0; n + 1],
            cur: vec![0; n],
            cnt: vec![[0, 0]; n],
            colour: vec![0; n],
            state: vec![0; n],
            first: vec![0; n],
            bound_before: vec![0; n],
            assigned_cost: 0,
            sum_min: 0,
            nodes: 0,
        }
    }

    fn colouring(&self, order: &[usize]) -> Colouring {
        let mut bits = vec![false; self.n];
        for (p, &v) in order.iter().enumerate() {
            bits[v] = self.cur[p] == 1;
        }
        Colouring::from_bits(bits)
    }

    /// Cheapest colour for position `k` against the stored suffix colouring.
    fn best_extension(&self, k: usize) -> (u8, usize) {
        let mut cost = [0usize; 2];
        for &(q, negative) in &self.fwd[self.fwd_start[k]..self.fwd_start[k + 1]] {
            for (c, slot) in cost.iter_mut().enumerate() {
                let same = self.cur[q] as usize == c;
                if same == negative {
                    *slot += 1;
                }
            }
        }
        if cost[0] <= cost[1] {
            (0, cost[0])
        } else {
            (1, cost[1])
        }
    }

    fn apply(&mut self, p: usize, c: u8) {
        let cp = self.cnt[p];
        self.assigned_cost += cp[c as usize];
        self.sum_min -= cp[0].min(cp[1]);
        for i in self.fwd_start[p]..self.fwd_start[p + 1] {
            let (q, negative) = self.fwd[i];
            let cq = &mut self.cnt[q];
            let old = cq[0].min(cq[1]);
            // Colour t at q frustrates the edge: same colour on a negative
            // edge, different colour on a positive one.
            let t = if negative { c } else { 1 - c };
            cq[t as usize] += 1;
            self.sum_min = self.sum_min + cq[0].min(cq[1]) - old;
        }
    }

    fn undo(&mut self, p: usize, c: u8) {
        for i in self.fwd_start[p]..self.fwd_start[p + 1] {
            let (q, negative) = self.fwd[i];
            let cq = &mut self.cnt[q];
            let old = cq[0].min(cq[1]);
            let t = if negative { c } else { 1 - c };
            cq[t as usize] -= 1;
            self.sum_min = self.sum_min + cq[0].min(cq[1]) - old;
        }
        let cp = self.cnt[p];
        self.assigned_cost -= cp[c as usize];
        self.sum_min += cp[0].min(cp[1]);
    }

    /// Smallest bound over the subtrees still open on the current path.
    fn pending_lower(&self, k: usize, depth: usize, best: usize) -> usize {
        let mut lower = best;
        for j in k + 1..=depth.min(self.n - 1) {
            if self.state[j] <= 1 {
                lower = lower.min(self.bound_before[j]);
            }
        }
        lower.max(self.doll[k + 1])
    }

    /// Searches the suffix `order[k..]` for a colouring cheaper than
    /// `upper` (whose colouring is in `cur[k..]`), stopping early at `target`.
    fn run(&mut self, k: usize, upper: usize, target: usize, deadline: Option<Instant>, gap: f64) -> End {
        let n = self.n;
        for c in &mut self.cnt[k..] {
            *c = [0, 0];
        }
        self.assigned_cost = 0;
        self.sum_min = 0;
        let mut best = upper;
        self.apply(k, 0);
        self.colour[k] = 0;
        let mut p = k + 1;
        self.state[p] = 0;
        loop {
            if p == n {
                best = self.assigned_cost;
                self.cur[k..].copy_from_slice(&self.colour[k..]);
                if best <= target {
                    return End::Complete(best);
                }
                p = n - 1;
                self.undo(p, self.colour[p]);
                continue;
            }
            if self.state[p] == 0 {
                self.bound_before[p] = self.assigned_cost + self.sum_min + self.doll[p];
                if self.bound_before[p] >= best {
                    self.state[p] = 2;
                } else {
                    let cp = self.cnt[p];
                    self.first[p] = if cp[0] <= cp[1] { 0 } else { 1 };
                }
            }
            if self.state[p] < 2 {
                self.nodes += 1;
                if self.nodes.is_multiple_of(DEADLINE_INTERVAL) && expired(deadline) {
                    let pending_lower = self.pending_lower(k, p, best);
                    return End::Stopped { best, pending_lower };
                }
                if gap > 0.0 && self.nodes.is_multiple_of(GAP_INTERVAL) {
                    let pending_lower = self.pending_lower(k, p, best);
                    if within_gap(pending_lower, best, gap) {
                        return End::Stopped { best, pending_lower };
                    }
                }
                let c = if self.state[p] == 0 { self.first[p] } else { 1 - self.first[p] };
                self.state[p] += 1;
                self.apply(p, c);
                if self.assigned_cost + self.sum_min + self.doll[p + 1] < best {
                    self.colour[p] = c;
                    p += 1;
                    if p < n {
                        self.state[p] = 0;
                    }
                } else {
                    self.undo(p, c);
                }
                continue;
            }
            p -= 1;
            if p == k {
                return End::Complete(best);
            }
            self.undo(p, self.colour[p]);
        }
    }
}
