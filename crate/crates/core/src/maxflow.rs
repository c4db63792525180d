//! Exact maximum flows and community cuts.
//!
//! Capacities are rational; a network scales them by the least common
//! multiple of their denominators, so the flow itself runs on integers
//! (`i128` when the total capacity is small enough, `BigInt` otherwise).
//! The solver is FIFO push-relabel run to completion, so the final state is a
//! genuine maximum flow and both residual reachability sets are available.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::cost::{scale_to_integers, Cost, ExactInt, Scaled};
use crate::error::{domain, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug)]
enum Capacities {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

/// A reusable flow network on vertices `0..n`. Undirected edges become pairs
/// of opposite arcs that are each other's residual.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    n: usize,
    first: Vec<usize>,
    head: Vec<usize>,
    rev: Vec<usize>,
    caps: Capacities,
    scale: BigInt,
}

/// Outcome of one max-flow computation on a [`FlowNetwork`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult {
    pub value: Cost,
    /// Vertices reachable from the source in the residual network.
    pub source_side: VertexSet,
    /// Vertices that reach the sink in the residual network.
    pub sink_side: VertexSet,
}

impl FlowNetwork {
    /// Edges with zero capacity are skipped, as are self-loops.
    pub fn new<'a, I>(n: usize, edges: I) -> Result<FlowNetwork>
    where
        I: IntoIterator<Item = (usize, usize, &'a Cost)>,
    {
        let mut kept: Vec<(usize, usize, &Cost)> = Vec::new();
        for (u, v, c) in edges {
            if u >= n || v >= n {
                return domain(format!("arc ({u}, {v}) outside a network of {n} vertices"));
            }
            if c.is_negative() {
                return domain(format!("negative capacity {c}"));
            }
            if u != v && !c.is_zero() {
                kept.push((u, v, c));
            }
        }

        let Scaled {
            scale,
            values: scaled,
            small,
        } = scale_to_integers(kept.iter().map(|e| e.2));

        let mut lists: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (k, &(u, v, _)) in kept.iter().enumerate() {
            lists[u].push((v, 2 * k));
            lists[v].push((u, 2 * k + 1));
        }
        let mut first = Vec::with_capacity(n + 1);
        let mut head = Vec::with_capacity(2 * kept.len());
        let mut slot = vec![0; 2 * kept.len()];
        first.push(0);
        for list in &mut lists {
            list.sort_unstable();
            for &(w, side) in list.iter() {
                slot[side] = head.len();
                head.push(w);
            }
            first.push(head.len());
        }
        let mut rev = vec![0; head.len()];
        let mut arc_caps = vec![BigInt::zero(); head.len()];
        for k in 0..kept.len() {
            let (a, b) = (slot[2 * k], slot[2 * k + 1]);
            rev[a] = b;
            rev[b] = a;
            arc_caps[a] = scaled[k].clone();
            arc_caps[b] = scaled[k].clone();
        }
        let caps = if small {
            Capacities::Small(arc_caps.iter().map(|c| c.to_i128().expect("fits")).collect())
        } else {
            Capacities::Big(arc_caps)
        };
        Ok(FlowNetwork {
            n,
            first,
            head,
            rev,
            caps,
            scale,
        })
    }

    /// Network of an undirected graph.
    pub fn from_graph(g: &Graph) -> FlowNetwork {
        FlowNetwork::new(g.n(), g.edges().iter().map(|e| (e.u, e.v, &e.cost)))
            .expect("graph edges are valid arcs")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether the exact integer path uses arbitrary-precision capacities.
    pub fn uses_big_integers(&self) -> bool {
        matches!(self.caps, Capacities::Big(_))
    }

    /// Maximum flow from `s` to `t` with both residual reachability sets.
    pub fn solve(&self, s: usize, t: usize) -> Result<FlowResult> {
        if s >= self.n || t >= self.n {
            return domain("terminal outside the network");
        }
        if s == t {
            return domain("source and sink coincide");
        }
        let (value, source_side, sink_side) = match &self.caps {
            Capacities::Small(caps) => {
                let (value, residual) = self.push_relabel(caps, s, t);
                let sides = self.reachability(&residual, s, t);
                (BigInt::from(value), sides.0, sides.1)
            }
            Capacities::Big(caps) => {
                let (value, residual) = self.push_relabel(caps, s, t);
                let sides = self.reachability(&residual, s, t);
                (value, sides.0, sides.1)
            }
        };
        Ok(FlowResult {
            value: Cost::from_rational(BigRational::new(value, self.scale.clone())),
            source_side,
            sink_side,
        })
    }

    fn arcs(&self, v: usize) -> std::ops::Range<usize> {
        self.first[v]..self.first[v + 1]
    }

    fn push_relabel<C: ExactInt>(&self, caps: &[C], s: usize, t: usize) -> (C, Vec<C>) {
        let n = self.n;
        let mut residual = caps.to_vec();
        let mut excess = vec![C::zero(); n];
        let mut height = vec![0usize; n];
        let mut current: Vec<usize> = (0..n).map(|v| self.first[v]).collect();
        let mut active = VecDeque::new();
        let mut queued = vec![false; n];

        for a in self.arcs(s) {
            if residual[a].is_zero() {
                continue;
            }
            let w = self.head[a];
            let delta = residual[a].clone();
            residual[a] = C::zero();
            residual[self.rev[a]] += &delta;
            excess[w] += &delta;
            if w != t && !queued[w] {
                queued[w] = true;
                active.push_back(w);
            }
        }
        self.global_relabel(&residual, &mut height, s, t);

        let mut relabels = 0usize;
        while let Some(v) = active.pop_front() {
            queued[v] = false;
            while !excess[v].is_zero() {
                if current[v] == self.first[v + 1] {
                    let mut lowest = usize::MAX;
                    for a in self.arcs(v) {
                        if !residual[a].is_zero() {
                            lowest = lowest.min(height[self.head[a]]);
                        }
                    }
                    height[v] = lowest + 1;
                    current[v] = self.first[v];
                    relabels += 1;
                    continue;
                }
                let a = current[v];
                let w = self.head[a];
                if !residual[a].is_zero() && height[v] == height[w] + 1 {
                    let delta = excess[v].clone().min(residual[a].clone());
                    residual[a] -= &delta;
                    residual[self.rev[a]] += &delta;
                    excess[v] -= &delta;
                    excess[w] += &delta;
                    if w != s && w != t && !queued[w] {
                        queued[w] = true;
                        active.push_back(w);
                    }
                    if excess[v].is_zero() {
                        break;
                    }
                }
                current[v] += 1;
            }
            if relabels >= n {
                relabels = 0;
                self.global_relabel(&residual, &mut height, s, t);
                for (v, c) in current.iter_mut().enumerate() {
                    *c = self.first[v];
                }
            }
        }
        (excess[t].clone(), residual)
    }

    /// Exact distance labels: distance to `t`, or `n +` distance to `s` for
    /// vertices cut off from `t`.
    fn global_relabel<C: ExactInt>(&self, residual: &[C], height: &mut [usize], s: usize, t: usize) {
        let n = self.n;
        let unset = usize::MAX;
        height.iter_mut().for_each(|h| *h = unset);
        let mut queue = VecDeque::new();
        for (root, base) in [(t, 0), (s, n)] {
            height[root] = base;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                for a in self.arcs(x) {
                    let y = self.head[a];
                    if height[y] == unset && !residual[self.rev[a]].is_zero() {
                        height[y] = height[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        for h in height.iter_mut() {
            if *h == unset {
                *h = 2 * n;
            }
        }
    }

    fn reachability<C: ExactInt>(&self, residual: &[C], s: usize, t: usize) -> (VertexSet, VertexSet) {
        let forward = self.bfs(s, |a| &residual[a]);
        let backward = self.bfs(t, |a| &residual[self.rev[a]]);
        debug_assert!(!forward.contains(t) && !backward.contains(s));
        (forward, backward)
    }

    fn bfs<'a, C: ExactInt + 'a>(&self, root: usize, cap: impl Fn(usize) -> &'a C) -> VertexSet {
        let mut seen = VertexSet::singleton(self.n, root);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for a in self.arcs(x) {
                let y = self.head[a];
                if !seen.contains(y) && !cap(a).is_zero() {
                    seen.insert(y);
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

/// The community cut of a source against an opponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommunityCutResult {
    /// `SC(s, T)`: the smallest minimum cut side containing the source.
    pub sc_s: VertexSet,
    /// `SC(T, s)`: the smallest minimum cut side containing the opponent.
    pub sc_t: VertexSet,
    pub indecisive: VertexSet,
    /// `λ(s, T)`.
    pub cost: Cost,
}

fn check_terminals(g: &Graph, s: &VertexSet, t: &VertexSet) -> Result<()> {
    if s.universe() != g.n() || t.universe() != g.n() {
        return domain("terminal set has the wrong universe");
    }
    if s.is_empty() || t.is_empty() {
        return domain("terminal sets must be nonempty");
    }
    if !s.is_disjoint(t) {
        return domain("source and sink sets intersect");
    }
    Ok(())
}

/// Maximum flow between two disjoint vertex sets. Sets with more than one
/// vertex are contracted to a single terminal first.
pub fn max_flow(g: &Graph, s: &VertexSet, t: &VertexSet) -> Result<FlowResult> {
    check_terminals(g, s, t)?;
    let first = |x: &VertexSet| x.first().expect("nonempty");
    if s.len() == 1 && t.len() == 1 {
        return FlowNetwork::from_graph(g).solve(first(s), first(t));
    }
    let compounds: Vec<VertexSet> = [s, t].into_iter().filter(|x| x.len() > 1).cloned().collect();
    let (contracted, map) = g.contract(&compounds)?;
    let flow = FlowNetwork::from_graph(&contracted).solve(map.image(first(s)), map.image(first(t)))?;
    Ok(FlowResult {
        value: flow.value,
        source_side: map.expand(&flow.source_side),
        sink_side: map.expand(&flow.sink_side),
    })
}

pub fn community_cut(g: &Graph, s: &VertexSet, t: &VertexSet) -> Result<CommunityCutResult> {
    let flow = max_flow(g, s, t)?;
    Ok(CommunityCutResult::from_flow(flow))
}

/// [`community_cut`] for a single source vertex.
pub fn community_cut_vertex(g: &Graph, s: usize, t: &VertexSet) -> Result<CommunityCutResult> {
    if s >= g.n() {
        return domain(format!("vertex {s} out of range"));
    }
    community_cut(g, &VertexSet::singleton(g.n(), s), t)
}

impl CommunityCutResult {
    pub fn from_flow(flow: FlowResult) -> CommunityCutResult {
        let indecisive = flow.source_side.union(&flow.sink_side).complement();
        CommunityCutResult {
            sc_s: flow.source_side,
            sc_t: flow.sink_side,
            indecisive,
            cost: flow.value,
        }
    }
}
