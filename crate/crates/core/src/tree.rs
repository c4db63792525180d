//! The community-cut tree: a Gomory-Hu tree built from smallest community
//! cuts, with every edge directed towards the community it represents and
//! carrying the opposite community of the same flow.

use crate::cost::Cost;
use crate::error::{domain, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::maxflow::{community_cut_vertex, FlowNetwork};

/// Directed tree edge `tail → head`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub tail: usize,
    pub head: usize,
    /// `λ(head, tail)`.
    pub cost: Cost,
    /// `SC(head, tail)`: the subtree below the edge.
    pub sc: VertexSet,
    /// `SC(tail, head)`; only meaningful while `opposite_valid` holds.
    pub opposite: VertexSet,
    pub opposite_valid: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeMode {
    /// Reject disconnected graphs.
    Strict,
    /// One tree per connected component.
    Forest,
}

#[derive(Clone, Copy, Debug)]
pub struct TreeOptions {
    pub mode: TreeMode,
    /// Recompute opposite records invalidated during construction.
    pub repair_opposites: bool,
}

impl Default for TreeOptions {
    fn default() -> Self {
        TreeOptions {
            mode: TreeMode::Strict,
            repair_opposites: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommunityCutTree {
    graph: Graph,
    /// Sorted by head.
    edges: Vec<TreeEdge>,
    edge_into: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    roots: Vec<usize>,
    flow_count: usize,
    invalidated: usize,
}

pub fn build_sc_tree(g: &Graph) -> Result<CommunityCutTree> {
    build_sc_tree_with(g, TreeOptions::default())
}

pub fn build_sc_tree_with(g: &Graph, options: TreeOptions) -> Result<CommunityCutTree> {
    if g.n() == 0 {
        return domain("the graph has no vertices");
    }
    let components = g.connected_components();
    if components.len() > 1 && options.mode == TreeMode::Strict {
        return domain(format!(
            "graph has {} connected components; use forest mode",
            components.len()
        ));
    }
    let mut edges = Vec::new();
    let mut flows = 0;
    if components.len() == 1 {
        let mut builder = Builder::new(g);
        builder.run()?;
        edges = builder.edges;
        flows = builder.flows;
    } else {
        for component in &components {
            let (sub, old) = g.induced(component);
            let mut builder = Builder::new(&sub);
            builder.run()?;
            flows += builder.flows;
            let lift = |set: &VertexSet| VertexSet::from_iter(g.n(), set.iter().map(|v| old[v]));
            edges.extend(builder.edges.into_iter().map(|e| TreeEdge {
                tail: old[e.tail],
                head: old[e.head],
                cost: e.cost,
                sc: lift(&e.sc),
                opposite: lift(&e.opposite),
                opposite_valid: e.opposite_valid,
            }));
        }
    }
    let invalidated = edges.iter().filter(|e| !e.opposite_valid).count();
    let mut flow_count = flows;
    if options.repair_opposites {
        for e in edges.iter_mut().filter(|e| !e.opposite_valid) {
            let cut = community_cut_vertex(g, e.head, &VertexSet::singleton(g.n(), e.tail))?;
            flow_count += 1;
            debug_assert_eq!(cut.sc_s, e.sc);
            e.opposite = cut.sc_t;
            e.opposite_valid = true;
        }
    }
    CommunityCutTree::assemble(g.clone(), edges, flow_count, invalidated)
}

struct Node {
    members: VertexSet,
    rep: usize,
}

struct Builder<'g> {
    g: &'g Graph,
    network: FlowNetwork,
    nodes: Vec<Node>,
    edges: Vec<TreeEdge>,
    /// Edges incident to each node, all attached at the node's representative.
    incident: Vec<Vec<usize>>,
    flows: usize,
}

impl<'g> Builder<'g> {
    /// `g` must be connected.
    fn new(g: &'g Graph) -> Self {
        Builder {
            g,
            network: FlowNetwork::from_graph(g),
            nodes: vec![Node {
                members: g.full_set(),
                rep: 0,
            }],
            edges: Vec::new(),
            incident: vec![Vec::new()],
            flows: 0,
        }
    }

    fn run(&mut self) -> Result<()> {
        let mut pending = if self.g.n() > 1 { vec![0] } else { Vec::new() };
        while let Some(i) = pending.pop() {
            let fresh = self.split(i)?;
            for node in [fresh, i] {
                if self.nodes[node].members.len() > 1 {
                    pending.push(node);
                }
            }
        }
        Ok(())
    }

    /// Vertices on the far side of an edge attached at the representative
    /// `s`.
    fn far_side(&self, edge: usize, s: usize) -> VertexSet {
        let e = &self.edges[edge];
        if e.head == s {
            e.sc.complement()
        } else {
            e.sc.clone()
        }
    }

    /// Splits node `i` by the step pair (representative, next member) and
    /// returns the index of the new node.
    fn split(&mut self, i: usize) -> Result<usize> {
        let s = self.nodes[i].rep;
        let x = self.nodes[i]
            .members
            .iter()
            .find(|&v| v != s)
            .expect("node has two members");

        // smallest community cuts never cross earlier ones, so the flow runs
        // on the whole graph and yields the exact opposite community as well
        let flow = self.network.solve(s, x)?;
        let (a, b, cost) = (flow.source_side, flow.sink_side, flow.value);
        self.flows += 1;

        // the chosen community and the side of the cut that holds `x`
        let source_smaller = a.len() <= b.len();
        let x_side = if source_smaller { a.complement() } else { b.clone() };
        let new_edge = if source_smaller {
            TreeEdge {
                tail: x,
                head: s,
                cost,
                sc: a,
                opposite: b.clone(),
                opposite_valid: true,
            }
        } else {
            TreeEdge {
                tail: s,
                head: x,
                cost,
                sc: b.clone(),
                opposite: a,
                opposite_valid: true,
            }
        };

        let members = self.nodes[i].members.clone();
        let moved = members.intersection(&x_side);
        self.nodes[i].members = members.difference(&x_side);
        let fresh = self.nodes.len();
        self.nodes.push(Node {
            members: moved,
            rep: x,
        });
        self.incident.push(Vec::new());

        let old = std::mem::take(&mut self.incident[i]);
        for e in old {
            let far = self.far_side(e, s);
            if far.is_disjoint(&x_side) {
                self.incident[i].push(e);
                continue;
            }
            if !far.is_subset(&x_side) {
                return Err(Error::State("community cut crosses an earlier cut".into()));
            }
            self.reconnect(e, s, x, source_smaller, &b);
            self.incident[fresh].push(e);
        }
        let id = self.edges.len();
        self.edges.push(new_edge);
        self.incident[i].push(id);
        self.incident[fresh].push(id);
        Ok(fresh)
    }

    /// Moves the `s` endpoint of edge `e` to `x`. `b` is `SC(x, s)` of the
    /// split flow.
    fn reconnect(&mut self, e: usize, s: usize, x: usize, source_smaller: bool, b: &VertexSet) {
        let edge = &mut self.edges[e];
        if edge.head == s {
            // the edge's community contains the split node: both records
            // carry over unchanged
            edge.head = x;
            return;
        }
        debug_assert_eq!(edge.tail, s);
        edge.tail = x;
        let u = edge.head;
        if edge.opposite_valid && edge.opposite.contains(x) {
            // SC(x, u) = SC(s, u)
            return;
        }
        if source_smaller && edge.opposite_valid && !b.contains(u) {
            // SC(x, u) = SC(x, s)
            edge.opposite = b.clone();
            return;
        }
        edge.opposite_valid = false;
    }
}

impl CommunityCutTree {
    /// Checks the structure of a tree given by its edges and indexes it.
    pub fn assemble(
        graph: Graph,
        mut edges: Vec<TreeEdge>,
        flow_count: usize,
        invalidated: usize,
    ) -> Result<CommunityCutTree> {
        let n = graph.n();
        edges.sort_by_key(|e| e.head);
        let mut edge_into = vec![None; n];
        let mut children = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.tail >= n || e.head >= n || e.tail == e.head {
                return domain("tree edge with invalid endpoints");
            }
            if e.sc.universe() != n || e.opposite.universe() != n {
                return domain("tree edge sets have the wrong universe");
            }
            if edge_into[e.head].replace(i).is_some() {
                return domain(format!("vertex {} has two parents", graph.label(e.head)));
            }
            children[e.tail].push(e.head);
        }
        let roots: Vec<usize> = (0..n).filter(|&v| edge_into[v].is_none()).collect();
        let components = graph.connected_components().len();
        if roots.len() != components || edges.len() != n - components {
            return Err(Error::Validation(
                "edges do not form one tree per component".into(),
            ));
        }
        let tree = CommunityCutTree {
            graph,
            edges,
            edge_into,
            children,
            roots,
            flow_count,
            invalidated,
        };
        tree.check_subtrees()?;
        Ok(tree)
    }

    /// Every edge's community must be exactly the subtree below it.
    fn check_subtrees(&self) -> Result<()> {
        let mut order = Vec::with_capacity(self.n());
        let mut stack = self.roots.clone();
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        if order.len() != self.n() {
            return Err(Error::Validation("tree edges contain a cycle".into()));
        }
        let mut below: Vec<VertexSet> = (0..self.n())
            .map(|v| VertexSet::singleton(self.n(), v))
            .collect();
        for &v in order.iter().rev() {
            for &c in &self.children[v] {
                let sub = below[c].clone();
                below[v].union_with(&sub);
            }
        }
        for e in &self.edges {
            if below[e.head] != e.sc {
                return Err(Error::Validation(format!(
                    "community of edge {} -> {} is not its subtree",
                    self.graph.label(e.tail),
                    self.graph.label(e.head)
                )));
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    /// The root of the (first) component; see [`roots`](Self::roots).
    pub fn root(&self) -> usize {
        self.roots[0]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn is_forest(&self) -> bool {
        self.roots.len() > 1
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.edge_into[v].map(|e| self.edges[e].tail)
    }

    /// Index of the edge entering `v`.
    pub fn edge_into(&self, v: usize) -> Option<usize> {
        self.edge_into[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Tree neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.parent(v).into_iter().chain(self.children[v].iter().copied())
    }

    /// Max flows spent, including repairs of invalidated opposites.
    pub fn flow_count(&self) -> usize {
        self.flow_count
    }

    /// Opposite records that construction could not carry over.
    pub fn invalidated_opposites(&self) -> usize {
        self.invalidated
    }

    pub fn all_opposites_valid(&self) -> bool {
        self.edges.iter().all(|e| e.opposite_valid)
    }

    /// Constant-time membership test in the opposite community of `edge`.
    pub fn opposite_contains(&self, edge: usize, v: usize) -> bool {
        self.edges[edge].opposite.contains(v)
    }

    /// The cheapest edge on the tree path between `u` and `v`, or `None`
    /// when they lie in different components (`λ = 0`).
    pub fn min_cut_value(&self, u: usize, v: usize) -> Option<Cost> {
        if u == v {
            return None;
        }
        let depth = |mut w: usize| {
            let mut d = 0;
            while let Some(p) = self.parent(w) {
                w = p;
                d += 1;
            }
            d
        };
        let (mut a, mut b) = (u, v);
        let (mut da, mut db) = (depth(a), depth(b));
        let mut best: Option<Cost> = None;
        let climb = |w: &mut usize, best: &mut Option<Cost>| {
            let e = &self.edges[self.edge_into[*w].expect("not a root")];
            if best.as_ref().is_none_or(|b| e.cost < *b) {
                *best = Some(e.cost.clone());
            }
            *w = e.tail;
        };
        while da > db {
            climb(&mut a, &mut best);
            da -= 1;
        }
        while db > da {
            climb(&mut b, &mut best);
            db -= 1;
        }
        while a != b {
            self.parent(a)?;
            climb(&mut a, &mut best);
            climb(&mut b, &mut best);
        }
        best
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Community of the tree edge with this index.
    Edge(usize),
    /// Opposite community of the tree edge with this index.
    Opposite(usize),
}

/// Edge communities and opposite communities of a tree, deduplicated.
#[derive(Clone, Debug)]
pub struct MaximalSCSet {
    pub sets: Vec<VertexSet>,
    pub provenance: Vec<Provenance>,
}

impl MaximalSCSet {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

pub fn maximal_scs(tree: &CommunityCutTree) -> Result<MaximalSCSet> {
    if !tree.all_opposites_valid() {
        return Err(Error::State("the tree has invalid opposite records".into()));
    }
    let mut sets: Vec<VertexSet> = Vec::new();
    let mut provenance = Vec::new();
    let candidates = tree
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| (&e.sc, Provenance::Edge(i)))
        .chain(
            tree.edges()
                .iter()
                .enumerate()
                .map(|(i, e)| (&e.opposite, Provenance::Opposite(i))),
        );
    for (set, origin) in candidates {
        if !sets.contains(set) {
            sets.push(set.clone());
            provenance.push(origin);
        }
    }
    Ok(MaximalSCSet { sets, provenance })
}
