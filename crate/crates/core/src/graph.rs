//! Undirected weighted graphs with exact costs, vertex sets and contraction.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::cost::Cost;
use crate::error::{domain, Error, Result};

/// A subset of `0..universe` with a cached cardinality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
    len: usize,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(universe),
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        VertexSet {
            bits,
            len: universe,
        }
    }

    pub fn singleton(universe: usize, v: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(v);
        set
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut set = Self::empty(universe);
        for v in items {
            set.insert(v);
        }
        set
    }

    /// Bit `i` of `mask` is vertex `i`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        Self::from_iter(universe, (0..universe).filter(|&i| mask >> i & 1 == 1))
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_full(&self) -> bool {
        self.len == self.universe()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    /// Returns `true` if `v` was newly inserted.
    pub fn insert(&mut self, v: usize) -> bool {
        let fresh = !self.bits.put(v);
        if fresh {
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let present = self.bits.contains(v);
        if present {
            self.bits.set(v, false);
            self.len -= 1;
        }
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn complement(&self) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        VertexSet {
            bits,
            len: self.universe() - self.len,
        }
    }

    fn rebuild(bits: FixedBitSet) -> VertexSet {
        let len = bits.count_ones(..);
        VertexSet { bits, len }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self::rebuild(bits)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self::rebuild(bits)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self::rebuild(bits)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
        self.len = self.bits.count_ones(..);
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub cost: Cost,
}

/// An undirected graph on dense vertex ids `0..n` with positive exact edge
/// costs, no self-loops and at most one edge per vertex pair.
#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

/// Incrementally assembles a [`Graph`]; parallel edges are merged by summing
/// their costs.
#[derive(Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    edge_index: HashMap<(usize, usize), usize>,
    edges: Vec<Edge>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        let mut builder = Self::new();
        for v in 0..n {
            builder.vertex(&v.to_string());
        }
        builder
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Id of the vertex labelled `label`, created on first use.
    pub fn vertex(&mut self, label: &str) -> usize {
        if let Some(&id) = self.label_index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.label_index.insert(label.to_string(), id);
        id
    }

    /// Self-loops are ignored: they never cross a cut.
    pub fn edge(&mut self, u: usize, v: usize, cost: Cost) -> Result<()> {
        let n = self.labels.len();
        if u >= n || v >= n {
            return domain(format!("edge ({u}, {v}) references a missing vertex"));
        }
        if !cost.is_positive() {
            return Err(Error::Validation(format!(
                "edge ({}, {}) has non-positive cost {cost}",
                self.labels[u], self.labels[v]
            )));
        }
        if u == v {
            return Ok(());
        }
        let key = (u.min(v), u.max(v));
        match self.edge_index.get(&key) {
            Some(&i) => self.edges[i].cost += cost,
            None => {
                self.edge_index.insert(key, self.edges.len());
                self.edges.push(Edge {
                    u: key.0,
                    v: key.1,
                    cost,
                });
            }
        }
        Ok(())
    }

    pub fn build(self) -> Graph {
        let mut adjacency = vec![Vec::new(); self.labels.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adjacency[e.u].push((e.v, i));
            adjacency[e.v].push((e.u, i));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            labels: self.labels,
            label_index: self.label_index,
            edges: self.edges,
            adjacency,
        }
    }
}

impl Graph {
    /// Graph on vertices labelled `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize, Cost)]) -> Result<Graph> {
        let mut builder = GraphBuilder::with_vertices(n);
        for (u, v, c) in edges {
            builder.edge(*u, *v, c.clone())?;
        }
        Ok(builder.build())
    }

    /// Unit-cost graph on vertices labelled `0..n`.
    pub fn unit(n: usize, edges: &[(usize, usize)]) -> Graph {
        let weighted: Vec<_> = edges.iter().map(|&(u, v)| (u, v, Cost::one())).collect();
        Self::from_edges(n, &weighted).expect("unit edges are valid")
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `(neighbor, edge index)` pairs sorted by neighbor id.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn weighted_degree(&self, v: usize) -> Cost {
        self.adjacency[v]
            .iter()
            .map(|&(_, e)| &self.edges[e].cost)
            .sum()
    }

    pub fn total_cost(&self) -> Cost {
        self.edges.iter().map(|e| &e.cost).sum()
    }

    pub fn max_edge_cost(&self) -> Option<Cost> {
        self.edges.iter().map(|e| &e.cost).max().cloned()
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.n())
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Resolves labels to a vertex set.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        let mut set = self.empty_set();
        for l in labels {
            let v = self.vertex(l.as_ref()).ok_or_else(|| {
                Error::Validation(format!("unknown vertex label {:?}", l.as_ref()))
            })?;
            set.insert(v);
        }
        Ok(set)
    }

    pub fn labels_of(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|v| self.labels[v].clone()).collect()
    }

    /// Total cost of edges with one endpoint in `a` and the other in `b`.
    /// Only meaningful for disjoint sets.
    pub fn cost_between(&self, a: &VertexSet, b: &VertexSet) -> Cost {
        let mut total = Cost::zero();
        for e in &self.edges {
            if a.contains(e.u) && b.contains(e.v) || a.contains(e.v) && b.contains(e.u) {
                total += &e.cost;
            }
        }
        total
    }

    /// `c(S, V \ S)` for a proper nonempty subset `S`.
    pub fn cut_cost(&self, side: &VertexSet) -> Result<Cost> {
        if side.is_empty() || side.is_full() {
            return domain("cut side must be a proper nonempty subset");
        }
        Ok(self.boundary(side))
    }

    /// `c(S, V \ S)` without the properness check (zero for `S = ∅` or `V`).
    pub fn boundary(&self, side: &VertexSet) -> Cost {
        let mut total = Cost::zero();
        for e in &self.edges {
            if side.contains(e.u) != side.contains(e.v) {
                total += &e.cost;
            }
        }
        total
    }

    /// Components in order of their smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut component = VertexSet::empty(n);
            while let Some(v) = queue.pop_front() {
                component.insert(v);
                for &(w, _) in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            components.push(component);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    /// Contracts every compound to a single vertex, summing parallel edges and
    /// dropping edges inside a compound.
    pub fn contract(&self, compounds: &[VertexSet]) -> Result<(Graph, ContractionMap)> {
        let n = self.n();
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (i, c) in compounds.iter().enumerate() {
            if c.universe() != n {
                return domain("compound has the wrong universe");
            }
            for v in c.iter() {
                if owner[v].replace(i).is_some() {
                    return domain(format!("compounds overlap at vertex {}", self.labels[v]));
                }
            }
        }
        let mut map = vec![usize::MAX; n];
        let mut members: Vec<VertexSet> = Vec::new();
        let mut compound_id: Vec<Option<usize>> = vec![None; compounds.len()];
        let mut builder = GraphBuilder::new();
        for v in 0..n {
            let id = match owner[v] {
                Some(c) => match compound_id[c] {
                    Some(id) => id,
                    None => {
                        let label = format!(
                            "[{}]",
                            compounds[c]
                                .iter()
                                .map(|w| self.labels[w].as_str())
                                .collect::<Vec<_>>()
                                .join(",")
                        );
                        let id = builder.vertex(&label);
                        compound_id[c] = Some(id);
                        members.push(compounds[c].clone());
                        id
                    }
                },
                None => {
                    let id = builder.vertex(&self.labels[v]);
                    members.push(VertexSet::singleton(n, v));
                    id
                }
            };
            map[v] = id;
        }
        for e in &self.edges {
            builder.edge(map[e.u], map[e.v], e.cost.clone())?;
        }
        Ok((builder.build(), ContractionMap { map, members }))
    }

    /// Subgraph induced by `set`; the returned vector maps new ids to old ones.
    pub fn induced(&self, set: &VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = set.to_vec();
        let mut new_id = vec![usize::MAX; self.n()];
        let mut builder = GraphBuilder::new();
        for &v in &old {
            new_id[v] = builder.vertex(&self.labels[v]);
        }
        for e in &self.edges {
            if set.contains(e.u) && set.contains(e.v) {
                builder
                    .edge(new_id[e.u], new_id[e.v], e.cost.clone())
                    .expect("induced edges are valid");
            }
        }
        (builder.build(), old)
    }
}

/// Maps original vertices onto the vertices of a contracted graph.
#[derive(Clone, Debug)]
pub struct ContractionMap {
    map: Vec<usize>,
    members: Vec<VertexSet>,
}

impl ContractionMap {
    pub fn image(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn members(&self, contracted: usize) -> &VertexSet {
        &self.members[contracted]
    }

    pub fn contracted_len(&self) -> usize {
        self.members.len()
    }

    /// Original vertices represented by a set of contracted vertices.
    pub fn expand(&self, contracted: &VertexSet) -> VertexSet {
        let n = self.map.len();
        let mut out = VertexSet::empty(n);
        for c in contracted.iter() {
            out.union_with(&self.members[c]);
        }
        out
    }

    /// Image of a set of original vertices.
    pub fn project(&self, original: &VertexSet) -> VertexSet {
        VertexSet::from_iter(self.members.len(), original.iter().map(|v| self.map[v]))
    }
}
