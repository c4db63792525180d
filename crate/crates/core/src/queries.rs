//! Queries on a community-cut tree: the maximal clustering of source
//! communities around one community, and the overlay of several.

use crate::clustering::Clustering;
use crate::communities::is_source_community;
use crate::error::{domain, Error, Result};
use crate::graph::VertexSet;
use crate::tree::CommunityCutTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusterKind {
    /// One of the query's anchors.
    Given,
    /// A source community derived from the tree.
    Derived,
    /// An intersection of clusters of several maximal clusterings; not
    /// necessarily a source community.
    OverlayIntersection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validation {
    /// Verify every anchor with one max flow.
    Check,
    /// Accept anchors as given.
    Trust,
}

#[derive(Clone, Debug)]
pub struct SCClustering {
    pub clustering: Clustering,
    /// Parallel to `clustering.clusters()`.
    pub kinds: Vec<ClusterKind>,
    pub anchors: Vec<VertexSet>,
    /// Max flows spent on anchor validation.
    pub flows: usize,
}

impl SCClustering {
    pub fn len(&self) -> usize {
        self.clustering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clustering.is_empty()
    }

    pub fn contains_cluster(&self, set: &VertexSet) -> bool {
        self.clustering.clusters().iter().any(|c| c.members == *set)
    }
}

fn validate(tree: &CommunityCutTree, set: &VertexSet, source: usize, validation: Validation) -> Result<usize> {
    let g = tree.graph();
    if set.universe() != g.n() || set.is_empty() {
        return domain("anchor must be a nonempty vertex set of the graph");
    }
    if source >= g.n() || !set.contains(source) {
        return domain(format!("source {source} is not in the anchor"));
    }
    if validation == Validation::Trust {
        return Ok(0);
    }
    if !is_source_community(g, set, source)? {
        return domain(format!(
            "anchor is not a source community of {}: some subset is not stronger connected inside than outside",
            g.label(source)
        ));
    }
    Ok(1)
}

/// Vertices of the tree component holding `start`, avoiding `blocked`.
fn tree_component(tree: &CommunityCutTree, start: usize, blocked: &VertexSet) -> VertexSet {
    let mut seen = VertexSet::singleton(tree.n(), start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in tree.neighbors(v) {
            if !blocked.contains(w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen
}

/// The unique vertex of `set` whose tree parent lies outside it.
fn subtree_root(tree: &CommunityCutTree, set: &VertexSet) -> Result<usize> {
    let mut tops = set
        .iter()
        .filter(|&v| tree.parent(v).is_none_or(|p| !set.contains(p)));
    let top = tops.next().expect("nonempty set");
    if tops.next().is_some() {
        return domain("the set does not induce a connected subtree");
    }
    Ok(top)
}

/// `Ω(S)`: the unique maximal clustering into source communities that
/// contains the source community `set` of `source`.
pub fn maximal_sc_clustering(
    tree: &CommunityCutTree,
    set: &VertexSet,
    source: usize,
    validation: Validation,
) -> Result<SCClustering> {
    if !tree.all_opposites_valid() {
        return Err(Error::State("the tree has invalid opposite records".into()));
    }
    let flows = validate(tree, set, source, validation)?;
    let g = tree.graph();
    let mut top = subtree_root(tree, set)?;

    let root = {
        let mut r = top;
        while let Some(p) = tree.parent(r) {
            r = p;
        }
        r
    };
    let mut chain = vec![(set.clone(), source)];
    let mut used = set.clone();
    while !used.contains(root) {
        let edge = tree.edge_into(top).expect("only the root has no parent");
        let next = tree.edges()[edge].opposite.clone();
        let parent = tree.edges()[edge].tail;
        if !next.is_disjoint(&used) {
            return Err(Error::State("opposite community overlaps the chain".into()));
        }
        top = subtree_root(tree, &next)
            .map_err(|_| Error::State("opposite community is not a subtree".into()))?;
        used.union_with(&next);
        chain.push((next, parent));
    }

    let mut sets = Vec::new();
    let mut reps = Vec::new();
    let mut kinds = Vec::new();
    for (i, (s, r)) in chain.into_iter().enumerate() {
        sets.push(s);
        reps.push(r);
        kinds.push(if i == 0 { ClusterKind::Given } else { ClusterKind::Derived });
    }
    let mut covered = used.clone();
    for v in 0..g.n() {
        if covered.contains(v) {
            continue;
        }
        // a component left after deleting the chain; its top vertex is its
        // source
        let component = tree_component(tree, v, &used);
        let top = subtree_root(tree, &component)?;
        covered.union_with(&component);
        sets.push(component);
        reps.push(top);
        kinds.push(ClusterKind::Derived);
    }
    finish(tree, sets, reps, kinds, vec![set.clone()], flows)
}

fn finish(
    tree: &CommunityCutTree,
    sets: Vec<VertexSet>,
    reps: Vec<usize>,
    kinds: Vec<ClusterKind>,
    anchors: Vec<VertexSet>,
    flows: usize,
) -> Result<SCClustering> {
    let mut tagged: Vec<(VertexSet, usize, ClusterKind)> = sets
        .into_iter()
        .zip(reps)
        .zip(kinds)
        .map(|((s, r), k)| (s, r, k))
        .collect();
    tagged.sort_by_key(|t| t.0.first());
    let kinds = tagged.iter().map(|t| t.2).collect();
    let (sets, reps): (Vec<_>, Vec<_>) = tagged.into_iter().map(|t| (t.0, t.1)).unzip();
    let clustering = Clustering::from_sets(tree.graph(), sets, Some(reps), None)
        .map_err(|e| Error::State(format!("query produced no partition: {e}")))?;
    Ok(SCClustering {
        clustering,
        kinds,
        anchors,
        flows,
    })
}

/// `Ω(S₁, …, S_k)`: the meet of the maximal clusterings of pairwise
/// disjoint anchors, each given with its source.
pub fn overlay_clustering(
    tree: &CommunityCutTree,
    anchors: &[(VertexSet, usize)],
    validation: Validation,
) -> Result<SCClustering> {
    if anchors.is_empty() {
        return domain("overlay needs at least one anchor");
    }
    for (i, (a, _)) in anchors.iter().enumerate() {
        for (b, _) in &anchors[..i] {
            if !a.is_disjoint(b) {
                return domain("overlay anchors must be pairwise disjoint");
            }
        }
    }
    let n = tree.n();
    let mut color = vec![0usize; n];
    let mut flows = 0;
    let mut partitions = Vec::with_capacity(anchors.len());
    for (set, source) in anchors {
        let omega = maximal_sc_clustering(tree, set, *source, validation)?;
        flows += omega.flows;
        recolor(tree, &mut color, omega.clustering.assignment());
        partitions.push(omega);
    }

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for v in 0..n {
        if index[color[v]] == usize::MAX {
            index[color[v]] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index[color[v]]].push(v);
    }
    let mut sets = Vec::new();
    let mut reps = Vec::new();
    let mut kinds = Vec::new();
    for block in blocks {
        let set = VertexSet::from_iter(n, block);
        let kind = if let Some((_, s)) = anchors.iter().find(|(a, _)| *a == set) {
            reps.push(*s);
            ClusterKind::Given
        } else {
            let found = partitions.iter().find_map(|p| {
                p.clustering
                    .clusters()
                    .iter()
                    .find(|c| c.members == set)
                    .map(|c| c.representative)
            });
            match found {
                Some(r) => {
                    reps.push(r);
                    ClusterKind::Derived
                }
                None => {
                    reps.push(set.first().expect("nonempty"));
                    ClusterKind::OverlayIntersection
                }
            }
        };
        kinds.push(kind);
        sets.push(set);
    }
    let anchor_sets = anchors.iter().map(|a| a.0.clone()).collect();
    finish(tree, sets, reps, kinds, anchor_sets, flows)
}

/// Refines `color` by `clusters` in one walk over the tree. All blocks are
/// subtrees, so a fresh color starts exactly where the pair (old color,
/// cluster) changes between a vertex and its child.
fn recolor(tree: &CommunityCutTree, color: &mut [usize], clusters: &[usize]) {
    let old = color.to_vec();
    let mut next = 0;
    let mut stack: Vec<usize> = Vec::new();
    for &root in tree.roots() {
        color[root] = next;
        next += 1;
        stack.push(root);
        while let Some(v) = stack.pop() {
            for &c in tree.children(v) {
                if old[c] == old[v] && clusters[c] == clusters[v] {
                    color[c] = color[v];
                } else {
                    color[c] = next;
                    next += 1;
                }
                stack.push(c);
            }
        }
    }
}
