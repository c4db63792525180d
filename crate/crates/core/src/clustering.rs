//! Cut clustering: CutC on the α-augmented graph, cut-cost lines, the exact
//! parametric hierarchy search, the binary-search baseline and modularity.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::cost::Cost;
use crate::error::{domain, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::maxflow::{FlowNetwork, FlowResult};

/// `G` plus an artificial vertex `t = n` joined to every vertex by cost `α`.
pub struct AugmentedGraph<'g> {
    base: &'g Graph,
    alpha: Cost,
    network: FlowNetwork,
}

pub fn augment(g: &Graph, alpha: Cost) -> Result<AugmentedGraph<'_>> {
    if alpha.is_negative() {
        return domain(format!("alpha must be non-negative, got {alpha}"));
    }
    let n = g.n();
    let base = g.edges().iter().map(|e| (e.u, e.v, &e.cost));
    let artificial = (0..n).map(|v| (v, n, &alpha));
    let network = FlowNetwork::new(n + 1, base.chain(artificial))?;
    Ok(AugmentedGraph {
        base: g,
        alpha,
        network,
    })
}

impl AugmentedGraph<'_> {
    pub fn base(&self) -> &Graph {
        self.base
    }

    pub fn alpha(&self) -> &Cost {
        &self.alpha
    }

    /// Id of the artificial vertex.
    pub fn artificial(&self) -> usize {
        self.base.n()
    }

    /// All edges including the `n` artificial ones (which may cost 0).
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Cost)> + '_ {
        let t = self.artificial();
        self.base
            .edges()
            .iter()
            .map(|e| (e.u, e.v, &e.cost))
            .chain((0..t).map(move |v| (v, t, &self.alpha)))
    }

    pub fn edge_count(&self) -> usize {
        self.base.m() + self.base.n()
    }

    /// Max flow from `u` to the artificial vertex.
    pub fn flow(&self, u: usize) -> Result<FlowResult> {
        self.network.solve(u, self.artificial())
    }

    /// `SC(u, t)` in `G_α`, as a subset of the base vertex set.
    pub fn community(&self, u: usize) -> Result<VertexSet> {
        let side = self.flow(u)?.source_side;
        Ok(VertexSet::from_iter(
            self.base.n(),
            side.iter().filter(|&v| v < self.base.n()),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub members: VertexSet,
    pub representative: usize,
    /// `c(C, V∖C)`.
    pub boundary: Cost,
}

impl Cluster {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn line(&self) -> CutCostLine {
        CutCostLine {
            intercept: self.boundary.clone(),
            slope: self.size(),
        }
    }
}

/// A partition of the vertex set, clusters ordered by their smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clustering {
    clusters: Vec<Cluster>,
    assignment: Vec<usize>,
    alpha: Option<Cost>,
}

impl Clustering {
    /// Validates that `sets` partition `V`. Missing representatives default
    /// to the smallest member.
    pub fn from_sets(
        g: &Graph,
        sets: Vec<VertexSet>,
        representatives: Option<Vec<usize>>,
        alpha: Option<Cost>,
    ) -> Result<Clustering> {
        let n = g.n();
        let reps = match representatives {
            Some(r) if r.len() != sets.len() => {
                return domain("one representative per cluster is required")
            }
            Some(r) => r,
            None => sets.iter().map(|s| s.first().unwrap_or(0)).collect(),
        };
        let mut owner = vec![usize::MAX; n];
        for (i, s) in sets.iter().enumerate() {
            if s.universe() != n || s.is_empty() {
                return domain("clusters must be nonempty subsets of V");
            }
            if !s.contains(reps[i]) {
                return domain("representative outside its cluster");
            }
            for v in s.iter() {
                if owner[v] != usize::MAX {
                    return domain(format!("vertex {} lies in two clusters", g.label(v)));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return domain(format!("vertex {} is not covered", g.label(v)));
        }
        let mut clusters: Vec<Cluster> = sets
            .into_iter()
            .zip(reps)
            .map(|(members, representative)| Cluster {
                boundary: g.boundary(&members),
                members,
                representative,
            })
            .collect();
        clusters.sort_by_key(|c| c.members.first());
        let mut assignment = vec![0; n];
        for (i, c) in clusters.iter().enumerate() {
            for v in c.members.iter() {
                assignment[v] = i;
            }
        }
        Ok(Clustering {
            clusters,
            assignment,
            alpha,
        })
    }

    pub fn singletons(g: &Graph) -> Clustering {
        let sets = (0..g.n()).map(|v| VertexSet::singleton(g.n(), v)).collect();
        Clustering::from_sets(g, sets, None, g.max_edge_cost()).expect("singletons partition V")
    }

    /// Connected components, each represented by its first vertex in CutC
    /// order.
    pub fn components(g: &Graph) -> Clustering {
        let order = cutc_order(g);
        let mut rank = vec![0; g.n()];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let sets = g.connected_components();
        let reps = sets
            .iter()
            .map(|s| s.iter().min_by_key(|&v| rank[v]).expect("nonempty"))
            .collect();
        Clustering::from_sets(g, sets, Some(reps), Some(Cost::zero()))
            .expect("components partition V")
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn sets(&self) -> Vec<VertexSet> {
        self.clusters.iter().map(|c| c.members.clone()).collect()
    }

    /// Index of the cluster containing `v`.
    pub fn cluster_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn alpha(&self) -> Option<&Cost> {
        self.alpha.as_ref()
    }

    /// Same partition, ignoring representatives and α.
    pub fn same_partition(&self, other: &Clustering) -> bool {
        self.clusters.len() == other.clusters.len()
            && self
                .clusters
                .iter()
                .zip(&other.clusters)
                .all(|(a, b)| a.members == b.members)
    }

    /// Every cluster of `self` lies inside a cluster of `coarser`.
    pub fn is_nested_in(&self, coarser: &Clustering) -> bool {
        self.clusters.iter().all(|c| {
            let parent = coarser.assignment[c.representative];
            c.members.is_subset(&coarser.clusters[parent].members)
        })
    }

    /// Labels of the members of every cluster.
    pub fn labelled(&self, g: &Graph) -> Vec<Vec<String>> {
        self.clusters.iter().map(|c| g.labels_of(&c.members)).collect()
    }
}

/// Vertices by non-increasing weighted degree, ties by id.
pub fn cutc_order(g: &Graph) -> Vec<usize> {
    let degrees: Vec<Cost> = (0..g.n()).map(|v| g.weighted_degree(v)).collect();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
    order
}

pub fn cutc(g: &Graph, alpha: &Cost) -> Result<Clustering> {
    Ok(cutc_counted(g, alpha)?.0)
}

/// CutC together with the number of max flows it ran.
pub fn cutc_counted(g: &Graph, alpha: &Cost) -> Result<(Clustering, usize)> {
    let augmented = augment(g, alpha.clone())?;
    let n = g.n();
    let mut covered = VertexSet::empty(n);
    let mut found: Vec<(usize, VertexSet)> = Vec::new();
    let mut flows = 0;
    for u in cutc_order(g) {
        if covered.contains(u) {
            continue;
        }
        let community = augmented.community(u)?;
        flows += 1;
        found.retain(|(r, _)| !community.contains(*r));
        covered.union_with(&community);
        found.push((u, community));
    }
    let (reps, sets): (Vec<usize>, Vec<VertexSet>) = found.into_iter().unzip();
    let clustering = Clustering::from_sets(g, sets, Some(reps), Some(alpha.clone()))
        .map_err(|e| Error::State(format!("CutC produced no partition: {e}")))?;
    Ok((clustering, flows))
}

/// `ω_S(α) = c(S, V∖S) + |S|·α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutCostLine {
    pub intercept: Cost,
    pub slope: usize,
}

impl CutCostLine {
    pub fn of(g: &Graph, s: &VertexSet) -> CutCostLine {
        CutCostLine {
            intercept: g.boundary(s),
            slope: s.len(),
        }
    }

    pub fn at(&self, alpha: &Cost) -> Cost {
        &self.intercept + &alpha.times(self.slope)
    }
}

/// Where the lines of a parent and a smaller child meet, if at `α ≥ 0`.
pub fn intersection_alpha(parent: &CutCostLine, child: &CutCostLine) -> Result<Option<Cost>> {
    if child.slope >= parent.slope {
        return domain(format!(
            "child slope {} must be below parent slope {}",
            child.slope, parent.slope
        ));
    }
    let alpha = (&child.intercept - &parent.intercept).div_int((parent.slope - child.slope) as i64);
    Ok((!alpha.is_negative()).then_some(alpha))
}

/// The candidate parameter between two nested clusterings: the smallest,
/// over parents in `coarse`, of the largest intersection with a child line.
pub fn alpha_m(fine: &Clustering, coarse: &Clustering) -> Result<Cost> {
    if fine.len() <= coarse.len() {
        return domain("the finer clustering must have more clusters");
    }
    let mut lambda: Vec<Option<Cost>> = vec![None; coarse.len()];
    let mut children = vec![0usize; coarse.len()];
    for child in fine.clusters() {
        let p = coarse.cluster_of(child.representative);
        let parent = &coarse.clusters()[p];
        if !child.members.is_subset(&parent.members) {
            return domain("clusterings are not nested");
        }
        children[p] += 1;
        if child.size() == parent.size() {
            continue;
        }
        if let Some(x) = intersection_alpha(&parent.line(), &child.line())? {
            if lambda[p].as_ref().is_none_or(|best| x > *best) {
                lambda[p] = Some(x);
            }
        }
    }
    lambda
        .into_iter()
        .zip(children)
        .filter(|(_, k)| *k > 1)
        .filter_map(|(l, _)| l)
        .min()
        .ok_or_else(|| Error::Domain("no parent line meets a child line".into()))
}

#[derive(Clone, Debug)]
pub struct Level {
    pub clustering: Clustering,
    /// Parameter at which the level was produced.
    pub alpha: Cost,
}

/// Levels from all singletons up to the connected components.
#[derive(Clone, Debug)]
pub struct Hierarchy {
    pub levels: Vec<Level>,
    /// `breakpoints[i]` separates `levels[i]` and `levels[i + 1]`: CutC
    /// returns `levels[i]` at the breakpoint and `levels[i + 1]` just below.
    pub breakpoints: Vec<Cost>,
    pub cutc_calls: usize,
    pub flows: usize,
}

impl Hierarchy {
    pub fn h(&self) -> usize {
        self.levels.len()
    }

    /// Index of the level with the highest modularity; the finest wins ties.
    pub fn best_modularity_level(&self, g: &Graph) -> Result<usize> {
        let mut best: Option<(usize, Cost)> = None;
        for (i, level) in self.levels.iter().enumerate() {
            let q = modularity(g, &level.clustering)?;
            if best.as_ref().is_none_or(|(_, b)| q > *b) {
                best = Some((i, q));
            }
        }
        best.map(|b| b.0).ok_or_else(|| Error::Domain("empty hierarchy".into()))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct HierarchyOptions {
    /// Run independent sub-searches on the rayon pool.
    pub parallel: bool,
}

pub fn complete_hierarchy(g: &Graph) -> Result<Hierarchy> {
    complete_hierarchy_with(g, HierarchyOptions::default())
}

struct Search {
    levels: Vec<Level>,
    breakpoints: Vec<Cost>,
    cutc_calls: usize,
    flows: usize,
}

pub fn complete_hierarchy_with(g: &Graph, options: HierarchyOptions) -> Result<Hierarchy> {
    let (bottom, top) = trivial_levels(g)?;
    if bottom.clustering.len() == top.clustering.len() {
        return Ok(Hierarchy {
            levels: vec![top],
            breakpoints: Vec::new(),
            cutc_calls: 0,
            flows: 0,
        });
    }
    let inner = search_between(g, &bottom.clustering, &top.clustering, options.parallel)?;
    let mut levels = vec![bottom];
    levels.extend(inner.levels);
    levels.push(top);
    Ok(Hierarchy {
        levels,
        breakpoints: inner.breakpoints,
        cutc_calls: inner.cutc_calls,
        flows: inner.flows,
    })
}

fn trivial_levels(g: &Graph) -> Result<(Level, Level)> {
    if g.n() == 0 {
        return domain("the graph has no vertices");
    }
    let alpha0 = g.max_edge_cost().unwrap_or_else(Cost::zero);
    Ok((
        Level {
            clustering: Clustering::singletons(g),
            alpha: alpha0,
        },
        Level {
            clustering: Clustering::components(g),
            alpha: Cost::zero(),
        },
    ))
}

fn search_between(g: &Graph, fine: &Clustering, coarse: &Clustering, parallel: bool) -> Result<Search> {
    let alpha = alpha_m(fine, coarse)?;
    let (middle, flows) = cutc_counted(g, &alpha)?;
    if middle.len() == fine.len() {
        debug_assert!(middle.same_partition(fine));
        return Ok(Search {
            levels: Vec::new(),
            breakpoints: vec![alpha],
            cutc_calls: 1,
            flows,
        });
    }
    if middle.len() <= coarse.len() {
        return Err(Error::State(format!(
            "CutC at {alpha} did not land strictly between two levels"
        )));
    }
    debug_assert!(fine.is_nested_in(&middle) && middle.is_nested_in(coarse));
    let (lower, upper) = if parallel {
        rayon::join(
            || search_between(g, fine, &middle, parallel),
            || search_between(g, &middle, coarse, parallel),
        )
    } else {
        (
            search_between(g, fine, &middle, parallel),
            search_between(g, &middle, coarse, parallel),
        )
    };
    let (mut lower, upper) = (lower?, upper?);
    lower.levels.push(Level {
        clustering: middle,
        alpha,
    });
    lower.levels.extend(upper.levels);
    lower.breakpoints.extend(upper.breakpoints);
    lower.cutc_calls += 1 + upper.cutc_calls;
    lower.flows += flows + upper.flows;
    Ok(lower)
}

/// Baseline: recursive bisection over the grid `0, step, 2·step, …, α₀`.
/// Finds every level whose parameter interval holds a grid point that the
/// bisection reaches, so levels can be missed. Breakpoints are reported as
/// the smallest grid parameter seen to produce the finer level.
pub fn binary_search_hierarchy(g: &Graph, step: &Cost) -> Result<Hierarchy> {
    if !step.is_positive() {
        return domain(format!("step must be positive, got {step}"));
    }
    let (bottom, top) = trivial_levels(g)?;
    let alpha0 = bottom.alpha.clone();
    let whole: BigInt = (&alpha0 / step).as_rational().floor().to_integer();
    let whole = whole
        .to_u64()
        .ok_or_else(|| Error::Capacity(format!("grid of {whole} points is too large")))?;
    let exact = step.times(whole as usize) == alpha0;
    // grid index `last` stands for α₀ itself
    let last = if exact { whole } else { whole + 1 };
    let point = |k: u64| {
        if k == last {
            alpha0.clone()
        } else {
            step.times(k as usize)
        }
    };

    let mut found: Vec<(u64, Clustering)> = vec![(0, top.clustering.clone())];
    if last > 0 {
        found.push((last, bottom.clustering.clone()));
    }
    let mut cutc_calls = 0;
    let mut flows = 0;
    let mut stack = vec![(0u64, last, top.clustering.len(), bottom.clustering.len())];
    while let Some((lo, hi, lo_count, hi_count)) = stack.pop() {
        if lo_count == hi_count || hi - lo <= 1 {
            continue;
        }
        let mid = lo + (hi - lo) / 2;
        let (clustering, f) = cutc_counted(g, &point(mid))?;
        cutc_calls += 1;
        flows += f;
        let count = clustering.len();
        found.push((mid, clustering));
        stack.push((mid, hi, count, hi_count));
        stack.push((lo, mid, lo_count, count));
    }

    // one level per cluster count, finest first, keeping its smallest α
    found.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
    found.dedup_by(|later, earlier| later.1.len() == earlier.1.len());
    let levels: Vec<Level> = found
        .iter()
        .map(|(k, c)| Level {
            alpha: point(*k),
            clustering: c.clone(),
        })
        .collect();
    let breakpoints = levels[..levels.len().saturating_sub(1)]
        .iter()
        .map(|l| l.alpha.clone())
        .collect();
    Ok(Hierarchy {
        levels,
        breakpoints,
        cutc_calls,
        flows,
    })
}

/// Newman-Girvan modularity with edge costs as weights, exact.
pub fn modularity(g: &Graph, clustering: &Clustering) -> Result<Cost> {
    let total = g.total_cost();
    if total.is_zero() {
        return domain("modularity is undefined without edges");
    }
    let k = clustering.len();
    let mut inner = vec![Cost::zero(); k];
    let mut degree = vec![Cost::zero(); k];
    for e in g.edges() {
        let (a, b) = (clustering.cluster_of(e.u), clustering.cluster_of(e.v));
        degree[a] += &e.cost;
        degree[b] += &e.cost;
        if a == b {
            inner[a] += &e.cost;
        }
    }
    let twice = total.times(2);
    let mut q = Cost::zero();
    for (w_in, d) in inner.iter().zip(&degree) {
        let share = d / &twice;
        q += w_in / &total;
        q -= &(&share * &share);
    }
    Ok(q)
}

/// [`modularity`] of an arbitrary family of sets, which must partition `V`.
pub fn modularity_of_sets(g: &Graph, sets: &[VertexSet]) -> Result<Cost> {
    let clustering = Clustering::from_sets(g, sets.to_vec(), None, None)?;
    modularity(g, &clustering)
}
