//! Web communities, extreme sets and source communities.
//!
//! All comparisons are strict. The whole vertex set counts as a community of
//! every kind since nothing leaves it.

use num_traits::ToPrimitive;

use crate::cost::{scale_to_integers, Cost, ExactInt};
use crate::error::{domain, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::maxflow::community_cut_vertex;

/// Default bound on the set size for exhaustive subset checks.
pub const BRUTE_FORCE_GUARD: usize = 20;

fn check_set(g: &Graph, s: &VertexSet) -> Result<()> {
    if s.universe() != g.n() {
        return domain("vertex set has the wrong universe");
    }
    if s.is_empty() {
        return domain("community candidate is empty");
    }
    Ok(())
}

/// Every `u ∈ S` has `c(u, S∖u) > c(u, V∖S)`.
pub fn is_web_community(g: &Graph, s: &VertexSet) -> Result<bool> {
    check_set(g, s)?;
    if s.is_full() {
        return Ok(true);
    }
    for u in s.iter() {
        let mut inside = Cost::zero();
        let mut outside = Cost::zero();
        for &(w, e) in g.neighbors(u) {
            if s.contains(w) {
                inside += &g.edges()[e].cost;
            } else {
                outside += &g.edges()[e].cost;
            }
        }
        if inside <= outside {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_extreme_set(g: &Graph, s: &VertexSet) -> Result<bool> {
    is_extreme_set_with_guard(g, s, BRUTE_FORCE_GUARD)
}

/// Every nonempty `U ⊊ S` has `c(U, S∖U) > c(U, V∖S)`; exhaustive.
pub fn is_extreme_set_with_guard(g: &Graph, s: &VertexSet, guard: usize) -> Result<bool> {
    check_set(g, s)?;
    if s.is_full() {
        return Ok(true);
    }
    guard_size(s.len(), guard)?;
    let members = s.to_vec();
    Ok(all_subsets_stronger_inside(g, s, &members, true))
}

pub fn is_source_community(g: &Graph, s: &VertexSet, source: usize) -> Result<bool> {
    check_source(g, s, source)?;
    if s.is_full() {
        return Ok(true);
    }
    let cut = community_cut_vertex(g, source, &s.complement())?;
    Ok(cut.sc_s == *s)
}

/// First member of `s` (by id) for which `s` is a source community; one
/// flow per member tried.
pub fn find_source(g: &Graph, s: &VertexSet) -> Result<Option<usize>> {
    check_set(g, s)?;
    for v in s.iter() {
        if is_source_community(g, s, v)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Exhaustive variant of [`is_source_community`]: every nonempty
/// `U ⊆ S∖{s}` has `c(U, S∖U) > c(U, V∖S)`.
pub fn is_source_community_brute_force(
    g: &Graph,
    s: &VertexSet,
    source: usize,
    guard: usize,
) -> Result<bool> {
    check_source(g, s, source)?;
    if s.is_full() {
        return Ok(true);
    }
    guard_size(s.len() - 1, guard)?;
    let members: Vec<usize> = s.iter().filter(|&v| v != source).collect();
    Ok(all_subsets_stronger_inside(g, s, &members, false))
}

fn check_source(g: &Graph, s: &VertexSet, source: usize) -> Result<()> {
    check_set(g, s)?;
    if source >= g.n() || !s.contains(source) {
        return domain(format!("source {source} is not in the candidate set"));
    }
    Ok(())
}

fn guard_size(size: usize, guard: usize) -> Result<()> {
    if size > guard {
        return Err(Error::Capacity(format!(
            "exhaustive check over {size} vertices exceeds the guard of {guard}"
        )));
    }
    Ok(())
}

enum Term {
    /// edge from member `i` into `S`
    Inside(usize),
    /// edge from member `i` to `V∖S`
    Outside(usize),
    /// edge from member `i` to member `j`
    Between(usize, usize),
}

/// Checks `c(U, S∖U) > c(U, V∖S)` for every nonempty `U` drawn from
/// `members`, skipping `U = members` when `proper` is set.
fn all_subsets_stronger_inside(g: &Graph, s: &VertexSet, members: &[usize], proper: bool) -> bool {
    let mut position = vec![usize::MAX; g.n()];
    for (i, &v) in members.iter().enumerate() {
        position[v] = i;
    }
    let mut terms: Vec<(Term, &Cost)> = Vec::new();
    for (i, &v) in members.iter().enumerate() {
        for &(w, e) in g.neighbors(v) {
            let cost = &g.edges()[e].cost;
            if !s.contains(w) {
                terms.push((Term::Outside(i), cost));
                continue;
            }
            terms.push((Term::Inside(i), cost));
            if position[w] != usize::MAX {
                terms.push((Term::Between(i, position[w]), cost));
            }
        }
    }
    let scaled = scale_to_integers(terms.iter().map(|t| t.1));
    let kinds: Vec<&Term> = terms.iter().map(|t| &t.0).collect();
    if scaled.small {
        let values: Vec<i128> = scaled.values.iter().map(|v| v.to_i128().expect("fits")).collect();
        gray_walk(members.len(), &kinds, &values, proper)
    } else {
        gray_walk(members.len(), &kinds, &scaled.values, proper)
    }
}

fn gray_walk<T: ExactInt>(k: usize, kinds: &[&Term], values: &[T], proper: bool) -> bool {
    let mut deg_s = vec![T::zero(); k];
    let mut out = vec![T::zero(); k];
    let mut weight = vec![Vec::new(); k];
    for (term, value) in kinds.iter().zip(values) {
        match **term {
            Term::Inside(i) => deg_s[i] += value,
            Term::Outside(i) => out[i] += value,
            Term::Between(i, j) => weight[i].push((j, value)),
        }
    }

    // `to_u[j]` = c(j, U), maintained along a Gray-code walk over all U
    let mut to_u = vec![T::zero(); k];
    let mut in_u = vec![false; k];
    let mut inside = T::zero();
    let mut outside = T::zero();
    let mut size = 0;
    for step in 1u64..1 << k {
        let i = step.trailing_zeros() as usize;
        if in_u[i] {
            in_u[i] = false;
            size -= 1;
            inside -= &deg_s[i];
            inside += &to_u[i];
            inside += &to_u[i];
            outside -= &out[i];
            for &(j, w) in &weight[i] {
                to_u[j] -= w;
            }
        } else {
            in_u[i] = true;
            size += 1;
            inside += &deg_s[i];
            inside -= &to_u[i];
            inside -= &to_u[i];
            outside += &out[i];
            for &(j, w) in &weight[i] {
                to_u[j] += w;
            }
        }
        if proper && size == k {
            continue;
        }
        if inside <= outside {
            return false;
        }
    }
    true
}
