//! Exhaustive oracles for small integer-weighted graphs. Nothing here calls
//! the library's flow code: every quantity comes from a table of cut costs
//! over all vertex subsets.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use source_communities::{Cost, Graph, VertexSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random graph with integer weights in `1..=max_weight`. Connected graphs
/// start from a random spanning tree.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64, max_weight: i64, connected: bool) -> Graph {
    let mut edges = Vec::new();
    let mut present = BTreeSet::new();
    if connected {
        for v in 1..n {
            let u = rng.gen_range(0..v);
            present.insert((u, v));
            edges.push((u, v, Cost::integer(rng.gen_range(1..=max_weight))));
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if !present.contains(&(u, v)) && rng.gen_bool(density) {
                present.insert((u, v));
                edges.push((u, v, Cost::integer(rng.gen_range(1..=max_weight))));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn mask_of(set: &VertexSet) -> u32 {
    set.iter().fold(0, |m, v| m | 1 << v)
}

pub fn set_of(n: usize, mask: u32) -> VertexSet {
    VertexSet::from_mask(n, mask as u64)
}

pub fn members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// Nonempty submasks of `mask`.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut sub = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let current = sub;
        sub = (sub - 1) & mask;
        if sub == 0 {
            done = true;
        }
        Some(current)
    })
}

/// `cut[S] = c(S, V∖S)` for every subset of a graph with integer costs.
pub struct Cuts {
    pub n: usize,
    pub full: u32,
    cut: Vec<i64>,
}

impl Cuts {
    pub fn new(g: &Graph) -> Cuts {
        let n = g.n();
        assert!(n <= 16);
        let edges: Vec<(usize, usize, i64)> = g
            .edges()
            .iter()
            .map(|e| {
                assert_eq!(*e.cost.denom(), 1.into(), "oracle needs integer costs");
                (e.u, e.v, e.cost.to_f64() as i64)
            })
            .collect();
        let cut = (0..1u32 << n)
            .map(|m| {
                edges
                    .iter()
                    .filter(|(u, v, _)| (m >> u & 1) != (m >> v & 1))
                    .map(|e| e.2)
                    .sum()
            })
            .collect();
        Cuts {
            n,
            full: (1 << n) - 1,
            cut,
        }
    }

    pub fn cut(&self, s: u32) -> i64 {
        self.cut[s as usize]
    }

    /// `c(A, B)` for disjoint `A`, `B`.
    pub fn between(&self, a: u32, b: u32) -> i64 {
        debug_assert_eq!(a & b, 0);
        (self.cut(a) + self.cut(b) - self.cut(a | b)) / 2
    }

    /// `λ(S, T)`: cheapest cut with `S` on one side and `T` on the other.
    pub fn lambda(&self, s: u32, t: u32) -> i64 {
        self.separating(s, t).map(|x| self.cut(x)).min().unwrap()
    }

    fn separating(&self, s: u32, t: u32) -> impl Iterator<Item = u32> + '_ {
        let free = self.full & !s & !t;
        std::iter::once(0).chain(submasks(free)).map(move |extra| s | extra)
    }

    /// Minimum cuts separating `s` from `t` of minimum cardinality on the
    /// `s` side.
    pub fn smallest_min_sides(&self, s: u32, t: u32) -> Vec<u32> {
        let best = self.lambda(s, t);
        let sides: Vec<u32> = self.separating(s, t).filter(|&x| self.cut(x) == best).collect();
        let smallest = sides.iter().map(|x| x.count_ones()).min().unwrap();
        sides.into_iter().filter(|x| x.count_ones() == smallest).collect()
    }

    /// Every nonempty `U ⊆ S∖{s}` is stronger connected to `S∖U` than to
    /// `V∖S`.
    pub fn is_sc(&self, set: u32, source: usize) -> bool {
        let rest = set & !(1 << source);
        let outside = self.full & !set;
        submasks(rest).all(|u| self.between(u, set & !u) > self.between(u, outside))
    }

    pub fn is_wc(&self, set: u32) -> bool {
        let outside = self.full & !set;
        members(set).all(|v| {
            let u = 1 << v;
            self.between(u, set & !u) > self.between(u, outside)
        })
    }

    pub fn is_es(&self, set: u32) -> bool {
        let outside = self.full & !set;
        submasks(set)
            .filter(|&u| u != set)
            .all(|u| self.between(u, set & !u) > self.between(u, outside))
    }

    /// All `(S, s)` with `S ≠ V` a source community of `s`.
    pub fn all_scs(&self) -> Vec<(u32, usize)> {
        let mut out = Vec::new();
        for set in 1..self.full {
            for s in members(set) {
                if self.is_sc(set, s) {
                    out.push((set, s));
                }
            }
        }
        out
    }

    /// Distinct sets that are source communities of some vertex.
    pub fn sc_sets(&self) -> Vec<u32> {
        let mut sets: Vec<u32> = self.all_scs().into_iter().map(|x| x.0).collect();
        sets.dedup();
        sets
    }
}

/// All partitions of `universe` into blocks drawn from `blocks`.
pub fn partitions_from(universe: u32, blocks: &[u32]) -> Vec<Vec<u32>> {
    fn go(left: u32, blocks: &[u32], current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(current.clone());
            return;
        }
        let low = left & left.wrapping_neg();
        for &b in blocks {
            if b & low != 0 && b & !left == 0 {
                current.push(b);
                go(left & !b, blocks, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(universe, blocks, &mut Vec::new(), &mut out);
    out
}

/// Every block of `fine` lies in a block of `coarse`.
pub fn nested(fine: &[u32], coarse: &[u32]) -> bool {
    fine.iter().all(|&f| coarse.iter().any(|&c| f & !c == 0))
}

/// Every α at which two cut-cost lines `c(S) + |S|α` meet inside `[0, α₀]`,
/// together with the midpoints between consecutive ones.
pub fn sweep_points(cuts: &Cuts, alpha0: i64) -> Vec<Cost> {
    let lines: BTreeSet<(i64, i64)> = submasks(cuts.full)
        .map(|s| (cuts.cut(s), s.count_ones() as i64))
        .collect();
    let lines: Vec<_> = lines.into_iter().collect();
    let mut points = BTreeSet::new();
    points.insert(Cost::zero());
    points.insert(Cost::integer(alpha0));
    for (i, &(c1, s1)) in lines.iter().enumerate() {
        for &(c2, s2) in &lines[i + 1..] {
            if s1 != s2 && (c2 - c1) * (s1 - s2) >= 0 && (c2 - c1).abs() <= alpha0 * (s1 - s2).abs() {
                points.insert(Cost::ratio(c2 - c1, s1 - s2));
            }
        }
    }
    let sorted: Vec<Cost> = points.into_iter().collect();
    let mut out = sorted.clone();
    for w in sorted.windows(2) {
        out.push((w[0].clone() + w[1].clone()).div_int(2));
    }
    out
}
