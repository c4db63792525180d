mod common;

use std::collections::BTreeSet;

use common::{mask_of, random_graph, rng, submasks, sweep_points, Cuts};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use source_communities::clustering::{binary_search_hierarchy, complete_hierarchy, cutc, Clustering};
use source_communities::communities::is_source_community;
use source_communities::{Cost, Graph};

fn blocks(c: &Clustering) -> Vec<u32> {
    let mut b: Vec<u32> = c.sets().iter().map(mask_of).collect();
    b.sort_unstable();
    b
}

fn hierarchy_case(r: &mut ChaCha8Rng) -> Graph {
    let n = 2 + r.gen_range(0..9);
    let density = [0.25, 0.5, 0.8][r.gen_range(0..3)];
    random_graph(r, n, density, 8, true)
}

#[test]
fn parametric_search_finds_every_level_of_the_sweep() {
    let mut r = rng(31);
    for _ in 0..200 {
        let g = hierarchy_case(&mut r);
        let cuts = Cuts::new(&g);
        let alpha0 = g.max_edge_cost().unwrap().to_f64() as i64;
        let swept: BTreeSet<Vec<u32>> = sweep_points(&cuts, alpha0)
            .par_iter()
            .map(|a| blocks(&cutc(&g, a).unwrap()))
            .collect();
        let h = complete_hierarchy(&g).unwrap();
        let found: BTreeSet<Vec<u32>> = h.levels.iter().map(|l| blocks(&l.clustering)).collect();
        assert_eq!(found, swept, "levels differ on {:?}", g.edges());
        assert_eq!(found.len(), h.h());
        let expected_calls = if h.h() >= 2 { 2 * (h.h() - 2) + 1 } else { 0 };
        assert_eq!(h.cutc_calls, expected_calls);
    }
}

#[test]
fn levels_nest_and_breakpoints_reproduce_them() {
    let mut r = rng(37);
    for _ in 0..100 {
        let g = hierarchy_case(&mut r);
        let h = complete_hierarchy(&g).unwrap();
        assert!(h.levels[0].clustering.len() == g.n());
        assert!(h.levels.last().unwrap().clustering.len() == 1);
        for w in h.levels.windows(2) {
            assert!(w[0].clustering.is_nested_in(&w[1].clustering));
            assert!(w[0].clustering.len() > w[1].clustering.len());
        }
        for (i, b) in h.breakpoints.iter().enumerate() {
            // the breakpoint returns the finer level, anything below it the
            // coarser one
            assert!(cutc(&g, b).unwrap().same_partition(&h.levels[i].clustering));
            let below = b.clone() - Cost::ratio(1, 1000);
            if below >= h.levels[i + 1].alpha {
                assert!(cutc(&g, &below).unwrap().same_partition(&h.levels[i + 1].clustering));
            }
        }
    }
}

#[test]
fn cutc_is_monotone_in_alpha() {
    let mut r = rng(41);
    for _ in 0..100 {
        let g = hierarchy_case(&mut r);
        let a1 = Cost::ratio(r.gen_range(0..60), 7);
        let a2 = Cost::ratio(r.gen_range(0..60), 7);
        let (hi, lo) = if a1 >= a2 { (a1, a2) } else { (a2, a1) };
        assert!(cutc(&g, &hi).unwrap().is_nested_in(&cutc(&g, &lo).unwrap()));
    }
}

/// `c(C, V∖C)/|V∖C| ≤ α ≤ c(U, C∖U)/min(|U|, |C∖U|)` for every cluster `C`
/// and every `∅ ≠ U ⊊ C`.
#[test]
fn clusters_satisfy_the_quality_bounds() {
    let mut r = rng(43);
    for _ in 0..150 {
        let g = hierarchy_case(&mut r);
        let cuts = Cuts::new(&g);
        let alpha = Cost::ratio(r.gen_range(1..50), r.gen_range(1..8));
        let clustering = cutc(&g, &alpha).unwrap();
        for cluster in clustering.clusters() {
            let c = mask_of(&cluster.members);
            let outside = g.n() - cluster.size();
            if outside > 0 {
                assert!(Cost::integer(cuts.cut(c)) <= alpha.times(outside));
            }
            for u in submasks(c).filter(|&u| u != c) {
                let smaller = u.count_ones().min((c & !u).count_ones()) as usize;
                assert!(alpha.times(smaller) <= Cost::integer(cuts.between(u, c & !u)));
            }
            assert!(is_source_community(&g, &cluster.members, cluster.representative).unwrap());
        }
    }
}

#[test]
fn binary_search_levels_are_hierarchy_levels() {
    let mut r = rng(47);
    for _ in 0..100 {
        let g = hierarchy_case(&mut r);
        let h = complete_hierarchy(&g).unwrap();
        let n = g.n() as i64;
        let b = binary_search_hierarchy(&g, &Cost::ratio(1, n * n)).unwrap();
        for level in &b.levels {
            assert!(h.levels.iter().any(|l| l.clustering.same_partition(&level.clustering)));
        }
    }
}
