use proptest::prelude::*;
use source_communities::{Cost, Graph, VertexSet};

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..12).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 1i64..20, 1i64..4), 0..30).prop_map(move |edges| {
            let edges: Vec<_> = edges
                .into_iter()
                .map(|(u, v, p, q)| (u, v, Cost::ratio(p, q)))
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn subset(g: &Graph, mask: u64) -> VertexSet {
    VertexSet::from_iter(g.n(), (0..g.n()).filter(|v| mask >> v & 1 == 1))
}

proptest! {
    #[test]
    fn cut_cost_is_symmetric(g in graph_strategy(), mask in any::<u64>()) {
        let s = subset(&g, mask);
        prop_assume!(!s.is_empty() && !s.is_full());
        prop_assert_eq!(g.cut_cost(&s).unwrap(), g.cut_cost(&s.complement()).unwrap());
    }

    #[test]
    fn degrees_sum_to_twice_the_total(g in graph_strategy()) {
        let sum: Cost = (0..g.n()).map(|v| g.weighted_degree(v)).sum();
        prop_assert_eq!(sum, g.total_cost().times(2));
    }

    #[test]
    fn contraction_keeps_compound_cuts(g in graph_strategy(), a in any::<u64>(), b in any::<u64>(), side in any::<u64>()) {
        let first = subset(&g, a);
        let second = subset(&g, b).difference(&first);
        let compounds: Vec<VertexSet> = [first, second].into_iter().filter(|c| c.len() > 1).collect();
        let (h, map) = g.contract(&compounds).unwrap();
        let side = subset(&h, side);
        prop_assume!(!side.is_empty() && !side.is_full());
        prop_assert_eq!(h.cut_cost(&side).unwrap(), g.cut_cost(&map.expand(&side)).unwrap());
    }

    #[test]
    fn components_partition_the_vertices(g in graph_strategy()) {
        let comps = g.connected_components();
        let total: usize = comps.iter().map(VertexSet::len).sum();
        prop_assert_eq!(total, g.n());
        for c in &comps {
            if !c.is_full() {
                prop_assert!(g.cut_cost(c).unwrap().is_zero());
            }
        }
    }
}
