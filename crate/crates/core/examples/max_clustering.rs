//! Maximal clustering of source communities around the root cluster of the
//! best hierarchy level on lesmis.

use source_communities::clustering::complete_hierarchy;
use source_communities::parse::{read_graph, Format};
use source_communities::queries::{maximal_sc_clustering, ClusterKind, Validation};
use source_communities::tree::build_sc_tree;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/lesmis.gml");
    let g = read_graph(path.as_ref(), Some(Format::Gml))?;
    let tree = build_sc_tree(&g)?;
    let h = complete_hierarchy(&g)?;
    let best = &h.levels[h.best_modularity_level(&g)?].clustering;

    let root = tree.root();
    let r1 = &best.clusters()[best.cluster_of(root)];
    println!("R1: {} vertices around {}", r1.size(), g.label(r1.representative));

    let omega = maximal_sc_clustering(&tree, &r1.members, r1.representative, Validation::Check)?;
    let singletons = omega.clustering.clusters().iter().filter(|c| c.size() == 1).count();
    println!(
        "{} clusters, {} singletons (best level: {})",
        omega.len(),
        singletons,
        best.clusters().iter().filter(|c| c.size() == 1).count()
    );
    for (cluster, kind) in omega.clustering.clusters().iter().zip(&omega.kinds) {
        if cluster.size() > 1 && *kind != ClusterKind::Given {
            println!("  {}", g.labels_of(&cluster.members).join(" "));
        }
    }
    let nested = h.levels.iter().any(|l| omega.clustering.is_nested_in(&l.clustering) && l.clustering.len() > 1);
    println!("nested in a nontrivial hierarchy level: {nested}");
    Ok(())
}
