//! Overlay of the maximal clusterings of the root's subtrees on lesmis,
//! completed with the source community of the root against all of them.

use source_communities::maxflow::community_cut_vertex;
use source_communities::parse::{read_graph, Format};
use source_communities::queries::{overlay_clustering, ClusterKind, Validation};
use source_communities::tree::build_sc_tree;
use source_communities::VertexSet;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/lesmis.gml");
    let g = read_graph(path.as_ref(), Some(Format::Gml))?;
    let tree = build_sc_tree(&g)?;
    let r = tree.root();

    let mut anchors = Vec::new();
    for &c in tree.children(r) {
        let sc = &tree.edges()[tree.edge_into(c).unwrap()].sc;
        if sc.len() > 1 {
            anchors.push((sc.clone(), c));
        }
    }
    let overlay = overlay_clustering(&tree, &anchors, Validation::Check)?;
    println!("{} subtree anchors -> {} clusters", anchors.len(), overlay.len());
    for (cluster, kind) in overlay.clustering.clusters().iter().zip(&overlay.kinds) {
        if *kind == ClusterKind::OverlayIntersection {
            println!("  not a source community: {} vertices", cluster.size());
        }
    }

    let mut taken = VertexSet::empty(g.n());
    for (a, _) in &anchors {
        taken.union_with(a);
    }
    let r2 = community_cut_vertex(&g, r, &taken)?.sc_s;
    println!("R2 = SC(r, T): {}", g.labels_of(&r2).join(" "));
    anchors.push((r2, r));
    let completed = overlay_clustering(&tree, &anchors, Validation::Check)?;
    let all_sc = completed.kinds.iter().all(|k| *k != ClusterKind::OverlayIntersection);
    println!("with R2: {} clusters, all source communities: {all_sc}", completed.len());
    Ok(())
}
