//! Community-cut tree of the lesmis network and the maximal source
//! communities it represents.

use source_communities::parse::{read_graph, Format};
use source_communities::tree::{build_sc_tree, maximal_scs};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/lesmis.gml");
    let g = read_graph(path.as_ref(), Some(Format::Gml))?;
    let tree = build_sc_tree(&g)?;

    println!("n = {}, max flows = {}", g.n(), tree.flow_count());
    println!("root = {}", g.label(tree.root()));
    for &child in tree.children(tree.root()) {
        let edge = &tree.edges()[tree.edge_into(child).unwrap()];
        println!("  {} ({} vertices, lambda {})", g.label(child), edge.sc.len(), edge.cost);
    }
    let m = maximal_scs(&tree)?;
    println!("|M(G)| = {} (between n = {} and 2(n-1) = {})", m.len(), g.n(), 2 * (g.n() - 1));

    let (a, b) = (g.vertex("Fantine").unwrap(), g.vertex("Javert").unwrap());
    println!("lambda(Fantine, Javert) = {}", tree.min_cut_value(a, b).unwrap());
    Ok(())
}
